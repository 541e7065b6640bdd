#pragma once

#include <span>
#include <vector>

#include "purecd/rng.hpp"
#include "purecd/sparse.hpp"

namespace purecd {

// Discrete law over primal coordinates together with the row weights the
// solver's dual extrapolation needs: pi[j] sums p over the support of row j
// and theta[j] = pi[j] / p_min. Draws run in O(1) through a Walker alias
// table. Rows with empty support are rejected at build time because their
// duals would never be extrapolated.
class SamplingLaw {
 public:
  // weights need not be normalized; a warning is logged when they do not sum
  // to 1 and they are rescaled. Nonpositive or nonfinite weights are errors.
  static SamplingLaw build(std::span<const double> weights, const SparseMatrix& a);
  static SamplingLaw uniform(const SparseMatrix& a);

  Index draw(Rng& rng) const;

  Index dim() const { return static_cast<Index>(p_.size()); }
  const std::vector<double>& p() const { return p_; }
  const std::vector<double>& pi() const { return pi_; }
  const std::vector<double>& theta() const { return theta_; }
  double p_min() const { return p_min_; }

 private:
  std::vector<double> p_;
  std::vector<double> pi_;
  std::vector<double> theta_;
  double p_min_ = 0.0;
  // Alias table: accept[i] is the probability of keeping i, alias[i] the
  // replacement on rejection.
  std::vector<double> accept_;
  std::vector<Index> alias_;
};

}  // namespace purecd
