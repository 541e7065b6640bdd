#include "purecd/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace purecd {

SamplingLaw SamplingLaw::build(std::span<const double> weights, const SparseMatrix& a) {
  const Index n = static_cast<Index>(weights.size());
  if (n == 0) throw std::invalid_argument("sampling: empty weight vector");
  if (n != a.cols())
    throw std::invalid_argument("sampling: weight count must match column count");

  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("sampling: weights must be positive and finite");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    std::cerr << "sampling: weights sum to " << total << ", renormalizing\n";

  SamplingLaw law;
  law.p_.resize(n);
  for (Index i = 0; i < n; ++i) law.p_[i] = weights[i] / total;

  law.p_min_ = law.p_[0];
  for (double p : law.p_) law.p_min_ = std::min(law.p_min_, p);

  // theta accumulates ratios p_i / p_min rather than dividing the pi sum, so
  // a uniform law yields exact small-integer theta (each ratio is exactly 1).
  law.pi_.assign(static_cast<std::size_t>(a.rows()), 0.0);
  law.theta_.assign(static_cast<std::size_t>(a.rows()), 0.0);
  for (Index j = 0; j < a.rows(); ++j) {
    if (a.row_support()[j] == 0)
      throw std::invalid_argument("sampling: row " + std::to_string(j) +
                                  " has empty support; preprocess the matrix first");
    double pi = 0.0, theta = 0.0;
    for (Index i : a.row_cols(j)) {
      pi += law.p_[i];
      theta += law.p_[i] / law.p_min_;
    }
    law.pi_[j] = pi;
    law.theta_[j] = theta;
  }

  // Walker alias construction over scaled weights n * p.
  law.accept_.assign(n, 1.0);
  law.alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<Index> small, large;
  small.reserve(n);
  large.reserve(n);
  for (Index i = 0; i < n; ++i) {
    scaled[i] = law.p_[i] * static_cast<double>(n);
    law.alias_[i] = i;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const Index s = small.back();
    const Index l = large.back();
    small.pop_back();
    large.pop_back();
    law.accept_[s] = scaled[s];
    law.alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (Index s : small) law.accept_[s] = 1.0;
  for (Index l : large) law.accept_[l] = 1.0;

  return law;
}

SamplingLaw SamplingLaw::uniform(const SparseMatrix& a) {
  if (a.cols() == 0) throw std::invalid_argument("sampling: matrix has no columns");
  std::vector<double> w(static_cast<std::size_t>(a.cols()),
                        1.0 / static_cast<double>(a.cols()));
  return build(w, a);
}

Index SamplingLaw::draw(Rng& rng) const {
  const Index i = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(p_.size())));
  return rng.next_double() < accept_[i] ? i : alias_[i];
}

}  // namespace purecd
