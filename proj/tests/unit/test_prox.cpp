#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "purecd/prox.hpp"
#include "test_util.hpp"

using purecd::conjugate_pair_check;
using purecd::FunKind;
using purecd::Index;
using purecd::SeparableFunction;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent check: prox must minimize phi(u) + (u - v)^2 / (2 gamma).
double prox_objective(const SeparableFunction& f, Index coord, double gamma, double v,
                      double u) {
  return f.value(coord, u) + (u - v) * (u - v) / (2.0 * gamma);
}

void check_prox_optimal(const SeparableFunction& f, Index coord, double gamma, double v) {
  const double u = f.prox(coord, gamma, v);
  const double fu = prox_objective(f, coord, gamma, v, u);
  const double lo = std::min(v, u) - 3.0 * std::abs(v) - 3.0;
  const double hi = std::max(v, u) + 3.0 * std::abs(v) + 3.0;
  const double grid = testutil::grid_min_value(
      [&](double t) { return prox_objective(f, coord, gamma, v, t); }, lo, hi, 10001);
  CHECK(fu <= grid + 1e-8);
}

}  // namespace

TEST_SUITE_BEGIN("prox");

TEST_CASE("soft threshold hits hand values and the grid oracle") {
  const auto f = SeparableFunction::l1(1, 1.0);
  CHECK(f.prox(0, 1.0, 3.0) == 2.0);
  CHECK(f.prox(0, 1.0, -3.0) == -2.0);
  CHECK(f.prox(0, 1.0, 0.5) == 0.0);
  CHECK(f.prox(0, 1.0, 0.0) == 0.0);
  // exact tie maps to zero
  CHECK(f.prox(0, 1.0, 1.0) == 0.0);
  CHECK(f.prox(0, 1.0, -1.0) == 0.0);
  const auto g = SeparableFunction::l1(1, 0.3);
  CHECK(g.prox(0, 0.5, 0.15) == 0.0);

  const double golden = testutil::golden_min(
      [&](double u) { return prox_objective(f, 0, 1.0, 3.0, u); }, -5.0, 5.0);
  CHECK(std::abs(golden - 2.0) <= 1e-6);
  check_prox_optimal(f, 0, 1.0, 3.0);
}

TEST_CASE("quadratic and conjugate kinds hit closed forms") {
  const auto sq = SeparableFunction::sq_l2(1, 3.0);
  CHECK(sq.prox(0, 2.0, 7.0) == doctest::Approx(1.0).epsilon(1e-15));

  const auto lsc = SeparableFunction::ls_conjugate({1.0});
  CHECK(lsc.prox(0, 1.0, 3.0) == doctest::Approx(1.0).epsilon(1e-15));

  const auto lin = SeparableFunction::linear_conjugate({2.0});
  CHECK(lin.prox(0, 0.5, 1.0) == doctest::Approx(0.0).epsilon(1e-15));

  const auto zero = SeparableFunction::zero(1);
  CHECK(zero.prox(0, 0.1, -4.2) == -4.2);

  check_prox_optimal(sq, 0, 2.0, 7.0);
  check_prox_optimal(lsc, 0, 1.0, 3.0);
  check_prox_optimal(lin, 0, 0.5, 1.0);
}

TEST_CASE("box projection clamps and rejects NaN") {
  const auto box = SeparableFunction::box_indicator(1, 0.0, 1.0);
  CHECK(box.prox(0, 1.0, 2.0) == 1.0);
  CHECK(box.prox(0, 1.0, -1.0) == 0.0);
  CHECK(box.prox(0, 1.0, 0.5) == 0.5);
  CHECK_THROWS_AS((void)box.prox(0, 1.0, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("argument validation") {
  const auto f = SeparableFunction::l1(2, 1.0);
  CHECK_THROWS_AS((void)f.prox(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)f.prox(0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)f.prox(2, 1.0, 1.0), std::out_of_range);
  CHECK_THROWS_AS((void)f.value(-1, 1.0), std::out_of_range);
  CHECK_THROWS_AS((void)SeparableFunction::l1(1, -0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)SeparableFunction::box_indicator(1, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("values, including extended reals") {
  CHECK(SeparableFunction::l1(1, 2.0).value(0, -3.0) == 6.0);
  CHECK(SeparableFunction::box_indicator(1, 0.0, 1.0).value(0, 2.0) == kInf);
  CHECK(SeparableFunction::box_indicator(1, 0.0, 1.0).value(0, 1.0) == 0.0);
  CHECK(SeparableFunction::sq_l2(1, 4.0).value(0, 3.0) == doctest::Approx(18.0));
  CHECK(SeparableFunction::linear_conjugate({2.5}).value(0, 2.0) == doctest::Approx(5.0));

  // 0.5 * 2^2 + 1 * 2 = 4, cross-checked by the sup-based conjugate oracle of
  // t -> (t - 1)^2 / 2
  const auto lsc = SeparableFunction::ls_conjugate({1.0});
  CHECK(lsc.value(0, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
  const double sup = testutil::grid_max_value(
      [](double t) { return 2.0 * t - 0.5 * (t - 1.0) * (t - 1.0); }, -50.0, 50.0, 200001);
  CHECK(std::abs(lsc.value(0, 2.0) - sup) <= 1e-6);
}

TEST_CASE("conjugate values match the sup oracle") {
  purecd::Rng rng(17);
  const auto lsc = SeparableFunction::ls_conjugate({-0.7});
  const auto sq = SeparableFunction::sq_l2(1, 2.5);
  const auto box = SeparableFunction::box_indicator(1, -2.0, 3.0);
  const auto l1 = SeparableFunction::l1(1, 1.5);

  for (int t = 0; t < 10; ++t) {
    const double z = testutil::urand(rng, -3.0, 3.0);
    auto sup_of = [&](const SeparableFunction& f, double lo, double hi) {
      return testutil::grid_max_value([&](double y) { return z * y - f.value(0, y); }, lo,
                                      hi, 400001);
    };
    CHECK(std::abs(lsc.conjugate_value(0, z) - sup_of(lsc, -60.0, 60.0)) <= 1e-6);
    CHECK(std::abs(sq.conjugate_value(0, z) - sup_of(sq, -60.0, 60.0)) <= 1e-6);
    CHECK(std::abs(box.conjugate_value(0, z) - sup_of(box, -2.0, 3.0)) <= 1e-6);
  }
  CHECK(l1.conjugate_value(0, 1.4) == 0.0);
  CHECK(l1.conjugate_value(0, 1.6) == kInf);
  CHECK(SeparableFunction::linear_conjugate({2.0}).conjugate_value(0, 2.0) == 0.0);
  CHECK(SeparableFunction::linear_conjugate({2.0}).conjugate_value(0, 2.1) == kInf);
  CHECK(SeparableFunction::zero(1).conjugate_value(0, 0.0) == 0.0);
  CHECK(SeparableFunction::zero(1).conjugate_value(0, 0.1) == kInf);
}

TEST_CASE("Moreau identity for conjugate pairs") {
  purecd::Rng rng(23);
  const double lambda = 1.3;
  const auto l1 = SeparableFunction::l1(1, lambda);
  const auto box = SeparableFunction::box_indicator(1, -lambda, lambda);
  const double b = 0.8;
  const auto lsc = SeparableFunction::ls_conjugate({b});

  for (int t = 0; t < 50; ++t) {
    const double v = testutil::urand(rng, -4.0, 4.0);
    const double gamma = testutil::urand(rng, 0.1, 3.0);

    const double direct = l1.prox(0, gamma, v);
    const double via_conj = gamma * box.prox(0, 1.0 / gamma, v / gamma);
    CHECK(std::abs(direct + via_conj - v) <= 1e-10);

    // primal partner of ls_conjugate is t -> (t - b)^2 / 2 with prox
    // (v + gamma b) / (1 + gamma)
    const double primal = (v + gamma * b) / (1.0 + gamma);
    const double dual = gamma * lsc.prox(0, 1.0 / gamma, v / gamma);
    CHECK(std::abs(primal + dual - v) <= 1e-10);
  }
}

TEST_CASE("prox is nonexpansive for every kind") {
  purecd::Rng rng(29);
  const std::vector<SeparableFunction> kinds{
      SeparableFunction::zero(1),
      SeparableFunction::l1(1, 0.7),
      SeparableFunction::sq_l2(1, 2.0),
      SeparableFunction::ls_conjugate({0.4}),
      SeparableFunction::linear_conjugate({-1.1}),
      SeparableFunction::box_indicator(1, -0.5, 2.0)};
  for (const auto& f : kinds)
    for (int t = 0; t < 200; ++t) {
      const double gamma = testutil::urand(rng, 0.05, 5.0);
      const double v1 = testutil::urand(rng, -10.0, 10.0);
      const double v2 = testutil::urand(rng, -10.0, 10.0);
      CHECK(std::abs(f.prox(0, gamma, v1) - f.prox(0, gamma, v2)) <=
            std::abs(v1 - v2) + 1e-12);
    }
}

TEST_CASE("prox optimality against the grid oracle, random inputs") {
  purecd::Rng rng(31);
  const std::vector<SeparableFunction> kinds{
      SeparableFunction::l1(1, 0.9),
      SeparableFunction::sq_l2(1, 1.7),
      SeparableFunction::ls_conjugate({-0.3}),
      SeparableFunction::linear_conjugate({0.6}),
      SeparableFunction::box_indicator(1, -1.0, 1.5)};
  for (const auto& f : kinds)
    for (int t = 0; t < 8; ++t)
      check_prox_optimal(f, 0, testutil::urand(rng, 0.1, 4.0),
                         testutil::urand(rng, -5.0, 5.0));
}

TEST_CASE("Fenchel-Young sampling accepts true pairs and rejects false ones") {
  purecd::Rng rng(37);
  const double b = 1.0;
  auto h = [b](double t) { return 0.5 * (t - b) * (t - b); };
  auto h_conj = [b](double y) { return 0.5 * y * y + b * y; };

  std::vector<std::pair<double, double>> samples;
  for (int t = 0; t < 300; ++t)
    samples.push_back({testutil::urand(rng, -20.0, 20.0), testutil::urand(rng, -20.0, 20.0)});
  // gradient pairs y = h'(t) = t - b are tight
  std::vector<std::pair<double, double>> equality{{b, 0.0}, {b + 2.0, 2.0}, {b - 1.5, -1.5}};
  CHECK(conjugate_pair_check(h, h_conj, samples, equality));

  auto abs_h = [](double t) { return std::abs(t); };
  auto wrong_conj = [](double y) { return 0.5 * y * y; };
  std::vector<std::pair<double, double>> witness{{10.0, 3.0}};
  CHECK_FALSE(conjugate_pair_check(abs_h, wrong_conj, witness));

  // square pair with an off-gradient equality claim must fail
  auto sq_h = [](double t) { return 0.5 * t * t; };
  auto sq_conj = [](double y) { return 0.5 * y * y; };
  std::vector<std::pair<double, double>> bad_equality{{1.0, 3.0}};
  CHECK_FALSE(conjugate_pair_check(sq_h, sq_conj, samples, bad_equality));
  std::vector<std::pair<double, double>> good_equality{{1.0, 1.0}, {-2.0, -2.0}};
  CHECK(conjugate_pair_check(sq_h, sq_conj, samples, good_equality));
}

TEST_SUITE_END();
