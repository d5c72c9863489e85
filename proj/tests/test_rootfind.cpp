#include <doctest.h>

#include <cmath>

#include "dnem/rootfind.hpp"
#include "support.hpp"

using namespace dnem;
using doctest::Approx;

TEST_CASE("linear inversion") {
  const auto sol = solve_monotone_decreasing([](double mu) { return 2.0 - mu; }, {0.1, 0.5, 1.7});
  CHECK(sol.root == Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(sol.residual) <= kDefaultToleranceF);
}

TEST_CASE("plateau returns the bracket midpoint") {
  const auto sol = solve_monotone_decreasing([](double) { return 4.4; }, {0.1, 0.5, 4.4});
  CHECK(sol.root == Approx(0.3).epsilon(1e-12));
  CHECK(sol.residual == 0.0);
}

TEST_CASE("unbracketed target raises NoRootError carrying endpoint values") {
  try {
    solve_monotone_decreasing([](double mu) { return 2.0 - mu; }, {0.1, 0.5, 5.0});
    FAIL("expected NoRootError");
  } catch (const NoRootError& e) {
    CHECK(e.f_lower() == Approx(1.9));
    CHECK(e.f_upper() == Approx(1.5));
  }
}

TEST_CASE("target at an endpoint returns that endpoint") {
  const auto f = [](double mu) { return 5.0 - 2.0 * mu; };
  CHECK(solve_monotone_decreasing(f, {0.1, 0.5, 4.0}).root == 0.5);
  CHECK(solve_monotone_decreasing(f, {0.1, 0.5, 4.8}).root == 0.1);
}

TEST_CASE("invalid problems are rejected") {
  const auto f = [](double mu) { return -mu; };
  CHECK_THROWS_AS(solve_monotone_decreasing(f, {1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_monotone_decreasing(f, {0.0, 1.0, -0.5, 0.0, 1e-9}), std::invalid_argument);
  CHECK(solve_monotone_decreasing(f, {0.25, 0.25, -0.25}).root == 0.25);
}

TEST_CASE("property: random strictly decreasing piecewise-linear functions") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    // Breakpoints with slopes in [-3, -0.1].
    std::vector<double> xs{0.0}, ys{rng.uniform(-5.0, 5.0)};
    const int pieces = rng.integer(1, 6);
    for (int k = 0; k < pieces; ++k) {
      xs.push_back(xs.back() + rng.uniform(0.05, 1.0));
      ys.push_back(ys.back() - rng.uniform(0.1, 3.0) * (xs.back() - xs[xs.size() - 2]));
    }
    const auto f = [&](double x) {
      if (x <= xs.front()) return ys.front();
      for (std::size_t k = 1; k < xs.size(); ++k)
        if (x <= xs[k]) return ys[k - 1] + (ys[k] - ys[k - 1]) * (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
      return ys.back();
    };
    const double lower = xs.front(), upper = xs.back();
    const double target = rng.uniform(ys.back(), ys.front());
    const RootProblem p{lower, upper, target};
    const auto sol = solve_monotone_decreasing(f, p);
    CHECK(sol.root >= lower);
    CHECK(sol.root <= upper);
    CHECK(std::abs(f(sol.root) - target) <= p.tolerance_f);
    const int bound = static_cast<int>(std::ceil(std::log2((upper - lower) / p.tolerance_x))) + 2;
    CHECK(sol.iterations <= bound);
    // Determinism.
    CHECK(solve_monotone_decreasing(f, p).root == sol.root);
  }
}

TEST_CASE("property: steep functions stop on bracket width") {
  const auto f = [](double x) { return -1e9 * x; };
  const RootProblem p{-1.0, 1.0, 0.123};
  const auto sol = solve_monotone_decreasing(f, p);
  CHECK(sol.root >= -1.0);
  CHECK(sol.root <= 1.0);
  CHECK(sol.iterations <= static_cast<int>(std::ceil(std::log2(2.0 / p.tolerance_x))) + 2);
  CHECK(std::abs(sol.root + 0.123e-9) <= p.tolerance_x);
}
