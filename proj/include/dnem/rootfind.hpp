#pragma once

// Bracketed bisection for continuous nonincreasing scalar functions.

#include <functional>
#include <stdexcept>
#include <string>

namespace dnem {

inline constexpr double kDefaultToleranceX = 1e-10;
inline constexpr double kDefaultToleranceF = 1e-9;

// binding-envelope and centralized solves
inline constexpr double kFineToleranceX = 1e-15;
inline constexpr double kFineToleranceF = 1e-13;

// Find a price in [lower, upper] where a nonincreasing function hits `target`.
struct RootProblem {
  double lower;
  double upper;
  double target;
  double tolerance_x = kDefaultToleranceX;
  double tolerance_f = kDefaultToleranceF;
};

struct RootSolution {
  double root;
  double residual;  // f(root) - target
  int iterations;   // bisection steps taken
};

class NoRootError : public std::runtime_error {
 public:
  NoRootError(double f_lower, double f_upper, double target);
  double f_lower() const { return f_lower_; }
  double f_upper() const { return f_upper_; }

 private:
  double f_lower_;
  double f_upper_;
};

// Bisection on a nonincreasing `f`. Stops once |f(mid) - target| <= tolerance_f
// or the bracket is narrower than tolerance_x. An endpoint is returned directly
// when it alone satisfies the residual test; if both do (a plateau covering the
// bracket) bisection proceeds and returns its first midpoint.
RootSolution solve_monotone_decreasing(const std::function<double(double)>& f,
                                       const RootProblem& problem);

}  // namespace dnem
