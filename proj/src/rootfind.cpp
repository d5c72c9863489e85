#include "dnem/rootfind.hpp"

#include <cmath>
#include <sstream>

namespace dnem {

namespace {

std::string no_root_message(double f_lower, double f_upper, double target) {
  std::ostringstream os;
  os.precision(12);
  os << "target " << target << " not bracketed: f(lower)=" << f_lower << ", f(upper)=" << f_upper;
  return os.str();
}

}  // namespace

NoRootError::NoRootError(double f_lower, double f_upper, double target)
    : std::runtime_error(no_root_message(f_lower, f_upper, target)),
      f_lower_(f_lower),
      f_upper_(f_upper) {}

RootSolution solve_monotone_decreasing(const std::function<double(double)>& f,
                                       const RootProblem& p) {
  if (!(p.lower <= p.upper)) throw std::invalid_argument("root bracket requires lower <= upper");
  if (!(p.tolerance_x > 0.0) || !(p.tolerance_f > 0.0))
    throw std::invalid_argument("root tolerances must be > 0");

  const double f_lo = f(p.lower);
  const double f_hi = f(p.upper);
  if (f_lo < p.target - p.tolerance_f || f_hi > p.target + p.tolerance_f)
    throw NoRootError(f_lo, f_hi, p.target);

  const bool lo_hit = std::abs(f_lo - p.target) <= p.tolerance_f;
  const bool hi_hit = std::abs(f_hi - p.target) <= p.tolerance_f;
  if (lo_hit && !hi_hit) return {p.lower, f_lo - p.target, 0};
  if (hi_hit && !lo_hit) return {p.upper, f_hi - p.target, 0};

  double lo = p.lower;
  double hi = p.upper;
  int iterations = 0;
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    const bool exhausted = mid <= lo || mid >= hi;  // bracket down to adjacent doubles
    const double f_mid = f(mid);
    ++iterations;
    const double residual = f_mid - p.target;
    if (std::abs(residual) <= p.tolerance_f || hi - lo <= p.tolerance_x || exhausted) return {mid, residual, iterations};
    if (residual > 0.0)
      lo = mid;
    else
      hi = mid;
  }
}

}  // namespace dnem
