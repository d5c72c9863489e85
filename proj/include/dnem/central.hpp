#pragma once

// Centralized welfare maximization of the community behind one NEM meter,
// solved through its threshold decomposition, plus a brute-force grid
// oracle for small instances.

#include <span>
#include <vector>

#include "dnem/mechanism.hpp"
#include "dnem/model.hpp"

namespace dnem {

struct CentralResult {
  std::vector<Schedule> schedules;  // payments settled at the community shadow price
  double welfare;
  double d_tilde_plus;
  double d_tilde_minus;
  Zone zone;
  double shadow_price;
};

struct CentralThresholds {
  double d_tilde_plus;
  double d_tilde_minus;
};

CentralThresholds central_thresholds(const Community& community, const Tariff& tariff,
                                     std::span<const double> b);

CentralResult centralized_schedule(const Community& community, const Tariff& tariff,
                                   std::span<const double> b);

// Exhaustive maximum of sum U_i(d_i) - nem_settlement(sum z_i) over the
// product grid d_i in {d_min + j*step <= d_max}, subject to each member's
// envelope. Requires N <= 3 and one device per member.
double grid_oracle(const Community& community, const Tariff& tariff, std::span<const double> b,
                   double step);

}  // namespace dnem
