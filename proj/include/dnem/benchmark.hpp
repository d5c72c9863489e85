#pragma once

// Standalone prosumer facing the DSO's NEM tariff directly: the optimal
// four-threshold response and the passive (generation-unaware) baseline.

#include "dnem/model.hpp"

namespace dnem {

struct BenchmarkThresholds {
  double delta1;  // delta2 - z_max
  double delta2;  // aggregate demand at pi_plus
  double delta3;  // aggregate demand at pi_minus
  double delta4;  // delta3 - z_min
};

enum class BenchmarkBranch { ImportBinding, Importing, NetZero, Exporting, ExportBinding };

const char* to_string(BenchmarkBranch branch);

struct BenchmarkResponse {
  Schedule schedule;
  double marginal_price;  // mu+, pi+, mu0, pi-, or mu- depending on branch
  BenchmarkBranch branch;
};

BenchmarkThresholds benchmark_thresholds(const Member& member, const Tariff& tariff);

// Throws FeasibilityError when the envelope cannot be met at generation b.
BenchmarkResponse benchmark_response(const Member& member, const Tariff& tariff, double b);
Schedule benchmark_schedule(const Member& member, const Tariff& tariff, double b);

// Consumes the pi_plus-optimal bundle regardless of b. An import overrun is
// removed by scaling every device from that bundle toward d_min; an export
// overrun is spilled (generation curtailed down to the export envelope).
Schedule passive_schedule(const Member& member, const Tariff& tariff, double b);

}  // namespace dnem
