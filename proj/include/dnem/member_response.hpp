#pragma once

// A community member's best response to the announced uniform price under
// its own operating envelope: a two-threshold policy on local generation.

#include <vector>

#include "dnem/model.hpp"
#include "dnem/rootfind.hpp"

namespace dnem {

struct MemberThresholds {
  double theta1;  // below: import envelope binds
  double theta2;  // above: export envelope binds
};

enum class MemberBranch { ImportBinding, Interior, ExportBinding };

struct MemberResponse {
  Schedule schedule;
  // Price at which the devices were projected: gamma on the interior branch,
  // the envelope-shadowed price otherwise.
  double marginal_price;
  MemberBranch branch;
};

// Price in [lower, upper] at which the member's aggregate demand equals
// `total`, and the device consumption there.
struct TotalSolution {
  double price;
  std::vector<double> consumption;
};
TotalSolution consumption_for_total(const Member& member, double total, double lower, double upper,
                                    double tolerance_x = kDefaultToleranceX,
                                    double tolerance_f = kDefaultToleranceF);

MemberThresholds member_thresholds(const Member& member, double gamma);

// Throws FeasibilityError when the envelope cannot be met at generation b.
MemberResponse member_response(const Member& member, double gamma, double b);
Schedule optimal_member_schedule(const Member& member, double gamma, double b);

}  // namespace dnem
