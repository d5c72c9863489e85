#include "dnem/member_response.hpp"

#include <algorithm>

#include "dnem/mechanism.hpp"
#include "dnem/rootfind.hpp"

namespace dnem {

TotalSolution consumption_for_total(const Member& member, double total, double lower, double upper,
                                    double tolerance_x, double tolerance_f) {
  const auto f = [&member](double mu) { return member_aggregate_demand(member, mu); };
  const auto sol = solve_monotone_decreasing(f, {lower, upper, total, tolerance_x, tolerance_f});
  return {sol.root, member_consumption_at(member, sol.root)};
}

MemberThresholds member_thresholds(const Member& member, double gamma) {
  const double demand = member_aggregate_demand(member, gamma);
  return {demand - member.envelope().z_max(), demand - member.envelope().z_min()};
}

MemberResponse member_response(const Member& member, double gamma, double b) {
  require_feasible(member, b);
  const auto th = member_thresholds(member, gamma);
  const auto& env = member.envelope();

  auto finish = [&](std::vector<double> d, double price, MemberBranch branch) {
    double total = 0.0;
    for (double x : d) total += x;
    const double z = total - b;
    return MemberResponse{Schedule(member, std::move(d), z, b, member_payment(gamma, z)), price, branch};
  };

  if (b < th.theta1) {
    auto sol = consumption_for_total(member, env.z_max() + b, gamma, std::max(gamma, member.price_ceiling()),
                                     kFineToleranceX, kFineToleranceF);
    return finish(std::move(sol.consumption), sol.price, MemberBranch::ImportBinding);
  }
  if (b <= th.theta2) return finish(member_consumption_at(member, gamma), gamma, MemberBranch::Interior);
  auto sol = consumption_for_total(member, env.z_min() + b, std::min(gamma, member.price_floor()), gamma,
                                   kFineToleranceX, kFineToleranceF);
  return finish(std::move(sol.consumption), sol.price, MemberBranch::ExportBinding);
}

Schedule optimal_member_schedule(const Member& member, double gamma, double b) {
  return member_response(member, gamma, b).schedule;
}

}  // namespace dnem
