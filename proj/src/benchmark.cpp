#include "dnem/benchmark.hpp"

#include <algorithm>

#include "dnem/member_response.hpp"
#include "dnem/rootfind.hpp"

namespace dnem {

const char* to_string(BenchmarkBranch branch) {
  switch (branch) {
    case BenchmarkBranch::ImportBinding: return "import_binding";
    case BenchmarkBranch::Importing: return "importing";
    case BenchmarkBranch::NetZero: return "net_zero";
    case BenchmarkBranch::Exporting: return "exporting";
    case BenchmarkBranch::ExportBinding: return "export_binding";
  }
  return "unknown";
}

BenchmarkThresholds benchmark_thresholds(const Member& member, const Tariff& tariff) {
  const double d2 = member_aggregate_demand(member, tariff.pi_plus());
  const double d3 = member_aggregate_demand(member, tariff.pi_minus());
  return {d2 - member.envelope().z_max(), d2, d3, d3 - member.envelope().z_min()};
}

BenchmarkResponse benchmark_response(const Member& member, const Tariff& tariff, double b) {
  require_feasible(member, b);
  const auto th = benchmark_thresholds(member, tariff);
  const auto& env = member.envelope();
  const double pp = tariff.pi_plus();
  const double pm = tariff.pi_minus();

  auto finish = [&](std::vector<double> d, double price, BenchmarkBranch branch) {
    double total = 0.0;
    for (double x : d) total += x;
    const double z = total - b;
    return BenchmarkResponse{Schedule(member, std::move(d), z, b, nem_settlement(tariff, z)), price, branch};
  };

  if (b <= th.delta1) {
    auto sol = consumption_for_total(member, env.z_max() + b, pp, std::max(pp, member.price_ceiling()),
                                     kFineToleranceX, kFineToleranceF);
    return finish(std::move(sol.consumption), sol.price, BenchmarkBranch::ImportBinding);
  }
  if (b <= th.delta2) return finish(member_consumption_at(member, pp), pp, BenchmarkBranch::Importing);
  if (b <= th.delta3) {
    auto sol = consumption_for_total(member, b, pm, pp, kFineToleranceX, kFineToleranceF);
    return finish(std::move(sol.consumption), sol.price, BenchmarkBranch::NetZero);
  }
  if (b <= th.delta4) return finish(member_consumption_at(member, pm), pm, BenchmarkBranch::Exporting);
  auto sol = consumption_for_total(member, env.z_min() + b, std::min(pm, member.price_floor()), pm,
                                   kFineToleranceX, kFineToleranceF);
  return finish(std::move(sol.consumption), sol.price, BenchmarkBranch::ExportBinding);
}

Schedule benchmark_schedule(const Member& member, const Tariff& tariff, double b) {
  return benchmark_response(member, tariff, b).schedule;
}

Schedule passive_schedule(const Member& member, const Tariff& tariff, double b) {
  require_feasible(member, b);
  const auto& env = member.envelope();
  const auto devices = member.devices();
  auto d = member_consumption_at(member, tariff.pi_plus());
  double total = 0.0;
  for (double x : d) total += x;

  double curtailment = 0.0;
  if (total - b > env.z_max()) {
    const double floor = member.min_total();
    const double t = (env.z_max() + b - floor) / (total - floor);
    total = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      d[k] = devices[k].d_min() + t * (d[k] - devices[k].d_min());
      total += d[k];
    }
  } else if (total - b < env.z_min()) {
    curtailment = b - (total - env.z_min());
  }
  const double z = total - (b - curtailment);
  return Schedule(member, std::move(d), z, b, nem_settlement(tariff, z), curtailment);
}

}  // namespace dnem
