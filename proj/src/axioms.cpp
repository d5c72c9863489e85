#include "dnem/axioms.hpp"

#include <cmath>

#include "dnem/benchmark.hpp"
#include "dnem/member_response.hpp"

namespace dnem {

bool AxiomReport::clean() const {
  for (const auto& e : individual_rationality)
    if (!e.pass) return false;
  return profit_neutrality_pass && equal_treatment.empty() && monotonicity.empty() && penalty_reward.empty();
}

double check_individual_rationality(const Member& member, const Tariff& tariff, double gamma, double b) {
  return optimal_member_schedule(member, gamma, b).surplus() - benchmark_schedule(member, tariff, b).surplus();
}

double check_profit_neutrality(std::span<const double> payments, const Tariff& tariff, double z_total) {
  double collected = 0.0;
  for (double p : payments) collected += p;
  return collected - nem_settlement(tariff, z_total);
}

PairViolations check_pair_axioms(std::span<const Schedule> schedules, double /*gamma*/) {
  PairViolations out;
  for (std::size_t i = 0; i < schedules.size(); ++i) {
    for (std::size_t j = 0; j < schedules.size(); ++j) {
      if (i == j) continue;
      const double zi = schedules[i].net(), zj = schedules[j].net();
      const double pi = schedules[i].payment(), pj = schedules[j].payment();
      if (i < j && std::abs(zi - zj) <= kPairTolerance && std::abs(pi - pj) > kPairTolerance)
        out.equal_treatment.emplace_back(i, j);
      if (std::abs(zi) >= std::abs(zj) && zi * zj >= 0.0 && std::abs(pi) < std::abs(pj) - kPairTolerance)
        out.monotonicity.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> check_penalty_reward(std::span<const Schedule> schedules) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < schedules.size(); ++i) {
    const double z = schedules[i].net(), p = schedules[i].payment();
    if ((z > kSignThreshold && p <= 0.0) || (z < -kSignThreshold && p >= 0.0)) out.push_back(i);
  }
  return out;
}

AxiomReport verify_axioms(const Community& community, const Tariff& tariff, std::span<const double> b) {
  AxiomReport report;
  report.price = community_price(community, tariff, b);
  const double gamma = report.price.gamma;

  std::vector<Schedule> schedules;
  std::vector<double> payments;
  double z_total = 0.0;
  for (std::size_t i = 0; i < community.size(); ++i) {
    const Member& m = community[i];
    schedules.push_back(optimal_member_schedule(m, gamma, b[i]));
    payments.push_back(schedules.back().payment());
    z_total += schedules.back().net();
    const double margin =
        schedules.back().surplus() - benchmark_schedule(m, tariff, b[i]).surplus();
    report.individual_rationality.push_back({m.id(), margin, margin >= -kRationalityTolerance});
  }
  report.profit_neutrality_residual = check_profit_neutrality(payments, tariff, z_total);
  report.profit_neutrality_pass = std::abs(report.profit_neutrality_residual) <= kProfitNeutralityTolerance;

  auto pairs = check_pair_axioms(schedules, gamma);
  report.equal_treatment = std::move(pairs.equal_treatment);
  report.monotonicity = std::move(pairs.monotonicity);
  if (gamma == 0.0)
    report.penalty_reward_vacuous = true;
  else
    report.penalty_reward = check_penalty_reward(schedules);
  return report;
}

}  // namespace dnem
