#pragma once

// Executable checks of the five cost-causation axioms over one priced and
// scheduled interval. The pairwise and sign checks accept arbitrary payment
// vectors so non-conforming mechanisms can be examined too.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dnem/mechanism.hpp"
#include "dnem/model.hpp"

namespace dnem {

inline constexpr double kRationalityTolerance = 1e-9;
inline constexpr double kProfitNeutralityTolerance = 1e-8;
inline constexpr double kPairTolerance = 1e-9;
inline constexpr double kSignThreshold = 1e-12;

struct RationalityEntry {
  std::string member_id;
  double margin;
  bool pass;
};

struct PairViolations {
  std::vector<std::pair<std::size_t, std::size_t>> equal_treatment;
  std::vector<std::pair<std::size_t, std::size_t>> monotonicity;
};

struct AxiomReport {
  PriceDecision price;
  std::vector<RationalityEntry> individual_rationality;
  double profit_neutrality_residual = 0.0;
  bool profit_neutrality_pass = true;
  std::vector<std::pair<std::size_t, std::size_t>> equal_treatment;
  std::vector<std::pair<std::size_t, std::size_t>> monotonicity;
  std::vector<std::size_t> penalty_reward;
  // Zero price makes every payment zero; the sign axiom then has no content.
  bool penalty_reward_vacuous = false;

  bool clean() const;
};

// Community surplus at `gamma` minus the standalone benchmark surplus.
double check_individual_rationality(const Member& member, const Tariff& tariff, double gamma, double b);

// sum(payments) - nem_settlement(tariff, z_total).
double check_profit_neutrality(std::span<const double> payments, const Tariff& tariff, double z_total);

PairViolations check_pair_axioms(std::span<const Schedule> schedules, double gamma);

// Members importing without paying, or exporting without being credited.
std::vector<std::size_t> check_penalty_reward(std::span<const Schedule> schedules);

// Price the interval, schedule every member, and run all five checks.
AxiomReport verify_axioms(const Community& community, const Tariff& tariff, std::span<const double> b);

}  // namespace dnem
