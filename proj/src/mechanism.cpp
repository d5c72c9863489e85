#include "dnem/mechanism.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dnem/rootfind.hpp"

namespace dnem {

namespace {

void check_lengths(std::size_t members, std::span<const double> b) {
  if (b.size() != members) throw std::invalid_argument("generation vector length must equal member count");
}

void require_feasible(const MemberBid& bid, double b) {
  if (b < 0.0) throw std::domain_error("generation b must be >= 0");
  if (bid.envelope.z_max() < bid.min_total - b)
    throw FeasibilityError(bid.id, "import envelope below minimum net consumption");
  if (bid.envelope.z_min() > bid.max_total - b)
    throw FeasibilityError(bid.id, "export envelope above maximum net consumption");
}

double clamp_to_envelope(const MemberBid& bid, double total, double b) {
  return std::max(bid.envelope.z_min() + b, std::min(total, bid.envelope.z_max() + b));
}

double envelope_clamped_demand(std::span<const MemberBid> bids, std::span<const double> b,
                               double price) {
  double s = 0.0;
  for (std::size_t i = 0; i < bids.size(); ++i) s += clamp_to_envelope(bids[i], bids[i].demand(price), b[i]);
  return s;
}

}  // namespace

const char* to_string(Zone zone) {
  switch (zone) {
    case Zone::Import: return "import";
    case Zone::NetZero: return "net_zero";
    case Zone::Export: return "export";
  }
  return "unknown";
}

MemberBid make_bid(const Member& member) {
  // The curve captures a copy of the member; callers only see prices in, energy out.
  return MemberBid{member.id(), member.envelope(), member.min_total(), member.max_total(),
                   [m = member](double price) { return member_aggregate_demand(m, price); }};
}

std::vector<MemberBid> make_bids(const Community& community) {
  std::vector<MemberBid> bids;
  bids.reserve(community.size());
  for (const auto& m : community.members()) bids.push_back(make_bid(m));
  return bids;
}

ReferencePoints member_reference_points(const Member& member, const Tariff& tariff) {
  return {member_aggregate_demand(member, tariff.pi_plus()),
          member_aggregate_demand(member, tariff.pi_minus())};
}

double total_generation(std::span<const double> b) { return std::accumulate(b.begin(), b.end(), 0.0); }

SigmaThresholds sigma_thresholds(std::span<const MemberBid> bids, const Tariff& tariff,
                                 std::span<const double> b) {
  check_lengths(bids.size(), b);
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    require_feasible(bids[i], b[i]);
    s1 += clamp_to_envelope(bids[i], bids[i].demand(tariff.pi_plus()), b[i]);
    s2 += clamp_to_envelope(bids[i], bids[i].demand(tariff.pi_minus()), b[i]);
  }
  return {s1, s2};
}

SigmaThresholds sigma_thresholds(const Community& community, const Tariff& tariff,
                                 std::span<const double> b) {
  const auto bids = make_bids(community);
  return sigma_thresholds(bids, tariff, b);
}

namespace {

double solve_pi_z_unchecked(std::span<const MemberBid> bids, const Tariff& tariff,
                            std::span<const double> b, double b_total) {
  const auto f = [&](double mu) { return envelope_clamped_demand(bids, b, mu); };
  return solve_monotone_decreasing(f, {tariff.pi_minus(), tariff.pi_plus(), b_total}).root;
}

}  // namespace

double solve_pi_z(std::span<const MemberBid> bids, const Tariff& tariff, std::span<const double> b) {
  const auto sigma = sigma_thresholds(bids, tariff, b);
  const double b_total = total_generation(b);
  if (b_total < sigma.sigma1 - kDefaultToleranceF || b_total > sigma.sigma2 + kDefaultToleranceF) {
    std::ostringstream os;
    os.precision(12);
    os << "aggregate generation " << b_total << " outside [" << sigma.sigma1 << ", " << sigma.sigma2 << "]";
    throw std::domain_error(os.str());
  }
  return solve_pi_z_unchecked(bids, tariff, b, b_total);
}

double solve_pi_z(const Community& community, const Tariff& tariff, std::span<const double> b) {
  const auto bids = make_bids(community);
  return solve_pi_z(bids, tariff, b);
}

PriceDecision community_price(std::span<const MemberBid> bids, const Tariff& tariff,
                              std::span<const double> b) {
  const auto sigma = sigma_thresholds(bids, tariff, b);
  const double b_total = total_generation(b);
  if (b_total < sigma.sigma1) return {tariff.pi_plus(), Zone::Import, sigma.sigma1, sigma.sigma2};
  if (b_total > sigma.sigma2) return {tariff.pi_minus(), Zone::Export, sigma.sigma1, sigma.sigma2};
  return {solve_pi_z_unchecked(bids, tariff, b, b_total), Zone::NetZero, sigma.sigma1, sigma.sigma2};
}

PriceDecision community_price(const Community& community, const Tariff& tariff,
                              std::span<const double> b) {
  const auto bids = make_bids(community);
  return community_price(bids, tariff, b);
}

double member_payment(double gamma, double z) { return gamma * z; }

}  // namespace dnem
