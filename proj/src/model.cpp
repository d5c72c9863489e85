#include "dnem/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace dnem {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

Tariff::Tariff(double pi_plus, double pi_minus) : pi_plus_(pi_plus), pi_minus_(pi_minus) {
  if (!finite(pi_plus) || !finite(pi_minus))
    throw std::invalid_argument("tariff rates must be finite");
  if (pi_minus < 0.0) throw std::invalid_argument("pi_minus must be >= 0");
  if (pi_plus < pi_minus) throw std::invalid_argument("pi_plus must be >= pi_minus");
}

OperatingEnvelope::OperatingEnvelope(double z_min, double z_max) : z_min_(z_min), z_max_(z_max) {
  if (std::isnan(z_min) || std::isnan(z_max))
    throw std::invalid_argument("envelope limits must not be NaN");
  if (z_min > 0.0) throw std::invalid_argument("z_min must be <= 0");
  if (z_max < 0.0) throw std::invalid_argument("z_max must be >= 0");
}

QuadraticUtility::QuadraticUtility(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!finite(alpha) || !(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!finite(beta) || !(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
}

double QuadraticUtility::value(double d) const {
  if (d < 0.0 || std::isnan(d)) throw std::domain_error("utility is defined for d >= 0");
  const double satiation = alpha_ / beta_;
  if (d >= satiation) return alpha_ * alpha_ / (2.0 * beta_);
  return alpha_ * d - 0.5 * beta_ * d * d;
}

double QuadraticUtility::marginal(double d) const {
  return std::max(0.0, alpha_ - beta_ * d);
}

double QuadraticUtility::inverse_marginal(double price) const { return (alpha_ - price) / beta_; }

Device::Device(double d_min, double d_max, QuadraticUtility utility)
    : d_min_(d_min), d_max_(d_max), utility_(utility) {
  if (!finite(d_min) || d_min < 0.0) throw std::invalid_argument("d_min must be >= 0");
  if (!finite(d_max) || d_max < d_min) throw std::invalid_argument("d_max must be >= d_min");
}

Member::Member(std::string id, std::vector<Device> devices, OperatingEnvelope envelope)
    : id_(std::move(id)), devices_(std::move(devices)), envelope_(envelope) {
  if (devices_.empty()) throw std::invalid_argument("member " + id_ + " has no devices");
}

double Member::min_total() const {
  double s = 0.0;
  for (const auto& d : devices_) s += d.d_min();
  return s;
}

double Member::max_total() const {
  double s = 0.0;
  for (const auto& d : devices_) s += d.d_max();
  return s;
}

double Member::price_floor() const {
  double p = std::numeric_limits<double>::infinity();
  for (const auto& d : devices_)
    p = std::min(p, d.utility().alpha() - d.utility().beta() * d.d_max());
  return p;
}

double Member::price_ceiling() const {
  double p = 0.0;
  for (const auto& d : devices_) p = std::max(p, d.utility().alpha());
  return p;
}

Member Member::with_envelope(OperatingEnvelope envelope) const {
  return Member(id_, devices_, envelope);
}

Community::Community(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("community needs at least one member");
  std::unordered_set<std::string> seen;
  for (const auto& m : members_)
    if (!seen.insert(m.id()).second)
      throw std::invalid_argument("duplicate member id: " + m.id());
}

std::size_t Community::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i].id() == id) return i;
  throw std::out_of_range("unknown member id: " + id);
}

Schedule::Schedule(const Member& member, std::vector<double> consumption, double net, double b,
                   double payment, double curtailment)
    : consumption_(std::move(consumption)),
      net_(net),
      b_(b),
      curtailment_(curtailment),
      utility_(0.0),
      payment_(payment) {
  const auto devices = member.devices();
  if (consumption_.size() != devices.size())
    throw std::invalid_argument("schedule length does not match device count");
  for (std::size_t k = 0; k < devices.size(); ++k) {
    const double d = consumption_[k];
    if (d < devices[k].d_min() - kScheduleTolerance || d > devices[k].d_max() + kScheduleTolerance)
      throw std::invalid_argument("consumption outside device bounds for member " + member.id());
    consumption_[k] = std::clamp(d, devices[k].d_min(), devices[k].d_max());
  }
  const double expected = total_consumption() - (b_ - curtailment_);
  if (std::abs(expected - net_) > kScheduleTolerance)
    throw std::invalid_argument("net consumption mismatch for member " + member.id());
  const auto& env = member.envelope();
  if (net_ < env.z_min() - kEnvelopeTolerance || net_ > env.z_max() + kEnvelopeTolerance)
    throw std::invalid_argument("net consumption outside envelope for member " + member.id());
  utility_ = member_utility(member, consumption_);
}

double Schedule::total_consumption() const {
  return std::accumulate(consumption_.begin(), consumption_.end(), 0.0);
}

FeasibilityError::FeasibilityError(std::string member_id, const std::string& what)
    : std::runtime_error("member " + member_id + ": " + what), member_id_(std::move(member_id)) {}

std::string FeasibilityViolation::describe() const {
  std::ostringstream os;
  if (side == EnvelopeSide::Import)
    os << "import envelope " << bound << " < minimum net consumption " << required;
  else
    os << "export envelope " << bound << " > maximum net consumption " << required;
  return os.str();
}

double utility_value(const Device& device, double d) { return device.utility().value(d); }

double projected_demand(const Device& device, double price) {
  return std::clamp(device.utility().inverse_marginal(price), device.d_min(), device.d_max());
}

double member_aggregate_demand(const Member& member, double price) {
  double total = 0.0;
  for (const auto& d : member.devices()) total += projected_demand(d, price);
  return total;
}

std::vector<double> member_consumption_at(const Member& member, double price) {
  std::vector<double> out;
  out.reserve(member.devices().size());
  for (const auto& d : member.devices()) out.push_back(projected_demand(d, price));
  return out;
}

double member_utility(const Member& member, std::span<const double> consumption) {
  const auto devices = member.devices();
  double total = 0.0;
  for (std::size_t k = 0; k < devices.size(); ++k)
    total += utility_value(devices[k], consumption[k]);
  return total;
}

double nem_settlement(const Tariff& tariff, double z) {
  return z >= 0.0 ? tariff.pi_plus() * z : tariff.pi_minus() * z;
}

std::optional<FeasibilityViolation> validate_feasibility(const Member& member, double b) {
  if (b < 0.0 || std::isnan(b)) throw std::domain_error("generation b must be >= 0");
  const auto& env = member.envelope();
  const double min_net = member.min_total() - b;
  if (env.z_max() < min_net) return FeasibilityViolation{EnvelopeSide::Import, env.z_max(), min_net};
  const double max_net = member.max_total() - b;
  if (env.z_min() > max_net) return FeasibilityViolation{EnvelopeSide::Export, env.z_min(), max_net};
  return std::nullopt;
}

void require_feasible(const Member& member, double b) {
  if (auto v = validate_feasibility(member, b)) throw FeasibilityError(member.id(), v->describe());
}

}  // namespace dnem
