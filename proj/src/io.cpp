#include "dnem/io.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dnem {

using nlohmann::json;

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "; ";
    out += e;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError({path.string() + ": cannot open file"});
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

// Field reader that records problems instead of throwing on the first one.
class ConfigReader {
 public:
  std::vector<std::string> errors;

  const json* child(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) {
      errors.push_back(path + ": expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      errors.push_back(path + "." + key + ": missing field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path) {
    const json* v = child(obj, key, path);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      errors.push_back(path + "." + key + ": expected a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) errors.push_back(path + ": " + message);
  }
};

}  // namespace

InputError::InputError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

CommunityConfig parse_community_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError({std::string("parse error: ") + e.what()});
  }

  ConfigReader r;
  if (!doc.is_object()) throw InputError({"$: expected an object"});

  int interval_minutes = 0;
  if (const json* v = r.child(doc, "interval_minutes", "$")) {
    if (!v->is_number_integer() || v->get<long long>() <= 0 || v->get<long long>() > 1440)
      r.errors.push_back("$.interval_minutes: interval_minutes must be a positive integer <= 1440");
    else if (1440 % v->get<int>() != 0)
      r.errors.push_back("$.interval_minutes: interval_minutes must divide a day");
    else
      interval_minutes = v->get<int>();
  }
  const int per_day = interval_minutes > 0 ? 1440 / interval_minutes : 0;

  TouTariff tariff{0.0, 0.0, {}, 0.0, per_day};
  if (const json* t = r.child(doc, "tariff", "$")) {
    const std::string p = "$.tariff";
    auto on = r.number(*t, "pi_plus_on", p);
    auto off = r.number(*t, "pi_plus_off", p);
    auto minus = r.number(*t, "pi_minus", p);
    if (minus) r.require(*minus >= 0.0, p + ".pi_minus", "pi_minus must be ≥ 0");
    if (on && minus) r.require(*on >= *minus, p + ".pi_plus_on", "pi_plus_on must be ≥ pi_minus");
    if (off && minus) r.require(*off >= *minus, p + ".pi_plus_off", "pi_plus_off must be ≥ pi_minus");
    tariff.pi_plus_on = on.value_or(0.0);
    tariff.pi_plus_off = off.value_or(0.0);
    tariff.pi_minus = minus.value_or(0.0);
    if (const json* peaks = r.child(*t, "on_peak_intervals", p)) {
      if (!peaks->is_array()) {
        r.errors.push_back(p + ".on_peak_intervals: expected an array");
      } else {
        for (std::size_t k = 0; k < peaks->size(); ++k) {
          const json& v = (*peaks)[k];
          const std::string path = p + ".on_peak_intervals[" + std::to_string(k) + "]";
          if (!v.is_number_integer() || v.get<long long>() < 0 || (per_day > 0 && v.get<long long>() >= per_day)) {
            r.errors.push_back(path + ": on-peak interval must lie within a day");
            continue;
          }
          tariff.on_peak_intervals.push_back(v.get<int>());
        }
      }
    }
  }

  std::vector<Member> members;
  if (const json* ms = r.child(doc, "members", "$")) {
    if (!ms->is_array() || ms->empty()) r.errors.push_back("$.members: expected a non-empty array");
    std::set<std::string> ids;
    for (std::size_t i = 0; ms->is_array() && i < ms->size(); ++i) {
      const json& mj = (*ms)[i];
      const std::string mp = "$.members[" + std::to_string(i) + "]";
      const std::size_t errors_before = r.errors.size();
      std::string id;
      if (const json* v = r.child(mj, "id", mp)) {
        if (!v->is_string() || v->get<std::string>().empty())
          r.errors.push_back(mp + ".id: expected a non-empty string");
        else if (!ids.insert(id = v->get<std::string>()).second)
          r.errors.push_back(mp + ".id: duplicate member id " + id);
      }
      double z_min = 0.0, z_max = 0.0;
      if (const json* env = r.child(mj, "envelope", mp)) {
        const std::string ep = mp + ".envelope";
        auto lo = r.number(*env, "z_min", ep);
        auto hi = r.number(*env, "z_max", ep);
        if (lo) r.require(*lo <= 0.0, ep + ".z_min", "z_min must be ≤ 0");
        if (hi) r.require(*hi >= 0.0, ep + ".z_max", "z_max must be ≥ 0");
        z_min = lo.value_or(0.0);
        z_max = hi.value_or(0.0);
      }
      std::vector<std::array<double, 4>> raw;
      if (const json* ds = r.child(mj, "devices", mp)) {
        if (!ds->is_array() || ds->empty()) r.errors.push_back(mp + ".devices: expected a non-empty array");
        for (std::size_t k = 0; ds->is_array() && k < ds->size(); ++k) {
          const std::string dp = mp + ".devices[" + std::to_string(k) + "]";
          const json& dj = (*ds)[k];
          auto d_min = r.number(dj, "d_min", dp);
          auto d_max = r.number(dj, "d_max", dp);
          auto alpha = r.number(dj, "alpha", dp);
          auto beta = r.number(dj, "beta", dp);
          if (d_min) r.require(*d_min >= 0.0, dp + ".d_min", "d_min must be ≥ 0");
          if (d_min && d_max) r.require(*d_max >= *d_min, dp + ".d_max", "d_max must be ≥ d_min");
          if (alpha) r.require(*alpha > 0.0, dp + ".alpha", "alpha must be > 0");
          if (beta) r.require(*beta > 0.0, dp + ".beta", "beta must be > 0");
          raw.push_back({d_min.value_or(0.0), d_max.value_or(0.0), alpha.value_or(1.0), beta.value_or(1.0)});
        }
      }
      if (r.errors.size() != errors_before) continue;
      std::vector<Device> devices;
      for (const auto& d : raw) devices.emplace_back(d[0], d[1], QuadraticUtility(d[2], d[3]));
      members.emplace_back(id, std::move(devices), OperatingEnvelope(z_min, z_max));
    }
  }

  if (!r.errors.empty()) throw InputError(std::move(r.errors));
  return CommunityConfig{std::move(members), std::move(tariff), interval_minutes};
}

CommunityConfig load_community_config(const std::filesystem::path& path) {
  return parse_community_config(read_file(path));
}

std::string serialize_community_config(const CommunityConfig& config) {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["interval_minutes"] = config.interval_minutes;
  doc["tariff"] = {{"pi_plus_on", config.tariff.pi_plus_on},
                   {"pi_plus_off", config.tariff.pi_plus_off},
                   {"pi_minus", config.tariff.pi_minus},
                   {"on_peak_intervals", config.tariff.on_peak_intervals}};
  json members = json::array();
  for (const auto& m : config.members) {
    json devices = json::array();
    for (const auto& d : m.devices())
      devices.push_back({{"d_min", d.d_min()},
                         {"d_max", d.d_max()},
                         {"alpha", d.utility().alpha()},
                         {"beta", d.utility().beta()}});
    members.push_back({{"id", m.id()},
                       {"envelope", {{"z_min", m.envelope().z_min()}, {"z_max", m.envelope().z_max()}}},
                       {"devices", devices}});
  }
  doc["members"] = members;
  return doc.dump(2) + "\n";
}

void save_community_config(const CommunityConfig& config, const std::filesystem::path& path) {
  write_file(path, serialize_community_config(config));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_value(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

GenerationSeries parse_generation_csv(std::istream& in, const CommunityConfig& config) {
  std::map<std::string, std::size_t> member_index;
  for (std::size_t i = 0; i < config.members.size(); ++i) member_index[config.members[i].id()] = i;

  std::string line;
  if (!std::getline(in, line)) throw InputError({"generation file is empty: no intervals"});
  if (trim(line) != "interval,member_id,b_kwh")
    throw InputError({"line 1: expected header interval,member_id,b_kwh"});

  std::vector<std::string> errors;
  std::map<long, std::vector<std::optional<double>>> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string at = "line " + std::to_string(line_no) + ": ";
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1))
      fields.push_back(rest.substr(0, pos));
    fields.push_back(rest);
    if (fields.size() != 3) {
      errors.push_back(at + "expected 3 fields");
      continue;
    }
    long interval = 0;
    double b = 0.0;
    if (!parse_value(fields[0], interval)) {
      errors.push_back(at + "invalid interval index");
      continue;
    }
    const std::string id(trim(fields[1]));
    auto it = member_index.find(id);
    if (it == member_index.end()) {
      errors.push_back(at + "unknown member id " + id);
      continue;
    }
    if (!parse_value(fields[2], b) || !std::isfinite(b)) {
      errors.push_back(at + "invalid generation value");
      continue;
    }
    if (b < 0.0) {
      errors.push_back(at + "generation must be ≥ 0");
      continue;
    }
    auto& row = cells[interval];
    row.resize(config.members.size());
    if (row[it->second]) {
      errors.push_back(at + "duplicate cell for interval " + std::to_string(interval) + ", member " + id);
      continue;
    }
    row[it->second] = b;
  }

  GenerationSeries series;
  for (auto& [interval, row] : cells) {
    std::vector<double> values;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i])
        errors.push_back("interval " + std::to_string(interval) + ": missing member " + config.members[i].id());
      else
        values.push_back(*row[i]);
    }
    series.intervals.push_back(interval);
    series.b.push_back(std::move(values));
  }
  if (!errors.empty()) throw InputError(std::move(errors));
  return series;
}

GenerationSeries load_generation_csv(const std::filesystem::path& path, const CommunityConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError({path.string() + ": cannot open file"});
  return parse_generation_csv(in, config);
}

namespace {

// Shortest text that parses back to the same double.
std::string exact_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

void save_generation_csv(const GenerationSeries& series, const CommunityConfig& config,
                         const std::filesystem::path& path) {
  std::string out = "interval,member_id,b_kwh\n";
  for (std::size_t t = 0; t < series.size(); ++t)
    for (std::size_t i = 0; i < config.members.size(); ++i)
      out += std::to_string(series.intervals[t]) + "," + config.members[i].id() + "," +
             exact_number(series.b[t][i]) + "\n";
  write_file(path, out);
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format: " + name);
}

std::string format_number(double x) {
  if (std::abs(x) < kReportZero) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double round_report(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = format_number(x);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

json to_json(const PriceDecision& price) {
  return {{"gamma", round_report(price.gamma)},
          {"zone", to_string(price.zone)},
          {"sigma1", round_report(price.sigma1)},
          {"sigma2", round_report(price.sigma2)}};
}

json to_json(const Schedule& s) {
  json consumption = json::array();
  for (double d : s.consumption()) consumption.push_back(round_report(d));
  json out = {{"consumption", consumption},
              {"net", round_report(s.net())},
              {"payment", round_report(s.payment())},
              {"utility", round_report(s.utility())},
              {"surplus", round_report(s.surplus())}};
  if (s.curtailment() > 0.0) out["curtailment"] = round_report(s.curtailment());
  return out;
}

json to_json(const MemberThresholds& th) {
  return {{"theta1", round_report(th.theta1)}, {"theta2", round_report(th.theta2)}};
}

json to_json(const BenchmarkThresholds& th) {
  return {{"delta1", round_report(th.delta1)},
          {"delta2", round_report(th.delta2)},
          {"delta3", round_report(th.delta3)},
          {"delta4", round_report(th.delta4)}};
}

json to_json(const IntervalResult& row) {
  json members = json::array();
  for (const auto& s : row.per_member) members.push_back(to_json(s));
  json out = {{"interval", row.interval},
              {"scheme", to_string(row.scheme)},
              {"welfare", round_report(row.welfare)},
              {"z_pcc", round_report(row.z_pcc)},
              {"per_member", members}};
  if (row.gamma) out["gamma"] = round_report(*row.gamma);
  if (row.zone) out["zone"] = to_string(*row.zone);
  return out;
}

json to_json(const TimeseriesReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  json summary = json::array();
  for (const auto& s : report.summary)
    summary.push_back({{"scheme", to_string(s.scheme)},
                       {"total_welfare", round_report(s.total_welfare)},
                       {"average_welfare", round_report(s.average_welfare)},
                       {"gain_over_passive_pct", round_report(s.gain_over_passive_pct)}});
  json skipped = json::array();
  for (const auto& s : report.skipped) skipped.push_back({{"interval", s.interval}, {"reason", s.reason}});
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "timeseries"},
          {"evaluated_intervals", report.evaluated_intervals},
          {"intervals", rows},
          {"summary", summary},
          {"skipped", skipped}};
}

json to_json(const SweepReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    for (std::size_t s = 0; s < kAllSchemes.size(); ++s)
      rows.push_back({{"width", round_report(r.envelope_width)},
                      {"scheme", to_string(kAllSchemes[s])},
                      {"avg_welfare", round_report(r.average_welfare[s])}});
  json skipped = json::array();
  for (const auto& [w, why] : report.skipped_widths) skipped.push_back({{"width", round_report(w)}, {"reason", why}});
  return {{"schema_version", kReportSchemaVersion}, {"kind", "oe_sweep"}, {"rows", rows}, {"skipped_widths", skipped}};
}

json to_json(const AxiomReport& report, const Community& community) {
  json ir = json::array();
  for (const auto& e : report.individual_rationality)
    ir.push_back({{"member_id", e.member_id}, {"margin", round_report(e.margin)}, {"pass", e.pass}});
  auto pairs = [&](const std::vector<std::pair<std::size_t, std::size_t>>& v) {
    json out = json::array();
    for (const auto& [i, j] : v) out.push_back({community[i].id(), community[j].id()});
    return out;
  };
  json penalty = json::array();
  for (std::size_t i : report.penalty_reward) penalty.push_back(community[i].id());
  return {{"price", to_json(report.price)},
          {"individual_rationality", ir},
          {"profit_neutrality", {{"residual", round_report(report.profit_neutrality_residual)},
                                 {"pass", report.profit_neutrality_pass}}},
          {"equal_treatment", pairs(report.equal_treatment)},
          {"monotonicity", pairs(report.monotonicity)},
          {"penalty_reward", report.penalty_reward_vacuous ? json("vacuous") : penalty},
          {"clean", report.clean()}};
}

namespace {

std::string interval_csv(std::span<const IntervalResult> rows) {
  std::string out = "interval,scheme,welfare,z_pcc,gamma\n";
  for (const auto& r : rows)
    out += std::to_string(r.interval) + "," + to_string(r.scheme) + "," + format_number(r.welfare) + "," +
           format_number(r.z_pcc) + "," + (r.gamma ? format_number(*r.gamma) : std::string()) + "\n";
  return out;
}

}  // namespace

std::string render_report(const TimeseriesReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) return interval_csv(report.rows);
  return to_json(report).dump(2) + "\n";
}

std::string render_report(const SweepReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(report).dump(2) + "\n";
  std::string out = "width,scheme,avg_welfare\n";
  for (const auto& r : report.rows)
    for (std::size_t s = 0; s < kAllSchemes.size(); ++s)
      out += format_number(r.envelope_width) + "," + to_string(kAllSchemes[s]) + "," +
             format_number(r.average_welfare[s]) + "\n";
  return out;
}

std::string render_report(std::span<const IntervalResult> rows, ReportFormat format) {
  if (format == ReportFormat::Csv) return interval_csv(rows);
  if (rows.size() == 1) return to_json(rows[0]).dump(2) + "\n";
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

void write_report(const TimeseriesReport& report, ReportFormat format, const std::filesystem::path& path) {
  if (report.rows.empty()) throw std::invalid_argument("nothing to write");
  write_file(path, render_report(report, format));
}

void write_report(const SweepReport& report, ReportFormat format, const std::filesystem::path& path) {
  if (report.rows.empty()) throw std::invalid_argument("nothing to write");
  write_file(path, render_report(report, format));
}

void write_report(std::span<const IntervalResult> rows, ReportFormat format, const std::filesystem::path& path) {
  if (rows.empty()) throw std::invalid_argument("nothing to write");
  write_file(path, render_report(rows, format));
}

}  // namespace dnem
