#pragma once

// Configuration and generation-series ingestion, and deterministic report
// serialization (JSON with sorted keys, or CSV; 12 significant digits).

#include <filesystem>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnem/axioms.hpp"
#include "dnem/benchmark.hpp"
#include "dnem/central.hpp"
#include "dnem/member_response.hpp"
#include "dnem/simulator.hpp"

namespace dnem {

inline constexpr int kReportSchemaVersion = 1;

struct CommunityConfig {
  std::vector<Member> members;
  TouTariff tariff;
  int interval_minutes;

  Community community() const { return Community(members); }
  bool operator==(const CommunityConfig&) const = default;
};

// Raised for unreadable or invalid input; carries one message per problem,
// each prefixed with the offending field path or line.
class InputError : public std::runtime_error {
 public:
  explicit InputError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

CommunityConfig parse_community_config(const std::string& text);
CommunityConfig load_community_config(const std::filesystem::path& path);
std::string serialize_community_config(const CommunityConfig& config);
void save_community_config(const CommunityConfig& config, const std::filesystem::path& path);

// CSV with header `interval,member_id,b_kwh`; every (interval, member) cell
// exactly once. Rows may come in any order; intervals are sorted.
GenerationSeries parse_generation_csv(std::istream& in, const CommunityConfig& config);
GenerationSeries load_generation_csv(const std::filesystem::path& path, const CommunityConfig& config);
void save_generation_csv(const GenerationSeries& series, const CommunityConfig& config,
                         const std::filesystem::path& path);

enum class ReportFormat { Json, Csv };
ReportFormat parse_report_format(const std::string& name);

// Magnitudes below this print as 0.
inline constexpr double kReportZero = 1e-12;

// Rounds to 12 significant digits.
double round_report(double x);
std::string format_number(double x);

nlohmann::json to_json(const PriceDecision& price);
nlohmann::json to_json(const Schedule& schedule);
nlohmann::json to_json(const MemberThresholds& th);
nlohmann::json to_json(const BenchmarkThresholds& th);
nlohmann::json to_json(const IntervalResult& row);
nlohmann::json to_json(const TimeseriesReport& report);
nlohmann::json to_json(const SweepReport& report);
nlohmann::json to_json(const AxiomReport& report, const Community& community);

std::string render_report(const TimeseriesReport& report, ReportFormat format);
std::string render_report(const SweepReport& report, ReportFormat format);
std::string render_report(std::span<const IntervalResult> rows, ReportFormat format);

// Throws std::invalid_argument("nothing to write") for empty results and
// std::runtime_error on I/O failure.
void write_report(const TimeseriesReport& report, ReportFormat format, const std::filesystem::path& path);
void write_report(const SweepReport& report, ReportFormat format, const std::filesystem::path& path);
void write_report(std::span<const IntervalResult> rows, ReportFormat format, const std::filesystem::path& path);

}  // namespace dnem
