// Command-line front end for the dnem library.
//
// Exit codes: 0 success, 1 validation error, 2 runtime/feasibility error,
// 3 verify-axioms found a violation.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dnem/io.hpp"
#include "dnem/synthetic.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitAxiomViolation = 3;

std::vector<double> parse_widths(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    is.imbue(std::locale::classic());
    double w = 0.0;
    if (!(is >> w) || w < 0.0) throw dnem::InputError({"--widths: invalid width '" + item + "'"});
    out.push_back(w);
  }
  if (out.empty()) throw dnem::InputError({"--widths: no widths given"});
  return out;
}

std::size_t interval_position(const dnem::GenerationSeries& g, long interval) {
  for (std::size_t t = 0; t < g.size(); ++t)
    if (g.intervals[t] == interval) return t;
  throw dnem::InputError({"--interval: interval " + std::to_string(interval) + " not in generation file"});
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envelope-aware dynamic NEM community market simulator"};
  app.require_subcommand(1);

  std::string config_path, generation_path, out_path, member_id, format = "json", widths_text;
  long interval = 0;
  double gamma = 0.0, b = 0.0, step = 1e-3;

  auto* price = app.add_subcommand("price", "Announce the community price for one interval");
  price->add_option("--config", config_path)->required();
  price->add_option("--generation", generation_path)->required();
  price->add_option("--interval", interval)->required();

  auto* respond = app.add_subcommand("respond", "Optimal member schedule at a given community price");
  respond->add_option("--config", config_path)->required();
  respond->add_option("--member", member_id)->required();
  respond->add_option("--gamma", gamma)->required();
  respond->add_option("--b", b)->required();

  auto* bench = app.add_subcommand("benchmark", "Standalone NEM response of one member");
  bench->add_option("--config", config_path)->required();
  bench->add_option("--member", member_id)->required();
  bench->add_option("--b", b)->required();
  bench->add_option("--interval", interval, "Interval index selecting the ToU rate");

  auto* simulate = app.add_subcommand("simulate", "Four-scheme time-series comparison");
  simulate->add_option("--config", config_path)->required();
  simulate->add_option("--generation", generation_path)->required();
  simulate->add_option("--out", out_path)->required();
  simulate->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* sweep = app.add_subcommand("sweep-oe", "Average welfare per scheme across envelope widths");
  std::string sweep_format = "csv";
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--generation", generation_path)->required();
  sweep->add_option("--widths", widths_text)->required();
  sweep->add_option("--out", out_path)->required();
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify-axioms", "Check the cost-causation axioms on every interval");
  verify->add_option("--config", config_path)->required();
  verify->add_option("--generation", generation_path)->required();

  auto* oracle = app.add_subcommand("oracle", "Grid-search welfare versus the centralized optimum");
  oracle->add_option("--config", config_path)->required();
  oracle->add_option("--generation", generation_path)->required();
  oracle->add_option("--step", step)->required();

  auto* synth = app.add_subcommand("synth", "Write a synthetic community config and generation file");
  dnem::SyntheticOptions synth_opts;
  std::string synth_config, synth_generation;
  synth->add_option("--members", synth_opts.members);
  synth->add_option("--days", synth_opts.days);
  synth->add_option("--interval-minutes", synth_opts.interval_minutes);
  synth->add_option("--envelope", synth_opts.envelope);
  synth->add_option("--seed", synth_opts.seed);
  synth->add_option("--config-out", synth_config)->required();
  synth->add_option("--generation-out", synth_generation)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const auto c = dnem::make_synthetic_case(synth_opts);
      dnem::save_community_config(c.config, synth_config);
      dnem::save_generation_csv(c.generation, c.config, synth_generation);
      return 0;
    }

    const auto config = dnem::load_community_config(config_path);
    const auto community = config.community();
    const dnem::TariffSchedule tariff = [&](long t) { return config.tariff.at(t); };

    if (*respond) {
      const auto& m = community[community.index_of(member_id)];
      const auto r = dnem::member_response(m, gamma, b);
      json out = dnem::to_json(r.schedule);
      out["member_id"] = m.id();
      out["gamma"] = dnem::round_report(gamma);
      out["thresholds"] = dnem::to_json(dnem::member_thresholds(m, gamma));
      out["marginal_price"] = dnem::round_report(r.marginal_price);
      print(out);
      return 0;
    }
    if (*bench) {
      const auto& m = community[community.index_of(member_id)];
      const auto t = tariff(interval);
      const auto r = dnem::benchmark_response(m, t, b);
      print({{"member_id", m.id()},
             {"thresholds", dnem::to_json(dnem::benchmark_thresholds(m, t))},
             {"branch", dnem::to_string(r.branch)},
             {"marginal_price", dnem::round_report(r.marginal_price)},
             {"schedule", dnem::to_json(r.schedule)}});
      return 0;
    }

    const auto generation = dnem::load_generation_csv(generation_path, config);
    if (generation.size() == 0) throw dnem::InputError({"generation file has no intervals"});

    if (*price) {
      const std::size_t t = interval_position(generation, interval);
      json out = dnem::to_json(dnem::community_price(community, tariff(interval), generation.b[t]));
      out["interval"] = interval;
      print(out);
      return 0;
    }
    if (*simulate) {
      const auto report = dnem::run_timeseries(community, tariff, generation);
      for (const auto& s : report.skipped) std::cerr << "skipped interval " << s.interval << ": " << s.reason << "\n";
      if (report.evaluated_intervals == 0) {
        std::cerr << "error: every interval was infeasible\n";
        return kExitRuntime;
      }
      dnem::write_report(report, dnem::parse_report_format(format), out_path);
      return report.skipped.empty() ? 0 : kExitRuntime;
    }
    if (*sweep) {
      const auto widths = parse_widths(widths_text);
      const auto report = dnem::oe_sweep(community, tariff, generation, widths);
      dnem::write_report(report, dnem::parse_report_format(sweep_format), out_path);
      for (const auto& [w, why] : report.skipped_widths)
        std::cerr << "skipped width " << w << ": " << why << "\n";
      return 0;
    }
    if (*verify) {
      json intervals = json::array();
      bool clean = true;
      for (std::size_t t = 0; t < generation.size(); ++t) {
        const auto report = dnem::verify_axioms(community, tariff(generation.intervals[t]), generation.b[t]);
        json j = dnem::to_json(report, community);
        j["interval"] = generation.intervals[t];
        intervals.push_back(std::move(j));
        clean = clean && report.clean();
      }
      print({{"schema_version", dnem::kReportSchemaVersion}, {"clean", clean}, {"intervals", intervals}});
      return clean ? 0 : kExitAxiomViolation;
    }
    if (*oracle) {
      json rows = json::array();
      for (std::size_t t = 0; t < generation.size(); ++t) {
        const auto tr = tariff(generation.intervals[t]);
        const double grid = dnem::grid_oracle(community, tr, generation.b[t], step);
        const double central = dnem::centralized_schedule(community, tr, generation.b[t]).welfare;
        rows.push_back({{"interval", generation.intervals[t]},
                        {"oracle_welfare", dnem::round_report(grid)},
                        {"central_welfare", dnem::round_report(central)},
                        {"gap", dnem::round_report(central - grid)}});
      }
      print({{"schema_version", dnem::kReportSchemaVersion}, {"step", step}, {"intervals", rows}});
      return 0;
    }
  } catch (const dnem::InputError& e) {
    for (const auto& msg : e.errors()) std::cerr << "error: " << msg << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
