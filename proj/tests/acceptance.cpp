// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "dnem/axioms.hpp"
#include "dnem/benchmark.hpp"
#include "dnem/central.hpp"
#include "dnem/io.hpp"
#include "dnem/mechanism.hpp"
#include "dnem/member_response.hpp"
#include "dnem/simulator.hpp"
#include "dnem/synthetic.hpp"
#include "support.hpp"

using namespace dnem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void run(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

double decentralized_welfare(const Community& c, const Tariff& t, std::span<const double> b, double* gamma,
                             std::vector<Schedule>* out) {
  const auto price = community_price(c, t, b);
  if (gamma) *gamma = price.gamma;
  double w = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto s = optimal_member_schedule(c[i], price.gamma, b[i]);
    w += s.surplus();
    if (out) out->push_back(std::move(s));
  }
  return w;
}

// Profit neutrality residuals seen while running criteria 1 and 2.
double worst_neutrality = 0.0;
long priced_intervals = 0;

void record_neutrality(const std::vector<Schedule>& s, const Tariff& t) {
  std::vector<double> payments;
  double z = 0.0;
  for (const auto& x : s) {
    payments.push_back(x.payment());
    z += x.net();
  }
  worst_neutrality = std::max(worst_neutrality, std::abs(check_profit_neutrality(payments, t, z)));
  ++priced_intervals;
}

Outcome criterion_welfare_optimality() {
  testing::Rng rng(1001);
  const int instances = 250;
  double worst = 0.0;
  for (int k = 0; k < instances; ++k) {
    auto inst = testing::random_instance(rng);
    std::vector<Schedule> s;
    const double w = decentralized_welfare(inst.community, inst.tariff, inst.b, nullptr, &s);
    record_neutrality(s, inst.tariff);
    const double opt = centralized_schedule(inst.community, inst.tariff, inst.b).welfare;
    worst = std::max(worst, std::abs(w - opt) / std::max(1.0, std::abs(opt)));
  }
  return {worst <= 1e-6, fmt("%d instances, max relative gap %.3g (limit 1e-6)", instances, worst)};
}

// 20 generation values for one member covering each benchmark zone that
// intersects the feasible range, topped up with evenly spaced points.
std::vector<double> zone_grid(const Member& m, const Tariff& t, int* zones_hit) {
  const auto [lo, hi] = testing::feasible_b_range(m);
  const auto th = benchmark_thresholds(m, t);
  const double edges[6] = {-1e300, th.delta1, th.delta2, th.delta3, th.delta4, 1e300};
  std::vector<double> pts;
  for (int z = 0; z < 5; ++z) {
    const double a = std::max(lo, edges[z]), b = std::min(hi, edges[z + 1]);
    if (a > b) continue;
    ++*zones_hit;
    for (int j = 1; j <= 3; ++j) pts.push_back(a + (b - a) * j / 4.0);
  }
  for (int j = 0; pts.size() < 20; ++j) pts.push_back(std::min(hi, lo + (hi - lo) * j / 4.0));
  return pts;
}

Outcome criterion_individual_rationality() {
  testing::Rng rng(1002);
  const int instances = 200;
  long points = 0;
  double worst = 1e300;
  std::array<long, 5> zone_points{};
  for (int k = 0; k < instances; ++k) {
    auto inst = testing::random_instance(rng);
    for (std::size_t i = 0; i < inst.community.size(); ++i) {
      int hit = 0;
      auto b = inst.b;
      for (double bi : zone_grid(inst.community[i], inst.tariff, &hit)) {
        b[i] = bi;
        double gamma = 0.0;
        std::vector<Schedule> s;
        decentralized_welfare(inst.community, inst.tariff, b, &gamma, &s);
        record_neutrality(s, inst.tariff);
        for (std::size_t j = 0; j < inst.community.size(); ++j) {
          const auto bench = benchmark_response(inst.community[j], inst.tariff, b[j]);
          worst = std::min(worst, s[j].surplus() - bench.schedule.surplus());
          ++zone_points[static_cast<std::size_t>(bench.branch)];
        }
        ++points;
      }
    }
  }
  bool all_zones = true;
  for (long n : zone_points) all_zones = all_zones && n > 0;
  return {worst >= -1e-9 && all_zones,
          fmt("%ld priced points, min margin %.3g (limit -1e-9), member-points per zone %ld/%ld/%ld/%ld/%ld", points,
              worst, zone_points[0], zone_points[1], zone_points[2], zone_points[3], zone_points[4])};
}

Outcome criterion_profit_neutrality() {
  return {priced_intervals > 0 && worst_neutrality <= 1e-8,
          fmt("%ld priced intervals, max |residual| %.3g (limit 1e-8)", priced_intervals, worst_neutrality)};
}

Outcome criterion_axioms() {
  testing::Rng rng(1004);
  int clean = 0;
  const int intervals = 100;
  for (int k = 0; k < intervals; ++k) {
    auto inst = testing::random_instance(rng);
    if (verify_axioms(inst.community, inst.tariff, inst.b).clean()) ++clean;
  }
  return {clean == intervals, fmt("%d/%d intervals clean", clean, intervals)};
}

Outcome criterion_oracle() {
  testing::Rng rng(1005);
  const double step = 1e-3;
  double worst_gap = 0.0, worst_below = 0.0;
  for (int k = 0; k < 20; ++k) {
    auto inst = testing::random_grid_instance(rng, step);
    const double grid = grid_oracle(inst.community, inst.tariff, inst.b, step);
    const double w = centralized_schedule(inst.community, inst.tariff, inst.b).welfare;
    worst_gap = std::max(worst_gap, std::abs(w - grid));
    worst_below = std::max(worst_below, grid - w);
  }
  return {worst_gap <= 1e-2 && worst_below <= 1e-12,
          fmt("20 instances, max |W - grid| %.3g (limit 1e-2), max grid excess %.3g (limit 1e-12)", worst_gap,
              worst_below)};
}

Outcome criterion_worked_scenario() {
  const Community c = testing::worked_community();
  const Tariff t = testing::worked_tariff();
  const auto& b = testing::kWorkedB;
  const auto nem = testing::nem_payment(t.pi_plus(), t.pi_minus());

  // Grid confirmation of each expected value, independent of the library solvers.
  const double g_dnem = grid_oracle(c, t, b, 1e-3);
  double g_bench = 0.0, g_pooled_u = 0.0, g_pooled_z = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto best = testing::grid_single_device(c[i], b[i], nem, 1e-4);
    g_bench += best.value;
    const auto& u = c[i].devices()[0].utility();
    g_pooled_u += testing::quad_utility(u.alpha(), u.beta(), best.d);
    g_pooled_z += best.d - b[i];
  }
  const double g_pooled = g_pooled_u - (g_pooled_z >= 0 ? t.pi_plus() : t.pi_minus()) * g_pooled_z;
  double g_passive = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& u = c[i].devices()[0].utility();
    const double d = (u.alpha() - t.pi_plus()) / u.beta();
    g_passive += testing::quad_utility(u.alpha(), u.beta(), d) - nem(d - b[i]);
  }
  const double expected[4] = {5.69, 5.77, 6.37, 6.41};
  const double grids[4] = {g_passive, g_bench, g_pooled, g_dnem};
  bool grids_ok = true;
  for (int s = 0; s < 4; ++s) grids_ok = grids_ok && std::abs(grids[s] - expected[s]) <= 1e-2;

  const double pi_z = solve_pi_z(c, t, b);
  const auto rows = run_interval(c, t, b);
  double worst = std::abs(pi_z - 0.3);
  for (int s = 0; s < 4; ++s) worst = std::max(worst, std::abs(rows[static_cast<std::size_t>(s)].welfare - expected[s]));
  return {grids_ok && worst <= 1e-9,
          fmt("grid (passive, benchmark, community, dnem) = (%.4f, %.4f, %.4f, %.4f); pi_z %.12g; "
              "max deviation from (5.69, 5.77, 6.37, 6.41, 0.3) %.3g (limit 1e-9)",
              grids[0], grids[1], grids[2], grids[3], pi_z, worst)};
}

Outcome criterion_envelope_trend() {
  const auto sc = make_synthetic_case({});
  const auto base = sc.config.community();
  const TariffSchedule tariff = [&](long t) { return sc.config.tariff.at(t); };
  const std::vector<double> widths{0.5, 1, 2, 4, 8};
  const auto sweep = oe_sweep(base, tariff, sc.generation, widths);
  if (sweep.rows.size() != widths.size()) return {false, "some widths were infeasible"};
  bool monotone = true;
  for (std::size_t r = 1; r < sweep.rows.size(); ++r)
    for (std::size_t s = 0; s < 4; ++s)
      monotone = monotone && sweep.rows[r].average_welfare[s] >= sweep.rows[r - 1].average_welfare[s] - 1e-9;

  long checked = 0, violations = 0;
  for (double w : widths) {
    const auto c = with_uniform_envelope(base, w);
    for (std::size_t t = 0; t < sc.generation.size(); ++t) {
      const auto rows = run_interval(c, tariff(sc.generation.intervals[t]), sc.generation.b[t]);
      for (std::size_t s = 1; s < 4; ++s) violations += rows[s].welfare < rows[s - 1].welfare - 1e-9;
      ++checked;
    }
  }
  std::ostringstream dnem;
  for (const auto& r : sweep.rows) dnem << (dnem.tellp() ? "/" : "") << format_number(r.average_welfare[3]);
  return {monotone && violations == 0,
          fmt("%zu members, widths 0.5..8 nondecreasing=%s, dnem averages %s, %ld intervals with %ld ordering "
              "violations",
              base.size(), monotone ? "yes" : "no", dnem.str().c_str(), checked, violations)};
}

Outcome criterion_limits() {
  testing::Rng rng(1008);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    auto inst = testing::random_instance(rng);
    std::vector<Member> wide;
    double r_plus = 0.0, r_minus = 0.0;
    for (const auto& m : inst.community.members()) {
      wide.push_back(m.with_envelope(OperatingEnvelope(-1e9, 1e9)));
      const auto r = member_reference_points(m, inst.tariff);
      r_plus += r.r_plus;
      r_minus += r.r_minus;
    }
    const auto s = sigma_thresholds(Community(wide), inst.tariff, inst.b);
    worst = std::max({worst, std::abs(s.sigma1 - r_plus), std::abs(s.sigma2 - r_minus)});
  }
  return {worst <= 1e-9, fmt("200 instances, max |sigma - sum R| %.3g (limit 1e-9)", worst)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_determinism(const char* cli) {
  SyntheticOptions o;
  o.days = 2;
  const auto sc = make_synthetic_case(o);
  const std::string text = serialize_community_config(sc.config);
  const auto back = parse_community_config(text);
  const bool roundtrip = back == sc.config && serialize_community_config(back) == text;

  const auto dir = std::filesystem::temp_directory_path() / "dnem_acceptance";
  std::filesystem::create_directories(dir);
  save_community_config(sc.config, dir / "config.json");
  save_generation_csv(sc.generation, sc.config, dir / "generation.csv");

  bool identical = true;
  std::string how;
  if (cli && *cli) {
    for (const char* fmt_name : {"json", "csv"}) {
      for (int k = 0; k < 2; ++k) {
        const std::string cmd = std::string("\"") + cli + "\" simulate --config \"" + (dir / "config.json").string() +
                                "\" --generation \"" + (dir / "generation.csv").string() + "\" --out \"" +
                                (dir / ("run" + std::to_string(k))).string() + "\" --format " + fmt_name;
        if (std::system(cmd.c_str()) != 0) return {false, "simulate exited nonzero"};
      }
      identical = identical && slurp(dir / "run0") == slurp(dir / "run1") && !slurp(dir / "run0").empty();
    }
    how = "cli simulate json+csv";
  } else {
    const auto c = sc.config.community();
    const TariffSchedule tariff = [&](long t) { return sc.config.tariff.at(t); };
    identical = render_report(run_timeseries(c, tariff, sc.generation), ReportFormat::Json) ==
                render_report(run_timeseries(c, tariff, sc.generation), ReportFormat::Json);
    how = "library render";
  }
  std::filesystem::remove_all(dir);
  return {roundtrip && identical,
          fmt("%s byte-identical=%s, config roundtrip identity=%s", how.c_str(), identical ? "yes" : "no",
              roundtrip ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  run(1, "decentralized welfare optimality", criterion_welfare_optimality);
  run(2, "individual rationality across benchmark zones", criterion_individual_rationality);
  run(3, "profit neutrality", criterion_profit_neutrality);
  run(4, "cost-causation axioms", criterion_axioms);
  run(5, "grid oracle equivalence", criterion_oracle);
  run(6, "worked two-member scenario", criterion_worked_scenario);
  run(7, "welfare trend under envelope relaxation", criterion_envelope_trend);
  run(8, "wide-envelope limit", criterion_limits);
  run(9, "deterministic reports and config roundtrip", [cli] { return criterion_determinism(cli); });
  std::printf("%s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " criteria failed").c_str());
  return failures == 0 ? 0 : 1;
}
