#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dnem/axioms.hpp"
#include "dnem/benchmark.hpp"
#include "dnem/central.hpp"
#include "dnem/io.hpp"
#include "dnem/mechanism.hpp"
#include "dnem/member_response.hpp"
#include "dnem/simulator.hpp"
#include "dnem/synthetic.hpp"

namespace py = pybind11;
using namespace dnem;

namespace {

// Reports cross the boundary as plain dicts via their JSON form.
py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<double> consumption_of(const Schedule& s) { return {s.consumption().begin(), s.consumption().end()}; }

}  // namespace

PYBIND11_MODULE(_dnem, m) {
  m.doc() = "Envelope-aware dynamic NEM community market";

  py::register_exception<FeasibilityError>(m, "FeasibilityError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NoRootError>(m, "NoRootError", PyExc_RuntimeError);

  py::class_<Tariff>(m, "Tariff")
      .def(py::init<double, double>(), py::arg("pi_plus"), py::arg("pi_minus"))
      .def_property_readonly("pi_plus", &Tariff::pi_plus)
      .def_property_readonly("pi_minus", &Tariff::pi_minus)
      .def("__repr__", [](const Tariff& t) {
        return "Tariff(pi_plus=" + format_number(t.pi_plus()) + ", pi_minus=" + format_number(t.pi_minus()) + ")";
      });

  py::class_<OperatingEnvelope>(m, "OperatingEnvelope")
      .def(py::init<double, double>(), py::arg("z_min"), py::arg("z_max"))
      .def_property_readonly("z_min", &OperatingEnvelope::z_min)
      .def_property_readonly("z_max", &OperatingEnvelope::z_max);

  py::class_<Device>(m, "Device")
      .def(py::init([](double d_min, double d_max, double alpha, double beta) {
             return Device(d_min, d_max, QuadraticUtility(alpha, beta));
           }),
           py::arg("d_min"), py::arg("d_max"), py::arg("alpha"), py::arg("beta"))
      .def_property_readonly("d_min", &Device::d_min)
      .def_property_readonly("d_max", &Device::d_max)
      .def_property_readonly("alpha", [](const Device& d) { return d.utility().alpha(); })
      .def_property_readonly("beta", [](const Device& d) { return d.utility().beta(); })
      .def("utility", [](const Device& d, double x) { return utility_value(d, x); })
      .def("demand", [](const Device& d, double price) { return projected_demand(d, price); });

  py::class_<Member>(m, "Member")
      .def(py::init<std::string, std::vector<Device>, OperatingEnvelope>(), py::arg("id"), py::arg("devices"),
           py::arg("envelope"))
      .def_property_readonly("id", &Member::id)
      .def_property_readonly("devices", [](const Member& x) {
        return std::vector<Device>(x.devices().begin(), x.devices().end());
      })
      .def_property_readonly("envelope", &Member::envelope)
      .def("demand", [](const Member& x, double price) { return member_aggregate_demand(x, price); })
      .def("with_envelope", &Member::with_envelope);

  py::class_<Community>(m, "Community")
      .def(py::init<std::vector<Member>>(), py::arg("members"))
      .def("__len__", &Community::size)
      .def_property_readonly("members", [](const Community& c) {
        return std::vector<Member>(c.members().begin(), c.members().end());
      });

  py::class_<Schedule>(m, "Schedule")
      .def_property_readonly("consumption", &consumption_of)
      .def_property_readonly("net", &Schedule::net)
      .def_property_readonly("generation", &Schedule::generation)
      .def_property_readonly("curtailment", &Schedule::curtailment)
      .def_property_readonly("utility", &Schedule::utility)
      .def_property_readonly("payment", &Schedule::payment)
      .def_property_readonly("surplus", &Schedule::surplus);

  py::enum_<Zone>(m, "Zone")
      .value("Import", Zone::Import)
      .value("NetZero", Zone::NetZero)
      .value("Export", Zone::Export);

  py::class_<PriceDecision>(m, "PriceDecision")
      .def_readonly("gamma", &PriceDecision::gamma)
      .def_readonly("zone", &PriceDecision::zone)
      .def_readonly("sigma1", &PriceDecision::sigma1)
      .def_readonly("sigma2", &PriceDecision::sigma2);

  py::class_<MemberThresholds>(m, "MemberThresholds")
      .def_readonly("theta1", &MemberThresholds::theta1)
      .def_readonly("theta2", &MemberThresholds::theta2);

  py::class_<BenchmarkThresholds>(m, "BenchmarkThresholds")
      .def_readonly("delta1", &BenchmarkThresholds::delta1)
      .def_readonly("delta2", &BenchmarkThresholds::delta2)
      .def_readonly("delta3", &BenchmarkThresholds::delta3)
      .def_readonly("delta4", &BenchmarkThresholds::delta4);

  py::class_<CentralResult>(m, "CentralResult")
      .def_readonly("schedules", &CentralResult::schedules)
      .def_readonly("welfare", &CentralResult::welfare)
      .def_readonly("d_tilde_plus", &CentralResult::d_tilde_plus)
      .def_readonly("d_tilde_minus", &CentralResult::d_tilde_minus)
      .def_readonly("zone", &CentralResult::zone)
      .def_readonly("shadow_price", &CentralResult::shadow_price);

  m.def("nem_settlement", &nem_settlement, py::arg("tariff"), py::arg("z"));
  m.def("sigma_thresholds",
        [](const Community& c, const Tariff& t, const std::vector<double>& b) {
          const auto s = sigma_thresholds(c, t, b);
          return py::make_tuple(s.sigma1, s.sigma2);
        },
        py::arg("community"), py::arg("tariff"), py::arg("b"));
  m.def("community_price",
        [](const Community& c, const Tariff& t, const std::vector<double>& b) { return community_price(c, t, b); },
        py::arg("community"), py::arg("tariff"), py::arg("b"));
  m.def("member_thresholds", &member_thresholds, py::arg("member"), py::arg("gamma"));
  m.def("optimal_member_schedule", &optimal_member_schedule, py::arg("member"), py::arg("gamma"), py::arg("b"));
  m.def("benchmark_thresholds", &benchmark_thresholds, py::arg("member"), py::arg("tariff"));
  m.def("benchmark_schedule", &benchmark_schedule, py::arg("member"), py::arg("tariff"), py::arg("b"));
  m.def("passive_schedule", &passive_schedule, py::arg("member"), py::arg("tariff"), py::arg("b"));
  m.def("centralized_schedule",
        [](const Community& c, const Tariff& t, const std::vector<double>& b) { return centralized_schedule(c, t, b); },
        py::arg("community"), py::arg("tariff"), py::arg("b"));
  m.def("grid_oracle",
        [](const Community& c, const Tariff& t, const std::vector<double>& b, double step) {
          return grid_oracle(c, t, b, step);
        },
        py::arg("community"), py::arg("tariff"), py::arg("b"), py::arg("step"));

  m.def("verify_axioms",
        [](const Community& c, const Tariff& t, const std::vector<double>& b) {
          return to_python(to_json(verify_axioms(c, t, b), c));
        },
        py::arg("community"), py::arg("tariff"), py::arg("b"), "Axiom report as a dict.");

  m.def("run_interval",
        [](const Community& c, const Tariff& t, const std::vector<double>& b) {
          py::dict out;
          for (const auto& r : run_interval(c, t, b)) out[to_string(r.scheme)] = r.welfare;
          return out;
        },
        py::arg("community"), py::arg("tariff"), py::arg("b"), "Welfare per scheme for one interval.");

  m.def("simulate",
        [](const std::string& config_path, const std::string& generation_path) {
          const auto config = load_community_config(config_path);
          const auto generation = load_generation_csv(generation_path, config);
          const TariffSchedule tariff = [&](long t) { return config.tariff.at(t); };
          return to_python(to_json(run_timeseries(config.community(), tariff, generation)));
        },
        py::arg("config"), py::arg("generation"), "Four-scheme time-series report as a dict.");

  m.def("sweep_envelopes",
        [](const std::string& config_path, const std::string& generation_path, const std::vector<double>& widths) {
          const auto config = load_community_config(config_path);
          const auto generation = load_generation_csv(generation_path, config);
          const TariffSchedule tariff = [&](long t) { return config.tariff.at(t); };
          return to_python(to_json(oe_sweep(config.community(), tariff, generation, widths)));
        },
        py::arg("config"), py::arg("generation"), py::arg("widths"));

  m.def("load_community",
        [](const std::string& path) {
          const auto config = load_community_config(path);
          return py::make_tuple(config.community(), config.interval_minutes);
        },
        py::arg("path"), "(Community, interval_minutes) from a config file.");

  m.def("write_synthetic",
        [](const std::string& config_path, const std::string& generation_path, int members, int days,
           std::uint64_t seed) {
          SyntheticOptions o;
          o.members = members;
          o.days = days;
          o.seed = seed;
          const auto sc = make_synthetic_case(o);
          save_community_config(sc.config, config_path);
          save_generation_csv(sc.generation, sc.config, generation_path);
        },
        py::arg("config"), py::arg("generation"), py::arg("members") = 20, py::arg("days") = 7,
        py::arg("seed") = 2018);
}
