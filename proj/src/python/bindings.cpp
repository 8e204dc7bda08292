// Python bindings: config handling, whole runs, and the pure model functions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "rltrc/config.hpp"
#include "rltrc/errors.hpp"
#include "rltrc/link_estimation.hpp"
#include "rltrc/metrics.hpp"
#include "rltrc/policy.hpp"
#include "rltrc/rewards.hpp"
#include "rltrc/scenarios.hpp"
#include "rltrc/sim/engine.hpp"

namespace py = pybind11;
using namespace rltrc;

namespace {

py::dict report_to_dict(const MetricsReport& r) {
  py::dict d;
  d["policy"] = r.policy;
  d["seed"] = r.seed;
  d["OMC"] = r.omc;
  d["EC"] = r.ec;
  d["NTG"] = r.ntg ? py::object(py::float_(*r.ntg)) : py::object(py::none());
  d["ADL"] = r.adl;
  d["PALN"] = r.paln;
  d["AWE"] = r.awe;
  d["AWT"] = r.awt;
  py::list series;
  for (const auto& p : r.series) series.append(py::make_tuple(p.timestamp, p.awe, p.awt));
  d["series"] = series;
  return d;
}

ScenarioConfig with_overrides(ScenarioConfig cfg, const py::dict& overrides) {
  std::vector<std::string> problems;
  for (auto [k, v] : overrides) {
    const auto key = py::str(k).cast<std::string>();
    std::string value = py::isinstance<py::bool_>(v) ? (v.cast<bool>() ? "true" : "false") : py::str(v).cast<std::string>();
    std::string err;
    if (!apply_setting(cfg, key, value, err)) problems.push_back(err);
  }
  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

py::dict simulate_config(const ScenarioConfig& cfg, const sim::Topology* topo) {
  py::gil_scoped_release release;
  auto r = sim::simulate(cfg, topo);
  py::gil_scoped_acquire acquire;
  py::dict d = report_to_dict(r.report);
  d["trace_digest"] = r.trace_digest;
  d["route_discoveries"] = r.route_discoveries;
  d["link_failures"] = r.link_failures;
  d["mean_sigma"] = r.mean_sigma;
  d["packets"] = r.ledger.packets.size();
  return d;
}

Trend trend_of(int t) {
  if (t > 0) return Trend::Approaching;
  if (t < 0) return Trend::Receding;
  return Trend::Unknown;
}

}  // namespace

PYBIND11_MODULE(_rltrc, m) {
  m.doc() = "Zoned SD-WSN transmission range control simulator";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("scenario_names", [] {
    std::vector<std::string> out;
    for (const auto& s : scenario_suite()) out.push_back(s.name);
    return out;
  });
  m.def("default_config_text", [] { return to_text(ScenarioConfig{}); });
  m.def("validate_config", [](const std::string& text) {
    // empty when valid, otherwise every violated constraint
    try {
      parse_config(text);
      return std::vector<std::string>{};
    } catch (const ConfigError& e) {
      return e.violations();
    }
  }, py::arg("text"));

  m.def("run_scenario",
        [](const std::string& name, std::uint64_t seed, std::optional<std::string> policy, py::dict overrides) {
          auto s = find_scenario(name);
          if (!s) throw py::value_error("unknown scenario '" + name + "'");
          ScenarioConfig cfg = with_overrides(s->config, overrides);
          cfg.seed = seed;
          if (policy) {
            auto p = parse_policy(*policy);
            if (!p) throw py::value_error("unknown policy '" + *policy + "'");
            cfg.policy = *p;
          }
          return simulate_config(cfg, s->topology ? &*s->topology : nullptr);
        },
        py::arg("name"), py::arg("seed") = 1, py::arg("policy") = py::none(), py::arg("overrides") = py::dict());

  m.def("run_config",
        [](const std::string& text, std::uint64_t seed) {
          ScenarioConfig cfg = parse_config(text);
          cfg.seed = seed;
          return simulate_config(cfg, nullptr);
        },
        py::arg("text"), py::arg("seed") = 1, "Simulate a key = value config text.");

  m.def("summary_csv", [](const std::string& name, std::vector<std::uint64_t> seeds) {
    auto s = find_scenario(name);
    if (!s) throw py::value_error("unknown scenario '" + name + "'");
    std::vector<MetricsReport> reports;
    for (auto seed : seeds) {
      ScenarioConfig cfg = s->config;
      cfg.seed = seed;
      reports.push_back(sim::simulate(cfg, s->topology ? &*s->topology : nullptr).report);
    }
    return summary_csv(reports);
  }, py::arg("name"), py::arg("seeds"));

  m.def("compute_sigma", [](double ri, double rn) { return compute_sigma({ri, rn}); }, py::arg("ri"), py::arg("rn"));
  m.def("select_power_level",
        [](std::vector<double> available, double sigma, bool reliable, std::uint64_t seed, int draws) {
          Rng rng(seed);
          std::vector<double> out;
          out.reserve(static_cast<std::size_t>(std::max(draws, 0)));
          for (int i = 0; i < draws; ++i) out.push_back(select_power_level(available, sigma, reliable, rng));
          return out;
        },
        py::arg("available"), py::arg("sigma"), py::arg("reliable") = true, py::arg("seed") = 1,
        py::arg("draws") = 1, "Seeded draws of the exploration rule.");
  m.def("node_self_reward", &node_self_reward, py::arg("r_prev"), py::arg("p_max"), py::arg("action"));
  m.def("successor_reward_ack",
        [](double prr, double ratio, int trend) { return successor_reward_ack(prr, ratio, trend_of(trend)); },
        py::arg("prr"), py::arg("rss_over_tpl"), py::arg("trend"));
  m.def("successor_reward_noack", &successor_reward_noack, py::arg("rd_prev"), py::arg("turn"), py::arg("mx_atmpt"),
        py::arg("broad_cost"));
  m.def("expected_max_neighbor_distance", &expected_max_neighbor_distance, py::arg("n"), py::arg("radius"));
  m.def("min_hop_count", &min_hop_count, py::arg("theta"), py::arg("phi"), py::arg("av_rad"));
  m.def("avg_hop_count", &avg_hop_count, py::arg("theta"), py::arg("phi"), py::arg("av_rad"));
  m.def("broadcast_cost", &broadcast_cost, py::arg("ng"), py::arg("h_avg"), py::arg("cap") = kDefaultBroadcastCap);
  m.def("session_reward", &session_reward, py::arg("ew"), py::arg("et"));
  m.def("estimate_attenuation",
        [](double pwr1, double rss1, double travel1, double pwr2, double rss2, double travel2, double vs) {
          PacketRecord a{0.0, travel1, pwr1, rss1, std::nullopt};
          PacketRecord b{1.0, 1.0 + travel2, pwr2, rss2, std::nullopt};
          return estimate_attenuation(a, b, vs);
        },
        py::arg("pwr1"), py::arg("rss1"), py::arg("travel1"), py::arg("pwr2"), py::arg("rss2"), py::arg("travel2"),
        py::arg("signal_speed") = 4000.0);
  m.def("available_levels",
        [](std::vector<double> levels, double p_thres) {
          auto a = available_levels(levels, p_thres);
          return std::vector<double>(a.begin(), a.end());
        },
        py::arg("levels"), py::arg("p_thres"));
}
