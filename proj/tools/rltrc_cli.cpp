// Batch front end: runs scenarios and writes CSV.
//
//   rltrc run --config scenario.cfg --seed 1 --repeat 5 --out results/
//   rltrc run --scenario convergence-100 --policy fixed-max --out results/
//   rltrc scenarios
//   rltrc defaults > scenario.cfg
//   rltrc bless --out tests/golden/golden.txt
//
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rltrc/config.hpp"
#include "rltrc/errors.hpp"
#include "rltrc/golden.hpp"
#include "rltrc/metrics.hpp"
#include "rltrc/scenarios.hpp"
#include "rltrc/sim/engine.hpp"

namespace {

constexpr int kValidationError = 1;
constexpr int kRuntimeError = 2;

struct RunOptions {
  std::string config_path;
  std::string scenario;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string policy;
  int repeat = 1;
  int jobs = 1;
};

int do_run(const RunOptions& opt) {
  rltrc::ScenarioConfig cfg;
  std::optional<rltrc::sim::Topology> topology;
  if (!opt.scenario.empty()) {
    auto s = rltrc::find_scenario(opt.scenario);
    if (!s) {
      std::cerr << "unknown scenario '" << opt.scenario << "' (see `rltrc scenarios`)\n";
      return kValidationError;
    }
    cfg = s->config;
    topology = s->topology;
  } else if (!opt.config_path.empty()) {
    cfg = rltrc::load_config(opt.config_path);
  }
  if (!opt.policy.empty()) {
    auto p = rltrc::parse_policy(opt.policy);
    if (!p) {
      std::cerr << "unknown policy '" << opt.policy << "'\n";
      return kValidationError;
    }
    cfg.policy = *p;
  }
  if (auto problems = rltrc::validate(cfg); !problems.empty()) throw rltrc::ConfigError(std::move(problems));

  const auto* topo = topology ? &*topology : nullptr;
  std::vector<std::future<rltrc::MetricsReport>> pending;
  std::vector<rltrc::MetricsReport> reports;
  for (int k = 0; k < opt.repeat; ++k) {
    rltrc::ScenarioConfig c = cfg;
    c.seed = opt.seed + static_cast<std::uint64_t>(k);
    pending.push_back(std::async(opt.jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [c, topo] { return rltrc::sim::simulate(c, topo).report; }));
    if (static_cast<int>(pending.size()) >= std::max(1, opt.jobs)) {
      for (auto& f : pending) reports.push_back(f.get());
      pending.clear();
    }
  }
  for (auto& f : pending) reports.push_back(f.get());

  const std::filesystem::path dir(opt.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw rltrc::IoError("cannot create '" + dir.string() + "': " + ec.message());
  rltrc::emit_csv(rltrc::summary_csv(reports), dir / "summary.csv");
  rltrc::emit_csv(rltrc::series_csv(reports), dir / "series.csv");
  std::cout << rltrc::summary_csv(reports);
  return 0;
}

int do_bless(const std::string& out) {
  std::vector<rltrc::GoldenTrace> traces;
  for (const auto& [name, seed] : rltrc::golden_cases()) {
    auto s = rltrc::find_scenario(name);
    if (!s) throw rltrc::Error("golden case names unknown scenario " + name);
    traces.push_back(rltrc::golden_trace(*s, seed));
  }
  const auto text = rltrc::format_golden(traces);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    rltrc::emit_csv(text, out);
    std::cerr << "wrote " << traces.size() << " traces to " << out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zoned SD-WSN transmission range control simulator"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Simulate and write summary.csv / series.csv");
  auto* cfg_opt = run_cmd->add_option("--config", run.config_path, "Scenario config (key = value lines)")
                      ->check(CLI::ExistingFile);
  run_cmd->add_option("--scenario", run.scenario, "Canned scenario name")->excludes(cfg_opt);
  run_cmd->add_option("--seed", run.seed, "First seed");
  run_cmd->add_option("--out", run.out_dir, "Output directory");
  run_cmd->add_option("--policy", run.policy, "rl-trc, fixed-max, odtpc-like, beacon-prr-like, beacon-rssi-like");
  run_cmd->add_option("--repeat", run.repeat, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  run_cmd->add_option("--jobs", run.jobs, "Parallel runs")->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("scenarios", "List canned scenarios");
  auto* defaults_cmd = app.add_subcommand("defaults", "Print the default config");

  std::string bless_out;
  auto* bless_cmd = app.add_subcommand("bless", "Regenerate golden traces");
  bless_cmd->add_option("--out", bless_out, "Destination file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kValidationError;
  }

  try {
    if (*run_cmd) return do_run(run);
    if (*list_cmd) {
      for (const auto& s : rltrc::scenario_suite()) std::cout << s.name << "\t" << s.description << '\n';
      return 0;
    }
    if (*defaults_cmd) {
      std::cout << rltrc::to_text(rltrc::ScenarioConfig{});
      return 0;
    }
    if (*bless_cmd) return do_bless(bless_out);
  } catch (const rltrc::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
