#include "rltrc/golden.hpp"

#include <cstdio>
#include <sstream>

#include "rltrc/errors.hpp"

namespace rltrc {

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

GoldenTrace golden_trace(const Scenario& scenario, std::uint64_t seed) {
  ScenarioConfig cfg = scenario.config;
  cfg.seed = seed;
  const auto result = sim::simulate(cfg, scenario.topology ? &*scenario.topology : nullptr);
  const std::vector<MetricsReport> reports{result.report};
  GoldenTrace g;
  g.scenario = scenario.name;
  g.seed = seed;
  g.csv_digest = fnv1a(summary_csv(reports) + series_csv(reports));
  g.trace_digest = result.trace_digest;
  g.events = result.ledger.events_processed;
  return g;
}

std::string format_golden(const std::vector<GoldenTrace>& traces) {
  std::string out = "# rltrc-golden v1\n";
  char buf[128];
  for (const auto& g : traces) {
    std::snprintf(buf, sizeof buf, " %llu %016llx %016llx %llu\n", static_cast<unsigned long long>(g.seed),
                  static_cast<unsigned long long>(g.csv_digest), static_cast<unsigned long long>(g.trace_digest),
                  static_cast<unsigned long long>(g.events));
    out += g.scenario + buf;
  }
  return out;
}

std::vector<GoldenTrace> parse_golden(std::string_view text) {
  std::vector<GoldenTrace> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    GoldenTrace g;
    std::string csv;
    std::string trace;
    if (!(ls >> g.scenario >> g.seed >> csv >> trace >> g.events)) throw Error("bad golden line: " + line);
    g.csv_digest = std::stoull(csv, nullptr, 16);
    g.trace_digest = std::stoull(trace, nullptr, 16);
    out.push_back(g);
  }
  return out;
}

std::vector<std::pair<std::string, std::uint64_t>> golden_cases() {
  return {{"two-node-static", 1}, {"line-3", 7}, {"conservation-50", 11}, {"walk-100", 3}, {"gauss-100", 5}};
}

}  // namespace rltrc
