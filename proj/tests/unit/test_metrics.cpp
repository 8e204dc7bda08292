#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rltrc/config.hpp"
#include "rltrc/errors.hpp"
#include "rltrc/metrics.hpp"
#include "rltrc/scenarios.hpp"
#include "rltrc/sim/engine.hpp"

using namespace rltrc;

namespace {

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

MetricsLedger ledger_with_packets(int total, int delivered) {
  MetricsLedger l;
  for (int i = 0; i < total; ++i) {
    PacketEntry p;
    p.id = make_id<PacketId>(static_cast<std::uint64_t>(i));
    p.generated = i;
    p.fate = i < delivered ? PacketFate::Delivered : PacketFate::DroppedUnreachable;
    p.finished = i + 0.5;
    l.packets.push_back(p);
  }
  return l;
}

}  // namespace

TEST_CASE("empty ledger") {
  MetricsLedger l;
  l.nodes = {{make_id<NodeId>(0), 5, 5}, {make_id<NodeId>(1), 5, 5}};
  const auto r = compute_metrics(l);
  CHECK(r.omc == 0);
  CHECK(r.paln == 100.0);
  CHECK_FALSE(r.ntg.has_value());
  CHECK(r.awe == 0.0);
}

TEST_CASE("NTG and ADL") {
  const auto r = compute_metrics(ledger_with_packets(100, 80));
  CHECK(r.ntg.value() == 80.0);
  CHECK(r.adl == doctest::Approx(0.5));
}

TEST_CASE("AWE from invested and wasted energy") {
  MetricsLedger l;
  l.debits = {{0, {}, MessageKind::Data, 60}, {1, {}, MessageKind::Data, 40}};
  l.wastes = {{1, {}, {}, {}, {}, 2, 20, 0}};
  l.invested_time = {{0, 2.0}};
  const auto r = compute_metrics(l);
  CHECK(r.omc == 2);
  CHECK(r.awe == doctest::Approx(20.0));
  CHECK(r.awt == 0.0);
}

TEST_CASE("PALN and dead nodes add up to 100") {
  MetricsLedger l;
  for (int i = 0; i < 7; ++i) l.nodes.push_back({make_id<NodeId>(i), 1, i < 3 ? 0.0 : 0.5});
  const auto r = compute_metrics(l);
  CHECK(r.paln + 100.0 * 3 / 7 == doctest::Approx(100.0));
  CHECK(r.ec == doctest::Approx(3 * 1 + 4 * 0.5));
}

TEST_CASE("windowed series basics") {
  MetricsLedger l;
  l.duration = 30;
  CHECK_THROWS_AS(windowed_waste_series(l, 0), DomainError);
  auto s = windowed_waste_series(l, 10);
  REQUIRE(s.size() == 3);
  for (const auto& p : s) CHECK(p.awe == 0.0);
  CHECK(s.back().timestamp == 30.0);

  l.debits = {{1, {}, MessageKind::Data, 10}, {12, {}, MessageKind::Data, 10}, {25, {}, MessageKind::Data, 10}};
  l.wastes = {{2, {}, {}, {}, {}, 2, 5, 0}};
  s = windowed_waste_series(l, 10);
  CHECK(s[0].awe == doctest::Approx(50));
  CHECK(s[1].awe == 0.0);
  CHECK(s[2].awe == 0.0);
}

TEST_CASE("improving synthetic ledger gives a non-increasing series") {
  MetricsLedger l;
  l.duration = 100;
  std::vector<double> want_we(10, 0.0), want_ie(10, 0.0);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double t = 100.0 * i / 1000.0;
    const int w = static_cast<int>(t / 10);
    const double e = 1 + u(rng);
    l.debits.push_back({t, {}, MessageKind::Data, e});
    want_ie[w] += e;
    // waste share shrinks window by window
    const double share = 0.5 * (10 - w) / 10.0;
    l.wastes.push_back({t, {}, {}, {}, {}, 2, e * share, 0});
    want_we[w] += e * share;
  }
  const auto s = windowed_waste_series(l, 10);
  REQUIRE(s.size() == 10);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].awe == doctest::Approx(100 * want_we[i] / want_ie[i]).epsilon(1e-12));
    if (i > 0) CHECK(s[i].awe <= s[i - 1].awe);
  }
}

TEST_CASE("whole-run AWE is the invested-weighted mean of the windows") {
  auto c = desk_scale(50, 3, 60.0);
  const auto r = sim::simulate(c);
  double wsum = 0, isum = 0, tsum = 0, itsum = 0;
  for (const auto& p : r.report.series) {
    wsum += p.awe * p.invested_energy;
    isum += p.invested_energy;
    tsum += p.awt * p.invested_time;
    itsum += p.invested_time;
  }
  CHECK(wsum / isum == doctest::Approx(r.report.awe).epsilon(1e-9));
  CHECK(tsum / itsum == doctest::Approx(r.report.awt).epsilon(1e-9));
  CHECK(r.report.awe >= 0.0);
  CHECK(r.report.awe <= 100.0);
  CHECK(r.report.awt >= 0.0);
  CHECK(r.report.awt <= 100.0);
  // recomputation is pure
  const auto again = compute_metrics(r.ledger);
  CHECK(again.ec == r.report.ec);
  CHECK(again.awe == r.report.awe);
  CHECK(again.omc == r.report.omc);
}

TEST_CASE("CSV layout") {
  MetricsReport r;
  r.policy = "rl-trc";
  r.seed = 3;
  r.omc = 12;
  r.ec = 1.0 / 3.0;
  r.series = {{10, 1, 2, 0, 0}, {20, 0.5, -0.0, 0, 0}};
  const auto sum = summary_csv({r});
  CHECK(sum == "# rltrc-summary v1\npolicy,seed,OMC,EC,NTG,ADL,PALN,AWE,AWT\nrl-trc,3,12,0.333333,,0,100,0,0\n");
  const auto ser = series_csv({r});
  CHECK(count_lines(ser) == 2 + 2);
  CHECK(ser.find("rl-trc,3,20,0.5,0\n") != std::string::npos);
  CHECK(summary_csv({r}) == summary_csv({r}));
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1234567.0) == "1.23457e+06");
}

TEST_CASE("emit_csv writes bytes and reports failures") {
  const auto dir = std::filesystem::temp_directory_path() / "rltrc_emit_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "s.csv";
  emit_csv("a,b\n1,2\n", file);
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "a,b\n1,2\n");
  CHECK_THROWS_AS(emit_csv("x", dir / "missing" / "deeper" / "s.csv"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config parsing") {
  const auto c = parse_config("zones = 6\nnodes = 200\n");
  CHECK(c.zones == 6);
  CHECK(c.nodes == 200);
  CHECK(parse_config("").nodes == ScenarioConfig{}.nodes);
  CHECK(parse_config("# comment only\n\n").zones == 3);
  CHECK_THROWS_AS(parse_config("zones = 1\nnodes = 151\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("zones = 5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("nodes = 120\nnodes = 130\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("nodes = many\n"), ConfigError);
  CHECK(parse_config("mobility = gaussian\npolicy = fixed-max\n").mobility == MobilityModel::Gaussian);
}

TEST_CASE("every violation is reported with the field name") {
  try {
    parse_config("zones = 5\nradio_range_max = 99\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() >= 2);
    const std::string all = e.what();
    CHECK(all.find("zones") != std::string::npos);
    CHECK(all.find("radio_range_max") != std::string::npos);
  }
}

TEST_CASE("override flag lifts range checks but not structure") {
  CHECK_NOTHROW(parse_config("override_ranges = true\nzones = 1\nnodes = 2\narena_width = 50\narena_height = 50\n"
                             "min_nodes_per_zone = 1\nperipherals_per_boundary = 0\n"));
  CHECK_THROWS_AS(parse_config("override_ranges = true\nduration = -1\n"), ConfigError);
}

TEST_CASE("config text round-trips") {
  for (const auto& s : scenario_suite()) {
    CAPTURE(s.name);
    const auto back = parse_config(to_text(s.config));
    CHECK(to_text(back) == to_text(s.config));
  }
}
