#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "rltrc/metrics.hpp"
#include "rltrc/rewards.hpp"

using namespace rltrc;

TEST_CASE("oracle: max distance") {
  CHECK(oracle::max_distance(3, 0.0, 1000, 1) == 0.0);
  CHECK(oracle::max_distance(1, 9.0, 300000, 2) == doctest::Approx(6.0).epsilon(0.01));
  CHECK(oracle::max_distance(10, 10.0, 300000, 3) == doctest::Approx(200.0 / 21.0).epsilon(0.01));
}

TEST_CASE("oracle: shortest path") {
  const std::vector<std::vector<int>> line{{1}, {0, 2}, {1}};
  CHECK(oracle::shortest_path(line, 0, 2)->size() == 3);
  std::vector<std::vector<int>> complete(5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i != j) complete[i].push_back(j);
    }
  }
  CHECK(oracle::shortest_path(complete, 0, 4)->size() == 2);
  const std::vector<std::vector<int>> split{{}, {}};
  CHECK_FALSE(oracle::shortest_path(split, 0, 1).has_value());
}

TEST_CASE("oracle: ledger recheck") {
  MetricsLedger empty;
  const auto z = oracle::ledger_recheck(empty, 2);
  CHECK(z.ew == std::vector<double>{0, 0});
  CHECK(z.debits == 0.0);
  CHECK(z.awe == 0.0);

  MetricsLedger one;
  WasteInputs in;
  in.turn = 2;
  in.prev_action = 12;
  in.tau_a = 0.05;
  const Waste w = transmission_waste(in);
  one.wastes.push_back({0.5, make_id<ZoneId>(0), {}, {}, {}, 2, w.energy, w.time});
  CHECK(oracle::ledger_recheck(one, 1).ew[0] == 12.0);
}

TEST_CASE("oracle: randomized ledger agrees with incremental accumulation") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> zone(0, 3), turn(1, 4);
  MetricsLedger l;
  l.duration = 100;
  WasteLedger incremental(4);
  for (int i = 0; i < 1000; ++i) {
    const double t = 100 * u(rng);
    l.debits.push_back({t, {}, MessageKind::Data, u(rng)});
    l.invested_time.push_back({t, u(rng) * 0.01});
    const std::vector<ZoneBroadcastTerm> terms{{u(rng), 10 * u(rng)}};
    WasteInputs in;
    in.turn = turn(rng);
    in.prev_action = u(rng);
    in.tau_a = 0.05;
    in.zone_set = terms;
    in.hop_latency = 0.005;
    in.invested_energy = u(rng);
    in.invested_time = u(rng);
    const Waste w = transmission_waste(in);
    const ZoneId z = make_id<ZoneId>(zone(rng));
    incremental.accumulate(z, w);
    l.wastes.push_back({t, z, {}, {}, {}, in.turn, w.energy, w.time});
  }
  const auto flat = oracle::ledger_recheck(l, 4);
  const auto report = compute_metrics(l);
  std::vector<double> ew, et;
  for (std::uint32_t z = 0; z < 4; ++z) {
    ew.push_back(incremental.ew(make_id<ZoneId>(z)));
    et.push_back(incremental.et(make_id<ZoneId>(z)));
  }
  CHECK(oracle::compare_totals(flat, ew, et, flat.debits, report.awe, report.awt, 1e-9) == "");
}
