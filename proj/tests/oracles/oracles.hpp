#pragma once

// Brute-force reference implementations. Deliberately naive: each one
// recomputes its answer by a second code path that shares nothing with the
// library beyond the data types.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rltrc/ids.hpp"
#include "rltrc/ledger.hpp"

namespace rltrc::oracle {

// Monte Carlo mean of the largest distance from the centre among n points
// drawn uniformly in a disc of radius R.
double max_distance(int n, double radius, std::uint64_t samples, std::uint64_t seed);

// Exhaustive search over simple paths. Among the hop-minimal routes returns
// the lexicographically smallest one. Graphs of up to 12 nodes.
std::optional<std::vector<NodeId>> shortest_path(const std::vector<std::vector<int>>& adjacency, int src, int dst);

// ng + ng^2 + ... + ng^terms by repeated multiplication.
double geometric_sum(double ng, int terms);

struct LedgerTotals {
  std::vector<double> ew;  // per zone
  std::vector<double> et;
  double debits = 0.0;
  double energy_drop = 0.0;  // sum over nodes of start - end
  double awe = 0.0;
  double awt = 0.0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t pending = 0;
};

// Flat re-summation of a finished ledger.
LedgerTotals ledger_recheck(const MetricsLedger& ledger, std::size_t zone_count);

// Relative difference, with |b| floored at 1e-300.
double rel_diff(double a, double b);

// Empty when every pair agrees to `tol`; otherwise the first mismatch.
std::string compare_totals(const LedgerTotals& flat, const std::vector<double>& ew, const std::vector<double>& et,
                           double ec, double awe, double awt, double tol);

}  // namespace rltrc::oracle
