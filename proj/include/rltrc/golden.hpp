#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rltrc/scenarios.hpp"

namespace rltrc {

std::uint64_t fnv1a(std::string_view bytes) noexcept;

// Regression fingerprint of one scenario run.
struct GoldenTrace {
  std::string scenario;
  std::uint64_t seed = 0;
  std::uint64_t csv_digest = 0;    // summary + series CSV bytes
  std::uint64_t trace_digest = 0;  // popped event order
  std::uint64_t events = 0;

  bool operator==(const GoldenTrace&) const = default;
};

GoldenTrace golden_trace(const Scenario& scenario, std::uint64_t seed);

// One trace per line: name seed csv_digest trace_digest events (hex digests).
std::string format_golden(const std::vector<GoldenTrace>& traces);
std::vector<GoldenTrace> parse_golden(std::string_view text);

// Scenario/seed pairs covered by the checked-in golden file.
std::vector<std::pair<std::string, std::uint64_t>> golden_cases();

}  // namespace rltrc
