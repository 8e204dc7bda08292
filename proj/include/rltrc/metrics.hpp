#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rltrc/ledger.hpp"

namespace rltrc {

struct WindowPoint {
  double timestamp = 0.0;  // window end
  double awe = 0.0;
  double awt = 0.0;
  double invested_energy = 0.0;
  double invested_time = 0.0;
};

struct MetricsReport {
  std::string policy;
  std::uint64_t seed = 0;
  std::uint64_t omc = 0;
  double ec = 0.0;
  std::optional<double> ntg;  // undefined without generated packets
  double adl = 0.0;
  double paln = 100.0;
  double awe = 0.0;
  double awt = 0.0;
  std::vector<WindowPoint> series;
};

MetricsReport compute_metrics(const MetricsLedger& ledger);

// Per-window AWE/AWT from amounts recorded inside each window only. Windows
// cover [0, ledger.duration).
std::vector<WindowPoint> windowed_waste_series(const MetricsLedger& ledger, double window_len);

// CSV text. Column order is fixed; floats use 6 significant digits.
std::string summary_csv(const std::vector<MetricsReport>& reports);
std::string series_csv(const std::vector<MetricsReport>& reports);

// Throws IoError when the file cannot be written.
void emit_csv(const std::string& text, const std::filesystem::path& destination);

// 6-significant-digit rendering used by every CSV field.
std::string format_number(double v);

}  // namespace rltrc
