#include "rltrc/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "rltrc/errors.hpp"

namespace rltrc {

std::string_view to_string(MessageKind kind) noexcept {
  switch (kind) {
    case MessageKind::Data: return "data";
    case MessageKind::Ack: return "ack";
    case MessageKind::RouteRequest: return "route-request";
    case MessageKind::RouteReply: return "route-reply";
    case MessageKind::Breakage: return "breakage";
    case MessageKind::ZoneState: return "zone-state";
    case MessageKind::Beacon: return "beacon";
  }
  return "unknown";
}

std::string_view to_string(PacketFate fate) noexcept {
  switch (fate) {
    case PacketFate::Pending: return "pending";
    case PacketFate::Delivered: return "delivered";
    case PacketFate::DroppedUnreachable: return "dropped-unreachable";
    case PacketFate::DroppedNodeDead: return "dropped-node-dead";
  }
  return "unknown";
}

namespace {

double percent_wasted(double wasted, double invested) noexcept {
  return invested > 0.0 ? 100.0 * wasted / invested : 0.0;
}

}  // namespace

MetricsReport compute_metrics(const MetricsLedger& ledger) {
  MetricsReport r;
  r.omc = ledger.debits.size();

  std::size_t alive = 0;
  for (const auto& n : ledger.nodes) {
    r.ec += n.start - n.end;
    if (n.end > 0.0) ++alive;
  }
  r.paln = ledger.nodes.empty() ? 100.0 : 100.0 * static_cast<double>(alive) / static_cast<double>(ledger.nodes.size());

  std::size_t delivered = 0;
  double delay = 0.0;
  for (const auto& p : ledger.packets) {
    if (p.fate != PacketFate::Delivered) continue;
    ++delivered;
    delay += p.finished - p.generated;
  }
  if (!ledger.packets.empty()) {
    r.ntg = 100.0 * static_cast<double>(delivered) / static_cast<double>(ledger.packets.size());
  }
  r.adl = delivered > 0 ? delay / static_cast<double>(delivered) : 0.0;

  double ie = 0.0;
  for (const auto& d : ledger.debits) ie += d.joules;
  double it = 0.0;
  for (const auto& t : ledger.invested_time) it += t.seconds;
  double we = 0.0;
  double wt = 0.0;
  for (const auto& w : ledger.wastes) {
    we += w.energy;
    wt += w.duration;
  }
  r.awe = percent_wasted(we, ie);
  r.awt = percent_wasted(wt, it);
  return r;
}

std::vector<WindowPoint> windowed_waste_series(const MetricsLedger& ledger, double window_len) {
  if (!(window_len > 0.0)) throw DomainError("window length must be positive");
  const auto count = static_cast<std::size_t>(std::ceil(ledger.duration / window_len));
  std::vector<WindowPoint> pts(count);
  std::vector<double> we(count, 0.0);
  std::vector<double> wt(count, 0.0);
  if (count == 0) return pts;

  const auto slot = [&](double t) {
    if (!(t > 0.0)) return std::size_t{0};
    return std::min(count - 1, static_cast<std::size_t>(std::floor(t / window_len)));
  };
  for (const auto& d : ledger.debits) pts[slot(d.time)].invested_energy += d.joules;
  for (const auto& t : ledger.invested_time) pts[slot(t.time)].invested_time += t.seconds;
  for (const auto& w : ledger.wastes) {
    const auto i = slot(w.time);
    we[i] += w.energy;
    wt[i] += w.duration;
  }
  for (std::size_t i = 0; i < count; ++i) {
    pts[i].timestamp = std::min(ledger.duration, window_len * static_cast<double>(i + 1));
    pts[i].awe = percent_wasted(we[i], pts[i].invested_energy);
    pts[i].awt = percent_wasted(wt[i], pts[i].invested_time);
  }
  return pts;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string summary_csv(const std::vector<MetricsReport>& reports) {
  std::string out = "# rltrc-summary v1\npolicy,seed,OMC,EC,NTG,ADL,PALN,AWE,AWT\n";
  for (const auto& r : reports) {
    out += r.policy + ',' + std::to_string(r.seed) + ',' + std::to_string(r.omc) + ',' + format_number(r.ec) + ',' +
           (r.ntg ? format_number(*r.ntg) : std::string{}) + ',' + format_number(r.adl) + ',' +
           format_number(r.paln) + ',' + format_number(r.awe) + ',' + format_number(r.awt) + '\n';
  }
  return out;
}

std::string series_csv(const std::vector<MetricsReport>& reports) {
  std::string out = "# rltrc-series v1\npolicy,seed,timestamp,AWE,AWT\n";
  for (const auto& r : reports) {
    for (const auto& p : r.series) {
      out += r.policy + ',' + std::to_string(r.seed) + ',' + format_number(p.timestamp) + ',' + format_number(p.awe) +
             ',' + format_number(p.awt) + '\n';
    }
  }
  return out;
}

void emit_csv(const std::string& text, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + destination.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write to '" + destination.string() + "' failed");
}

}  // namespace rltrc
