#include "rltrc/sim/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "rltrc/core_model.hpp"
#include "rltrc/errors.hpp"
#include "rltrc/link_estimation.hpp"
#include "rltrc/policy.hpp"
#include "rltrc/sdn_control.hpp"
#include "rltrc/sim/channel.hpp"
#include "rltrc/sim/event_queue.hpp"
#include "rltrc/sim/mobility.hpp"
#include "rltrc/sim/routing.hpp"

namespace rltrc::sim {

namespace {

// Independent random streams, so policies see identical mobility and traffic.
enum Stream : std::uint64_t { kWorld = 1, kMobility = 2, kChannel = 3, kPolicy = 4, kTraffic = 100 };

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= kFnvPrime;
  }
}

struct Packet {
  SessionId session{};
  std::uint32_t route_version = 0;
  Route route;
  std::size_t hop = 0;  // index of the current holder in route
  double invested_energy = 0.0;
  double invested_time = 0.0;
};

struct Attempt {
  bool active = false;
  PacketId packet{};
  NodeId next{};
  double level = 0.0;
  double energy = 0.0;
  double t_send = 0.0;
  double t_msg = 0.0;
  double t_recv = 0.0;
  double rss = 0.0;
  std::uint64_t token = 0;
};

struct NodeRuntime {
  std::deque<PacketId> queue;
  int turn = 1;
  double last_attempt_energy = 0.0;  // energy of the previous failed attempt on the head
  Attempt attempt;
  std::map<NodeId, CommCacheEntry> cache;
  NodeRewardState reward;
  std::map<NodeId, double> last_level;  // baselines: level last used per successor
  MobilityState mobility;
  double initial_energy = 0.0;
  bool dead = false;
};

enum class Phase { Discovering, Active, Failed, Done };

struct Session {
  SessionId id{};
  NodeId src{};
  NodeId dst{};
  ZoneId home{};
  double end = 0.0;
  int slot = -1;
  std::size_t rng = 0;
  std::uint64_t limit = 0;
  std::uint64_t generated = 0;
  Route route;
  std::uint32_t version = 0;
  Route pending_route;
  Phase phase = Phase::Discovering;
  bool generating = true;
  std::deque<PacketId> waiting;  // held at the source until a route exists
};

struct FloodOutcome {
  std::optional<Route> route;
  std::vector<ZoneBroadcastTerm> terms;
  double latency = 0.0;
};

class Engine {
 public:
  Engine(const ScenarioConfig& cfg, const Topology* topo)
      : cfg_(cfg),
        arena_{0.0, 0.0, cfg.arena_width, cfg.arena_height},
        mobility_rng_(make_stream(cfg.seed, kMobility)),
        channel_rng_(make_stream(cfg.seed, kChannel)),
        policy_rng_(make_stream(cfg.seed, kPolicy)),
        network_(cfg.t_net) {
    zones_ = make_zone_grid(arena_, cfg.zones);
    waste_ = WasteLedger(zones_.size());
    Rng world = make_stream(cfg.seed, kWorld);
    if (topo != nullptr) {
      build_nodes(*topo);
    } else {
      build_nodes(world);
    }
    if (topo != nullptr && topo->alpha) {
      channel_ = ChannelMatrix::uniform(nodes_.size(), *topo->alpha, cfg.noise_sd);
    } else {
      channel_ = ChannelMatrix(nodes_.size(), cfg.alpha_min, cfg.alpha_max, cfg.noise_sd, world);
    }
    for (const auto& z : zones_) {
      controllers_.emplace_back(z, cfg.t_sync, (cfg.radio_range_min + cfg.radio_range_max) / 2.0);
    }
    if (topo != nullptr) explicit_sessions_ = topo->sessions;
  }

  RunResult run() {
    schedule_initial();
    while (!queue_.empty() && queue_.top().fire_time < cfg_.duration) {
      const Event e = queue_.pop();
      now_ = e.fire_time;
      ++result_.event_counts[std::string(to_string(e.kind))];
      ++ledger_.events_processed;
      fnv_mix(digest_, std::bit_cast<std::uint64_t>(e.fire_time));
      fnv_mix(digest_, e.sequence);
      fnv_mix(digest_, static_cast<std::uint64_t>(e.kind));
      dispatch(e);
    }
    return finish();
  }

 private:
  // ---- world construction ----

  std::vector<double> power_levels(double range, int count) const {
    std::vector<double> levels(static_cast<std::size_t>(count));
    for (int m = 1; m <= count; ++m) {
      levels[static_cast<std::size_t>(m - 1)] = cfg_.min_rcv + cfg_.alpha_max * range * m / count;
    }
    return levels;
  }

  void add_node(Vec2 pos, double range, double energy, int levels, bool peripheral, double vmax) {
    NodeState n;
    n.id = make_id<NodeId>(static_cast<std::uint32_t>(nodes_.size()));
    n.position = pos;
    n.max_velocity = peripheral ? 0.0 : vmax;
    n.residual_energy = energy;
    n.power_levels = power_levels(range, std::max(1, levels));
    n.radio_range = range;
    n.min_rcv = cfg_.min_rcv;
    n.zone = zone_of(pos, zones_);
    n.is_peripheral = peripheral;
    nodes_.push_back(std::move(n));
    NodeRuntime rt;
    rt.initial_energy = energy;
    runtime_.push_back(std::move(rt));
  }

  void build_nodes(const Topology& topo) {
    for (const auto& s : topo.nodes) {
      add_node(s.position, s.radio_range, s.initial_energy, s.levels, s.peripheral, s.max_velocity);
    }
  }

  void build_nodes(Rng& rng) {
    std::uniform_real_distribution<double> range(cfg_.radio_range_min, cfg_.radio_range_max);
    std::uniform_real_distribution<double> energy(cfg_.initial_energy_min, cfg_.initial_energy_max);
    std::uniform_int_distribution<int> levels(cfg_.power_levels_min, cfg_.power_levels_max);
    std::uniform_real_distribution<double> ux(arena_.x0, arena_.x1);
    std::uniform_real_distribution<double> uy(arena_.y0, arena_.y1);

    // peripherals sit evenly along every edge shared by two zones
    std::vector<Vec2> spots;
    for (std::size_t a = 0; a < zones_.size(); ++a) {
      for (std::size_t b = a + 1; b < zones_.size(); ++b) {
        const Rect& A = zones_[a].boundary;
        const Rect& B = zones_[b].boundary;
        Vec2 p0;
        Vec2 p1;
        if (A.x1 == B.x0 && A.y0 == B.y0 && A.y1 == B.y1) {
          p0 = {A.x1, A.y0};
          p1 = {A.x1, A.y1};
        } else if (A.y1 == B.y0 && A.x0 == B.x0 && A.x1 == B.x1) {
          p0 = {A.x0, A.y1};
          p1 = {A.x1, A.y1};
        } else {
          continue;
        }
        const int k = cfg_.peripherals_per_boundary;
        for (int i = 0; i < k; ++i) {
          const double f = (i + 0.5) / k;
          spots.push_back(p0 + (p1 - p0) * f);
        }
      }
    }
    const int mobile = cfg_.nodes - static_cast<int>(spots.size());
    for (int i = 0; i < mobile; ++i) {
      const double x = ux(rng);
      const Vec2 p{x, uy(rng)};
      const double r = range(rng);
      const double e = energy(rng);
      add_node(p, r, e, levels(rng), false, cfg_.speed_max);
    }
    for (const Vec2 p : spots) {
      const double r = range(rng);
      const double e = energy(rng);
      add_node(p, r, e, levels(rng), true, 0.0);
    }
  }

  void schedule_initial() {
    queue_.push(0.0, EventKind::ControllerSync);
    queue_.push(0.0, EventKind::NetworkCollect);
    queue_.push(cfg_.mobility_dt, EventKind::MobilityStep);
    if (cfg_.policy == PolicyKind::BeaconPrrLike) queue_.push(cfg_.beacon_interval, EventKind::Beacon);
    if (!explicit_sessions_.empty()) {
      for (std::size_t i = 0; i < explicit_sessions_.size(); ++i) {
        traffic_.push_back(make_stream(cfg_.seed, kTraffic + i));
        EventPayload p;
        p.token = i;
        queue_.push(explicit_sessions_[i].start, EventKind::SessionStart, p);
      }
      return;
    }
    for (int s = 0; s < cfg_.sessions; ++s) {
      traffic_.push_back(make_stream(cfg_.seed, kTraffic + static_cast<std::uint64_t>(s)));
      EventPayload p;
      p.token = static_cast<std::uint64_t>(s);
      queue_.push(0.0, EventKind::SessionStart, p);
    }
  }

  // ---- helpers ----

  NodeState& node(NodeId id) { return nodes_[index_of(id)]; }
  NodeRuntime& rt(NodeId id) { return runtime_[index_of(id)]; }
  Session& session(SessionId id) { return sessions_[index_of(id)]; }
  PacketEntry& entry(PacketId id) { return ledger_.packets[index_of(id)]; }
  Packet& packet(PacketId id) { return packets_[index_of(id)]; }
  ZoneController& controller(ZoneId z) { return controllers_[index_of(z)]; }

  double joules(double level, double airtime) const { return level * cfg_.power_unit_watts * airtime; }

  // Takes energy from a node; a node that cannot pay in full is drained to
  // zero and the message fails.
  bool debit(NodeId id, MessageKind kind, double amount) {
    NodeState& n = node(id);
    if (!n.alive()) return false;
    const bool paid = amount < n.residual_energy;
    const double taken = paid ? amount : n.residual_energy;
    n.residual_energy = paid ? n.residual_energy - amount : 0.0;
    ledger_.debits.push_back(DebitEntry{now_, id, kind, taken});
    if (!paid) on_death(id);
    return paid;
  }

  double link_distance(NodeId a, NodeId b) { return distance(node(a), node(b)); }

  // Reward a node brings to its zone: its own transmission reward. Successor
  // rewards stay local to the forwarding decision.
  double node_standing(NodeId id) { return rt(id).reward.self_reward; }

  double broad_cost(ZoneId z) {
    const ZoneState& zs = controller(z).zone();
    return broadcast_cost(zs.ng, avg_hop_count(zs.theta, zs.phi, zs.av_rad), cfg_.broadcast_cap);
  }

  void drop_packet(PacketId id, PacketFate fate) {
    PacketEntry& e = entry(id);
    if (e.fate != PacketFate::Pending) return;
    e.fate = fate;
    e.finished = now_;
  }

  bool pending(PacketId id) { return entry(id).fate == PacketFate::Pending; }

  void on_death(NodeId id) {
    NodeRuntime& r = rt(id);
    if (r.dead) return;
    r.dead = true;
    for (PacketId p : r.queue) drop_packet(p, PacketFate::DroppedNodeDead);
    r.queue.clear();
    r.attempt.active = false;
    for (auto& s : sessions_) {
      if (s.src != id || s.phase == Phase::Done || s.phase == Phase::Failed) continue;
      s.generating = false;
      for (PacketId p : s.waiting) drop_packet(p, PacketFate::DroppedNodeDead);
      s.waiting.clear();
      s.phase = Phase::Done;
    }
  }

  // ---- dispatch ----

  void dispatch(const Event& e) {
    switch (e.kind) {
      case EventKind::MobilityStep: on_mobility(); break;
      case EventKind::ControllerSync: on_sync(); break;
      case EventKind::NetworkCollect: on_collect(); break;
      case EventKind::SessionStart: on_session_start(e.payload.token); break;
      case EventKind::SessionEnd: on_session_end(e.payload.session); break;
      case EventKind::PacketGeneration: on_generate(e.payload.session); break;
      case EventKind::RouteReply: on_route_reply(e.payload.session, static_cast<std::uint32_t>(e.payload.token)); break;
      case EventKind::PacketArrival: on_arrival(e.payload.node, e.payload.packet); break;
      case EventKind::SendAttempt: try_send(e.payload.node); break;
      case EventKind::AckArrival: on_ack(e.payload.node, e.payload.token); break;
      case EventKind::AckTimeout: on_timeout(e.payload.node, e.payload.token); break;
      case EventKind::Beacon: on_beacon(); break;
    }
  }

  void on_mobility() {
    const MobilityParams params{cfg_.speed_min, cfg_.pause_max, cfg_.gauss_sd};
    for (auto& n : nodes_) {
      mobility_step(n, rt(n.id).mobility, cfg_.mobility, now_, cfg_.mobility_dt, params, arena_, mobility_rng_);
      n.zone = zone_of(n.position, zones_);
      for (auto& msg : audit(n)) result_.audit_failures.push_back(msg);
      if (!arena_.contains(n.position)) result_.audit_failures.push_back("node left the arena");
    }
    queue_.push(now_ + cfg_.mobility_dt, EventKind::MobilityStep);
  }

  void on_sync() {
    for (auto& c : controllers_) {
      const ZoneId z = c.zone().id;
      std::vector<MemberReport> members;
      for (const auto& n : nodes_) {
        if (!n.alive() || n.zone != z) continue;
        double neighbours = 0.0;
        for (const auto& m : nodes_) {
          if (m.id != n.id && m.alive() && m.zone == z && in_radio_range(n, m.position)) neighbours += 1.0;
        }
        members.push_back(MemberReport{n.id, n.position, n.residual_energy, n.max_velocity, n.radio_range,
                                       neighbours, node_standing(n.id)});
      }
      c.set_waste(waste_.ew(z), waste_.et(z));
      const auto out = c.sync(now_, members);
      if (out.broadcast) {
        for (const auto& m : members) debit(m.id, MessageKind::ZoneState, joules(node(m.id).min_power(), cfg_.control_airtime()));
      }
    }
    queue_.push(now_ + cfg_.t_sync, EventKind::ControllerSync);
  }

  void on_collect() {
    network_.collect(now_, controllers_);
    queue_.push(now_ + cfg_.t_net, EventKind::NetworkCollect);
  }

  void on_beacon() {
    for (const auto& n : nodes_) {
      if (n.alive()) debit(n.id, MessageKind::Beacon, joules(n.max_power(), cfg_.control_airtime()));
    }
    queue_.push(now_ + cfg_.beacon_interval, EventKind::Beacon);
  }

  // ---- sessions and traffic ----

  double draw_gap(Rng& rng) {
    std::exponential_distribution<double> ex(1.0 / cfg_.inter_arrival_mean_ms);
    for (int i = 0; i < 64; ++i) {
      const double ms = ex(rng);
      if (ms >= cfg_.inter_arrival_min_ms && ms <= cfg_.inter_arrival_max_ms) return ms / 1000.0;
    }
    return std::clamp(cfg_.inter_arrival_mean_ms, cfg_.inter_arrival_min_ms, cfg_.inter_arrival_max_ms) / 1000.0;
  }

  void on_session_start(std::uint64_t slot_or_index) {
    Session s;
    s.id = make_id<SessionId>(static_cast<std::uint32_t>(sessions_.size()));
    s.rng = static_cast<std::size_t>(slot_or_index);
    if (!explicit_sessions_.empty()) {
      const auto& spec = explicit_sessions_[slot_or_index];
      s.src = spec.src;
      s.dst = spec.dst;
      s.end = spec.end;
      s.limit = spec.packet_limit;
    } else {
      s.slot = static_cast<int>(slot_or_index);
      std::vector<NodeId> mobile;
      for (const auto& n : nodes_) {
        if (!n.is_peripheral) mobile.push_back(n.id);
      }
      if (mobile.size() < 2) return;
      Rng& rng = traffic_[s.rng];
      std::uniform_int_distribution<std::size_t> pick(0, mobile.size() - 1);
      s.src = mobile[pick(rng)];
      do {
        s.dst = mobile[pick(rng)];
      } while (s.dst == s.src);
      s.end = now_ + cfg_.session_duration;
    }
    s.home = node(s.src).zone;
    sessions_.push_back(std::move(s));
    Session& ss = sessions_.back();
    ++result_.sessions_started;

    EventPayload p;
    p.session = ss.id;
    queue_.push(ss.end, EventKind::SessionEnd, p);

    if (!node(ss.src).alive()) {
      ss.phase = Phase::Done;
      ss.generating = false;
      return;
    }
    controller(ss.home).report_session_reward(ss.id, waste_.ew(ss.home), waste_.et(ss.home));
    begin_discovery(ss.id, 0.0);
    queue_.push(now_ + draw_gap(traffic_[ss.rng]), EventKind::PacketGeneration, p);
  }

  void on_session_end(SessionId id) {
    Session& s = session(id);
    s.generating = false;
    controller(s.home).end_session(id);
    if (s.slot >= 0 && s.end + cfg_.session_gap < cfg_.duration) {
      EventPayload p;
      p.token = static_cast<std::uint64_t>(s.slot);
      queue_.push(s.end + cfg_.session_gap, EventKind::SessionStart, p);
    }
  }

  void on_generate(SessionId id) {
    Session& s = session(id);
    if (!s.generating || s.phase == Phase::Failed || s.phase == Phase::Done || now_ >= s.end) return;
    if (s.limit > 0 && s.generated >= s.limit) return;
    ++s.generated;
    const PacketId pid = make_id<PacketId>(ledger_.packets.size());
    ledger_.packets.push_back(PacketEntry{pid, id, now_, PacketFate::Pending, 0.0});
    packets_.push_back(Packet{id, 0, {}, 0, 0.0, 0.0});
    hand_to_source(pid);

    Session& s2 = session(id);
    if (s2.limit == 0 || s2.generated < s2.limit) {
      EventPayload p;
      p.session = id;
      queue_.push(now_ + draw_gap(traffic_[s2.rng]), EventKind::PacketGeneration, p);
    }
  }

  // Packet at its source: queued on the current route or held until one exists.
  void hand_to_source(PacketId pid) {
    Packet& pk = packet(pid);
    Session& s = session(pk.session);
    pk.hop = 0;
    pk.invested_energy = 0.0;
    pk.invested_time = 0.0;
    if (s.phase == Phase::Active) {
      pk.route = s.route;
      pk.route_version = s.version;
      EventPayload p;
      p.node = s.src;
      p.packet = pid;
      queue_.push(now_, EventKind::PacketArrival, p);
    } else if (s.phase == Phase::Discovering) {
      s.waiting.push_back(pid);
    } else {
      drop_packet(pid, s.phase == Phase::Failed ? PacketFate::DroppedUnreachable : PacketFate::DroppedNodeDead);
    }
  }

  // ---- route discovery ----

  FloodOutcome flood(const Session& s) {
    FloodOutcome out;
    std::vector<ControllerRegistry> regs;
    regs.reserve(controllers_.size());
    for (const auto& c : controllers_) regs.push_back(c.registry());
    const BroadcastCircle circle = destination_lookup(s.dst, now_, regs, zones_);

    // every zone tile inside the bounding box of the source zone and the circle's zones
    Rect box = zones_[index_of(node(s.src).zone)].boundary;
    for (ZoneId z : circle.spans_zones) {
      const Rect& r = zones_[index_of(z)].boundary;
      box = {std::min(box.x0, r.x0), std::min(box.y0, r.y0), std::max(box.x1, r.x1), std::max(box.y1, r.y1)};
    }
    std::vector<bool> region(zones_.size(), false);
    for (const auto& z : zones_) {
      const Rect& r = z.boundary;
      region[index_of(z.id)] = r.x0 >= box.x0 && r.x1 <= box.x1 && r.y0 >= box.y0 && r.y1 <= box.y1;
    }

    const auto in_region = [&](const NodeState& n) {
      if (n.id == s.src || n.id == s.dst) return true;
      if (!n.is_peripheral) return static_cast<bool>(region[index_of(n.zone)]);
      for (const auto& z : zones_) {
        if (region[index_of(z.id)] && z.boundary.contains(n.position)) return true;
      }
      return false;
    };

    std::vector<bool> member(nodes_.size(), false);
    for (const auto& n : nodes_) member[index_of(n.id)] = n.alive() && in_region(n);

    Adjacency graph(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!member[i]) continue;
      const NodeState& a = nodes_[i];
      for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
        if (!member[j]) continue;
        const NodeState& b = nodes_[j];
        if (!a.is_peripheral && !b.is_peripheral && a.zone != b.zone) continue;
        const double d = distance(a, b);
        if (d > std::min(a.radio_range, b.radio_range)) continue;
        const double alpha = channel_.link(a.id, b.id).alpha;
        if (mean_rss(a.max_power(), d, alpha) < b.min_rcv || mean_rss(b.max_power(), d, alpha) < a.min_rcv) continue;
        graph[i].push_back(b.id);
        graph[j].push_back(a.id);
      }
    }

    const FloodResult fr = route_discovery(graph, s.src, s.dst, cfg_.max_hops);
    ++result_.route_discoveries;

    std::map<ZoneId, double> spent;
    for (NodeId id : fr.reached) {
      const double before = node(id).residual_energy;
      debit(id, MessageKind::RouteRequest, joules(node(id).max_power(), cfg_.control_airtime()));
      spent[node(id).zone] += before - node(id).residual_energy;
    }
    for (const auto& z : zones_) {
      if (!region[index_of(z.id)]) continue;
      const ZoneState& zs = controller(z.id).zone();
      ZoneBroadcastTerm t;
      t.cost = spent.count(z.id) ? spent[z.id] : 0.0;
      t.hops = min_hop_count(zs.theta, zs.phi, zs.av_rad);
      out.latency += t.hops * cfg_.hop_latency;
      out.terms.push_back(t);
    }
    if (!fr.candidates.empty()) out.route = route_select(fr.candidates);
    ledger_.invested_time.push_back(TimeEntry{now_, out.latency});
    return out;
  }

  // Floods for a new route; returns the zone terms of the broadcast.
  std::vector<ZoneBroadcastTerm> begin_discovery(SessionId id, double delay) {
    Session& s = session(id);
    ++s.version;
    s.phase = Phase::Discovering;
    FloodOutcome f = flood(s);
    Session& s2 = session(id);
    if (!f.route) {
      fail_session(id);
      return f.terms;
    }
    s2.pending_route = *f.route;
    EventPayload p;
    p.session = id;
    p.token = s2.version;
    // the reply itself needs airtime on every hop back
    const double reply = static_cast<double>(f.route->size() - 1) * cfg_.control_airtime();
    queue_.push(now_ + delay + f.latency + reply, EventKind::RouteReply, p);
    return f.terms;
  }

  void fail_session(SessionId id) {
    Session& s = session(id);
    s.phase = Phase::Failed;
    s.generating = false;
    ++result_.sessions_failed;
    for (PacketId p : s.waiting) drop_packet(p, PacketFate::DroppedUnreachable);
    s.waiting.clear();
    // packets still travelling are dropped lazily when they reach a queue head
    for (std::size_t i = 0; i < packets_.size(); ++i) {
      if (packets_[i].session == id) drop_packet(make_id<PacketId>(i), PacketFate::DroppedUnreachable);
    }
  }

  // The route reply teaches each hop's sender about its successor.
  void seed_link(NodeId a, NodeId b) {
    NodeState& na = node(a);
    const double d = link_distance(a, b);
    auto& cache = rt(a).cache;
    auto it = cache.find(b);
    if (it != cache.end() && it->second.timestamp_end && now_ - *it->second.timestamp_end > cfg_.cache_ttl) {
      cache.erase(it);
      it = cache.end();
    }
    if (it == cache.end()) {
      CommCacheEntry fresh;
      fresh.successor = b;
      fresh.timestamp_begin = now_;
      it = cache.emplace(b, fresh).first;
    }
    const auto rss = propagate(na.max_power(), d, channel_.link(a, b), node(b).min_rcv,
                               std::numeric_limits<double>::infinity(), channel_rng_);
    if (!rss) return;
    PacketRecord rec{now_, now_ + d / cfg_.signal_speed, na.max_power(), *rss, std::nullopt};
    if (!(rec.t_ack > rec.t_msg)) rec.t_ack = std::nextafter(rec.t_msg, kNever);
    record_ack(it->second, rec, context(a));
  }

  EstimatorContext context(NodeId id) {
    return EstimatorContext{cfg_.signal_speed, cfg_.prior_attenuation, node(id).radio_range};
  }

  void on_route_reply(SessionId id, std::uint32_t version) {
    Session& s = session(id);
    if (s.version != version || s.phase != Phase::Discovering) return;
    const Route route = s.pending_route;
    for (std::size_t i = route.size() - 1; i > 0; --i) {
      debit(route[i], MessageKind::RouteReply, joules(node(route[i]).max_power(), cfg_.control_airtime()));
    }
    for (std::size_t i = 0; i + 1 < route.size(); ++i) seed_link(route[i], route[i + 1]);

    Session& s2 = session(id);
    if (s2.phase != Phase::Discovering) return;  // source died while replying
    s2.route = route;
    s2.phase = Phase::Active;
    std::deque<PacketId> held;
    held.swap(s2.waiting);
    for (PacketId p : held) {
      if (pending(p)) hand_to_source(p);
    }
  }

  // ---- forwarding ----

  void on_arrival(NodeId at, PacketId pid) {
    if (!pending(pid)) return;
    if (!node(at).alive()) {
      drop_packet(pid, PacketFate::DroppedNodeDead);
      return;
    }
    rt(at).queue.push_back(pid);
    try_send(at);
  }

  double choose_level(NodeId from, NodeId to, CommCacheEntry& ce, std::span<const double> available) {
    const NodeState& n = node(from);
    if (cfg_.policy == PolicyKind::RlTrc) {
      const double sigma = compute_sigma({controller(n.zone).zone().reward_ri, network_.reward()});
      sigma_sum_ += sigma;
      ++sigma_count_;
      return select_power_level(available, sigma, ce.reliable, policy_rng_);
    }
    BaselineLinkState ls;
    ls.sig_atn = ce.attenuation_or(cfg_.prior_attenuation);
    if (ce.newest()) ls.last_distance = travelled_distance(*ce.newest(), cfg_.signal_speed);
    if (ce.newest()) ls.last_rss = ce.newest()->rss;
    ls.prr = ce.prr();
    auto& last = rt(from).last_level;
    if (auto it = last.find(to); it != last.end()) ls.current_level = it->second;
    ls.min_rcv = node(to).min_rcv;
    const BaselineThresholds th{cfg_.min_rcv + cfg_.rssi_high_margin, cfg_.min_rcv + cfg_.rssi_low_margin,
                                cfg_.prr_target};
    const double level = baseline_decide(cfg_.policy, ls, n.power_levels, th);
    last[to] = level;
    return level;
  }

  void try_send(NodeId id) {
    NodeRuntime& r = rt(id);
    if (r.dead || r.attempt.active) return;
    while (!r.queue.empty() && !pending(r.queue.front())) {
      r.queue.pop_front();
      r.turn = 1;
      r.last_attempt_energy = 0.0;
    }
    if (r.queue.empty()) return;

    const PacketId pid = r.queue.front();
    const Packet& pk = packet(pid);
    const NodeId next = pk.route[pk.hop + 1];
    NodeState& n = node(id);

    auto& cache = r.cache;
    auto it = cache.find(next);
    if (it == cache.end()) {
      CommCacheEntry fresh;
      fresh.successor = next;
      fresh.timestamp_begin = now_;
      fresh.reliable = false;  // nothing known yet: top level only
      it = cache.emplace(next, fresh).first;
    }
    CommCacheEntry& ce = it->second;

    double level = n.max_power();
    if (cfg_.policy == PolicyKind::RlTrc) {
      double dist_est = 0.0;
      double moved = 0.0;
      if (ce.newest()) {
        moved = predict_displacement(ce.velocity, now_, ce.newest()->t_ack);
        dist_est = travelled_distance(*ce.newest(), cfg_.signal_speed) + moved;
      }
      if (should_drop(moved, n.radio_range)) {
        ++result_.predicted_breaks;
        link_failure(id, false);
        return;
      }
      const double thres = ce.newest() ? power_threshold(ce.attenuation_or(cfg_.prior_attenuation), dist_est,
                                                         node(next).min_rcv)
                                       : 0.0;
      const auto available = available_levels(n.power_levels, thres);
      if (available.empty()) {
        ++result_.shrunk_out;
        link_failure(id, false);
        return;
      }
      level = choose_level(id, next, ce, available);
    } else {
      level = choose_level(id, next, ce, n.power_levels);
    }

    Attempt& a = r.attempt;
    a = Attempt{};
    a.active = true;
    a.packet = pid;
    a.next = next;
    a.level = level;
    a.t_send = now_;
    a.token = ++token_;
    const double before = n.residual_energy;
    const bool paid = debit(id, MessageKind::Data, joules(level, cfg_.data_airtime()));
    a.energy = before - node(id).residual_energy;
    record_send(ce);
    if (!paid) return;  // drained: on_death already cleared the attempt

    EventPayload ev;
    ev.node = id;
    ev.token = a.token;
    NodeState& rx = node(next);
    const double d = link_distance(id, next);
    bool acked = false;
    if (rx.alive()) {
      const auto rss = propagate(level, d, channel_.link(id, next), rx.min_rcv, n.radio_range, channel_rng_);
      if (rss) {
        a.t_msg = now_ + cfg_.data_airtime();
        a.t_recv = a.t_msg + d / cfg_.signal_speed;
        a.rss = *rss;
        // ack goes back at the receiver's lowest level above its own threshold
        const double ack_thres = (level - *rss) + n.min_rcv;
        const auto ack_levels = available_levels(rx.power_levels, ack_thres);
        const double ack_level = ack_levels.empty() ? rx.max_power() : ack_levels.front();
        const bool ack_paid = debit(next, MessageKind::Ack, cfg_.ack_cost_fraction * joules(rx.min_power(), cfg_.data_airtime()));
        if (ack_paid) {
          const auto back = propagate(ack_level, d, channel_.link(id, next), n.min_rcv, rx.radio_range, channel_rng_);
          const double t_back = a.t_recv + cfg_.ack_airtime() + d / cfg_.signal_speed;
          acked = back.has_value() && t_back - now_ <= cfg_.tau_a;
          if (acked) queue_.push(t_back, EventKind::AckArrival, ev);
        }
      }
    }
    if (!acked) queue_.push(now_ + cfg_.tau_a, EventKind::AckTimeout, ev);
  }

  void close_attempt(NodeId id, double duration) {
    NodeRuntime& r = rt(id);
    NodeState& n = node(id);
    r.attempt.active = false;
    r.reward.self_reward = node_self_reward(r.reward.self_reward, n.max_power(), std::min(r.attempt.level, n.max_power()));
    r.reward.last_action = r.attempt.level;
    controller(n.zone).note_attempt();
    ledger_.invested_time.push_back(TimeEntry{now_, duration});
  }

  void on_ack(NodeId id, std::uint64_t token) {
    NodeRuntime& r = rt(id);
    if (!r.attempt.active || r.attempt.token != token) return;
    const Attempt a = r.attempt;
    close_attempt(id, now_ - a.t_send);

    CommCacheEntry& ce = r.cache[a.next];
    record_ack(ce, PacketRecord{a.t_msg, a.t_recv, a.level, a.rss, std::nullopt}, context(id));
    r.reward.successor_rewards[a.next] =
        successor_reward_ack(ce.prr(), std::clamp(ce.rss_over_tpl(), 0.0, 1.0), ce.recent_trend);

    r.turn = 1;
    r.last_attempt_energy = 0.0;
    if (!r.queue.empty() && r.queue.front() == a.packet) r.queue.pop_front();

    if (pending(a.packet)) {
      Packet& pk = packet(a.packet);
      pk.invested_energy += a.energy;
      pk.invested_time += now_ - a.t_send;
      ++pk.hop;
      if (pk.hop + 1 == pk.route.size()) {
        PacketEntry& e = entry(a.packet);
        e.fate = PacketFate::Delivered;
        e.finished = a.t_recv;
      } else {
        EventPayload p;
        p.node = a.next;
        p.packet = a.packet;
        queue_.push(now_, EventKind::PacketArrival, p);
      }
    }
    try_send(id);
  }

  void on_timeout(NodeId id, std::uint64_t token) {
    NodeRuntime& r = rt(id);
    if (!r.attempt.active || r.attempt.token != token) return;
    const Attempt a = r.attempt;
    close_attempt(id, cfg_.tau_a);
    ++r.turn;
    if (!pending(a.packet)) {
      r.turn = 1;
      try_send(id);
      return;
    }
    if (r.turn <= cfg_.mx_atmpt) {
      WasteInputs in;
      in.turn = r.turn;
      in.mx_atmpt = cfg_.mx_atmpt;
      in.prev_action = a.energy;
      in.tau_a = cfg_.tau_a;
      record_waste(id, a.packet, a.next, r.turn, transmission_waste(in));
      try_send(id);
      return;
    }
    r.last_attempt_energy = a.energy;
    link_failure(id, true);
  }

  void record_waste(NodeId at, PacketId pid, NodeId next, int turn, const Waste& w) {
    const Packet& pk = packet(pid);
    const Session& s = session(pk.session);
    ledger_.wastes.push_back(WasteEntry{now_, s.home, s.id, at, next, turn, w.energy, w.time});
    waste_.accumulate(s.home, w);
    if (s.generating && s.phase != Phase::Failed && s.phase != Phase::Done) {
      if (choose_report_relay(pk.route, s.src, nodes_, zones_[index_of(s.home)])) {
        controller(s.home).report_session_reward(s.id, waste_.ew(s.home), waste_.et(s.home));
      }
    }
  }

  // Head packet of `id` cannot cross its next hop. `attempted` is false when
  // the hop was abandoned before any transmission this turn.
  void link_failure(NodeId id, bool attempted) {
    NodeRuntime& r = rt(id);
    const PacketId pid = r.queue.front();
    const Packet pk = packet(pid);
    const NodeId next = pk.route[pk.hop + 1];
    ++result_.link_failures;

    CommCacheEntry& ce = r.cache[next];
    mark_reliability(ce, now_);
    const double prev_rd = r.reward.successor_rewards.count(next) ? r.reward.successor_rewards[next] : 0.0;
    r.reward.successor_rewards[next] = successor_reward_noack(prev_rd, cfg_.mx_atmpt + 1, cfg_.mx_atmpt, broad_cost(node(id).zone));

    // breakage notice walks back to the source
    double latency = 0.0;
    for (std::size_t i = pk.hop; i > 0; --i) {
      debit(pk.route[i], MessageKind::Breakage, joules(node(pk.route[i]).max_power(), cfg_.control_airtime()));
      latency += cfg_.hop_latency;
    }

    std::vector<ZoneBroadcastTerm> terms;
    Session& s = session(pk.session);
    const bool live = s.phase == Phase::Active || s.phase == Phase::Discovering;
    if (live && s.version == pk.route_version && node(s.src).alive()) {
      terms = begin_discovery(s.id, latency);
    }

    WasteInputs in;
    in.turn = cfg_.mx_atmpt + 1;
    in.mx_atmpt = cfg_.mx_atmpt;
    in.prev_action = attempted ? r.last_attempt_energy : 0.0;
    in.tau_a = attempted ? cfg_.tau_a : 0.0;
    in.zone_set = terms;
    in.hop_latency = cfg_.hop_latency;
    in.invested_energy = pk.invested_energy;
    in.invested_time = pk.invested_time;
    record_waste(id, pid, next, in.turn, transmission_waste(in));

    // the packet and any others waiting for the same hop go back to the source
    r.turn = 1;
    r.last_attempt_energy = 0.0;
    std::deque<PacketId> keep;
    std::vector<PacketId> back;
    for (PacketId q : r.queue) {
      const Packet& qp = packet(q);
      if (q == pid || (pending(q) && qp.route[qp.hop + 1] == next)) back.push_back(q);
      else keep.push_back(q);
    }
    r.queue.swap(keep);
    for (PacketId q : back) {
      if (pending(q)) hand_to_source(q);
    }
    try_send(id);
  }

  // ---- wrap-up ----

  RunResult finish() {
    ledger_.duration = cfg_.duration;
    std::set<PacketId> held;
    for (const auto& r : runtime_) held.insert(r.queue.begin(), r.queue.end());
    for (const auto& se : sessions_) held.insert(se.waiting.begin(), se.waiting.end());
    while (!queue_.empty()) {
      const Event e = queue_.pop();
      if (e.kind == EventKind::PacketArrival) held.insert(e.payload.packet);
    }
    result_.held_at_end = held.size();
    for (const auto& n : nodes_) {
      ledger_.nodes.push_back(NodeEnergy{n.id, rt(n.id).initial_energy, n.residual_energy});
    }
    result_.report = compute_metrics(ledger_);
    result_.report.policy = std::string(to_string(cfg_.policy));
    result_.report.seed = cfg_.seed;
    result_.report.series = windowed_waste_series(ledger_, cfg_.window);
    for (const auto& z : zones_) result_.zone_waste.push_back(Waste{waste_.ew(z.id), waste_.et(z.id)});
    result_.trace_digest = digest_;
    result_.mean_sigma = sigma_count_ > 0 ? sigma_sum_ / static_cast<double>(sigma_count_) : 0.0;
    result_.ledger = std::move(ledger_);
    return std::move(result_);
  }

  ScenarioConfig cfg_;
  Rect arena_;
  Rng mobility_rng_;
  Rng channel_rng_;
  Rng policy_rng_;
  std::vector<Rng> traffic_;
  std::vector<ZoneState> zones_;
  std::vector<NodeState> nodes_;
  std::vector<NodeRuntime> runtime_;
  ChannelMatrix channel_;
  std::vector<ZoneController> controllers_;
  NetworkController network_;
  WasteLedger waste_;
  std::vector<SessionSpec> explicit_sessions_;
  std::vector<Session> sessions_;
  std::vector<Packet> packets_;
  EventQueue queue_;
  MetricsLedger ledger_;
  RunResult result_;
  double now_ = 0.0;
  std::uint64_t token_ = 0;
  std::uint64_t digest_ = kFnvOffset;
  double sigma_sum_ = 0.0;
  std::uint64_t sigma_count_ = 0;
};

}  // namespace

RunResult simulate(const ScenarioConfig& cfg, const Topology* topology) {
  if (auto problems = validate(cfg); !problems.empty()) throw ConfigError(std::move(problems));
  Engine engine(cfg, topology);
  return engine.run();
}

MetricsReport run(ScenarioConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  return simulate(cfg).report;
}

}  // namespace rltrc::sim
