#pragma once

// Round-based multi-hop WSN simulator with a first-order radio energy model.
// Each alive node produces one encoded reading per round and forwards it,
// fragmented into frames, along a min-hop tree to the sink. Single-threaded
// and fully deterministic for a given input.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "semsense/codec.hpp"
#include "semsense/errors.hpp"
#include "semsense/number_format.hpp"
#include "semsense/observation.hpp"

namespace semsense::netsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct NodeState {
  int id = 0;
  Position position;
  double residual_energy = 0.0;  // joules
  bool alive = true;
  friend bool operator==(const NodeState&, const NodeState&) = default;
};

inline constexpr int kSink = -1;
inline constexpr int kUnreachable = -2;

// Nodes are 0..n-1; in `links` the sink is vertex n.
struct Topology {
  std::vector<NodeState> nodes;
  Position sink;
  double radio_range = 0.0;
  std::vector<std::vector<int>> links;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
  [[nodiscard]] int sink_vertex() const noexcept { return static_cast<int>(nodes.size()); }
  [[nodiscard]] Position position(int id) const { return id == kSink ? sink : nodes.at(static_cast<std::size_t>(id)).position; }

  friend bool operator==(const Topology&, const Topology&) = default;
};

namespace detail {

inline std::vector<std::vector<int>> link_graph(const std::vector<NodeState>& nodes, Position sink, double range) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> links(static_cast<std::size_t>(n) + 1);
  auto pos = [&](int v) { return v == n ? sink : nodes[static_cast<std::size_t>(v)].position; };
  for (int a = 0; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (distance(pos(a), pos(b)) <= range) {
        links[static_cast<std::size_t>(a)].push_back(b);
        links[static_cast<std::size_t>(b)].push_back(a);
      }
    }
  }
  return links;
}

inline bool all_reach_sink(const std::vector<std::vector<int>>& links) {
  const auto sink = links.size() - 1;
  std::vector<bool> seen(links.size(), false);
  std::deque<std::size_t> queue{sink};
  seen[sink] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (int w : links[v]) {
      const auto u = static_cast<std::size_t>(w);
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        queue.push_back(u);
      }
    }
  }
  return count == links.size();
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Throws TopologyError if some node cannot reach the sink.
inline Topology make_topology(const std::vector<Position>& positions, Position sink, double radio_range) {
  if (positions.empty()) throw ValidationError("topology needs at least one node");
  if (!(radio_range > 0.0)) throw ValidationError("radio range must be positive");
  Topology t;
  t.sink = sink;
  t.radio_range = radio_range;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    t.nodes.push_back({static_cast<int>(i), positions[i], 0.0, true});
  }
  t.links = detail::link_graph(t.nodes, sink, radio_range);
  if (!detail::all_reach_sink(t.links)) throw TopologyError("topology is not connected to the sink");
  return t;
}

inline constexpr int kMaxPlacementAttempts = 100;

// Uniform placement in [0, side)^2 with the sink at the centre. Attempt k draws
// from mt19937_64 seeded by seed_seq{seed, k}; the first connected draw wins.
inline Topology build_topology(int n, double field_side, double radio_range, std::uint64_t seed) {
  if (n < 1) throw ValidationError("node count must be >= 1");
  if (!(field_side > 0.0) || !(radio_range > 0.0)) {
    throw ValidationError("field side and radio range must be positive");
  }
  const Position sink{field_side / 2.0, field_side / 2.0};
  for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xFFFFFFFFu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::vector<Position> positions(static_cast<std::size_t>(n));
    for (auto& p : positions) {
      p.x = detail::unit_uniform(rng) * field_side;
      p.y = detail::unit_uniform(rng) * field_side;
    }
    try {
      return make_topology(positions, sink, radio_range);
    } catch (const TopologyError&) {
    }
  }
  throw TopologyError("no connected placement of " + std::to_string(n) + " nodes in " +
                      format_double(field_side) + " m field after " + std::to_string(kMaxPlacementAttempts) +
                      " attempts; try a larger radio range");
}

struct RoutingTree {
  std::vector<int> parent;  // kSink, another node id, or kUnreachable
  std::vector<int> hops;    // -1 when unreachable

  [[nodiscard]] bool connected(int id) const { return parent[static_cast<std::size_t>(id)] != kUnreachable; }
  friend bool operator==(const RoutingTree&, const RoutingTree&) = default;
};

// Breadth-first min-hop tree from the sink over the alive nodes. A node picks
// its parent among previous-layer neighbours by lowest id, then shortest distance.
inline RoutingTree route(const Topology& topo, const std::vector<bool>& alive) {
  const int n = static_cast<int>(topo.size());
  const int sink = topo.sink_vertex();
  RoutingTree tree{std::vector<int>(static_cast<std::size_t>(n), kUnreachable),
                   std::vector<int>(static_cast<std::size_t>(n), -1)};
  std::vector<int> layer_of(static_cast<std::size_t>(n) + 1, -1);
  layer_of[static_cast<std::size_t>(sink)] = 0;

  std::vector<int> frontier{sink};
  for (int depth = 1; !frontier.empty(); ++depth) {
    std::vector<int> next;
    for (int v : frontier) {
      for (int w : topo.links[static_cast<std::size_t>(v)]) {
        if (w == sink || !alive[static_cast<std::size_t>(w)] || layer_of[static_cast<std::size_t>(w)] != -1) continue;
        layer_of[static_cast<std::size_t>(w)] = depth;
        next.push_back(w);
      }
    }
    for (int w : next) {
      int best = -1;
      double best_d = 0.0;
      for (int v : topo.links[static_cast<std::size_t>(w)]) {
        if (layer_of[static_cast<std::size_t>(v)] != depth - 1) continue;
        if (v != sink && !alive[static_cast<std::size_t>(v)]) continue;
        const int id = v == sink ? kSink : v;
        const double d = distance(topo.position(w), topo.position(id));
        const int best_id = best == sink ? kSink : best;
        if (best == -1 || id < best_id || (id == best_id && d < best_d)) {
          best = v;
          best_d = d;
        }
      }
      tree.parent[static_cast<std::size_t>(w)] = best == sink ? kSink : best;
      tree.hops[static_cast<std::size_t>(w)] = depth;
    }
    frontier = std::move(next);
  }
  return tree;
}

inline RoutingTree route(const Topology& topo) { return route(topo, std::vector<bool>(topo.size(), true)); }

struct RadioEnergyModel {
  double e_elec = 50e-9;         // J/bit
  double eps_amp = 100e-12;      // J/bit/m^2
  std::size_t frame_payload = 102;  // bytes
  std::size_t frame_overhead = 25;  // bytes

  [[nodiscard]] double tx(double bits, double d) const { return e_elec * bits + eps_amp * bits * d * d; }
  [[nodiscard]] double rx(double bits) const { return e_elec * bits; }

  void validate() const {
    if (!(e_elec > 0.0) || !(eps_amp > 0.0) || frame_payload == 0 || frame_overhead == 0) {
      throw ValidationError("radio energy model parameters must be positive");
    }
  }

  friend bool operator==(const RadioEnergyModel&, const RadioEnergyModel&) = default;
};

// On-air frame sizes (payload chunk + overhead) for one payload.
inline std::vector<std::size_t> fragment(std::size_t payload_bytes, const RadioEnergyModel& radio) {
  std::vector<std::size_t> frames;
  for (std::size_t sent = 0; sent < payload_bytes; sent += radio.frame_payload) {
    frames.push_back(std::min(radio.frame_payload, payload_bytes - sent) + radio.frame_overhead);
  }
  return frames;
}

struct TransmissionEvent {
  int round = 0;
  int sender = 0;
  int receiver = 0;  // kSink for the sink
  std::size_t bytes = 0;
  double tx_joules = 0.0;
  double rx_joules = 0.0;  // zero when the sink receives
};

using EventLog = std::vector<TransmissionEvent>;

inline std::string format_event(const TransmissionEvent& e) {
  return std::to_string(e.round) + ' ' + std::to_string(e.sender) + ' ' +
         (e.receiver == kSink ? std::string("sink") : std::to_string(e.receiver)) + ' ' + std::to_string(e.bytes) +
         ' ' + format_double(e.tx_joules) + ' ' + format_double(e.rx_joules);
}

struct RunConfig {
  int rounds = 20;
  RadioEnergyModel radio;
  double initial_energy_j = 2.0;
  EncodeOptions encode;
  std::uint64_t seed = 0;
};

struct RunMetrics {
  std::uint64_t total_tx_bytes = 0;
  std::uint64_t total_rx_bytes = 0;  // every reception, sink included
  std::uint64_t sink_rx_bytes = 0;
  std::map<int, std::uint64_t> per_node_tx;
  double energy_spent = 0.0;
  int rounds_until_first_death = 0;  // round at whose start the first node died; 0 = none
  int rounds_completed = 0;
  std::vector<NodeState> final_nodes;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

// Payload size in bytes produced by `node` in `round`.
using PayloadSizer = std::function<std::size_t(int node, int round)>;

inline RunMetrics run_with_payloads(const Topology& topo, const PayloadSizer& payload_bytes, const RunConfig& cfg,
                                    EventLog* log = nullptr) {
  if (cfg.rounds < 0) throw ValidationError("rounds must be >= 0");
  if (!(cfg.initial_energy_j >= 0.0)) throw ValidationError("initial energy must be >= 0");
  cfg.radio.validate();

  const int n = static_cast<int>(topo.size());
  const auto idx = [](int id) { return static_cast<std::size_t>(id); };
  RunMetrics m;
  std::vector<NodeState> nodes = topo.nodes;
  for (auto& node : nodes) {
    node.residual_energy = cfg.initial_energy_j;
    node.alive = cfg.initial_energy_j > 0.0;
  }
  std::vector<bool> alive(idx(n));
  auto kill = [&](int id, int round) {
    nodes[idx(id)].alive = false;
    nodes[idx(id)].residual_energy = 0.0;
    if (m.rounds_until_first_death == 0) m.rounds_until_first_death = round;
  };

  for (int round = 1; round <= cfg.rounds; ++round) {
    for (int i = 0; i < n; ++i) {
      if (nodes[idx(i)].alive && nodes[idx(i)].residual_energy <= 0.0) kill(i, round);
      alive[idx(i)] = nodes[idx(i)].alive;
    }

    std::vector<std::vector<std::size_t>> frames(idx(n));
    for (int i = 0; i < n; ++i) {
      if (alive[idx(i)]) frames[idx(i)] = fragment(payload_bytes(i, round), cfg.radio);
    }

    // Nodes that cannot afford this round's traffic die now; reroute until stable.
    RoutingTree tree;
    while (true) {
      tree = route(topo, alive);
      std::vector<double> need(idx(n), 0.0);
      for (int src = 0; src < n; ++src) {
        if (!alive[idx(src)] || !tree.connected(src)) continue;
        for (const auto frame : frames[idx(src)]) {
          const double bits = 8.0 * static_cast<double>(frame);
          for (int u = src; u != kSink; u = tree.parent[idx(u)]) {
            const int v = tree.parent[idx(u)];
            need[idx(u)] += cfg.radio.tx(bits, distance(topo.position(u), topo.position(v)));
            if (v != kSink) need[idx(v)] += cfg.radio.rx(bits);
          }
        }
      }
      bool changed = false;
      for (int i = 0; i < n; ++i) {
        if (alive[idx(i)] && need[idx(i)] > nodes[idx(i)].residual_energy) {
          kill(i, round);
          alive[idx(i)] = false;
          changed = true;
        }
      }
      if (!changed) break;
    }

    bool any_source = false;
    for (int i = 0; i < n && !any_source; ++i) any_source = alive[idx(i)] && tree.connected(i);
    if (!any_source) break;

    for (int src = 0; src < n; ++src) {
      if (!alive[idx(src)] || !tree.connected(src)) continue;
      for (const auto frame : frames[idx(src)]) {
        const double bits = 8.0 * static_cast<double>(frame);
        for (int u = src; u != kSink; u = tree.parent[idx(u)]) {
          const int v = tree.parent[idx(u)];
          TransmissionEvent ev{round, u, v, frame, cfg.radio.tx(bits, distance(topo.position(u), topo.position(v))),
                               v == kSink ? 0.0 : cfg.radio.rx(bits)};
          auto& su = nodes[idx(u)];
          su.residual_energy = std::max(0.0, su.residual_energy - ev.tx_joules);
          if (v != kSink) {
            auto& sv = nodes[idx(v)];
            sv.residual_energy = std::max(0.0, sv.residual_energy - ev.rx_joules);
          } else {
            m.sink_rx_bytes += frame;
          }
          m.total_tx_bytes += frame;
          m.total_rx_bytes += frame;
          m.per_node_tx[u] += frame;
          m.energy_spent += ev.tx_joules + ev.rx_joules;
          if (log != nullptr) log->push_back(ev);
        }
      }
    }
    ++m.rounds_completed;
  }

  for (auto& node : nodes) {
    if (node.residual_energy <= 0.0) node.alive = false;
  }
  m.final_nodes = std::move(nodes);
  return m;
}

// Replaces the last digit of each value's canonical text with a pseudo-random
// non-zero digit. The text length, and so the payload size, stays the same.
inline double perturb_value(double value, std::uint64_t key) {
  const auto text = format_double(value);
  const auto mantissa_end = text.find('e');
  const auto last = text.find_last_of("0123456789", mantissa_end == std::string::npos ? std::string::npos : mantissa_end - 1);
  if (last == std::string::npos) return value;
  auto changed = text;
  changed[last] = static_cast<char>('1' + detail::splitmix64(key) % 9);
  const auto parsed = parse_double(changed);
  if (!parsed || format_double(*parsed).size() != text.size()) return value;
  return *parsed;
}

inline SensorReading reading_for(const SensorReading& tmpl, int node, int round, std::uint64_t seed) {
  SensorReading r = tmpl;
  r.sensor_id = node;
  for (std::size_t f = 0; f < r.record.fields.size(); ++f) {
    std::uint64_t key = detail::splitmix64(seed);
    key = detail::splitmix64(key ^ static_cast<std::uint64_t>(node));
    key = detail::splitmix64(key ^ static_cast<std::uint64_t>(round));
    key = detail::splitmix64(key ^ f);
    r.record.fields[f].value = perturb_value(r.record.fields[f].value, key);
  }
  return r;
}

inline RunMetrics run(const Topology& topo, Encoding encoding, const SensorReading& reading_template,
                      const RunConfig& cfg, EventLog* log = nullptr) {
  require_valid(reading_template);
  auto sizer = [&](int node, int round) {
    return measure(encode(reading_for(reading_template, node, round, cfg.seed), encoding, cfg.encode));
  };
  return run_with_payloads(topo, sizer, cfg, log);
}

}  // namespace semsense::netsim
