#pragma once

// Sweep orchestration over (n, encoding, seed) and the CSV / plot-data
// renderings of its result. KB is 1000 bytes.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "semsense/errors.hpp"
#include "semsense/netsim.hpp"
#include "semsense/number_format.hpp"
#include "semsense/observation.hpp"
#include "semsense/payload.hpp"

namespace semsense::report {

struct SweepConfig {
  std::vector<int> n_list;
  std::vector<Encoding> encodings{Encoding::SSW, Encoding::ES3N};
  std::vector<std::uint64_t> seeds;
  double field_side = 200.0;
  double radio_range = 50.0;
  // Scale the field so that node density matches `reference_n` nodes in field_side^2.
  bool constant_density = true;
  int reference_n = 100;
  netsim::RunConfig sim;
  SensorReading reading_template = reference_reading();
  unsigned threads = 0;  // 0 = hardware concurrency
  // When set, each run records its transmission events and hands them over.
  // Called from worker threads, once per (n, encoding, seed).
  std::function<void(int n, Encoding, std::uint64_t seed, const netsim::EventLog&)> on_event_log;
};

inline std::vector<int> default_n_list() { return {10, 20, 30, 40, 50, 60, 70, 80, 90, 100}; }

inline double field_side_for(const SweepConfig& cfg, int n) {
  if (!cfg.constant_density) return cfg.field_side;
  return cfg.field_side * std::sqrt(static_cast<double>(n) / static_cast<double>(cfg.reference_n));
}

struct SweepRow {
  int n = 0;
  Encoding encoding = Encoding::SSW;
  std::uint64_t seed = 0;
  double total_tx_kb = 0.0;
  int lifetime_rounds = 0;  // 0 = no node died within the horizon
  double energy_spent_j = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepFailure {
  int n = 0;
  std::uint64_t seed = 0;
  std::string message;

  friend bool operator==(const SweepFailure&, const SweepFailure&) = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by (n, encoding, seed)
  std::vector<SweepFailure> failures;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

inline SweepRow make_row(int n, Encoding e, std::uint64_t seed, const netsim::RunMetrics& m) {
  return {n, e, seed, static_cast<double>(m.total_tx_bytes) / 1000.0, m.rounds_until_first_death, m.energy_spent};
}

// Every (n, seed) cell builds one topology that all encodings share.
inline SweepResult sweep(const SweepConfig& cfg) {
  if (cfg.n_list.empty()) throw ValidationError("n_list must not be empty");
  if (cfg.seeds.empty()) throw ValidationError("seeds must not be empty");
  if (cfg.encodings.empty()) throw ValidationError("encodings must not be empty");
  for (int n : cfg.n_list) {
    if (n < 1) throw ValidationError("n_list entries must be >= 1");
  }
  require_valid(cfg.reading_template);
  cfg.sim.radio.validate();

  std::vector<std::pair<int, std::uint64_t>> cells;
  for (int n : cfg.n_list) {
    for (auto seed : cfg.seeds) cells.emplace_back(n, seed);
  }
  std::vector<std::vector<SweepRow>> cell_rows(cells.size());
  std::vector<std::optional<SweepFailure>> cell_failure(cells.size());

  auto run_cell = [&](std::size_t i) {
    const auto [n, seed] = cells[i];
    try {
      const auto topo = netsim::build_topology(n, field_side_for(cfg, n), cfg.radio_range, seed);
      auto sim = cfg.sim;
      sim.seed = seed;
      for (auto e : cfg.encodings) {
        netsim::EventLog log;
        const auto m = netsim::run(topo, e, cfg.reading_template, sim, cfg.on_event_log ? &log : nullptr);
        if (cfg.on_event_log) cfg.on_event_log(n, e, seed, log);
        cell_rows[i].push_back(make_row(n, e, seed, m));
      }
    } catch (const std::exception& ex) {
      cell_rows[i].clear();
      cell_failure[i] = SweepFailure{n, seed, ex.what()};
    }
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (auto i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) run_cell(i);
      });
    }
  }

  SweepResult result;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    result.rows.insert(result.rows.end(), cell_rows[i].begin(), cell_rows[i].end());
    if (cell_failure[i]) result.failures.push_back(*cell_failure[i]);
  }
  auto key = [](const SweepRow& r) { return std::tuple(r.n, r.encoding, r.seed); };
  std::sort(result.rows.begin(), result.rows.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::sort(result.failures.begin(), result.failures.end(),
            [](const auto& a, const auto& b) { return std::tie(a.n, a.seed) < std::tie(b.n, b.seed); });
  return result;
}

inline constexpr std::string_view kCsvHeader = "n,encoding,seed,total_tx_kb,lifetime_rounds,energy_spent_j";

inline std::string emit_csv(const SweepResult& result) {
  if (result.rows.empty()) throw ValidationError("cannot emit an empty sweep result");
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : result.rows) {
    out += std::to_string(r.n) + ',' + std::string(to_string(r.encoding)) + ',' + std::to_string(r.seed) + ',' +
           format_double(r.total_tx_kb) + ',' + std::to_string(r.lifetime_rounds) + ',' +
           format_double(r.energy_spent_j) + '\n';
  }
  return out;
}

namespace detail {

template <typename Int>
Int parse_int(const std::string& s, const char* what) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ValidationError(std::string("bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace detail

inline SweepResult parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ValidationError("missing or wrong CSV header");
  SweepResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string col; std::getline(ls, col, ',');) cols.push_back(col);
    if (cols.size() != 6) throw ValidationError("expected 6 CSV columns in '" + line + "'");
    const auto enc = parse_encoding(cols[1]);
    const auto kb = parse_double(cols[3]);
    const auto joules = parse_double(cols[5]);
    if (!enc || !kb || !joules) throw ValidationError("bad CSV row '" + line + "'");
    result.rows.push_back({detail::parse_int<int>(cols[0], "n"), *enc, detail::parse_int<std::uint64_t>(cols[2], "seed"),
                           *kb, detail::parse_int<int>(cols[4], "lifetime"), *joules});
  }
  return result;
}

// Arithmetic mean of total_tx_kb over seeds, per (n, encoding). Rows carry
// whole byte counts, so the sum is taken in bytes to avoid rounding drift.
inline std::map<std::pair<int, Encoding>, double> mean_total_tx_kb(const SweepResult& result) {
  std::map<std::pair<int, Encoding>, std::pair<std::int64_t, int>> acc;
  for (const auto& r : result.rows) {
    auto& [bytes, count] = acc[{r.n, r.encoding}];
    bytes += std::llround(r.total_tx_kb * 1000.0);
    ++count;
  }
  std::map<std::pair<int, Encoding>, double> out;
  for (const auto& [k, v] : acc) out[k] = static_cast<double>(v.first) / (1000.0 * v.second);
  return out;
}

// Whitespace-separated columns: n, then one mean-KB column per encoding.
// Cells without data are written as "nan".
inline std::string emit_plotdata(const SweepResult& result) {
  if (result.rows.empty()) throw ValidationError("cannot emit an empty sweep result");
  const auto means = mean_total_tx_kb(result);
  std::vector<Encoding> encodings;
  std::vector<int> ns;
  for (const auto& [k, v] : means) {
    if (std::find(ns.begin(), ns.end(), k.first) == ns.end()) ns.push_back(k.first);
    if (std::find(encodings.begin(), encodings.end(), k.second) == encodings.end()) encodings.push_back(k.second);
  }
  std::sort(encodings.begin(), encodings.end());
  std::string out = "# n";
  for (auto e : encodings) out += ' ' + std::string(to_string(e)) + "_mean_total_tx_kb";
  out += '\n';
  for (int n : ns) {
    out += std::to_string(n);
    for (auto e : encodings) {
      const auto it = means.find({n, e});
      out += ' ' + (it == means.end() ? std::string("nan") : format_double(it->second));
    }
    out += '\n';
  }
  return out;
}

}  // namespace semsense::report
