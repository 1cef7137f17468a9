#pragma once

// Command-line front end. Exit codes: 0 success, 1 validation, 2 I/O, 3 internal.

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semsense/codec.hpp"
#include "semsense/config.hpp"
#include "semsense/report.hpp"
#include "semsense/triples.hpp"

namespace semsense::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2, kInternal = 3 };

inline bool on_off(const std::string& s) { return s == "on"; }

inline int cmd_encode(const std::string& reading_path, Encoding encoding, const std::string& out_path,
                      const EncodeOptions& options, bool timestamp_only, std::ostream& out) {
  const auto reading = config::parse_reading(config::read_file(reading_path));
  EncodedPayload payload;
  if (timestamp_only) {
    if (encoding != Encoding::SSW) throw ValidationError("--timestamp-only applies to the ssw encoding");
    payload = encode_ssw_timestamp(reading, options.rdfa);
  } else {
    payload = encode(reading, encoding, options);
  }
  config::write_file(out_path, payload.bytes);
  out << "size_bytes: " << measure(payload) << '\n';
  return kOk;
}

inline int cmd_extract(const std::string& xml_path, std::ostream& out) {
  const auto document = config::read_file(xml_path);
  const auto encoding = detect_encoding(document);
  const auto triples = encoding == Encoding::SSW ? extract_ssw_document(document) : extract_es3n_document(document);
  out << to_ntriples(triples);
  return kOk;
}

inline int cmd_compare(const std::string& reading_path, const EncodeOptions& options, std::ostream& out) {
  const auto reading = config::parse_reading(config::read_file(reading_path));
  const auto ssw = encode_ssw(reading, options);
  const auto es3n = encode_es3n(reading, options);
  const bool same = equivalent(extract_ssw(ssw), extract_es3n(es3n));
  std::ostringstream ratio;
  ratio << std::fixed << std::setprecision(4)
        << static_cast<double>(measure(es3n)) / static_cast<double>(measure(ssw));
  out << "ssw_bytes: " << measure(ssw) << '\n'
      << "es3n_bytes: " << measure(es3n) << '\n'
      << "es3n_to_ssw_ratio: " << ratio.str() << '\n'
      << (same ? "EQUIVALENT" : "DIFFERENT") << '\n';
  return same ? kOk : kValidation;
}

struct SweepOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> include_timestamp;
  std::optional<std::string> event_log_dir;
};

inline int cmd_sweep(const std::string& config_path, const SweepOverrides& ov, std::ostream& out, std::ostream& err) {
  auto scenario = config::parse_scenario(config::read_file(config_path));
  if (ov.seed) scenario.sweep.seeds = {*ov.seed};
  if (ov.include_timestamp) scenario.sweep.sim.encode.include_timestamp = on_off(*ov.include_timestamp);
  std::filesystem::path csv_path = scenario.output.csv;
  std::filesystem::path plot_path = scenario.output.plotdata;
  if (ov.out_dir) {
    std::filesystem::create_directories(*ov.out_dir);
    csv_path = std::filesystem::path(*ov.out_dir) / csv_path.filename();
    plot_path = std::filesystem::path(*ov.out_dir) / plot_path.filename();
  }

  if (ov.event_log_dir) {
    const std::filesystem::path dir = *ov.event_log_dir;
    std::filesystem::create_directories(dir);
    scenario.sweep.on_event_log = [dir](int n, Encoding e, std::uint64_t seed, const netsim::EventLog& log) {
      std::string text;
      for (const auto& ev : log) text += netsim::format_event(ev) + '\n';
      config::write_file(dir / ("events_n" + std::to_string(n) + "_" + std::string(to_string(e)) + "_seed" +
                                std::to_string(seed) + ".log"),
                         text);
    };
  }
  const auto result = report::sweep(scenario.sweep);
  for (const auto& f : result.failures) {
    err << "cell n=" << f.n << " seed=" << f.seed << " failed: " << f.message << '\n';
  }
  if (result.rows.empty()) throw ValidationError("every sweep cell failed");
  config::write_file(csv_path, report::emit_csv(result));
  config::write_file(plot_path, report::emit_plotdata(result));

  const auto means = report::mean_total_tx_kb(result);
  out << std::left << std::setw(8) << "n" << std::setw(16) << "encoding" << "mean_total_tx_kb\n";
  for (const auto& [key, kb] : means) {
    out << std::left << std::setw(8) << key.first << std::setw(16) << to_string(key.second) << format_double(kb)
        << '\n';
  }
  out << "csv: " << csv_path.string() << "\nplotdata: " << plot_path.string() << '\n';
  return result.failures.empty() ? kOk : kValidation;
}

// Entry point shared by the executable and the in-process tests. `args`
// excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic sensor encodings: SSW vs ES3N size and WSN transmission cost"};
  app.name("semsense");
  app.require_subcommand(1);

  const auto on_off_check = CLI::IsMember({"on", "off"});

  std::string reading_path, out_path, xml_path, config_path;
  std::string include_ts = "on", es3n_header = "off", rdfa = "prefixed";
  std::string encoding_name;
  bool timestamp_only = false;

  auto* encode_cmd = app.add_subcommand("encode", "Encode a reading file as SSW or ES3N XML");
  encode_cmd->add_option("reading", reading_path, "Reading file (JSON)")->required();
  encode_cmd->add_option("--encoding", encoding_name, "ssw or es3n")
      ->required()
      ->check(CLI::IsMember({"ssw", "es3n"}));
  encode_cmd->add_option("--out", out_path, "Output XML path")->required();
  encode_cmd->add_option("--include-timestamp", include_ts, "Emit the time instant (on|off)")->check(on_off_check);
  encode_cmd->add_option("--es3n-header", es3n_header, "Prepend ontology header to ES3N (on|off)")->check(on_off_check);
  encode_cmd->add_option("--rdfa", rdfa, "RDFa attribute spelling (prefixed|w3c)")
      ->check(CLI::IsMember({"prefixed", "w3c"}));
  encode_cmd->add_flag("--timestamp-only", timestamp_only, "Emit only the SSW time annotation fragment");

  auto* extract_cmd = app.add_subcommand("extract", "Print the triples of an SSW or ES3N document as N-Triples");
  extract_cmd->add_option("xml", xml_path, "XML document")->required();

  auto* compare_cmd = app.add_subcommand("compare", "Compare SSW and ES3N sizes and semantic equivalence");
  compare_cmd->add_option("reading", reading_path, "Reading file (JSON)")->required();
  compare_cmd->add_option("--include-timestamp", include_ts, "Emit the time instant (on|off)")->check(on_off_check);
  compare_cmd->add_option("--es3n-header", es3n_header, "Prepend ontology header to ES3N (on|off)")->check(on_off_check);

  SweepOverrides ov;
  std::uint64_t seed = 0;
  std::string sweep_out, sweep_ts, event_dir;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the node-count sweep and write CSV + plot data");
  sweep_cmd->add_option("--config", config_path, "Scenario config (JSON)")->required();
  auto* seed_opt = sweep_cmd->add_option("--seed", seed, "Run a single seed instead of the configured list");
  auto* out_opt = sweep_cmd->add_option("--out", sweep_out, "Directory for the output files");
  auto* ts_opt = sweep_cmd->add_option("--include-timestamp", sweep_ts, "Override timestamp inclusion (on|off)")
                     ->check(on_off_check);
  auto* log_opt = sweep_cmd->add_option("--event-log", event_dir,
                                        "Directory for per-run transmission event logs");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  EncodeOptions options;
  options.include_timestamp = on_off(include_ts);
  options.es3n_header = on_off(es3n_header);
  options.rdfa = rdfa == "w3c" ? RdfaSpelling::W3C : RdfaSpelling::Prefixed;

  try {
    if (*encode_cmd) return cmd_encode(reading_path, *parse_encoding(encoding_name), out_path, options, timestamp_only, out);
    if (*extract_cmd) return cmd_extract(xml_path, out);
    if (*compare_cmd) return cmd_compare(reading_path, options, out);
    if (*seed_opt) ov.seed = seed;
    if (*out_opt) ov.out_dir = sweep_out;
    if (*ts_opt) ov.include_timestamp = sweep_ts;
    if (*log_opt) ov.event_log_dir = event_dir;
    return cmd_sweep(config_path, ov, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace semsense::cli
