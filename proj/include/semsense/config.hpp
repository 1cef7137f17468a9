#pragma once

// JSON reading files and scenario configs. Both are strict: unknown keys and
// out-of-range values are errors. Schemas live in schema/ at the repo root.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "semsense/errors.hpp"
#include "semsense/observation.hpp"
#include "semsense/payload.hpp"
#include "semsense/report.hpp"

namespace semsense::config {

using nlohmann::json;

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("no such file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

namespace detail {

// Accumulates problems so a single error can list every bad key.
class Problems {
 public:
  void add(std::string msg) { items_.push_back(std::move(msg)); }

  void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        add("unknown key '" + std::string(where) + key + "'");
      }
    }
  }

  void raise_if_any(std::string_view what) const {
    if (items_.empty()) return;
    std::string msg = "invalid " + std::string(what) + ":";
    for (const auto& p : items_) msg += " " + p + ";";
    msg.pop_back();
    throw ValidationError(msg);
  }

 private:
  std::vector<std::string> items_;
};

inline json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed " + std::string(what) + ": " + e.what());
  }
}

inline const json* member(const json& obj, std::string_view key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline std::string get_string(const json& obj, std::string_view key, std::string_view where, Problems& p) {
  const auto* v = member(obj, key);
  if (v == nullptr || !v->is_string()) {
    p.add("'" + std::string(where) + std::string(key) + "' must be a string");
    return {};
  }
  return v->get<std::string>();
}

inline double get_number(const json& obj, std::string_view key, std::string_view where, Problems& p) {
  const auto* v = member(obj, key);
  if (v == nullptr || !v->is_number()) {
    p.add("'" + std::string(where) + std::string(key) + "' must be a number");
    return 0.0;
  }
  return v->get<double>();
}

}  // namespace detail

inline SensorReading parse_reading(std::string_view text) {
  using namespace detail;
  const auto doc = parse_json(text, "reading file");
  Problems p;
  if (!doc.is_object()) throw ValidationError("reading file must hold a JSON object");
  p.check_keys(doc, "", {"sensor_id", "timestamp", "record"});

  SensorReading r;
  if (const auto* id = member(doc, "sensor_id"); id != nullptr && id->is_number_integer()) {
    r.sensor_id = id->get<std::int64_t>();
  } else {
    p.add("'sensor_id' must be an integer");
  }
  r.time.timestamp = get_string(doc, "timestamp", "", p);

  const auto* rec = member(doc, "record");
  if (rec == nullptr || !rec->is_object()) {
    p.add("'record' must be an object");
  } else {
    p.check_keys(*rec, "record.", {"definition", "fields"});
    r.record.definition.urn = get_string(*rec, "definition", "record.", p);
    const auto* fields = member(*rec, "fields");
    if (fields == nullptr || !fields->is_array()) {
      p.add("'record.fields' must be an array");
    } else {
      for (std::size_t i = 0; i < fields->size(); ++i) {
        const auto& f = (*fields)[i];
        const auto where = "record.fields[" + std::to_string(i) + "].";
        if (!f.is_object()) {
          p.add("'" + where + "' must be an object");
          continue;
        }
        p.check_keys(f, where, {"name", "definition", "uom", "value"});
        QuantityObservation q;
        q.name = get_string(f, "name", where, p);
        q.definition.urn = get_string(f, "definition", where, p);
        q.value = get_number(f, "value", where, p);
        if (const auto* uom = member(f, "uom"); uom != nullptr && uom->is_object()) {
          p.check_keys(*uom, where + "uom.", {"code", "iri"});
          q.uom.code = get_string(*uom, "code", where + "uom.", p);
          q.uom.iri = get_string(*uom, "iri", where + "uom.", p);
        } else {
          p.add("'" + where + "uom' must be an object");
        }
        r.record.fields.push_back(std::move(q));
      }
    }
  }
  p.raise_if_any("reading file");
  require_valid(r);
  return r;
}

inline std::string reading_to_json(const SensorReading& r) {
  json fields = json::array();
  for (const auto& q : r.record.fields) {
    fields.push_back(json{{"name", q.name},
                          {"definition", q.definition.urn},
                          {"uom", json{{"code", q.uom.code}, {"iri", q.uom.iri}}},
                          {"value", q.value}});
  }
  json doc{{"sensor_id", r.sensor_id},
           {"timestamp", r.time.timestamp},
           {"record", json{{"definition", r.record.definition.urn}, {"fields", fields}}}};
  return doc.dump(2) + "\n";
}

struct OutputPaths {
  std::string csv = "sweep.csv";
  std::string plotdata = "sweep.dat";
};

struct ScenarioConfig {
  report::SweepConfig sweep;
  OutputPaths output;
};

inline ScenarioConfig default_scenario() {
  ScenarioConfig c;
  c.sweep.n_list = report::default_n_list();
  c.sweep.seeds = {1, 2, 3, 4, 5};
  return c;
}

inline ScenarioConfig parse_scenario(std::string_view text) {
  using namespace detail;
  const auto doc = parse_json(text, "scenario config");
  if (!doc.is_object()) throw ValidationError("scenario config must hold a JSON object");
  Problems p;
  p.check_keys(doc, "", {"n_list", "seeds", "field_side_m", "radio_range_m", "constant_density", "reference_n",
                         "rounds", "initial_energy_j", "energy", "include_timestamp", "es3n_header", "encodings",
                         "template", "threads", "output"});
  ScenarioConfig c = default_scenario();
  auto& s = c.sweep;

  auto positive_number = [&](const json& obj, std::string_view key, std::string_view where, double& target) {
    if (member(obj, key) == nullptr) return;
    const double v = get_number(obj, key, where, p);
    if (!(v > 0.0) || !std::isfinite(v)) p.add("'" + std::string(where) + std::string(key) + "' must be > 0");
    else target = v;
  };
  auto integer = [&](const json& obj, std::string_view key, std::string_view where, long long min, auto& target) {
    const auto* v = member(obj, key);
    if (v == nullptr) return;
    if (!v->is_number_integer() || v->get<long long>() < min) {
      p.add("'" + std::string(where) + std::string(key) + "' must be an integer >= " + std::to_string(min));
    } else {
      target = static_cast<std::remove_reference_t<decltype(target)>>(v->get<long long>());
    }
  };
  auto boolean = [&](const json& obj, std::string_view key, bool& target) {
    const auto* v = member(obj, key);
    if (v == nullptr) return;
    if (!v->is_boolean()) p.add("'" + std::string(key) + "' must be a boolean");
    else target = v->get<bool>();
  };

  if (const auto* v = member(doc, "n_list")) {
    s.n_list.clear();
    if (!v->is_array() || v->empty()) p.add("'n_list' must be a non-empty array");
    else {
      for (const auto& e : *v) {
        if (!e.is_number_integer() || e.get<long long>() < 1 || e.get<long long>() > 100000) {
          p.add("'n_list' entries must be integers in [1, 100000]");
          break;
        }
        s.n_list.push_back(e.get<int>());
      }
    }
  }
  if (const auto* v = member(doc, "seeds")) {
    s.seeds.clear();
    if (!v->is_array() || v->empty()) p.add("'seeds' must be a non-empty array");
    else {
      for (const auto& e : *v) {
        if (!e.is_number_unsigned()) {
          p.add("'seeds' entries must be non-negative integers");
          break;
        }
        s.seeds.push_back(e.get<std::uint64_t>());
      }
    }
  }
  positive_number(doc, "field_side_m", "", s.field_side);
  positive_number(doc, "radio_range_m", "", s.radio_range);
  boolean(doc, "constant_density", s.constant_density);
  integer(doc, "reference_n", "", 1, s.reference_n);
  integer(doc, "rounds", "", 0, s.sim.rounds);
  positive_number(doc, "initial_energy_j", "", s.sim.initial_energy_j);
  boolean(doc, "include_timestamp", s.sim.encode.include_timestamp);
  boolean(doc, "es3n_header", s.sim.encode.es3n_header);
  integer(doc, "threads", "", 0, s.threads);

  if (const auto* e = member(doc, "energy")) {
    if (!e->is_object()) p.add("'energy' must be an object");
    else {
      p.check_keys(*e, "energy.", {"e_elec_j_per_bit", "eps_amp_j_per_bit_m2", "frame_payload_bytes",
                                   "frame_overhead_bytes"});
      positive_number(*e, "e_elec_j_per_bit", "energy.", s.sim.radio.e_elec);
      positive_number(*e, "eps_amp_j_per_bit_m2", "energy.", s.sim.radio.eps_amp);
      integer(*e, "frame_payload_bytes", "energy.", 1, s.sim.radio.frame_payload);
      integer(*e, "frame_overhead_bytes", "energy.", 1, s.sim.radio.frame_overhead);
    }
  }
  if (const auto* v = member(doc, "encodings")) {
    s.encodings.clear();
    if (!v->is_array() || v->empty()) p.add("'encodings' must be a non-empty array");
    else {
      for (const auto& e : *v) {
        const auto enc = e.is_string() ? parse_encoding(e.get<std::string>()) : std::nullopt;
        if (!enc) p.add("'encodings' entries must be \"ssw\" or \"es3n\"");
        else if (std::find(s.encodings.begin(), s.encodings.end(), *enc) == s.encodings.end()) s.encodings.push_back(*enc);
      }
    }
  }
  if (const auto* t = member(doc, "template")) {
    if (!t->is_object()) p.add("'template' must be an object");
    else {
      p.check_keys(*t, "template.", {"temperature_c", "windspeed_ms", "timestamp"});
      double temp = 35.1, wind = 6.5;
      if (member(*t, "temperature_c") != nullptr) temp = get_number(*t, "temperature_c", "template.", p);
      if (member(*t, "windspeed_ms") != nullptr) wind = get_number(*t, "windspeed_ms", "template.", p);
      s.reading_template.record = make_atmospheric_record(temp, wind);
      if (member(*t, "timestamp") != nullptr) {
        s.reading_template.time.timestamp = get_string(*t, "timestamp", "template.", p);
        if (!is_iso8601_datetime(s.reading_template.time.timestamp)) p.add("'template.timestamp' is not ISO-8601");
      }
    }
  }
  if (const auto* o = member(doc, "output")) {
    if (!o->is_object()) p.add("'output' must be an object");
    else {
      p.check_keys(*o, "output.", {"csv", "plotdata"});
      if (member(*o, "csv") != nullptr) c.output.csv = get_string(*o, "csv", "output.", p);
      if (member(*o, "plotdata") != nullptr) c.output.plotdata = get_string(*o, "plotdata", "output.", p);
    }
  }
  p.raise_if_any("scenario config");
  return c;
}

}  // namespace semsense::config
