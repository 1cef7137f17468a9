#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semsense/errors.hpp"
#include "semsense/number_format.hpp"

namespace semsense {

inline constexpr std::string_view kPropertyUrnPrefix = "urn:ogc:def:property:";
inline constexpr std::string_view kTimeInstantType = "time:Instant";
// Unit codes are short UCUM-style symbols ("Cel", "m/s", "hPa").
inline constexpr std::size_t kMaxUomCodeLength = 32;

struct PhenomenonDefinition {
  std::string urn;

  friend bool operator==(const PhenomenonDefinition&, const PhenomenonDefinition&) = default;
};

struct UomIdentifier {
  std::string code;  // UCUM-ish code, e.g. "Cel"
  std::string iri;   // unit ontology individual

  friend bool operator==(const UomIdentifier&, const UomIdentifier&) = default;
};

struct QuantityObservation {
  std::string name;
  PhenomenonDefinition definition;
  UomIdentifier uom;
  double value = 0.0;

  friend bool operator==(const QuantityObservation&, const QuantityObservation&) = default;
};

struct TimeInstant {
  std::string timestamp;  // ISO-8601, carried verbatim
  std::string type_iri{kTimeInstantType};

  friend bool operator==(const TimeInstant&, const TimeInstant&) = default;
};

struct DataRecord {
  PhenomenonDefinition definition;
  std::vector<QuantityObservation> fields;

  friend bool operator==(const DataRecord&, const DataRecord&) = default;
};

struct SensorReading {
  std::int64_t sensor_id = 0;
  TimeInstant time;
  DataRecord record;

  friend bool operator==(const SensorReading&, const SensorReading&) = default;
};

namespace units {
inline constexpr std::string_view kOntology = "http://sweet.jpl.nasa.gov/ontology/units.owl#";
inline const UomIdentifier kDegreeC{"Cel", std::string(kOntology) + "degreeC"};
inline const UomIdentifier kMeterPerSecond{"m/s", std::string(kOntology) + "meter_persecond"};
}  // namespace units

inline PhenomenonDefinition ogc_property(std::string_view local_name) {
  return PhenomenonDefinition{std::string(kPropertyUrnPrefix) + "OGC:" + std::string(local_name)};
}

// Two-field atmospheric record: AirTemperature (Cel) then WinSpeed (m/s).
inline DataRecord make_atmospheric_record(double temp_celsius, double windspeed_ms) {
  if (!std::isfinite(temp_celsius) || !std::isfinite(windspeed_ms)) {
    throw ValidationError("atmospheric record values must be finite");
  }
  DataRecord record;
  record.definition = ogc_property("atmosphericConditions");
  record.fields.push_back(
      {"AirTemperature", ogc_property("AirTemperature"), units::kDegreeC, temp_celsius});
  record.fields.push_back(
      {"WinSpeed", ogc_property("WinSpeed"), units::kMeterPerSecond, windspeed_ms});
  return record;
}

// Reference atmospheric reading: sensor 1, 35.1 Cel, 6.5 m/s.
inline SensorReading reference_reading() {
  return SensorReading{1, TimeInstant{"2010-03-08T05:00:00"}, make_atmospheric_record(35.1, 6.5)};
}

namespace detail {

inline bool all_digits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return !s.empty();
}

inline int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace detail

// YYYY-MM-DDThh:mm:ss[.fraction][Z|(+|-)hh:mm], calendar-checked.
inline bool is_iso8601_datetime(std::string_view ts) {
  using detail::all_digits;
  using detail::to_int;
  if (ts.size() < 19) return false;
  if (ts[4] != '-' || ts[7] != '-' || ts[10] != 'T' || ts[13] != ':' || ts[16] != ':') return false;
  const auto year = ts.substr(0, 4), month = ts.substr(5, 2), day = ts.substr(8, 2);
  const auto hour = ts.substr(11, 2), minute = ts.substr(14, 2), second = ts.substr(17, 2);
  for (auto part : {year, month, day, hour, minute, second}) {
    if (!all_digits(part)) return false;
  }
  const int y = to_int(year), mo = to_int(month), d = to_int(day);
  if (mo < 1 || mo > 12) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  const int max_day = kDays[mo - 1] + ((mo == 2 && leap) ? 1 : 0);
  if (d < 1 || d > max_day) return false;
  if (to_int(hour) > 23 || to_int(minute) > 59 || to_int(second) > 60) return false;

  auto rest = ts.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t i = 1;
    while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) ++i;
    if (i == 1) return false;
    rest = rest.substr(i);
  }
  if (rest.empty() || rest == "Z") return true;
  if (rest.size() != 6 || (rest[0] != '+' && rest[0] != '-') || rest[3] != ':') return false;
  const auto zh = rest.substr(1, 2), zm = rest.substr(4, 2);
  return all_digits(zh) && all_digits(zm) && to_int(zh) <= 14 && to_int(zm) <= 59;
}

// Names become "#Name" fragments and "Quantity_Name" rdf:IDs, so they must be
// XML NCNames without dots.
inline bool is_field_name(std::string_view name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (!std::isalpha(first) && first != '_') return false;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '-') return false;
  }
  return true;
}

inline bool is_absolute_iri(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == iri.size()) return false;
  if (!std::isalpha(static_cast<unsigned char>(iri.front()))) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    const auto c = static_cast<unsigned char>(iri[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  for (char c : iri) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>' || c == '"' ||
        c == '{' || c == '}' || c == '\\' || c == '^' || c == '`' || c == '|') {
      return false;
    }
  }
  return true;
}

inline bool is_property_definition(const PhenomenonDefinition& def) {
  return def.urn.size() > kPropertyUrnPrefix.size() && def.urn.starts_with(kPropertyUrnPrefix) &&
         is_absolute_iri(def.urn);
}

// Last ':'-separated segment of the record URN, first letter upper-cased:
// "...:atmosphericConditions" -> "AtmosphericConditions".
inline std::string record_local_name(const PhenomenonDefinition& def) {
  const auto pos = def.urn.rfind(':');
  std::string name = pos == std::string::npos ? def.urn : def.urn.substr(pos + 1);
  if (!name.empty()) name.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(name.front())));
  return name;
}

enum class ViolationKind {
  NegativeSensorId,
  BadTimestamp,
  BadTimeType,
  EmptyRecord,
  BadRecordDefinition,
  BadFieldName,
  DuplicateField,
  BadDefinition,
  BadUom,
  NonFiniteValue,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

inline std::vector<Violation> validate(const SensorReading& reading) {
  std::vector<Violation> out;
  auto add = [&out](ViolationKind k, std::string msg) { out.push_back({k, std::move(msg)}); };

  if (reading.sensor_id < 0) add(ViolationKind::NegativeSensorId, "negative sensor id");
  if (!is_iso8601_datetime(reading.time.timestamp)) {
    add(ViolationKind::BadTimestamp, "bad timestamp '" + reading.time.timestamp + "'");
  }
  if (reading.time.type_iri != kTimeInstantType) {
    add(ViolationKind::BadTimeType, "time type must be " + std::string(kTimeInstantType));
  }
  const auto& record = reading.record;
  if (!is_property_definition(record.definition) ||
      !is_field_name(record_local_name(record.definition))) {
    add(ViolationKind::BadRecordDefinition, "bad record definition '" + record.definition.urn + "'");
  }
  if (record.fields.empty()) add(ViolationKind::EmptyRecord, "empty record");

  std::set<std::string> seen;
  for (const auto& f : record.fields) {
    if (!is_field_name(f.name)) add(ViolationKind::BadFieldName, "bad field name '" + f.name + "'");
    if (!seen.insert(f.name).second) {
      add(ViolationKind::DuplicateField, "duplicate field '" + f.name + "'");
    }
    if (!is_property_definition(f.definition)) {
      add(ViolationKind::BadDefinition, "bad definition '" + f.definition.urn + "' on " + f.name);
    }
    if (f.uom.code.empty() || f.uom.code.size() > kMaxUomCodeLength || !is_absolute_iri(f.uom.iri)) {
      add(ViolationKind::BadUom, "bad uom on " + f.name);
    }
    if (!std::isfinite(f.value)) add(ViolationKind::NonFiniteValue, "non-finite value on " + f.name);
  }
  return out;
}

inline void require_valid(const SensorReading& reading) {
  const auto violations = validate(reading);
  if (violations.empty()) return;
  std::string msg = "invalid reading:";
  for (const auto& v : violations) msg += " " + v.message + ";";
  msg.pop_back();
  throw ValidationError(msg);
}

}  // namespace semsense
