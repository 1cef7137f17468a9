#pragma once

// Seeded generators for property-style tests.

#include <array>
#include <bit>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semsense/observation.hpp"

namespace semsense::testkit {

struct UnitEntry {
  const char* code;
  const char* local;
};

inline constexpr std::array<UnitEntry, 10> kUnitCatalog{{
    {"Cel", "degreeC"},
    {"m/s", "meter_persecond"},
    {"hPa", "hectopascal"},
    {"%", "percent"},
    {"mm", "millimeter"},
    {"lx", "lux"},
    {"W/m2", "watt_per_meter2"},
    {"K", "kelvin"},
    {"deg", "degree"},
    {"ppm", "partsPerMillion"},
}};

inline std::string random_name(std::mt19937_64& rng) {
  static constexpr char kFirst[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_";
  static constexpr char kRest[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-";
  const auto len = 1 + rng() % 24;
  std::string s(1, kFirst[rng() % (sizeof(kFirst) - 1)]);
  while (s.size() < len) s += kRest[rng() % (sizeof(kRest) - 1)];
  return s;
}

// Finite doubles across plain and scientific ranges, integers included.
inline double random_value(std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0: return static_cast<double>(static_cast<std::int64_t>(rng() % 2001) - 1000);
    case 1: return static_cast<double>(static_cast<std::int64_t>(rng() % 200001) - 100000) / 100.0;
    case 2: {
      const double mant = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const int exp = static_cast<int>(rng() % 60) - 30;
      return (rng() % 2 ? -1.0 : 1.0) * mant * std::pow(10.0, exp);
    }
    case 3: return std::bit_cast<double>((rng() & 0x7FEFFFFFFFFFFFFFULL) | (rng() & 0x8000000000000000ULL));
    default: return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 100.0;
  }
}

inline std::string random_timestamp(std::mt19937_64& rng) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", static_cast<int>(1970 + rng() % 100),
                static_cast<int>(1 + rng() % 12), static_cast<int>(1 + rng() % 28), static_cast<int>(rng() % 24),
                static_cast<int>(rng() % 60), static_cast<int>(rng() % 60));
  std::string ts = buf;
  if (rng() % 3 == 0) ts += "Z";
  return ts;
}

// Valid reading with between min_fields and max_fields quantities.
inline SensorReading random_reading(std::mt19937_64& rng, std::size_t min_fields = 1, std::size_t max_fields = 10) {
  SensorReading r;
  r.sensor_id = static_cast<std::int64_t>(rng() % 1'000'000);
  r.time.timestamp = random_timestamp(rng);
  r.record.definition = ogc_property(random_name(rng));
  const auto count = min_fields + rng() % (max_fields - min_fields + 1);
  std::set<std::string> used;
  while (r.record.fields.size() < count) {
    auto name = random_name(rng);
    if (!used.insert(name).second) continue;
    const auto& unit = kUnitCatalog[rng() % kUnitCatalog.size()];
    r.record.fields.push_back({name, ogc_property(name),
                               UomIdentifier{unit.code, std::string(units::kOntology) + unit.local},
                               random_value(rng)});
  }
  return r;
}

inline double random_finite(std::mt19937_64& rng) { return random_value(rng); }

}  // namespace semsense::testkit
