#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>

#include "generators.hpp"
#include "semsense/codec.hpp"
#include "semsense/number_format.hpp"
#include "semsense/observation.hpp"

using namespace semsense;

namespace {

bool has_violation(const std::vector<Violation>& vs, ViolationKind kind) {
  for (const auto& v : vs) {
    if (v.kind == kind) return true;
  }
  return false;
}

SensorReading reading_of(DataRecord record) { return {3, TimeInstant{"2010-03-08T05:00:00"}, std::move(record)}; }

}  // namespace

TEST(AtmosphericRecord, ReferenceValues) {
  const auto r = make_atmospheric_record(35.1, 6.5);
  EXPECT_EQ(r.definition.urn, "urn:ogc:def:property:OGC:atmosphericConditions");
  ASSERT_EQ(r.fields.size(), 2u);
  EXPECT_EQ(r.fields[0].name, "AirTemperature");
  EXPECT_EQ(r.fields[0].definition.urn, "urn:ogc:def:property:OGC:AirTemperature");
  EXPECT_EQ(r.fields[0].uom.code, "Cel");
  EXPECT_EQ(r.fields[0].uom.iri, "http://sweet.jpl.nasa.gov/ontology/units.owl#degreeC");
  EXPECT_EQ(r.fields[0].value, 35.1);
  EXPECT_EQ(r.fields[1].name, "WinSpeed");
  EXPECT_EQ(r.fields[1].uom.code, "m/s");
  EXPECT_EQ(r.fields[1].uom.iri, "http://sweet.jpl.nasa.gov/ontology/units.owl#meter_persecond");
  EXPECT_EQ(r.fields[1].value, 6.5);
}

TEST(AtmosphericRecord, ZeroValuesKeepStructure) {
  const auto a = make_atmospheric_record(0.0, 0.0);
  const auto b = make_atmospheric_record(35.1, 6.5);
  ASSERT_EQ(a.fields.size(), b.fields.size());
  for (std::size_t i = 0; i < a.fields.size(); ++i) {
    EXPECT_EQ(a.fields[i].name, b.fields[i].name);
    EXPECT_EQ(a.fields[i].uom, b.fields[i].uom);
    EXPECT_EQ(a.fields[i].value, 0.0);
  }
}

TEST(AtmosphericRecord, NegativeAndFractionalLexicalForms) {
  const auto r = make_atmospheric_record(-40.0, 12.25);
  EXPECT_EQ(format_double(r.fields[0].value), "-40");
  EXPECT_EQ(format_double(r.fields[1].value), "12.25");
  // Round-trip through the C library parser.
  EXPECT_EQ(std::strtod("-40", nullptr), r.fields[0].value);
  EXPECT_EQ(std::strtod("12.25", nullptr), r.fields[1].value);
}

TEST(AtmosphericRecord, RejectsNonFinite) {
  EXPECT_THROW(make_atmospheric_record(std::nan(""), 1.0), ValidationError);
  EXPECT_THROW(make_atmospheric_record(1.0, std::numeric_limits<double>::infinity()), ValidationError);
}

TEST(NumberFormat, FixedAndScientificRanges) {
  EXPECT_EQ(format_double(35.1), "35.1");
  EXPECT_EQ(format_double(6.5), "6.5");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(0.0001), "0.0001");
  EXPECT_EQ(format_double(0.00001), "1e-05");
  EXPECT_EQ(format_double(1e14), "100000000000000");
  EXPECT_EQ(format_double(1e15), "1e+15");
  EXPECT_EQ(format_double(0.1 + 0.2), "0.30000000000000004");
  EXPECT_THROW(format_double(std::numeric_limits<double>::quiet_NaN()), ValidationError);
}

// Oracle: the shortest %.Ng precision that round-trips gives the minimum
// number of significant digits; ours must use exactly that many.
TEST(NumberFormat, ShortestRoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const double v = testkit::random_finite(rng);
    const auto text = format_double(v);
    ASSERT_EQ(std::strtod(text.c_str(), nullptr), v) << text;

    int min_digits = 0;
    for (int p = 1; p <= 17; ++p) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.*e", p - 1, v);
      if (std::strtod(buf, nullptr) == v) {
        min_digits = p;
        break;
      }
    }
    const auto mantissa = text.substr(0, text.find('e'));
    std::string digits;
    for (char c : mantissa) {
      if (c >= '0' && c <= '9') digits += c;
    }
    const auto first = digits.find_first_not_of('0');
    const auto last = digits.find_last_not_of('0');
    const int sig = first == std::string::npos ? 1 : static_cast<int>(last - first + 1);
    // Trailing zeros of an integer in fixed notation are not significant.
    EXPECT_LE(sig, min_digits) << text;

    const double mag = std::fabs(v);
    const bool plain = mag == 0.0 || (mag >= 1e-4 && mag < 1e15);
    EXPECT_EQ(text.find('e') == std::string::npos, plain) << text;
  }
}

TEST(Timestamp, Iso8601Checks) {
  EXPECT_TRUE(is_iso8601_datetime("2010-03-08T05:00:00"));
  EXPECT_TRUE(is_iso8601_datetime("2010-03-08T05:00:00Z"));
  EXPECT_TRUE(is_iso8601_datetime("2010-03-08T05:00:00.250+03:30"));
  EXPECT_TRUE(is_iso8601_datetime("2012-02-29T00:00:00"));
  EXPECT_FALSE(is_iso8601_datetime("2011-02-29T00:00:00"));
  EXPECT_FALSE(is_iso8601_datetime("2010-13-99"));
  EXPECT_FALSE(is_iso8601_datetime("2010-0308T05:00:00"));
  EXPECT_FALSE(is_iso8601_datetime("2010-03-08 05:00:00"));
  EXPECT_FALSE(is_iso8601_datetime("2010-03-08T24:00:00"));
  EXPECT_FALSE(is_iso8601_datetime("2010-03-08T05:00:00+3"));
}

TEST(Validate, ReferenceReadingIsValid) { EXPECT_TRUE(validate(reference_reading()).empty()); }

TEST(Validate, DuplicateField) {
  auto record = make_atmospheric_record(35.1, 6.5);
  record.fields[1] = record.fields[0];
  const auto vs = validate(reading_of(record));
  ASSERT_TRUE(has_violation(vs, ViolationKind::DuplicateField));
  EXPECT_NE(vs.front().message.find("duplicate field"), std::string::npos);
}

TEST(Validate, BadTimestamp) {
  auto r = reference_reading();
  r.time.timestamp = "2010-13-99";
  const auto vs = validate(r);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::BadTimestamp);
  EXPECT_NE(vs[0].message.find("bad timestamp"), std::string::npos);
}

TEST(Validate, ReportsEveryViolation) {
  SensorReading r;
  r.sensor_id = -1;
  r.time.timestamp = "yesterday";
  r.record.definition.urn = "urn:x";
  const auto vs = validate(r);
  EXPECT_TRUE(has_violation(vs, ViolationKind::NegativeSensorId));
  EXPECT_TRUE(has_violation(vs, ViolationKind::BadTimestamp));
  EXPECT_TRUE(has_violation(vs, ViolationKind::BadRecordDefinition));
  EXPECT_TRUE(has_violation(vs, ViolationKind::EmptyRecord));
}

TEST(Validate, FieldLevelInvariants) {
  auto r = reference_reading();
  r.record.fields[0].name = "Air Temperature";
  r.record.fields[0].definition.urn = "urn:ogc:def:phenomenon:OGC:AirTemperature";
  r.record.fields[1].uom.iri = "degreeC";
  r.record.fields[1].value = std::numeric_limits<double>::infinity();
  const auto vs = validate(r);
  EXPECT_TRUE(has_violation(vs, ViolationKind::BadFieldName));
  EXPECT_TRUE(has_violation(vs, ViolationKind::BadDefinition));
  EXPECT_TRUE(has_violation(vs, ViolationKind::BadUom));
  EXPECT_TRUE(has_violation(vs, ViolationKind::NonFiniteValue));
}

TEST(Validate, UomCodeLengthBound) {
  auto r = reference_reading();
  r.record.fields[0].uom.code = std::string(kMaxUomCodeLength, 'x');
  EXPECT_TRUE(validate(r).empty());
  r.record.fields[0].uom.code += 'x';
  EXPECT_TRUE(has_violation(validate(r), ViolationKind::BadUom));
}

TEST(Validate, RequireValidThrowsWithAllMessages) {
  auto r = reference_reading();
  r.time.timestamp = "2010-13-99";
  r.record.fields[1].name = r.record.fields[0].name;
  try {
    require_valid(r);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("bad timestamp"), std::string::npos);
    EXPECT_NE(what.find("duplicate field"), std::string::npos);
  }
}

TEST(AtmosphericRecord, ValidForAllFiniteInputs) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto r = reading_of(make_atmospheric_record(testkit::random_finite(rng), testkit::random_finite(rng)));
    ASSERT_TRUE(validate(r).empty());
  }
}

TEST(AtmosphericRecord, DeterministicSerialization) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const double t = testkit::random_finite(rng), w = testkit::random_finite(rng);
    const auto a = reading_of(make_atmospheric_record(t, w));
    const auto b = reading_of(make_atmospheric_record(t, w));
    EXPECT_EQ(encode_ssw(a).bytes, encode_ssw(b).bytes);
    EXPECT_EQ(encode_es3n(a).bytes, encode_es3n(b).bytes);
  }
}
