#pragma once

// SSW form: an O&M swe:DataRecord whose elements carry RDFa annotations, so
// triples can be lifted out of the sensor document itself.

#include <optional>
#include <string>
#include <string_view>

#include "semsense/errors.hpp"
#include "semsense/number_format.hpp"
#include "semsense/observation.hpp"
#include "semsense/payload.hpp"
#include "semsense/triples.hpp"
#include "semsense/xml.hpp"

namespace semsense {

namespace ssw_detail {

struct RdfaNames {
  std::string_view about;
  std::string_view type;
  std::string_view property;
};

inline RdfaNames rdfa_names(RdfaSpelling spelling) {
  if (spelling == RdfaSpelling::W3C) return {"about", "typeof", "property"};
  return {"rdfa:about", "rdfa:instanceof", "rdfa:property"};
}

inline std::string time_subject(std::int64_t sensor_id) { return "time_" + std::to_string(sensor_id); }

inline xml::Element time_component(const SensorReading& reading, RdfaSpelling spelling) {
  const auto names = rdfa_names(spelling);
  auto component = xml::make_element("swe:component");
  component.attr(std::string(names.about), time_subject(reading.sensor_id))
      .attr(std::string(names.type), reading.time.type_iri);
  component.add(xml::make_element("swe:Time", reading.time.timestamp))
      .attr(std::string(names.property), "xs:date-time");
  return component;
}

inline xml::Element field_element(const QuantityObservation& q, RdfaSpelling spelling) {
  const auto names = rdfa_names(spelling);
  auto field = xml::make_element("swe:field");
  field.attr(std::string(names.type), "swe-om:Quantity")
      .attr(std::string(names.about), "#" + q.name)
      .attr("name", q.name);
  auto& quantity = field.add(xml::make_element("swe:Quantity"));
  quantity.attr("definition", q.definition.urn);
  quantity.add(xml::make_element("swe:uom"))
      .attr("code", q.uom.code)
      .attr(std::string(names.property), "swe-om:hasUomIdentifier")
      .attr("rdf:about", q.uom.iri);
  quantity.add(xml::make_element("swe:value", format_double(q.value)))
      .attr(std::string(names.property), "swe-om:hasDoubleValue")
      .attr("rdf:datatype", "xsd:double");
  return field;
}

inline const std::string* first_attribute(const xml::Element& el, std::initializer_list<std::string_view> keys) {
  for (auto k : keys) {
    if (const auto* v = el.attribute(k)) return v;
  }
  return nullptr;
}

inline std::string where(const xml::Element& el) {
  return "<" + el.name + "> at line " + std::to_string(el.line) + ", column " + std::to_string(el.column);
}

inline void extract_into(const xml::Element& el, const std::optional<std::string>& inherited, TripleSet& out) {
  const auto* property = first_attribute(el, {"rdfa:property", "property"});
  const auto* about = first_attribute(el, {"rdfa:about", "about"});
  const auto* rdf_about = el.attribute("rdf:about");

  std::optional<std::string> subject = inherited;
  bool new_subject = false;
  if (about != nullptr) {
    subject = *about;
    new_subject = true;
  } else if (rdf_about != nullptr && property == nullptr) {
    subject = *rdf_about;
    new_subject = true;
  }

  if (const auto* type = first_attribute(el, {"rdfa:instanceof", "typeof"})) {
    if (!subject) throw DanglingError("type annotation without a subject on " + where(el));
    out.add(*subject, "rdf:type", Iri{*type});
  }

  if (property != nullptr) {
    if (!subject) throw DanglingError("property '" + *property + "' without a subject on " + where(el));
    if (const auto* object = first_attribute(el, {"rdf:about", "rdfa:resource", "resource"});
        object != nullptr) {
      out.add(*subject, *property, Iri{*object});
    } else if (const auto* dt = first_attribute(el, {"rdf:datatype", "rdfa:datatype", "datatype"})) {
      out.add(*subject, *property, TypedLiteral{xml::trim(el.text), *dt});
    } else if (const auto* lang = el.attribute("xml:lang")) {
      out.add(*subject, *property, PlainLiteral{xml::trim(el.text), *lang});
    } else {
      out.add(*subject, *property, PlainLiteral{xml::trim(el.text), std::nullopt});
    }
  }

  // O&M attributes inside an annotated quantity map onto the same properties
  // the ontology form states explicitly.
  if (new_subject) {
    if (const auto* name = el.attribute("name")) {
      out.add(*subject, "swe-om:hasName", PlainLiteral{*name, std::nullopt});
    }
  }
  if (el.name == "swe:Quantity" && subject) {
    if (const auto* def = el.attribute("definition")) {
      out.add(*subject, "swe:hasDefinition", TypedLiteral{*def, "xsd:anyURI"});
    }
  }

  for (const auto& child : el.children) extract_into(child, subject, out);
}

}  // namespace ssw_detail

// Standalone time annotation fragment (root swe:component).
inline EncodedPayload encode_ssw_timestamp(const SensorReading& reading,
                                           RdfaSpelling spelling = RdfaSpelling::Prefixed) {
  if (!is_iso8601_datetime(reading.time.timestamp) || reading.sensor_id < 0) {
    throw ValidationError("invalid time instant '" + reading.time.timestamp + "'");
  }
  return {xml::serialize(ssw_detail::time_component(reading, spelling)), Encoding::SSW};
}

inline EncodedPayload encode_ssw(const SensorReading& reading, const EncodeOptions& options = {}) {
  require_valid(reading);
  auto root = xml::make_element("swe:DataRecord");
  root.attr("definition", reading.record.definition.urn);
  if (options.include_timestamp) root.add(ssw_detail::time_component(reading, options.rdfa));
  for (const auto& q : reading.record.fields) root.add(ssw_detail::field_element(q, options.rdfa));
  return {xml::serialize(root), Encoding::SSW};
}

inline TripleSet extract_ssw_document(std::string_view document) {
  const auto root = xml::parse(document);
  TripleSet raw;
  ssw_detail::extract_into(root, std::nullopt, raw);
  return canonicalize(raw);
}

inline TripleSet extract_ssw(const EncodedPayload& payload) {
  require_encoding(payload, Encoding::SSW);
  return extract_ssw_document(payload.bytes);
}

}  // namespace semsense
