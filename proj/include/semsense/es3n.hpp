#pragma once

// ES3N form: every quantity and the record itself are written out as explicit
// ontology individuals in RDF/XML.

#include <set>
#include <string>
#include <string_view>

#include "semsense/errors.hpp"
#include "semsense/number_format.hpp"
#include "semsense/observation.hpp"
#include "semsense/payload.hpp"
#include "semsense/triples.hpp"
#include "semsense/xml.hpp"

namespace semsense {

inline constexpr std::string_view kXmlDeclaration = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
inline constexpr std::string_view kSensorObservationOntology =
    "http://knoesis.wright.edu/ssw/ont/sensor-observation.owl";

namespace es3n_detail {

inline xml::Element typed_property(std::string name, std::string lexical, std::string_view datatype_local) {
  auto el = xml::make_element(std::move(name), std::move(lexical));
  el.attr("rdf:datatype", vocab::iri(vocab::kXsd, datatype_local));
  return el;
}

inline xml::Element quantity_individual(const QuantityObservation& q) {
  auto el = xml::make_element("swe-om:Quantity");
  el.attr("rdf:ID", "Quantity_" + q.name);
  el.add(xml::make_element("swe-om:hasUomIdentifier")).attr("rdf:resource", q.uom.iri);
  el.add(typed_property("swe-om:hasDoubleValue", format_double(q.value), "double"));
  el.add(xml::make_element("swe-om:hasName", q.name)).attr("xml:lang", "en");
  el.add(typed_property("swe:hasDefinition", q.definition.urn, "anyURI"));
  return el;
}

inline xml::Element record_individual(const DataRecord& record) {
  auto el = xml::make_element("swe-om:DataRecord");
  el.attr("rdf:ID", "DataRecord_" + record_local_name(record.definition));
  for (const auto& q : record.fields) {
    el.add(xml::make_element("swe-om:hasField")).attr("rdf:resource", "#Quantity_" + q.name);
  }
  el.add(typed_property("swe:hasDefinition", record.definition.urn, "anyURI"));
  return el;
}

inline xml::Element time_individual(const SensorReading& reading) {
  auto el = xml::make_element(reading.time.type_iri);
  el.attr("rdf:ID", "time_" + std::to_string(reading.sensor_id));
  el.add(xml::make_element("xs:date-time", reading.time.timestamp));
  return el;
}

struct Extraction {
  TripleSet triples;
  std::set<std::string> ids;
  std::vector<std::pair<std::string, const xml::Element*>> field_refs;
};

inline std::string node_subject(const xml::Element& el, Extraction& ex) {
  if (const auto* id = el.attribute("rdf:ID")) {
    if (!ex.ids.insert(*id).second) {
      throw ValidationError("duplicate rdf:ID '" + *id + "' at line " + std::to_string(el.line));
    }
    return "#" + *id;
  }
  return *el.attribute("rdf:about");
}

inline bool is_node(const xml::Element& el) {
  return el.attribute("rdf:ID") != nullptr || el.attribute("rdf:about") != nullptr;
}

inline std::string node_element(const xml::Element& el, Extraction& ex);

inline void property_element(const std::string& subject, const xml::Element& prop, Extraction& ex) {
  auto& out = ex.triples;
  if (const auto* res = prop.attribute("rdf:resource")) {
    out.add(subject, prop.name, Iri{*res});
    if (prop.name == "swe-om:hasField") ex.field_refs.emplace_back(*res, &prop);
  } else if (!prop.children.empty()) {
    const auto& nested = prop.children.front();
    if (!is_node(nested)) {
      throw ValidationError("blank nodes are not supported (<" + nested.name + "> at line " +
                            std::to_string(nested.line) + ")");
    }
    out.add(subject, prop.name, Iri{node_element(nested, ex)});
  } else if (const auto* dt = prop.attribute("rdf:datatype")) {
    out.add(subject, prop.name, TypedLiteral{xml::trim(prop.text), *dt});
  } else if (const auto* lang = prop.attribute("xml:lang")) {
    out.add(subject, prop.name, PlainLiteral{xml::trim(prop.text), *lang});
  } else {
    out.add(subject, prop.name, PlainLiteral{xml::trim(prop.text), std::nullopt});
  }
}

inline std::string node_element(const xml::Element& el, Extraction& ex) {
  auto subject = node_subject(el, ex);
  if (el.name != "rdf:Description") ex.triples.add(subject, "rdf:type", Iri{el.name});
  for (const auto& prop : el.children) property_element(subject, prop, ex);
  return subject;
}

inline void find_nodes(const xml::Element& el, Extraction& ex) {
  if (is_node(el)) {
    node_element(el, ex);
    return;
  }
  for (const auto& child : el.children) find_nodes(child, ex);
}

}  // namespace es3n_detail

inline EncodedPayload encode_es3n(const SensorReading& reading, const EncodeOptions& options = {}) {
  require_valid(reading);
  auto root = xml::make_element("rdf:RDF");
  if (options.es3n_header) {
    auto& ontology = root.add(xml::make_element("owl:Ontology"));
    ontology.attr("rdf:about", "#es3n");
    ontology.add(xml::make_element("owl:imports")).attr("rdf:resource", std::string(kSensorObservationOntology));
  }
  if (options.include_timestamp) root.add(es3n_detail::time_individual(reading));
  for (const auto& q : reading.record.fields) root.add(es3n_detail::quantity_individual(q));
  root.add(es3n_detail::record_individual(reading.record));
  return {xml::serialize(root, options.es3n_header ? kXmlDeclaration : std::string_view{}),
          Encoding::ES3N};
}

inline TripleSet extract_es3n_document(std::string_view document) {
  const auto root = xml::parse(document);
  es3n_detail::Extraction ex;
  es3n_detail::find_nodes(root, ex);
  for (const auto& [ref, el] : ex.field_refs) {
    if (!ref.starts_with('#') || !ex.ids.contains(ref.substr(1))) {
      throw DanglingError("hasField references undefined individual '" + ref + "' at line " +
                          std::to_string(el->line) + ", column " + std::to_string(el->column));
    }
  }
  return canonicalize(ex.triples);
}

inline TripleSet extract_es3n(const EncodedPayload& payload) {
  require_encoding(payload, Encoding::ES3N);
  return extract_es3n_document(payload.bytes);
}

}  // namespace semsense
