#pragma once

#include <string_view>

#include "semsense/es3n.hpp"
#include "semsense/payload.hpp"
#include "semsense/ssw.hpp"
#include "semsense/xml.hpp"

namespace semsense {

inline EncodedPayload encode(const SensorReading& reading, Encoding encoding, const EncodeOptions& options = {}) {
  return encoding == Encoding::SSW ? encode_ssw(reading, options) : encode_es3n(reading, options);
}

inline TripleSet extract(const EncodedPayload& payload) {
  return payload.encoding == Encoding::SSW ? extract_ssw(payload) : extract_es3n(payload);
}

// An rdf:RDF root means the ontology form; anything else is read as SSW.
inline Encoding detect_encoding(std::string_view document) {
  return xml::parse(document).name == "rdf:RDF" ? Encoding::ES3N : Encoding::SSW;
}

inline SemanticProjection project_reading(const SensorReading& reading) {
  SemanticProjection out;
  for (const auto& q : reading.record.fields) {
    out.insert({q.name, q.definition.urn, q.uom.iri, format_double(q.value)});
  }
  return out;
}

}  // namespace semsense
