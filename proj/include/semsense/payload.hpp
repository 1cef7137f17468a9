#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "semsense/errors.hpp"

namespace semsense {

enum class Encoding { SSW, ES3N };

inline std::string_view to_string(Encoding e) { return e == Encoding::SSW ? "ssw" : "es3n"; }

inline std::optional<Encoding> parse_encoding(std::string_view s) {
  if (s == "ssw" || s == "SSW") return Encoding::SSW;
  if (s == "es3n" || s == "ES3N") return Encoding::ES3N;
  return std::nullopt;
}

// Which attribute names carry RDFa annotations in SSW documents.
enum class RdfaSpelling {
  Prefixed,  // rdfa:about / rdfa:instanceof / rdfa:property
  W3C,       // about / typeof / property
};

struct EncodeOptions {
  bool include_timestamp = true;
  // ES3N only: XML declaration plus an owl:Ontology import header.
  bool es3n_header = false;
  RdfaSpelling rdfa = RdfaSpelling::Prefixed;
};

// Serialized UTF-8 XML document. The byte count is always bytes.size().
struct EncodedPayload {
  std::string bytes;
  Encoding encoding = Encoding::SSW;

  [[nodiscard]] std::size_t size_bytes() const noexcept { return bytes.size(); }
};

inline std::size_t measure(const EncodedPayload& payload) noexcept { return payload.size_bytes(); }

inline void require_encoding(const EncodedPayload& payload, Encoding expected) {
  if (payload.encoding != expected) {
    throw ValidationError("payload is " + std::string(to_string(payload.encoding)) + ", expected " +
                          std::string(to_string(expected)));
  }
}

}  // namespace semsense
