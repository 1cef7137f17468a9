#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "semsense/errors.hpp"

namespace semsense {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kSwe = "http://www.opengis.net/swe/1.0/";
inline constexpr std::string_view kSweOm = "http://knoesis.wright.edu/ssw/ont/sensor-observation.owl#";
inline constexpr std::string_view kTime = "http://www.w3.org/2006/time#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kUnits = "http://sweet.jpl.nasa.gov/ontology/units.owl#";

inline std::string iri(std::string_view ns, std::string_view local) {
  return std::string(ns) + std::string(local);
}
}  // namespace vocab

using NamespaceTable = std::map<std::string, std::string, std::less<>>;

// Prefixes the listings use without declaring them.
inline const NamespaceTable& standard_namespaces() {
  static const NamespaceTable table{
      {"rdf", std::string(vocab::kRdf)},     {"xs", std::string(vocab::kXsd)},
      {"xsd", std::string(vocab::kXsd)},     {"swe", std::string(vocab::kSwe)},
      {"swe-om", std::string(vocab::kSweOm)}, {"time", std::string(vocab::kTime)},
      {"owl", std::string(vocab::kOwl)},     {"owl-units", std::string(vocab::kUnits)},
  };
  return table;
}

struct Iri {
  std::string value;
  friend auto operator<=>(const Iri&, const Iri&) = default;
};

struct TypedLiteral {
  std::string lexical;
  std::string datatype;
  friend auto operator<=>(const TypedLiteral&, const TypedLiteral&) = default;
};

struct PlainLiteral {
  std::string lexical;
  std::optional<std::string> lang;
  friend auto operator<=>(const PlainLiteral&, const PlainLiteral&) = default;
};

using Term = std::variant<Iri, TypedLiteral, PlainLiteral>;

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripleSet {
  std::vector<Triple> triples;
  NamespaceTable namespaces = standard_namespaces();

  void add(std::string subject, std::string predicate, Term object) {
    triples.push_back({Iri{std::move(subject)}, Iri{std::move(predicate)}, std::move(object)});
  }
  [[nodiscard]] std::size_t size() const noexcept { return triples.size(); }
  [[nodiscard]] bool empty() const noexcept { return triples.empty(); }
};

namespace detail {

inline bool is_known_scheme(std::string_view scheme) {
  static constexpr std::string_view kSchemes[] = {"urn", "http", "https", "mailto", "file",
                                                  "tag", "data", "ftp",   "info"};
  return std::find(std::begin(kSchemes), std::end(kSchemes), scheme) != std::end(kSchemes);
}

inline void escape_literal(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
}

}  // namespace detail

// Expands "prefix:local" against the table. Relative references ("time_1",
// "#AirTemperature") and absolute IRIs pass through unchanged.
inline std::string expand_iri(std::string_view value, const NamespaceTable& ns) {
  const auto colon = value.find(':');
  if (colon == std::string_view::npos) return std::string(value);
  const auto prefix = value.substr(0, colon);
  if (prefix.find_first_of("/#?") != std::string_view::npos) return std::string(value);
  if (const auto it = ns.find(prefix); it != ns.end()) {
    return it->second + std::string(value.substr(colon + 1));
  }
  if (value.substr(colon).starts_with("://") || detail::is_known_scheme(prefix)) {
    return std::string(value);
  }
  throw PrefixError(std::string(prefix));
}

inline std::string to_ntriples(const Term& term) {
  std::string out;
  std::visit(
      [&out](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Iri>) {
          out += '<' + t.value + '>';
        } else if constexpr (std::is_same_v<T, TypedLiteral>) {
          out += '"';
          detail::escape_literal(out, t.lexical);
          out += "\"^^<" + t.datatype + '>';
        } else {
          out += '"';
          detail::escape_literal(out, t.lexical);
          out += '"';
          if (t.lang) out += '@' + *t.lang;
        }
      },
      term);
  return out;
}

inline std::string to_ntriples(const Triple& t) {
  return to_ntriples(Term{t.subject}) + ' ' + to_ntriples(Term{t.predicate}) + ' ' +
         to_ntriples(t.object) + " .";
}

// One line per triple, in the set's current order.
inline std::string to_ntriples(const TripleSet& ts) {
  std::string out;
  for (const auto& t : ts.triples) out += to_ntriples(t) + '\n';
  return out;
}

// Expands every prefixed name, drops duplicates and orders triples by the
// N-Triples text of (subject, predicate, object).
inline TripleSet canonicalize(const TripleSet& ts) {
  const auto& ns = ts.namespaces;
  auto expand_term = [&ns](const Term& term) -> Term {
    if (const auto* i = std::get_if<Iri>(&term)) return Iri{expand_iri(i->value, ns)};
    if (const auto* tl = std::get_if<TypedLiteral>(&term)) {
      return TypedLiteral{tl->lexical, expand_iri(tl->datatype, ns)};
    }
    return term;
  };

  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, Triple> ordered;
  for (const auto& t : ts.triples) {
    if (t.subject.value.empty() || t.predicate.value.empty()) {
      throw ValidationError("triple with empty subject or predicate IRI");
    }
    Triple expanded{Iri{expand_iri(t.subject.value, ns)}, Iri{expand_iri(t.predicate.value, ns)},
                    expand_term(t.object)};
    Key key{to_ntriples(Term{expanded.subject}), to_ntriples(Term{expanded.predicate}),
            to_ntriples(expanded.object)};
    ordered.emplace(std::move(key), std::move(expanded));
  }

  TripleSet out;
  out.namespaces = ts.namespaces;
  out.triples.reserve(ordered.size());
  for (auto& [key, triple] : ordered) out.triples.push_back(std::move(triple));
  return out;
}

struct ProjectionTuple {
  std::string field_name;
  std::string definition_urn;
  std::string uom_iri;
  std::string value_lexical;
  friend auto operator<=>(const ProjectionTuple&, const ProjectionTuple&) = default;
};

using SemanticProjection = std::set<ProjectionTuple>;

namespace detail {

inline std::string lexical_of(const Term& t) {
  if (const auto* i = std::get_if<Iri>(&t)) return i->value;
  if (const auto* tl = std::get_if<TypedLiteral>(&t)) return tl->lexical;
  return std::get<PlainLiteral>(t).lexical;
}

}  // namespace detail

// Codec-neutral view: one (name, definition, unit IRI, value text) tuple per
// subject carrying swe-om:hasDoubleValue.
inline SemanticProjection project(const TripleSet& input) {
  const TripleSet ts = canonicalize(input);
  const auto value_p = vocab::iri(vocab::kSweOm, "hasDoubleValue");
  const auto uom_p = vocab::iri(vocab::kSweOm, "hasUomIdentifier");
  const auto name_p = vocab::iri(vocab::kSweOm, "hasName");
  const auto def_p = vocab::iri(vocab::kSwe, "hasDefinition");

  std::map<std::string, std::map<std::string, std::vector<const Term*>>> by_subject;
  for (const auto& t : ts.triples) {
    by_subject[t.subject.value][t.predicate.value].push_back(&t.object);
  }

  SemanticProjection out;
  for (const auto& [subject, props] : by_subject) {
    const auto value_it = props.find(value_p);
    if (value_it == props.end()) continue;

    std::vector<std::string> problems;
    auto single = [&](const std::string& predicate, std::string_view label) -> const Term* {
      const auto it = props.find(predicate);
      if (it == props.end()) {
        problems.push_back("no " + std::string(label));
        return nullptr;
      }
      if (it->second.size() != 1) {
        problems.push_back("multiple " + std::string(label) + "s");
        return nullptr;
      }
      return it->second.front();
    };
    const Term* value = single(value_p, "value");
    const Term* uom = single(uom_p, "uom");
    const Term* def = single(def_p, "definition");
    const Term* name = single(name_p, "name");
    if (value != nullptr && std::holds_alternative<Iri>(*value)) problems.emplace_back("IRI-valued value");
    if (uom != nullptr && !std::holds_alternative<Iri>(*uom)) problems.emplace_back("literal uom");
    if (!problems.empty()) {
      std::string msg = "incomplete quantity <" + subject + ">:";
      for (const auto& p : problems) msg += " " + p + ";";
      msg.pop_back();
      throw IncompleteError(msg);
    }
    out.insert({detail::lexical_of(*name), detail::lexical_of(*def), std::get<Iri>(*uom).value,
                detail::lexical_of(*value)});
  }
  return out;
}

inline bool equivalent(const TripleSet& a, const TripleSet& b) { return project(a) == project(b); }

}  // namespace semsense
