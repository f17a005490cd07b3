#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace esgkg::rdf {

// Minimal RDF term model. Literals with an explicit xsd:string datatype are
// normalized to a plain literal so term equality matches RDF semantics.
struct Term {
  enum class Kind { Iri, Blank, Literal };

  Kind kind = Kind::Iri;
  std::string value;     // IRI, blank label (without "_:"), or lexical form
  std::string datatype;  // absolute datatype IRI; empty for plain literals
  std::string lang;      // language tag; implies rdf:langString

  auto operator<=>(const Term&) const = default;

  static Term iri(std::string v);
  static Term blank(std::string label);
  static Term literal(std::string lexical);
  static Term typed_literal(std::string lexical, std::string datatype_iri);
  static Term lang_literal(std::string lexical, std::string language);
  static Term integer(long long v);
  static Term boolean(bool v);

  bool is_iri() const { return kind == Kind::Iri; }
  bool is_blank() const { return kind == Kind::Blank; }
  bool is_literal() const { return kind == Kind::Literal; }
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

class Graph {
 public:
  void add(Triple t) { triples_.insert(std::move(t)); }
  void add(Term s, Term p, Term o) {
    triples_.insert(Triple{std::move(s), std::move(p), std::move(o)});
  }

  const std::set<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool contains(const Triple& t) const { return triples_.count(t) > 0; }

  bool operator==(const Graph&) const = default;

 private:
  std::set<Triple> triples_;
};

// prefix -> namespace IRI
using PrefixMap = std::map<std::string, std::string>;

// Canonical serializations: prefixes, subjects, predicates and objects are
// emitted in sorted order so identical graphs yield identical bytes.
std::string to_turtle(const Graph& g, const PrefixMap& prefixes);
std::string to_jsonld(const Graph& g, const PrefixMap& prefixes);

Graph from_turtle(std::string_view text);   // throws Error(Parse)
Graph from_jsonld(std::string_view text);   // throws Error(Parse)

// True when the graphs are equal up to blank-node relabeling.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace esgkg::rdf
