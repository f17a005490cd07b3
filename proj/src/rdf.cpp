#include "esgkg/rdf.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "esgkg/errors.hpp"

namespace esgkg::rdf {

namespace {

constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

std::string xsd(std::string_view local) {
  return std::string(kXsd) + std::string(local);
}

}  // namespace

Term Term::iri(std::string v) {
  return Term{Kind::Iri, std::move(v), "", ""};
}

Term Term::blank(std::string label) {
  return Term{Kind::Blank, std::move(label), "", ""};
}

Term Term::literal(std::string lexical) {
  return Term{Kind::Literal, std::move(lexical), "", ""};
}

Term Term::typed_literal(std::string lexical, std::string datatype_iri) {
  if (datatype_iri == xsd("string")) datatype_iri.clear();
  return Term{Kind::Literal, std::move(lexical), std::move(datatype_iri), ""};
}

Term Term::lang_literal(std::string lexical, std::string language) {
  return Term{Kind::Literal, std::move(lexical), "", std::move(language)};
}

Term Term::integer(long long v) {
  return typed_literal(std::to_string(v), xsd("integer"));
}

Term Term::boolean(bool v) {
  return typed_literal(v ? "true" : "false", xsd("boolean"));
}

// ---------------------------------------------------------------------------
// Shared compaction helpers

namespace {

bool pn_local_safe(std::string_view local) {
  if (local.empty()) return false;
  char c0 = local[0];
  if (!((c0 >= 'A' && c0 <= 'Z') || (c0 >= 'a' && c0 <= 'z') || c0 == '_')) {
    return false;
  }
  for (char c : local) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

// Longest matching namespace wins; returns empty when no prefix applies.
std::string compact_iri(const std::string& iri, const PrefixMap& prefixes) {
  std::string best_prefix;
  std::string best_ns;
  for (const auto& [prefix, ns] : prefixes) {
    if (ns.size() > best_ns.size() && iri.size() > ns.size() &&
        iri.compare(0, ns.size(), ns) == 0 &&
        pn_local_safe(std::string_view(iri).substr(ns.size()))) {
      best_prefix = prefix;
      best_ns = ns;
    }
  }
  if (best_ns.empty()) return "";
  return best_prefix + ":" + iri.substr(best_ns.size());
}

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Turtle writer

namespace {

std::string turtle_term(const Term& t, const PrefixMap& prefixes) {
  switch (t.kind) {
    case Term::Kind::Iri: {
      std::string c = compact_iri(t.value, prefixes);
      if (!c.empty()) return c;
      return "<" + t.value + ">";
    }
    case Term::Kind::Blank:
      return "_:" + t.value;
    case Term::Kind::Literal: {
      std::string out = "\"" + escape_literal(t.value) + "\"";
      if (!t.lang.empty()) {
        out += "@" + t.lang;
      } else if (!t.datatype.empty()) {
        std::string c = compact_iri(t.datatype, prefixes);
        out += "^^" + (c.empty() ? "<" + t.datatype + ">" : c);
      }
      return out;
    }
  }
  return "";
}

}  // namespace

std::string to_turtle(const Graph& g, const PrefixMap& prefixes) {
  std::ostringstream out;
  for (const auto& [prefix, ns] : prefixes) {
    out << "@prefix " << prefix << ": <" << ns << "> .\n";
  }
  if (!prefixes.empty() && g.size() > 0) out << "\n";

  // subject -> predicate -> objects, all in Term order
  std::map<Term, std::map<Term, std::set<Term>>> by_subject;
  for (const Triple& t : g.triples()) {
    by_subject[t.subject][t.predicate].insert(t.object);
  }

  const Term rdf_type = Term::iri(std::string(kRdfType));
  bool first_subject = true;
  for (const auto& [subject, po] : by_subject) {
    if (!first_subject) out << "\n";
    first_subject = false;

    // rdf:type first, remaining predicates sorted
    std::vector<const std::pair<const Term, std::set<Term>>*> preds;
    preds.reserve(po.size());
    auto type_it = po.find(rdf_type);
    if (type_it != po.end()) preds.push_back(&*type_it);
    for (const auto& entry : po) {
      if (entry.first != rdf_type) preds.push_back(&entry);
    }

    out << turtle_term(subject, prefixes);
    bool first_pred = true;
    for (const auto* entry : preds) {
      out << (first_pred ? " " : " ;\n    ");
      first_pred = false;
      if (entry->first == rdf_type) {
        out << "a";
      } else {
        out << turtle_term(entry->first, prefixes);
      }
      bool first_obj = true;
      for (const Term& o : entry->second) {
        out << (first_obj ? " " : " , ");
        first_obj = false;
        out << turtle_term(o, prefixes);
      }
    }
    out << " .\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Turtle parser (covers the subset this library emits plus bare blank nodes)

namespace {

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : text_(text) {}

  Graph parse() {
    Graph g;
    skip_ws();
    while (!eof()) {
      if (peek() == '@') {
        parse_prefix();
      } else {
        parse_statement(g);
      }
      skip_ws();
    }
    return g;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  PrefixMap prefixes_;

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    size_t line = 1;
    for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') ++line;
    }
    raise(ErrorKind::Parse, "turtle parse error (line " + std::to_string(line) + "): " + msg);
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool name_char(char c) const {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-';
  }

  std::string read_name() {
    size_t start = pos_;
    while (!eof() && name_char(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_iriref() {
    expect('<');
    size_t start = pos_;
    while (!eof() && peek() != '>') ++pos_;
    if (eof()) fail("unterminated IRI");
    std::string iri(text_.substr(start, pos_ - start));
    ++pos_;
    return iri;
  }

  std::string read_string() {
    expect('"');
    std::string out;
    while (!eof()) {
      char c = peek();
      ++pos_;
      if (c == '"') return out;
      if (c == '\\') {
        if (eof()) fail("dangling escape");
        char e = peek();
        ++pos_;
        switch (e) {
          case '\\': out.push_back('\\'); break;
          case '"': out.push_back('"'); break;
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 't': out.push_back('\t'); break;
          case 'u': {
            if (pos_ + 4 > text_.size()) fail("bad \\u escape");
            unsigned code = 0;
            for (int i = 0; i < 4; ++i) {
              char h = text_[pos_++];
              code <<= 4;
              if (h >= '0' && h <= '9') code |= static_cast<unsigned>(h - '0');
              else if (h >= 'a' && h <= 'f') code |= static_cast<unsigned>(h - 'a' + 10);
              else if (h >= 'A' && h <= 'F') code |= static_cast<unsigned>(h - 'A' + 10);
              else fail("bad hex digit in \\u escape");
            }
            if (code < 0x80) {
              out.push_back(static_cast<char>(code));
            } else if (code < 0x800) {
              out.push_back(static_cast<char>(0xC0 | (code >> 6)));
              out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            } else {
              out.push_back(static_cast<char>(0xE0 | (code >> 12)));
              out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
              out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
            }
            break;
          }
          default: fail("unsupported escape");
        }
      } else {
        out.push_back(c);
      }
    }
    fail("unterminated string literal");
  }

  void parse_prefix() {
    // @prefix pfx: <iri> .
    if (text_.substr(pos_, 7) != "@prefix") fail("expected @prefix");
    pos_ += 7;
    skip_ws();
    std::string prefix = read_name();
    expect(':');
    skip_ws();
    std::string ns = read_iriref();
    skip_ws();
    expect('.');
    prefixes_[prefix] = ns;
  }

  Term expand_pname() {
    std::string prefix = read_name();
    expect(':');
    std::string local = read_name();
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("unknown prefix '" + prefix + "'");
    return Term::iri(it->second + local);
  }

  Term parse_subject() {
    char c = peek();
    if (c == '<') return Term::iri(read_iriref());
    if (c == '_') {
      ++pos_;
      expect(':');
      return Term::blank(read_name());
    }
    return expand_pname();
  }

  Term parse_predicate() {
    char c = peek();
    if (c == 'a') {
      // 'a' only when not the start of a longer name
      if (pos_ + 1 >= text_.size() || !name_char(text_[pos_ + 1])) {
        size_t save = pos_ + 1;
        if (save >= text_.size() || text_[save] != ':') {
          ++pos_;
          return Term::iri(std::string(kRdfType));
        }
      }
    }
    if (c == '<') return Term::iri(read_iriref());
    return expand_pname();
  }

  Term parse_object() {
    char c = peek();
    if (c == '<') return Term::iri(read_iriref());
    if (c == '_') {
      ++pos_;
      expect(':');
      return Term::blank(read_name());
    }
    if (c == '"') {
      std::string lexical = read_string();
      if (!eof() && peek() == '@') {
        ++pos_;
        std::string lang = read_name();
        return Term::lang_literal(lexical, lang);
      }
      if (pos_ + 1 < text_.size() && peek() == '^' && text_[pos_ + 1] == '^') {
        pos_ += 2;
        Term dt = (peek() == '<') ? Term::iri(read_iriref()) : expand_pname();
        return Term::typed_literal(lexical, dt.value);
      }
      return Term::literal(lexical);
    }
    return expand_pname();
  }

  void parse_statement(Graph& g) {
    Term subject = parse_subject();
    while (true) {
      skip_ws();
      Term predicate = parse_predicate();
      while (true) {
        skip_ws();
        Term object = parse_object();
        g.add(subject, predicate, object);
        skip_ws();
        if (!eof() && peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
      if (!eof() && peek() == ';') {
        ++pos_;
        skip_ws();
        // tolerate trailing ';' before '.'
        if (!eof() && peek() == '.') break;
        continue;
      }
      break;
    }
    skip_ws();
    expect('.');
  }
};

}  // namespace

Graph from_turtle(std::string_view text) {
  return TurtleParser(text).parse();
}

// ---------------------------------------------------------------------------
// JSON-LD writer

namespace {

using ordered_json = nlohmann::ordered_json;

std::string node_ref(const Term& t, const PrefixMap& prefixes) {
  if (t.is_blank()) return "_:" + t.value;
  std::string c = compact_iri(t.value, prefixes);
  return c.empty() ? t.value : c;
}

ordered_json jsonld_value(const Term& o, const PrefixMap& prefixes) {
  if (!o.is_literal()) {
    ordered_json v = ordered_json::object();
    v["@id"] = node_ref(o, prefixes);
    return v;
  }
  if (!o.lang.empty()) {
    ordered_json v = ordered_json::object();
    v["@language"] = o.lang;
    v["@value"] = o.value;
    return v;
  }
  if (o.datatype.empty()) {
    return ordered_json(o.value);
  }
  ordered_json v = ordered_json::object();
  std::string c = compact_iri(o.datatype, prefixes);
  v["@type"] = c.empty() ? o.datatype : c;
  if (o.datatype == xsd("integer")) {
    v["@value"] = std::stoll(o.value);
  } else if (o.datatype == xsd("boolean")) {
    v["@value"] = (o.value == "true");
  } else {
    v["@value"] = o.value;
  }
  return v;
}

}  // namespace

std::string to_jsonld(const Graph& g, const PrefixMap& prefixes) {
  ordered_json doc = ordered_json::object();
  ordered_json ctx = ordered_json::object();
  for (const auto& [prefix, ns] : prefixes) ctx[prefix] = ns;
  doc["@context"] = std::move(ctx);

  std::map<Term, std::map<Term, std::set<Term>>> by_subject;
  for (const Triple& t : g.triples()) {
    by_subject[t.subject][t.predicate].insert(t.object);
  }

  const Term rdf_type = Term::iri(std::string(kRdfType));
  ordered_json graph = ordered_json::array();
  for (const auto& [subject, po] : by_subject) {
    ordered_json node = ordered_json::object();
    node["@id"] = node_ref(subject, prefixes);

    auto type_it = po.find(rdf_type);
    if (type_it != po.end()) {
      ordered_json types = ordered_json::array();
      for (const Term& t : type_it->second) {
        if (!t.is_iri()) raise(ErrorKind::State, "rdf:type object must be an IRI");
        types.push_back(node_ref(t, prefixes));
      }
      node["@type"] = (types.size() == 1) ? types[0] : types;
    }

    for (const auto& [pred, objects] : po) {
      if (pred == rdf_type) continue;
      std::string key = compact_iri(pred.value, prefixes);
      if (key.empty()) key = pred.value;
      ordered_json values = ordered_json::array();
      for (const Term& o : objects) values.push_back(jsonld_value(o, prefixes));
      node[key] = (values.size() == 1) ? values[0] : values;
    }
    graph.push_back(std::move(node));
  }
  doc["@graph"] = std::move(graph);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// JSON-LD parser

namespace {

using json = nlohmann::json;

class JsonLdReader {
 public:
  Graph read(std::string_view text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      raise(ErrorKind::Parse, std::string("json-ld parse error: ") + e.what());
    }
    if (!doc.is_object()) raise(ErrorKind::Parse, "json-ld document must be an object");

    if (doc.contains("@context")) {
      const json& ctx = doc["@context"];
      if (!ctx.is_object()) raise(ErrorKind::Parse, "@context must be an object of prefixes");
      for (auto it = ctx.begin(); it != ctx.end(); ++it) {
        if (it.value().is_string()) prefixes_[it.key()] = it.value().get<std::string>();
      }
    }

    Graph g;
    if (doc.contains("@graph")) {
      const json& nodes = doc["@graph"];
      if (!nodes.is_array()) raise(ErrorKind::Parse, "@graph must be an array");
      for (const json& n : nodes) read_node(n, g);
    } else if (doc.contains("@id")) {
      read_node(doc, g);
    }
    return g;
  }

 private:
  PrefixMap prefixes_;

  Term expand_ref(const std::string& ref) const {
    if (ref.rfind("_:", 0) == 0) return Term::blank(ref.substr(2));
    return Term::iri(expand_iri(ref));
  }

  std::string expand_iri(const std::string& ref) const {
    size_t colon = ref.find(':');
    if (colon != std::string::npos) {
      std::string prefix = ref.substr(0, colon);
      auto it = prefixes_.find(prefix);
      if (it != prefixes_.end()) return it->second + ref.substr(colon + 1);
    }
    return ref;
  }

  Term literal_from(const json& v) const {
    if (v.is_string()) return Term::literal(v.get<std::string>());
    if (v.is_boolean()) return Term::boolean(v.get<bool>());
    if (v.is_number_integer()) return Term::integer(v.get<long long>());
    if (v.is_number()) {
      return Term::typed_literal(v.dump(), xsd("double"));
    }
    raise(ErrorKind::Parse, "unsupported json-ld literal: " + v.dump());
  }

  Term value_term(const json& v) const {
    if (v.is_object()) {
      if (v.contains("@id")) return expand_ref(v["@id"].get<std::string>());
      if (v.contains("@value")) {
        const json& raw = v["@value"];
        if (v.contains("@language")) {
          if (!raw.is_string()) raise(ErrorKind::Parse, "@language requires string @value");
          return Term::lang_literal(raw.get<std::string>(), v["@language"].get<std::string>());
        }
        std::string lexical;
        if (raw.is_string()) lexical = raw.get<std::string>();
        else if (raw.is_boolean()) lexical = raw.get<bool>() ? "true" : "false";
        else if (raw.is_number_integer()) lexical = std::to_string(raw.get<long long>());
        else lexical = raw.dump();
        if (v.contains("@type")) {
          return Term::typed_literal(lexical, expand_iri(v["@type"].get<std::string>()));
        }
        return Term::literal(lexical);
      }
      raise(ErrorKind::Parse, "value object needs @id or @value: " + v.dump());
    }
    return literal_from(v);
  }

  void read_node(const json& n, Graph& g) {
    if (!n.is_object() || !n.contains("@id")) {
      raise(ErrorKind::Parse, "graph node must be an object with @id");
    }
    Term subject = expand_ref(n["@id"].get<std::string>());
    const Term rdf_type = Term::iri(std::string(kRdfType));

    for (auto it = n.begin(); it != n.end(); ++it) {
      const std::string& key = it.key();
      if (key == "@id" || key == "@context") continue;
      if (key == "@type") {
        if (it.value().is_string()) {
          g.add(subject, rdf_type, expand_ref(it.value().get<std::string>()));
        } else if (it.value().is_array()) {
          for (const json& t : it.value()) {
            g.add(subject, rdf_type, expand_ref(t.get<std::string>()));
          }
        } else {
          raise(ErrorKind::Parse, "@type must be a string or array");
        }
        continue;
      }
      Term predicate = Term::iri(expand_iri(key));
      const json& v = it.value();
      if (v.is_array()) {
        for (const json& item : v) g.add(subject, predicate, value_term(item));
      } else {
        g.add(subject, predicate, value_term(v));
      }
    }
  }
};

}  // namespace

Graph from_jsonld(std::string_view text) {
  return JsonLdReader().read(text);
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

std::string term_key(const Term& t, const std::map<std::string, std::string>& sig) {
  if (t.is_blank()) {
    auto it = sig.find(t.value);
    return "_#" + (it == sig.end() ? std::string() : it->second);
  }
  return std::to_string(static_cast<int>(t.kind)) + "|" + t.value + "|" + t.datatype + "|" + t.lang;
}

std::map<std::string, std::string> refine_signatures(
    const std::vector<Triple>& blank_triples,
    const std::set<std::string>& labels) {
  std::map<std::string, std::string> sig;
  for (const std::string& l : labels) sig[l] = "";
  const size_t rounds = labels.size() + 1;
  for (size_t round = 0; round < rounds; ++round) {
    std::map<std::string, std::vector<std::string>> parts;
    for (const std::string& l : labels) parts[l];  // ensure entries for isolated labels
    for (const Triple& t : blank_triples) {
      if (t.subject.is_blank()) {
        parts[t.subject.value].push_back("S|" + t.predicate.value + "|" + term_key(t.object, sig));
      }
      if (t.object.is_blank()) {
        parts[t.object.value].push_back("O|" + t.predicate.value + "|" + term_key(t.subject, sig));
      }
    }
    std::map<std::string, std::string> next;
    for (auto& [label, entries] : parts) {
      std::sort(entries.begin(), entries.end());
      std::string joined;
      for (const std::string& e : entries) {
        joined += e;
        joined += '\x1f';
      }
      next[label] = std::to_string(std::hash<std::string>{}(joined));
    }
    sig = std::move(next);
  }
  return sig;
}

Triple map_triple(const Triple& t, const std::map<std::string, std::string>& mapping) {
  Triple out = t;
  if (out.subject.is_blank()) out.subject.value = mapping.at(out.subject.value);
  if (out.object.is_blank()) out.object.value = mapping.at(out.object.value);
  return out;
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;

  std::set<Triple> ground_a, ground_b;
  std::vector<Triple> blank_a, blank_b;
  std::set<std::string> labels_a, labels_b;
  for (const Triple& t : a.triples()) {
    if (t.subject.is_blank() || t.object.is_blank()) {
      blank_a.push_back(t);
      if (t.subject.is_blank()) labels_a.insert(t.subject.value);
      if (t.object.is_blank()) labels_a.insert(t.object.value);
    } else {
      ground_a.insert(t);
    }
  }
  for (const Triple& t : b.triples()) {
    if (t.subject.is_blank() || t.object.is_blank()) {
      blank_b.push_back(t);
      if (t.subject.is_blank()) labels_b.insert(t.subject.value);
      if (t.object.is_blank()) labels_b.insert(t.object.value);
    } else {
      ground_b.insert(t);
    }
  }
  if (ground_a != ground_b) return false;
  if (labels_a.size() != labels_b.size()) return false;
  if (labels_a.empty()) return true;

  auto sig_a = refine_signatures(blank_a, labels_a);
  auto sig_b = refine_signatures(blank_b, labels_b);

  // group candidates by signature
  std::map<std::string, std::vector<std::string>> groups_b;
  for (const auto& [label, s] : sig_b) groups_b[s].push_back(label);
  std::map<std::string, std::vector<std::string>> groups_a;
  for (const auto& [label, s] : sig_a) groups_a[s].push_back(label);
  if (groups_a.size() != groups_b.size()) return false;
  for (const auto& [s, members] : groups_a) {
    auto it = groups_b.find(s);
    if (it == groups_b.end() || it->second.size() != members.size()) return false;
  }

  std::set<Triple> target(blank_b.begin(), blank_b.end());
  std::vector<std::string> order(labels_a.begin(), labels_a.end());
  std::map<std::string, std::string> mapping;
  std::set<std::string> used;

  std::function<bool(size_t)> assign = [&](size_t idx) -> bool {
    if (idx == order.size()) {
      std::set<Triple> mapped;
      for (const Triple& t : blank_a) mapped.insert(map_triple(t, mapping));
      return mapped == target;
    }
    const std::string& label = order[idx];
    for (const std::string& candidate : groups_b[sig_a[label]]) {
      if (used.count(candidate)) continue;
      mapping[label] = candidate;
      used.insert(candidate);
      if (assign(idx + 1)) return true;
      used.erase(candidate);
      mapping.erase(label);
    }
    return false;
  };
  return assign(0);
}

}  // namespace esgkg::rdf
