#include "document.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "kalmbach.hpp"
#include "structure.hpp"

namespace omlkit {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& reason) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + reason);
}

std::size_t line_of(const YAML::Node& node) { return static_cast<std::size_t>(node.Mark().line) + 1; }

std::string scalar(const YAML::Node& node, const char* what) {
  if (!node.IsScalar()) parse_fail(line_of(node), std::string(what) + " must be a scalar");
  return node.Scalar();
}

NamePairs scalar_map(const YAML::Node& node, const char* what) {
  if (!node.IsMap()) parse_fail(line_of(node), std::string(what) + " must be a mapping");
  NamePairs out;
  std::set<std::string> seen;
  for (const auto& kv : node) {
    std::string key = scalar(kv.first, what);
    if (!seen.insert(key).second) parse_fail(line_of(kv.first), std::string("duplicate key in ") + what + ": " + key);
    out.emplace_back(std::move(key), scalar(kv.second, what));
  }
  return out;
}

bool is_dot(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  return start != std::string_view::npos && text.substr(start, 7) == "digraph";
}

LatticeDocument parse_yaml(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    parse_fail(static_cast<std::size_t>(e.mark.line) + 1, e.msg);
  }
  if (!root.IsMap()) parse_fail(1, "document must be a mapping");

  LatticeDocument doc;
  bool have_elements = false;
  bool have_covers = false;
  for (const auto& kv : root) {
    const std::string key = scalar(kv.first, "key");
    const YAML::Node& value = kv.second;
    if (key == "elements") {
      if (!value.IsSequence()) parse_fail(line_of(value), "elements must be a list");
      for (const auto& e : value) doc.elements.push_back(scalar(e, "element name"));
      have_elements = true;
    } else if (key == "covers") {
      if (!value.IsSequence()) parse_fail(line_of(value), "covers must be a list");
      for (const auto& pair : value) {
        if (!pair.IsSequence() || pair.size() != 2) parse_fail(line_of(pair), "each cover must be a pair [lo, hi]");
        doc.covers.emplace_back(scalar(pair[0], "cover endpoint"), scalar(pair[1], "cover endpoint"));
      }
      have_covers = true;
    } else if (key == "perp") {
      doc.perp = scalar_map(value, "perp");
    } else if (key == "metadata") {
      doc.metadata = scalar_map(value, "metadata");
    } else {
      parse_fail(line_of(kv.first), "unknown key '" + key + "'");
    }
  }
  if (!have_elements) parse_fail(1, "missing 'elements'");
  if (!have_covers) parse_fail(1, "missing 'covers'");
  return doc;
}

// Names, covers and perp must refer to declared, distinct elements.
void validate(const LatticeDocument& doc) {
  std::unordered_set<std::string> names;
  for (const auto& n : doc.elements) {
    if (!names.insert(n).second) throw Error(ErrorCode::kParse, "duplicate element name", {n});
  }
  auto known = [&](const std::string& n) {
    if (!names.count(n)) throw Error(ErrorCode::kUnknownName, "undeclared element '" + n + "'", {n});
  };
  for (const auto& [lo, hi] : doc.covers) {
    known(lo);
    known(hi);
  }
  if (doc.perp) {
    std::unordered_set<std::string> mapped;
    for (const auto& [x, y] : *doc.perp) {
      known(x);
      known(y);
      mapped.insert(x);
    }
    for (const auto& n : doc.elements) {
      if (!mapped.count(n)) throw Error(ErrorCode::kNonTotalPerp, "perp is not defined on '" + n + "'", {n});
    }
  }
}

bool plain_safe(const std::string& s) {
  static const std::set<std::string> kReserved = {"null", "Null", "NULL", "true", "True", "TRUE", "false",
                                                  "False", "FALSE", "yes", "Yes", "YES", "no", "No",
                                                  "NO", "on", "On", "ON", "off", "Off", "OFF", "y", "n", "Y", "N"};
  if (s.empty() || kReserved.count(s)) return false;
  if (!std::isalnum(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  });
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string yaml_name(const std::string& s) { return plain_safe(s) ? s : quoted(s); }

// The DOT writer quotes every identifier.
std::string dot_id(const std::string& s) { return quoted(s); }

// ---------------------------------------------------------------- DOT reader

struct DotToken {
  enum Kind { kId, kArrow, kPunct, kEnd } kind;
  std::string text;
  std::size_t line;
};

class DotLexer {
 public:
  explicit DotLexer(std::string_view text) : s_(text) {}

  DotToken next() {
    skip();
    if (i_ >= s_.size()) return {DotToken::kEnd, "", line_};
    const char c = s_[i_];
    if (c == '"') {
      std::string out;
      const std::size_t line = line_;
      ++i_;
      while (i_ < s_.size() && s_[i_] != '"') {
        if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
        if (s_[i_] == '\n') ++line_;
        out += s_[i_++];
      }
      if (i_ >= s_.size()) parse_fail(line, "unterminated string");
      ++i_;
      return {DotToken::kId, out, line};
    }
    if (c == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
      i_ += 2;
      return {DotToken::kArrow, "->", line_};
    }
    if (std::string_view("{}[];=,").find(c) != std::string_view::npos) {
      ++i_;
      return {DotToken::kPunct, std::string(1, c), line_};
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.')) ++i_;
      return {DotToken::kId, std::string(s_.substr(start, i_ - start)), line_};
    }
    parse_fail(line_, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (s_[i_] == '\n') {
        ++line_;
        ++i_;
      } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_.substr(i_, 2) == "//" || s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        return;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
};

constexpr std::string_view kMetaPrefix = "meta.";

// n-covering for a plain lattice, with the least (atom, element) witness.
PredicateResult lattice_covering(const BoundedLattice& L, int n) {
  const auto as = atoms(L);
  for (ElementId a : as) {
    for (ElementId x = 0; x < L.size(); ++x) {
      if (L.chain_height(x, L.join(x, a)) > n) return {false, {a, x}};
    }
  }
  return {};
}

}  // namespace

LatticeDocument parse_lattice(std::string_view text) {
  LatticeDocument doc = is_dot(text) ? parse_dot(text) : parse_yaml(text);
  validate(doc);
  return doc;
}

std::string emit_lattice(const LatticeDocument& doc) {
  validate(doc);
  std::string out = "elements: [";
  for (std::size_t i = 0; i < doc.elements.size(); ++i) {
    if (i) out += ", ";
    out += yaml_name(doc.elements[i]);
  }
  out += "]\ncovers: [";
  for (std::size_t i = 0; i < doc.covers.size(); ++i) {
    if (i) out += ", ";
    out += "[" + yaml_name(doc.covers[i].first) + ", " + yaml_name(doc.covers[i].second) + "]";
  }
  out += "]\n";
  auto emit_map = [&out](const char* key, const NamePairs& m) {
    out += key;
    out += ": {";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out += ", ";
      out += yaml_name(m[i].first) + ": " + yaml_name(m[i].second);
    }
    out += "}\n";
  };
  if (doc.perp) emit_map("perp", *doc.perp);
  if (!doc.metadata.empty()) emit_map("metadata", doc.metadata);
  return out;
}

BoundedLattice document_lattice(const LatticeDocument& doc) {
  validate(doc);
  return lattice_from_covers(doc.elements, doc.covers);
}

OrthoLattice document_ortholattice(const LatticeDocument& doc) {
  if (!doc.perp) throw Error(ErrorCode::kNonTotalPerp, "the document has no perp map");
  return ortholattice(document_lattice(doc), *doc.perp);
}

LatticeDocument make_document(const BoundedLattice& lattice, NamePairs metadata) {
  LatticeDocument doc;
  doc.elements = lattice.names();
  for (const auto& [lo, hi] : lattice.cover_pairs()) doc.covers.emplace_back(lattice.name(lo), lattice.name(hi));
  doc.metadata = std::move(metadata);
  return doc;
}

LatticeDocument make_document(const OrthoLattice& ol, NamePairs metadata) {
  LatticeDocument doc = make_document(ol.lattice(), std::move(metadata));
  NamePairs perp;
  for (ElementId x = 0; x < ol.size(); ++x) perp.emplace_back(ol.name(x), ol.name(ol.perp(x)));
  doc.perp = std::move(perp);
  return doc;
}

std::string export_dot(const LatticeDocument& doc) {
  const BoundedLattice L = document_lattice(doc);
  std::string out = "digraph lattice {\n  rankdir=BT;\n";
  for (const auto& [key, value] : doc.metadata) {
    out += "  " + dot_id(std::string(kMetaPrefix) + key) + "=" + dot_id(value) + ";\n";
  }
  std::vector<std::string> perp_of(L.size());
  if (doc.perp) {
    for (const auto& [x, y] : *doc.perp) perp_of[L.id(x)] = y;
  }
  for (ElementId x = 0; x < L.size(); ++x) {
    out += "  " + dot_id(L.name(x));
    if (doc.perp) out += " [perp=" + dot_id(perp_of[x]) + "]";
    out += ";\n";
  }
  for (const auto& [lo, hi] : L.cover_pairs()) out += "  " + dot_id(L.name(lo)) + " -> " + dot_id(L.name(hi)) + ";\n";
  out += "}\n";
  return out;
}

LatticeDocument parse_dot(std::string_view text) {
  DotLexer lex(text);
  auto expect = [&](DotToken t, std::string_view what) {
    if (t.kind == DotToken::kEnd || t.text != what) {
      parse_fail(t.line, "expected '" + std::string(what) + "'");
    }
  };
  expect(lex.next(), "digraph");
  DotToken t = lex.next();
  if (t.kind == DotToken::kId) t = lex.next();
  expect(t, "{");

  LatticeDocument doc;
  NamePairs perp;
  std::set<std::string> declared;
  bool any_perp = false;
  t = lex.next();
  while (!(t.kind == DotToken::kPunct && t.text == "}")) {
    if (t.kind != DotToken::kId) parse_fail(t.line, "expected a statement");
    const DotToken id = t;
    t = lex.next();
    if (t.kind == DotToken::kPunct && t.text == "=") {
      const DotToken value = lex.next();
      if (value.kind != DotToken::kId) parse_fail(value.line, "expected an attribute value");
      if (id.text.starts_with(kMetaPrefix)) doc.metadata.emplace_back(id.text.substr(kMetaPrefix.size()), value.text);
      t = lex.next();
    } else if (t.kind == DotToken::kArrow) {
      const DotToken hi = lex.next();
      if (hi.kind != DotToken::kId) parse_fail(hi.line, "expected an edge target");
      doc.covers.emplace_back(id.text, hi.text);
      t = lex.next();
    } else {
      if (!declared.insert(id.text).second) parse_fail(id.line, "node '" + id.text + "' declared twice");
      doc.elements.push_back(id.text);
      if (t.kind == DotToken::kPunct && t.text == "[") {
        t = lex.next();
        while (!(t.kind == DotToken::kPunct && t.text == "]")) {
          if (t.kind != DotToken::kId) parse_fail(t.line, "expected an attribute name");
          const std::string key = t.text;
          expect(lex.next(), "=");
          const DotToken value = lex.next();
          if (value.kind != DotToken::kId) parse_fail(value.line, "expected an attribute value");
          if (key == "perp") {
            perp.emplace_back(id.text, value.text);
            any_perp = true;
          }
          t = lex.next();
          if (t.kind == DotToken::kPunct && t.text == ",") t = lex.next();
        }
        t = lex.next();
      }
    }
    if (t.kind == DotToken::kPunct && t.text == ";") t = lex.next();
    if (t.kind == DotToken::kEnd) parse_fail(t.line, "missing '}'");
  }
  if (lex.next().kind != DotToken::kEnd) parse_fail(t.line, "trailing input after '}'");
  if (any_perp) doc.perp = std::move(perp);
  return doc;
}

Report run_checks(const LatticeDocument& doc, unsigned flags) {
  Report rep;
  const BoundedLattice L = document_lattice(doc);
  auto names = [&L](const Witness& w) { return element_names(L, std::span<const ElementId>(w)); };
  auto add = [&](const std::string& check, const PredicateResult& r) { rep.add(check, r.holds, names(r.witness)); };

  rep.info("elements", std::to_string(L.size()));
  rep.add("lattice", true);
  rep.info("height", std::to_string(height(L)));
  const auto as = atoms(L);
  rep.info("atoms", std::to_string(as.size()), names(as));

  const LatticePredicates p = predicates(L);
  add("modular", p.modular);
  add("semimodular", p.semimodular);
  add("dual_semimodular", p.dual_semimodular);
  add("covering", p.covering);
  add("atomic", p.atomic);
  add("atomistic", p.atomistic);
  add("weakly_atomic", p.weakly_atomic);
  add("strongly_atomic", p.strongly_atomic);
  add("distributive", p.distributive);
  add("complemented", p.complemented);
  add("relatively_complemented", p.relatively_complemented);

  if (doc.perp) {
    const OrthoLattice ol = ortholattice(L, *doc.perp);
    rep.add("ortholattice", true);
    const PredicateResult oml = is_orthomodular(ol);
    add("orthomodular", oml);
    if (oml.holds) {
      const auto bs = blocks(ol);
      rep.info("blocks", std::to_string(bs.size()));
      for (std::size_t i = 0; i < bs.size(); ++i) {
        rep.info("block " + std::to_string(i), std::to_string(bs[i].elements.size()), names(bs[i].elements));
      }
      const auto c = center(ol);
      rep.info("center", std::to_string(c.size()), names(c));
      rep.add("directly_irreducible", trivial_center(c), trivial_center(c) ? std::vector<std::string>{} : names(c));
    }
  }
  add("covering_1", lattice_covering(L, 1));
  add("covering_2", lattice_covering(L, 2));

  if (flags & kCheckKalmbach) {
    const KalmbachOML k = kalmbach(L);
    auto knames = [&k](const Witness& w) { return element_names(k, std::span<const ElementId>(w)); };
    rep.info("kalmbach_size", std::to_string(k.size()));
    const PredicateResult koml = is_orthomodular(k);
    rep.add("kalmbach_orthomodular", koml.holds, knames(koml.witness));
    const PredicateResult ka = katoms_check(k);
    rep.add("katoms", ka.holds, knames(ka.witness));
    const PredicateResult kb = kblocks_check(k);
    rep.add("kblocks", kb.holds, knames(kb.witness));
    const PredicateResult kc = kcommute_check(k);
    rep.add("kcommute", kc.holds, knames(kc.witness));
  }
  return rep;
}

}  // namespace omlkit
