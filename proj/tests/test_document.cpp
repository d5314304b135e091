#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "document.hpp"
#include "kalmbach.hpp"

using namespace omlkit;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

const ReportLine* line(const Report& r, const std::string& check) {
  for (const auto& l : r.lines())
    if (l.check == check) return &l;
  return nullptr;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_SUITE("document") {
  TEST_CASE("two-element chain round trip") {
    const std::string text = "elements: [0, 1]\ncovers: [[0, 1]]\n";
    const auto doc = parse_lattice(text);
    CHECK(doc.elements == std::vector<std::string>{"0", "1"});
    CHECK(document_lattice(doc).size() == 2);
    const auto emitted = emit_lattice(doc);
    CHECK(parse_lattice(emitted) == doc);
    CHECK(emit_lattice(parse_lattice(emitted)) == emitted);
  }

  TEST_CASE("block-style input and perp maps") {
    const std::string text =
        "elements:\n  - '0'\n  - a\n  - b\n  - '1'\n"
        "covers:\n  - [0, a]\n  - [0, b]\n  - [a, 1]\n  - [b, 1]\n"
        "perp: {0: 1, 1: 0, a: b, b: a}\n"
        "metadata: {name: MO2-as-2x2}\n";
    const auto doc = parse_lattice(text);
    REQUIRE(doc.perp.has_value());
    CHECK(document_ortholattice(doc).size() == 4);
    CHECK(doc.metadata == NamePairs{{"name", "MO2-as-2x2"}});
  }

  TEST_CASE("document errors") {
    CHECK(code_of([] { parse_lattice("elements: [0, 1]\ncovers: [[0, x]]\n"); }) == ErrorCode::kUnknownName);
    CHECK(code_of([] { parse_lattice("elements: [0, 1\n"); }) == ErrorCode::kParse);
    CHECK(code_of([] { parse_lattice("elements: [0, 1]\n"); }) == ErrorCode::kParse);
    CHECK(code_of([] { parse_lattice("elements: [0, 0]\ncovers: []\n"); }) == ErrorCode::kParse);
    CHECK(code_of([] { parse_lattice("elements: [0, 1]\ncovers: [[0, 1]]\nextra: 3\n"); }) == ErrorCode::kParse);
    CHECK(code_of([] { parse_lattice("elements: [0, 1]\ncovers: [[0, 1]]\nperp: {0: 1}\n"); }) ==
          ErrorCode::kNonTotalPerp);
    CHECK(code_of([] { document_ortholattice(parse_lattice("elements: [0, 1]\ncovers: [[0, 1]]\n")); }) ==
          ErrorCode::kNonTotalPerp);
    CHECK(code_of([] { document_lattice(parse_lattice("elements: [0, a, b]\ncovers: [[0, a], [0, b]]\n")); }) ==
          ErrorCode::kNoBounds);
    try {
      parse_lattice("elements: [0, 1]\ncovers: [[0, 1]]\nbogus: 1\n");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("awkward names are quoted and survive") {
    const auto L = lattice_from_covers({"0", "x y", "true", "a'", "-", "1"},
                                       {{"0", "x y"}, {"0", "true"}, {"0", "a'"}, {"0", "-"},
                                        {"x y", "1"}, {"true", "1"}, {"a'", "1"}, {"-", "1"}});
    const auto doc = make_document(L, {{"note", "a: b, [c]"}});
    const auto back = parse_lattice(emit_lattice(doc));
    CHECK(back == doc);
    CHECK(parse_lattice(export_dot(doc)) == doc);
  }

  TEST_CASE("DOT export") {
    const auto chain = make_document(corpus::chain(2));
    const auto dot = export_dot(chain);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(count(dot, "->") == 1);
    CHECK(count(dot, "];") + count(dot, "\"c0\";") + count(dot, "\"c1\";") >= 2);
    const auto mo2 = make_document(mo(2));
    const auto mdot = export_dot(mo2);
    CHECK(count(mdot, "->") == 8);
    CHECK(count(mdot, "perp=") == 6);
    CHECK(parse_dot(mdot) == mo2);

    const auto km2 = kalmbach(corpus::m(2)).to_ortholattice();
    const auto kdoc = make_document(km2);
    const auto kdot = export_dot(kdoc);
    CHECK(count(kdot, "perp=") == 6);
    CHECK(count(kdot, "->") == 8);
    const auto back = parse_lattice(kdot);
    CHECK(back == kdoc);
    CHECK(find_ortho_isomorphism(document_ortholattice(back), mo(2)).has_value());
  }

  TEST_CASE("corpus round trips") {
    for (const auto& [name, doc] : corpus::documents()) {
      CAPTURE(name);
      const auto text = emit_lattice(doc);
      CHECK(parse_lattice(text) == doc);
      CHECK(emit_lattice(parse_lattice(text)) == text);
      CHECK(parse_lattice(export_dot(doc)) == doc);
    }
  }

  TEST_CASE("check runs") {
    const auto o6 = run_checks(make_document(corpus::o6_ortho()));
    REQUIRE(line(o6, "orthomodular") != nullptr);
    CHECK(line(o6, "orthomodular")->verdict == "false");
    CHECK(line(o6, "orthomodular")->witness == std::vector<std::string>{"a", "b"});
    CHECK_FALSE(o6.all_pass());

    const auto n5 = run_checks(make_document(corpus::n5()));
    CHECK(line(n5, "modular")->verdict == "false");
    CHECK(line(n5, "modular")->witness.size() == 3);
    CHECK(line(n5, "orthomodular") == nullptr);

    const auto m2 = run_checks(make_document(corpus::m(2)), kCheckKalmbach);
    for (const char* c : {"kalmbach_orthomodular", "katoms", "kblocks", "kcommute"}) {
      CAPTURE(c);
      REQUIRE(line(m2, c) != nullptr);
      CHECK(line(m2, c)->verdict == "true");
    }
    CHECK(line(m2, "kalmbach_size")->verdict == "6");

    const auto mo3 = run_checks(make_document(mo(3)));
    CHECK(line(mo3, "orthomodular")->verdict == "true");
    CHECK(line(mo3, "directly_irreducible")->verdict == "true");
    CHECK(line(mo3, "distributive")->verdict == "false");
    CHECK_FALSE(mo3.all_pass());
    CHECK(run_checks(make_document(mo(3))).text() == mo3.text());
  }
}
