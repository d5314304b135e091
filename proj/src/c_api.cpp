#include "omlkit/omlkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "document.hpp"
#include "hahn.hpp"
#include "kalmbach.hpp"
#include "rieger_nishimura.hpp"

struct oml_document {
  omlkit::LatticeDocument doc;
};

struct oml_report {
  omlkit::Report report;
  std::vector<std::string> witness_text;  // joined witness per line
};

namespace {

thread_local std::string g_last_error;

oml_status status_of(omlkit::ErrorCode code) {
  using omlkit::ErrorCode;
  switch (code) {
    case ErrorCode::kParse: return OML_ERR_PARSE;
    case ErrorCode::kUnknownName: return OML_ERR_UNKNOWN_NAME;
    case ErrorCode::kNonTotalPerp: return OML_ERR_NON_TOTAL_PERP;
    case ErrorCode::kNotALattice: return OML_ERR_NOT_A_LATTICE;
    case ErrorCode::kNoBounds: return OML_ERR_NO_BOUNDS;
    case ErrorCode::kCycleDetected: return OML_ERR_CYCLE;
    case ErrorCode::kNotComparable: return OML_ERR_NOT_COMPARABLE;
    case ErrorCode::kNotBelowJoin: return OML_ERR_NOT_BELOW_JOIN;
    case ErrorCode::kNotOrderInverting: return OML_ERR_NOT_ORDER_INVERTING;
    case ErrorCode::kNotInvolutive: return OML_ERR_NOT_INVOLUTIVE;
    case ErrorCode::kNotComplement: return OML_ERR_NOT_COMPLEMENT;
    case ErrorCode::kNotOml: return OML_ERR_NOT_OML;
    case ErrorCode::kNotCentral: return OML_ERR_NOT_CENTRAL;
    case ErrorCode::kTooLarge: return OML_ERR_TOO_LARGE;
    case ErrorCode::kRowsTooSmall: return OML_ERR_ROWS_TOO_SMALL;
    case ErrorCode::kDivisionByZero: return OML_ERR_DIVISION_BY_ZERO;
    case ErrorCode::kDimensionMismatch: return OML_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kZeroVector: return OML_ERR_ZERO_VECTOR;
    case ErrorCode::kDependentInput: return OML_ERR_DEPENDENT_INPUT;
    case ErrorCode::kInvalidArgument: return OML_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInternal: return OML_ERR_INTERNAL;
  }
  return OML_ERR_INTERNAL;
}

oml_status fail(oml_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into a status and the thread's last
// error message.
template <class F>
oml_status guarded(F&& body) {
  try {
    body();
    return OML_OK;
  } catch (const omlkit::Error& e) {
    std::string msg = e.what();
    if (!e.witness().empty()) {
      msg += " (";
      for (std::size_t i = 0; i < e.witness().size(); ++i) msg += (i ? ", " : "") + e.witness()[i];
      msg += ")";
    }
    return fail(status_of(e.code()), std::move(msg));
  } catch (const std::bad_alloc&) {
    return fail(OML_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(OML_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

oml_report* wrap(omlkit::Report report) {
  auto* r = new oml_report{std::move(report), {}};
  for (const auto& line : r->report.lines()) {
    std::string w;
    for (std::size_t i = 0; i < line.witness.size(); ++i) w += (i ? ", " : "") + line.witness[i];
    r->witness_text.push_back(std::move(w));
  }
  return r;
}

#define OML_REQUIRE(cond)                                                        \
  do {                                                                           \
    if (!(cond)) return fail(OML_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

std::vector<omlkit::OrthoLattice> ortho_inputs(const oml_document* const* docs, std::size_t count) {
  std::vector<omlkit::OrthoLattice> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(omlkit::document_ortholattice(docs[i]->doc));
  return out;
}

}  // namespace

extern "C" {

const char* oml_version(void) { return "1.0.0"; }

const char* oml_status_name(oml_status status) {
  switch (status) {
    case OML_OK: return "Ok";
    case OML_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    default: break;
  }
  if (status < OML_ERR_PARSE || status > OML_ERR_INTERNAL) return "Unknown";
  return omlkit::error_code_name(static_cast<omlkit::ErrorCode>(status - 1));
}

const char* oml_last_error(void) { return g_last_error.c_str(); }

void oml_string_free(char* text) { std::free(text); }

oml_status oml_document_parse(const char* text, size_t length, oml_document** out) {
  OML_REQUIRE(out);
  OML_REQUIRE(text || length == 0);
  *out = nullptr;
  return guarded([&] {
    auto doc = omlkit::parse_lattice(std::string_view(text ? text : "", length));
    *out = new oml_document{std::move(doc)};
  });
}

oml_status oml_document_emit(const oml_document* doc, char** out) {
  OML_REQUIRE(doc && out);
  *out = nullptr;
  return guarded([&] { *out = dup_string(omlkit::emit_lattice(doc->doc)); });
}

oml_status oml_document_export_dot(const oml_document* doc, char** out) {
  OML_REQUIRE(doc && out);
  *out = nullptr;
  return guarded([&] { *out = dup_string(omlkit::export_dot(doc->doc)); });
}

oml_status oml_document_size(const oml_document* doc, size_t* out) {
  OML_REQUIRE(doc && out);
  *out = doc->doc.elements.size();
  return OML_OK;
}

int oml_document_equal(const oml_document* a, const oml_document* b) {
  if (!a || !b) return a == b;
  return a->doc == b->doc ? 1 : 0;
}

void oml_document_free(oml_document* doc) { delete doc; }

oml_status oml_kalmbach(const oml_document* base, oml_document** out) {
  OML_REQUIRE(base && out);
  *out = nullptr;
  return guarded([&] {
    const omlkit::KalmbachOML k = omlkit::kalmbach(omlkit::document_lattice(base->doc));
    omlkit::NamePairs meta = base->doc.metadata;
    meta.emplace_back("construction", "kalmbach");
    *out = new oml_document{omlkit::make_document(k.to_ortholattice(), std::move(meta))};
  });
}

oml_status oml_rn_lattice(int rows, oml_document** out) {
  OML_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const omlkit::RnLattice rn = omlkit::rn_lattice(rows);
    *out = new oml_document{omlkit::make_document(rn.lattice, {{"rows", std::to_string(rows)}})};
  });
}

oml_status oml_horizontal_sum(const oml_document* const* summands, size_t count, oml_document** out) {
  OML_REQUIRE(out);
  OML_REQUIRE(summands && count > 0);
  for (size_t i = 0; i < count; ++i) OML_REQUIRE(summands[i]);
  *out = nullptr;
  return guarded([&] {
    const auto parts = ortho_inputs(summands, count);
    *out = new oml_document{omlkit::make_document(omlkit::horizontal_sum(parts))};
  });
}

oml_status oml_product(const oml_document* const* factors, size_t count, oml_document** out) {
  OML_REQUIRE(out);
  OML_REQUIRE(factors && count > 0);
  for (size_t i = 0; i < count; ++i) OML_REQUIRE(factors[i]);
  *out = nullptr;
  return guarded([&] {
    const auto parts = ortho_inputs(factors, count);
    *out = new oml_document{omlkit::make_document(omlkit::product(parts))};
  });
}

oml_status oml_check(const oml_document* doc, unsigned flags, oml_report** out) {
  OML_REQUIRE(doc && out);
  OML_REQUIRE((flags & ~OML_CHECK_KALMBACH) == 0);
  *out = nullptr;
  unsigned core = 0;
  if (flags & OML_CHECK_KALMBACH) core |= omlkit::kCheckKalmbach;
  return guarded([&] { *out = wrap(omlkit::run_checks(doc->doc, core)); });
}

oml_status oml_rn_report(int rows, oml_report** out) {
  OML_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(omlkit::rn_report_lines(omlkit::rn_report(rows))); });
}

oml_status oml_keller_report(size_t dim, uint64_t seed, size_t trials, oml_report** out) {
  OML_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    omlkit::KellerOptions opt;
    opt.dim = dim;
    opt.seed = seed;
    opt.trials = trials;
    *out = wrap(omlkit::keller_report(opt));
  });
}

oml_status oml_report_text(const oml_report* report, char** out) {
  OML_REQUIRE(report && out);
  *out = nullptr;
  return guarded([&] { *out = dup_string(report->report.text()); });
}

int oml_report_all_pass(const oml_report* report) { return report && report->report.all_pass() ? 1 : 0; }

size_t oml_report_line_count(const oml_report* report) { return report ? report->report.lines().size() : 0; }

oml_status oml_report_line(const oml_report* report, size_t index, const char** check, const char** verdict,
                           const char** witness) {
  OML_REQUIRE(report);
  if (index >= report->report.lines().size()) return fail(OML_ERR_INVALID_ARGUMENT, "report line index out of range");
  const auto& line = report->report.lines()[index];
  if (check) *check = line.check.c_str();
  if (verdict) *verdict = line.verdict.c_str();
  if (witness) *witness = report->witness_text[index].c_str();
  return OML_OK;
}

void oml_report_free(oml_report* report) { delete report; }

}  // extern "C"
