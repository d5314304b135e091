// omlkit command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 every check holds (or a document was produced), 1 some check
// is false, 2 structural or usage error.

#include <omlkit/omlkit.h>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

struct CliError {
  std::string message;
};

struct DocDeleter {
  void operator()(oml_document* d) const { oml_document_free(d); }
};
struct ReportDeleter {
  void operator()(oml_report* r) const { oml_report_free(r); }
};
using DocPtr = std::unique_ptr<oml_document, DocDeleter>;
using ReportPtr = std::unique_ptr<oml_report, ReportDeleter>;

void check_status(oml_status s) {
  if (s != OML_OK) throw CliError{oml_last_error()};
}

std::string take(char* text) {
  std::string out(text);
  oml_string_free(text);
  return out;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot open input file '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{"cannot open output file '" + path + "'"};
  out << text;
  if (!out) throw CliError{"cannot write output file '" + path + "'"};
}

DocPtr parse_doc(const std::string& text) {
  oml_document* d = nullptr;
  check_status(oml_document_parse(text.data(), text.size(), &d));
  return DocPtr(d);
}

int emit_doc(const oml_document* doc, const std::string& out) {
  char* text = nullptr;
  check_status(oml_document_emit(doc, &text));
  write_output(out, take(text));
  return kExitPass;
}

int emit_report(const oml_report* report, const std::string& out) {
  char* text = nullptr;
  check_status(oml_report_text(report, &text));
  write_output(out, take(text));
  return oml_report_all_pass(report) ? kExitPass : kExitFalse;
}

using Combiner = oml_status (*)(const oml_document* const*, size_t, oml_document**);

int combine(Combiner fn, const std::vector<std::string>& inputs, const std::string& out) {
  if (inputs.size() < 1) throw CliError{"at least one --in file is required"};
  std::vector<DocPtr> docs;
  std::vector<const oml_document*> raw;
  for (const auto& path : inputs) {
    docs.push_back(parse_doc(read_input(path)));
    raw.push_back(docs.back().get());
  }
  oml_document* result = nullptr;
  check_status(fn(raw.data(), raw.size(), &result));
  return emit_doc(DocPtr(result).get(), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite orthomodular lattice toolkit"};
  app.set_version_flag("--version", std::string(oml_version()));
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;
  std::vector<std::string> in_paths;
  bool kalmbach_flag = false;
  bool report_flag = false;
  int rows = 3;
  std::size_t dim = 4;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;

  auto io = [&](CLI::App* sub) {
    sub->add_option("--in", in_path, "Input lattice file (default: stdin)");
    sub->add_option("--out", out_path, "Output file (default: stdout)");
  };

  auto* check = app.add_subcommand("check", "Run every structural check on a lattice document");
  io(check);
  check->add_flag("--kalmbach", kalmbach_flag, "Also build K(L) and run its checks");

  auto* kalmbach = app.add_subcommand("kalmbach", "Emit the Kalmbach OML K(L) of a lattice document");
  io(kalmbach);
  kalmbach->add_flag("--report", report_flag, "Emit the check report of L with the Kalmbach pipeline instead");

  auto* rn = app.add_subcommand("rn", "Rieger-Nishimura truncation: lattice, K(lattice) or report");
  rn->add_option("--rows", rows, "Number of ladder rows")->check(CLI::Range(1, 64));
  rn->add_option("--out", out_path, "Output file (default: stdout)");
  rn->add_flag("--kalmbach", kalmbach_flag, "Emit K of the truncation");
  rn->add_flag("--report", report_flag, "Emit the structured report (needs rows >= 3)");

  auto* hs = app.add_subcommand("hs", "Horizontal sum of orthomodular lattice documents");
  hs->add_option("--in", in_paths, "Summand files, in order")->required();
  hs->add_option("--out", out_path, "Output file (default: stdout)");

  auto* product = app.add_subcommand("product", "Direct product of ortholattice documents");
  product->add_option("--in", in_paths, "Factor files, in order")->required();
  product->add_option("--out", out_path, "Output file (default: stdout)");

  auto* keller = app.add_subcommand("keller", "Randomized checks over the Hahn-series field and its form");
  keller->add_option("--dim", dim, "Ambient dimension for subspace checks")->check(CLI::Range(1, 12));
  keller->add_option("--seed", seed, "Random seed");
  keller->add_option("--trials", trials, "Trials per check");
  keller->add_option("--out", out_path, "Output file (default: stdout)");
  keller->add_flag("--report", report_flag, "Emit the structured report (the only output form)");

  auto* dot = app.add_subcommand("dot", "Export the Hasse diagram in DOT format");
  io(dot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*check) {
      const DocPtr doc = parse_doc(read_input(in_path));
      oml_report* r = nullptr;
      check_status(oml_check(doc.get(), kalmbach_flag ? OML_CHECK_KALMBACH : 0u, &r));
      return emit_report(ReportPtr(r).get(), out_path);
    }
    if (*kalmbach) {
      const DocPtr doc = parse_doc(read_input(in_path));
      if (report_flag) {
        oml_report* r = nullptr;
        check_status(oml_check(doc.get(), OML_CHECK_KALMBACH, &r));
        return emit_report(ReportPtr(r).get(), out_path);
      }
      oml_document* k = nullptr;
      check_status(oml_kalmbach(doc.get(), &k));
      return emit_doc(DocPtr(k).get(), out_path);
    }
    if (*rn) {
      if (report_flag) {
        oml_report* r = nullptr;
        check_status(oml_rn_report(rows, &r));
        return emit_report(ReportPtr(r).get(), out_path);
      }
      oml_document* base = nullptr;
      check_status(oml_rn_lattice(rows, &base));
      DocPtr lattice(base);
      if (!kalmbach_flag) return emit_doc(lattice.get(), out_path);
      oml_document* k = nullptr;
      check_status(oml_kalmbach(lattice.get(), &k));
      return emit_doc(DocPtr(k).get(), out_path);
    }
    if (*hs) return combine(oml_horizontal_sum, in_paths, out_path);
    if (*product) return combine(oml_product, in_paths, out_path);
    if (*keller) {
      oml_report* r = nullptr;
      check_status(oml_keller_report(dim, seed, trials, &r));
      return emit_report(ReportPtr(r).get(), out_path);
    }
    if (*dot) {
      const DocPtr doc = parse_doc(read_input(in_path));
      char* text = nullptr;
      check_status(oml_document_export_dot(doc.get(), &text));
      write_output(out_path, take(text));
      return kExitPass;
    }
  } catch (const CliError& e) {
    std::cerr << "omlkit: " << e.message << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "omlkit: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
