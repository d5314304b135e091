#pragma once

// Ordered (check, verdict, witness) lines. Boolean lines decide the overall
// verdict; info lines carry counts and listings.

#include <string>
#include <vector>

namespace omlkit {

struct ReportLine {
  std::string check;
  std::string verdict;  // "true", "false", or a value for info lines
  std::vector<std::string> witness;
  bool boolean = true;
};

class Report {
 public:
  void add(std::string check, bool holds, std::vector<std::string> witness = {}) {
    lines_.push_back({std::move(check), holds ? "true" : "false", std::move(witness), true});
  }
  void info(std::string check, std::string value, std::vector<std::string> items = {}) {
    lines_.push_back({std::move(check), std::move(value), std::move(items), false});
  }
  void append(const Report& other) { lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end()); }

  const std::vector<ReportLine>& lines() const noexcept { return lines_; }

  bool all_pass() const {
    for (const auto& l : lines_) {
      if (l.boolean && l.verdict != "true") return false;
    }
    return true;
  }

  // "check: verdict (w1, w2)" per line.
  std::string text() const {
    std::string out;
    for (const auto& l : lines_) {
      out += l.check + ": " + l.verdict;
      if (!l.witness.empty()) {
        out += " (";
        for (std::size_t i = 0; i < l.witness.size(); ++i) {
          if (i) out += ", ";
          out += l.witness[i];
        }
        out += ")";
      }
      out += "\n";
    }
    return out;
  }

 private:
  std::vector<ReportLine> lines_;
};

}  // namespace omlkit
