#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ck {

struct CheckResult {
  std::string name;
  std::string status;    // "pass" | "fail" | "skipped"
  std::string residual;  // "zero" or the leading nonzero monomial
  double ms = -1;
};

/// Deterministic certification report.  Timings are kept out of the JSON
/// form unless explicitly requested, so identical (input, seed, version)
/// runs produce byte-identical reports.
class Report {
 public:
  Report(std::string command, std::string input_hash, std::uint64_t seed)
      : command_(std::move(command)), input_hash_(std::move(input_hash)), seed_(seed) {}

  void add(const std::string& name, bool pass, const std::string& residual = "zero",
           double ms = -1) {
    checks_.push_back({name, pass ? "pass" : "fail", residual, ms});
  }
  void skip(const std::string& name) { checks_.push_back({name, "skipped", "", -1}); }

  bool all_pass() const {
    for (auto& c : checks_)
      if (c.status == "fail") return false;
    return true;
  }

  const std::vector<CheckResult>& checks() const { return checks_; }

  nlohmann::ordered_json to_json(bool with_timings = false) const;
  std::string text(bool with_timings = true) const;

  static std::string tool_version() { return "courant-kit 0.1.0"; }

 private:
  std::string command_;
  std::string input_hash_;
  std::uint64_t seed_;
  std::vector<CheckResult> checks_;
};

/// FNV-1a of the raw input bytes, as fixed-width hex.
std::string content_hash(const std::string& bytes);

}  // namespace ck
