#include "courantkit/report.hpp"

#include <iomanip>
#include <sstream>

namespace ck {

nlohmann::ordered_json Report::to_json(bool with_timings) const {
  nlohmann::ordered_json j;
  j["tool"] = tool_version();
  j["command"] = command_;
  j["input_hash"] = input_hash_;
  j["seed"] = seed_;
  j["checks"] = nlohmann::ordered_json::array();
  for (auto& c : checks_) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = c.status;
    if (c.status == "fail") e["residual"] = c.residual;
    if (with_timings && c.ms >= 0) e["ms"] = c.ms;
    j["checks"].push_back(e);
  }
  j["overall"] = all_pass() ? "pass" : "fail";
  return j;
}

std::string Report::text(bool with_timings) const {
  std::ostringstream os;
  os << tool_version() << " :: " << command_ << "\n";
  for (auto& c : checks_) {
    os << "  [" << (c.status == "pass" ? "PASS" : (c.status == "fail" ? "FAIL" : "SKIP")) << "] "
       << c.name;
    if (c.status == "fail" && !c.residual.empty()) os << "  (residual: " << c.residual << ")";
    if (with_timings && c.ms >= 0)
      os << "  [" << std::fixed << std::setprecision(1) << c.ms << " ms]";
    os << "\n";
  }
  os << (all_pass() ? "overall: pass" : "overall: FAIL") << "\n";
  return os.str();
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace ck
