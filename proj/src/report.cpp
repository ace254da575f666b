#include "gkforge/report.hpp"

#include <sstream>

namespace gkforge {

CheckResult CheckResult::ok(std::string suite, std::string name, std::string detail) {
  return CheckResult{std::move(suite), std::move(name), true, false, std::move(detail)};
}

CheckResult CheckResult::fail(std::string suite, std::string name, std::string detail) {
  return CheckResult{std::move(suite), std::move(name), false, false, std::move(detail)};
}

CheckResult CheckResult::skip(std::string suite, std::string name, std::string detail) {
  return CheckResult{std::move(suite), std::move(name), true, true, std::move(detail)};
}

void Report::add(Report other) {
  for (auto& c : other.checks) checks.push_back(std::move(c));
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.skipped && !c.pass) return false;
  return true;
}

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks)
    if (!c.skipped && !c.pass) ++n;
  return n;
}

std::string Report::render_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL")) << " " << c.suite << "/"
       << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << (all_pass() ? "OK" : "FAILED") << " (" << checks.size() << " checks, "
     << failures() << " failures)\n";
  return os.str();
}

nlohmann::json Report::render_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j;
    j["suite"] = c.suite;
    j["name"] = c.name;
    j["status"] = c.skipped ? "skip" : (c.pass ? "pass" : "fail");
    j["detail"] = c.detail;
    arr.push_back(j);
  }
  nlohmann::json out;
  out["checks"] = arr;
  out["all_pass"] = all_pass();
  out["failures"] = failures();
  return out;
}

}  // namespace gkforge
