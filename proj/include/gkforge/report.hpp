#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gkforge {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::string detail;

  static CheckResult ok(std::string suite, std::string name, std::string detail = "");
  static CheckResult fail(std::string suite, std::string name, std::string detail);
  static CheckResult skip(std::string suite, std::string name, std::string detail);
};

/// A flat, deterministic list of check outcomes. Rendering is byte-stable
/// for a fixed configuration and seed.
struct Report {
  std::vector<CheckResult> checks;

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void add(Report other);
  bool all_pass() const;
  std::size_t failures() const;

  std::string render_text() const;
  nlohmann::json render_json() const;
};

}  // namespace gkforge
