#pragma once

#include <string>
#include <vector>

namespace tropicount {

struct Issue {
  std::string rule;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const noexcept { return issues.empty(); }
  void add(std::string rule, std::string location, std::string message) {
    issues.push_back({std::move(rule), std::move(location), std::move(message)});
  }
  bool has(const std::string& rule) const {
    for (const auto& i : issues)
      if (i.rule == rule) return true;
    return false;
  }
  void append(const ValidationReport& other) {
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  }
};

}  // namespace tropicount
