#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace k2ms {

struct Check {
  std::string name;
  bool pass = false;
  std::string details;
};

/// Outcome of one verification command. Serializes with sorted keys and no
/// floating-point values, so identical inputs give identical bytes.
struct CheckReport {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<std::string> fixtures_written;
  nlohmann::json data = nlohmann::json::object();

  void add(std::string name, bool pass, std::string details = {}) {
    checks.push_back({std::move(name), pass, std::move(details)});
  }
  void merge(const CheckReport& other, const std::string& prefix = {});
  bool all_passed() const;
  nlohmann::json to_json() const;
};

}  // namespace k2ms
