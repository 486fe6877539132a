#include "k2ms/report.hpp"

#include <algorithm>

namespace k2ms {

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (const Check& c : other.checks) checks.push_back({prefix + c.name, c.pass, c.details});
}

bool CheckReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["params"] = params;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  j["fixtures_written"] = fixtures_written;
  if (!data.empty()) j["data"] = data;
  j["pass"] = all_passed();
  return j;
}

}  // namespace k2ms
