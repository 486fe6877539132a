#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace k2ms::cli {

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 when every check passes, 1 on a failed check, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json cyclo_fixture();
nlohmann::json lvalues_fixture();
nlohmann::json eis_fixture();

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

/// scope is cyclo, lvalues, eis or all. Returns the files written.
std::vector<std::string> emit_fixtures(const std::string& scope, const std::filesystem::path& dir);

}  // namespace k2ms::cli
