#pragma once

#include "kscert/structures.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kscert::cli {

/// Runs one kscert invocation. `args` excludes the program name. Reports go
/// to `out`, diagnostics to `err`; the return value is the exit status.
/// Names accepted by --cover besides files.
const std::vector<std::string>& builtin_cover_names();

/// Builds a built-in cover by name; nullopt for unknown names.
std::optional<CoverStructure> builtin_cover(const std::string& name, double tol = kTolHermitian);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kscert::cli
