#pragma once

#include <iosfwd>

namespace cosserat::cli {

/// Runs the command line `argv`; returns the process exit code.
///   identities  0 if every identity holds, 1 otherwise
///   check       0 iff the material is definite, 1 otherwise
///   convert     0 on success
///   energy      0 on success
///   minimize    0 Converged, 2 MaxIterations, 3 LineSearchFailure
/// Invalid input (config, files, flags) exits with 1 after a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cosserat::cli
