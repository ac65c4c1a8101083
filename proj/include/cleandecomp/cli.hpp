#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cleandecomp/banded.hpp"
#include "cleandecomp/matrix.hpp"

namespace cleandecomp::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

inline constexpr std::size_t kMaxWindow = 512;
inline constexpr std::size_t kMaxUnits = 8;

using Json = nlohmann::ordered_json;

/// Entries are element strings, integers, or nested arrays (matrix entries).
Matrix matrix_from_json(const Ring& ring, const nlohmann::json& rows);
Json matrix_to_json(const Matrix& m);

/// {"ring", "bandwidth", and one of "builtin" (identity | shift |
/// tridiagonal | zero | random) or "bands": [{"offset", "pattern"}]};
/// "seed" is optional for the random builtin and defaults to `seed`.
BandedOperator banded_from_json(const nlohmann::json& spec, std::uint64_t seed);

/// args excludes the program name. The report goes to `out` and diagnostics
/// to `err`; returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cleandecomp::cli
