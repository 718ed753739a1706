#ifndef DARKHOLE_CLI_UTIL_HPP
#define DARKHOLE_CLI_UTIL_HPP

#include <string>
#include <vector>

#include "darkhole/model.hpp"

namespace darkhole {

/// Parses "min:max:points" into a uniform grid. points must be >= 1 and
/// max > min (a single point collapses to min). Throws GRID_EMPTY for
/// points < 1 and PARSE_ERROR for malformed text.
std::vector<double> parse_grid(const std::string &spec);

std::vector<double> make_grid(double min, double max, long points);

/// Initial-state specs accepted by the CLI: "mixed", "ground", "C", "D",
/// or a path to a 3x3 matrix file (three rows of three complex entries,
/// '#' comments). Non-Hermitian matrix files are rejected.
DensityMatrix rho0_from_spec(const std::string &spec, const SystemParams &params);

/// Splits "key=value" (first '='). Throws PARSE_ERROR.
std::pair<std::string, std::string> split_key_value(const std::string &text);

} // namespace darkhole

#endif
