#pragma once

#include "bis/pbox.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bis::io {

// One observation per line, or the named column of a CSV file whose first
// non-comment line is the header.  '#' starts a comment; blank lines are
// skipped.  Throws Error(InvalidArgument) on unparsable input.
std::vector<double> read_observations(std::istream& in, const std::optional<std::string>& column);
std::vector<double> read_observations_file(const std::string& path,
                                           const std::optional<std::string>& column);

// Accepts decimal numbers and inf / +inf / -inf (any case, also "infinity").
ExtendedReal parse_extended(std::string_view text);

// Shortest round-trip decimal; infinities become "inf" / "-inf".
std::string format_extended(ExtendedReal x);

} // namespace bis::io
