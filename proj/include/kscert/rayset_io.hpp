#pragma once

#include "kscert/rays.hpp"

#include <string>
#include <string_view>

namespace kscert {

// Line-oriented text format:
//
//   dim <d>
//   ray <id> <c1> ... <cd>   # optional label
//
// Exact components are integers or p/q. Floating components are decimals
// (always containing '.', 'e' or "inf"/"nan") or complex pairs "(re,im)".
// A set is floating as soon as any component is. '#' starts a comment; a
// comment trailing a ray line becomes the ray's label.

/// Emits canonical coordinates, one ray per line, LF endings.
std::string write_rayset(const RaySet& set);

/// Throws ParseError (with line number) on malformed input.
RaySet read_rayset(std::string_view text);

}  // namespace kscert
