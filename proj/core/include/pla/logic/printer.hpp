#pragma once

#include <string>

#include "pla/logic/formula.hpp"

namespace pla {

// Formula text in the surface grammar accepted by parse_formula, with
// minimal parentheses. Equality types are written as the full list of pairwise
// literals so that parsing the output reproduces the formula exactly.
std::string print(const Formula& f);

}  // namespace pla
