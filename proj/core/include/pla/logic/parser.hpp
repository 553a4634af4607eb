#pragma once

#include <string_view>

#include "pla/logic/formula.hpp"

namespace pla {

// Parses formula text:
//
//   phi ::= NUM | VAR "=" VAR | VAR "!=" VAR | IDENT "(" VAR {"," VAR} ")"
//         | "!" phi | phi "&" phi | phi "|" phi | phi "->" phi | "(" phi ")"
//         | "wm(" phi ";" phi ";" phi ")"
//         | AGG "[" phi {"," phi} ":" VAR {"," VAR} ":" eqspec "]"
//   eqspec ::= "distinct" {"," lit} | lit {"," lit}
//   lit ::= VAR ("=" | "!=") VAR
//
// Precedence ! > & > | > ->, with -> right-associative. AGG is a name such as
// am or noisy-or, optionally with one numeric parameter: exists_at_least(0.5).
// "distinct" makes every bound variable differ from every other bound and
// every free variable of the node. The equality type must decide every pair
// of variables after closure; nested binders may not reuse a bound name.
// Errors are ParseError with line and column.
FormulaPtr parse_formula(std::string_view text);

}  // namespace pla
