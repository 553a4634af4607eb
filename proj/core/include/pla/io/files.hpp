#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pla/logic/structure.hpp"
#include "pla/network/network.hpp"

namespace pla {

// Whole file contents; throws InvalidArgument when it cannot be read.
std::string read_file(const std::string& path);

// Network document:
//   {"relations": [{"name": "R", "arity": 1, "parents": ["P"],
//                   "theta": "(P(x1) -> 0.9) & (!P(x1) -> 0.2)"}, ...]}
// "arity" defaults to 1 and "parents" to []; theta may also be a number.
// JSON and theta syntax errors are ParseError with a line/column in the
// document.
std::vector<RelationSpec> parse_network(std::string_view json_text);
PlaNetwork load_network(const std::string& path);
std::string network_to_json(const PlaNetwork& net);

// Structure document: {"domain_size": 3, "relations": {"R": [[1], [3]]}}.
// Relations missing from the document are empty.
Structure parse_structure(std::string_view json_text, const SignaturePtr& signature);
std::string structure_to_json(const Structure& s);

}  // namespace pla
