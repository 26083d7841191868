#pragma once

#include <string>
#include <string_view>

#include "nleig/problems.hpp"

namespace nleig {

// Canonical JSON problem document, the input format of the CLI:
//   {"family": "ince",     "q": [c0, c1, ...]}
//   {"family": "master",   "V": [c0, c1, ...]}
//   {"family": "riccati",  "V": [c0, c1, ...], "E": <num>}
//   {"family": "extended", "n": <int>, "forcing": [[m, k, a], ...]}
// Throws std::invalid_argument naming the offending key on malformed input.
EquationSpec equation_from_json_text(std::string_view text);
std::string equation_to_json_text(const EquationSpec& eq);

}  // namespace nleig
