#pragma once

// Operator documents (JSON). Coefficients are written in the expression
// grammar of parser.hpp.
//
//   {
//     "format": "dde-operator",
//     "version": 1,
//     "size": 1,
//     "variables": ["u"],
//     "entries": [
//       {"row": 1, "col": 1, "kind": "local", "power": -1, "coeff": "u"},
//       {"row": 1, "col": 1, "kind": "nonlocal", "power": 0,
//        "left": "u*u[1] - u[-1]*u", "right": "1/(u)"}
//     ]
//   }

#include <string>
#include <string_view>
#include <vector>

#include "ddero/operator.hpp"

namespace ddero::frontend {

/// Canonical text: entries row-major, local terms by power, then nonlocal
/// terms. load_operator(save_operator(r)) == normal order of r.
std::string save_operator(const PseudoDifferenceOperator& r,
                          const std::vector<std::string>& names);

/// Throws InputError on malformed documents. When names is non-null it
/// receives the document's variable list.
PseudoDifferenceOperator load_operator(std::string_view text,
                                       std::vector<std::string>* names = nullptr);

/// As load_operator, but also checks the variables against expected.
PseudoDifferenceOperator load_operator_for(std::string_view text,
                                           const std::vector<std::string>& expected);

}  // namespace ddero::frontend
