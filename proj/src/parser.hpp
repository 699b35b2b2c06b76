#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "formula.hpp"
#include "validity.hpp"

namespace pdl {

struct InputDecl {
  std::string name;
  bool is_bool;
};

struct VerificationTask {
  FormulaPtr assume;    // defaults to true
  FormulaPtr ensures;   // required
  Rational prob_bound;  // claimed lower bound, in [0, 1]
  std::vector<InputDecl> inputs;
  StmtPtr body;
};

// Parses a task file: header directives (@input, @assume, @ensures, @prob)
// followed by a braced program. Rejects duplicate headers, unknown
// directives, out-of-range probabilities, reads of unassigned variables, and
// specification variables that are neither inputs nor definitely assigned.
VerificationTask parse_task(std::string_view text);

// Parses a standalone state formula.
FormulaPtr parse_formula(std::string_view text);

// Parses a standalone program expression (no quantifiers, no implication).
ExprPtr parse_expression(std::string_view text);

// Canonical rendering; parse_task(pretty_print(t)) is structurally equal to t.
std::string pretty_print(const VerificationTask& task);

TypeEnv input_types(const VerificationTask& task);

}  // namespace pdl
