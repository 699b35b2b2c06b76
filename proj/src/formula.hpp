#pragma once

#include <string>
#include <vector>

#include "ast.hpp"

namespace pdl {

// ----------------------------------------------------------- state formulas

struct StateFormula;
using FormulaPtr = std::shared_ptr<const StateFormula>;

struct StateFormula {
  struct Atom { ExprPtr expr; };
  struct Not { FormulaPtr body; };
  struct And { FormulaPtr lhs; FormulaPtr rhs; };
  // Quantification over the inclusive integer range [lo, hi].
  struct ForallRange { std::string var; Int lo; Int hi; FormulaPtr body; };

  std::variant<Atom, Not, And, ForallRange> node;

  static FormulaPtr atom(ExprPtr e);
  static FormulaPtr truth();
  static FormulaPtr falsity();
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs);     // !( !a && !b )
  static FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs);  // !(a && !b)
  static FormulaPtr forall(std::string var, Int lo, Int hi, FormulaPtr body);
  static FormulaPtr exists(std::string var, Int lo, Int hi, FormulaPtr body);  // !forall !
};

bool struct_eq(const StateFormula& a, const StateFormula& b);
std::string to_string(const StateFormula& f);
// Free variables; quantifier-bound names are excluded.
std::set<std::string> free_vars(const StateFormula& f);

bool sat_state_formula(const Valuation& env, const StateFormula& f);

// --------------------------------------------------------- symbolic updates

struct SymbolicUpdate {
  std::string var;
  ExprPtr term;
};
using UpdateList = std::vector<SymbolicUpdate>;

std::string to_string(const UpdateList& updates);

// Applies bindings left to right; each term is evaluated in the state
// produced by the bindings before it.
Valuation apply_update_to_state(const UpdateList& updates, const Valuation& env);

// Substitutes accumulated terms into e so that evaluating the result in env
// equals evaluating e in apply_update_to_state(updates, env). Folds constant
// subterms.
ExprPtr apply_update_to_expr(const UpdateList& updates, const ExprPtr& e);
FormulaPtr apply_update_to_formula(const UpdateList& updates, const FormulaPtr& f);

// Bottom-up constant folding; never folds away a possible evaluation error.
ExprPtr fold_expr(const ExprPtr& e);

// -------------------------------------------------------------- pDL formulas

struct PdlFormula;
using PdlFormulaPtr = std::shared_ptr<const PdlFormula>;

struct PdlFormula {
  struct State { FormulaPtr formula; };
  struct Box { StmtPtr program; Probability bound; PdlFormulaPtr body; };
  struct Updated { UpdateList updates; PdlFormulaPtr body; };

  std::variant<State, Box, Updated> node;

  static PdlFormulaPtr state(FormulaPtr f);
  static PdlFormulaPtr box(StmtPtr program, Probability bound, PdlFormulaPtr body);
  static PdlFormulaPtr updated(UpdateList updates, PdlFormulaPtr body);
};

// Satisfaction with boxes decided through the operational semantics. Box
// bodies must be state formulas, possibly under updates (no nested boxes).
// Throws InexactBudget when loop truncation leaves the answer open.
bool sat_pdl(const Valuation& env, const PdlFormula& f, unsigned unroll_budget);

}  // namespace pdl
