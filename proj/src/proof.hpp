#pragma once

#include <string>
#include <vector>

#include "formula.hpp"
#include "solver.hpp"
#include "validity.hpp"

namespace pdl {

// One proof obligation: gamma |- {updates}<program>_pvar post.
struct Judgment {
  std::vector<FormulaPtr> gamma;
  UpdateList updates;
  StmtPtr program;  // remaining program; the terminal form is a lone skip
  ProbVarId pvar;
  FormulaPtr post;
};

enum class RuleKind {
  Skip,
  Assign,
  Empty1,
  Empty0,
  DemonChoice,
  ProbChoice,
  If,
  LoopUnroll,
  CloseInfeasible,
  BudgetExhausted,
};

const char* rule_name(RuleKind rule);

struct ProofNode {
  Judgment judgment;
  RuleKind rule;
  bool undecided = false;  // leaf validity check could not be decided
  std::vector<ProbConstraint> emitted;
  std::vector<ProofNode> children;
};

struct ProofStats {
  bool saw_undecided = false;
  bool saw_budget_exhausted = false;
  // SMT-LIB queries for the checks that came back undecided.
  std::vector<std::string> undecided_queries;
};

// Builds the proof tree by forward symbolic execution. Deterministic in
// (root, unroll_budget); stats report what degraded the result.
ProofNode prove(const Judgment& root, unsigned unroll_budget, const TypeEnv& types,
                ProofStats& stats);

// Pre-order concatenation of every node's emitted constraints.
std::vector<ProbConstraint> collect_constraints(const ProofNode& root);

std::string render_tree_text(const ProofNode& root);
std::string render_tree_json(const ProofNode& root);

}  // namespace pdl
