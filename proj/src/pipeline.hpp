#pragma once

#include <map>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "parser.hpp"
#include "proof.hpp"

namespace pdl {

enum class VerdictStatus { Proved, RefutedBySolver, Inconclusive };

const char* to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status;
  Rational claimed;
  Rational max_provable;  // 0 when the constraint system is inconsistent
  long long elapsed_ms;
  bool saw_undecided;
  bool saw_budget_exhausted;
  ProofNode tree;
  std::vector<ProbConstraint> constraints;  // proof constraints + target bound
  std::vector<std::string> undecided_queries;
};

// Runs the proof calculus on the task and solves the resulting constraint
// system. PROVED requires max_provable >= claimed; otherwise the verdict is
// INCONCLUSIVE when an undecided check or exhausted unroll budget weakened
// the tree, and REFUTED_BY_SOLVER when the system itself caps the claim.
Verdict verify_task(const VerificationTask& task, unsigned unroll_budget);

std::string verdict_text(const Verdict& v);
std::string verdict_json(const Verdict& v);

// ------------------------------------------------------------- oracle runs

using Bindings = std::map<std::string, Value>;

struct OracleRun {
  struct Row {
    Valuation initial;
    OracleResult result;
  };
  std::vector<Row> rows;       // one per admitted initial state
  Rational min_lower_bound;
  bool all_exact;
};

// Evaluates the exact operational semantics from every initial state that
// the bindings and @assume admit. When every input is bound the single given
// state is used as-is; otherwise unbound inputs are enumerated over the
// finite domains @assume implies and filtered by @assume.
OracleRun oracle_task(const VerificationTask& task, const Bindings& bindings,
                      unsigned unroll_budget);

std::string oracle_text(const OracleRun& run);
std::string oracle_json(const OracleRun& run);

// Path table for one fully bound initial state.
std::string paths_text(const VerificationTask& task, const Bindings& bindings,
                       unsigned unroll_budget);

}  // namespace pdl
