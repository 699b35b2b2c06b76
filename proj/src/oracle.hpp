#pragma once

#include <string>
#include <vector>

#include "formula.hpp"

namespace pdl {

// One state of the operational semantics: a valuation paired with the
// remaining program. Final configurations carry the single statement skip.
struct Config {
  Valuation valuation;
  StmtPtr program;
};

bool is_final(const Config& c);

struct Successors {
  struct Final {};
  struct Det { Config next; };
  struct Demonic { Config left; Config right; };
  struct Prob { std::vector<std::pair<Rational, Config>> branches; };

  std::variant<Final, Det, Demonic, Prob> node;
};

// One small-step transition. Deterministic statements give Det, demonic
// choice exposes both actions, probabilistic choice gives the distribution.
Successors step(const Config& c);

// True when the next transition of c enters a loop body (the guard of a
// leading while evaluates to true). Such steps consume unroll budget.
bool is_loop_entry(const Config& c);

struct OracleResult {
  Rational lower_bound;    // inf over demonic resolutions, truncated paths score 0
  Rational residual_mass;  // probability still unterminated at the budget
  bool exact;              // residual_mass == 0
};

OracleResult expectation(const StmtPtr& program, const Valuation& initial,
                         const FormulaPtr& post, unsigned unroll_budget);

struct PathRow {
  Rational probability;
  Valuation final_valuation;
  bool truncated;
  std::string decisions;  // demonic branch indices in visit order, e.g. "01"
};

// All paths over all demonic resolutions, annotated with their choice
// strings. For each fixed resolution the row probabilities sum to 1.
std::vector<PathRow> enumerate_paths(const StmtPtr& program, const Valuation& initial,
                                     unsigned unroll_budget);

}  // namespace pdl
