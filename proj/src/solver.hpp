#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rational.hpp"

namespace pdl {

// Identifies a probability variable by its branch-index path from the root:
// [] prints "p", [0, 2] prints "p02".
struct ProbVarId {
  std::vector<int> path;

  std::string str() const;
  ProbVarId child(int index) const;

  bool operator==(const ProbVarId& other) const { return path == other.path; }
  bool operator<(const ProbVarId& other) const { return path < other.path; }
};

struct ProbConstraint {
  // var = value with value 0 or 1 (leaf rules).
  struct LeafEq { ProbVarId var; Rational value; };
  // var <= min(args); binary for a plain demonic choice, wider when directly
  // nested demonic choices are grouped into one rule application.
  struct MinUB { ProbVarId var; std::vector<ProbVarId> args; };
  // var <= coeff*left + (1-coeff)*right.
  struct AffineUB { ProbVarId var; Rational coeff; ProbVarId left; ProbVarId right; };
  // var >= bound (the claimed lower bound on the root).
  struct TargetLB { ProbVarId var; Rational bound; };

  std::variant<LeafEq, MinUB, AffineUB, TargetLB> node;
};

std::string to_string(const ProbConstraint& c);

struct SolveResult {
  bool feasible;    // consistent and every TargetLB met by the max assignment
  bool consistent;  // every LeafEq pin holds at the max assignment
  Rational witness; // maximal value of the root variable
  std::map<ProbVarId, Rational> max_assignment;
};

// Pointwise-maximal assignment of the acyclic constraint system: caps
// propagate bottom-up through min and affine combinations, unconstrained
// variables take 1, LeafEq pins cap their variable at the pinned value.
SolveResult max_feasible(const std::vector<ProbConstraint>& constraints);

// Validates an assignment by direct substitution with exact rationals.
bool check_assignment(const std::vector<ProbConstraint>& constraints,
                      const std::map<ProbVarId, Rational>& assignment);

// QF_LRA script over [0,1]-bounded reals; byte-deterministic. The target
// becomes an assertion that the root variable reaches at least that bound.
std::string emit_smtlib(const std::vector<ProbConstraint>& constraints, const Rational& target);

}  // namespace pdl
