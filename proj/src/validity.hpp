#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "formula.hpp"

namespace pdl {

enum class Truth { Valid, Invalid, Undecided };
enum class Satisfiability { Sat, Unsat, Undecided };

// Declared input variable types: name -> true when boolean.
using TypeEnv = std::map<std::string, bool>;

// Splits nested conjunctions into a flat list.
std::vector<FormulaPtr> split_conjuncts(const FormulaPtr& f);

struct Domain {
  bool is_bool = false;
  Int lo;  // inclusive, ints only
  Int hi;
};

// Finite per-variable domains implied by gamma's top-level conjuncts
// (equalities and inequalities against integer literals, optionally under a
// single negation). Booleans always get {false, true}. Returns nullopt when
// a variable stays unbounded or the assignment space exceeds max_product.
std::optional<std::map<std::string, Domain>> derive_domains(
    const std::vector<FormulaPtr>& gamma, const std::set<std::string>& vars,
    const TypeEnv& types, std::size_t max_product = 4096);

// Decides whether /\gamma -> goal holds for all valuations by enumerating
// the gamma-implied finite domains; Undecided when no strategy applies.
Truth check_validity(const std::vector<FormulaPtr>& gamma, const FormulaPtr& goal,
                     const TypeEnv& types);

Satisfiability check_sat(const std::vector<FormulaPtr>& gamma, const TypeEnv& types);

// SMT-LIB2 rendering of the validity question (unsat answer = entailment
// holds) for handing to an external solver; never consumed internally.
std::string validity_query_smtlib(const std::vector<FormulaPtr>& gamma, const FormulaPtr& goal,
                                  const TypeEnv& types);

}  // namespace pdl
