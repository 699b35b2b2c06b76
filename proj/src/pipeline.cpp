#include "pipeline.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

#include "errors.hpp"

namespace pdl {
namespace {

using OrderedJson = nlohmann::ordered_json;

Judgment root_judgment(const VerificationTask& task) {
  Judgment j;
  j.gamma = split_conjuncts(task.assume);
  j.program = task.body;
  j.post = task.ensures;
  return j;
}

}  // namespace

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Proved: return "PROVED";
    case VerdictStatus::RefutedBySolver: return "REFUTED_BY_SOLVER";
    case VerdictStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Verdict verify_task(const VerificationTask& task, unsigned unroll_budget) {
  auto started = std::chrono::steady_clock::now();

  TypeEnv types = input_types(task);
  ProofStats stats;
  Verdict v;
  v.tree = prove(root_judgment(task), unroll_budget, types, stats);
  v.constraints = collect_constraints(v.tree);
  v.constraints.push_back(
      {ProbConstraint::TargetLB{ProbVarId{}, task.prob_bound}});

  SolveResult solved = max_feasible(v.constraints);
  v.claimed = task.prob_bound;
  v.max_provable = solved.consistent ? solved.witness : Rational(0);
  v.saw_undecided = stats.saw_undecided;
  v.saw_budget_exhausted = stats.saw_budget_exhausted;
  v.undecided_queries = stats.undecided_queries;

  if (v.max_provable >= v.claimed) {
    v.status = VerdictStatus::Proved;
  } else if (v.saw_undecided || v.saw_budget_exhausted) {
    v.status = VerdictStatus::Inconclusive;
  } else {
    v.status = VerdictStatus::RefutedBySolver;
  }

  auto elapsed = std::chrono::steady_clock::now() - started;
  v.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return v;
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  out << "status: " << to_string(v.status) << "\n";
  out << "claimed: " << to_string(v.claimed) << "\n";
  out << "max provable: " << to_string(v.max_provable) << "\n";
  out << "elapsed ms: " << v.elapsed_ms << "\n";
  if (v.status == VerdictStatus::Inconclusive) {
    if (v.saw_budget_exhausted) {
      out << "note: a loop exhausted the unroll budget; retry with a larger "
             "--unroll\n";
    }
    if (v.saw_undecided) {
      out << "note: " << v.undecided_queries.size()
          << " validity check(s) were undecided; add @assume bounds on the "
             "inputs involved\n";
    }
  }
  return out.str();
}

std::string verdict_json(const Verdict& v) {
  OrderedJson out;
  out["status"] = to_string(v.status);
  out["claimed"] = to_string(v.claimed);
  out["maxProvable"] = to_string(v.max_provable);
  out["elapsedMs"] = v.elapsed_ms;
  return out.dump(2) + "\n";
}

namespace {

// Initial states admitted by the bindings and @assume. With every input
// bound the state is taken verbatim; otherwise the unbound inputs range over
// the finite domains @assume implies and @assume filters the combinations.
std::vector<Valuation> initial_states(const VerificationTask& task,
                                      const Bindings& bindings) {
  TypeEnv types = input_types(task);
  for (const auto& [name, value] : bindings) {
    auto it = types.find(name);
    if (it == types.end()) {
      throw Error(ErrorKind::BadInput, "binding for unknown input '" + name + "'");
    }
    if (it->second != value.is_bool()) {
      throw Error(ErrorKind::BadInput,
                  "binding for '" + name + "' has the wrong type; input is " +
                      (it->second ? "bool" : "int"));
    }
  }

  Valuation bound;
  std::vector<std::string> unbound;
  for (const InputDecl& d : task.inputs) {
    auto it = bindings.find(d.name);
    if (it != bindings.end()) {
      bound.set(d.name, it->second);
    } else {
      unbound.push_back(d.name);
    }
  }
  if (unbound.empty()) return {bound};

  std::set<std::string> wanted(unbound.begin(), unbound.end());
  auto domains = derive_domains(split_conjuncts(task.assume), wanted, types);
  if (!domains) {
    std::string names;
    for (const std::string& n : unbound) {
      if (!names.empty()) names += ", ";
      names += n;
    }
    throw Error(ErrorKind::BadInput,
                "cannot enumerate initial states: bind or bound " + names);
  }

  std::vector<Valuation> out;
  std::vector<Valuation> frontier{bound};
  for (const std::string& name : unbound) {
    const Domain& d = domains->at(name);
    std::vector<Valuation> next;
    for (const Valuation& env : frontier) {
      if (d.is_bool) {
        next.push_back(env.with(name, Value::boolean(false)));
        next.push_back(env.with(name, Value::boolean(true)));
      } else {
        for (Int v = d.lo; v <= d.hi; ++v) {
          next.push_back(env.with(name, Value::integer(v)));
        }
      }
    }
    frontier = std::move(next);
  }
  for (const Valuation& env : frontier) {
    if (sat_state_formula(env, *task.assume)) out.push_back(env);
  }
  if (out.empty()) {
    throw Error(ErrorKind::BadInput,
                "no initial state satisfies @assume under the given bindings");
  }
  return out;
}

}  // namespace

OracleRun oracle_task(const VerificationTask& task, const Bindings& bindings,
                      unsigned unroll_budget) {
  OracleRun run;
  run.all_exact = true;
  bool first = true;
  for (const Valuation& initial : initial_states(task, bindings)) {
    OracleResult r = expectation(task.body, initial, task.ensures, unroll_budget);
    if (first || r.lower_bound < run.min_lower_bound) {
      run.min_lower_bound = r.lower_bound;
    }
    first = false;
    run.all_exact = run.all_exact && r.exact;
    run.rows.push_back({initial, r});
  }
  return run;
}

std::string oracle_text(const OracleRun& run) {
  std::ostringstream out;
  for (const OracleRun::Row& row : run.rows) {
    out << "initial " << row.initial.str() << ": lower bound "
        << to_string(row.result.lower_bound);
    if (row.result.exact) {
      out << " (exact)";
    } else {
      out << ", residual " << to_string(row.result.residual_mass);
    }
    out << "\n";
  }
  out << "minimum lower bound: " << to_string(run.min_lower_bound) << "\n";
  out << "all exact: " << (run.all_exact ? "yes" : "no") << "\n";
  return out.str();
}

std::string oracle_json(const OracleRun& run) {
  OrderedJson rows = OrderedJson::array();
  for (const OracleRun::Row& row : run.rows) {
    OrderedJson initial = OrderedJson::object();
    for (const auto& [name, value] : row.initial) {
      initial[name] = value.str();
    }
    OrderedJson entry;
    entry["initial"] = std::move(initial);
    entry["lowerBound"] = to_string(row.result.lower_bound);
    entry["residual"] = to_string(row.result.residual_mass);
    entry["exact"] = row.result.exact;
    rows.push_back(std::move(entry));
  }
  OrderedJson out;
  out["rows"] = std::move(rows);
  out["minLowerBound"] = to_string(run.min_lower_bound);
  out["allExact"] = run.all_exact;
  return out.dump(2) + "\n";
}

std::string paths_text(const VerificationTask& task, const Bindings& bindings,
                       unsigned unroll_budget) {
  for (const InputDecl& d : task.inputs) {
    if (!bindings.count(d.name)) {
      throw Error(ErrorKind::BadInput,
                  "path enumeration needs every input bound; missing '" +
                      d.name + "'");
    }
  }
  std::vector<Valuation> states = initial_states(task, bindings);
  const Valuation& initial = states.front();

  std::vector<PathRow> rows = enumerate_paths(task.body, initial, unroll_budget);
  std::ostringstream out;
  out << "initial " << initial.str() << "\n";
  for (const PathRow& row : rows) {
    out << "probability " << to_string(row.probability) << " | decisions ";
    out << (row.decisions.empty() ? "-" : row.decisions);
    out << " | " << row.final_valuation.str();
    if (row.truncated) out << " | truncated";
    out << "\n";
  }
  return out.str();
}

}  // namespace pdl
