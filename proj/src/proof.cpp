#include "proof.hpp"

#include <json.hpp>

#include "errors.hpp"

namespace pdl {

const char* rule_name(RuleKind rule) {
  switch (rule) {
    case RuleKind::Skip: return "skip";
    case RuleKind::Assign: return "assign";
    case RuleKind::Empty1: return "empty1";
    case RuleKind::Empty0: return "empty0";
    case RuleKind::DemonChoice: return "demonChoice";
    case RuleKind::ProbChoice: return "probChoice";
    case RuleKind::If: return "if";
    case RuleKind::LoopUnroll: return "loopUnroll";
    case RuleKind::CloseInfeasible: return "closeInfeasible";
    case RuleKind::BudgetExhausted: return "budgetExhausted";
  }
  return "?";
}

namespace {

// Splits a program into its first statement and the remaining program
// (nullptr when nothing follows).
std::pair<StmtPtr, StmtPtr> decompose(const StmtPtr& s) {
  if (const auto* q = std::get_if<Stmt::Seq>(&s->node)) {
    auto [head, rest] = decompose(q->first);
    return {head, rest ? Stmt::seq(rest, q->second) : q->second};
  }
  return {s, nullptr};
}

StmtPtr prepend(const StmtPtr& head, const StmtPtr& rest) {
  return rest ? Stmt::seq(head, rest) : head;
}

// Directly nested demonic choices are grouped into one n-ary application so
// a three-way choice emits a single p <= min(p0, p1, p2).
void flatten_demonic(const StmtPtr& s, std::vector<StmtPtr>& out) {
  if (const auto* d = std::get_if<Stmt::Demonic>(&s->node)) {
    flatten_demonic(d->left, out);
    flatten_demonic(d->right, out);
    return;
  }
  out.push_back(s);
}

class Engine {
 public:
  Engine(const TypeEnv& types, ProofStats& stats) : types_(types), stats_(stats) {}

  ProofNode run(Judgment j, unsigned budget) {
    if (check_sat(j.gamma, types_) == Satisfiability::Unsat) {
      return ProofNode{std::move(j), RuleKind::CloseInfeasible, false, {}, {}};
    }
    auto [head, rest] = decompose(j.program);

    if (std::holds_alternative<Stmt::Skip>(head->node)) {
      if (rest == nullptr) return leaf(std::move(j));
      Judgment child = j;
      child.program = rest;
      return node(std::move(j), RuleKind::Skip, {}, {run(std::move(child), budget)});
    }
    if (const auto* a = std::get_if<Stmt::Assign>(&head->node)) {
      ExprPtr term = apply_update_to_expr(j.updates, a->expr);
      Judgment child = j;
      child.updates.push_back({a->var, std::move(term)});
      child.program = rest ? rest : Stmt::skip();
      return node(std::move(j), RuleKind::Assign, {}, {run(std::move(child), budget)});
    }
    if (std::holds_alternative<Stmt::Demonic>(head->node)) {
      std::vector<StmtPtr> operands;
      flatten_demonic(head, operands);
      int base = allocate_indices(j.pvar, operands.size());
      std::vector<ProbVarId> vars;
      std::vector<ProofNode> children;
      vars.reserve(operands.size());
      children.reserve(operands.size());
      for (std::size_t i = 0; i < operands.size(); ++i) {
        Judgment child = j;
        child.pvar = j.pvar.child(base + static_cast<int>(i));
        child.program = prepend(operands[i], rest);
        vars.push_back(child.pvar);
        children.push_back(run(std::move(child), budget));
      }
      ProbConstraint c{ProbConstraint::MinUB{j.pvar, std::move(vars)}};
      return node(std::move(j), RuleKind::DemonChoice, {std::move(c)}, std::move(children));
    }
    if (const auto* p = std::get_if<Stmt::Prob>(&head->node)) {
      int base = allocate_indices(j.pvar, 2);
      Judgment left = j;
      left.pvar = j.pvar.child(base);
      left.program = prepend(p->left, rest);
      Judgment right = j;
      right.pvar = j.pvar.child(base + 1);
      right.program = prepend(p->right, rest);
      ProbConstraint c{
          ProbConstraint::AffineUB{j.pvar, p->prob.value(), left.pvar, right.pvar}};
      std::vector<ProofNode> children;
      children.push_back(run(std::move(left), budget));
      children.push_back(run(std::move(right), budget));
      return node(std::move(j), RuleKind::ProbChoice, {std::move(c)}, std::move(children));
    }
    if (const auto* i = std::get_if<Stmt::If>(&head->node)) {
      FormulaPtr guard = StateFormula::atom(apply_update_to_expr(j.updates, i->guard));
      Judgment then_child = j;
      then_child.gamma.push_back(guard);
      then_child.program = prepend(i->then_branch, rest);
      Judgment else_child = j;
      else_child.gamma.push_back(StateFormula::negation(guard));
      else_child.program = prepend(i->else_branch, rest);
      std::vector<ProofNode> children;
      children.push_back(run(std::move(then_child), budget));
      children.push_back(run(std::move(else_child), budget));
      return node(std::move(j), RuleKind::If, {}, std::move(children));
    }
    const auto& w = std::get<Stmt::While>(head->node);
    FormulaPtr guard = StateFormula::atom(apply_update_to_expr(j.updates, w.guard));
    bool guard_false =
        check_validity(j.gamma, StateFormula::negation(guard), types_) == Truth::Valid;
    if (!guard_false && budget == 0) {
      stats_.saw_budget_exhausted = true;
      ProbConstraint c{ProbConstraint::LeafEq{j.pvar, Rational(0)}};
      return node(std::move(j), RuleKind::BudgetExhausted, {std::move(c)}, {});
    }
    StmtPtr unrolled =
        Stmt::if_else(w.guard, Stmt::seq(w.body, head), Stmt::skip());
    Judgment child = j;
    child.program = prepend(unrolled, rest);
    unsigned child_budget = guard_false ? budget : budget - 1;
    return node(std::move(j), RuleKind::LoopUnroll, {}, {run(std::move(child), child_budget)});
  }

 private:
  ProofNode leaf(Judgment j) {
    FormulaPtr goal = apply_update_to_formula(j.updates, j.post);
    Truth t = check_validity(j.gamma, goal, types_);
    if (t == Truth::Valid) {
      ProbConstraint c{ProbConstraint::LeafEq{j.pvar, Rational(1)}};
      return node(std::move(j), RuleKind::Empty1, {std::move(c)}, {});
    }
    bool undecided = t == Truth::Undecided;
    if (undecided) {
      stats_.saw_undecided = true;
      stats_.undecided_queries.push_back(validity_query_smtlib(j.gamma, goal, types_));
    }
    ProbConstraint c{ProbConstraint::LeafEq{j.pvar, Rational(0)}};
    ProofNode n = node(std::move(j), RuleKind::Empty0, {std::move(c)}, {});
    n.undecided = undecided;
    return n;
  }

  static ProofNode node(Judgment j, RuleKind rule, std::vector<ProbConstraint> emitted,
                        std::vector<ProofNode> children) {
    return ProofNode{std::move(j), rule, false, std::move(emitted), std::move(children)};
  }

  // Branch children under one pvar take consecutive indices, so ids stay
  // unique even when both arms of an if (which share a pvar) branch again.
  int allocate_indices(const ProbVarId& pvar, std::size_t count) {
    int& next = next_child_index_[pvar.path];
    int base = next;
    next += static_cast<int>(count);
    return base;
  }

  const TypeEnv& types_;
  ProofStats& stats_;
  std::map<std::vector<int>, int> next_child_index_;
};

}  // namespace

ProofNode prove(const Judgment& root, unsigned unroll_budget, const TypeEnv& types,
                ProofStats& stats) {
  Engine engine(types, stats);
  return engine.run(root, unroll_budget);
}

namespace {

void collect_rec(const ProofNode& n, std::vector<ProbConstraint>& out) {
  out.insert(out.end(), n.emitted.begin(), n.emitted.end());
  for (const auto& child : n.children) collect_rec(child, out);
}

std::string truncate(std::string s, std::size_t limit) {
  if (s.size() <= limit) return s;
  s.resize(limit);
  return s + "...";
}

std::string gamma_text(const std::vector<FormulaPtr>& gamma) {
  if (gamma.empty()) return "-";
  std::string out;
  for (const auto& g : gamma) {
    if (!out.empty()) out += ", ";
    out += to_string(*g);
  }
  return out;
}

void render_text_rec(const ProofNode& n, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += rule_name(n.rule);
  out += " ";
  out += n.judgment.pvar.str();
  out += " | gamma: " + gamma_text(n.judgment.gamma);
  out += " | updates: ";
  out += n.judgment.updates.empty() ? "-" : to_string(n.judgment.updates);
  out += " | program: " + truncate(to_string(*n.judgment.program), 60);
  if (!n.emitted.empty()) {
    out += " | emits: ";
    for (std::size_t i = 0; i < n.emitted.size(); ++i) {
      if (i > 0) out += "; ";
      out += to_string(n.emitted[i]);
    }
  }
  if (n.undecided) out += " | undecided";
  out += "\n";
  for (const auto& child : n.children) render_text_rec(child, depth + 1, out);
}

nlohmann::ordered_json tree_json(const ProofNode& n) {
  nlohmann::ordered_json j;
  j["rule"] = rule_name(n.rule);
  j["pvar"] = n.judgment.pvar.str();
  auto gamma = nlohmann::ordered_json::array();
  for (const auto& g : n.judgment.gamma) gamma.push_back(to_string(*g));
  j["gamma"] = std::move(gamma);
  auto updates = nlohmann::ordered_json::array();
  for (const auto& u : n.judgment.updates) {
    updates.push_back(u.var + " -> " + to_string(*u.term));
  }
  j["updates"] = std::move(updates);
  j["program"] = to_string(*n.judgment.program);
  auto constraints = nlohmann::ordered_json::array();
  for (const auto& c : n.emitted) constraints.push_back(to_string(c));
  j["constraints"] = std::move(constraints);
  if (n.undecided) j["undecided"] = true;
  auto children = nlohmann::ordered_json::array();
  for (const auto& child : n.children) children.push_back(tree_json(child));
  j["children"] = std::move(children);
  return j;
}

}  // namespace

std::vector<ProbConstraint> collect_constraints(const ProofNode& root) {
  std::vector<ProbConstraint> out;
  collect_rec(root, out);
  return out;
}

std::string render_tree_text(const ProofNode& root) {
  std::string out;
  render_text_rec(root, 0, out);
  return out;
}

std::string render_tree_json(const ProofNode& root) {
  return tree_json(root).dump(2) + "\n";
}

}  // namespace pdl
