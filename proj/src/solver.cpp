#include "solver.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace pdl {

std::string ProbVarId::str() const {
  bool digits = std::all_of(path.begin(), path.end(), [](int i) { return i >= 0 && i <= 9; });
  std::string out = "p";
  for (int i : path) {
    if (digits) {
      out += static_cast<char>('0' + i);
    } else {
      out += "_" + std::to_string(i);
    }
  }
  return out;
}

ProbVarId ProbVarId::child(int index) const {
  ProbVarId c = *this;
  c.path.push_back(index);
  return c;
}

std::string to_string(const ProbConstraint& c) {
  if (const auto* eq = std::get_if<ProbConstraint::LeafEq>(&c.node)) {
    return eq->var.str() + " = " + to_string(eq->value);
  }
  if (const auto* m = std::get_if<ProbConstraint::MinUB>(&c.node)) {
    std::string out = m->var.str() + " <= min(";
    for (std::size_t i = 0; i < m->args.size(); ++i) {
      if (i > 0) out += ", ";
      out += m->args[i].str();
    }
    return out + ")";
  }
  if (const auto* a = std::get_if<ProbConstraint::AffineUB>(&c.node)) {
    return a->var.str() + " <= " + to_string(a->coeff) + " * " + a->left.str() + " + " +
           to_string(Rational(1) - a->coeff) + " * " + a->right.str();
  }
  const auto& t = std::get<ProbConstraint::TargetLB>(c.node);
  return t.var.str() + " >= " + to_string(t.bound);
}

namespace {

void validate(const ProbConstraint& c) {
  if (const auto* eq = std::get_if<ProbConstraint::LeafEq>(&c.node)) {
    if (eq->value != 0 && eq->value != 1) {
      throw Error(ErrorKind::MalformedConstraint,
                  "leaf pin must be 0 or 1, got " + to_string(eq->value));
    }
    return;
  }
  if (const auto* m = std::get_if<ProbConstraint::MinUB>(&c.node)) {
    if (m->args.empty()) {
      throw Error(ErrorKind::MalformedConstraint, "min constraint needs arguments");
    }
    return;
  }
  if (const auto* a = std::get_if<ProbConstraint::AffineUB>(&c.node)) {
    if (a->coeff < 0 || a->coeff > 1) {
      throw Error(ErrorKind::MalformedConstraint,
                  "affine coefficient " + to_string(a->coeff) + " is outside [0, 1]");
    }
    return;
  }
  const auto& t = std::get<ProbConstraint::TargetLB>(c.node);
  if (t.bound < 0 || t.bound > 1) {
    throw Error(ErrorKind::MalformedConstraint,
                "target bound " + to_string(t.bound) + " is outside [0, 1]");
  }
}

void collect_vars(const ProbConstraint& c, std::set<ProbVarId>& out) {
  if (const auto* eq = std::get_if<ProbConstraint::LeafEq>(&c.node)) {
    out.insert(eq->var);
  } else if (const auto* m = std::get_if<ProbConstraint::MinUB>(&c.node)) {
    out.insert(m->var);
    out.insert(m->args.begin(), m->args.end());
  } else if (const auto* a = std::get_if<ProbConstraint::AffineUB>(&c.node)) {
    out.insert(a->var);
    out.insert(a->left);
    out.insert(a->right);
  } else {
    out.insert(std::get<ProbConstraint::TargetLB>(c.node).var);
  }
}

class CapSolver {
 public:
  explicit CapSolver(const std::vector<ProbConstraint>& constraints) {
    for (const auto& c : constraints) {
      validate(c);
      if (const auto* eq = std::get_if<ProbConstraint::LeafEq>(&c.node)) {
        bounds_[eq->var].push_back(&c);
      } else if (const auto* m = std::get_if<ProbConstraint::MinUB>(&c.node)) {
        bounds_[m->var].push_back(&c);
      } else if (const auto* a = std::get_if<ProbConstraint::AffineUB>(&c.node)) {
        bounds_[a->var].push_back(&c);
      }
    }
  }

  Rational cap(const ProbVarId& v) {
    auto memo = caps_.find(v);
    if (memo != caps_.end()) return memo->second;
    if (!in_progress_.insert(v).second) {
      throw Error(ErrorKind::CyclicConstraints,
                  "constraint cycle through variable " + v.str());
    }
    Rational c = 1;
    auto it = bounds_.find(v);
    if (it != bounds_.end()) {
      for (const ProbConstraint* pc : it->second) {
        if (const auto* eq = std::get_if<ProbConstraint::LeafEq>(&pc->node)) {
          c = std::min(c, eq->value);
        } else if (const auto* m = std::get_if<ProbConstraint::MinUB>(&pc->node)) {
          for (const auto& arg : m->args) c = std::min(c, cap(arg));
        } else {
          const auto& a = std::get<ProbConstraint::AffineUB>(pc->node);
          c = std::min(c, a.coeff * cap(a.left) + (Rational(1) - a.coeff) * cap(a.right));
        }
      }
    }
    in_progress_.erase(v);
    caps_[v] = c;
    return c;
  }

  const std::map<ProbVarId, Rational>& caps() const { return caps_; }

 private:
  std::map<ProbVarId, std::vector<const ProbConstraint*>> bounds_;
  std::map<ProbVarId, Rational> caps_;
  std::set<ProbVarId> in_progress_;
};

}  // namespace

SolveResult max_feasible(const std::vector<ProbConstraint>& constraints) {
  std::set<ProbVarId> vars;
  for (const auto& c : constraints) collect_vars(c, vars);
  vars.insert(ProbVarId{});

  CapSolver solver(constraints);
  for (const auto& v : vars) solver.cap(v);
  std::map<ProbVarId, Rational> assignment = solver.caps();

  bool consistent = true;
  for (const auto& c : constraints) {
    if (const auto* eq = std::get_if<ProbConstraint::LeafEq>(&c.node)) {
      if (assignment.at(eq->var) != eq->value) consistent = false;
    }
  }
  bool feasible = consistent;
  for (const auto& c : constraints) {
    if (const auto* t = std::get_if<ProbConstraint::TargetLB>(&c.node)) {
      if (assignment.at(t->var) < t->bound) feasible = false;
    }
  }
  return {feasible, consistent, assignment.at(ProbVarId{}), std::move(assignment)};
}

namespace {

const Rational& lookup(const std::map<ProbVarId, Rational>& assignment, const ProbVarId& v) {
  auto it = assignment.find(v);
  if (it == assignment.end()) {
    throw Error(ErrorKind::MissingVariable, "assignment lacks variable " + v.str());
  }
  return it->second;
}

}  // namespace

bool check_assignment(const std::vector<ProbConstraint>& constraints,
                      const std::map<ProbVarId, Rational>& assignment) {
  for (const auto& c : constraints) {
    if (const auto* eq = std::get_if<ProbConstraint::LeafEq>(&c.node)) {
      if (lookup(assignment, eq->var) != eq->value) return false;
    } else if (const auto* m = std::get_if<ProbConstraint::MinUB>(&c.node)) {
      const Rational& v = lookup(assignment, m->var);
      for (const auto& arg : m->args) {
        if (v > lookup(assignment, arg)) return false;
      }
    } else if (const auto* a = std::get_if<ProbConstraint::AffineUB>(&c.node)) {
      Rational rhs = a->coeff * lookup(assignment, a->left) +
                     (Rational(1) - a->coeff) * lookup(assignment, a->right);
      if (lookup(assignment, a->var) > rhs) return false;
    } else {
      const auto& t = std::get<ProbConstraint::TargetLB>(c.node);
      if (lookup(assignment, t.var) < t.bound) return false;
    }
  }
  return true;
}

namespace {

std::string smt_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return "(/ " + numerator(r).str() + " " + denominator(r).str() + ")";
}

}  // namespace

std::string emit_smtlib(const std::vector<ProbConstraint>& constraints, const Rational& target) {
  std::set<ProbVarId> vars;
  for (const auto& c : constraints) collect_vars(c, vars);
  vars.insert(ProbVarId{});

  std::vector<std::string> names;
  names.reserve(vars.size());
  for (const auto& v : vars) names.push_back(v.str());
  std::sort(names.begin(), names.end());

  std::string out = "(set-logic QF_LRA)\n";
  for (const auto& n : names) out += "(declare-const " + n + " Real)\n";
  for (const auto& n : names) {
    out += "(assert (<= 0 " + n + "))\n";
    out += "(assert (<= " + n + " 1))\n";
  }
  for (const auto& c : constraints) {
    if (const auto* eq = std::get_if<ProbConstraint::LeafEq>(&c.node)) {
      out += "(assert (= " + eq->var.str() + " " + smt_rational(eq->value) + "))\n";
    } else if (const auto* m = std::get_if<ProbConstraint::MinUB>(&c.node)) {
      for (const auto& arg : m->args) {
        out += "(assert (<= " + m->var.str() + " " + arg.str() + "))\n";
      }
    } else if (const auto* a = std::get_if<ProbConstraint::AffineUB>(&c.node)) {
      out += "(assert (<= " + a->var.str() + " (+ (* " + smt_rational(a->coeff) + " " +
             a->left.str() + ") (* " + smt_rational(Rational(1) - a->coeff) + " " +
             a->right.str() + "))))\n";
    } else {
      const auto& t = std::get<ProbConstraint::TargetLB>(c.node);
      out += "(assert (>= " + t.var.str() + " " + smt_rational(t.bound) + "))\n";
    }
  }
  out += "(assert (>= " + ProbVarId{}.str() + " " + smt_rational(target) + "))\n";
  out += "(check-sat)\n";
  return out;
}

}  // namespace pdl
