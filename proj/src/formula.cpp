#include "formula.hpp"

#include <map>

#include "errors.hpp"
#include "oracle.hpp"

namespace pdl {

FormulaPtr StateFormula::atom(ExprPtr e) {
  return std::make_shared<const StateFormula>(StateFormula{Atom{std::move(e)}});
}
FormulaPtr StateFormula::truth() { return atom(Expr::lit_bool(true)); }
FormulaPtr StateFormula::falsity() { return atom(Expr::lit_bool(false)); }
FormulaPtr StateFormula::negation(FormulaPtr f) {
  return std::make_shared<const StateFormula>(StateFormula{Not{std::move(f)}});
}
FormulaPtr StateFormula::conj(FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<const StateFormula>(StateFormula{And{std::move(lhs), std::move(rhs)}});
}
FormulaPtr StateFormula::disj(FormulaPtr lhs, FormulaPtr rhs) {
  return negation(conj(negation(std::move(lhs)), negation(std::move(rhs))));
}
FormulaPtr StateFormula::implies(FormulaPtr lhs, FormulaPtr rhs) {
  return negation(conj(std::move(lhs), negation(std::move(rhs))));
}
FormulaPtr StateFormula::forall(std::string var, Int lo, Int hi, FormulaPtr body) {
  return std::make_shared<const StateFormula>(
      StateFormula{ForallRange{std::move(var), std::move(lo), std::move(hi), std::move(body)}});
}
FormulaPtr StateFormula::exists(std::string var, Int lo, Int hi, FormulaPtr body) {
  return negation(forall(std::move(var), std::move(lo), std::move(hi), negation(std::move(body))));
}

bool struct_eq(const StateFormula& a, const StateFormula& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* aa = std::get_if<StateFormula::Atom>(&a.node)) {
    return struct_eq(*aa->expr, *std::get<StateFormula::Atom>(b.node).expr);
  }
  if (const auto* na = std::get_if<StateFormula::Not>(&a.node)) {
    return struct_eq(*na->body, *std::get<StateFormula::Not>(b.node).body);
  }
  if (const auto* ca = std::get_if<StateFormula::And>(&a.node)) {
    const auto& cb = std::get<StateFormula::And>(b.node);
    return struct_eq(*ca->lhs, *cb.lhs) && struct_eq(*ca->rhs, *cb.rhs);
  }
  const auto& fa = std::get<StateFormula::ForallRange>(a.node);
  const auto& fb = std::get<StateFormula::ForallRange>(b.node);
  return fa.var == fb.var && fa.lo == fb.lo && fa.hi == fb.hi && struct_eq(*fa.body, *fb.body);
}

namespace {

// Conjunction operands that are not self-delimiting get parenthesized.
std::string render_conj_operand(const StateFormula& f) {
  if (std::holds_alternative<StateFormula::And>(f.node) ||
      std::holds_alternative<StateFormula::ForallRange>(f.node)) {
    return "(" + to_string(f) + ")";
  }
  return to_string(f);
}

}  // namespace

std::string to_string(const StateFormula& f) {
  if (const auto* a = std::get_if<StateFormula::Atom>(&f.node)) {
    return to_string(*a->expr);
  }
  if (const auto* n = std::get_if<StateFormula::Not>(&f.node)) {
    return "!(" + to_string(*n->body) + ")";
  }
  if (const auto* c = std::get_if<StateFormula::And>(&f.node)) {
    return render_conj_operand(*c->lhs) + " && " + render_conj_operand(*c->rhs);
  }
  const auto& q = std::get<StateFormula::ForallRange>(f.node);
  return "forall " + q.var + " in [" + q.lo.str() + ".." + q.hi.str() + "] : " +
         to_string(*q.body);
}

namespace {

void collect_formula_vars(const StateFormula& f, std::set<std::string>& bound,
                          std::set<std::string>& out) {
  if (const auto* a = std::get_if<StateFormula::Atom>(&f.node)) {
    std::set<std::string> vars = free_vars(*a->expr);
    for (const auto& v : vars) {
      if (bound.count(v) == 0) out.insert(v);
    }
    return;
  }
  if (const auto* n = std::get_if<StateFormula::Not>(&f.node)) {
    collect_formula_vars(*n->body, bound, out);
    return;
  }
  if (const auto* c = std::get_if<StateFormula::And>(&f.node)) {
    collect_formula_vars(*c->lhs, bound, out);
    collect_formula_vars(*c->rhs, bound, out);
    return;
  }
  const auto& q = std::get<StateFormula::ForallRange>(f.node);
  bool fresh = bound.insert(q.var).second;
  collect_formula_vars(*q.body, bound, out);
  if (fresh) bound.erase(q.var);
}

}  // namespace

std::set<std::string> free_vars(const StateFormula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_formula_vars(f, bound, out);
  return out;
}

bool sat_state_formula(const Valuation& env, const StateFormula& f) {
  if (const auto* a = std::get_if<StateFormula::Atom>(&f.node)) {
    return eval_expr(*a->expr, env).as_bool();
  }
  if (const auto* n = std::get_if<StateFormula::Not>(&f.node)) {
    return !sat_state_formula(env, *n->body);
  }
  if (const auto* c = std::get_if<StateFormula::And>(&f.node)) {
    return sat_state_formula(env, *c->lhs) && sat_state_formula(env, *c->rhs);
  }
  const auto& q = std::get<StateFormula::ForallRange>(f.node);
  for (Int v = q.lo; v <= q.hi; ++v) {
    if (!sat_state_formula(env.with(q.var, Value::integer(v)), *q.body)) return false;
  }
  return true;
}

std::string to_string(const UpdateList& updates) {
  std::string out;
  for (const auto& u : updates) {
    if (!out.empty()) out += ", ";
    out += u.var + " -> " + to_string(*u.term);
  }
  return out;
}

Valuation apply_update_to_state(const UpdateList& updates, const Valuation& env) {
  Valuation current = env;
  for (const auto& u : updates) {
    Value v = eval_expr(*u.term, current);
    current.set(u.var, std::move(v));
  }
  return current;
}

namespace {

ExprPtr substitute(const std::map<std::string, ExprPtr>& sigma, const ExprPtr& e) {
  if (std::holds_alternative<Expr::Lit>(e->node)) return e;
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    auto it = sigma.find(v->name);
    return it == sigma.end() ? e : it->second;
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e->node)) {
    ExprPtr operand = substitute(sigma, u->operand);
    return operand == u->operand ? e : Expr::unary(u->op, std::move(operand));
  }
  const auto& b = std::get<Expr::Binary>(e->node);
  ExprPtr lhs = substitute(sigma, b.lhs);
  ExprPtr rhs = substitute(sigma, b.rhs);
  if (lhs == b.lhs && rhs == b.rhs) return e;
  return Expr::binary(b.op, std::move(lhs), std::move(rhs));
}

const Value* lit_value(const ExprPtr& e) {
  const auto* l = std::get_if<Expr::Lit>(&e->node);
  return l ? &l->value : nullptr;
}

}  // namespace

ExprPtr fold_expr(const ExprPtr& e) {
  if (std::holds_alternative<Expr::Lit>(e->node) || std::holds_alternative<Expr::Var>(e->node)) {
    return e;
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e->node)) {
    ExprPtr operand = fold_expr(u->operand);
    if (const Value* v = lit_value(operand)) {
      if (u->op == UnOp::Neg && v->is_int()) return Expr::lit_int(-v->as_int());
      if (u->op == UnOp::Not && v->is_bool()) return Expr::lit_bool(!v->as_bool());
    }
    return operand == u->operand ? e : Expr::unary(u->op, std::move(operand));
  }
  const auto& b = std::get<Expr::Binary>(e->node);
  ExprPtr lhs = fold_expr(b.lhs);
  ExprPtr rhs = fold_expr(b.rhs);
  // Left-to-right short-circuit folds are safe: a constant true/false left
  // operand decides && and || before the right operand could fault.
  if (b.op == BinOp::And || b.op == BinOp::Or) {
    if (const Value* lv = lit_value(lhs); lv && lv->is_bool()) {
      bool lb = lv->as_bool();
      if (b.op == BinOp::And) return lb ? rhs : Expr::lit_bool(false);
      return lb ? Expr::lit_bool(true) : rhs;
    }
  } else if (lit_value(lhs) && lit_value(rhs)) {
    ExprPtr folded = Expr::binary(b.op, lhs, rhs);
    try {
      return Expr::lit(eval_expr(*folded, Valuation()));
    } catch (const Error&) {
      // Ill-typed or faulting constants keep their syntactic form so the
      // error still surfaces if the expression is ever evaluated.
      return folded;
    }
  }
  if (lhs == b.lhs && rhs == b.rhs) return e;
  return Expr::binary(b.op, std::move(lhs), std::move(rhs));
}

ExprPtr apply_update_to_expr(const UpdateList& updates, const ExprPtr& e) {
  std::map<std::string, ExprPtr> sigma;
  for (const auto& u : updates) {
    ExprPtr term = fold_expr(substitute(sigma, u.term));
    sigma[u.var] = std::move(term);
  }
  return fold_expr(substitute(sigma, e));
}

FormulaPtr apply_update_to_formula(const UpdateList& updates, const FormulaPtr& f) {
  if (updates.empty()) return f;
  if (const auto* a = std::get_if<StateFormula::Atom>(&f->node)) {
    return StateFormula::atom(apply_update_to_expr(updates, a->expr));
  }
  if (const auto* n = std::get_if<StateFormula::Not>(&f->node)) {
    return StateFormula::negation(apply_update_to_formula(updates, n->body));
  }
  if (const auto* c = std::get_if<StateFormula::And>(&f->node)) {
    return StateFormula::conj(apply_update_to_formula(updates, c->lhs),
                              apply_update_to_formula(updates, c->rhs));
  }
  const auto& q = std::get<StateFormula::ForallRange>(f->node);
  for (const auto& u : updates) {
    if (u.var == q.var || free_vars(*u.term).count(q.var) != 0) {
      throw Error(ErrorKind::Unsupported,
                  "update collides with quantified variable '" + q.var + "'");
    }
  }
  return StateFormula::forall(q.var, q.lo, q.hi, apply_update_to_formula(updates, q.body));
}

PdlFormulaPtr PdlFormula::state(FormulaPtr f) {
  return std::make_shared<const PdlFormula>(PdlFormula{State{std::move(f)}});
}
PdlFormulaPtr PdlFormula::box(StmtPtr program, Probability bound, PdlFormulaPtr body) {
  return std::make_shared<const PdlFormula>(
      PdlFormula{Box{std::move(program), std::move(bound), std::move(body)}});
}
PdlFormulaPtr PdlFormula::updated(UpdateList updates, PdlFormulaPtr body) {
  return std::make_shared<const PdlFormula>(PdlFormula{Updated{std::move(updates), std::move(body)}});
}

namespace {

// Reduces a box body of the shape {U1}...{Un} phi to a single state formula.
FormulaPtr box_body_formula(const PdlFormula& body) {
  UpdateList inner;
  const PdlFormula* cur = &body;
  while (true) {
    if (const auto* s = std::get_if<PdlFormula::State>(&cur->node)) {
      return apply_update_to_formula(inner, s->formula);
    }
    if (const auto* u = std::get_if<PdlFormula::Updated>(&cur->node)) {
      inner.insert(inner.end(), u->updates.begin(), u->updates.end());
      cur = u->body.get();
      continue;
    }
    throw Error(ErrorKind::Unsupported, "nested box modalities are not supported");
  }
}

}  // namespace

bool sat_pdl(const Valuation& env, const PdlFormula& f, unsigned unroll_budget) {
  if (const auto* s = std::get_if<PdlFormula::State>(&f.node)) {
    return sat_state_formula(env, *s->formula);
  }
  if (const auto* u = std::get_if<PdlFormula::Updated>(&f.node)) {
    return sat_pdl(apply_update_to_state(u->updates, env), *u->body, unroll_budget);
  }
  const auto& b = std::get<PdlFormula::Box>(f.node);
  FormulaPtr post = box_body_formula(*b.body);
  OracleResult r = expectation(b.program, env, post, unroll_budget);
  if (b.bound.value() <= r.lower_bound) return true;
  if (r.exact) return false;
  throw Error(ErrorKind::InexactBudget,
              "bound " + to_string(b.bound.value()) + " undecided: lower bound " +
                  to_string(r.lower_bound) + " with residual mass " +
                  to_string(r.residual_mass));
}

}  // namespace pdl
