#include "validity.hpp"

#include <functional>

#include "errors.hpp"

namespace pdl {

namespace {

void flatten_conjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (const auto* c = std::get_if<StateFormula::And>(&f->node)) {
    flatten_conjuncts(c->lhs, out);
    flatten_conjuncts(c->rhs, out);
    return;
  }
  out.push_back(f);
}

}  // namespace

std::vector<FormulaPtr> split_conjuncts(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  flatten_conjuncts(f, out);
  return out;
}

namespace {

struct Bounds {
  std::optional<Int> lo;
  std::optional<Int> hi;

  void at_least(const Int& v) {
    if (!lo || *lo < v) lo = v;
  }
  void at_most(const Int& v) {
    if (!hi || *hi > v) hi = v;
  }
};

// Integer constant, allowing a leading unary minus as in "x >= -2".
std::optional<Int> literal_int(const Expr& e) {
  if (const auto* l = std::get_if<Expr::Lit>(&e.node)) {
    if (l->value.is_int()) return l->value.as_int();
    return std::nullopt;
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    if (u->op == UnOp::Neg) {
      if (auto inner = literal_int(*u->operand)) return -*inner;
    }
  }
  return std::nullopt;
}

// Recognizes "x cmp literal" or "literal cmp x"; normalizes to the former.
bool match_comparison(const Expr& e, std::string& var, BinOp& op, Int& c) {
  const auto* b = std::get_if<Expr::Binary>(&e.node);
  if (b == nullptr) return false;
  const auto* lv = std::get_if<Expr::Var>(&b->lhs->node);
  const auto* rv = std::get_if<Expr::Var>(&b->rhs->node);
  auto ll = literal_int(*b->lhs);
  auto rl = literal_int(*b->rhs);
  if (lv != nullptr && rl) {
    var = lv->name;
    op = b->op;
    c = *rl;
    return true;
  }
  if (ll && rv != nullptr) {
    var = rv->name;
    c = *ll;
    switch (b->op) {
      case BinOp::Lt: op = BinOp::Gt; break;
      case BinOp::Le: op = BinOp::Ge; break;
      case BinOp::Gt: op = BinOp::Lt; break;
      case BinOp::Ge: op = BinOp::Le; break;
      default: op = b->op; break;
    }
    return true;
  }
  return false;
}

BinOp negate_comparison(BinOp op) {
  switch (op) {
    case BinOp::Lt: return BinOp::Ge;
    case BinOp::Le: return BinOp::Gt;
    case BinOp::Gt: return BinOp::Le;
    case BinOp::Ge: return BinOp::Lt;
    case BinOp::Eq: return BinOp::Ne;
    case BinOp::Ne: return BinOp::Eq;
    default: return op;
  }
}

void harvest(const StateFormula& f, std::map<std::string, Bounds>& bounds) {
  std::string var;
  BinOp op = BinOp::Eq;
  Int c;
  if (const auto* a = std::get_if<StateFormula::Atom>(&f.node)) {
    if (!match_comparison(*a->expr, var, op, c)) return;
  } else if (const auto* n = std::get_if<StateFormula::Not>(&f.node)) {
    const auto* inner = std::get_if<StateFormula::Atom>(&n->body->node);
    if (inner == nullptr || !match_comparison(*inner->expr, var, op, c)) return;
    op = negate_comparison(op);
  } else {
    return;
  }
  Bounds& b = bounds[var];
  switch (op) {
    case BinOp::Eq:
      b.at_least(c);
      b.at_most(c);
      break;
    case BinOp::Le: b.at_most(c); break;
    case BinOp::Lt: b.at_most(c - 1); break;
    case BinOp::Ge: b.at_least(c); break;
    case BinOp::Gt: b.at_least(c + 1); break;
    default: break;  // disequalities carry no interval information
  }
}

}  // namespace

std::optional<std::map<std::string, Domain>> derive_domains(
    const std::vector<FormulaPtr>& gamma, const std::set<std::string>& vars,
    const TypeEnv& types, std::size_t max_product) {
  std::vector<FormulaPtr> flat;
  for (const auto& g : gamma) flatten_conjuncts(g, flat);

  std::map<std::string, Bounds> bounds;
  for (const auto& g : flat) harvest(*g, bounds);

  std::map<std::string, Domain> domains;
  Int product = 1;
  for (const auto& name : vars) {
    auto type = types.find(name);
    if (type != types.end() && type->second) {
      domains[name] = Domain{true, 0, 1};
      product *= 2;
    } else {
      auto b = bounds.find(name);
      if (b == bounds.end() || !b->second.lo || !b->second.hi) return std::nullopt;
      Domain d{false, *b->second.lo, *b->second.hi};
      Int size = d.hi < d.lo ? Int(0) : d.hi - d.lo + 1;
      product *= size;
      domains[name] = std::move(d);
    }
    if (product > Int(max_product)) return std::nullopt;
  }
  return domains;
}

namespace {

// Depth-first product walk; the visitor returns false to stop early.
bool enumerate_domains(const std::map<std::string, Domain>& domains,
                       std::map<std::string, Domain>::const_iterator it, Valuation& env,
                       const std::function<bool(const Valuation&)>& visit) {
  if (it == domains.end()) return visit(env);
  const auto& [name, domain] = *it;
  auto next = std::next(it);
  if (domain.is_bool) {
    for (bool b : {false, true}) {
      env.set(name, Value::boolean(b));
      if (!enumerate_domains(domains, next, env, visit)) return false;
    }
    return true;
  }
  for (Int v = domain.lo; v <= domain.hi; ++v) {
    env.set(name, Value::integer(v));
    if (!enumerate_domains(domains, next, env, visit)) return false;
  }
  return true;
}

std::set<std::string> collect_free_vars(const std::vector<FormulaPtr>& gamma,
                                        const FormulaPtr& goal) {
  std::set<std::string> vars;
  for (const auto& g : gamma) {
    auto fv = free_vars(*g);
    vars.insert(fv.begin(), fv.end());
  }
  if (goal) {
    auto fv = free_vars(*goal);
    vars.insert(fv.begin(), fv.end());
  }
  return vars;
}

bool sat_all(const std::vector<FormulaPtr>& gamma, const Valuation& env) {
  for (const auto& g : gamma) {
    if (!sat_state_formula(env, *g)) return false;
  }
  return true;
}

}  // namespace

Truth check_validity(const std::vector<FormulaPtr>& gamma, const FormulaPtr& goal,
                     const TypeEnv& types) {
  std::set<std::string> vars = collect_free_vars(gamma, goal);
  auto domains = derive_domains(gamma, vars, types);
  if (!domains) return Truth::Undecided;
  bool counterexample = false;
  Valuation env;
  enumerate_domains(*domains, domains->begin(), env, [&](const Valuation& model) {
    if (sat_all(gamma, model) && !sat_state_formula(model, *goal)) {
      counterexample = true;
      return false;
    }
    return true;
  });
  return counterexample ? Truth::Invalid : Truth::Valid;
}

Satisfiability check_sat(const std::vector<FormulaPtr>& gamma, const TypeEnv& types) {
  std::set<std::string> vars = collect_free_vars(gamma, nullptr);
  auto domains = derive_domains(gamma, vars, types);
  if (!domains) return Satisfiability::Undecided;
  bool found = false;
  Valuation env;
  enumerate_domains(*domains, domains->begin(), env, [&](const Valuation& model) {
    if (sat_all(gamma, model)) {
      found = true;
      return false;
    }
    return true;
  });
  return found ? Satisfiability::Sat : Satisfiability::Unsat;
}

namespace {

std::string smt_int(const Int& n) {
  if (n < 0) return "(- " + Int(-n).str() + ")";
  return n.str();
}

std::string expr_smt(const Expr& e, std::map<std::string, Int>& quantified) {
  if (const auto* l = std::get_if<Expr::Lit>(&e.node)) {
    if (l->value.is_bool()) return l->value.as_bool() ? "true" : "false";
    return smt_int(l->value.as_int());
  }
  if (const auto* v = std::get_if<Expr::Var>(&e.node)) {
    auto it = quantified.find(v->name);
    if (it != quantified.end()) return smt_int(it->second);
    return v->name;
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    std::string inner = expr_smt(*u->operand, quantified);
    return u->op == UnOp::Neg ? "(- " + inner + ")" : "(not " + inner + ")";
  }
  const auto& b = std::get<Expr::Binary>(e.node);
  std::string lhs = expr_smt(*b.lhs, quantified);
  std::string rhs = expr_smt(*b.rhs, quantified);
  switch (b.op) {
    case BinOp::Add: return "(+ " + lhs + " " + rhs + ")";
    case BinOp::Sub: return "(- " + lhs + " " + rhs + ")";
    case BinOp::Mul: return "(* " + lhs + " " + rhs + ")";
    case BinOp::Div: return "(div " + lhs + " " + rhs + ")";
    case BinOp::Mod: return "(mod " + lhs + " " + rhs + ")";
    case BinOp::Lt: return "(< " + lhs + " " + rhs + ")";
    case BinOp::Le: return "(<= " + lhs + " " + rhs + ")";
    case BinOp::Gt: return "(> " + lhs + " " + rhs + ")";
    case BinOp::Ge: return "(>= " + lhs + " " + rhs + ")";
    case BinOp::Eq: return "(= " + lhs + " " + rhs + ")";
    case BinOp::Ne: return "(not (= " + lhs + " " + rhs + "))";
    case BinOp::And: return "(and " + lhs + " " + rhs + ")";
    case BinOp::Or: return "(or " + lhs + " " + rhs + ")";
  }
  throw Error(ErrorKind::Internal, "unhandled operator in SMT rendering");
}

std::string formula_smt(const StateFormula& f, std::map<std::string, Int>& quantified) {
  if (const auto* a = std::get_if<StateFormula::Atom>(&f.node)) {
    return expr_smt(*a->expr, quantified);
  }
  if (const auto* n = std::get_if<StateFormula::Not>(&f.node)) {
    return "(not " + formula_smt(*n->body, quantified) + ")";
  }
  if (const auto* c = std::get_if<StateFormula::And>(&f.node)) {
    return "(and " + formula_smt(*c->lhs, quantified) + " " +
           formula_smt(*c->rhs, quantified) + ")";
  }
  const auto& q = std::get<StateFormula::ForallRange>(f.node);
  if (q.lo > q.hi) return "true";
  std::vector<std::string> parts;
  auto saved = quantified.find(q.var) != quantified.end()
                   ? std::optional<Int>(quantified[q.var])
                   : std::nullopt;
  for (Int v = q.lo; v <= q.hi; ++v) {
    quantified[q.var] = v;
    parts.push_back(formula_smt(*q.body, quantified));
  }
  if (saved) {
    quantified[q.var] = *saved;
  } else {
    quantified.erase(q.var);
  }
  if (parts.size() == 1) return parts[0];
  std::string out = "(and";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

}  // namespace

std::string validity_query_smtlib(const std::vector<FormulaPtr>& gamma, const FormulaPtr& goal,
                                  const TypeEnv& types) {
  std::set<std::string> vars = collect_free_vars(gamma, goal);
  std::string out = "(set-logic QF_NIA)\n";
  out += "; unsat means the assumptions entail the goal\n";
  out += "; div and mod assume positive divisors\n";
  for (const auto& name : vars) {
    auto type = types.find(name);
    bool is_bool = type != types.end() && type->second;
    out += "(declare-const " + name + (is_bool ? " Bool)\n" : " Int)\n");
  }
  std::map<std::string, Int> quantified;
  for (const auto& g : gamma) {
    out += "(assert " + formula_smt(*g, quantified) + ")\n";
  }
  out += "(assert (not " + formula_smt(*goal, quantified) + "))\n";
  out += "(check-sat)\n";
  return out;
}

}  // namespace pdl
