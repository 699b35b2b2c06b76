#include "oracle.hpp"

#include "errors.hpp"

namespace pdl {

bool is_final(const Config& c) { return is_skip(*c.program); }

namespace {

// Wraps every successor's remaining program with "; rest".
Config with_rest(Config c, const StmtPtr& rest) {
  c.program = Stmt::seq(std::move(c.program), rest);
  return c;
}

const Stmt* first_statement(const Stmt& s) {
  const Stmt* cur = &s;
  while (const auto* q = std::get_if<Stmt::Seq>(&cur->node)) {
    cur = q->first.get();
  }
  return cur;
}

}  // namespace

bool is_loop_entry(const Config& c) {
  const Stmt* head = first_statement(*c.program);
  const auto* w = std::get_if<Stmt::While>(&head->node);
  if (w == nullptr) return false;
  return eval_expr(*w->guard, c.valuation).as_bool();
}

Successors step(const Config& c) {
  const Stmt& s = *c.program;
  if (std::holds_alternative<Stmt::Skip>(s.node)) {
    return Successors{Successors::Final{}};
  }
  if (const auto* a = std::get_if<Stmt::Assign>(&s.node)) {
    Value v = eval_expr(*a->expr, c.valuation);
    return Successors{Successors::Det{{c.valuation.with(a->var, std::move(v)), Stmt::skip()}}};
  }
  if (const auto* q = std::get_if<Stmt::Seq>(&s.node)) {
    if (is_skip(*q->first)) {
      return Successors{Successors::Det{{c.valuation, q->second}}};
    }
    Successors inner = step({c.valuation, q->first});
    if (auto* d = std::get_if<Successors::Det>(&inner.node)) {
      return Successors{Successors::Det{with_rest(std::move(d->next), q->second)}};
    }
    if (auto* dm = std::get_if<Successors::Demonic>(&inner.node)) {
      return Successors{Successors::Demonic{with_rest(std::move(dm->left), q->second),
                                            with_rest(std::move(dm->right), q->second)}};
    }
    auto& pr = std::get<Successors::Prob>(inner.node);
    Successors::Prob wrapped;
    wrapped.branches.reserve(pr.branches.size());
    for (auto& [weight, cfg] : pr.branches) {
      wrapped.branches.emplace_back(weight, with_rest(std::move(cfg), q->second));
    }
    return Successors{std::move(wrapped)};
  }
  if (const auto* d = std::get_if<Stmt::Demonic>(&s.node)) {
    return Successors{Successors::Demonic{{c.valuation, d->left}, {c.valuation, d->right}}};
  }
  if (const auto* p = std::get_if<Stmt::Prob>(&s.node)) {
    Successors::Prob prob;
    prob.branches.emplace_back(p->prob.value(), Config{c.valuation, p->left});
    prob.branches.emplace_back(Rational(1) - p->prob.value(), Config{c.valuation, p->right});
    return Successors{std::move(prob)};
  }
  if (const auto* i = std::get_if<Stmt::If>(&s.node)) {
    bool guard = eval_expr(*i->guard, c.valuation).as_bool();
    return Successors{Successors::Det{{c.valuation, guard ? i->then_branch : i->else_branch}}};
  }
  const auto& w = std::get<Stmt::While>(s.node);
  if (eval_expr(*w.guard, c.valuation).as_bool()) {
    return Successors{Successors::Det{{c.valuation, Stmt::seq(w.body, c.program)}}};
  }
  return Successors{Successors::Det{{c.valuation, Stmt::skip()}}};
}

namespace {

struct Interval {
  Rational lower;
  Rational upper;
};

Interval expect_rec(const Config& c, const FormulaPtr& post, unsigned budget) {
  if (is_final(c)) {
    Rational r = sat_state_formula(c.valuation, *post) ? 1 : 0;
    return {r, r};
  }
  if (is_loop_entry(c)) {
    if (budget == 0) return {Rational(0), Rational(1)};
    budget -= 1;
  }
  Successors succ = step(c);
  if (const auto* d = std::get_if<Successors::Det>(&succ.node)) {
    return expect_rec(d->next, post, budget);
  }
  if (const auto* dm = std::get_if<Successors::Demonic>(&succ.node)) {
    Interval l = expect_rec(dm->left, post, budget);
    Interval r = expect_rec(dm->right, post, budget);
    return {std::min(l.lower, r.lower), std::min(l.upper, r.upper)};
  }
  const auto& pr = std::get<Successors::Prob>(succ.node);
  Interval acc{Rational(0), Rational(0)};
  for (const auto& [weight, cfg] : pr.branches) {
    Interval b = expect_rec(cfg, post, budget);
    acc.lower += weight * b.lower;
    acc.upper += weight * b.upper;
  }
  return acc;
}

}  // namespace

OracleResult expectation(const StmtPtr& program, const Valuation& initial,
                         const FormulaPtr& post, unsigned unroll_budget) {
  Interval iv = expect_rec({initial, program}, post, unroll_budget);
  return {iv.lower, iv.upper - iv.lower, iv.upper == iv.lower};
}

namespace {

void paths_rec(const Config& c, unsigned budget, const Rational& prob, std::string decisions,
               std::vector<PathRow>& out) {
  if (is_final(c)) {
    out.push_back({prob, c.valuation, false, std::move(decisions)});
    return;
  }
  if (is_loop_entry(c)) {
    if (budget == 0) {
      out.push_back({prob, c.valuation, true, std::move(decisions)});
      return;
    }
    budget -= 1;
  }
  Successors succ = step(c);
  if (const auto* d = std::get_if<Successors::Det>(&succ.node)) {
    paths_rec(d->next, budget, prob, std::move(decisions), out);
    return;
  }
  if (const auto* dm = std::get_if<Successors::Demonic>(&succ.node)) {
    paths_rec(dm->left, budget, prob, decisions + "0", out);
    paths_rec(dm->right, budget, prob, decisions + "1", out);
    return;
  }
  const auto& pr = std::get<Successors::Prob>(succ.node);
  for (const auto& [weight, cfg] : pr.branches) {
    paths_rec(cfg, budget, prob * weight, decisions, out);
  }
}

}  // namespace

std::vector<PathRow> enumerate_paths(const StmtPtr& program, const Valuation& initial,
                                     unsigned unroll_budget) {
  std::vector<PathRow> out;
  paths_rec({initial, program}, unroll_budget, Rational(1), std::string(), out);
  return out;
}

}  // namespace pdl
