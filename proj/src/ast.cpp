#include "ast.hpp"

#include <sstream>

#include "errors.hpp"

namespace pdl {

bool Value::as_bool() const {
  if (!is_bool()) {
    throw Error(ErrorKind::TypeMismatch, "expected a boolean, got integer " + str());
  }
  return std::get<bool>(data_);
}

const Int& Value::as_int() const {
  if (!is_int()) {
    throw Error(ErrorKind::TypeMismatch, "expected an integer, got boolean " + str());
  }
  return std::get<Int>(data_);
}

std::string Value::str() const {
  if (is_bool()) return std::get<bool>(data_) ? "true" : "false";
  return std::get<Int>(data_).str();
}

const char* op_symbol(UnOp op) {
  switch (op) {
    case UnOp::Neg: return "-";
    case UnOp::Not: return "!";
  }
  return "?";
}

const char* op_symbol(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

ExprPtr Expr::lit(Value v) {
  return std::make_shared<const Expr>(Expr{Lit{std::move(v)}});
}
ExprPtr Expr::lit_int(long long n) { return lit(Value::integer(Int(n))); }
ExprPtr Expr::lit_int(Int n) { return lit(Value::integer(std::move(n))); }
ExprPtr Expr::lit_bool(bool b) { return lit(Value::boolean(b)); }
ExprPtr Expr::var(std::string name) {
  return std::make_shared<const Expr>(Expr{Var{std::move(name)}});
}
ExprPtr Expr::unary(UnOp op, ExprPtr operand) {
  return std::make_shared<const Expr>(Expr{Unary{op, std::move(operand)}});
}
ExprPtr Expr::binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}});
}

bool struct_eq(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* la = std::get_if<Expr::Lit>(&a.node)) {
    return la->value == std::get<Expr::Lit>(b.node).value;
  }
  if (const auto* va = std::get_if<Expr::Var>(&a.node)) {
    return va->name == std::get<Expr::Var>(b.node).name;
  }
  if (const auto* ua = std::get_if<Expr::Unary>(&a.node)) {
    const auto& ub = std::get<Expr::Unary>(b.node);
    return ua->op == ub.op && struct_eq(*ua->operand, *ub.operand);
  }
  const auto& ba = std::get<Expr::Binary>(a.node);
  const auto& bb = std::get<Expr::Binary>(b.node);
  return ba.op == bb.op && struct_eq(*ba.lhs, *bb.lhs) && struct_eq(*ba.rhs, *bb.rhs);
}

namespace {

int precedence(BinOp op) {
  switch (op) {
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return 6;
    case BinOp::Add:
    case BinOp::Sub: return 5;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge: return 4;
    case BinOp::Eq:
    case BinOp::Ne: return 3;
    case BinOp::And: return 2;
    case BinOp::Or: return 1;
  }
  return 0;
}

void render(const Expr& e, int parent_prec, std::string& out) {
  if (const auto* l = std::get_if<Expr::Lit>(&e.node)) {
    out += l->value.str();
    return;
  }
  if (const auto* v = std::get_if<Expr::Var>(&e.node)) {
    out += v->name;
    return;
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    out += op_symbol(u->op);
    render(*u->operand, 7, out);
    return;
  }
  const auto& b = std::get<Expr::Binary>(e.node);
  int prec = precedence(b.op);
  bool parens = prec < parent_prec;
  if (parens) out += "(";
  render(*b.lhs, prec, out);
  out += " ";
  out += op_symbol(b.op);
  out += " ";
  render(*b.rhs, prec + 1, out);
  if (parens) out += ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  render(e, 0, out);
  return out;
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  if (std::holds_alternative<Expr::Lit>(e.node)) return;
  if (const auto* v = std::get_if<Expr::Var>(&e.node)) {
    out.insert(v->name);
    return;
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    collect_vars(*u->operand, out);
    return;
  }
  const auto& b = std::get<Expr::Binary>(e.node);
  collect_vars(*b.lhs, out);
  collect_vars(*b.rhs, out);
}

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

const Value& Valuation::get(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) {
    throw Error(ErrorKind::UnboundVariable, "variable '" + name + "' is not bound");
  }
  return it->second;
}

Valuation Valuation::with(const std::string& name, Value v) const {
  Valuation copy = *this;
  copy.vars_[name] = std::move(v);
  return copy;
}

std::string Valuation::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : vars_) {
    if (!first) out += ", ";
    first = false;
    out += name;
    out += "=";
    out += value.str();
  }
  out += "}";
  return out;
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
  Int q = a / b;
  Int r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

Int floor_mod(const Int& a, const Int& b) {
  if (b == 0) throw Error(ErrorKind::DivisionByZero, "modulo by zero");
  Int r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

namespace {

Value eval_arith(BinOp op, const Value& lv, const Value& rv) {
  const Int& a = lv.as_int();
  const Int& b = rv.as_int();
  switch (op) {
    case BinOp::Add: return Value::integer(a + b);
    case BinOp::Sub: return Value::integer(a - b);
    case BinOp::Mul: return Value::integer(a * b);
    case BinOp::Div: return Value::integer(floor_div(a, b));
    case BinOp::Mod: return Value::integer(floor_mod(a, b));
    case BinOp::Lt: return Value::boolean(a < b);
    case BinOp::Le: return Value::boolean(a <= b);
    case BinOp::Gt: return Value::boolean(a > b);
    case BinOp::Ge: return Value::boolean(a >= b);
    default:
      throw Error(ErrorKind::Internal, "eval_arith got a non-arithmetic operator");
  }
}

}  // namespace

Value eval_expr(const Expr& e, const Valuation& env) {
  if (const auto* l = std::get_if<Expr::Lit>(&e.node)) return l->value;
  if (const auto* v = std::get_if<Expr::Var>(&e.node)) return env.get(v->name);
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    Value operand = eval_expr(*u->operand, env);
    if (u->op == UnOp::Neg) return Value::integer(-operand.as_int());
    return Value::boolean(!operand.as_bool());
  }
  const auto& b = std::get<Expr::Binary>(e.node);
  switch (b.op) {
    case BinOp::And: {
      // Short-circuit, left to right.
      if (!eval_expr(*b.lhs, env).as_bool()) return Value::boolean(false);
      return Value::boolean(eval_expr(*b.rhs, env).as_bool());
    }
    case BinOp::Or: {
      if (eval_expr(*b.lhs, env).as_bool()) return Value::boolean(true);
      return Value::boolean(eval_expr(*b.rhs, env).as_bool());
    }
    case BinOp::Eq:
    case BinOp::Ne: {
      Value lv = eval_expr(*b.lhs, env);
      Value rv = eval_expr(*b.rhs, env);
      if (lv.is_bool() != rv.is_bool()) {
        throw Error(ErrorKind::TypeMismatch,
                    "'" + std::string(op_symbol(b.op)) + "' needs operands of one type, got " +
                        lv.str() + " and " + rv.str());
      }
      bool eq = lv == rv;
      return Value::boolean(b.op == BinOp::Eq ? eq : !eq);
    }
    default:
      return eval_arith(b.op, eval_expr(*b.lhs, env), eval_expr(*b.rhs, env));
  }
}

StmtPtr Stmt::skip() { return std::make_shared<const Stmt>(Stmt{Skip{}}); }
StmtPtr Stmt::assign(std::string var, ExprPtr expr) {
  return std::make_shared<const Stmt>(Stmt{Assign{std::move(var), std::move(expr)}});
}
StmtPtr Stmt::seq(StmtPtr first, StmtPtr second) {
  return std::make_shared<const Stmt>(Stmt{Seq{std::move(first), std::move(second)}});
}
StmtPtr Stmt::demonic(StmtPtr left, StmtPtr right) {
  return std::make_shared<const Stmt>(Stmt{Demonic{std::move(left), std::move(right)}});
}
StmtPtr Stmt::prob(Probability p, StmtPtr left, StmtPtr right) {
  return std::make_shared<const Stmt>(Stmt{Prob{std::move(p), std::move(left), std::move(right)}});
}
StmtPtr Stmt::if_else(ExprPtr guard, StmtPtr then_branch, StmtPtr else_branch) {
  return std::make_shared<const Stmt>(
      Stmt{If{std::move(guard), std::move(then_branch), std::move(else_branch)}});
}
StmtPtr Stmt::while_loop(ExprPtr guard, StmtPtr body) {
  return std::make_shared<const Stmt>(Stmt{While{std::move(guard), std::move(body)}});
}

bool is_skip(const Stmt& s) { return std::holds_alternative<Stmt::Skip>(s.node); }

bool struct_eq(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (std::holds_alternative<Stmt::Skip>(a.node)) return true;
  if (const auto* aa = std::get_if<Stmt::Assign>(&a.node)) {
    const auto& ab = std::get<Stmt::Assign>(b.node);
    return aa->var == ab.var && struct_eq(*aa->expr, *ab.expr);
  }
  if (const auto* sa = std::get_if<Stmt::Seq>(&a.node)) {
    const auto& sb = std::get<Stmt::Seq>(b.node);
    return struct_eq(*sa->first, *sb.first) && struct_eq(*sa->second, *sb.second);
  }
  if (const auto* da = std::get_if<Stmt::Demonic>(&a.node)) {
    const auto& db = std::get<Stmt::Demonic>(b.node);
    return struct_eq(*da->left, *db.left) && struct_eq(*da->right, *db.right);
  }
  if (const auto* pa = std::get_if<Stmt::Prob>(&a.node)) {
    const auto& pb = std::get<Stmt::Prob>(b.node);
    return pa->prob == pb.prob && struct_eq(*pa->left, *pb.left) &&
           struct_eq(*pa->right, *pb.right);
  }
  if (const auto* ia = std::get_if<Stmt::If>(&a.node)) {
    const auto& ib = std::get<Stmt::If>(b.node);
    return struct_eq(*ia->guard, *ib.guard) && struct_eq(*ia->then_branch, *ib.then_branch) &&
           struct_eq(*ia->else_branch, *ib.else_branch);
  }
  const auto& wa = std::get<Stmt::While>(a.node);
  const auto& wb = std::get<Stmt::While>(b.node);
  return struct_eq(*wa.guard, *wb.guard) && struct_eq(*wa.body, *wb.body);
}

std::string to_string(const Stmt& s) {
  if (std::holds_alternative<Stmt::Skip>(s.node)) return "skip;";
  if (const auto* a = std::get_if<Stmt::Assign>(&s.node)) {
    return a->var + " := " + to_string(*a->expr) + ";";
  }
  if (const auto* q = std::get_if<Stmt::Seq>(&s.node)) {
    return to_string(*q->first) + " " + to_string(*q->second);
  }
  if (const auto* d = std::get_if<Stmt::Demonic>(&s.node)) {
    return "{ " + to_string(*d->left) + " } [] { " + to_string(*d->right) + " }";
  }
  if (const auto* p = std::get_if<Stmt::Prob>(&s.node)) {
    return "{ " + to_string(*p->left) + " } [" + to_string(p->prob.value()) + "] { " +
           to_string(*p->right) + " }";
  }
  if (const auto* i = std::get_if<Stmt::If>(&s.node)) {
    return "if (" + to_string(*i->guard) + ") { " + to_string(*i->then_branch) + " } else { " +
           to_string(*i->else_branch) + " }";
  }
  const auto& w = std::get<Stmt::While>(s.node);
  return "while (" + to_string(*w.guard) + ") { " + to_string(*w.body) + " }";
}

namespace {

void collect_stmt_vars(const Stmt& s, std::set<std::string>& reads_and_writes,
                       std::set<std::string>* writes) {
  if (std::holds_alternative<Stmt::Skip>(s.node)) return;
  if (const auto* a = std::get_if<Stmt::Assign>(&s.node)) {
    reads_and_writes.insert(a->var);
    if (writes) writes->insert(a->var);
    collect_vars(*a->expr, reads_and_writes);
    return;
  }
  if (const auto* q = std::get_if<Stmt::Seq>(&s.node)) {
    collect_stmt_vars(*q->first, reads_and_writes, writes);
    collect_stmt_vars(*q->second, reads_and_writes, writes);
    return;
  }
  if (const auto* d = std::get_if<Stmt::Demonic>(&s.node)) {
    collect_stmt_vars(*d->left, reads_and_writes, writes);
    collect_stmt_vars(*d->right, reads_and_writes, writes);
    return;
  }
  if (const auto* p = std::get_if<Stmt::Prob>(&s.node)) {
    collect_stmt_vars(*p->left, reads_and_writes, writes);
    collect_stmt_vars(*p->right, reads_and_writes, writes);
    return;
  }
  if (const auto* i = std::get_if<Stmt::If>(&s.node)) {
    collect_vars(*i->guard, reads_and_writes);
    collect_stmt_vars(*i->then_branch, reads_and_writes, writes);
    collect_stmt_vars(*i->else_branch, reads_and_writes, writes);
    return;
  }
  const auto& w = std::get<Stmt::While>(s.node);
  collect_vars(*w.guard, reads_and_writes);
  collect_stmt_vars(*w.body, reads_and_writes, writes);
}

}  // namespace

std::set<std::string> free_vars(const Stmt& s) {
  std::set<std::string> out;
  collect_stmt_vars(s, out, nullptr);
  return out;
}

std::set<std::string> assigned_vars(const Stmt& s) {
  std::set<std::string> all;
  std::set<std::string> writes;
  collect_stmt_vars(s, all, &writes);
  return writes;
}

}  // namespace pdl
