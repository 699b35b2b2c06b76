#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>

#include "rational.hpp"

namespace pdl {

// ---------------------------------------------------------------- values

class Value {
 public:
  Value() : data_(Int(0)) {}
  static Value boolean(bool b) { return Value(Data(b)); }
  static Value integer(Int n) { return Value(Data(std::move(n))); }

  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_int() const { return std::holds_alternative<Int>(data_); }
  bool as_bool() const;
  const Int& as_int() const;

  bool operator==(const Value& other) const { return data_ == other.data_; }
  bool operator!=(const Value& other) const { return !(*this == other); }
  bool operator<(const Value& other) const { return data_ < other.data_; }

  std::string str() const;

 private:
  using Data = std::variant<bool, Int>;
  explicit Value(Data data) : data_(std::move(data)) {}
  Data data_;
};

// ------------------------------------------------------------- expressions

enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

const char* op_symbol(UnOp op);
const char* op_symbol(BinOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Lit { Value value; };
  struct Var { std::string name; };
  struct Unary { UnOp op; ExprPtr operand; };
  struct Binary { BinOp op; ExprPtr lhs; ExprPtr rhs; };

  std::variant<Lit, Var, Unary, Binary> node;

  static ExprPtr lit(Value v);
  static ExprPtr lit_int(long long n);
  static ExprPtr lit_int(Int n);
  static ExprPtr lit_bool(bool b);
  static ExprPtr var(std::string name);
  static ExprPtr unary(UnOp op, ExprPtr operand);
  static ExprPtr binary(BinOp op, ExprPtr lhs, ExprPtr rhs);
};

bool struct_eq(const Expr& a, const Expr& b);
std::string to_string(const Expr& e);
void collect_vars(const Expr& e, std::set<std::string>& out);
std::set<std::string> free_vars(const Expr& e);

// -------------------------------------------------------------- valuations

class Valuation {
 public:
  Valuation() = default;

  bool has(const std::string& name) const { return vars_.count(name) != 0; }
  const Value& get(const std::string& name) const;
  void set(const std::string& name, Value v) { vars_[name] = std::move(v); }
  Valuation with(const std::string& name, Value v) const;

  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }
  std::size_t size() const { return vars_.size(); }

  bool operator==(const Valuation& other) const { return vars_ == other.vars_; }
  bool operator<(const Valuation& other) const { return vars_ < other.vars_; }

  // Deterministic rendering, e.g. "{choice=2, prize=0}".
  std::string str() const;

 private:
  std::map<std::string, Value> vars_;
};

Value eval_expr(const Expr& e, const Valuation& env);

inline Valuation update_valuation(const Valuation& env, const std::string& name, Value v) {
  return env.with(name, std::move(v));
}

// Floored integer division and remainder; the remainder takes the divisor's
// sign, so e.g. (-1) mod 3 = 2. Throws on zero divisors.
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

// -------------------------------------------------------------- statements

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  struct Skip {};
  struct Assign { std::string var; ExprPtr expr; };
  struct Seq { StmtPtr first; StmtPtr second; };
  struct Demonic { StmtPtr left; StmtPtr right; };
  struct Prob { Probability prob; StmtPtr left; StmtPtr right; };
  struct If { ExprPtr guard; StmtPtr then_branch; StmtPtr else_branch; };
  struct While { ExprPtr guard; StmtPtr body; };

  std::variant<Skip, Assign, Seq, Demonic, Prob, If, While> node;

  static StmtPtr skip();
  static StmtPtr assign(std::string var, ExprPtr expr);
  static StmtPtr seq(StmtPtr first, StmtPtr second);
  static StmtPtr demonic(StmtPtr left, StmtPtr right);
  static StmtPtr prob(Probability p, StmtPtr left, StmtPtr right);
  static StmtPtr if_else(ExprPtr guard, StmtPtr then_branch, StmtPtr else_branch);
  static StmtPtr while_loop(ExprPtr guard, StmtPtr body);
};

bool is_skip(const Stmt& s);
bool struct_eq(const Stmt& a, const Stmt& b);
std::string to_string(const Stmt& s);

// Every identifier read or written anywhere in s.
std::set<std::string> free_vars(const Stmt& s);
// Assignment targets only.
std::set<std::string> assigned_vars(const Stmt& s);

}  // namespace pdl
