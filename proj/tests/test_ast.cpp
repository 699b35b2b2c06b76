#include <doctest.h>

#include "ast.hpp"
#include "errors.hpp"
#include "parser.hpp"
#include "testutil.hpp"

using namespace pdl;

namespace {

Valuation env_of(std::initializer_list<std::pair<const char*, long long>> ints) {
  Valuation env;
  for (const auto& [name, v] : ints) env.set(name, Value::integer(Int(v)));
  return env;
}

ExprPtr parse_expr_text(const std::string& text) { return parse_expression(text); }

}  // namespace

TEST_CASE("floored division and remainder follow the divisor's sign") {
  CHECK(floor_div(Int(7), Int(2)) == 3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(floor_div(Int(7), Int(-2)) == -4);
  CHECK(floor_div(Int(-7), Int(-2)) == 3);
  CHECK(floor_mod(Int(7), Int(3)) == 1);
  CHECK(floor_mod(Int(-7), Int(3)) == 2);
  CHECK(floor_mod(Int(7), Int(-3)) == -2);
  CHECK(floor_mod(Int(-7), Int(-3)) == -1);
  CHECK(floor_mod(Int(-1), Int(3)) == 2);
  CHECK(floor_mod(Int(-2), Int(3)) == 1);
  for (long long a = -9; a <= 9; ++a) {
    for (long long b : {-3LL, -2LL, 2LL, 3LL}) {
      Int q = floor_div(Int(a), Int(b));
      Int r = floor_mod(Int(a), Int(b));
      CHECK(q * b + r == a);          // division identity
      CHECK((r == 0 || (r < 0) == (b < 0)));  // remainder sign
    }
  }
  CHECK_THROWS_AS(floor_div(Int(1), Int(0)), Error);
  CHECK_THROWS_AS(floor_mod(Int(1), Int(0)), Error);
}

TEST_CASE("eval_expr computes the winning-door expression") {
  ExprPtr e = parse_expr_text("(2*prize - choice) % 3");
  CHECK(eval_expr(*e, env_of({{"prize", 0}, {"choice", 1}})) ==
        Value::integer(Int(2)));
  CHECK(eval_expr(*e, env_of({{"prize", 0}, {"choice", 2}})) ==
        Value::integer(Int(1)));
  CHECK(eval_expr(*e, env_of({{"prize", 2}, {"choice", 0}})) ==
        Value::integer(Int(1)));
  ExprPtr open_tie = parse_expr_text("(prize + 1) % 3");
  CHECK(eval_expr(*open_tie, env_of({{"prize", 0}})) == Value::integer(Int(1)));
}

TEST_CASE("eval_expr arithmetic, comparisons, and logic") {
  Valuation env = env_of({{"x", 5}, {"y", -2}});
  CHECK(eval_expr(*parse_expr_text("x + y * 3"), env) == Value::integer(Int(-1)));
  CHECK(eval_expr(*parse_expr_text("x - y"), env) == Value::integer(Int(7)));
  CHECK(eval_expr(*parse_expr_text("-x"), env) == Value::integer(Int(-5)));
  CHECK(eval_expr(*parse_expr_text("x < 6 && y >= -2"), env) ==
        Value::boolean(true));
  CHECK(eval_expr(*parse_expr_text("x != 5 || y == -2"), env) ==
        Value::boolean(true));
  CHECK(eval_expr(*parse_expr_text("!(x <= 4)"), env) == Value::boolean(true));
  CHECK(eval_expr(*parse_expr_text("x / 2"), env) == Value::integer(Int(2)));
  CHECK(eval_expr(*parse_expr_text("y / 2"), env) == Value::integer(Int(-1)));
}

TEST_CASE("logical operators short-circuit past faulting operands") {
  Valuation env = env_of({{"x", 1}});
  CHECK(eval_expr(*parse_expr_text("x == 0 && 1 / 0 == 0"), env) ==
        Value::boolean(false));
  CHECK(eval_expr(*parse_expr_text("x == 1 || 1 / 0 == 0"), env) ==
        Value::boolean(true));
  CHECK_THROWS_AS(eval_expr(*parse_expr_text("x == 1 && 1 / 0 == 0"), env),
                  Error);
}

TEST_CASE("eval_expr enforces operand types") {
  Valuation env;
  env.set("b", Value::boolean(true));
  env.set("n", Value::integer(Int(3)));
  CHECK_THROWS_AS(eval_expr(*parse_expr_text("b + 1"), env), Error);
  CHECK_THROWS_AS(eval_expr(*parse_expr_text("b < true"), env), Error);
  CHECK_THROWS_AS(eval_expr(*parse_expr_text("n == true"), env), Error);
  CHECK_THROWS_AS(eval_expr(*parse_expr_text("!n"), env), Error);
  CHECK_THROWS_AS(eval_expr(*parse_expr_text("n && n == 3"), env), Error);
  CHECK(eval_expr(*parse_expr_text("b == true"), env) == Value::boolean(true));
  CHECK(eval_expr(*parse_expr_text("b != false"), env) == Value::boolean(true));
}

TEST_CASE("unbound variables are reported") {
  Valuation env;
  CHECK_THROWS_AS(eval_expr(*Expr::var("ghost"), env), Error);
  try {
    eval_expr(*Expr::var("ghost"), env);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundVariable);
  }
}

TEST_CASE("update_valuation replaces bindings") {
  Valuation env = env_of({{"prize", -1}});
  Valuation updated = update_valuation(env, "prize", Value::integer(Int(0)));
  CHECK(updated.get("prize") == Value::integer(Int(0)));
  CHECK(env.get("prize") == Value::integer(Int(-1)));  // original untouched
  CHECK(updated.str() == "{prize=0}");
}

TEST_CASE("valuation rendering is deterministic and sorted") {
  Valuation env = env_of({{"b", 2}, {"a", 1}});
  env.set("sw", Value::boolean(true));
  CHECK(env.str() == "{a=1, b=2, sw=true}");
}

TEST_CASE("expression rendering round trips through the parser") {
  const char* samples[] = {
      "(2*prize - choice) % 3", "x + y + z",      "x - (y - z)",
      "x * (y + 1)",            "-(x + 1)",       "x % 3 == 2 && y < 1",
      "!(x > 0) || b == true",  "(x + 1) % 3 / 2", "1 + 2 * 3 - 4",
  };
  for (const char* text : samples) {
    ExprPtr once = parse_expr_text(text);
    ExprPtr twice = parse_expr_text(to_string(*once));
    CHECK_MESSAGE(struct_eq(*once, *twice), "sample: ", text);
  }
}

TEST_CASE("free_vars covers the Monty Hall body") {
  VerificationTask t =
      testutil::parse_file(testutil::example_path("monty_hall.pgcl"));
  std::set<std::string> vars = free_vars(*t.body);
  CHECK(vars == std::set<std::string>{"prize", "choice", "open", "sw"});
  CHECK(assigned_vars(*t.body) ==
        std::set<std::string>{"prize", "choice", "open"});
}

TEST_CASE("statement structural equality and rendering") {
  StmtPtr a = Stmt::seq(Stmt::assign("x", Expr::lit_int(1)), Stmt::skip());
  StmtPtr b = Stmt::seq(Stmt::assign("x", Expr::lit_int(1)), Stmt::skip());
  StmtPtr c = Stmt::seq(Stmt::assign("x", Expr::lit_int(2)), Stmt::skip());
  CHECK(struct_eq(*a, *b));
  CHECK_FALSE(struct_eq(*a, *c));
  CHECK(to_string(*a) == "x := 1; skip;");
  CHECK(is_skip(*Stmt::skip()));
  CHECK_FALSE(is_skip(*a));

  StmtPtr d = Stmt::demonic(Stmt::assign("x", Expr::lit_int(0)),
                            Stmt::assign("x", Expr::lit_int(1)));
  CHECK(to_string(*d) == "{ x := 0; } [] { x := 1; }");
  StmtPtr p = Stmt::prob(Probability(Rational(1, 3)),
                         Stmt::assign("x", Expr::lit_int(0)), Stmt::skip());
  CHECK(to_string(*p) == "{ x := 0; } [1/3] { skip; }");
}
