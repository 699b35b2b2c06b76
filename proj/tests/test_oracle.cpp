#include <doctest.h>

#include "errors.hpp"
#include "oracle.hpp"
#include "parser.hpp"
#include "testutil.hpp"

using namespace pdl;

namespace {

Valuation sw_env(bool sw) {
  Valuation env;
  env.set("sw", Value::boolean(sw));
  return env;
}

StmtPtr body_of(const std::string& name) {
  return testutil::parse_file(testutil::example_path(name)).body;
}

}  // namespace

TEST_CASE("small-step transitions expose the expected successor shapes") {
  Valuation env;
  Config done{env, Stmt::skip()};
  CHECK(is_final(done));
  CHECK(std::holds_alternative<Successors::Final>(step(done).node));

  Config assign{env, Stmt::assign("x", Expr::lit_int(3))};
  auto after = step(assign);
  const auto* det = std::get_if<Successors::Det>(&after.node);
  REQUIRE(det != nullptr);
  CHECK(is_final(det->next));
  CHECK(det->next.valuation.get("x") == Value::integer(Int(3)));

  StmtPtr choice = Stmt::demonic(Stmt::assign("x", Expr::lit_int(0)),
                                 Stmt::assign("x", Expr::lit_int(1)));
  Successors stepped_choice = step({env, choice});
  const auto* dem = std::get_if<Successors::Demonic>(&stepped_choice.node);
  REQUIRE(dem != nullptr);
  CHECK(to_string(*dem->left.program) == "x := 0;");
  CHECK(to_string(*dem->right.program) == "x := 1;");

  StmtPtr flip = Stmt::prob(Probability(Rational(1, 3)),
                            Stmt::assign("x", Expr::lit_int(0)),
                            Stmt::assign("x", Expr::lit_int(1)));
  Successors stepped_flip = step({env, flip});
  const auto* prob = std::get_if<Successors::Prob>(&stepped_flip.node);
  REQUIRE(prob != nullptr);
  REQUIRE(prob->branches.size() == 2);
  CHECK(prob->branches[0].first == Rational(1, 3));
  CHECK(prob->branches[1].first == Rational(2, 3));
  CHECK(prob->branches[0].first + prob->branches[1].first == 1);
}

TEST_CASE("sequencing steps the head and keeps the continuation") {
  Valuation env;
  StmtPtr two = Stmt::seq(Stmt::assign("x", Expr::lit_int(1)),
                          Stmt::assign("y", Expr::lit_int(2)));
  auto first = step({env, two});
  const auto* det = std::get_if<Successors::Det>(&first.node);
  REQUIRE(det != nullptr);
  CHECK(to_string(*det->next.program) == "skip; y := 2;");
  CHECK(det->next.valuation.get("x") == Value::integer(Int(1)));

  // The spent head is discarded by the following transition.
  auto second = step(det->next);
  const auto* det2 = std::get_if<Successors::Det>(&second.node);
  REQUIRE(det2 != nullptr);
  CHECK(to_string(*det2->next.program) == "y := 2;");
}

TEST_CASE("loop entries are detected only when the guard holds") {
  StmtPtr loop = Stmt::while_loop(parse_expression("c == 1"),
                                  Stmt::assign("c", Expr::lit_int(0)));
  Valuation hot;
  hot.set("c", Value::integer(Int(1)));
  Valuation cold;
  cold.set("c", Value::integer(Int(0)));
  CHECK(is_loop_entry({hot, loop}));
  CHECK_FALSE(is_loop_entry({cold, loop}));
  CHECK(is_loop_entry({hot, Stmt::seq(loop, Stmt::skip())}));
  CHECK_FALSE(is_loop_entry({hot, Stmt::skip()}));
}

TEST_CASE("the Monty Hall expectation is exactly 2/3 when switching") {
  StmtPtr body = body_of("monty_hall.pgcl");
  FormulaPtr post = parse_formula("choice == prize");
  OracleResult yes = expectation(body, sw_env(true), post, 0);
  CHECK(yes.lower_bound == Rational(2, 3));
  CHECK(yes.residual_mass == 0);
  CHECK(yes.exact);

  OracleResult no = expectation(body, sw_env(false), post, 0);
  CHECK(no.lower_bound == Rational(1, 3));
  CHECK(no.exact);
}

TEST_CASE("path enumeration matches the walkthrough branch structure") {
  StmtPtr body = body_of("monty_hall.pgcl");
  std::vector<PathRow> rows = enumerate_paths(body, sw_env(true), 0);
  int prize_zero_paths = 0;
  Rational mass = 0;
  for (const PathRow& row : rows) {
    CHECK_FALSE(row.truncated);
    if (!row.decisions.empty() && row.decisions[0] == '0') {
      ++prize_zero_paths;
      mass += row.probability;
    }
  }
  // Resolution prize := 0 yields three paths of probability 1/3 each.
  CHECK(prize_zero_paths == 3);
  CHECK(mass == 1);
  for (const PathRow& row : rows) {
    if (!row.decisions.empty() && row.decisions[0] == '0') {
      CHECK(row.probability == Rational(1, 3));
    }
  }
  CHECK(testutil::paths_conserve_probability(body, sw_env(true), 0));
}

TEST_CASE("budgeted loops report truncated mass as residual") {
  StmtPtr body = body_of("geometric.pgcl");
  FormulaPtr post = parse_formula("c == 0");
  Valuation env;
  for (unsigned k : {0u, 1u, 2u, 5u, 10u}) {
    OracleResult r = expectation(body, env, post, k);
    Rational covered = Rational(1) - Rational(1, Int(1) << k);
    CHECK(r.lower_bound == covered);
    CHECK(r.residual_mass == Rational(1, Int(1) << k));
    CHECK_FALSE(r.exact);  // some mass survives every finite budget
  }
}

TEST_CASE("lower bounds are monotone and residuals antitone in the budget") {
  StmtPtr body = body_of("geometric.pgcl");
  FormulaPtr post = parse_formula("c == 0");
  Valuation env;
  OracleResult prev = expectation(body, env, post, 0);
  for (unsigned k = 1; k <= 12; ++k) {
    OracleResult cur = expectation(body, env, post, k);
    CHECK(cur.lower_bound >= prev.lower_bound);
    CHECK(cur.residual_mass <= prev.residual_mass);
    prev = cur;
  }
}

TEST_CASE("a loop whose guard is initially false costs no budget") {
  StmtPtr body = body_of("while_false.pgcl");
  FormulaPtr post = parse_formula("g == 5");
  Valuation env;
  OracleResult r = expectation(body, env, post, 0);
  CHECK(r.lower_bound == 1);
  CHECK(r.exact);
}

TEST_CASE("expectation agrees with the reference semantics on random programs") {
  testutil::ProgramGen gen(0xC0FFEEu);
  for (int round = 0; round < 300; ++round) {
    StmtPtr program = gen.program(4);
    FormulaPtr post = gen.post();
    Valuation env = gen.valuation();
    OracleResult r = expectation(program, env, post, 0);
    CHECK(r.exact);
    CHECK(r.residual_mass == 0);
    CHECK(r.lower_bound == testutil::ref_probability(program, env, post));
  }
}

TEST_CASE("expectation equals the minimum over demonic resolution strings") {
  testutil::ProgramGen gen(0xB0B0u);
  int checked = 0;
  while (checked < 120) {
    StmtPtr program = gen.program(3);
    FormulaPtr post = gen.post();
    Valuation env = gen.valuation();
    std::vector<PathRow> rows = enumerate_paths(program, env, 0);
    std::size_t depth = 0;
    for (const PathRow& row : rows) depth = std::max(depth, row.decisions.size());
    if (depth > 6) continue;  // stay inside the brute-force regime
    ++checked;
    Rational brute = testutil::policy_min_expectation(program, env, post, 0);
    CHECK(expectation(program, env, post, 0).lower_bound == brute);
    CHECK(testutil::paths_conserve_probability(program, env, 0));
  }
}

TEST_CASE("truncated rows carry their valuation and decision prefix") {
  StmtPtr body = body_of("geometric.pgcl");
  std::vector<PathRow> rows = enumerate_paths(body, Valuation{}, 2);
  bool saw_truncated = false;
  Rational mass = 0;
  for (const PathRow& row : rows) {
    mass += row.probability;
    if (row.truncated) {
      saw_truncated = true;
      CHECK(row.final_valuation.get("c") == Value::integer(Int(1)));
    }
  }
  CHECK(saw_truncated);
  CHECK(mass == 1);  // no demonic nodes, so all rows form one distribution
}
