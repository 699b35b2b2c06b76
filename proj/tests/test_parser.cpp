#include <doctest.h>

#include <filesystem>

#include "errors.hpp"
#include "parser.hpp"
#include "testutil.hpp"

using namespace pdl;

namespace {

ErrorKind kind_of(const std::string& source) {
  try {
    parse_task(source);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error for: ", source);
  return ErrorKind::Internal;
}

const char* kMinimal = "@ensures x == 0\n@prob 1\n{ x := 0; }";

}  // namespace

TEST_CASE("the Monty Hall task parses to the documented shape") {
  VerificationTask t =
      testutil::parse_file(testutil::example_path("monty_hall.pgcl"));
  CHECK(t.prob_bound == Rational(2, 3));
  REQUIRE(t.inputs.size() == 1);
  CHECK(t.inputs[0].name == "sw");
  CHECK(t.inputs[0].is_bool);
  CHECK(std::holds_alternative<StateFormula::Atom>(t.ensures->node));
  CHECK(to_string(*t.ensures) == "choice == prize");
  CHECK(free_vars(*t.body) ==
        std::set<std::string>{"prize", "choice", "open", "sw"});
}

TEST_CASE("sequencing is right-associative") {
  VerificationTask t = parse_task("@ensures x == 2\n@prob 1\n{ x := 0; x := 1; x := 2; }");
  const auto* outer = std::get_if<Stmt::Seq>(&t.body->node);
  REQUIRE(outer != nullptr);
  CHECK(std::holds_alternative<Stmt::Assign>(outer->first->node));
  const auto* inner = std::get_if<Stmt::Seq>(&outer->second->node);
  REQUIRE(inner != nullptr);
  CHECK(std::holds_alternative<Stmt::Assign>(inner->first->node));
  CHECK(std::holds_alternative<Stmt::Assign>(inner->second->node));
}

TEST_CASE("choice statements require braced operands and a suffix") {
  VerificationTask t = parse_task(
      "@ensures x == 0\n@prob 1\n{ { x := 0; } [] { x := 1; } }");
  CHECK(std::holds_alternative<Stmt::Demonic>(t.body->node));

  VerificationTask p = parse_task(
      "@ensures x == 0\n@prob 1\n{ { x := 0; } [2/5] { x := 1; } }");
  const auto* prob = std::get_if<Stmt::Prob>(&p.body->node);
  REQUIRE(prob != nullptr);
  CHECK(prob->prob.value() == Rational(2, 5));

  VerificationTask d = parse_task(
      "@ensures x == 0\n@prob 1\n{ { x := 0; } [0.25] { x := 1; } }");
  const auto* dec = std::get_if<Stmt::Prob>(&d.body->node);
  REQUIRE(dec != nullptr);
  CHECK(dec->prob.value() == Rational(1, 4));

  CHECK(kind_of("@ensures x == 0\n@prob 1\n{ { x := 0; } { x := 1; } }") ==
        ErrorKind::Syntax);
}

TEST_CASE("header errors carry specific kinds") {
  CHECK(kind_of("@prob 1\n{ x := 0; }") == ErrorKind::Syntax);  // no @ensures
  CHECK(kind_of("@ensures x == 0\n{ x := 0; }") == ErrorKind::Syntax);
  CHECK(kind_of("@ensures x == 0\n@ensures x == 1\n@prob 1\n{ x := 0; }") ==
        ErrorKind::DuplicateHeader);
  CHECK(kind_of("@prob 1\n@prob 1\n@ensures x == 0\n{ x := 0; }") ==
        ErrorKind::DuplicateHeader);
  CHECK(kind_of("@assume true\n@assume true\n@ensures x == 0\n@prob 1\n"
                "{ x := 0; }") == ErrorKind::DuplicateHeader);
  CHECK(kind_of("@input n : int\n@input n : int\n@ensures n == 0\n@prob 1\n"
                "{ skip; }") == ErrorKind::DuplicateHeader);
  CHECK(kind_of("@ensure x == 0\n@prob 1\n{ x := 0; }") ==
        ErrorKind::UnknownDirective);
  CHECK(kind_of("@prob 3/2\n@ensures x == 0\n{ x := 0; }") ==
        ErrorKind::ProbOutOfRange);
  CHECK(kind_of("@prob -1/2\n@ensures x == 0\n{ x := 0; }") ==
        ErrorKind::Syntax);  // '-' cannot start a probability literal
  CHECK(kind_of("@input n : real\n@ensures n == 0\n@prob 1\n{ skip; }") ==
        ErrorKind::Syntax);
}

TEST_CASE("probabilities out of range are rejected inside programs too") {
  CHECK(kind_of("@ensures x == 0\n@prob 1\n{ { x := 0; } [7/6] { x := 1; } }") ==
        ErrorKind::ProbOutOfRange);
  CHECK(kind_of("@ensures x == 0\n@prob 1\n{ { x := 0; } [1/0] { x := 1; } }") ==
        ErrorKind::DivisionByZero);
}

TEST_CASE("reads of unassigned variables are rejected") {
  CHECK(kind_of("@ensures x == 0\n@prob 1\n{ x := y + 1; }") ==
        ErrorKind::UnboundVariable);
  CHECK(kind_of("@ensures x == 0\n@prob 1\n{ if (x == 0) { x := 0; } else { x := 1; } }") ==
        ErrorKind::UnboundVariable);
  // A loop body's assignments are not definite afterwards.
  CHECK(kind_of("@ensures x == 0\n@prob 1\n"
                "{ while (1 == 2) { x := 0; } y := x; }") ==
        ErrorKind::UnboundVariable);
  // Both branches assigning makes the variable definite.
  VerificationTask ok = parse_task(
      "@input b : bool\n@ensures x == 0\n@prob 1\n"
      "{ if (b) { x := 0; } else { x := 0; } y := x; }");
  CHECK(free_vars(*ok.body).count("x") == 1);
}

TEST_CASE("specification variables must be inputs or definitely assigned") {
  CHECK(kind_of("@assume y == 1\n@ensures x == 0\n@prob 1\n{ x := 0; }") ==
        ErrorKind::UnboundVariable);
  CHECK(kind_of("@ensures y == 0\n@prob 1\n{ x := 0; }") ==
        ErrorKind::UnboundVariable);
  // Assigned in only one branch: not definite at exit.
  CHECK(kind_of("@input b : bool\n@ensures y == 0\n@prob 1\n"
                "{ if (b) { y := 0; } else { skip; } }") ==
        ErrorKind::UnboundVariable);
  // Demonic and probabilistic branches must both assign.
  VerificationTask ok = parse_task(
      "@ensures y == 0\n@prob 1\n{ { y := 0; } [] { y := 1; } }");
  CHECK(to_string(*ok.ensures) == "y == 0");
  CHECK(kind_of("@ensures y == 0\n@prob 1\n{ { y := 0; } [1/2] { skip; } }") ==
        ErrorKind::UnboundVariable);
}

TEST_CASE("quantified variables may not shadow program variables") {
  CHECK(kind_of("@input x : int\n@assume x == 0\n"
                "@ensures forall x in [0..2] : x == 0\n@prob 1\n{ skip; }") ==
        ErrorKind::Syntax);
  VerificationTask ok = parse_task(
      "@input x : int\n@assume x == 0\n"
      "@ensures forall i in [0..2] : x <= i || i < 0\n@prob 1\n{ skip; }");
  CHECK(free_vars(*ok.ensures) == std::set<std::string>{"x"});
}

TEST_CASE("program expressions reject formula-only syntax") {
  CHECK(kind_of("@ensures x == 0\n@prob 1\n{ x := 1 -> 2; }") ==
        ErrorKind::Syntax);
  CHECK(kind_of("@input b : bool\n@ensures x == 0\n@prob 1\n"
                "{ if (forall i in [0..1] : b) { x := 0; } else { x := 0; } }") ==
        ErrorKind::Syntax);
  CHECK_THROWS_AS(parse_expression("a -> b"), Error);
  CHECK_THROWS_AS(parse_expression("exists i in [0..1] : i == 0"), Error);
}

TEST_CASE("lexical errors are reported with positions") {
  try {
    parse_task("@ensures x == 0\n@prob 1\n{ x = 0; }");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Syntax);
    REQUIRE(e.span().has_value());
    CHECK(e.span()->line == 3);
    CHECK(std::string(e.what()).find("'='") != std::string::npos);
  }
  CHECK(kind_of("@ensures x == 0\n@prob 1\n{ x := 0 & 1; }") == ErrorKind::Syntax);
  CHECK(kind_of("@ensures x == 0\n@prob 1\n{ x := $; }") == ErrorKind::Syntax);
}

TEST_CASE("comments and whitespace are ignored") {
  VerificationTask t = parse_task(
      "// leading comment\n@ensures x == 0 // trailing\n@prob 1\n"
      "{\n  // inside\n  x := 0;\n}\n");
  CHECK(std::holds_alternative<Stmt::Assign>(t.body->node));
}

TEST_CASE("an omitted @assume defaults to true") {
  VerificationTask t = parse_task(kMinimal);
  Valuation env;
  CHECK(sat_state_formula(env, *t.assume));
}

TEST_CASE("pretty printing round trips every example") {
  namespace fs = std::filesystem;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(PDL_EXAMPLES_DIR)) {
    if (entry.path().extension() != ".pgcl") continue;
    ++seen;
    VerificationTask once = testutil::parse_file(entry.path().string());
    VerificationTask twice = parse_task(pretty_print(once));
    CHECK_MESSAGE(struct_eq(*once.body, *twice.body), entry.path().string());
    CHECK_MESSAGE(struct_eq(*once.assume, *twice.assume), entry.path().string());
    CHECK_MESSAGE(struct_eq(*once.ensures, *twice.ensures),
                  entry.path().string());
    CHECK(once.prob_bound == twice.prob_bound);
    REQUIRE(once.inputs.size() == twice.inputs.size());
    for (std::size_t i = 0; i < once.inputs.size(); ++i) {
      CHECK(once.inputs[i].name == twice.inputs[i].name);
      CHECK(once.inputs[i].is_bool == twice.inputs[i].is_bool);
    }
  }
  CHECK(seen >= 15);
}

TEST_CASE("input_types reflects declarations") {
  VerificationTask t = parse_task(
      "@input n : int\n@input b : bool\n@assume n == 0\n@ensures n == 0\n"
      "@prob 1\n{ skip; }");
  TypeEnv env = input_types(t);
  CHECK(env.at("n") == false);
  CHECK(env.at("b") == true);
}
