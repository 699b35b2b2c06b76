#include <doctest.h>

#include <json.hpp>

#include "errors.hpp"
#include "pipeline.hpp"
#include "testutil.hpp"

using namespace pdl;

namespace {

Verdict verify_example(const std::string& name, unsigned budget) {
  return verify_task(testutil::parse_file(testutil::example_path(name)), budget);
}

ErrorKind oracle_error(const VerificationTask& task, const Bindings& b) {
  try {
    oracle_task(task, b, 8);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("verdict statuses across the example corpus") {
  Verdict monty = verify_example("monty_hall.pgcl", 8);
  CHECK(monty.status == VerdictStatus::Proved);
  CHECK(monty.claimed == Rational(2, 3));
  CHECK(monty.max_provable == Rational(2, 3));
  CHECK_FALSE(monty.saw_undecided);
  CHECK_FALSE(monty.saw_budget_exhausted);

  // Claiming 2/3 without switching is refuted outright: the solver caps the
  // provable bound at 1/3 and nothing about the tree was approximate.
  Verdict keep = verify_example("monty_hall_noswitch.pgcl", 8);
  CHECK(keep.status == VerdictStatus::RefutedBySolver);
  CHECK(keep.max_provable == Rational(1, 3));

  Verdict open = verify_example("monty_hall_demonic_open.pgcl", 8);
  CHECK(open.status == VerdictStatus::Proved);
  CHECK(open.max_provable == Rational(2, 3));

  Verdict free_loop = verify_example("while_false.pgcl", 0);
  CHECK(free_loop.status == VerdictStatus::Proved);
  CHECK(free_loop.max_provable == 1);
}

TEST_CASE("loop truncation turns shortfalls into INCONCLUSIVE, not refutation") {
  Verdict low = verify_example("geometric.pgcl", 8);
  CHECK(low.status == VerdictStatus::Inconclusive);
  CHECK(low.max_provable == Rational(255, 256));
  CHECK(low.saw_budget_exhausted);

  Verdict enough = verify_example("geometric.pgcl", 10);
  CHECK(enough.status == VerdictStatus::Proved);
  CHECK(enough.max_provable == Rational(1023, 1024));

  // An almost-sure claim stays open at any finite budget.
  Verdict target_one = verify_example("geometric_claim_one.pgcl", 25);
  CHECK(target_one.status == VerdictStatus::Inconclusive);
  Int covered = Int(Int(1) << 25) - 1;
  CHECK(target_one.max_provable == Rational(covered, Int(Int(1) << 25)));
}

TEST_CASE("undecided validity checks also mark the verdict INCONCLUSIVE") {
  Verdict v = verify_example("unbounded_input.pgcl", 8);
  CHECK(v.status == VerdictStatus::Inconclusive);
  CHECK(v.saw_undecided);
  CHECK_FALSE(v.saw_budget_exhausted);
  CHECK(v.max_provable == 0);
  REQUIRE(v.undecided_queries.size() == 1);
  CHECK(v.undecided_queries[0].find("(set-logic QF_NIA)") != std::string::npos);
}

TEST_CASE("verdicts expose the emitted constraint system plus the target") {
  Verdict v = verify_example("monty_hall.pgcl", 8);
  REQUIRE_FALSE(v.constraints.empty());
  const auto* t = std::get_if<ProbConstraint::TargetLB>(&v.constraints.back().node);
  REQUIRE(t != nullptr);
  CHECK(t->bound == Rational(2, 3));
  CHECK(t->var == ProbVarId{});
  CHECK(to_string(v.constraints.front()) == "p <= min(p0, p1, p2)");
}

TEST_CASE("verdict JSON carries exactly the four contract fields in order") {
  Verdict v = verify_example("monty_hall.pgcl", 8);
  auto j = nlohmann::ordered_json::parse(verdict_json(v));
  REQUIRE(j.size() == 4);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"status", "claimed", "maxProvable", "elapsedMs"});
  CHECK(j["status"] == "PROVED");
  CHECK(j["claimed"] == "2/3");
  CHECK(j["maxProvable"] == "2/3");
  CHECK(j["elapsedMs"].is_number_integer());

  auto refuted = nlohmann::ordered_json::parse(
      verdict_json(verify_example("monty_hall_noswitch.pgcl", 8)));
  CHECK(refuted["status"] == "REFUTED_BY_SOLVER");
  CHECK(refuted["maxProvable"] == "1/3");
}

TEST_CASE("verdict text states the outcome and advises on inconclusive runs") {
  std::string proved = verdict_text(verify_example("monty_hall.pgcl", 8));
  CHECK(proved.find("status: PROVED") == 0);
  CHECK(proved.find("claimed: 2/3") != std::string::npos);
  CHECK(proved.find("max provable: 2/3") != std::string::npos);
  CHECK(proved.find("note:") == std::string::npos);

  std::string truncated = verdict_text(verify_example("geometric.pgcl", 8));
  CHECK(truncated.find("status: INCONCLUSIVE") == 0);
  CHECK(truncated.find("unroll budget") != std::string::npos);

  std::string undecided = verdict_text(verify_example("unbounded_input.pgcl", 8));
  CHECK(undecided.find("status: INCONCLUSIVE") == 0);
  CHECK(undecided.find("undecided") != std::string::npos);
}

TEST_CASE("oracle runs honor explicit bindings verbatim") {
  VerificationTask monty = testutil::parse_file(testutil::example_path("monty_hall.pgcl"));

  Bindings switching{{"sw", Value::boolean(true)}};
  OracleRun yes = oracle_task(monty, switching, 8);
  REQUIRE(yes.rows.size() == 1);
  CHECK(yes.min_lower_bound == Rational(2, 3));
  CHECK(yes.all_exact);

  // A fully bound state bypasses the @assume filter deliberately: the user
  // may probe states outside the verified precondition.
  Bindings keeping{{"sw", Value::boolean(false)}};
  OracleRun no = oracle_task(monty, keeping, 8);
  REQUIRE(no.rows.size() == 1);
  CHECK(no.min_lower_bound == Rational(1, 3));
}

TEST_CASE("unbound inputs enumerate over domains implied by @assume") {
  VerificationTask monty = testutil::parse_file(testutil::example_path("monty_hall.pgcl"));
  OracleRun run = oracle_task(monty, {}, 8);
  REQUIRE(run.rows.size() == 1);  // sw == true filters out sw = false
  CHECK(run.rows[0].initial.get("sw") == Value::boolean(true));
  CHECK(run.min_lower_bound == Rational(2, 3));

  VerificationTask both = testutil::parse_file(testutil::example_path("bool_input.pgcl"));
  OracleRun free_bool = oracle_task(both, {}, 8);
  CHECK(free_bool.rows.size() == 2);  // no @assume, booleans enumerate anyway
  CHECK(free_bool.min_lower_bound == 1);

  VerificationTask ranged = parse_task(
      "@input n : int\n@assume n >= 0 && n <= 2\n@ensures n >= 0\n@prob 1\n{ skip; }");
  OracleRun three = oracle_task(ranged, {}, 8);
  CHECK(three.rows.size() == 3);
  CHECK(three.min_lower_bound == 1);
  CHECK(three.all_exact);
}

TEST_CASE("bad oracle bindings fail with specific messages") {
  VerificationTask monty = testutil::parse_file(testutil::example_path("monty_hall.pgcl"));

  CHECK(oracle_error(monty, {{"nope", Value::boolean(true)}}) == ErrorKind::BadInput);
  CHECK(oracle_error(monty, {{"sw", Value::integer(Int(3))}}) == ErrorKind::BadInput);

  VerificationTask unbounded = testutil::parse_file(testutil::example_path("unbounded_input.pgcl"));
  CHECK(oracle_error(unbounded, {}) == ErrorKind::BadInput);
  // Binding the troublesome input restores the run.
  OracleRun pinned = oracle_task(unbounded, {{"n", Value::integer(Int(0))}}, 8);
  CHECK(pinned.min_lower_bound == 1);

  VerificationTask contradictory = parse_task(
      "@input a : int\n@assume a >= 0 && a <= 1 && a == 5\n"
      "@ensures a == 5\n@prob 1\n{ skip; }");
  CHECK(oracle_error(contradictory, {}) == ErrorKind::BadInput);
}

TEST_CASE("oracle text and JSON describe each admitted initial state") {
  VerificationTask monty = testutil::parse_file(testutil::example_path("monty_hall.pgcl"));
  OracleRun run = oracle_task(monty, {}, 8);

  std::string text = oracle_text(run);
  CHECK(text.find("initial {sw=true}: lower bound 2/3 (exact)") != std::string::npos);
  CHECK(text.find("minimum lower bound: 2/3") != std::string::npos);
  CHECK(text.find("all exact: yes") != std::string::npos);

  auto j = nlohmann::ordered_json::parse(oracle_json(run));
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["initial"]["sw"] == "true");
  CHECK(j["rows"][0]["lowerBound"] == "2/3");
  CHECK(j["rows"][0]["exact"] == true);
  CHECK(j["minLowerBound"] == "2/3");
  CHECK(j["allExact"] == true);

  std::string geo = oracle_text(oracle_task(
      testutil::parse_file(testutil::example_path("geometric.pgcl")), {}, 4));
  CHECK(geo.find("lower bound 15/16, residual 1/16") != std::string::npos);
  CHECK(geo.find("all exact: no") != std::string::npos);
}

TEST_CASE("path tables demand fully bound inputs") {
  VerificationTask monty = testutil::parse_file(testutil::example_path("monty_hall.pgcl"));
  CHECK_THROWS_AS(paths_text(monty, {}, 8), Error);

  std::string table = paths_text(monty, {{"sw", Value::boolean(true)}}, 8);
  CHECK(table.find("initial {sw=true}") == 0);
  CHECK(table.find("probability 1/3 | decisions 0 |") != std::string::npos);
  // Nine paths across three demonic resolutions, all of weight 1/3.
  int rows = 0;
  for (std::size_t at = table.find("probability 1/3"); at != std::string::npos;
       at = table.find("probability 1/3", at + 1)) {
    ++rows;
  }
  CHECK(rows == 9);

  std::string truncated = paths_text(
      testutil::parse_file(testutil::example_path("geometric.pgcl")), {}, 2);
  CHECK(truncated.find("| truncated") != std::string::npos);
  CHECK(truncated.find("decisions -") != std::string::npos);
}

TEST_CASE("verify and oracle agree on the loop-free pinned corpus") {
  testutil::ProgramGen gen(0x5EEDu);
  for (int round = 0; round < 60; ++round) {
    VerificationTask task = gen.pinned_task(3);
    Verdict v = verify_task(task, 8);
    OracleRun o = oracle_task(task, {}, 8);
    REQUIRE(o.all_exact);
    // The proof system is exact here, so the verdict matches the oracle power.
    CHECK(v.max_provable == o.min_lower_bound);
    CHECK((v.status == VerdictStatus::Proved) ==
          (o.min_lower_bound >= task.prob_bound));
  }
}
