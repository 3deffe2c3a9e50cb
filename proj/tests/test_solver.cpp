#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "skedc/generator.hpp"
#include "skedc/solver.hpp"

using namespace skedc;

namespace {

Instance make_instance(int m, std::vector<std::vector<std::vector<MachineOption>>> spec) {
  Instance in;
  in.machine_count = m;
  for (auto& job_spec : spec) {
    Job job;
    for (auto& opts : job_spec) {
      Subtask s;
      s.options = opts;
      job.subtasks.push_back(s);
    }
    in.jobs.push_back(job);
  }
  return in;
}

bool same_schedule(const Schedule& a, const Schedule& b) {
  if (!(a.makespan == b.makespan) || a.assignments.size() != b.assignments.size()) return false;
  for (size_t i = 0; i < a.assignments.size(); ++i) {
    if (a.assignments[i].size() != b.assignments[i].size()) return false;
    for (size_t j = 0; j < a.assignments[i].size(); ++j) {
      const auto& x = a.assignments[i][j];
      const auto& y = b.assignments[i][j];
      if (x.machine != y.machine || !(x.start == y.start) || !(x.end == y.end)) return false;
    }
  }
  return true;
}

bool witness_mentions(const std::vector<std::string>& witness, const std::string& needle) {
  for (const auto& w : witness)
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

bool has_violation(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs)
    if (v.code == code) return true;
  return false;
}

TEST(EvaluateFixed, SingleSubtaskStartsAtZero) {
  Instance in = make_instance(1, {{{{1, 5}}}});
  FixedDecisions fd{{{1}}, {{{1, 1}}}};
  EvalResult r = evaluate_fixed(in, {}, fd);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.schedule.assignments[0][0].start, Rational(0));
  EXPECT_EQ(r.schedule.assignments[0][0].end, Rational(5));
  EXPECT_EQ(r.schedule.makespan, Rational(5));
}

TEST(EvaluateFixed, SyncDelaysShorterJob) {
  Instance in = make_instance(2, {{{{1, 3}}}, {{{2, 5}}}});
  std::vector<ScenarioConstraint> cs = {Sync{1, 2}};
  FixedDecisions fd{{{1}, {2}}, {{{1, 1}}, {{2, 1}}}};
  EvalResult r = evaluate_fixed(in, cs, fd);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.schedule.makespan, Rational(5));
  EXPECT_EQ(r.schedule.assignments[0][0].start, Rational(2));
  EXPECT_EQ(r.schedule.assignments[1][0].start, Rational(0));
}

TEST(EvaluateFixed, DeadlineTighterThanWorkIsInfeasible) {
  Instance in = make_instance(1, {{{{1, 2}}, {{1, 3}}}});
  std::vector<ScenarioConstraint> cs = {Deadline{1, 4}};
  FixedDecisions fd{{{1, 1}}, {{{1, 1}, {1, 2}}}};
  EvalResult r = evaluate_fixed(in, cs, fd);
  ASSERT_FALSE(r.feasible);
  ASSERT_FALSE(r.witness.empty());
  EXPECT_TRUE(witness_mentions(r.witness, "deadline(1)"));
}

TEST(EvaluateFixed, MachineOrderSpacesJobs) {
  Instance in = make_instance(1, {{{{1, 3}}}, {{{1, 4}}}});
  FixedDecisions fd{{{1}, {1}}, {{{1, 1}, {2, 1}}}};
  EvalResult r = evaluate_fixed(in, {}, fd);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.schedule.assignments[0][0].start, Rational(0));
  EXPECT_EQ(r.schedule.assignments[1][0].start, Rational(3));
  EXPECT_EQ(r.schedule.makespan, Rational(7));

  FixedDecisions swapped{{{1}, {1}}, {{{2, 1}, {1, 1}}}};
  EvalResult r2 = evaluate_fixed(in, {}, swapped);
  ASSERT_TRUE(r2.feasible);
  EXPECT_EQ(r2.schedule.assignments[1][0].start, Rational(0));
  EXPECT_EQ(r2.schedule.assignments[0][0].start, Rational(4));
}

TEST(EvaluateFixed, MinGapShiftsSuccessor) {
  Instance in = make_instance(1, {{{{1, 3}}, {{1, 4}}}});
  std::vector<ScenarioConstraint> cs = {MinGap{1, 1, 2}};
  FixedDecisions fd{{{1, 1}}, {{{1, 1}, {1, 2}}}};
  EvalResult r = evaluate_fixed(in, cs, fd);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.schedule.assignments[0][1].start, Rational(5));
  EXPECT_EQ(r.schedule.makespan, Rational(9));
}

TEST(EvaluateFixed, MaxGapConflictsWithInterleavedOrder) {
  // 2.1 wedged between the chain pair while the chain tolerates no gap.
  Instance in = make_instance(1, {{{{1, 3}}, {{1, 4}}}, {{{1, 5}}}});
  std::vector<ScenarioConstraint> cs = {MaxGap{1, 1, 0}};
  FixedDecisions fd{{{1, 1}, {1}}, {{{1, 1}, {2, 1}, {1, 2}}}};
  EvalResult r = evaluate_fixed(in, cs, fd);
  ASSERT_FALSE(r.feasible);
  EXPECT_TRUE(witness_mentions(r.witness, "max_gap(1.1)"));

  EvalResult ok = evaluate_fixed(in, {}, fd);
  ASSERT_TRUE(ok.feasible);
  EXPECT_EQ(ok.schedule.makespan, Rational(12));
}

TEST(EvaluateFixed, ThrowsOnBadDecisions) {
  Instance in = make_instance(2, {{{{1, 3}}}});
  FixedDecisions wrong_machine{{{2}}, {{}, {{1, 1}}}};
  EXPECT_THROW(evaluate_fixed(in, {}, wrong_machine), std::invalid_argument);
  FixedDecisions missing{{{1}}, {{}, {}}};
  EXPECT_THROW(evaluate_fixed(in, {}, missing), std::invalid_argument);
  FixedDecisions misplaced{{{1}}, {{}, {{1, 1}}}};
  EXPECT_THROW(evaluate_fixed(in, {}, misplaced), std::invalid_argument);
}

TEST(BruteForce, SingleJobPicksFastestPair) {
  Instance in = make_instance(2, {{{{1, 3}, {2, 5}}, {{1, 4}, {2, 2}}}});
  SolveReport rep = brute_force(in, {});
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->makespan, Rational(5));
  EXPECT_EQ(rep.lower_bound, Rational(5));
}

// Frozen from the enumeration itself: 4 assignments yield 20 leaves, the
// minimum over all of them is 6, reached first by the schedule below.
TEST(BruteForce, GoldenTwoJobs) {
  Instance in = make_instance(
      2, {{{{1, 2}, {2, 3}}, {{2, 2}}}, {{{1, 4}}, {{1, 1}, {2, 3}}}});
  std::vector<ScenarioConstraint> cs = {MinGap{1, 1, 1}, Release{2, 1}};
  SolveReport rep = brute_force(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->makespan, Rational(6));
  EXPECT_EQ(rep.nodes, 20);
  const auto& a = rep.best->assignments;
  EXPECT_EQ(a[0][0].machine, 2);
  EXPECT_EQ(a[0][0].start, Rational(0));
  EXPECT_EQ(a[0][1].start, Rational(4));
  EXPECT_EQ(a[1][0].start, Rational(1));
  EXPECT_EQ(a[1][1].machine, 1);
  EXPECT_EQ(a[1][1].end, Rational(6));
  EXPECT_TRUE(verify_schedule(in, cs, *rep.best).empty());
}

// Frozen the same way: 60 leaves, optimum 8 with the sync pair ending together.
TEST(BruteForce, GoldenThreeJobs) {
  Instance in = make_instance(2, {{{{1, 3}, {2, 4}}},
                                  {{{2, 2}}, {{1, 2}, {2, 5}}},
                                  {{{1, 6}, {2, 6}}}});
  std::vector<ScenarioConstraint> cs = {Sync{1, 3}, Deadline{2, 9}};
  SolveReport rep = brute_force(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->makespan, Rational(8));
  EXPECT_EQ(rep.nodes, 60);
  EXPECT_TRUE(verify_schedule(in, cs, *rep.best).empty());
}

TEST(BruteForce, InfeasibleIsolationDeadline) {
  Instance in = make_instance(1, {{{{1, 2}}, {{1, 3}}}});
  std::vector<ScenarioConstraint> cs = {Deadline{1, 4}};
  SolveReport rep = brute_force(in, cs);
  EXPECT_EQ(rep.status, SolveStatus::Infeasible);
  EXPECT_FALSE(rep.best.has_value());
  EXPECT_TRUE(witness_mentions(rep.witness, "deadline(1)"));
}

TEST(BruteForce, TooLargeByAssignments) {
  Instance in = make_instance(
      2, {{{{1, 1}, {2, 1}}, {{1, 1}, {2, 1}}}, {{{1, 1}, {2, 1}}, {{1, 1}, {2, 1}}}});
  try {
    brute_force(in, {}, OracleLimits{10});
    FAIL() << "expected OracleTooLarge";
  } catch (const OracleTooLarge& e) {
    EXPECT_EQ(e.leaves, 16);  // assignment combinations alone already exceed
    EXPECT_FALSE(e.is_exact);
    EXPECT_NE(std::string(e.what()).find("at least 16"), std::string::npos);
  }
}

TEST(BruteForce, TooLargeByPermutations) {
  Instance in =
      make_instance(1, {{{{1, 1}}, {{1, 1}}, {{1, 1}}, {{1, 1}}, {{1, 1}}}});
  try {
    brute_force(in, {}, OracleLimits{100});
    FAIL() << "expected OracleTooLarge";
  } catch (const OracleTooLarge& e) {
    EXPECT_EQ(e.leaves, 120);  // one machine, five subtasks: 5! orders
    EXPECT_TRUE(e.is_exact);
  }
}

TEST(BranchAndBound, ChainTwoSubtasks) {
  Instance in = make_instance(1, {{{{1, 3}}, {{1, 4}}}});
  SolveReport rep = branch_and_bound(in, {});
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->makespan, Rational(7));
  EXPECT_EQ(rep.lower_bound, Rational(7));
  EXPECT_GE(rep.nodes, 1);
  EXPECT_TRUE(verify_schedule(in, {}, *rep.best).empty());
}

TEST(BranchAndBound, TimeLimitZero) {
  Instance in = make_instance(1, {{{{1, 3}}, {{1, 4}}}});
  SolveParams p;
  p.time_limit_seconds = 0.0;
  SolveReport rep = branch_and_bound(in, {}, p);
  EXPECT_EQ(rep.status, SolveStatus::TimeLimit);
  EXPECT_FALSE(rep.best.has_value());
  EXPECT_FALSE(rep.lower_bound < Rational(0));
  EXPECT_EQ(rep.nodes, 0);
}

TEST(BranchAndBound, SyncPairValueFive) {
  Instance in = make_instance(2, {{{{1, 3}}}, {{{2, 5}}}});
  std::vector<ScenarioConstraint> cs = {Sync{1, 2}};
  SolveReport rep = branch_and_bound(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->makespan, Rational(5));
  EXPECT_EQ(rep.best->assignments[0][0].start, Rational(2));
  EXPECT_TRUE(verify_schedule(in, cs, *rep.best).empty());
}

TEST(BranchAndBound, ReleaseShiftsStart) {
  Instance in = make_instance(1, {{{{1, 5}}}});
  std::vector<ScenarioConstraint> cs = {Release{1, 10}};
  SolveReport rep = branch_and_bound(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->assignments[0][0].start, Rational(10));
  EXPECT_EQ(rep.best->makespan, Rational(15));
}

TEST(BranchAndBound, WindowForcesStart) {
  Instance in = make_instance(1, {{{{1, 5}}}});
  std::vector<ScenarioConstraint> cs = {Window{1, 4, 6}};
  SolveReport rep = branch_and_bound(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->assignments[0][0].start, Rational(4));
  EXPECT_EQ(rep.best->makespan, Rational(9));
}

TEST(BranchAndBound, MinGapAddsExactly) {
  Instance in = make_instance(1, {{{{1, 3}}, {{1, 4}}}});
  std::vector<ScenarioConstraint> cs = {MinGap{1, 1, 2}};
  SolveReport rep = branch_and_bound(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->makespan, Rational(9));
}

TEST(BranchAndBound, MaxGapZeroKeepsChainBackToBack) {
  Instance in = make_instance(1, {{{{1, 3}}, {{1, 4}}}, {{{1, 5}}}});
  std::vector<ScenarioConstraint> cs = {MaxGap{1, 1, 0}};
  SolveReport rep = branch_and_bound(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  EXPECT_EQ(rep.best->makespan, Rational(12));
  const auto& a = rep.best->assignments[0];
  EXPECT_EQ(a[1].start, a[0].end);
  EXPECT_TRUE(verify_schedule(in, cs, *rep.best).empty());
}

TEST(BranchAndBound, InfeasibleWitnessNamesConstraint) {
  Instance in = make_instance(1, {{{{1, 2}}, {{1, 3}}}});
  std::vector<ScenarioConstraint> cs = {Deadline{1, 4}};
  SolveReport rep = branch_and_bound(in, cs);
  EXPECT_EQ(rep.status, SolveStatus::Infeasible);
  EXPECT_FALSE(rep.best.has_value());
  EXPECT_TRUE(witness_mentions(rep.witness, "deadline(1)"));
}

TEST(BranchAndBound, GoldenValuesMatchOracle) {
  Instance a = make_instance(
      2, {{{{1, 2}, {2, 3}}, {{2, 2}}}, {{{1, 4}}, {{1, 1}, {2, 3}}}});
  std::vector<ScenarioConstraint> acs = {MinGap{1, 1, 1}, Release{2, 1}};
  SolveReport ra = branch_and_bound(a, acs);
  ASSERT_EQ(ra.status, SolveStatus::Optimal);
  EXPECT_EQ(ra.best->makespan, Rational(6));

  Instance b = make_instance(2, {{{{1, 3}, {2, 4}}},
                                 {{{2, 2}}, {{1, 2}, {2, 5}}},
                                 {{{1, 6}, {2, 6}}}});
  std::vector<ScenarioConstraint> bcs = {Sync{1, 3}, Deadline{2, 9}};
  SolveReport rb = branch_and_bound(b, bcs);
  ASSERT_EQ(rb.status, SolveStatus::Optimal);
  EXPECT_EQ(rb.best->makespan, Rational(8));
}

TEST(BranchAndBound, MatchesOracleOnRandomInstances) {
  int done = 0;
  unsigned long long seed = 40001;
  while (done < 40) {
    std::mt19937_64 rng(seed);
    Instance in = random_instance(rng);
    auto cs = random_constraints(rng, in);
    ++seed;
    SolveReport oracle;
    try {
      oracle = brute_force(in, cs, OracleLimits{200000});
    } catch (const OracleTooLarge&) {
      continue;
    }
    SolveReport bnb = branch_and_bound(in, cs);
    ASSERT_EQ(bnb.status, oracle.status) << "seed " << seed - 1;
    if (oracle.best) {
      ASSERT_TRUE(bnb.best.has_value()) << "seed " << seed - 1;
      ASSERT_EQ(bnb.best->makespan, oracle.best->makespan) << "seed " << seed - 1;
      ASSERT_TRUE(verify_schedule(in, cs, *oracle.best).empty()) << "seed " << seed - 1;
      ASSERT_TRUE(verify_schedule(in, cs, *bnb.best).empty()) << "seed " << seed - 1;
      Rational h(horizon(in, cs));
      for (const auto& job : bnb.best->assignments)
        for (const auto& e : job) ASSERT_FALSE(h < e.start) << "seed " << seed - 1;
    }
    ++done;
  }
}

TEST(BranchAndBound, ParallelMatchesSingleWorker) {
  int done = 0;
  unsigned long long seed = 90001;
  while (done < 10) {
    std::mt19937_64 rng(seed);
    Instance in = random_instance(rng);
    auto cs = random_constraints(rng, in);
    ++seed;
    SolveReport solo = branch_and_bound(in, cs);
    SolveParams par;
    par.workers = 3;
    par.canonicalize = true;
    SolveReport multi = branch_and_bound(in, cs, par);
    ASSERT_EQ(multi.status, solo.status) << "seed " << seed - 1;
    if (solo.best) {
      ASSERT_TRUE(multi.best.has_value());
      ASSERT_EQ(multi.best->makespan, solo.best->makespan) << "seed " << seed - 1;
      ASSERT_TRUE(same_schedule(*multi.best, *solo.best)) << "seed " << seed - 1;
      ASSERT_TRUE(verify_schedule(in, cs, *multi.best).empty()) << "seed " << seed - 1;
    }
    ++done;
  }
}

TEST(VerifySchedule, FlagsTamperedSchedules) {
  Instance in = make_instance(1, {{{{1, 3}}}, {{{1, 4}}}});
  std::vector<ScenarioConstraint> cs = {Release{1, 2}};
  SolveReport rep = branch_and_bound(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  Schedule good = *rep.best;
  ASSERT_TRUE(verify_schedule(in, cs, good).empty());

  Schedule overlap = good;
  overlap.assignments[1][0].start = overlap.assignments[0][0].start;
  overlap.assignments[1][0].end = overlap.assignments[1][0].start + Rational(4);
  EXPECT_TRUE(has_violation(verify_schedule(in, cs, overlap), "MachineOverlap"));

  Schedule early = good;
  early.assignments[0][0].start = Rational(0);
  early.assignments[0][0].end = Rational(3);
  auto vs = verify_schedule(in, cs, early);
  ASSERT_TRUE(has_violation(vs, "ReleaseViolated"));
  bool tagged = false;
  for (const auto& v : vs)
    if (v.code == "ReleaseViolated" && v.message.find("i=1") != std::string::npos) tagged = true;
  EXPECT_TRUE(tagged);

  Schedule wrong_machine = good;
  wrong_machine.assignments[0][0].machine = 9;
  EXPECT_TRUE(has_violation(verify_schedule(in, cs, wrong_machine), "IneligibleMachine"));

  Schedule stretched = good;
  stretched.assignments[0][0].end = stretched.assignments[0][0].end + Rational(1);
  EXPECT_TRUE(has_violation(verify_schedule(in, cs, stretched), "DurationMismatch"));

  Schedule lying = good;
  lying.makespan = lying.makespan + Rational(1);
  EXPECT_TRUE(has_violation(verify_schedule(in, cs, lying), "MakespanMismatch"));

  Schedule truncated = good;
  truncated.assignments.pop_back();
  EXPECT_TRUE(has_violation(verify_schedule(in, cs, truncated), "ShapeMismatch"));
}

TEST(VerifySchedule, FlagsBrokenChainAndSync) {
  Instance in = make_instance(2, {{{{1, 2}}, {{1, 3}}}, {{{2, 4}}}});
  std::vector<ScenarioConstraint> cs = {Sync{1, 2}, MinGap{1, 1, 1}, MaxGap{1, 1, 3}};
  SolveReport rep = branch_and_bound(in, cs);
  ASSERT_EQ(rep.status, SolveStatus::Optimal);
  Schedule good = *rep.best;
  ASSERT_TRUE(verify_schedule(in, cs, good).empty());

  Schedule squeezed = good;
  squeezed.assignments[0][1].start = squeezed.assignments[0][0].end;
  squeezed.assignments[0][1].end = squeezed.assignments[0][1].start + Rational(3);
  auto vs = verify_schedule(in, cs, squeezed);
  EXPECT_TRUE(has_violation(vs, "MinGapViolated"));

  Schedule drifted = good;
  drifted.assignments[1][0].start = drifted.assignments[1][0].start + Rational(1);
  drifted.assignments[1][0].end = drifted.assignments[1][0].end + Rational(1);
  auto vs2 = verify_schedule(in, cs, drifted);
  EXPECT_TRUE(has_violation(vs2, "SyncViolated") || has_violation(vs2, "MakespanMismatch"));

  Schedule reversed = good;
  std::swap(reversed.assignments[0][0].start, reversed.assignments[0][1].start);
  std::swap(reversed.assignments[0][0].end, reversed.assignments[0][1].end);
  EXPECT_TRUE(has_violation(verify_schedule(in, cs, reversed), "PrecedenceViolated"));
}

}  // namespace
