#include <gtest/gtest.h>

#include "skedc/parse.hpp"

using namespace skedc;

TEST(ParseFjs, SmallestWellFormedFile) {
  Instance in = parse_fjs("1 1 1\n1 1 1 5\n");
  ASSERT_EQ(in.job_count(), 1);
  EXPECT_EQ(in.machine_count, 1);
  ASSERT_EQ(in.jobs[0].subtasks.size(), 1u);
  EXPECT_EQ(in.jobs[0].subtasks[0].options, (std::vector<MachineOption>{{1, 5}}));
}

TEST(ParseFjs, TwoJobs) {
  Instance in = parse_fjs("2 2 1\n1 2 1 3 2 4\n1 1 2 6\n");
  ASSERT_EQ(in.job_count(), 2);
  EXPECT_EQ(in.jobs[0].subtasks[0].options, (std::vector<MachineOption>{{1, 3}, {2, 4}}));
  EXPECT_EQ(in.jobs[1].subtasks[0].options, (std::vector<MachineOption>{{2, 6}}));
}

TEST(ParseFjs, MachineOutOfRange) {
  try {
    parse_fjs("1 1 1\n1 1 3 5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span.line, 2);
    EXPECT_EQ(e.span.column, 5);
    EXPECT_NE(std::string(e.what()).find("machine 3"), std::string::npos);
  }
}

TEST(ParseFjs, ErrorsCarrySpans) {
  try {
    parse_fjs("1 1 1\n1 1 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span.line, 2);
    EXPECT_NE(std::string(e.what()).find("processing time"), std::string::npos);
  }
  EXPECT_THROW(parse_fjs(""), ParseError);
  EXPECT_THROW(parse_fjs("1 1 1\n1 1 1 5\n9"), ParseError);
  EXPECT_THROW(parse_fjs("1 x 1\n"), ParseError);
  EXPECT_THROW(parse_fjs("1 1 1\n1 1 1 99999999999999\n"), ParseError);
}

TEST(ParseFjs, CrlfAcceptedZeroCountsDeferred) {
  Instance in = parse_fjs("1 1 1\r\n1 1 1 5\r\n");
  EXPECT_EQ(in.jobs[0].subtasks[0].options[0].time, 5);
  // Zero counts parse fine; validation owns those invariants.
  EXPECT_EQ(parse_fjs("1 1 0\n0\n").jobs[0].subtasks.size(), 0u);
  EXPECT_EQ(parse_fjs("0 3 0\n").job_count(), 0);
}

TEST(ParseConstraints, SingleRelease) {
  auto cs = parse_constraints("release 1 10\n");
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(std::get<Release>(cs[0]), (Release{1, 10}));
}

TEST(ParseConstraints, CommentsAndOrder) {
  auto cs = parse_constraints("# urgent\nsync 1 2\nmax_gap 1 1 4\n");
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(std::get<Sync>(cs[0]), (Sync{1, 2}));
  EXPECT_EQ(std::get<MaxGap>(cs[1]), (MaxGap{1, 1, 4}));
}

TEST(ParseConstraints, AllFamiliesAndInlineComments) {
  auto cs = parse_constraints(
      "version 1\n"
      "release 1 0\n"
      "deadline 2 30  # finish by shift end\n"
      "window 3 5 9\n"
      "min_gap 1 1 2\n"
      "max_gap 1 2 4\n"
      "\n"
      "sync 2 3\n");
  ASSERT_EQ(cs.size(), 6u);
  EXPECT_EQ(std::get<Deadline>(cs[1]), (Deadline{2, 30}));
  EXPECT_EQ(std::get<Window>(cs[2]), (Window{3, 5, 9}));
  EXPECT_EQ(std::get<MinGap>(cs[3]), (MinGap{1, 1, 2}));
}

TEST(ParseConstraints, ArityMismatch) {
  try {
    parse_constraints("window 1 5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span.line, 1);
    EXPECT_NE(std::string(e.what()).find("expects 3"), std::string::npos);
  }
}

TEST(ParseConstraints, BadTokens) {
  EXPECT_THROW(parse_constraints("hold 1 2\n"), ParseError);
  EXPECT_THROW(parse_constraints("release one 2\n"), ParseError);
  EXPECT_THROW(parse_constraints("release 1 2 3\n"), ParseError);
  EXPECT_THROW(parse_constraints("version 2\nrelease 1 2\n"), ParseError);
  // "version" is only special as the first effective line.
  EXPECT_THROW(parse_constraints("release 1 2\nversion 1\n"), ParseError);
  try {
    parse_constraints("sync 1 2\nrelease 1 1 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span.line, 2);
  }
}

TEST(RenderConstraints, CanonicalText) {
  EXPECT_EQ(render_constraints({Release{1, 10}}), "release 1 10\n");
  EXPECT_EQ(render_constraints({}), "");
  EXPECT_EQ(render_constraints({Window{2, 0, 7}}), "window 2 0 7\n");
  EXPECT_EQ(render_constraints({Sync{3, 1}, MinGap{1, 2, 0}}), "sync 3 1\nmin_gap 1 2 0\n");
}

TEST(RenderFjs, CanonicalText) {
  Instance one = parse_fjs("1 1 1\n1 1 1 5\n");
  EXPECT_EQ(render_fjs(one), "1 1 1\n1 1 1 5\n");
  // avg field: mean eligible-set size (2+1)/2 rounded half away from zero.
  Instance two = parse_fjs("2 2 1\n1 2 1 3 2 4\n1 1 2 6\n");
  EXPECT_EQ(render_fjs(two), "2 2 2\n1 2 1 3 2 4\n1 1 2 6\n");
}

TEST(RoundTrip, FixedSamples) {
  const char* fjs_samples[] = {
      "1 1 1\n1 1 1 5\n",
      "2 2 2\n1 2 1 3 2 4\n1 1 2 6\n",
      "3 4 2\n2 2 1 3 2 4 1 4 9\n1 1 2 6\n3 1 1 1 2 2 2 4 4 1 3 3\n",
  };
  for (const char* s : fjs_samples) {
    Instance in = parse_fjs(s);
    EXPECT_EQ(parse_fjs(render_fjs(in)), in);
  }
  std::vector<ScenarioConstraint> cs = {Release{1, 10}, Deadline{2, 30}, Window{3, 5, 9},
                                        MinGap{1, 1, 2}, MaxGap{1, 2, 4}, Sync{2, 3}};
  EXPECT_EQ(parse_constraints(render_constraints(cs)), cs);
}

TEST(ParseTotality, GarbageYieldsParseErrorNotCrash) {
  const char* garbage[] = {
      "",        "   \n\t ", "-1 2 3\n", "1 1\n",  "release",  "# only a comment\n",
      "\xff\xfe garbage",    "1 1 1\n1", "sync 1", "window\n", "release 1 99999999999999\n",
  };
  for (const char* g : garbage) {
    try {
      (void)parse_fjs(g);
    } catch (const ParseError&) {
    }
    try {
      (void)parse_constraints(g);
    } catch (const ParseError&) {
    }
  }
  SUCCEED();
}
