#include "lspace/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lspace/json_io.hpp"
#include "test_util.hpp"

namespace lspace {
namespace {

struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult res;
  res.status = run_cli(args, out, err);
  res.out = out.str();
  res.err = err.str();
  return res;
}

Json parse(const CliResult& res) { return Json::parse(res.out); }

std::string g1() { return test::fixture_path("g1.json"); }
std::string g2() { return test::fixture_path("g2.json"); }
std::string g3() { return test::fixture_path("g3.json"); }
std::string two_loops() { return test::fixture_path("two_loops.json"); }

TEST(CliValidate, CleanSpaceExitsZero) {
  CliResult res = run({"validate", g2()});
  EXPECT_EQ(res.status, 0);
  EXPECT_TRUE(res.err.empty());
  Json doc = parse(res);
  EXPECT_EQ(doc["graph"]["vertices"], 3);
  EXPECT_EQ(doc["graph"]["edges"], 4);
  EXPECT_EQ(doc["graph"]["labels"], 4);
  EXPECT_TRUE(doc["has_no_sinks"].get<bool>());
  EXPECT_TRUE(doc["sink_vertices"].empty());
  EXPECT_TRUE(doc["is_left_resolving"].get<bool>());
  EXPECT_TRUE(doc["label_collisions"].empty());
  EXPECT_TRUE(doc["is_row_finite"].get<bool>());
  EXPECT_EQ(doc["family_size"], 8);
  EXPECT_TRUE(doc["is_accommodating"].get<bool>());
  EXPECT_TRUE(doc["is_non_degenerate"].get<bool>());
  EXPECT_TRUE(doc["is_weakly_left_resolving"].get<bool>());
  EXPECT_TRUE(doc["is_set_finite"].get<bool>());
  EXPECT_TRUE(doc["is_receiver_set_finite"].get<bool>());
  EXPECT_TRUE(doc["wlr_counterexample"].is_null());
}

TEST(CliValidate, BrokenAssumptionExitsOneWithCounterexample) {
  CliResult res = run({"validate", g1()});
  EXPECT_EQ(res.status, 1);
  Json doc = parse(res);
  EXPECT_FALSE(doc["is_weakly_left_resolving"].get<bool>());
  EXPECT_EQ(doc["wlr_counterexample"]["A"], Json::array({"1"}));
  EXPECT_EQ(doc["wlr_counterexample"]["B"], Json::array({"2"}));
  EXPECT_EQ(doc["wlr_counterexample"]["letter"], "b");
  EXPECT_FALSE(doc["is_left_resolving"].get<bool>());
  ASSERT_EQ(doc["label_collisions"].size(), 1u);
  EXPECT_EQ(doc["label_collisions"][0]["vertex"], "2");
  EXPECT_EQ(doc["label_collisions"][0]["label"], "b");
  EXPECT_TRUE(doc["is_accommodating"].get<bool>());
  EXPECT_TRUE(doc["is_non_degenerate"].get<bool>());
}

TEST(CliFamily, EmitsCanonicallyOrderedFamily) {
  CliResult res = run({"family", g2()});
  EXPECT_EQ(res.status, 0);
  Json doc = parse(res);
  ASSERT_EQ(doc.size(), 8u);
  EXPECT_EQ(doc[0], Json::array());
  EXPECT_EQ(doc[1], Json::array({"u"}));
  EXPECT_EQ(doc[3], Json::array({"u", "v", "w"}));
  EXPECT_EQ(doc[7], Json::array({"w"}));

  // The family step does not need the resolving assumption.
  CliResult res1 = run({"family", g1()});
  EXPECT_EQ(res1.status, 0);
  Json doc1 = parse(res1);
  ASSERT_EQ(doc1.size(), 4u);
  EXPECT_EQ(doc1[1], Json::array({"1"}));
  EXPECT_EQ(doc1[2], Json::array({"1", "2"}));
}

TEST(CliErrors, MissingInputFile) {
  CliResult res = run({"family", "no_such_file.json"});
  EXPECT_EQ(res.status, 2);
  EXPECT_NE(res.err.find("cannot read input"), std::string::npos);
}

TEST(CliErrors, MalformedAndUnknownKeyInputs) {
  std::string bad = ::testing::TempDir() + "/bad.json";
  std::ofstream(bad) << "{not json";
  CliResult res = run({"validate", bad});
  EXPECT_EQ(res.status, 2);
  EXPECT_NE(res.err.find("invalid JSON"), std::string::npos);

  std::string extra = ::testing::TempDir() + "/extra.json";
  std::ofstream(extra)
      << R"({"vertices": ["a"], "edges": [], "colour": "red"})";
  CliResult res2 = run({"validate", extra});
  EXPECT_EQ(res2.status, 2);
  EXPECT_NE(res2.err.find("unknown key"), std::string::npos);
}

TEST(CliErrors, AssumptionGateAndOverride) {
  CliResult res = run({"ideals", g1()});
  EXPECT_EQ(res.status, 1);
  EXPECT_NE(res.err.find("assumption violated"), std::string::npos);
  EXPECT_NE(res.err.find("weakly left-resolving"), std::string::npos);

  // The override builds the space but checked computations still refuse.
  CliResult res2 = run({"ideals", g1(), "--allow-unverified"});
  EXPECT_EQ(res2.status, 1);
  EXPECT_NE(res2.err.find("space unverified"), std::string::npos);
}

TEST(CliErrors, FamilySizeCap) {
  CliResult res = run({"family", g2(), "--max-family-size", "4"});
  EXPECT_EQ(res.status, 1);
  EXPECT_NE(res.err.find("family too large"), std::string::npos);
}

TEST(CliIdeals, LatticeWithHasseAndDot) {
  CliResult res = run({"ideals", g2()});
  EXPECT_EQ(res.status, 0);
  Json doc = parse(res);
  EXPECT_EQ(doc["count"], 3);
  ASSERT_EQ(doc["ideals"].size(), 3u);
  EXPECT_EQ(doc["ideals"][0]["id"], 0);
  EXPECT_EQ(doc["ideals"][0]["sets"], Json::array({Json::array()}));
  EXPECT_EQ(doc["ideals"][1]["sets"].size(), 8u);
  Json h1 = Json::array({Json::array(), Json::array({"v"}),
                         Json::array({"v", "w"}), Json::array({"w"})});
  EXPECT_EQ(doc["ideals"][2]["sets"], h1);
  EXPECT_EQ(doc["bottom"], 0);
  EXPECT_EQ(doc["top"], 1);
  EXPECT_EQ(doc["hasse_edges"], Json::parse("[[0,2],[2,1]]"));
  std::string dot = doc["dot"].get<std::string>();
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n2"), std::string::npos);
}

TEST(CliTails, EnumeratesWithComplements) {
  CliResult res = run({"tails", g2()});
  EXPECT_EQ(res.status, 0);
  Json doc = parse(res);
  EXPECT_EQ(doc["count"], 2);
  Json d_u = Json::array({Json::array({"u"}), Json::array({"u", "v"}),
                          Json::array({"u", "v", "w"}),
                          Json::array({"u", "w"})});
  EXPECT_EQ(doc["tails"][0]["sets"], d_u);
  EXPECT_EQ(doc["tails"][0]["complement_ideal"], 2);
  EXPECT_EQ(doc["tails"][1]["sets"].size(), 7u);
  EXPECT_EQ(doc["tails"][1]["complement_ideal"], 0);
}

TEST(CliPrim, TopologyReport) {
  CliResult res = run({"prim", g2()});
  EXPECT_EQ(res.status, 0);
  Json doc = parse(res);
  ASSERT_EQ(doc["tails"].size(), 2u);
  EXPECT_EQ(doc["closed_sets"], Json::parse("[[],[0],[0,1]]"));
  EXPECT_EQ(doc["specialization_edges"], Json::parse("[[0,0],[1,0],[1,1]]"));
  EXPECT_TRUE(doc["t0"].get<bool>());
  EXPECT_TRUE(doc["kuratowski_verified"].get<bool>());
  EXPECT_TRUE(doc["homeomorphism_verified"].get<bool>());
  EXPECT_TRUE(doc["exhaustive"].get<bool>());

  CliResult res2 = run({"prim", two_loops()});
  Json doc2 = parse(res2);
  EXPECT_EQ(doc2["closed_sets"], Json::parse("[[],[0],[0,1],[1]]"));
  EXPECT_EQ(doc2["specialization_edges"], Json::parse("[[0,0],[1,1]]"));

  CliResult res3 = run({"prim", g3()});
  Json doc3 = parse(res3);
  EXPECT_EQ(doc3["closed_sets"], Json::parse("[[],[0]]"));
}

TEST(CliPrim, DotOutput) {
  CliResult res = run({"prim", g2(), "--dot"});
  EXPECT_EQ(res.status, 0);
  EXPECT_EQ(res.out.rfind("digraph", 0), 0u);
  EXPECT_NE(res.out.find("->"), std::string::npos);
  // Only the non-reflexive specialization edge appears.
  EXPECT_NE(res.out.find("n1 -> n0"), std::string::npos);
  EXPECT_EQ(res.out.find("n0 -> n0"), std::string::npos);
}

TEST(CliQuotient, ByTheProperIdeal) {
  CliResult res = run({"quotient", g2(), "--ideal", "2"});
  EXPECT_EQ(res.status, 0);
  Json doc = parse(res);
  EXPECT_EQ(doc["ideal"], 2);
  EXPECT_EQ(doc["u_h"], Json::array({"v", "w"}));
  EXPECT_EQ(doc["count"], 2);
  ASSERT_EQ(doc["classes"].size(), 2u);
  EXPECT_EQ(doc["classes"][0]["representative"], Json::array({"v", "w"}));
  ASSERT_EQ(doc["classes"][0]["members"].size(), 4u);
  EXPECT_EQ(doc["classes"][0]["members"][0], Json::array());
  EXPECT_EQ(doc["classes"][1]["representative"],
            Json::array({"u", "v", "w"}));
  EXPECT_TRUE(doc["quotient_weakly_left_resolving"].get<bool>());
}

TEST(CliQuotient, IdealIdOutOfRange) {
  CliResult res = run({"quotient", g2(), "--ideal", "99"});
  EXPECT_EQ(res.status, 2);
  EXPECT_NE(res.err.find("ideal id out of range"), std::string::npos);
}

TEST(CliTailFromWord, LoopAtSource) {
  CliResult res = run({"tail-from-word", g2(), "--set", "u", "--cycle", "a"});
  EXPECT_EQ(res.status, 0);
  Json doc = parse(res);
  EXPECT_EQ(doc["source"], Json::array({"u"}));
  EXPECT_EQ(doc["prefix"], "");
  EXPECT_EQ(doc["cycle"], "a");
  EXPECT_EQ(doc["trace"], Json::array({Json::array({"u"})}));
  EXPECT_TRUE(doc["tail"]["verified"].get<bool>());
  EXPECT_EQ(doc["tail"]["sets"].size(), 4u);
  EXPECT_TRUE(doc["tail"]["axioms"]["cofinality"].get<bool>());
  EXPECT_TRUE(doc["tail"]["witnesses"]["cofinality"].is_null());
}

TEST(CliTailFromWord, PrefixedWordAndCommaSet) {
  CliResult res = run({"tail-from-word", g2(), "--set", "u", "--prefix", "bc",
                       "--cycle", "d"});
  EXPECT_EQ(res.status, 0);
  Json doc = parse(res);
  EXPECT_EQ(doc["trace"],
            Json::parse(R"([["u"],["v"],["w"]])"));
  EXPECT_EQ(doc["tail"]["sets"].size(), 7u);

  CliResult res2 = run({"tail-from-word", g2(), "--set", "u,v", "--cycle", "a"});
  EXPECT_EQ(res2.status, 0);
  Json doc2 = parse(res2);
  EXPECT_EQ(doc2["source"], Json::array({"u", "v"}));
  EXPECT_EQ(doc2["trace"], Json::parse(R"([["u","v"],["u"]])"));
  EXPECT_EQ(doc2["tail"]["sets"].size(), 4u);
}

TEST(CliTailFromWord, ErrorPaths) {
  CliResult res = run({"tail-from-word", g2(), "--set", "v", "--cycle", "a"});
  EXPECT_EQ(res.status, 1);
  EXPECT_NE(res.err.find("word not realizable"), std::string::npos);
  EXPECT_NE(res.err.find("\"a\""), std::string::npos);

  CliResult res2 = run({"tail-from-word", g2(), "--set", "zz", "--cycle", "a"});
  EXPECT_EQ(res2.status, 2);
  EXPECT_NE(res2.err.find("unknown vertex"), std::string::npos);

  CliResult res3 = run({"tail-from-word", g2(), "--set", "u", "--cycle", "q"});
  EXPECT_EQ(res3.status, 2);
  EXPECT_NE(res3.err.find("letter not in alphabet"), std::string::npos);
}

TEST(CliCheckOracle, SmallRunPasses) {
  CliResult res = run({"check-oracle", "--instances", "10"});
  EXPECT_EQ(res.status, 0);
  Json doc = parse(res);
  EXPECT_EQ(doc["seed"], 12345u);
  EXPECT_EQ(doc["instances"], 10);
  EXPECT_GT(doc["comparisons"].get<long long>(), 0);
  EXPECT_TRUE(doc["passed"].get<bool>());
  EXPECT_TRUE(doc["first_divergence"].is_null());
}

TEST(CliUsage, HelpAndBadInvocations) {
  CliResult help = run({"--help"});
  EXPECT_EQ(help.status, 0);
  EXPECT_NE(help.out.find("ideals"), std::string::npos);
  EXPECT_NE(help.out.find("tail-from-word"), std::string::npos);

  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"frobnicate", g2()}).status, 2);
  EXPECT_EQ(run({"quotient", g2()}).status, 2);  // --ideal is required
}

TEST(CliOutput, FileSinkMatchesStdout) {
  std::string path = ::testing::TempDir() + "/ideals_out.json";
  std::remove(path.c_str());
  CliResult direct = run({"ideals", g2()});
  CliResult filed = run({"ideals", g2(), "-o", path});
  EXPECT_EQ(filed.status, 0);
  EXPECT_TRUE(filed.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), direct.out);

  CliResult bad = run({"ideals", g2(), "-o", "/no_such_dir/x.json"});
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.err.find("cannot write output"), std::string::npos);
}

TEST(CliDeterminism, RepeatedRunsAreByteIdentical) {
  std::vector<std::vector<std::string>> commands = {
      {"validate", g2()},
      {"family", g2()},
      {"ideals", g2()},
      {"tails", g2()},
      {"prim", g2()},
      {"prim", g2(), "--dot"},
      {"quotient", g2(), "--ideal", "2"},
      {"tail-from-word", g2(), "--set", "u", "--cycle", "a"},
      {"ideals", two_loops()},
      {"prim", two_loops()},
      {"tails", g3()},
      {"check-oracle", "--instances", "5"},
  };
  for (const auto& cmd : commands) {
    CliResult a = run(cmd);
    CliResult b = run(cmd);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.out, b.out) << "command: " << cmd[0];
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(CliJsonRoundTrip, GraphSerializationIsStable) {
  GraphSpec spec = load_graph_file(g2());
  Json j = graph_to_json(spec);
  GraphSpec back = graph_from_json(j);
  EXPECT_EQ(back.vertices, spec.vertices);
  ASSERT_EQ(back.edges.size(), spec.edges.size());
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    EXPECT_EQ(back.edges[i].src, spec.edges[i].src);
    EXPECT_EQ(back.edges[i].dst, spec.edges[i].dst);
    EXPECT_EQ(back.edges[i].label, spec.edges[i].label);
  }
  EXPECT_EQ(graph_to_json(back), j);
}

}  // namespace
}  // namespace lspace
