#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "abekit/constructions.hpp"
#include "abekit/tools/commands.hpp"
#include "abekit/tools/document.hpp"

using namespace abekit;
using namespace abekit::tools;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("abekit_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int gen(const std::string& spec, const std::string& name) { return cmd_gen(spec, path(name), g, out, err); }

  fs::path dir;
  GlobalOptions g;
  std::ostringstream out, err;
};

std::string data(const std::string& name) { return std::string(ABEKIT_TEST_DATA) + "/" + name; }

}  // namespace

TEST_F(Cli, GenLchsymAbp) {
  ASSERT_EQ(gen("lchsym-abp:2:2", "a.json"), kExitOk);
  const Document d = read_document(path("a.json"));
  ASSERT_EQ(d.kind(), DocKind::Abp);
  EXPECT_EQ(std::get<Abp>(d.model).vertex_count(), 6);
}

TEST_F(Cli, GenOracle) {
  ASSERT_EQ(gen("oracle:chsym:2:2", "o.json"), kExitOk);
  EXPECT_EQ(std::get<NcPolynomial>(read_document(path("o.json")).model).term_count(), 3u);
}

TEST_F(Cli, GenBadSpec) {
  EXPECT_EQ(gen("lchsym-abp:0:2", "x.json"), kExitUsage);
  EXPECT_FALSE(err.str().empty());
  EXPECT_EQ(gen("nonsense:1", "x.json"), kExitUsage);
  EXPECT_EQ(gen("oracle:chsym:two:2", "x.json"), kExitUsage);
}

TEST_F(Cli, DiffAbpAgainstOracle) {
  gen("lchsym-abp:2:2", "a.json");
  gen("oracle:lchsym:2:2", "o.json");
  EXPECT_EQ(cmd_diff(path("a.json"), path("o.json"), g, out, err), kExitOk);
  EXPECT_NE(out.str().find("EQUAL"), std::string::npos);
  gen("oracle:lchsym:2:3", "o3.json");
  EXPECT_EQ(cmd_diff(path("a.json"), path("o3.json"), g, out, err), kExitFailed);
  EXPECT_NE(out.str().find("DIFFERENT"), std::string::npos);
}

TEST_F(Cli, XformAbp2FormulaThenDiff) {
  gen("lchsym-abp:2:2", "a.json");
  gen("oracle:lchsym:2:2", "o.json");
  XformOptions x;
  x.pass = "abp2formula";
  x.input = path("a.json");
  x.output = path("f.json");
  ASSERT_EQ(cmd_xform(x, g, out, err), kExitOk);
  EXPECT_EQ(cmd_diff(path("f.json"), path("o.json"), g, out, err), kExitOk);
}

TEST_F(Cli, XformDepthReduceReportsMetrics) {
  gen("comb:16", "c.json");
  XformOptions x;
  x.pass = "depth-reduce";
  x.input = path("c.json");
  x.output = path("r.json");
  ASSERT_EQ(cmd_xform(x, g, out, err), kExitOk);
  EXPECT_NE(out.str().find("depth 15 ->"), std::string::npos);
  const Formula r = std::get<Formula>(read_document(path("r.json")).model);
  EXPECT_LE(metrics(r).depth, depth_reduce_bound(31));
}

TEST_F(Cli, XformLinkNeedsAnnotations) {
  Document d;
  Formula f;
  f.root = f.store.mul(f.store.variable(Var::linked(1, 1)), f.store.variable(Var::linked(1, 2)));
  d.model = f;
  write_document(d, path("u.json"));
  XformOptions x;
  x.pass = "link";
  x.input = path("u.json");
  EXPECT_EQ(cmd_xform(x, g, out, err), kExitFailed);
  EXPECT_NE(err.str().find("precondition"), std::string::npos);
}

TEST_F(Cli, XformKindMismatch) {
  gen("oracle:chsym:2:2", "o.json");
  XformOptions x;
  x.pass = "depth-reduce";
  x.input = path("o.json");
  EXPECT_EQ(cmd_xform(x, g, out, err), kExitUsage);
}

TEST_F(Cli, CheckDecreasingEdge) {
  CheckOptionsCli c;
  c.input = data("invalid/abp_decreasing_edge.json");
  EXPECT_EQ(cmd_check(c, g, out, err), kExitFailed);
  EXPECT_NE(out.str().find("abp.decreasing-edge"), std::string::npos);
}

TEST_F(Cli, MachineFormat) {
  g.machine = true;
  CheckOptionsCli c;
  c.input = data("invalid/abp_decreasing_edge.json");
  cmd_check(c, g, out, err);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_FALSE(j["ok"].get<bool>());
  EXPECT_EQ(j["violations"][0]["rule"], "abp.decreasing-edge");
}

TEST_F(Cli, PipelineFour) {
  PipelineOptionsCli p;
  p.output = path("esym.json");
  ASSERT_EQ(cmd_pipeline(p, g, out, err), kExitOk);
  CheckOptionsCli c;
  c.input = path("esym.json");
  c.checks = {"homogeneous", "multilinear"};
  EXPECT_EQ(cmd_check(c, g, out, err), kExitOk);
}

TEST_F(Cli, GuardExitCode) {
  gen("oracle:chsym:2:6", "o.json");
  g.max_degree = 3;
  EXPECT_EQ(cmd_diff(path("o.json"), path("o.json"), g, out, err), kExitGuard);
}

TEST_F(Cli, ParseExitCode) {
  std::ofstream(path("bad.json")) << "{\"format\": \"abekit-model\", \"version\": 1, \"kind\": \"formula\", \"nodes\": []}";
  EXPECT_EQ(cmd_stats(path("bad.json"), g, out, err), kExitUsage);
  EXPECT_EQ(cmd_stats(path("missing.json"), g, out, err), kExitUsage);
}

TEST_F(Cli, StatsFamily) {
  gen("chsym-formula:2:2", "c.json");
  ASSERT_EQ(cmd_stats(path("c.json"), g, out, err), kExitOk);
  EXPECT_NE(out.str().find("component 1"), std::string::npos);
}

TEST(Document, RejectsDanglingAndCycles) {
  EXPECT_THROW(parse_document(R"({"format":"abekit-model","version":1,"kind":"formula",
    "nodes":[{"id":0,"op":"add","args":[1,2]}],"root":0})"), ParseError);
  EXPECT_THROW(parse_document(R"({"format":"abekit-model","version":1,"kind":"abp",
    "vertices":[{"id":0},{"id":1}],
    "edges":[{"from":0,"to":1,"label":{"linear":{"x1":"1"}}},{"from":1,"to":0,"label":{"linear":{"x1":"1"}}}],
    "starts":[0],"terminals":[1]})"), ParseError);
  EXPECT_THROW(parse_document(R"({"format":"abekit-model","version":1,"kind":"formula",
    "nodes":[{"id":0,"op":"const","value":"1/0"}],"root":0})"), ParseError);
}

TEST(Document, Buckets) {
  EXPECT_EQ(parse_buckets("rows:3").size(), 3);
  EXPECT_EQ(parse_buckets("position:3:2").size(), 2);
  EXPECT_EQ(parse_buckets("single:4").size(), 1);
  EXPECT_THROW(parse_buckets("weird:2"), ParseError);
}

TEST(Golden, ValidDocumentsRoundTrip) {
  for (const auto& e : fs::directory_iterator(std::string(ABEKIT_TEST_DATA) + "/valid")) {
    if (e.path().filename() == "manifest.json") continue;
    const Document d = read_document(e.path().string());
    const Document back = parse_document(serialize(d));
    std::visit([&](const auto& m) {
      using T = std::decay_t<decltype(m)>;
      if constexpr (std::is_same_v<T, NcPolynomial>) {
        EXPECT_EQ(std::get<T>(back.model), m);
      } else {
        EXPECT_EQ(expand(std::get<T>(back.model)), expand(m)) << e.path();
      }
    }, d.model);
  }
}
