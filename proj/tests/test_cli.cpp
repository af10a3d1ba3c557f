#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "report.hpp"

using nlohmann::json;
using namespace qdr;
using namespace qdr::cli;

namespace fs = std::filesystem;

namespace {

std::string config_path(const std::string& name) { return std::string(QDR_CONFIG_DIR) + "/" + name + ".json"; }

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  fs::path out = fs::temp_directory_path() / ("qdr_cli_test_" + std::to_string(::getpid()) + ".out");
  std::string cmd = env + " " + std::string(QDR_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  int st = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(out);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& body) {
  fs::path p = fs::temp_directory_path() / ("qdr_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Config, BuildsEachKind) {
  for (const char* n : {"bgm", "a1_gm", "gm_gm", "gm_z2", "pair_gm", "line_bundle_a1", "pair_affine_twisted"}) {
    auto m = build_model(load_json(config_path(n)), {});
    EXPECT_FALSE(m->name().empty()) << n;
  }
  auto m = build_model(json{{"bundled", "gm_z2"}}, {});
  EXPECT_EQ(m->kind(), ModelKind::finite);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(build_model(json{{"bundled", "nope"}}, {}), ConfigError);
  EXPECT_THROW(build_model(json{{"group", {{"kind", "torus"}}}, {"action", {{"weights", {{0.5}}}}}}, {}), ConfigError);
  EXPECT_THROW(build_model(json{{"kind", "finite"}, {"group", {{"kind", "finite"}, {"order", 2}}}}, {}), ConfigError);
  EXPECT_THROW(build_model(json{{"group", {{"kind", "lie"}}}}, {}), ConfigError);
  // weights for a base of the wrong size
  EXPECT_THROW(build_model(json{{"group", {{"kind", "torus"}}}, {"base", {{"affine", 2}}}, {"action", {{"weights", {{1}}}}}},
                           {}),
               ConfigError);
}

TEST(Config, FingerprintIsKeyOrderIndependent) {
  json a = json::parse(R"({"group": {"kind": "torus", "rank": 1}, "base": {"affine": 1}})");
  json b = json::parse(R"({"base": {"affine": 1}, "group": {"rank": 1, "kind": "torus"}})");
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  EXPECT_NE(fingerprint(a), fingerprint(json::parse(R"({"base": {"affine": 2}})")));
  EXPECT_EQ(fingerprint(a).size(), 16u);
}

TEST(Config, MorphismFromConfig) {
  auto f = build_morphism(load_json(config_path("origin")), {});
  EXPECT_EQ(f.source->name(), "BGm");
  json bad = load_json(config_path("origin"));
  bad["morphism"]["base_map"] = json::array({1});  // x -> 1 is not equivariant
  EXPECT_THROW(build_morphism(bad, {}), ConfigError);
}

TEST(Compare, EmptyDiffForIdenticalReports) {
  json r{{"command", "cohomology"}, {"degrees", {0, 1, 2}}, {"dims", {1, 0, 1}}};
  auto c = compare_reports(r, r);
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_TRUE(c.diff["empty"].get<bool>());
}

TEST(Compare, DiffAndRangeErrors) {
  json a{{"degrees", {0, 1, 2}}, {"dims", {1, 0, 1}}};
  json b{{"degrees", {0, 1, 2}}, {"dims", {1, 0, 0}}};
  auto c = compare_reports(a, b);
  EXPECT_EQ(c.exit_code, 1);
  ASSERT_EQ(c.diff["dims_diff"].size(), 1u);
  EXPECT_EQ(c.diff["dims_diff"][0]["degree"], 2);
  EXPECT_FALSE(c.diff["witnesses"].empty());
  json d{{"degrees", {0, 1}}, {"dims", {1, 0}}};
  EXPECT_EQ(compare_reports(a, d).exit_code, 2);
}

TEST(Compare, PagesOnCommonPagesOnly) {
  json e1 = json::array({{{"m", 0}, {"n", 0}, {"dim", 1}, {"d_rank", 0}}});
  json a{{"degrees", {0}}, {"pages", {{"E1", e1}, {"Einf", e1}}}};
  json b{{"degrees", {0}}, {"pages", {{"E1", e1}, {"E2", json::array()}, {"Einf", e1}}}};
  auto c = compare_reports(a, b);
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_EQ(c.diff["pages_compared"], json({"E1", "Einf"}));
}

TEST(Binary, CohomologyOfBGm) {
  auto r = run("cohomology --model " + config_path("bgm") + " --max-degree 6");
  ASSERT_EQ(r.code, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_EQ(j["dims"], json({1, 0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(j["command"], "cohomology");
  EXPECT_FALSE(j.contains("timing"));
}

TEST(Binary, ValidateBGmPasses) {
  auto r = run("validate --model " + config_path("bgm") + " --max-degree 4");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(json::parse(r.out)["witnesses"].empty());
}

TEST(Binary, CorruptedSignGivesWitness) {
  auto r = run("cohomology --model " + config_path("bgm") + " --unsafe-flip-sign rho_orientation");
  ASSERT_EQ(r.code, 1);
  json w = json::parse(r.out)["witnesses"];
  ASSERT_FALSE(w.empty());
  EXPECT_NE(w[0]["witness"].get<std::string>().find("[cech,iota] = -L violated at n=1"), std::string::npos);
}

TEST(Binary, ConfigErrorsExitTwo) {
  auto bad = write_temp("bad.json", R"({"group": {"kind": "torus"}, "action": {"weights": [[1.5]]}})");
  auto r = run("cohomology --model " + bad.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(json::parse(r.out)["witnesses"].empty());
  EXPECT_EQ(run("cohomology --model " + config_path("bgm") + " --max-degree -1").code, 2);
  EXPECT_EQ(run("cohomology --model " + config_path("bgm") + " --unsafe-flip-sign nope").code, 2);
  EXPECT_EQ(run("cartan --model " + config_path("pair_gm")).code, 2);
  EXPECT_EQ(run("").code, 2);
  fs::remove(bad);
}

TEST(Binary, NonFlatModelRejected) {
  auto r = run("validate --model " + config_path("pair_affine_twisted"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["witnesses"][0]["identity"], "flatness");
}

TEST(Binary, OracleCompareIsEmpty) {
  auto a = run("cohomology --model " + config_path("gm_gm") + " --max-degree 3");
  auto b = run("oracle --model " + config_path("gm_gm") + " --max-degree 3");
  auto pa = write_temp("a.json", a.out), pb = write_temp("b.json", b.out);
  auto c = run("compare " + pa.string() + " " + pb.string());
  EXPECT_EQ(c.code, 0) << c.out;
  EXPECT_TRUE(json::parse(c.out)["empty"].get<bool>());
  fs::remove(pa);
  fs::remove(pb);
}

TEST(Binary, PagesR1VersusR2) {
  auto a = run("pages --model " + config_path("bgm") + " --r 1");
  auto b = run("pages --model " + config_path("bgm") + " --r 2");
  auto pa = write_temp("p1.json", a.out), pb = write_temp("p2.json", b.out);
  auto c = run("compare " + pa.string() + " " + pb.string());
  EXPECT_EQ(c.code, 0);
  json d = json::parse(c.out);
  EXPECT_TRUE(d["nonzero_differentials"]["a"].empty());
  EXPECT_TRUE(d["nonzero_differentials"]["b"].empty());
  auto short_range = run("cohomology --model " + config_path("bgm") + " --max-degree 3");
  auto ps = write_temp("s.json", short_range.out);
  EXPECT_EQ(run("compare " + pa.string() + " " + ps.string()).code, 2);
  for (const auto& p : {pa, pb, ps}) fs::remove(p);
}

TEST(Binary, ReportsAreByteDeterministic) {
  fs::path cache = fs::temp_directory_path() / ("qdr_cache_" + std::to_string(::getpid()));
  std::string args = "pages --model " + config_path("a1_gm") + " --max-degree 4 --r 2";
  auto a = run(args);
  auto b = run(args, "QDR_CACHE_DIR=" + cache.string());
  auto c = run(args, "QDR_CACHE_DIR=" + cache.string());
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_FALSE(fs::is_empty(cache));
  fs::remove_all(cache);
}

TEST(Binary, NaturalOriginIsIso) {
  auto r = run("natural --model " + config_path("origin"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(json::parse(r.out)["iso"].get<bool>());
}

TEST(Binary, CsvTable) {
  auto r = run("cohomology --model " + config_path("gm_z2") + " --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "degree,dim\n0,1\n1,0\n2,0\n");
}
