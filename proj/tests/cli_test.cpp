#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(TLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_F(Cli, ClassifyCodes) {
  const Result r = run("classify-codes");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["codes"], 3840);
  EXPECT_EQ(j["trivial_free"].size(), 6u);
}

TEST_F(Cli, GenTransversalRender) {
  const std::string scene = path("h.json");
  ASSERT_EQ(run("gen --model hyperboloid --heights=-2,-1,0,1,2 -o " + scene).status, 0);
  const Result t = run("transversal " + scene);
  EXPECT_EQ(t.status, 0);
  EXPECT_TRUE(nlohmann::json::parse(t.out)["feasible"].get<bool>());
  EXPECT_EQ(run("helly " + scene).status, 2);  // five sections are too few
  EXPECT_EQ(run("browder4 " + scene + " --pick 0 1 3 4").status, 0);
  EXPECT_EQ(run("check-cc " + scene + " --samples 200 --seed 3").status, 0);
  ASSERT_EQ(run("render " + scene + " " + path("h.svg")).status, 0);
  EXPECT_NE(slurp(path("h.svg")).find("<svg"), std::string::npos);
}

TEST_F(Cli, NegativeResultsExitOne) {
  const std::string scene = write("pts.json", R"({"sections":[
    {"t":1,"vertices":[[1,0]]},{"t":2,"vertices":[[-1,0]]},{"t":3,"vertices":[[1,0]]},
    {"t":4,"vertices":[[-1,0]]},{"t":5,"vertices":[["1","0"]]}]})");
  EXPECT_EQ(run("transversal " + scene).status, 1);
  const Result c = run("chebyshev " + scene);
  ASSERT_EQ(c.status, 0);
  EXPECT_NEAR(std::stod(nlohmann::json::parse(c.out)["value"].get<std::string>()), 1, 1e-6);
}

TEST_F(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("transversal " + path("missing.json")).status, 2);
  EXPECT_EQ(run("transversal " + write("bad.json", "{\"sections\": [")).status, 2);
  EXPECT_EQ(run("transversal " + write("dup.json", R"({"sections":[{"t":1,"vertices":[[0,0]]},{"t":1,"vertices":[[1,0]]}]})")).status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("gen --model cube").status, 2);
  EXPECT_EQ(run("").status, 2);
}

TEST_F(Cli, ConfigPipeline) {
  const std::string scene = std::string(TLAB_SCENE_DIR) + "/chebyshev_optimum.json";
  const std::string cfg = path("cfg.json");
  ASSERT_EQ(run("extract-config " + scene + " -o " + cfg).status, 0);
  const Result code = run("code " + cfg);
  ASSERT_EQ(code.status, 0);
  EXPECT_NE(nlohmann::json::parse(code.out)["class"], "TRIVIAL");
  EXPECT_EQ(run("deform " + cfg).status, 1);
  EXPECT_EQ(run("code " + cfg + " --m 7").status, 2);
  EXPECT_EQ(run("deform " + scene).status, 2);  // no half-planes
}

TEST_F(Cli, VerifyCase) {
  const Result r = run("verify-case " + std::string(TLAB_SCENE_DIR) + "/class_c3.json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["class"], "C3");
  EXPECT_EQ(j["outcome"], "deformation");
  const Result e = run("verify-case " + std::string(TLAB_SCENE_DIR) + "/e6_attempt.json");
  ASSERT_EQ(e.status, 0);
  EXPECT_EQ(nlohmann::json::parse(e.out)["outcome"], "contradiction");
  EXPECT_EQ(run("verify-case " + std::string(TLAB_SCENE_DIR) + "/class_c3.json --class C4").status, 1);
  EXPECT_EQ(run("verify-case " + std::string(TLAB_SCENE_DIR) + "/class_c3.json --class X9").status, 2);
}

TEST_F(Cli, SeededOutputIsStable) {
  const Result a = run("gen --model random --sections 6 --seed 9");
  const Result b = run("gen --model random --sections 6 --seed 9");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("gen --model random --sections 6 --seed 10").out);
}
