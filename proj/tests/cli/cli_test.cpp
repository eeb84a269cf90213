#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "algebra_file.hpp"
#include "commands.hpp"

namespace fs = std::filesystem;
using nlie::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result nlie_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

/// Runs the installed binary through the shell.
Result nlie_exec(const std::string& args) {
  const std::string cmd = std::string(NLIE_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nlie_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  std::string generate(const std::vector<std::string>& family) const {
    std::vector<std::string> args{"generate"};
    args.insert(args.end(), family.begin(), family.end());
    std::string name = family[0];
    for (std::size_t i = 1; i < family.size(); ++i) name += family[i];
    args.push_back("-o");
    args.push_back(path(name + ".json"));
    EXPECT_EQ(nlie_run(args).code, 0);
    return path(name + ".json");
  }

  fs::path dir_;
};

const char* kBroken = R"({
  "field": "Q", "dimension": 3, "arity": 2,
  "bracket": [
    {"args": [0, 1], "value": {"2": "1"}},
    {"args": [0, 2], "value": {"0": "1"}}
  ]
})";

}  // namespace

TEST_F(Cli, GenerateCheckRoundTrip) {
  for (const auto& fam : std::vector<std::vector<std::string>>{{"vector-product", "--n", "2"},
                                                                {"vector-product", "--n", "4"},
                                                                {"jacobian-trunc", "--n", "1", "--p", "5"},
                                                                {"w-trunc", "--n", "2", "--p", "3"},
                                                                {"w-trunc", "--n", "3", "--p", "2"},
                                                                {"zero", "--dim", "4", "--n", "3"}}) {
    const auto file = generate(fam);
    EXPECT_EQ(nlie_run({"check", file}).code, 0) << fam[0];
  }
  const auto j = generate({"jacobian-trunc", "--n", "2", "--p", "3"});
  const auto r = nlie_run({"check", "--poisson", j});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("leibniz"), std::string::npos);
}

TEST_F(Cli, GeneratedFileContents) {
  const auto file = generate({"zero", "--dim", "4", "--n", "3"});
  const auto alg = nlie::cli::read_algebra_file(file);
  EXPECT_EQ(alg.dim, 4U);
  EXPECT_EQ(alg.arity, 3U);
  EXPECT_TRUE(alg.bracket.is_zero());
  const auto j = nlie::cli::read_algebra_file(generate({"jacobian-trunc", "--n", "2", "--p", "3"}));
  EXPECT_EQ(j.field, nlie::FieldSpec::prime(3));
  EXPECT_EQ(j.dim, 9U);
  ASSERT_TRUE(j.product);
  EXPECT_EQ(j.basis_name(8), "x^2*y^2");
}

TEST_F(Cli, CheckFailureReportsWitness) {
  const auto file = write("broken.json", kBroken);
  const auto r = nlie_run({"--format", "json", "check", file});
  EXPECT_EQ(r.code, 1);
  const auto report = nlohmann::json::parse(r.out);
  const auto& v = report["checks"][0];
  EXPECT_EQ(v["check"], "generalized_jacobi");
  EXPECT_FALSE(v["pass"].get<bool>());
  EXPECT_TRUE(v.contains("witness"));
}

TEST_F(Cli, InputErrors) {
  const auto bad = write("bad.json", R"({"field": "Q", "dimension": 3, "arity": 2,
    "bracket": [{"args": [2, 1], "value": {"0": "1"}}]})");
  const auto r = nlie_run({"check", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("indices not strictly increasing"), std::string::npos);

  const auto unknown = write("unknown.json", R"({"field": "Q", "dimension": 1, "arity": 2, "bracket": [], "extra": 1})");
  EXPECT_EQ(nlie_run({"check", unknown}).code, 2);
  const auto numeric = write("numeric.json", R"({"field": "Q", "dimension": 2, "arity": 2,
    "bracket": [{"args": [0, 1], "value": {"0": 1}}]})");
  EXPECT_EQ(nlie_run({"check", numeric}).code, 2);
  const auto unit_only = write("unit.json", R"({"field": "Q", "dimension": 1, "arity": 2, "unit": ["1"], "bracket": []})");
  EXPECT_EQ(nlie_run({"check", unit_only}).code, 2);
  const auto garbled = write("garbled.json", "{\"field\": ");
  const auto g = nlie_run({"check", garbled});
  EXPECT_EQ(g.code, 2);
  EXPECT_NE(g.err.find("line"), std::string::npos);

  EXPECT_EQ(nlie_run({"check", path("missing.json")}).code, 2);
  EXPECT_EQ(nlie_run({"frobnicate"}).code, 2);
  EXPECT_EQ(nlie_run({"poly", "eval", "--bracket", "jac", "--n", "2", "--args", "x,z"}).code, 2);
}

TEST_F(Cli, AnalyzeTheorem1AndLemmas) {
  const auto j = generate({"jacobian-trunc", "--n", "2", "--p", "3"});
  const auto a = nlohmann::json::parse(nlie_run({"--format", "json", "analyze", j}).out);
  EXPECT_EQ(a["derived"]["dim"], 8);
  EXPECT_EQ(a["center"]["dim"], 1);

  const auto t = nlie_run({"--format", "json", "theorem1", j});
  EXPECT_EQ(t.code, 0);
  const auto tj = nlohmann::json::parse(t.out);
  EXPECT_EQ(tj["dims"]["A"], 9);
  EXPECT_EQ(tj["dims"]["A1"], 8);
  EXPECT_EQ(tj["dims"]["Z"], 1);
  EXPECT_EQ(tj["dims"]["A1_cap_Z"], 1);
  EXPECT_EQ(tj["dims"]["quotient"], 7);
  EXPECT_NE(t.out.find("characteristic 3"), std::string::npos);

  const auto l = nlie_run({"lemmas", "--lemma", "L5", j});
  EXPECT_EQ(l.code, 0);
  EXPECT_NE(l.out.find("ad^3 = 0"), std::string::npos);
  EXPECT_NE(l.out.find("outside characteristic-0 hypotheses"), std::string::npos);

  // U = span{1} is abelian and an ideal of A^[1].
  EXPECT_EQ(nlie_run({"lemmas", "--lemma", "L6", "--subspace", "1,0,0,0,0,0,0,0,0", j}).code, 0);
  EXPECT_EQ(nlie_run({"lemmas", "--lemma", "L6", "--subspace", "0,1,0,0,0,0,0,0,0", j}).code, 2);
  EXPECT_EQ(nlie_run({"lemmas", "--lemma", "L4", j}).code, 2);
}

TEST_F(Cli, SimpleReports) {
  const auto cross = generate({"vector-product", "--n", "2"});
  const auto r = nlohmann::json::parse(nlie_run({"--format", "json", "simple", cross}).out);
  EXPECT_EQ(r["simplicity"]["verdict"], "Simple");
  EXPECT_EQ(r["simplicity"]["certificate"]["description"], "ModPReduction(5)");
  EXPECT_TRUE(r["replayed"].get<bool>());

  const auto zero = generate({"zero", "--dim", "3", "--n", "2"});
  const auto z = nlie_run({"--format", "json", "simple", zero});
  EXPECT_EQ(z.code, 0);
  EXPECT_EQ(nlohmann::json::parse(z.out)["simplicity"]["verdict"], "NotSimple");
}

TEST_F(Cli, PolyCommands) {
  EXPECT_EQ(nlie_run({"poly", "eval", "--bracket", "jac", "--n", "2", "--args", "x,y"}).out, "1\n");
  EXPECT_EQ(nlie_run({"poly", "eval", "--bracket", "jac", "--n", "2", "--args", "x^2,x*y^2"}).out, "4*x^2*y\n");
  EXPECT_EQ(nlie_run({"poly", "verify", "--bracket", "jac", "--identity", "jacobi", "--n", "2", "--degree", "3"}).code,
            0);
  EXPECT_EQ(nlie_run({"poly", "verify", "--bracket", "w", "--identity", "leibniz", "--n", "2", "--degree", "2"}).code,
            1);
  const auto c = nlie_run({"poly", "center", "--bracket", "jac", "--n", "2", "--degree", "4"});
  EXPECT_EQ(c.out.substr(0, c.out.find('\n')), "span{1}");
}

TEST_F(Cli, BinaryExitCodes) {
  const auto cross = generate({"vector-product", "--n", "2"});
  EXPECT_EQ(nlie_exec("check " + cross).code, 0);
  EXPECT_EQ(nlie_exec("check " + write("broken.json", kBroken)).code, 1);
  EXPECT_EQ(nlie_exec("check " + path("missing.json")).code, 2);
  EXPECT_EQ(nlie_exec("--format xml check " + cross).code, 2);
}

TEST_F(Cli, JsonIsByteIdenticalAcrossRuns) {
  const auto j = generate({"jacobian-trunc", "--n", "2", "--p", "3"});
  for (const std::string cmd : {"analyze", "simple", "theorem1", "lemmas"}) {
    const std::string line = "--format json --seed 7 " + cmd + " " + j;
    const auto a = nlie_exec(line), b = nlie_exec(line);
    EXPECT_EQ(a.code, 0) << cmd;
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_FALSE(a.out.empty());
  }
}
