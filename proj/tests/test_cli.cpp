#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_util.hpp"

using namespace spectral_t;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spectral_t_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  fs::path dir_;
};

std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  return rows;
}

}  // namespace

TEST_F(CliTest, CertifyAba) {
  const auto r = run({"certify", file("aba.txt", "n 2\ng1 g2 g1\n")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["certified"].get<bool>());
  EXPECT_NEAR(j["lambda1"].get<double>(), 0.5, 1e-9);
  EXPECT_EQ(j["k"], 3);
  EXPECT_TRUE(j["pipeline_bound"].is_null());
}

TEST_F(CliTest, CertifyMalformedToken) {
  EXPECT_EQ(run({"certify", file("bad.txt", "n 2\ng0 g1 g1\n")}).code, 2);
  EXPECT_EQ(run({"certify", path("missing.txt")}).code, 2);
  EXPECT_EQ(run({"certify"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST_F(CliTest, CertifyKMismatchListsIgnored) {
  const auto r = run({"certify", "--k", "3", file("mixed.txt", "n 2\ng1 g2 g1\ng1 g2 g1 g2\n")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("ignored relator (length 4): g1 g2 g1 g2"), std::string::npos) << r.err;
  EXPECT_EQ(run({"certify", file("mixed2.txt", "n 2\ng1 g2 g1\ng1 g2 g1 g2\n")}).code, 2);
}

TEST_F(CliTest, CertifyPipelineAndResourceCap) {
  const auto r = run({"certify", "--pipeline", file("all.txt", "n 2\n" + dump_presentation(sample_gamma_p(2, 3, 1.0, {0, 0})).substr(4))});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["method"], "union-bound-pipeline");
  EXPECT_TRUE(j["certified"].get<bool>());
  ::setenv("SPECTRAL_T_MAX_VERTICES", "10", 1);
  const auto capped = run({"certify", "--k", "6", file("k6.txt", "n 2\ng1 g2 g1 g2 g1 g2\n")});
  ::unsetenv("SPECTRAL_T_MAX_VERTICES");
  EXPECT_EQ(capped.code, 3) << capped.err;
}

TEST_F(CliTest, SampleModels) {
  auto r = run({"sample", "--model", "p", "--n", "2", "--k", "3", "--p", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_presentation_string(r.out).relators.size(), 28u);

  r = run({"sample", "--model", "red", "--n", "2", "--l", "2", "--p", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  const auto g = parse_graph(is);
  EXPECT_EQ(g.vertex_count(), 12u);
  EXPECT_EQ(g.edge_count(), 0u);

  r = run({"sample", "--model", "lax", "--n", "2", "--k", "4", "--f", "1", "--d", "0.333"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto p = parse_presentation_string(r.out);
  EXPECT_EQ(p.relators.size(), 4u);
  for (const auto& w : p.relators) {
    EXPECT_GE(w.size(), 3u);
    EXPECT_LE(w.size(), 5u);
  }
  EXPECT_NE(r.err.find("relators=4"), std::string::npos);

  EXPECT_EQ(run({"sample", "--model", "gnp", "--m", "5", "--p", "2"}).code, 2);
  EXPECT_EQ(run({"sample", "--model", "nope"}).code, 2);
  EXPECT_EQ(run({"sample", "--model", "bred", "--n", "2", "--l", "2", "--p", "0.5"}).code, 2);
}

TEST_F(CliTest, SampleToFileDeterministic) {
  for (const auto& model : {std::vector<std::string>{"--model", "gnp", "--m", "20", "--p", "0.3"},
                            std::vector<std::string>{"--model", "bgnp", "--m1", "5", "--m2", "7", "--p", "0.5"},
                            std::vector<std::string>{"--model", "bred", "--n", "2", "--l", "3", "--p", "0.2"},
                            std::vector<std::string>{"--model", "strict", "--n", "2", "--k", "5", "--d", "0.3"}}) {
    std::vector<std::string> a{"sample"};
    a.insert(a.end(), model.begin(), model.end());
    a.insert(a.end(), {"--seed", "42", "--out", path("a.txt")});
    std::vector<std::string> b = a;
    b.back() = path("b.txt");
    ASSERT_EQ(run(a).code, 0);
    ASSERT_EQ(run(b).code, 0);
    EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
    EXPECT_FALSE(slurp(path("a.txt")).empty());
  }
}

TEST_F(CliTest, SweepSingleRow) {
  const auto r = run({"sweep", "--model", "strict", "--n", "2", "--k", "3", "--values", "0.3333333333333333",
                      "--trials", "1", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "n,k,d,trial,seed,num_relators,lambda1,pipeline_bound,certified,status");
  EXPECT_EQ(rows[1].substr(0, 20), "2,3,0.3333333333,0,5");
  EXPECT_NE(rows[1].find(",3,"), std::string::npos);
  EXPECT_NE(r.out.find("# d=0.3333333333 certified="), std::string::npos);
}

TEST_F(CliTest, SweepDeterministicAcrossJobCounts) {
  const std::vector<std::string> base{"sweep", "--model", "p", "--n", "2", "--k", "4", "--min", "0.2",
                                      "--max", "0.6", "--step", "0.2", "--trials", "6", "--seed", "9",
                                      "--pipeline"};
  auto a = base, b = base;
  a.insert(a.end(), {"--jobs", "1", "--out", path("a.csv")});
  b.insert(b.end(), {"--jobs", "4", "--out", path("b.csv")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  const auto text = slurp(path("a.csv"));
  EXPECT_EQ(text, slurp(path("b.csv")));
  const auto rows = csv_rows(text);
  ASSERT_EQ(rows.size(), 1u + 3 * 6);
  // sorted by (d, trial)
  EXPECT_EQ(rows[1].substr(0, 10), "2,4,0.2,0,");
  EXPECT_EQ(rows[7].substr(0, 10), "2,4,0.4,0,");
}

TEST_F(CliTest, SweepConfigAndPrecedence) {
  const auto cfg = file("cfg.json", R"({"model": "strict", "n": 2, "k": 3, "values": [0.2, 0.5], "trials": 3, "seed": 1})");
  auto r = run({"sweep", "--config", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(csv_rows(r.out).size(), 1u + 6);
  r = run({"sweep", "--config", cfg, "--trials", "1", "--values", "0.4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].substr(0, 12), "2,3,0.4,0,1,");
  EXPECT_EQ(run({"sweep", "--config", file("bad.json", "{not json")}).code, 2);
  EXPECT_EQ(run({"sweep", "--model", "strict", "--n", "2", "--k", "3"}).code, 2);
  EXPECT_EQ(run({"sweep", "--model", "strict", "--values", "0.3", "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"sweep", "--model", "strict", "--min", "0.3"}).code, 2);
}

TEST_F(CliTest, VerifySuites) {
  for (const std::string suite : {"spectra", "models"}) {
    const auto r = run({"verify", suite, "--seed", "3"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("suite " + suite), std::string::npos);
    EXPECT_NE(r.out.find("margin="), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  }
  EXPECT_EQ(run({"verify", "nonsense"}).code, 2);
}

TEST_F(CliTest, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("certify"), std::string::npos);
}
