#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli_app.hpp"

namespace tracelat {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "tracelat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tracelat_cli_test_" + name);
}

TEST(Cli, GenA3) {
  Outcome r = run({"gen-a3", "--t", "1", "--height", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  ASSERT_TRUE(j.is_array());
  EXPECT_FALSE(j.empty());
  for (const auto& m : j) {
    EXPECT_EQ(m["type"], "A3");
    for (const char* key : {"lambda", "point", "slope", "gram", "hnf"}) EXPECT_TRUE(m.contains(key)) << key;
  }
}

TEST(Cli, ClassifyGram) {
  Outcome r = run({"classify", "--gram", "[[2,1,1],[1,2,1],[1,1,2]]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["type"], "A3");
  EXPECT_EQ(run({"classify", "--gram", R"([["1","0","0"],[0,1,0],[0,0,4]])"}).json()["type"], "diag114");
}

TEST(Cli, ClassifyRoundTrip) {
  for (const char* sub : {"gen-a3", "gen-selfdual"}) {
    auto path = temp_file(std::string(sub) + ".json");
    ASSERT_EQ(run({sub, "--t", "2", "--height", "3", "--json", path.string()}).code, 0);
    Outcome c = run({"classify", "--input", path.string()});
    ASSERT_EQ(c.code, 0) << c.err;
    std::ifstream in(path);
    Json emitted = Json::parse(in);
    Json classified = c.json();
    ASSERT_EQ(emitted.size(), classified.size());
    for (std::size_t i = 0; i < emitted.size(); ++i) EXPECT_EQ(emitted[i]["type"], classified[i]["type"]);
    std::filesystem::remove(path);
  }
}

TEST(Cli, Cyclotomic) {
  Outcome r = run({"cyclotomic", "--p", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["type"], "A4");
  EXPECT_EQ(run({"cyclotomic", "--n", "7", "--generator", "(1 - z)^-2"}).json()["type"], "A6");
  EXPECT_EQ(run({"cyclotomic", "--n", "3", "--generator", "2"}).json()["type"], "other");
  EXPECT_EQ(run({"cyclotomic", "--p", "9"}).code, 2);
  EXPECT_EQ(run({"cyclotomic", "--n", "5"}).code, 2);
  Outcome bad = run({"cyclotomic", "--n", "5", "--generator", "1 + w"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("position 4"), std::string::npos) << bad.err;
}

TEST(Cli, QuadA2) {
  Outcome r = run({"quad-a2", "--d", "3", "--height", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(r.json()["count"].get<std::size_t>(), 10u);
  Outcome f = run({"quad-a2", "--d", "5", "--height", "10", "--falsify"});
  EXPECT_EQ(f.code, 0);
  EXPECT_TRUE(f.json()["solutions"].empty());
  Outcome three = run({"quad-a2", "--d", "3", "--height", "3", "--falsify"});
  EXPECT_EQ(three.code, 0);
  EXPECT_EQ(three.json()["normal_lattices"].size(), 1u);
  EXPECT_EQ(run({"quad-a2", "--d", "5", "--height", "3"}).code, 2);
}

TEST(Cli, Order) {
  Outcome r = run({"order", "--t", "-1/2", "--different", "--sqrt-different", "--primes2", "--fake-a3"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["conductor"], "31");
  EXPECT_EQ(j["maximal_order"]["disc"], "961");
  EXPECT_EQ(j["different_inverse"]["index"], "961");
  EXPECT_EQ(j["primes_above_2"].size(), 3u);
  EXPECT_EQ(j["fake_a3"]["certified"], true);
  EXPECT_EQ(j["fake_a3"]["type"], "diag114");
  Outcome inert = run({"order", "--t", "1", "--fake-a3"});
  EXPECT_EQ(inert.code, 2);
  EXPECT_NE(inert.err.find("TwoInert"), std::string::npos);
}

TEST(Cli, Obstruction) {
  EXPECT_EQ(run({"obstruction", "--dF", "229", "--disc-order", "4"}).json()["verdict"], "excluded");
  EXPECT_EQ(run({"obstruction", "--dF", "169", "--disc-order", "4"}).json()["verdict"],
            "not excluded by this criterion");
  EXPECT_EQ(run({"obstruction", "--dF", "169"}).code, 2);
}

TEST(Cli, Reparam) {
  Outcome r = run({"reparam", "--t", "1", "--alpha", "-1/3,1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["norm_u"], "1");
  ShanksField f = ShanksField::make(1);
  FieldElement u = FieldElement::from({rational_from_json(j["u"][0]), rational_from_json(j["u"][1]),
                                       rational_from_json(j["u"][2])});
  EXPECT_EQ(f.evaluate(shanks_polynomial(parse_rational(j["t_prime"].get<std::string>())), u), f.from_rational(0));
  EXPECT_EQ(run({"reparam", "--t", "1", "--alpha", "0,1,0"}).code, 2);
  EXPECT_EQ(run({"reparam", "--t", "1", "--alpha", "0,1"}).code, 2);
}

TEST(Cli, JsonFileMatchesStdout) {
  auto path = temp_file("out.json");
  Outcome direct = run({"cyclotomic", "--p", "7"});
  ASSERT_EQ(run({"cyclotomic", "--p", "7", "--json", path.string()}).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), direct.out);
  std::filesystem::remove(path);
}

TEST(Cli, DeterministicOutput) {
  std::string first;
  for (const char* threads : {"0", "1", "4"}) {
    setenv("TRACE_LATTICE_THREADS", threads, 1);
    Outcome r = run({"gen-a3", "--t", "1/3", "--height", "4"});
    ASSERT_EQ(r.code, 0);
    if (first.empty()) first = r.out;
    EXPECT_EQ(r.out, first) << threads;
  }
  unsetenv("TRACE_LATTICE_THREADS");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"gen-a3", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"gen-a3", "--t", "1", "--height", "0"}).code, 2);
  Outcome bad = run({"gen-a3", "--t", "1/x", "--height", "2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("position 2"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"gen-a3", "--t", "-3/2", "--height", "2"}).code, 2);
  EXPECT_EQ(run({"classify", "--gram", "[[1,2],[2,1]]"}).code, 2);
  EXPECT_EQ(run({"classify", "--gram", "[[1,2"}).code, 2);
  EXPECT_EQ(run({"gen-a3", "--help"}).code, 0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli::exit_code_for(Errc::WrongGram), 1);
  EXPECT_EQ(cli::exit_code_for(Errc::NotFound), 1);
  EXPECT_EQ(cli::exit_code_for(Errc::Parse), 2);
  EXPECT_EQ(cli::exit_code_for(Errc::TwoInert), 2);
}

}  // namespace
}  // namespace tracelat
