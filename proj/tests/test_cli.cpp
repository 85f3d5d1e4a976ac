#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "schurweyl/cli.hpp"

using namespace schurweyl;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("schurweyl_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

nlohmann::json parse(const Result& r) { return nlohmann::json::parse(r.out); }

const char* kCup = R"({"m": 2, "edges": [["t1","t2"],["b1","b2"]]})";

}  // namespace

TEST(CliMultiply, CupTimesCupIsXTimesCup) {
  const auto f = write_temp("cc.json", std::string("[") + kCup + ",\n " + kCup + "]");
  const auto r = run({"multiply", "--file", f});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_EQ(j["ring"], "generic");
  ASSERT_EQ(j["terms"].size(), 1u);
  EXPECT_EQ(j["terms"][0]["coeff"], nlohmann::json::parse(R"(["0/1","1/1"])"));
  EXPECT_EQ(j["terms"][0]["diagram"]["edges"], nlohmann::json::parse(R"([["t1","t2"],["b1","b2"]])"));

  const auto rx = run({"multiply", "--file", f, "--x", "3/2"});
  ASSERT_EQ(rx.code, 0) << rx.err;
  EXPECT_EQ(parse(rx)["terms"][0]["coeff"], "3/2");
  EXPECT_EQ(parse(rx)["ring"]["x0"], "3/2");
}

TEST(CliMultiply, IdentityIsEchoed) {
  const auto f = write_temp("id.json", R"([["t1","b1"],["t2","b2"],["t3","b3"]])");
  const auto r = run({"multiply", "--file", f});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_EQ(j["m"], 3);
  EXPECT_EQ(j["terms"][0]["coeff"], nlohmann::json::parse(R"(["1/1"])"));
  EXPECT_EQ(j["terms"][0]["diagram"]["edges"], nlohmann::json::parse(R"([["t1","b1"],["t2","b2"],["t3","b3"]])"));
}

TEST(CliMultiply, ElementsAndSpecialization) {
  const auto f = write_temp("elem.json", R"([
    {"m": 2, "ring": "generic", "terms": [{"diagram": {"m": 2, "edges": [["t1","t2"],["b1","b2"]]}, "coeff": ["1/1", "1/1"]}]},
    {"m": 2, "edges": [["t1","t2"],["b1","b2"]]}
  ])");
  const auto r = run({"multiply", "--file", f, "--x", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  // (1 + x) c . c = (1 + x) x c, at x = 2 gives 6 c.
  EXPECT_EQ(parse(r)["terms"][0]["coeff"], "6/1");
}

TEST(CliMultiply, MismatchedSizesAreLineAnchored) {
  const auto f = write_temp("bad.json", "[\n  [[\"t1\",\"b1\"],[\"t2\",\"b2\"]],\n  [[\"t1\",\"b1\"]]\n]\n");
  const auto r = run({"multiply", "--file", f});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":3:3: item 2:"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(CliMultiply, InputErrorsExitTwo) {
  const auto broken = write_temp("broken.json", "[\n  [[\"t1\",\"b1\"]],\n  [[\"t1\",\n");
  const auto r1 = run({"multiply", "--file", broken});
  EXPECT_EQ(r1.code, 2);
  EXPECT_NE(r1.err.find("malformed JSON"), std::string::npos);
  EXPECT_NE(r1.err.find(broken + ":"), std::string::npos);

  const auto invalid = write_temp("invalid.json", R"([[["t1","b1"],["t1","b2"]]])");
  EXPECT_EQ(run({"multiply", "--file", invalid}).code, 2);
  EXPECT_EQ(run({"multiply", "--file", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"multiply", "--file", invalid, "--x", "1/0"}).code, 2);

  const auto special = write_temp("special.json",
                                  R"([{"m": 1, "ring": {"x0": "2/1"}, "terms": [{"diagram": {"m": 1, "edges": [["t1","b1"]]}, "coeff": "1/1"}]}])");
  EXPECT_EQ(run({"multiply", "--file", special}).code, 2);
  EXPECT_EQ(run({"multiply", "--file", special, "--x", "2"}).code, 0);
}

TEST(CliDims, FormulasAndEnumeration) {
  auto r = run({"dims", "--family", "walled", "--r", "4", "--s", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r)["formula"], "720");
  EXPECT_EQ(parse(r)["enumerated"], 720);
  EXPECT_EQ(parse(r)["match"], true);

  r = run({"dims", "--family", "brauer", "--r", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["formula"], "15");
  EXPECT_EQ(parse(r)["enumerated"], 15);
  EXPECT_EQ(parse(r)["match"], true);

  r = run({"dims", "--family", "deranged", "--r", "2", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r)["formula"], "9");
  EXPECT_EQ(parse(r)["enumerated"], 9);
  EXPECT_EQ(parse(r)["basis_size"], 9);
}

TEST(CliDims, CapsAndUsage) {
  auto r = run({"dims", "--family", "brauer", "--r", "9"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(parse(r)["formula"], "34459425");
  EXPECT_TRUE(parse(r)["enumerated"].is_null());
  EXPECT_EQ(run({"dims", "--family", "brauer"}).code, 2);
  EXPECT_EQ(run({"dims", "--family", "cubic", "--r", "2"}).code, 2);
  EXPECT_EQ(run({"dims", "--family", "brauer", "--r", "2", "--s", "1"}).code, 2);
  EXPECT_EQ(run({"--enumeration-cap", "7", "dims", "--family", "brauer", "--r", "7"}).code, 0);
}

TEST(CliVerify, ExitCodes) {
  auto r = run({"verify", "--duality", "glA", "--n", "2", "--r", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["equal_a"], true);
  EXPECT_EQ(parse(r)["equal_b"], true);
  EXPECT_FALSE(parse(r).contains("elapsed_ms"));

  r = run({"verify", "--duality", "walled", "--n", "2", "--r", "1", "--s", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["faithful"], true);

  r = run({"verify", "--duality", "sp", "--n", "2", "--r", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["faithful"], false);

  r = run({"verify", "--duality", "so-direct", "--n", "2", "--r", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(parse(r)["proper_subalgebra"], true);

  EXPECT_EQ(run({"verify", "--duality", "glA", "--n", "4", "--r", "5"}).code, 3);
  EXPECT_EQ(run({"--exact-cap", "10", "verify", "--duality", "glA", "--n", "2", "--r", "2"}).code, 3);
  EXPECT_EQ(run({"verify", "--duality", "glA", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "--duality", "glA", "--n", "2", "--r", "2", "--s", "1"}).code, 2);
  EXPECT_EQ(run({"verify", "--duality", "sp", "--n", "3", "--r", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "--duality", "e8", "--n", "3", "--r", "2"}).code, 2);
  EXPECT_EQ(run({}).code, 2);

  r = run({"--timing", "verify", "--duality", "glA", "--n", "2", "--r", "2"});
  EXPECT_TRUE(parse(r).contains("elapsed_ms"));
}

TEST(CliDerangements, Tables) {
  auto r = run({"derangements", "--max", "5"});
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r);
  ASSERT_EQ(j.size(), 6u);
  const char* expected[] = {"1", "0", "1", "2", "9", "44"};
  for (int k = 0; k <= 5; ++k) {
    EXPECT_EQ(j[k]["k"], k);
    EXPECT_EQ(j[k]["N"], expected[k]);
    EXPECT_EQ(j[k]["method"], "enumeration");
  }
  EXPECT_EQ(parse(run({"derangements", "--max", "0"})).size(), 1u);
  const auto big = parse(run({"derangements", "--max", "20"}));
  EXPECT_EQ(big[20]["method"], "formula");
  EXPECT_EQ(big[20]["N"], "895014631192902121");
  EXPECT_EQ(run({"derangements"}).code, 2);
  EXPECT_EQ(run({"derangements", "--max", "-1"}).code, 2);
}

TEST(CliMultiplicity, ReportsBothNumbers) {
  const auto r = run({"multiplicity", "--n", "4", "--r", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_EQ(j["trivial"], 1);
  EXPECT_EQ(j["trivial_matches_N(r)"], true);
  EXPECT_EQ(j["adjoint"], j["adjoint_via_invariants"]);
  EXPECT_EQ(j["adjoint_routes_agree"], true);
  EXPECT_EQ(j["N(r-1)"], "0");
  EXPECT_EQ(j["method"], "exact");
  const auto t = parse(run({"multiplicity", "--n", "4", "--r", "2", "--kind", "trivial", "--mode", "modular"}));
  EXPECT_EQ(t["trivial"], 1);
  EXPECT_FALSE(t.contains("adjoint"));
}

TEST(CliFormat, TextRendersTheSameReport) {
  const auto r = run({"--format", "text", "verify", "--duality", "glA", "--n", "2", "--r", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dims.group_image: 10\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("equal_a: true\n"), std::string::npos);
  const auto t = run({"--format", "text", "derangements", "--max", "2"});
  EXPECT_NE(t.out.find("k=2 N=1 method=enumeration\n"), std::string::npos) << t.out;
  EXPECT_EQ(run({"--format", "yaml", "derangements", "--max", "2"}).code, 2);
}

TEST(CliDeterminism, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--duality", "o", "--n", "3", "--r", "3"},
      {"verify", "--duality", "walled", "--n", "2", "--r", "2", "--s", "1", "--mode", "modular"},
      {"multiplicity", "--n", "3", "--r", "2"},
  };
  for (const auto& c : commands) {
    auto one = c, four = c;
    one.insert(one.begin(), {"--threads", "1"});
    four.insert(four.begin(), {"--threads", "4"});
    const auto a = run(one), b = run(four);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(CliPrimes, SeedSelectsDistinctPrimes) {
  cli::Options o;
  o.prime_seed = 17;
  const auto [a, b] = cli::primes_for(o);
  EXPECT_NE(a, b);
  EXPECT_TRUE(is_prime_u64(a));
  EXPECT_TRUE(is_prime_u64(b));
  const auto r = run({"--prime-seed", "17", "verify", "--duality", "so-direct", "--n", "2", "--r", "1", "--mode", "modular"});
  EXPECT_EQ(parse(r)["method"], "mod-p(" + std::to_string(a) + "," + std::to_string(b) + ")");
}
