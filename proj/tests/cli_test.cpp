#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace entropic::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

TEST(Cli, MuFourier4) {
  const auto r = call({"mu", "--unitary", "fourier:4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("c=0.5"), std::string::npos);
  EXPECT_NE(r.out.find("bound 2.0 bits"), std::string::npos);
  const auto j = nlohmann::json::parse(call({"mu", "--unitary", "fourier:4", "--format", "json"}).out);
  EXPECT_EQ(j["c"], 0.5);
  EXPECT_EQ(j["bound_bits"], 2.0);
}

TEST(Cli, C6ShapeScan) {
  for (const char* shape : {"3x2", "2x3"}) {
    const auto r = call({"equality", "scan", "--unitary", "c6", "--shape", shape});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out).front(), "0 equality supports among 300 candidates");
  }
}

TEST(Cli, Example3Scan) {
  const auto j = nlohmann::json::parse(call({"equality", "scan", "--unitary", "example3", "--format", "json"}).out);
  ASSERT_EQ(j["hits"].size(), 2u);
  EXPECT_EQ(j["hits"][0]["sX"], nlohmann::json::array({0}));
  EXPECT_EQ(j["hits"][0]["sY"], nlohmann::json::array({0, 1}));
  EXPECT_TRUE(j["hits"][1]["verified"]);
}

TEST(Cli, DiagramQubitCsv) {
  const auto r = call({"diagram", "--unitary", "fourier:2", "--alpha", "1", "--samples", "100", "--seed", "7",
                       "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 101u);
  EXPECT_EQ(ls[0], "h_x,h_y");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    double hx = 0, hy = 0;
    ASSERT_EQ(std::sscanf(ls[i].c_str(), "%lf,%lf", &hx, &hy), 2);
    EXPECT_GE(hx + hy, 1 - 1e-9);
  }
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::vector<std::string>> cmds = {
      {"diagram", "--unitary", "c6", "--samples", "9000", "--seed", "3", "--alpha", "0.75"},
      {"frontier", "--unitary", "example3", "--samples", "5000", "--format", "json"},
      {"conjecture", "1", "--unitary", "fourier:2", "--samples", "10000"},
  };
  for (auto cmd : cmds) {
    auto one = cmd, four = cmd;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = call(one), b = call(four);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << cmd[0];
  }
}

TEST(Cli, FrontierJsonKeys) {
  const auto j = nlohmann::json::parse(
      call({"frontier", "--unitary", "fourier:3", "--samples", "2000", "--format", "json"}).out);
  EXPECT_EQ(j["unitary"], "fourier:3");
  EXPECT_EQ(j["alpha"], 1.0);
  ASSERT_FALSE(j["points"].empty());
  EXPECT_TRUE(j["points"][0].contains("hx"));
  EXPECT_TRUE(j["points"][0].contains("state"));
}

TEST(Cli, EqualityCheckAndFourier) {
  const auto j = nlohmann::json::parse(
      call({"equality", "check", "--unitary", "fourier:2", "--state", "[[1,0],[0,0]]"}).out);
  EXPECT_EQ(j["verdict"], "equality");
  const auto k = nlohmann::json::parse(call({"equality", "fourier", "--unitary", "group:2x2"}).out);
  EXPECT_EQ(k["classes"].size(), 5u);
}

TEST(Cli, ConjectureReport) {
  const auto r = call({"conjecture", "4", "--unitary", "fourier:3", "--samples", "5000", "--seed", "2"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["conjecture"], 4);
  EXPECT_EQ(j["seed"], 2);
  EXPECT_EQ(j["verdict"], "consistent");
}

TEST(Cli, InvalidInputExitsOne) {
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"mu"}).code, 1);
  EXPECT_EQ(call({"mu", "--unitary", "fourier:1"}).code, 1);
  EXPECT_EQ(call({"mu", "--unitary", "nope"}).code, 1);
  EXPECT_EQ(call({"diagram", "--unitary", "fourier:2", "--alpha", "0.3"}).code, 1);
  EXPECT_EQ(call({"diagram", "--unitary", "fourier:2", "--strategy", "sobol"}).code, 1);
  EXPECT_EQ(call({"diagram", "--unitary", "fourier:2", "--format", "xml"}).code, 1);
  EXPECT_EQ(call({"conjecture", "7"}).code, 1);
  EXPECT_EQ(call({"equality", "scan", "--unitary", "c6", "--shape", "3by2"}).code, 1);
  const auto r = call({"mu", "--unitary", "nope"});
  EXPECT_EQ(lines(r.err).size(), 1u);
}

TEST(Cli, NonDualPairIsInvalidInput) {
  EXPECT_EQ(call({"equality", "check", "--unitary", "fourier:2", "--alpha", "1", "--beta", "2", "--state", "[1,0]"})
                .code,
            1);
}

TEST(Cli, UnitaryFileValidation) {
  const std::string path = testing::TempDir() + "near_unitary.json";
  {
    std::ofstream f(path);
    f << R"({"d":2,"matrix":[[[0.7071,0],[0.7071,0]],[[0.7071,0],[-0.7071,0]]]})";
  }
  EXPECT_EQ(call({"mu", "--unitary", "file:" + path}).code, 1);
  EXPECT_EQ(call({"mu", "--unitary", "file:" + path, "--force"}).code, 0);
}

TEST(Cli, OutFlagWritesFile) {
  const std::string path = testing::TempDir() + "d2.csv";
  const auto r = call({"d2", "--unitary", "fourier:2", "--samples", "16", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "h_x,h_y");
}

}  // namespace
}  // namespace entropic::cli
