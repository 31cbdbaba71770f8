// Copyright 2026 The mdspir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli_app.h"

namespace mdspir::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mdspir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mdspir_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << body;
    return p.string();
  }
  std::string Stores() const { return (dir_ / "stores").string(); }

  fs::path dir_;
};

TEST_F(CliTest, EncodeSchemeAStripes) {
  const auto a = Write("a.bin", "hello");
  const auto b = Write("b.bin", "private");
  const auto c = Write("c.bin", "retrieval");
  const CliRun r = Cli({"encode", "--n", "5", "--k", "2", "--scheme", "a",
                     "--out-dir", Stores(), a, b, c});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("stores=5 m=3 alpha=3"), std::string::npos) << r.out;
  for (int i = 1; i <= 5; ++i) {
    EXPECT_TRUE(fs::exists(fs::path(Stores()) / ("node_" + std::to_string(i) + ".pirn")));
  }
  const std::string manifest = Slurp(fs::path(Stores()) / "manifest.txt");
  EXPECT_NE(manifest.find("alpha=3\n"), std::string::npos);
  EXPECT_NE(manifest.find("scheme=a\n"), std::string::npos);
  for (const auto& e : fs::directory_iterator(Stores())) {
    EXPECT_NE(e.path().extension(), ".tmp");
  }
}

TEST_F(CliTest, EncodeSchemeBIsUnstriped) {
  const auto a = Write("a.bin", "abc");
  const CliRun r = Cli({"encode", "--n", "4", "--k", "2", "--b", "2", "--scheme", "b",
                     "--out-dir", Stores(), a});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("alpha=1"), std::string::npos);
}

TEST_F(CliTest, EncodeRejectsKAboveN) {
  const auto a = Write("a.bin", "abc");
  const CliRun r = Cli({"encode", "--n", "4", "--k", "5", "--out-dir", Stores(), a});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("k must be < n"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(fs::path(Stores()) / "node_1.pirn"));
}

TEST_F(CliTest, SchemeAWithCollusionIsRejected) {
  const auto a = Write("a.bin", "abc");
  EXPECT_EQ(Cli({"encode", "--n", "5", "--k", "2", "--b", "2", "--scheme", "a",
                 "--out-dir", Stores(), a}).code,
            2);
}

TEST_F(CliTest, GetFiveTwoGf5Cost) {
  const std::string lambda = "1,0,1,1,1;0,1,1,2,3";
  const auto a = Write("a.txt", "1 2 3 4 0 1");
  const auto b = Write("b.txt", "4 4 3 2 1 0");
  const auto c = Write("c.txt", "0 0 1 1 2 2");
  ASSERT_EQ(Cli({"encode", "--lambda", lambda, "--q", "5", "--input-format",
                 "symbols", "--out-dir", Stores(), a, b, c}).code,
            0);
  const std::string out = (dir_ / "got.txt").string();
  const CliRun r = Cli({"get", "--out-dir", Stores(), "--f", "2", "--seed", "4",
                     "--output", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "downloaded=10 file=6 cpop=5/3\n");
  EXPECT_EQ(Slurp(out), "4 4 3 2 1 0\n");
}

TEST_F(CliTest, GetBytesRoundTrip) {
  const std::string body = "the quick brown fox jumps over the lazy dog";
  const auto a = Write("a.bin", body);
  const auto b = Write("b.bin", std::string("\x00\xff\x10", 3));
  ASSERT_EQ(Cli({"encode", "--n", "6", "--k", "3", "--b", "2", "--out-dir",
                 Stores(), a, b}).code,
            0);
  const CliRun r = Cli({"get", "--out-dir", Stores(), "--f", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cpop=5/1"), std::string::npos) << r.out;
  EXPECT_EQ(Slurp(fs::path(Stores()) / "retrieved_1.bin"), body);
  ASSERT_EQ(Cli({"get", "--out-dir", Stores(), "--f", "2"}).code, 0);
  EXPECT_EQ(Slurp(fs::path(Stores()) / "retrieved_2.bin"), std::string("\x00\xff\x10", 3));
}

TEST_F(CliTest, GetIndexRules) {
  const auto a = Write("a.bin", "x");
  ASSERT_EQ(Cli({"encode", "--n", "3", "--k", "2", "--out-dir", Stores(), a}).code, 0);
  EXPECT_EQ(Cli({"get", "--out-dir", Stores(), "--f", "0"}).code, 1);
  EXPECT_EQ(Cli({"get", "--out-dir", Stores(), "--f", "2"}).code, 2);
}

TEST_F(CliTest, BaselineCostsM) {
  const auto a = Write("a.bin", "one");
  const auto b = Write("b.bin", "two");
  const auto c = Write("c.bin", "three");
  ASSERT_EQ(Cli({"encode", "--n", "5", "--k", "2", "--out-dir", Stores(), a, b, c}).code, 0);
  const CliRun r = Cli({"get", "--out-dir", Stores(), "--f", "3", "--baseline"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cpop=3/1"), std::string::npos) << r.out;
  EXPECT_EQ(Slurp(fs::path(Stores()) / "retrieved_3.bin"), "three");
}

TEST_F(CliTest, SameSeedSameBytes) {
  const auto a = Write("a.bin", "determinism");
  ASSERT_EQ(Cli({"encode", "--n", "5", "--k", "3", "--out-dir", Stores(), a}).code, 0);
  const std::string snapshot = Slurp(fs::path(Stores()) / "node_4.pirn");
  const CliRun r1 = Cli({"audit", "--n", "5", "--k", "3", "--seed", "9"});
  const CliRun r2 = Cli({"audit", "--n", "5", "--k", "3", "--seed", "9"});
  EXPECT_EQ(r1.out, r2.out);
  ASSERT_EQ(Cli({"encode", "--n", "5", "--k", "3", "--out-dir", Stores(), a}).code, 0);
  EXPECT_EQ(Slurp(fs::path(Stores()) / "node_4.pirn"), snapshot);
}

TEST_F(CliTest, CorruptStoreIsValidationError) {
  const auto a = Write("a.bin", "abcdef");
  ASSERT_EQ(Cli({"encode", "--n", "4", "--k", "2", "--out-dir", Stores(), a}).code, 0);
  const fs::path node = fs::path(Stores()) / "node_2.pirn";
  std::string bytes = Slurp(node);
  bytes[0] = 'X';
  std::ofstream(node, std::ios::binary) << bytes;
  const CliRun r = Cli({"get", "--out-dir", Stores(), "--f", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("BadMagic"), std::string::npos) << r.err;
}

TEST_F(CliTest, IoErrors) {
  EXPECT_EQ(Cli({"get", "--out-dir", (dir_ / "missing").string(), "--f", "1"}).code, 3);
  EXPECT_EQ(Cli({"encode", "--n", "4", "--k", "2", "--out-dir", Stores(),
                 (dir_ / "nope.bin").string()}).code,
            3);
  const auto blocker = Write("blocker", "not a directory");
  const auto a = Write("a.bin", "abc");
  EXPECT_EQ(Cli({"encode", "--n", "4", "--k", "2", "--out-dir", blocker + "/sub", a}).code, 3);
}

TEST_F(CliTest, AuditExitCodes) {
  const CliRun ok = Cli({"audit", "--n", "4", "--k", "2", "--b", "2", "--q", "3", "--seed", "1"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("scheme=B b=2"), std::string::npos);
  EXPECT_NE(ok.out.find("audit=pass"), std::string::npos);

  const CliRun a = Cli({"audit", "--n", "5", "--k", "2", "--q", "5", "--m", "3", "--seed", "1"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("scheme=A"), std::string::npos);

  const CliRun bad = Cli({"audit", "--n", "4", "--k", "2", "--b", "2", "--q", "3", "--mutant"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("audit=fail"), std::string::npos);

  const CliRun q4 = Cli({"audit", "--n", "4", "--k", "2", "--q", "4"});
  EXPECT_EQ(q4.code, 2);
  EXPECT_NE(q4.err.find("q must be prime"), std::string::npos) << q4.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, 1);
  EXPECT_EQ(Cli({"frobnicate"}).code, 1);
  EXPECT_EQ(Cli({"audit", "--scheme", "c", "--n", "4", "--k", "2"}).code, 1);
  EXPECT_EQ(Cli({"get", "--f", "1"}).code, 1);
}

TEST_F(CliTest, BenchReportsExpectedCost) {
  const CliRun r = Cli({"bench", "--n", "5", "--k", "2", "--sessions", "3", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("correct=3/3 cpop=5/3 expected=5/3 baseline=3/1"),
            std::string::npos)
      << r.out;
}

}  // namespace
}  // namespace mdspir::cli
