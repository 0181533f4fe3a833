// Copyright 2026 The stokes-data Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the stokes binary as a subprocess and checks exit codes and reports.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "stokes/io.hpp"

namespace stokes {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  json report() const { return json::parse(out); }
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(STOKES_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(STOKES_TEST_DATA) + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("stokes_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, CertifyScalarTwo) {
  CliRun r = run("certify " + data("scalar_two.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["verdict"], "CERTIFIED_PURE_POLARIZED");
  EXPECT_EQ(r.report()["scalar_mode"], "gaussian_rational");
  EXPECT_EQ(r.report()["input_digest"].get<std::string>().size(), 64u);
}

TEST_F(CliTest, CertifyScalarMinusIFails) {
  CliRun r = run("certify " + data("scalar_minus_i.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report()["verdict"], "FAILED");
  EXPECT_EQ(r.report()["details"]["failed_clause"], "k_space_form_definite");
}

TEST_F(CliTest, ValidateZeroDiagonal) {
  CliRun r = run("validate " + data("zero_diagonal.json"));
  EXPECT_EQ(r.code, 1);
  auto v = r.report()["details"]["validation"]["violations"];
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0]["clause"], "S_{ii} invertible");
}

TEST_F(CliTest, GenThenCertify) {
  std::string out = tmp("gen.json");
  CliRun g = run("gen --n 3 --rank 3 --seed 7 --out " + out);
  ASSERT_EQ(g.code, 0);
  CliRun r = run("certify " + out);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["verdict"], "CERTIFIED_PURE_POLARIZED");
}

TEST_F(CliTest, GenIsDeterministic) {
  CliRun a = run("gen --n 4 --dims 1,2,1,2 --rank 3 --seed 11");
  CliRun b = run("gen --n 4 --dims 1,2,1,2 --rank 3 --seed 11");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, ReportsAreDeterministicWithoutTimings) {
  CliRun a = run("--no-timings certify " + data("two_factor.json"));
  CliRun b = run("--no-timings certify " + data("two_factor.json"));
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.report().contains("timings"));
}

TEST_F(CliTest, CechCheckPasses) {
  CliRun r = run("cech-check " + data("two_factor.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["verdict"], "PASS");
}

TEST_F(CliTest, IndicesOfUpperLoop) {
  CliRun r = run("indices " + data("upper_loop.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["details"]["indices"], json::array({0, 0}));
}

TEST_F(CliTest, InvalidInputExitsTwo) {
  std::string bad = tmp("bad.json");
  std::ofstream(bad) << "{";
  CliRun r = run("certify " + bad);
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report()["error"], "ParseError");

  std::string shape = tmp("shape.json");
  std::ofstream(shape) << R"({"factors": [[0, 0]], "dims": [2], "sigma": [[1]]})";
  r = run("monodromy " + shape);
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report()["field"], "sigma");

  r = run("certify --bogus-flag " + data("scalar_two.json"));
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, ModeOverride) {
  CliRun r = run("--mode float certify " + data("scalar_i.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["scalar_mode"], "float");
}

TEST_F(CliTest, BatchCertify) {
  CliRun r = run("certify --jobs 2 " + data("scalar_two.json") + " " + data("scalar_minus_i.json"));
  EXPECT_EQ(r.code, 1);
  json j = r.report();
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["verdict"], "CERTIFIED_PURE_POLARIZED");
  EXPECT_EQ(j[1]["verdict"], "FAILED");
}

TEST_F(CliTest, EverySubcommandRuns) {
  std::string inst = tmp("inst.json");
  ASSERT_EQ(run("gen --n 3 --dims 1,2,1 --rank 2 --seed 5 --aligned-kernel --out " + inst).code, 0);
  for (const char* cmd : {"validate", "order", "monodromy", "iota", "dual", "minimality", "induced-form", "k-spaces",
                          "split", "certify", "cohomology", "cech-check"}) {
    CliRun r = run(std::string(cmd) + " " + inst);
    EXPECT_TRUE(r.code == 0 || r.code == 1) << cmd << ": " << r.out;
    EXPECT_EQ(r.report()["command"], cmd);
  }
  CliRun h = run("hom " + inst + " " + inst);
  EXPECT_EQ(h.code, 0);
  std::string svg = tmp("order.svg");
  EXPECT_EQ(run("order --svg " + svg + " " + inst).code, 0);
  EXPECT_TRUE(fs::exists(svg));
}

}  // namespace
}  // namespace stokes
