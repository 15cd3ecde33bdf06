// Copyright 2026 The oscpair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "run_manifest.hpp"
#include "svg_plot.hpp"

namespace oscpair::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(OSCPAIR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("oscpair_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(SvgPlot, RendersSeriesAndSkipsNonFinite) {
  SvgPlot plot("title", "t", "sigma", true);
  plot.add_series("a", {1.0, 10.0, 100.0}, {1.0, std::nan(""), 3.0});
  plot.add_series("b", {1.0, 100.0}, {2.0, 2.5}, true);
  const std::string svg = plot.render();
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("title"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}

TEST(RunManifest, HashIgnoresCacheLocationOnly) {
  RunManifest a;
  a.command = "relax";
  a.args["t_points"] = "10";
  RunManifest b = a;
  b.config.cache_dir = "/somewhere/else";
  b.wall_time_s = 9.0;
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  RunManifest c = a;
  c.config.lambda_tilde = 0.1;
  EXPECT_NE(a.hash(), c.hash());
  RunManifest d = a;
  d.args["t_points"] = "11";
  EXPECT_NE(a.hash(), d.hash());
}

TEST(RunManifest, WarningsAppearInJsonAndCsvHeader) {
  RunManifest m;
  m.command = "fdt";
  m.warnings.push_back("zero temperature requested");
  EXPECT_NE(m.to_json().find("zero temperature requested"), std::string::npos);
  EXPECT_NE(m.to_json().find("formula_readings"), std::string::npos);
  const std::string h = m.csv_header();
  EXPECT_NE(h.find("# warning: zero temperature requested"), std::string::npos);
  EXPECT_NE(h.find("# manifest: " + m.hash()), std::string::npos);
}

TEST_F(CliRun, RelaxIsDeterministicAcrossJobCounts) {
  const std::string common = " --t-end 200 --t-points 8 --no-svg relax";
  ASSERT_EQ(run("--out " + (dir_ / "a").string() + " --jobs 1" + common), 0);
  ASSERT_EQ(run("--out " + (dir_ / "b").string() + " --jobs 3" + common), 0);
  const std::string a = slurp(dir_ / "a" / "relax.csv");
  EXPECT_NE(a.find("t_omega0,sigma1_sq,sigma2_sq,cov"), std::string::npos);
  EXPECT_EQ(a, slurp(dir_ / "b" / "relax.csv"));
  bool manifest = false;
  for (const auto& e : fs::directory_iterator(dir_ / "a"))
    manifest |= e.path().filename().string().rfind("manifest_", 0) == 0;
  EXPECT_TRUE(manifest);
}

TEST_F(CliRun, FdtWritesTable) {
  ASSERT_EQ(run("--out " + dir_.string() + " fdt --gammas 0.01"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "fdt.csv"));
}

TEST_F(CliRun, ConfigAndDomainErrorsExitWithTwo) {
  const fs::path cfg = dir_ / "bad.cfg";
  std::ofstream(cfg) << "lambda_tilde = 0.1\nnot_a_key = 2\n";
  EXPECT_EQ(run("--config " + cfg.string() + " --out " + dir_.string() + " relax"), 2);
  std::ofstream(cfg, std::ios::trunc) << "lambda_tilde = 1.5\n";
  EXPECT_EQ(run("--config " + cfg.string() + " --out " + dir_.string() + " relax"), 2);
}

TEST_F(CliRun, SelftestPasses) {
  EXPECT_EQ(run("--out " + dir_.string() + " selftest"), 0);
}

}  // namespace
}  // namespace oscpair::cli
