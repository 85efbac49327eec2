// Copyright 2026 The fputq Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fputq/commands.hpp"
#include "fputq/dense_oracle.hpp"
#include "fputq/errors.hpp"

namespace fputq {
namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

class CommandTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fputq_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunConfig config(const std::string& text) {
    auto c = parse_config_text(text);
    c.output_directory = dir_.string();
    return c;
  }

  fs::path dir_;
};

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-12), "-2.5e-12");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST_F(CommandTest, SimulateZeroStepsWritesInitialRowOnly) {
  const auto r = cmd_simulate(config("[model]\nn_sites = 2\n[grid]\nbits = 3\n[trotter]\nsteps = 0\n"));
  const auto rows = read_csv(r.observables_path);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"step", "t", "norm", "e_kin", "e_pot", "e_total", "q_0", "q_1"}));
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_NEAR(std::stod(rows[1][2]), 1.0, 1e-12);
  EXPECT_TRUE(fs::exists(r.checkpoint_path));
  EXPECT_EQ(read_checkpoint(r.checkpoint_path).layout(), (SiteLayout{2, 3}));
}

TEST_F(CommandTest, SimulateHarmonicEnergyIsConserved) {
  const auto r = cmd_simulate(config(
      "[model]\nn_sites = 2\nbeta = 0\n[grid]\nbits = 3\n[trotter]\ndt = 0.01\nsteps = 100\n"));
  const auto rows = read_csv(r.observables_path);
  ASSERT_EQ(rows.size(), 102u);
  const double e0 = std::stod(rows[1][5]);
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    worst = std::max(worst, std::abs(std::stod(rows[i][5]) - e0) / std::abs(e0));
    EXPECT_NEAR(std::stod(rows[i][2]), 1.0, 1e-12);
  }
  EXPECT_LE(worst, 1e-6);
}

TEST_F(CommandTest, SimulateIsByteIdenticalOnRerun) {
  const auto c = config("[model]\nn_sites = 3\nbeta = 0.5\n[grid]\nbits = 3\n[trotter]\nsteps = 20\n"
                        "[state]\ndisplacement = 0.3\n");
  const auto a = cmd_simulate(c);
  const auto first_csv = slurp(a.observables_path);
  const auto first_chk = slurp(a.checkpoint_path);
  cmd_simulate(c);
  EXPECT_EQ(slurp(a.observables_path), first_csv);
  EXPECT_EQ(slurp(a.checkpoint_path), first_chk);
}

TEST_F(CommandTest, CorrelatorZeroLagMatchesOracle) {
  const auto c = config("[model]\nn_sites = 2\n[grid]\nbits = 4\nq_max = 4\n[correlator]\nevolution = exact\n"
                        "estimator = rect, central, richardson\ntimes = 0\n[state]\ndisplacement = 0.5\n");
  const auto r = cmd_correlator(c);
  const auto w = weights(2, 1);
  const auto psi0 = init_product_gaussian(c.model, c.grid(), c.gaussian_width(), c.initial_centers());
  const ExactEvolution exact(c.model, c.grid());
  const auto ref = reconstruct_correlator(
      quadrature_correlator(CorrelatorKind::kCC, 0.0, psi0, exact, c.grid(), w),
      quadrature_correlator(CorrelatorKind::kSS, 0.0, psi0, exact, c.grid(), w),
      quadrature_correlator(CorrelatorKind::kCS, 0.0, psi0, exact, c.grid(), w),
      quadrature_correlator(CorrelatorKind::kSC, 0.0, psi0, exact, c.grid(), w));
  ASSERT_EQ(r.points.size(), 3u);
  for (const auto& p : r.points) {
    EXPECT_LE(std::abs(p.correlator.value - ref), p.correlator.bias_bound) << to_string(p.estimator);
  }
  const auto rows = read_csv(r.csv_path);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "h", "estimator", "re", "im", "bias_bound", "shots", "seed",
                                               "n_exec"}));
  EXPECT_EQ(rows[1][6], "");
  EXPECT_EQ(rows[1][7], "");
  EXPECT_EQ(r.n_exec, 0u);
}

TEST_F(CommandTest, CorrelatorEmptyTimesWritesHeaderOnly) {
  const auto r = cmd_correlator(config("[model]\nn_sites = 2\n[grid]\nbits = 3\n[correlator]\ntimes =\n"));
  EXPECT_TRUE(r.points.empty());
  EXPECT_EQ(r.n_exec, 0u);
  EXPECT_EQ(slurp(r.csv_path), "t,h,estimator,re,im,bias_bound,shots,seed,n_exec\n");
}

TEST_F(CommandTest, CorrelatorShotsCarryTheSeedAndAreDeterministic) {
  const auto c = config("[model]\nn_sites = 2\n[grid]\nbits = 3\n[trotter]\ndt = 0.05\n"
                        "[correlator]\ntimes = 0, 0.1, 0.2\nshots = 512\nseed = 1234\n");
  const auto a = cmd_correlator(c);
  EXPECT_EQ(a.n_exec, 4u * 3u * 512u);
  const auto rows = read_csv(a.csv_path);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][6], "512");
    EXPECT_EQ(rows[i][7], "1234");
  }
  const auto first = slurp(a.csv_path);
  cmd_correlator(c);
  EXPECT_EQ(slurp(a.csv_path), first);
}

TEST_F(CommandTest, ResourcesTableOneAndJson) {
  std::ostringstream out;
  const auto report = cmd_resources(config("[model]\nn_sites = 8\n[grid]\nbits = 6\n[resources]\nancilla = 12\n"),
                                    true, out);
  for (const char* v : {"60", "144", "108", "288", "204", "576"}) {
    EXPECT_NE(out.str().find(v), std::string::npos) << v;
  }
  EXPECT_EQ(report.qubits_serial, 60u);
  EXPECT_EQ(resource_report_from_json(slurp((dir_ / "resources.json").string())), report);
}

TEST_F(CommandTest, ResourcesDepthLinearInSteps) {
  std::ostringstream out;
  const auto one = cmd_resources(config("[model]\nn_sites = 4\n[grid]\nbits = 3\n"), false, out);
  const auto r = resource_report(4, 3, 6, TrotterOrder::kSecond, 1.0, 0.01);
  EXPECT_EQ(one, r);
  const auto step = build_trotter_circuit(4, 3, 6, TrotterOrder::kSecond, 1);
  EXPECT_EQ(build_trotter_circuit(4, 3, 6, TrotterOrder::kSecond, 20).depth(), 20 * step.depth());
}

TEST_F(CommandTest, CapacityGuardFiresBeforeAllocation) {
  std::ostringstream out, err;
  auto c = config("[model]\nn_sites = 8\n[grid]\nbits = 4\n[limits]\nmax_qubits = 20\n");
  EXPECT_EQ(run_command("simulate", c, false, out, err), kExitCapacityGuard);
  EXPECT_EQ(run_command("correlator", c, false, out, err), kExitCapacityGuard);
  auto exact = config("[model]\nn_sites = 4\n[grid]\nbits = 4\n[correlator]\nevolution = exact\n");
  EXPECT_EQ(run_command("correlator", exact, false, out, err), kExitCapacityGuard);
  EXPECT_FALSE(fs::exists(dir_ / "correlator.csv"));
}

TEST_F(CommandTest, UnknownCommandIsAConfigError) {
  std::ostringstream out, err;
  EXPECT_EQ(run_command("frobnicate", config(""), false, out, err), kExitConfigError);
}

TEST_F(CommandTest, ValidateNegativeControlFails) {
  std::ostringstream out, err;
  auto c = config("[validate]\ninject_dft_sign_fault = true\n");
  EXPECT_EQ(run_command("validate", c, false, out, err), kExitValidationFailure);
  EXPECT_NE(out.str().find("FAIL trotter_vs_oracle"), std::string::npos) << out.str();
}

}  // namespace
}  // namespace fputq
