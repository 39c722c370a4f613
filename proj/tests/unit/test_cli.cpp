// Copyright 2026 The qswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli/commands.hpp"

namespace qswap::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qswap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Grid, ParsesAndValidates) {
  const auto g = parse_grid("0.1:0.9:9");
  EXPECT_EQ(g.count, 9u);
  EXPECT_EQ(g.values().front(), 0.1);
  EXPECT_EQ(g.values().back(), 0.9);
  EXPECT_THROW(parse_grid("0.1:0.9"), std::invalid_argument);
  EXPECT_THROW(parse_grid("0.1:0.9:0"), std::invalid_argument);
  EXPECT_THROW(parse_grid("-0.1:0.9:3"), std::invalid_argument);
  EXPECT_THROW(parse_grid("0.1:0.9:3x"), std::invalid_argument);
}

TEST(VerifyTable1, IdealRunPasses) {
  const auto r = run({"verify-table1"});
  EXPECT_EQ(r.code, kExitOk);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 17u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"pattern", "signs", "probability",
                                               "fidelity", "fidelity_canonical",
                                               "status"}));
  EXPECT_EQ(rows[1][0], "(H1',H2')");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][5], "pass");
    EXPECT_EQ(rows[i][2], rows[1][2]);
  }
  EXPECT_NE(r.err.find("16/16"), std::string::npos);
}

TEST(VerifyTable1, OffBalanceAlphaFailsAndNamesPatterns) {
  const auto r = run({"verify-table1", "--alpha-scale", "0.9"});
  EXPECT_EQ(r.code, kExitVerificationFailure);
  EXPECT_NE(r.err.find("(V3',V4')"), std::string::npos);
  const auto rows = csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][2], rows[1][2]);
    EXPECT_LT(std::stod(rows[i][3]), 1.0);
  }
}

TEST(VerifyTable1, ZeroGenerationIsDegenerate) {
  const auto r = run({"verify-table1", "--p", "0"});
  EXPECT_EQ(r.code, kExitVerificationFailure);
  EXPECT_NE(r.err.find("degenerate"), std::string::npos);
  EXPECT_NE(r.out.find(",0,,,degenerate"), std::string::npos);
}

TEST(SweepRate, ColumnsAndValues) {
  const auto r = run({"sweep-rate"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 100u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "P_s_qutrit", "rate_qutrit",
                                               "rate_type2", "analytic_P_s",
                                               "abs_err"}));
  bool saw_optimum = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p = std::stod(rows[i][0]);
    EXPECT_NEAR(std::stod(rows[i][3]), p * p / 2.0, 1e-12);
    EXPECT_LT(std::stod(rows[i][5]), 1e-9);
    if (std::abs(p - 0.61) < 1e-9) {
      saw_optimum = true;
      EXPECT_NEAR(std::stod(rows[i][1]), 0.173, 5e-4);
    }
  }
  EXPECT_TRUE(saw_optimum);
}

TEST(SweepRate, ByteStableAcrossRunsAndThreads) {
  const auto a = run({"sweep-rate", "--p-grid", "0.1:0.9:17", "--threads", "1"});
  const auto b = run({"sweep-rate", "--p-grid", "0.1:0.9:17", "--threads", "4"});
  const auto c = run({"sweep-rate", "--p-grid", "0.1:0.9:17", "--threads", "4"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(b.out, c.out);
  EXPECT_EQ(a.out.find('\r'), std::string::npos);
}

TEST(SweepRate, JsonUsesTwelveSignificantDigits) {
  const auto r = run({"sweep-rate", "--p", "0.3", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0]["p"], 0.3);
  EXPECT_NE(r.out.find("\"P_s_qutrit\": 0.0645365853659"), std::string::npos);
}

TEST(SweepLoss, PropertiesOfTheTable) {
  const auto r = run({"sweep-loss", "--p-grid", "0.1:0.9:3", "--eta-grid",
                      "0.5:1:3"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 3 * 3 * 2);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "eta", "detector", "P_s",
                                               "fidelity_corrected",
                                               "fidelity_canonical", "rate"}));
  double f_low = 0.0, f_high = 0.0;
  for (std::size_t i = 1; i < rows.size(); i += 2) {
    EXPECT_EQ(rows[i][2], "pnrd");
    EXPECT_EQ(rows[i + 1][2], "threshold");
    EXPECT_GE(std::stod(rows[i + 1][3]), std::stod(rows[i][3]));
    const double p = std::stod(rows[i][0]);
    const double eta = std::stod(rows[i][1]);
    if (eta == 1.0) {
      const double ideal = 3 * p * p * (1 - p) * (1 - p) / (5 * p * p - 8 * p + 4);
      EXPECT_NEAR(std::stod(rows[i][3]), ideal, 1e-11);
    }
    if (eta == 0.5 && p == 0.1) f_low = std::stod(rows[i][4]);
    if (eta == 0.5 && p == 0.9) f_high = std::stod(rows[i][4]);
  }
  EXPECT_GT(f_low, f_high);
}

TEST(SweepLoss, SingleDetectorFilter) {
  const auto r = run({"sweep-loss", "--p", "0.5", "--eta", "0.8", "--detector",
                      "threshold", "--all-patterns"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][2], "threshold");
}

TEST(Optimum, PrintsCubeRootValues) {
  const auto r = run({"optimum", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc[0]["p_star"].get<double>(), 0.614, 5e-4);
  EXPECT_NEAR(doc[0]["P_s_star"].get<double>(), 0.173, 5e-4);
  EXPECT_NE(r.out.find("0.613511790436"), std::string::npos);
}

TEST(Crossover, PrintsRoot) {
  const auto r = run({"crossover"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = csv(r.out);
  EXPECT_NEAR(std::stod(rows[1][0]), 0.701, 0.002);
}

TEST(AuditLoss, WritesMismatchRows) {
  const auto path =
      std::filesystem::temp_directory_path() / "qswap_audit_test.csv";
  const auto r = run({"audit-loss", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_NE(text.str().find("mismatch"), std::string::npos);
  EXPECT_NE(text.str().find("sqrt(eta*(1-eta))"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(CheckDominance, SeededRunHasNoViolations) {
  const auto a = run({"check-dominance", "--seed", "42"});
  const auto b = run({"check-dominance", "--seed", "42"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(csv(a.out).size(), 17u);
}

TEST(Usage, ErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep-rate", "--p-grid", "0:2:3"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep-rate", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep-loss", "--detector", "apd"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep-loss", "--eta", "1.5"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep-loss", "--eta", "0"}).code, kExitUsage);
}

TEST(Usage, UnwritableOutputNamesPath) {
  const auto r = run({"optimum", "--out", "/nonexistent-dir/x.csv"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("/nonexistent-dir/x.csv"), std::string::npos);
}

TEST(Usage, HelpExitsCleanly) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("sweep-loss"), std::string::npos);
}

}  // namespace
}  // namespace qswap::cli
