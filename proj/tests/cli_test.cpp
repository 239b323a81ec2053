// Copyright 2026 The pclone Authors
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

#include "pclone/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pclone/errors.hpp"

namespace pclone::cli {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> CsvRows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pclone_cli_test_" + name);
}

TEST(Classify, RegimeLabels) {
  EXPECT_EQ(json::parse(Invoke({"classify", "--gamma", "0.5"}).out)["regime"], "ALL_UNIT");
  EXPECT_EQ(json::parse(Invoke({"classify", "--beta", "0.7", "--gamma", "0.7"}).out)["regime"],
            "STRICT_GAP");
  const json weak = json::parse(Invoke({"classify"}).out);
  EXPECT_EQ(weak["regime"], "WEAK_GAP");
  EXPECT_EQ(weak["comparisons"]["beta_gamma_le_alpha_pow_m_minus_1"], false);
  EXPECT_NEAR(weak["boundary"]["beta_gamma"].get<double>(), 0.72, 1e-15);
}

TEST(Report, IsSelfDescribing) {
  const json r = json::parse(Invoke({"--seed", "7", "classify"}).out);
  EXPECT_EQ(r["tool"], kToolName);
  EXPECT_EQ(r["version"], kToolVersion);
  EXPECT_EQ(r["seed"], 7);
  EXPECT_EQ(r["config"]["alpha"], 0.6);
  EXPECT_EQ(r["config"]["grid_resolution"], 801);
}

TEST(Maxima, WorkedInstance) {
  const json r = json::parse(Invoke({"maxima"}).out);
  EXPECT_NEAR(r["closed_form"]["I"].get<double>(), 0.8875, 1e-12);
  EXPECT_NEAR(r["closed_form"]["II"].get<double>(), 0.859375, 1e-12);
  EXPECT_NEAR(r["closed_form"]["III"].get<double>(), 0.8875, 1e-12);
  EXPECT_FALSE(r.contains("oracle"));
}

TEST(Maxima, AllUnitInstance) {
  const json r = json::parse(Invoke({"maxima", "--gamma", "0.5"}).out);
  for (const char* s : {"I", "II", "III"}) EXPECT_EQ(r["closed_form"][s].get<double>(), 1.0);
}

TEST(Maxima, OracleDeltas) {
  const Outcome o = Invoke({"maxima", "--oracle"});
  ASSERT_EQ(o.code, kExitOk);
  const json r = json::parse(o.out);
  for (const char* s : {"I", "II", "III"}) EXPECT_LE(r["delta"][s].get<double>(), 5e-3);
}

TEST(Maxima, UnequalPriors) {
  EXPECT_EQ(Invoke({"maxima", "--priors", "0.3", "0.7"}).code, kExitUnsupportedPriors);
  const Outcome o = Invoke({"maxima", "--priors", "0.3", "0.7", "--oracle-only"});
  ASSERT_EQ(o.code, kExitOk);
  const json r = json::parse(o.out);
  EXPECT_FALSE(r.contains("closed_form"));
  EXPECT_GT(r["oracle"]["I"].get<double>(), 0.0);
  // Outside the weak-gap regime unequal priors are fine.
  EXPECT_EQ(Invoke({"maxima", "--priors", "0.3", "0.7", "--gamma", "0.5"}).code, kExitOk);
}

TEST(Simulate, WithinThreeSigma) {
  const json r = json::parse(Invoke({"simulate"}).out);
  const json& three = r["scenarios"]["III"];
  EXPECT_NEAR(three["analytic_rate"].get<double>(), 0.8875, 1e-12);
  EXPECT_TRUE(three["within_3_sigma"].get<bool>());
  EXPECT_EQ(r["seed"], 42);
}

TEST(Simulate, RejectsZeroShots) { EXPECT_EQ(Invoke({"simulate", "--shots", "0"}).code, kExitValidation); }

TEST(Simulate, RerunIsByteIdentical) {
  const Outcome a = Invoke({"simulate", "--seed", "123", "--shots", "20000"});
  const Outcome b = Invoke({"simulate", "--seed", "123", "--shots", "20000"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, Invoke({"simulate", "--seed", "124", "--shots", "20000"}).out);
}

TEST(Sweep, BetaColumn) {
  const Outcome o = Invoke({"sweep", "--sweep-beta", "0.7", "1.0", "4"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto rows = CsvRows(o.out);
  ASSERT_EQ(rows.size(), 5u);
  const std::vector<std::string> header = {"alpha", "beta", "gamma", "m", "regime", "rI",
                                           "rII", "rIII", "oracleI", "oracleII", "oracleIII",
                                           "gapI_II"};
  EXPECT_EQ(rows[0], header);
  const std::vector<std::string> betas = {"0.7", "0.8", "0.9", "1"};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 12u);
    EXPECT_EQ(rows[i][1], betas[i - 1]);
    EXPECT_EQ(rows[i][5], rows[i][7]);
    EXPECT_GE(std::stod(rows[i][5]), std::stod(rows[i][6]));
    EXPECT_EQ(rows[i][8], "");
    EXPECT_EQ(std::stod(rows[i][11]) == 0.0, i == 4) << rows[i][11];
  }
  EXPECT_EQ(rows[3][5], "0.8875");
  EXPECT_EQ(rows[3][6], "0.859375");
}

TEST(Sweep, LexicographicOrderAndOracleColumns) {
  const Outcome o = Invoke({"sweep", "--sweep-alpha", "0.7", "0.5", "2", "--sweep-m", "2", "3", "2",
                         "--oracle", "--grid-resolution", "201"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto rows = CsvRows(o.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][0], "0.5");
  EXPECT_EQ(rows[1][3], "2");
  EXPECT_EQ(rows[2][0], "0.5");
  EXPECT_EQ(rows[2][3], "3");
  EXPECT_EQ(rows[3][0], "0.7");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_FALSE(rows[i][8].empty());
}

TEST(Sweep, Validation) {
  EXPECT_EQ(Invoke({"sweep"}).code, kExitValidation);
  EXPECT_EQ(Invoke({"sweep", "--sweep-beta", "0.7", "1.0", "0"}).code, kExitValidation);
  EXPECT_EQ(Invoke({"sweep", "--sweep-m", "2", "3", "3"}).code, kExitValidation);
  EXPECT_EQ(Invoke({"sweep", "--sweep-beta", "0.7", "1.0", "4", "--out", "/nonexistent/dir/x.csv"}).code,
            kExitIo);
}

TEST(Config, FileAndFlagPrecedence) {
  const auto path = TempPath("config.json");
  {
    std::ofstream f(path);
    f << R"({"alpha": 0.6, "beta": 0.9, "gamma": 0.5, "seed": 9, "sweep": {"beta": [0.7, 1.0, 4]}})";
  }
  const json r = json::parse(Invoke({"classify", "--config", path.string()}).out);
  EXPECT_EQ(r["regime"], "ALL_UNIT");
  EXPECT_EQ(r["seed"], 9);
  const json over = json::parse(Invoke({"classify", "--config", path.string(), "--gamma", "0.8"}).out);
  EXPECT_EQ(over["regime"], "WEAK_GAP");
  EXPECT_EQ(CsvRows(Invoke({"sweep", "--config", path.string()}).out).size(), 5u);
  std::filesystem::remove(path);
}

TEST(Config, Errors) {
  EXPECT_EQ(Invoke({"classify", "--config", TempPath("missing.json").string()}).code, kExitIo);
  const auto path = TempPath("bad.json");
  {
    std::ofstream f(path);
    f << R"({"alpha": 0.6, "colour": 1})";
  }
  EXPECT_EQ(Invoke({"classify", "--config", path.string()}).code, kExitValidation);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  EXPECT_EQ(Invoke({"classify", "--config", path.string()}).code, kExitValidation);
  std::filesystem::remove(path);
  EXPECT_EQ(Invoke({"classify", "--alpha", "1.5"}).code, kExitValidation);
  EXPECT_EQ(Invoke({"classify", "--m", "1"}).code, kExitValidation);
  EXPECT_EQ(Invoke({"classify", "--priors", "0.3", "0.3"}).code, kExitValidation);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(Invoke({}).code, kExitValidation);
}

TEST(Output, FileMatchesStdout) {
  const auto path = TempPath("out.json");
  ASSERT_EQ(Invoke({"maxima", "--out", path.string()}).code, kExitOk);
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  EXPECT_EQ(s.str(), Invoke({"maxima"}).out);
  std::filesystem::remove(path);
}

TEST(SweepRange, Values) {
  EXPECT_EQ(SweepRange({0.25, 0.75, 1}).values(), std::vector<double>({0.25}));
  const std::vector<double> v = SweepRange{0.0, 1.0, 5}.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_DOUBLE_EQ(v[2], 0.5);
  EXPECT_THROW(SweepRange({0.0, 1.0, 0}).values(), DomainError);
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.8875), "0.8875");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(0.028124999999999956), "0.028125");
}

}  // namespace
}  // namespace pclone::cli
