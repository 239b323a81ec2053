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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pclone/protocols.hpp"

namespace pclone::cli {

inline constexpr const char* kToolName = "pclone";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitUnsupportedPriors = 3,
  kExitInconsistency = 4,
  kExitIo = 5,
};

// Inclusive linear range; steps is the number of points.
struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

struct SweepSpec {
  std::optional<SweepRange> alpha;
  std::optional<SweepRange> beta;
  std::optional<SweepRange> gamma;
  std::optional<SweepRange> m;

  bool empty() const { return !alpha && !beta && !gamma && !m; }
};

struct RunConfig {
  double alpha = 0.6;
  double beta = 0.9;
  double gamma = 0.8;
  int m = 2;
  std::array<double, 2> priors = {0.5, 0.5};
  int grid_resolution = 801;
  std::int64_t shots = 100000;
  std::uint64_t seed = 42;
  SweepSpec sweep;

  CloningProblem problem() const;
};

struct CommandOptions {
  bool oracle = false;
  bool oracle_only = false;
};

/// Overlays keys of a config object onto `base`. Unknown keys and wrong
/// types throw DomainError.
RunConfig apply_config_json(const nlohmann::json& j, RunConfig base = {});

/// Throws DomainError on any out-of-range field.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

/// Grid used by oracle-backed commands; tolerance widens on coarse grids.
double grid_tolerance(int resolution);

nlohmann::json classify_report(const RunConfig& config);
nlohmann::json maxima_report(const RunConfig& config, const CommandOptions& options);
nlohmann::json simulate_report(const RunConfig& config);
std::string sweep_csv(const RunConfig& config, const CommandOptions& options);

/// Number formatting shared by every CSV column (12 significant digits).
std::string format_number(double value);

/// Entry point behind the executable. Never throws; returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pclone::cli
