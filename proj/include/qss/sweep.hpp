// Copyright 2026 The qswitchsim Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qss/fidelity.hpp"

// Batch evaluation of the fidelity formulas over a (p, q) grid, optional
// per-point quadrature cross-checks and seeded heralding experiments, and
// CSV/JSON emission of the resulting table. Grid points are independent, so
// rows may be computed by a worker pool; results are assembled by index and
// per-point RNG streams are derived from (seed, i, j), making the output
// independent of the worker count.

namespace qss {

inline constexpr const char* kToolName = "qswitchsim";
inline constexpr const char* kToolVersion = "0.1.0";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepMode { Switch, Classical, Both };
enum class OutputFormat { Csv, Json };

struct SweepConfig {
  int p_steps = 21;
  int q_steps = 21;
  double p_min = 0.0;
  double p_max = 1.0;
  double q_min = 0.0;
  double q_max = 1.0;
  SweepMode mode = SweepMode::Both;
  // Numeric-quadrature columns are emitted iff a rule is configured.
  std::optional<QuadratureSpec> quadrature;
  std::uint64_t seed = 0;
  // Per-point heralding experiment when positive.
  std::int64_t herald_trials = 0;
  int workers = 1;
  std::string output_path = "-";
  OutputFormat format = OutputFormat::Csv;
};

void validate(const SweepConfig& config);

// Sampled heralding outcomes at one grid point.
struct HeraldExperimentRecord {
  double p = 0.0;
  double q = 0.0;
  std::int64_t trials = 0;
  std::int64_t minus_count = 0;
  double empirical_rate = 0.0;
  double expected_rate = 0.0;
};

// One grid point. Fields are empty when the sweep mode excludes their
// family or when the quantity is undefined (plus branch at p = q = 1, minus
// branch at p*q = 0).
struct FidelitySweepPoint {
  double p = 0.0;
  double q = 0.0;
  std::optional<double> f_qs;
  std::optional<double> f_plus;
  std::optional<double> f_minus;
  std::optional<double> f_ct;
  std::optional<double> ratio;
  double herald_prob = 0.0;
  std::optional<double> f_plus_num;
  std::optional<double> f_minus_num;
  std::optional<double> f_ct_num;
  std::optional<HeraldExperimentRecord> herald;
};

/// Schedule-independent per-point RNG seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j,
                       std::uint64_t stream);

/// Draws `trials` Bernoulli outcomes from the exact minus-branch probability
/// of the switched distribution. Reproducible for a fixed seed.
HeraldExperimentRecord run_herald_experiment(double p, double q,
                                             std::int64_t trials,
                                             std::uint64_t seed);

/// Evaluates the configured grid, ordered by (p index, q index).
std::vector<FidelitySweepPoint> run_sweep(const SweepConfig& config);

void emit_csv(const std::vector<FidelitySweepPoint>& table,
              const SweepConfig& config, std::ostream& os);
void emit_json(const std::vector<FidelitySweepPoint>& table,
               const SweepConfig& config, std::ostream& os);

/// Writes the table to config.output_path ("-" for stdout) in the requested
/// format. Byte-identical output for identical inputs.
void emit(const std::vector<FidelitySweepPoint>& table, const SweepConfig& config);

/// Parses "det:NxM" or "mc:SAMPLES".
QuadratureSpec parse_quadrature(const std::string& text);

std::string format_number(double value);

}  // namespace qss
