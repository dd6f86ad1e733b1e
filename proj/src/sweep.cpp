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

#include "qss/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qss/qswitch.hpp"

namespace qss {
namespace {

double grid_value(double lo, double hi, int steps, int index) {
  return lo + (hi - lo) * index / (steps - 1);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Streams for the per-point RNG derivations. Distinct tags keep the Monte
// Carlo quadratures and the heralding experiment independent.
enum : std::uint64_t {
  kStreamPlusQuad = 0,
  kStreamMinusQuad = 1,
  kStreamCtQuad = 2,
  kStreamHerald = 3,
};

FidelitySweepPoint compute_point(const SweepConfig& config, int i, int j) {
  const double p = grid_value(config.p_min, config.p_max, config.p_steps, i);
  const double q = grid_value(config.q_min, config.q_max, config.q_steps, j);
  const FlipParams<double> params(p, q);
  const bool want_qs = config.mode != SweepMode::Classical;
  const bool want_ct = config.mode != SweepMode::Switch;

  FidelitySweepPoint row;
  row.p = p;
  row.q = q;
  row.herald_prob = p * q;
  if (want_qs) {
    const SwitchFidelity<double> f = f_qs_closed(params);
    row.f_qs = f.combined;
    row.f_minus = f.f_minus;
    row.f_plus = f.f_plus;
  }
  if (want_ct) {
    row.f_ct = f_ct_closed(params);
  }
  if (want_qs && want_ct) {
    row.ratio = gain_ratio(params);
  }

  if (config.quadrature) {
    auto per_point = [&](std::uint64_t stream) {
      QuadratureSpec spec = *config.quadrature;
      if (spec.mode == QuadratureSpec::Mode::MonteCarlo) {
        spec.seed = mix_seed(config.seed, i, j, stream);
      }
      return spec;
    };
    if (want_qs) {
      const SwitchDistribution<double> dist =
          distribute_qs(params, bell_phi_plus<double>());
      if (dist.plus.pair_state) {
        row.f_plus_num =
            avg_fidelity_numeric(*dist.plus.pair_state, per_point(kStreamPlusQuad));
      }
      if (dist.minus.pair_state) {
        row.f_minus_num = avg_fidelity_numeric(*dist.minus.pair_state,
                                               per_point(kStreamMinusQuad));
      }
    }
    if (want_ct) {
      row.f_ct_num = avg_fidelity_numeric(
          distribute_ct(params, bell_phi_plus<double>()), per_point(kStreamCtQuad));
    }
  }

  if (config.herald_trials > 0) {
    row.herald = run_herald_experiment(
        p, q, config.herald_trials, mix_seed(config.seed, i, j, kStreamHerald));
  }
  return row;
}

std::string csv_field(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

nlohmann::json json_field(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

std::string mode_name(SweepMode mode) {
  switch (mode) {
    case SweepMode::Switch:
      return "switch";
    case SweepMode::Classical:
      return "classical";
    default:
      return "both";
  }
}

std::string quadrature_name(const QuadratureSpec& spec) {
  if (spec.mode == QuadratureSpec::Mode::Deterministic) {
    return "det:" + std::to_string(spec.theta_nodes) + "x" +
           std::to_string(spec.phi_nodes);
  }
  return "mc:" + std::to_string(spec.samples);
}

}  // namespace

void validate(const SweepConfig& config) {
  if (config.p_steps < 2 || config.q_steps < 2) {
    throw ConfigError("sweep: step counts must be >= 2");
  }
  auto range_ok = [](double lo, double hi) {
    return lo >= 0.0 && hi <= 1.0 && lo < hi;
  };
  if (!range_ok(config.p_min, config.p_max) || !range_ok(config.q_min, config.q_max)) {
    throw ConfigError("sweep: ranges must be subintervals of [0, 1] with lower < upper");
  }
  if (config.workers < 1) throw ConfigError("sweep: workers must be >= 1");
  if (config.herald_trials < 0) throw ConfigError("sweep: herald trials must be >= 0");
  if (config.quadrature) {
    try {
      validate(*config.quadrature);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j,
                       std::uint64_t stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (i + 1));
  h = splitmix64(h ^ (j + 1));
  h = splitmix64(h ^ (stream + 1));
  return h;
}

HeraldExperimentRecord run_herald_experiment(double p, double q,
                                             std::int64_t trials,
                                             std::uint64_t seed) {
  if (trials < 1) throw ConfigError("herald experiment: trials must be >= 1");
  const FlipParams<double> params(p, q);
  const SwitchDistribution<double> dist =
      distribute_qs(params, bell_phi_plus<double>());
  const double minus_prob = std::clamp(dist.minus.probability, 0.0, 1.0);

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution draw(minus_prob);
  std::int64_t count = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    if (draw(rng)) ++count;
  }

  HeraldExperimentRecord record;
  record.p = p;
  record.q = q;
  record.trials = trials;
  record.minus_count = count;
  record.empirical_rate = static_cast<double>(count) / static_cast<double>(trials);
  record.expected_rate = p * q;
  return record;
}

std::vector<FidelitySweepPoint> run_sweep(const SweepConfig& config) {
  validate(config);
  const int total = config.p_steps * config.q_steps;
  std::vector<FidelitySweepPoint> rows(total);

  auto worker = [&](int offset, int stride) {
    for (int idx = offset; idx < total; idx += stride) {
      rows[idx] = compute_point(config, idx / config.q_steps, idx % config.q_steps);
    }
  };

  if (config.workers == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(config.workers);
    for (int w = 0; w < config.workers; ++w) {
      pool.emplace_back(worker, w, config.workers);
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void emit_csv(const std::vector<FidelitySweepPoint>& table,
              const SweepConfig& config, std::ostream& os) {
  os << "p,q,f_qs,f_plus,f_minus,f_ct,ratio,herald_prob";
  if (config.quadrature) os << ",f_plus_num,f_minus_num,f_ct_num";
  if (config.herald_trials > 0) os << ",herald_trials,herald_minus,herald_rate";
  os << "\n";
  for (const auto& row : table) {
    os << format_number(row.p) << ',' << format_number(row.q) << ','
       << csv_field(row.f_qs) << ',' << csv_field(row.f_plus) << ','
       << csv_field(row.f_minus) << ',' << csv_field(row.f_ct) << ','
       << csv_field(row.ratio) << ',' << format_number(row.herald_prob);
    if (config.quadrature) {
      os << ',' << csv_field(row.f_plus_num) << ',' << csv_field(row.f_minus_num)
         << ',' << csv_field(row.f_ct_num);
    }
    if (config.herald_trials > 0) {
      if (row.herald) {
        os << ',' << row.herald->trials << ',' << row.herald->minus_count << ','
           << format_number(row.herald->empirical_rate);
      } else {
        os << ",,,";
      }
    }
    os << "\n";
  }
}

void emit_json(const std::vector<FidelitySweepPoint>& table,
               const SweepConfig& config, std::ostream& os) {
  nlohmann::json meta{
      {"tool", kToolName},
      {"version", kToolVersion},
      {"p_steps", config.p_steps},
      {"q_steps", config.q_steps},
      {"p_min", config.p_min},
      {"p_max", config.p_max},
      {"q_min", config.q_min},
      {"q_max", config.q_max},
      {"mode", mode_name(config.mode)},
      {"seed", config.seed},
      {"herald_trials", config.herald_trials},
  };
  meta["quadrature"] =
      config.quadrature ? nlohmann::json(quadrature_name(*config.quadrature))
                        : nlohmann::json(nullptr);

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table) {
    nlohmann::json r{
        {"p", row.p},
        {"q", row.q},
        {"f_qs", json_field(row.f_qs)},
        {"f_plus", json_field(row.f_plus)},
        {"f_minus", json_field(row.f_minus)},
        {"f_ct", json_field(row.f_ct)},
        {"ratio", json_field(row.ratio)},
        {"herald_prob", row.herald_prob},
    };
    if (config.quadrature) {
      r["f_plus_num"] = json_field(row.f_plus_num);
      r["f_minus_num"] = json_field(row.f_minus_num);
      r["f_ct_num"] = json_field(row.f_ct_num);
    }
    if (config.herald_trials > 0 && row.herald) {
      r["herald_trials"] = row.herald->trials;
      r["herald_minus"] = row.herald->minus_count;
      r["herald_rate"] = row.herald->empirical_rate;
    }
    rows.push_back(std::move(r));
  }

  nlohmann::json doc{{"meta", std::move(meta)}, {"rows", std::move(rows)}};
  os << doc.dump(2) << "\n";
}

void emit(const std::vector<FidelitySweepPoint>& table, const SweepConfig& config) {
  std::ostringstream buffer;
  if (config.format == OutputFormat::Csv) {
    emit_csv(table, config, buffer);
  } else {
    emit_json(table, config, buffer);
  }

  if (config.output_path == "-") {
    std::cout << buffer.str();
    if (!std::cout) throw IoError("emit: failed to write to stdout");
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw IoError("emit: cannot open '" + config.output_path + "'");
  out << buffer.str();
  out.flush();
  if (!out) throw IoError("emit: failed writing '" + config.output_path + "'");
}

QuadratureSpec parse_quadrature(const std::string& text) {
  if (text.rfind("det:", 0) == 0) {
    const std::string rest = text.substr(4);
    const auto x = rest.find('x');
    if (x == std::string::npos) {
      throw ConfigError("quadrature: expected det:NxM");
    }
    try {
      const int tn = std::stoi(rest.substr(0, x));
      const int pn = std::stoi(rest.substr(x + 1));
      return QuadratureSpec::deterministic(tn, pn);
    } catch (const std::exception&) {
      throw ConfigError("quadrature: expected det:NxM with integer node counts");
    }
  }
  if (text.rfind("mc:", 0) == 0) {
    try {
      return QuadratureSpec::monte_carlo(std::stoll(text.substr(3)), 0);
    } catch (const std::exception&) {
      throw ConfigError("quadrature: expected mc:SAMPLES with an integer count");
    }
  }
  throw ConfigError("quadrature: expected det:NxM or mc:SAMPLES");
}

}  // namespace qss
