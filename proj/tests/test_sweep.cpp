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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qss/cli.hpp"
#include "qss/sweep.hpp"

namespace {

std::string emit_to_string(const std::vector<qss::FidelitySweepPoint>& table,
                           const qss::SweepConfig& config) {
  std::ostringstream os;
  if (config.format == qss::OutputFormat::Csv) {
    qss::emit_csv(table, config, os);
  } else {
    qss::emit_json(table, config, os);
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("qswitchsim");
  for (const auto& a : args) argv.push_back(a.c_str());
  return qss::cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("corner rows of the unit grid") {
  qss::SweepConfig config;
  config.p_steps = 2;
  config.q_steps = 2;
  const auto table = qss::run_sweep(config);
  REQUIRE(table.size() == 4);

  // Rows ordered by (p index, q index).
  CHECK(table[0].p == 0.0);
  CHECK(table[0].q == 0.0);
  CHECK(table[1].p == 0.0);
  CHECK(table[1].q == 1.0);
  CHECK(table[3].p == 1.0);
  CHECK(table[3].q == 1.0);

  CHECK(*table[0].f_qs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*table[0].f_ct == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*table[3].f_qs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*table[3].f_ct == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(!table[3].f_plus.has_value());
}

TEST_CASE("emitted rows satisfy the branch mixture identity") {
  qss::SweepConfig config;
  config.p_steps = 11;
  config.q_steps = 11;
  for (const auto& row : qss::run_sweep(config)) {
    REQUIRE(row.f_qs.has_value());
    CHECK(row.herald_prob == doctest::Approx(row.p * row.q).epsilon(1e-15));
    if (row.f_plus) {
      CHECK(std::abs(*row.f_qs - (row.herald_prob * *row.f_minus +
                                  (1 - row.herald_prob) * *row.f_plus)) < 1e-12);
    }
    CHECK(*row.f_qs >= 0.0);
    CHECK(*row.f_qs <= 1.0 + 1e-12);
    // Strict dominance away from the axes.
    if (row.p > 0.0 && row.q > 0.0) {
      CHECK(*row.f_qs > *row.f_ct);
    }
  }
}

TEST_CASE("worker count does not change the output bytes") {
  qss::SweepConfig config;
  config.p_steps = 6;
  config.q_steps = 5;
  config.quadrature = qss::QuadratureSpec::monte_carlo(1000, 0);
  config.herald_trials = 200;
  config.seed = 42;

  config.workers = 1;
  const std::string serial_csv = emit_to_string(qss::run_sweep(config), config);
  config.workers = 4;
  const std::string parallel_csv = emit_to_string(qss::run_sweep(config), config);
  CHECK(serial_csv == parallel_csv);

  config.format = qss::OutputFormat::Json;
  config.workers = 3;
  const std::string json_a = emit_to_string(qss::run_sweep(config), config);
  config.workers = 1;
  const std::string json_b = emit_to_string(qss::run_sweep(config), config);
  CHECK(json_a == json_b);
}

TEST_CASE("mode selects the emitted families") {
  qss::SweepConfig config;
  config.p_steps = 3;
  config.q_steps = 3;

  config.mode = qss::SweepMode::Classical;
  for (const auto& row : qss::run_sweep(config)) {
    CHECK(!row.f_qs.has_value());
    CHECK(!row.ratio.has_value());
    CHECK(row.f_ct.has_value());
  }

  config.mode = qss::SweepMode::Switch;
  for (const auto& row : qss::run_sweep(config)) {
    CHECK(row.f_qs.has_value());
    CHECK(!row.f_ct.has_value());
    CHECK(!row.ratio.has_value());
  }
}

TEST_CASE("herald experiments are reproducible and match the rate") {
  const auto none = qss::run_herald_experiment(0.0, 0.9, 5000, 7);
  CHECK(none.minus_count == 0);
  CHECK(none.expected_rate == 0.0);

  const auto even = qss::run_herald_experiment(0.5, 0.5, 100000, 7);
  CHECK(even.expected_rate == 0.25);
  CHECK(even.empirical_rate > 0.245);
  CHECK(even.empirical_rate < 0.255);

  const auto again = qss::run_herald_experiment(0.5, 0.5, 100000, 7);
  CHECK(again.minus_count == even.minus_count);

  CHECK_THROWS_AS(qss::run_herald_experiment(0.5, 0.5, 0, 7), qss::ConfigError);
}

TEST_CASE("per-point seeds are schedule independent and distinct") {
  CHECK(qss::mix_seed(1, 2, 3, 0) == qss::mix_seed(1, 2, 3, 0));
  CHECK(qss::mix_seed(1, 2, 3, 0) != qss::mix_seed(1, 2, 3, 1));
  CHECK(qss::mix_seed(1, 2, 3, 0) != qss::mix_seed(1, 3, 2, 0));
  CHECK(qss::mix_seed(2, 2, 3, 0) != qss::mix_seed(1, 2, 3, 0));
}

TEST_CASE("csv emission") {
  qss::SweepConfig config;
  const std::vector<qss::FidelitySweepPoint> empty;
  CHECK(emit_to_string(empty, config) ==
        "p,q,f_qs,f_plus,f_minus,f_ct,ratio,herald_prob\n");

  config.p_steps = 2;
  config.q_steps = 2;
  config.p_min = 0.5;
  config.p_max = 1.0;
  config.q_min = 0.5;
  config.q_max = 1.0;
  const auto table = qss::run_sweep(config);
  const std::string csv = emit_to_string(table, config);
  // 12 significant digits; the (0.5, 0.5) combined average prints exactly so.
  CHECK(csv.find("0.666666666667") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
  // Undefined plus-branch average at (1, 1) leaves an empty field.
  std::istringstream lines(csv);
  std::string line;
  std::string last;
  while (std::getline(lines, line)) last = line;
  CHECK(last.substr(0, 6) == "1,1,1,");
  CHECK(last.find("1,1,1,,1,") == 0);
}

TEST_CASE("json emission round-trips") {
  qss::SweepConfig config;
  config.p_steps = 2;
  config.q_steps = 2;
  config.format = qss::OutputFormat::Json;
  const auto table = qss::run_sweep(config);
  const std::string text = emit_to_string(table, config);
  const nlohmann::json doc = nlohmann::json::parse(text);

  CHECK(doc["meta"]["tool"] == qss::kToolName);
  CHECK(doc["meta"]["version"] == qss::kToolVersion);
  CHECK(doc["meta"]["quadrature"].is_null());
  REQUIRE(doc["rows"].size() == table.size());
  for (size_t idx = 0; idx < table.size(); ++idx) {
    const auto& row = doc["rows"][idx];
    CHECK(row["p"].get<double>() == table[idx].p);
    CHECK(row["q"].get<double>() == table[idx].q);
    CHECK(row["f_qs"].get<double>() == *table[idx].f_qs);
    if (table[idx].f_plus) {
      CHECK(row["f_plus"].get<double>() == *table[idx].f_plus);
    } else {
      CHECK(row["f_plus"].is_null());
    }
    CHECK(row["herald_prob"].get<double>() == table[idx].herald_prob);
  }
}

TEST_CASE("config validation") {
  qss::SweepConfig config;
  config.p_steps = 1;
  CHECK_THROWS_AS(qss::run_sweep(config), qss::ConfigError);
  config.p_steps = 5;
  config.q_min = 0.8;
  config.q_max = 0.2;
  CHECK_THROWS_AS(qss::run_sweep(config), qss::ConfigError);
  config.q_min = 0.0;
  config.q_max = 1.5;
  CHECK_THROWS_AS(qss::run_sweep(config), qss::ConfigError);
  config.q_max = 1.0;
  config.workers = 0;
  CHECK_THROWS_AS(qss::run_sweep(config), qss::ConfigError);
  config.workers = 1;
  config.quadrature = qss::QuadratureSpec::deterministic(2, 2);
  CHECK_THROWS_AS(qss::run_sweep(config), qss::ConfigError);
}

TEST_CASE("quadrature strings") {
  const auto det = qss::parse_quadrature("det:32x16");
  CHECK(det.mode == qss::QuadratureSpec::Mode::Deterministic);
  CHECK(det.theta_nodes == 32);
  CHECK(det.phi_nodes == 16);

  const auto mc = qss::parse_quadrature("mc:50000");
  CHECK(mc.mode == qss::QuadratureSpec::Mode::MonteCarlo);
  CHECK(mc.samples == 50000);

  CHECK_THROWS_AS(qss::parse_quadrature("det:64"), qss::ConfigError);
  CHECK_THROWS_AS(qss::parse_quadrature("fancy"), qss::ConfigError);
  CHECK_THROWS_AS(qss::parse_quadrature("mc:lots"), qss::ConfigError);
}

TEST_CASE("cli exit codes and output files") {
  const auto out_csv = temp_file("qss_cli_test.csv");
  std::filesystem::remove(out_csv);
  CHECK(run_cli({"--p-steps", "3", "--q-steps", "3", "--output",
                 out_csv.string()}) == 0);
  const std::string body = read_file(out_csv);
  CHECK(body.rfind("p,q,", 0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 10);

  // Unknown flags and invalid configurations are exit code 1.
  CHECK(run_cli({"--bogus"}) == 1);
  CHECK(run_cli({"--p-steps", "1"}) == 1);
  CHECK(run_cli({"--mode", "quantum"}) == 1);
  CHECK(run_cli({"--quadrature", "nope"}) == 1);

  // Unwritable destinations are exit code 2.
  CHECK(run_cli({"--p-steps", "3", "--q-steps", "3", "--output",
                 "/nonexistent-dir/out.csv"}) == 2);

  std::filesystem::remove(out_csv);
}

TEST_CASE("cli runs reproduce bytes across worker counts") {
  const auto out_a = temp_file("qss_cli_workers1.json");
  const auto out_b = temp_file("qss_cli_workers4.json");
  const std::vector<std::string> base{
      "--p-steps", "4",        "--q-steps",      "4",   "--seed", "9",
      "--format",  "json",     "--quadrature",   "mc:2000",
      "--herald-trials", "100"};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--workers", "1", "--output", out_a.string()});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--workers", "4", "--output", out_b.string()});
  REQUIRE(run_cli(args_a) == 0);
  REQUIRE(run_cli(args_b) == 0);
  CHECK(read_file(out_a) == read_file(out_b));
  std::filesystem::remove(out_a);
  std::filesystem::remove(out_b);
}

TEST_CASE("cli reads config files and flags override them") {
  const auto conf = temp_file("qss_cli_config.ini");
  const auto out = temp_file("qss_cli_config_out.csv");
  {
    std::ofstream f(conf);
    f << "p-steps=3\n"
      << "q-steps=4\n"
      << "format=csv\n";
  }
  REQUIRE(run_cli({"--config", conf.string(), "--output", out.string()}) == 0);
  std::string body = read_file(out);
  CHECK(std::count(body.begin(), body.end(), '\n') == 13);  // header + 3*4

  // A flag beats the file: 2 p-steps instead of 3.
  REQUIRE(run_cli({"--config", conf.string(), "--p-steps", "2", "--output",
                   out.string()}) == 0);
  body = read_file(out);
  CHECK(std::count(body.begin(), body.end(), '\n') == 9);  // header + 2*4

  std::filesystem::remove(conf);
  std::filesystem::remove(out);
}

}  // TEST_SUITE
