/*
 * Copyright 2026 The qgpr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "qgpr/cli.hpp"

using qgpr::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = std::string(QGPR_DATA_DIR) + "/m4_n2.csv";

}  // namespace

TEST_CASE("compare reports the absolute errors") {
  const Run r = cli({"compare", "--data", kData, "--sigma2", "0.1", "--mode", "exact"});
  REQUIRE(r.code == qgpr::kExitOk);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j.contains("abs_error_mean"));
  CHECK(j.at("abs_error_mean").get<double>() <= 1e-7);
  CHECK(j.at("config").at("eigenvalue_mode") == "exact");
  CHECK(!j.contains("timings"));
  const Run t = cli({"compare", "--data", kData, "--timings"});
  CHECK(nlohmann::ordered_json::parse(t.out).contains("timings"));
}

TEST_CASE("kernel-check reports the maximal entry deviation") {
  const Run r = cli({"kernel-check", "--data", kData, "--delta", "1e-6"});
  REQUIRE(r.code == qgpr::kExitOk);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j.at("max_entry_deviation").get<double>() <= 1e-4);
  CHECK(j.at("max_entry_deviation").get<double>() <= j.at("entry_error_bound").get<double>());
}

TEST_CASE("quantum runs with shots are reproducible") {
  const std::vector<std::string> args = {"quantum", "--data", kData, "--shots", "100000", "--seed", "7"};
  const Run a = cli(args), b = cli(args);
  REQUIRE(a.code == qgpr::kExitOk);
  CHECK(a.out == b.out);
  const auto j = nlohmann::ordered_json::parse(a.out);
  CHECK(j.at("interference").at("mean").at("shots") == 100000);
  CHECK(j.at("config").at("shots") == 100000);
}

TEST_CASE("classical, spectrum and qpe subcommands") {
  const Run c = cli({"classical", "--data", kData});
  CHECK(c.code == 0);
  CHECK(nlohmann::ordered_json::parse(c.out).contains("variance"));
  const Run s = cli({"spectrum", "--data", kData, "--qpe-bits", "6"});
  CHECK(s.code == 0);
  const auto js = nlohmann::ordered_json::parse(s.out);
  CHECK(js.at("eigenvalues").size() == 4);
  CHECK(js.at("lcu").at("circulant") == false);
  const Run q = cli({"quantum", "--data", kData, "--mode", "qpe", "--qpe-bits", "6", "--kernel", "coherent"});
  CHECK(q.code == 0);
  CHECK(nlohmann::ordered_json::parse(q.out).contains("evolution_time"));
  const Run j = cli({"compare", "--data", std::string(QGPR_DATA_DIR) + "/m4_n2.json", "--c", "0.05"});
  CHECK(j.code == 0);
  CHECK(nlohmann::ordered_json::parse(j.out).at("config").at("rotation_constant") == 0.05);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(cli({}).code == qgpr::kExitUsage);
  CHECK(cli({"compare"}).code == qgpr::kExitUsage);
  CHECK(cli({"compare", "--data", kData, "--mode", "sideways"}).code == qgpr::kExitUsage);
  CHECK(cli({"compare", "--data", kData, "--shots", "many"}).code == qgpr::kExitUsage);
  CHECK(cli({"compare", "--data", kData, "--c", "-1"}).code == qgpr::kExitUsage);
  CHECK(cli({"compare", "--data", kData, "--qpe-bits", "40"}).code == qgpr::kExitUsage);
  CHECK(cli({"frobnicate"}).code == qgpr::kExitUsage);
  CHECK(cli({"--help"}).code == qgpr::kExitOk);
}

TEST_CASE("stage failures produce structured errors with code 3") {
  const Run missing = cli({"compare", "--data", "/nonexistent.csv"});
  CHECK(missing.code == qgpr::kExitStage);
  const auto j = nlohmann::ordered_json::parse(missing.out);
  CHECK(j.at("error").at("stage") == "data");
  const Run qpe = cli({"compare", "--data", kData, "--mode", "qpe", "--sigma2", "0"});
  CHECK(qpe.code == qgpr::kExitStage);
  CHECK(nlohmann::ordered_json::parse(qpe.out).at("error").at("stage") == "inversion");
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "qgpr_cli_out.json";
  std::filesystem::remove(path);
  const Run r = cli({"compare", "--data", kData, "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(nlohmann::ordered_json::parse(ss.str()).contains("quantum_mean"));
  std::filesystem::remove(path);
}
