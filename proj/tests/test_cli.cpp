// Copyright 2026 The qkdsim Authors
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

#include "qkd/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace qkd;
using nlohmann::json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  return lines;
}

std::vector<std::vector<std::string>> data_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  bool header_seen = false;
  for (const auto& line : lines_of(csv)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(ParseGrid, CountsAndEndpoints) {
  const auto g = cli::parse_grid("0:0.5:0.01");
  ASSERT_EQ(g.size(), 51u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 0.5, 1e-12);
  EXPECT_EQ(cli::parse_grid("0.2:0.2:0.1").size(), 1u);
  for (int steps = 1; steps <= 200; ++steps) {
    char step[32];
    std::snprintf(step, sizeof step, "%.17g", 1.0 / steps);
    EXPECT_EQ(cli::parse_grid(std::string("0:1:") + step).size(),
              static_cast<std::size_t>(steps + 1))
        << step;
  }
}

TEST(ParseGrid, Rejects) {
  for (const char* bad : {"", "0:1", "a:1:0.1", "0:1:0", "0:1:-0.1", "1:0:0.1",
                          "0:1:0.1x"}) {
    EXPECT_THROW(cli::parse_grid(bad), cli::UsageError) << bad;
  }
}

TEST(Analyze, Bb84CurveCrossesNearCriticalDisturbance) {
  const auto r = invoke({"analyze", "--protocol", "bb84", "--d-grid", "0:0.5:0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines_of(r.out)[0], "# qkdsim analyze schema=v1");
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 51u);
  int crossing = -1;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double now = std::stod(rows[i][1]) - std::stod(rows[i][2]);
    const double next = std::stod(rows[i + 1][1]) - std::stod(rows[i + 1][2]);
    if (now >= 0 && next < 0) crossing = static_cast<int>(i);
  }
  ASSERT_GE(crossing, 0);
  EXPECT_NEAR(std::stod(rows[crossing][0]), 0.11, 1e-12);
}

TEST(Analyze, TwoWayInformationIsFlat) {
  for (const char* proto : {"pp", "lm05"}) {
    const auto r = invoke({"analyze", "--protocol", proto});
    ASSERT_EQ(r.code, 0);
    for (const auto& row : data_rows(r.out)) EXPECT_EQ(row[1], "1");
  }
}

TEST(Analyze, JsonSeries) {
  const auto r = invoke({"analyze", "--d-grid", "0:0.5:0.25", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc.at("version"), std::string(cli::kVersion));
  ASSERT_EQ(doc.at("series").size(), 3u);
  EXPECT_EQ(doc["series"][0]["r"].get<double>(), 1.0);
}

TEST(Analyze, UsageErrors) {
  EXPECT_EQ(invoke({"analyze", "--d-grid", "0.5:0:0.1"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"analyze", "--d-grid", ""}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"analyze", "--protocol", "e91"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"analyze", "--d-grid", "0:0.9:0.1"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({}).code, cli::kUsageError);
}

TEST(Simulate, LucamariniTransparency) {
  const auto r = invoke({"simulate", "--protocol", "lm05", "--attack", "lucamarini",
                         "--q", "1", "--rounds", "100000", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["stats"]["d_mm"].get<double>(), 0.0);
  EXPECT_EQ(doc["stats"]["eve_known_fraction"].get<double>(), 1.0);
  EXPECT_EQ(doc["config"]["master_seed"].get<std::uint64_t>(), 42u);
}

TEST(Simulate, AbsentNguyenEqualsNoAttack) {
  const auto a = invoke({"simulate", "--protocol", "pp", "--attack", "nguyen", "--q", "0",
                         "--rounds", "20000"});
  const auto b = invoke({"simulate", "--protocol", "pp", "--attack", "none", "--rounds",
                         "20000"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(json::parse(a.out)["stats"], json::parse(b.out)["stats"]);
}

TEST(Simulate, ByteIdenticalAcrossRunsAndThreads) {
  const std::vector<std::string> base = {"simulate", "--protocol", "bb84", "--attack",
                                         "intercept-resend", "--q", "0.5", "--rounds",
                                         "30000", "--p-segment", "0.9", "--seed", "7"};
  auto with_threads = [&](const char* n) {
    auto args = base;
    args.insert(args.end(), {"--threads", n});
    return invoke(args).out;
  };
  const std::string first = with_threads("1");
  EXPECT_EQ(first, with_threads("1"));
  EXPECT_EQ(first, with_threads("3"));
  EXPECT_EQ(first, with_threads("8"));
}

TEST(Simulate, EmbeddedConfigReproducesStats) {
  const auto r = invoke({"simulate", "--protocol", "lm05", "--attack", "lucamarini",
                         "--q", "0.3", "--rounds", "20000", "--seed", "123",
                         "--p-segment", "0.95", "--cm-prob", "0.4"});
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  const ExperimentConfig cfg = cli::config_from_json(doc["config"]);
  const RunStats again = run_experiment(cfg).stats;
  EXPECT_EQ(cli::simulate_document(cfg, again).dump(2) + "\n", r.out);
}

TEST(Simulate, CsvOutputCarriesConfig) {
  const auto r = invoke({"simulate", "--protocol", "pp", "--rounds", "1000", "--format",
                         "csv"});
  ASSERT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_GE(lines.size(), 4u);
  ASSERT_EQ(lines[2].rfind("# config=", 0), 0u);
  const ExperimentConfig cfg = cli::config_from_json(json::parse(lines[2].substr(9)));
  EXPECT_EQ(cfg.rounds, 1000u);
  EXPECT_EQ(lines[3], "metric,value");
}

TEST(Simulate, ErrorCodes) {
  EXPECT_EQ(invoke({"simulate", "--protocol", "lm05", "--attack", "nguyen"}).code,
            cli::kConfigMismatch);
  EXPECT_EQ(invoke({"simulate", "--protocol", "pp", "--q", "2"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"simulate", "--attack", "none"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"simulate", "--protocol", "pp", "--rounds", "10", "--output",
                    "/nonexistent-dir/out.json"})
                .code,
            cli::kIoError);
}

TEST(Simulate, WritesOutputAndRecordFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "qkdsim_cli_test";
  std::filesystem::create_directories(dir);
  const auto out = dir / "stats.json";
  const auto recs = dir / "records.csv";
  const auto r = invoke({"simulate", "--protocol", "pp", "--attack", "nguyen", "--q",
                         "1", "--rounds", "200", "--output", out.string(), "--records",
                         recs.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(read_file(out))["stats"]["d_mm"].get<double>(), 0.0);
  const auto rows = data_rows(read_file(recs));
  ASSERT_EQ(rows.size(), 200u);
  for (const auto& row : rows) {
    EXPECT_EQ(row[8], "1");                       // intercepted
    if (row[2] == "MM") EXPECT_EQ(row[3], row[7]);  // Eve holds Alice's bit
  }
  std::filesystem::remove_all(dir);
}

TEST(Table, MachineCheckableRows) {
  const auto r = invoke({"table", "--p-segment", "0.9"});
  ASSERT_EQ(r.code, 0) << r.err;
  bool saw_transmittance = false, saw_critical = false, saw_mi = false;
  for (const auto& row : data_rows(r.out)) {
    if (row[0] == "transmittance") {
      saw_transmittance = true;
      EXPECT_DOUBLE_EQ(std::stod(row[2]), 0.9);
      EXPECT_DOUBLE_EQ(std::stod(row[3]), 0.6561);
      EXPECT_DOUBLE_EQ(std::stod(row[4]), 0.81);
    }
    if (row[0] == "critical_disturbance") {
      saw_critical = true;
      EXPECT_NEAR(std::stod(row[2]), 0.11, 0.0005);
      EXPECT_EQ(row[3], "indeterminable");
      EXPECT_EQ(row[4], "indeterminable");
    }
    if ((row[0] == "i_ab" || row[0] == "i_ae") && row[1] == "1") {
      saw_mi = true;
      EXPECT_EQ(row[2], "");  // D = 1 is outside BB84's domain
      EXPECT_EQ(row[3], "1");
      EXPECT_EQ(row[4], "1");
    }
  }
  EXPECT_TRUE(saw_transmittance && saw_critical && saw_mi);
}

TEST(Table, JsonShape) {
  const auto r = invoke({"table", "--format", "json", "--d-grid", "0:1:0.5"});
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["columns"], json({"bb84", "pp", "lm05"}));
  EXPECT_EQ(doc["config"]["p_segment"].get<double>(), 0.9);
  bool found = false;
  for (const auto& row : doc["rows"]) {
    if (row["property"] == "r" && row["x"] == 1.0) {
      found = true;
      EXPECT_TRUE(row["bb84"].is_null());
      EXPECT_EQ(row["pp"].get<double>(), 0.0);
    }
  }
  EXPECT_TRUE(found);
}
