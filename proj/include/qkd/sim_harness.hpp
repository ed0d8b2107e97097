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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qkd/adversaries.hpp"
#include "qkd/channel.hpp"
#include "qkd/info_analysis.hpp"
#include "qkd/protocols.hpp"

namespace qkd {

// Attack strategy does not match the protocol being run.
class ConfigMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  Protocol protocol = Protocol::PP;
  AttackConfig attack;
  ChannelParams channel;
  std::uint64_t rounds = 1;
  // Probability that a two-way round is a control-mode round.
  double cm_probability = 0.25;
  std::uint64_t master_seed = 0;

  // Throws ConfigMismatch for an incompatible attack, std::invalid_argument
  // for anything else out of range.
  void validate() const;
};

// Integer tallies; merging is a plain sum so any partition of the rounds
// yields the same totals.
struct RoundCounters {
  std::uint64_t rounds = 0;
  std::uint64_t lost = 0;
  std::uint64_t dark_counts = 0;
  std::uint64_t intercepted = 0;
  std::uint64_t unsifted = 0;
  std::uint64_t key_bits = 0;
  std::uint64_t key_errors = 0;
  std::uint64_t eve_known = 0;
  std::uint64_t eve_wrong = 0;
  std::uint64_t cm_rounds = 0;
  std::uint64_t cm_errors = 0;
  std::uint64_t intercepted_cm = 0;
  std::uint64_t intercepted_cm_errors = 0;

  void add(const RoundRecord& rec);
  RoundCounters& operator+=(const RoundCounters& other);
  friend bool operator==(const RoundCounters&, const RoundCounters&) = default;
};

struct RunStats {
  Protocol protocol = Protocol::PP;
  RoundCounters counts;

  // Raw key length n: non-lost MM rounds (two-way) or sifted rounds (BB84).
  std::uint64_t n_raw = 0;
  // Key bits Eve does not hold correctly.
  std::uint64_t l_final = 0;
  double d_mm = 0.0;
  double d_cm = 0.0;
  double eve_known_fraction = 0.0;
  double yield = 0.0;
  // Absent when the run produced no key bits.
  std::optional<double> i_ab_emp;
  std::optional<double> i_ae_emp;

  double intercepted_cm_error_rate() const;

  static RunStats from_counts(Protocol protocol, const RoundCounters& counts);
  friend bool operator==(const RunStats&, const RunStats&) = default;
};

struct EmpiricalInformation {
  double i_ab;
  double i_ae;
};

// i_ab = 1 - h(d_mm). Two-way: i_ae = eve_known_fraction. BB84: i_ae =
// 1 - h(e) with e Eve's bit error rate against Alice on the sifted key, a
// missing guess counting as a coin flip. Throws std::domain_error when
// n_raw == 0.
EmpiricalInformation estimate_information(const RunStats& stats);

struct RunOptions {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  bool keep_records = false;
};

struct RunResult {
  RunStats stats;
  std::vector<RoundRecord> records;
};

// Runs round `index` of the experiment on its own derived stream.
RoundRecord simulate_round(const ExperimentConfig& config, std::uint64_t index);

RunResult run_experiment(const ExperimentConfig& config,
                         const RunOptions& options = {});

enum class SweepVariable { Disturbance, Presence };

struct SweepPoint {
  double x;
  InfoMetrics metrics;
  std::optional<RunStats> stats;
};

// Disturbance: analytic curves over D (BB84), or the flat two-way curves
// with i_ae fixed by base.attack.presence_q. Presence: one Monte Carlo run
// of `base` per q value.
std::vector<SweepPoint> sweep(SweepVariable variable, std::span<const double> grid,
                              const ExperimentConfig& base,
                              const RunOptions& options = {});

}  // namespace qkd
