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

#include "qkd/sim_harness.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace qkd {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0
                  : static_cast<double>(num) / static_cast<double>(den);
}

std::optional<Bit> message_bit(Mode mode, RandomStream& rng) {
  if (mode == Mode::CM) return std::nullopt;
  return rng.bit();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  if (!(cm_probability >= 0.0 && cm_probability <= 1.0)) {
    throw std::invalid_argument("cm_probability must lie in [0, 1]");
  }
  channel.validate();
  attack.validate();
  if (!compatible(attack.strategy, protocol)) {
    throw ConfigMismatch("attack '" + std::string(to_string(attack.strategy)) +
                         "' cannot run against protocol '" +
                         std::string(to_string(protocol)) + "'");
  }
}

void RoundCounters::add(const RoundRecord& rec) {
  ++rounds;
  if (rec.intercepted) ++intercepted;
  if (rec.lost) {
    ++lost;
    return;
  }
  if (rec.dark_count) ++dark_counts;

  if (rec.mode == Mode::CM) {
    ++cm_rounds;
    const bool error = rec.cm_error.value_or(false);
    if (error) ++cm_errors;
    if (rec.intercepted) {
      ++intercepted_cm;
      if (error) ++intercepted_cm_errors;
    }
    return;
  }
  if (rec.protocol == Protocol::BB84 && !rec.sifted) {
    ++unsifted;
    return;
  }
  ++key_bits;
  if (rec.bob_decoded_bit != rec.alice_bit) ++key_errors;
  if (rec.eve_decoded_bit) {
    if (*rec.eve_decoded_bit == rec.alice_bit) {
      ++eve_known;
    } else {
      ++eve_wrong;
    }
  }
}

RoundCounters& RoundCounters::operator+=(const RoundCounters& o) {
  rounds += o.rounds;
  lost += o.lost;
  dark_counts += o.dark_counts;
  intercepted += o.intercepted;
  unsifted += o.unsifted;
  key_bits += o.key_bits;
  key_errors += o.key_errors;
  eve_known += o.eve_known;
  eve_wrong += o.eve_wrong;
  cm_rounds += o.cm_rounds;
  cm_errors += o.cm_errors;
  intercepted_cm += o.intercepted_cm;
  intercepted_cm_errors += o.intercepted_cm_errors;
  return *this;
}

double RunStats::intercepted_cm_error_rate() const {
  return ratio(counts.intercepted_cm_errors, counts.intercepted_cm);
}

RunStats RunStats::from_counts(Protocol protocol, const RoundCounters& c) {
  RunStats s;
  s.protocol = protocol;
  s.counts = c;
  s.n_raw = c.key_bits;
  s.l_final = c.key_bits - c.eve_known;
  s.d_mm = ratio(c.key_errors, c.key_bits);
  s.d_cm = ratio(c.cm_errors, c.cm_rounds);
  s.eve_known_fraction = ratio(c.eve_known, c.key_bits);
  s.yield = ratio(c.rounds - c.lost, c.rounds);
  if (s.n_raw > 0) {
    const auto info = estimate_information(s);
    s.i_ab_emp = info.i_ab;
    s.i_ae_emp = info.i_ae;
  }
  return s;
}

EmpiricalInformation estimate_information(const RunStats& stats) {
  if (stats.n_raw == 0) {
    throw std::domain_error("estimate_information: run has no key bits");
  }
  const double i_ab = 1.0 - binary_entropy(stats.d_mm);
  if (stats.protocol != Protocol::BB84) {
    return {i_ab, stats.eve_known_fraction};
  }
  const auto& c = stats.counts;
  const double missing = static_cast<double>(c.key_bits - c.eve_known - c.eve_wrong);
  const double eve_error =
      (static_cast<double>(c.eve_wrong) + 0.5 * missing) /
      static_cast<double>(c.key_bits);
  return {i_ab, 1.0 - binary_entropy(eve_error)};
}

RoundRecord simulate_round(const ExperimentConfig& config,
                           std::uint64_t index) {
  RandomStream rng = RandomStream::for_round(config.master_seed, index);
  const bool present = presence_coin(config.attack, rng);

  switch (config.protocol) {
    case Protocol::BB84: {
      InterceptResend eve;
      return bb84_round(config.channel, present ? &eve : nullptr, rng);
    }
    case Protocol::PP: {
      const Mode mode = rng.bernoulli(config.cm_probability) ? Mode::CM : Mode::MM;
      const auto bit = message_bit(mode, rng);
      NguyenAttack eve;
      return pp_round(mode, bit, config.channel, present ? &eve : nullptr, rng);
    }
    case Protocol::LM05: {
      const Mode mode = rng.bernoulli(config.cm_probability) ? Mode::CM : Mode::MM;
      const auto bit = message_bit(mode, rng);
      LucamariniAttack eve;
      return lm05_round(mode, bit, config.channel, present ? &eve : nullptr,
                        rng);
    }
  }
  throw std::invalid_argument("unknown protocol");
}

RunResult run_experiment(const ExperimentConfig& config,
                         const RunOptions& options) {
  config.validate();

  const std::uint64_t n = config.rounds;
  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));

  RunResult result;
  if (options.keep_records) result.records.resize(n);

  std::vector<RoundCounters> partial(threads);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned worker) {
    const std::uint64_t begin = n * worker / threads;
    const std::uint64_t end = n * (worker + 1) / threads;
    try {
      for (std::uint64_t i = begin; i < end; ++i) {
        RoundRecord rec = simulate_round(config, i);
        partial[worker].add(rec);
        if (options.keep_records) result.records[i] = std::move(rec);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);

  RoundCounters total;
  for (const auto& p : partial) total += p;
  result.stats = RunStats::from_counts(config.protocol, total);
  return result;
}

std::vector<SweepPoint> sweep(SweepVariable variable,
                              std::span<const double> grid,
                              const ExperimentConfig& base,
                              const RunOptions& options) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  std::vector<SweepPoint> series;
  series.reserve(grid.size());

  for (double x : grid) {
    if (variable == SweepVariable::Disturbance) {
      if (base.protocol == Protocol::BB84) {
        series.push_back({x, bb84_metrics(x), std::nullopt});
        continue;
      }
      // x is a control-mode disturbance; message-mode metrics ignore it.
      if (!(x >= 0.0 && x <= 0.5)) {
        throw std::domain_error("disturbance outside [0, 0.5]");
      }
      series.push_back({x, two_way_metrics(base.attack.presence_q), std::nullopt});
      continue;
    }
    ExperimentConfig cfg = base;
    cfg.attack.presence_q = x;
    RunStats stats = run_experiment(cfg, options).stats;
    InfoMetrics m;
    m.D = stats.d_mm;
    m.i_ab = stats.i_ab_emp.value_or(0.0);
    m.i_ae = stats.i_ae_emp.value_or(0.0);
    m.r = secret_fraction(m.i_ab, m.i_ae);
    series.push_back({x, m, std::move(stats)});
  }
  return series;
}

}  // namespace qkd
