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

#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

namespace qkd::cli {

using nlohmann::ordered_json;

namespace {

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string bit_cell(const std::optional<Bit>& b) {
  return b ? std::to_string(static_cast<int>(*b)) : "";
}

std::string sent_state_cell(const SentState& s) {
  if (const auto* e = std::get_if<Eigenstate>(&s)) {
    return std::string(to_string(e->basis)) + std::to_string(static_cast<int>(e->value));
  }
  return std::string(to_string(std::get<BellState>(s)));
}

void emit(const std::string& content, const std::string& path,
          std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

std::string csv_preamble(std::string_view command, const ordered_json& config) {
  std::ostringstream os;
  os << "# qkdsim " << command << " schema=" << kCsvSchema << '\n';
  os << "# version=" << kVersion << '\n';
  os << "# config=" << config.dump() << '\n';
  return os.str();
}

// ---------------------------------------------------------------- analyze

struct AnalyzeFlags {
  std::string protocol = "bb84";
  std::string d_grid = "0:0.5:0.01";
  double q = 1.0;
  std::string format = "csv";
  std::string output;
};

std::string analyze(const AnalyzeFlags& f) {
  ExperimentConfig base;
  base.protocol = parse_protocol(f.protocol);
  if (!(f.q >= 0.0 && f.q <= 1.0)) throw UsageError("--q must lie in [0, 1]");
  base.attack.presence_q = f.q;
  const std::vector<double> grid = parse_grid(f.d_grid);
  const auto series = sweep(SweepVariable::Disturbance, grid, base);

  ordered_json config;
  config["command"] = "analyze";
  config["protocol"] = f.protocol;
  config["d_grid"] = f.d_grid;
  if (base.protocol != Protocol::BB84) config["q"] = f.q;

  if (f.format == "json") {
    ordered_json doc;
    doc["version"] = kVersion;
    doc["config"] = config;
    ordered_json rows = ordered_json::array();
    for (const auto& p : series) {
      rows.push_back({{"D", p.x},
                      {"i_ab", p.metrics.i_ab},
                      {"i_ae", p.metrics.i_ae},
                      {"r", p.metrics.r}});
    }
    doc["series"] = std::move(rows);
    return doc.dump(2) + "\n";
  }

  std::ostringstream os;
  os << csv_preamble("analyze", config);
  os << "D,i_ab,i_ae,r\n";
  for (const auto& p : series) {
    os << format_number(p.x) << ',' << format_number(p.metrics.i_ab) << ','
       << format_number(p.metrics.i_ae) << ',' << format_number(p.metrics.r)
       << '\n';
  }
  return os.str();
}

// --------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string protocol;
  std::string attack = "none";
  double q = 1.0;
  std::uint64_t rounds = 100000;
  std::uint64_t seed = 0;
  double p_segment = 1.0;
  double dark_count = 0.0;
  double cm_prob = 0.25;
  unsigned threads = 0;
  std::string format = "json";
  std::string output;
  std::string records;
};

std::string records_csv(const ExperimentConfig& config,
                        const std::vector<RoundRecord>& records) {
  std::ostringstream os;
  os << csv_preamble("records", config_to_json(config));
  os << "round,protocol,mode,alice_bit,sent_state,measurement_basis,"
        "bob_decoded_bit,eve_decoded_bit,intercepted,lost,dark_count,"
        "alice_cm_outcome,bob_cm_outcome,cm_error,sifted\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RoundRecord& r = records[i];
    os << i << ',' << to_string(r.protocol) << ',' << to_string(r.mode) << ','
       << bit_cell(r.alice_bit) << ',' << sent_state_cell(r.bob_sent_state)
       << ','
       << (r.measurement_basis ? std::string(to_string(*r.measurement_basis))
                               : std::string())
       << ',' << bit_cell(r.bob_decoded_bit) << ','
       << bit_cell(r.eve_decoded_bit) << ',' << int(r.intercepted) << ','
       << int(r.lost) << ',' << int(r.dark_count) << ','
       << bit_cell(r.alice_cm_outcome) << ',' << bit_cell(r.bob_cm_outcome)
       << ',' << (r.cm_error ? std::to_string(int(*r.cm_error)) : "") << ','
       << int(r.sifted) << '\n';
  }
  return os.str();
}

std::string simulate(const SimulateFlags& f) {
  ExperimentConfig config;
  config.protocol = parse_protocol(f.protocol);
  config.attack.strategy = parse_strategy(f.attack);
  config.attack.presence_q = f.q;
  config.rounds = f.rounds;
  config.master_seed = f.seed;
  config.channel.p_segment = f.p_segment;
  config.channel.dark_count_prob = f.dark_count;
  config.cm_probability = f.cm_prob;
  config.validate();

  RunOptions options;
  options.threads = f.threads;
  options.keep_records = !f.records.empty();
  const RunResult result = run_experiment(config, options);
  if (options.keep_records) {
    emit(records_csv(config, result.records), f.records, std::cerr);
  }

  if (f.format == "json") return simulate_document(config, result.stats).dump(2) + "\n";

  const ordered_json stats = stats_to_json(result.stats);
  std::ostringstream os;
  os << csv_preamble("simulate", config_to_json(config));
  os << "metric,value\n";
  for (const auto& [key, value] : stats.items()) {
    if (value.is_object()) {
      for (const auto& [sub, v] : value.items()) {
        os << key << '.' << sub << ',' << v.dump() << '\n';
      }
      continue;
    }
    os << key << ',' << (value.is_null() ? std::string() : value.dump()) << '\n';
  }
  return os.str();
}

// ------------------------------------------------------------------ table

struct TableFlags {
  double p_segment = 0.9;
  std::string d_grid = "0:1:0.1";
  std::string format = "csv";
  std::string output;
};

struct TableRow {
  std::string property;
  std::optional<double> x;
  std::array<ordered_json, 3> cells;  // bb84, pp, lm05
};

std::vector<TableRow> table_rows(const TableFlags& f) {
  ChannelParams channel;
  channel.p_segment = f.p_segment;
  channel.validate();
  const std::vector<double> grid = parse_grid(f.d_grid);
  for (double x : grid) {
    if (x < 0.0 || x > 1.0) throw UsageError("table grid values must lie in [0, 1]");
  }

  std::vector<TableRow> rows;
  auto prose = [&](std::string name, std::string a, std::string b, std::string c) {
    rows.push_back({std::move(name), std::nullopt, {a, b, c}});
  };
  prose("type", "probabilistic", "deterministic", "deterministic");
  prose("modes", "MM", "MM+CM", "MM+CM");
  prose("security", "QBER of MM", "QBER of CM", "QBER of CM");
  prose("secure", "for QBER < 11%", "no/unknown", "no/unknown");
  prose("disturbance", "0<=D<=0.5 in MM", "D=0 in MM; 0<=D<=0.5 in CM",
        "D=0 in MM; 0<=D<=0.5 in CM");
  rows.push_back({"critical_disturbance",
                  std::nullopt,
                  {critical_disturbance(), "indeterminable", "indeterminable"}});
  prose("mutual_information", "I_AB=1-h(D); I_AE=h(D)", "I_AB=1; 0<=I_AE<=1",
        "I_AB=1; 0<=I_AE<=1");
  prose("photon_distance", "L", "4L", "2L");
  rows.push_back({"transmittance_power", std::nullopt, {1, 4, 2}});
  rows.push_back({"transmittance",
                  f.p_segment,
                  {end_to_end_transmittance(Protocol::BB84, channel),
                   end_to_end_transmittance(Protocol::PP, channel),
                   end_to_end_transmittance(Protocol::LM05, channel)}});

  // x is D for BB84 (blank above 0.5) and the presence fraction q for the
  // two-way columns.
  for (double x : grid) {
    const InfoMetrics tw = two_way_metrics(x);
    std::optional<InfoMetrics> bb;
    if (x <= 0.5) bb = bb84_metrics(x);
    auto bb_cell = [&](double InfoMetrics::*field) {
      return bb ? ordered_json((*bb).*field) : ordered_json(nullptr);
    };
    rows.push_back({"i_ab", x, {bb_cell(&InfoMetrics::i_ab), tw.i_ab, tw.i_ab}});
    rows.push_back({"i_ae", x, {bb_cell(&InfoMetrics::i_ae), tw.i_ae, tw.i_ae}});
    rows.push_back({"r", x, {bb_cell(&InfoMetrics::r), tw.r, tw.r}});
  }
  return rows;
}

std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  return format_number(v.get<double>());
}

std::string table(const TableFlags& f) {
  const auto rows = table_rows(f);
  ordered_json config;
  config["command"] = "table";
  config["p_segment"] = f.p_segment;
  config["d_grid"] = f.d_grid;

  if (f.format == "json") {
    ordered_json doc;
    doc["version"] = kVersion;
    doc["config"] = config;
    doc["columns"] = {"bb84", "pp", "lm05"};
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
      out.push_back({{"property", r.property},
                     {"x", optional_number(r.x)},
                     {"bb84", r.cells[0]},
                     {"pp", r.cells[1]},
                     {"lm05", r.cells[2]}});
    }
    doc["rows"] = std::move(out);
    return doc.dump(2) + "\n";
  }

  std::ostringstream os;
  os << csv_preamble("table", config);
  os << "# x is D for bb84 and the presence fraction q for pp/lm05\n";
  os << "property,x,bb84,pp,lm05\n";
  for (const auto& r : rows) {
    os << r.property << ',' << (r.x ? format_number(*r.x) : "") << ','
       << csv_cell(r.cells[0]) << ',' << csv_cell(r.cells[1]) << ','
       << csv_cell(r.cells[2]) << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_grid(std::string_view spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos
                          ? std::string_view::npos
                          : spec.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw UsageError("grid must be START:END:STEP, got '" + std::string(spec) + "'");
  }
  auto number = [&](std::string_view s) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (str.empty() || used != str.size() || !std::isfinite(v)) {
      throw UsageError("bad number '" + str + "' in grid");
    }
    return v;
  };
  const double start = number(spec.substr(0, first));
  const double end = number(spec.substr(first + 1, second - first - 1));
  const double step = number(spec.substr(second + 1));
  if (step <= 0.0) throw UsageError("grid step must be positive");
  if (end < start) throw UsageError("grid is empty (END < START)");
  const auto count =
      static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = start + static_cast<double>(i) * step;
  }
  return grid;
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["protocol"] = to_string(c.protocol);
  j["attack"] = {{"strategy", to_string(c.attack.strategy)},
                 {"presence_q", c.attack.presence_q}};
  j["channel"] = {{"p_segment", c.channel.p_segment},
                  {"dark_count_prob", c.channel.dark_count_prob},
                  {"detector_efficiency", c.channel.detector_efficiency}};
  j["rounds"] = c.rounds;
  j["cm_probability"] = c.cm_probability;
  j["master_seed"] = c.master_seed;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.protocol = parse_protocol(j.at("protocol").get<std::string>());
  c.attack.strategy = parse_strategy(j.at("attack").at("strategy").get<std::string>());
  c.attack.presence_q = j.at("attack").at("presence_q").get<double>();
  c.channel.p_segment = j.at("channel").at("p_segment").get<double>();
  c.channel.dark_count_prob = j.at("channel").at("dark_count_prob").get<double>();
  c.channel.detector_efficiency =
      j.at("channel").at("detector_efficiency").get<double>();
  c.rounds = j.at("rounds").get<std::uint64_t>();
  c.cm_probability = j.at("cm_probability").get<double>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  return c;
}

ordered_json stats_to_json(const RunStats& s) {
  const RoundCounters& c = s.counts;
  ordered_json j;
  j["protocol"] = to_string(s.protocol);
  j["n_raw"] = s.n_raw;
  j["l_final"] = s.l_final;
  j["d_mm"] = s.d_mm;
  j["d_cm"] = s.d_cm;
  j["eve_known_fraction"] = s.eve_known_fraction;
  j["yield"] = s.yield;
  j["i_ab_emp"] = optional_number(s.i_ab_emp);
  j["i_ae_emp"] = optional_number(s.i_ae_emp);
  j["intercepted_cm_error_rate"] = s.intercepted_cm_error_rate();
  j["counts"] = {{"rounds", c.rounds},
                 {"lost", c.lost},
                 {"dark_counts", c.dark_counts},
                 {"intercepted", c.intercepted},
                 {"unsifted", c.unsifted},
                 {"key_bits", c.key_bits},
                 {"key_errors", c.key_errors},
                 {"eve_known", c.eve_known},
                 {"eve_wrong", c.eve_wrong},
                 {"cm_rounds", c.cm_rounds},
                 {"cm_errors", c.cm_errors},
                 {"intercepted_cm", c.intercepted_cm},
                 {"intercepted_cm_errors", c.intercepted_cm_errors}};
  return j;
}

ordered_json simulate_document(const ExperimentConfig& config,
                               const RunStats& stats) {
  ordered_json doc;
  doc["version"] = kVersion;
  doc["config"] = config_to_json(config);
  doc["stats"] = stats_to_json(stats);
  return doc;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Two-way QKD protocol and eavesdropping simulator", "qkdsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  const auto protocols = CLI::IsMember({"bb84", "pp", "lm05"});
  const auto attacks = CLI::IsMember({"none", "intercept-resend", "nguyen", "lucamarini"});

  AnalyzeFlags af;
  auto* analyze_cmd = app.add_subcommand("analyze", "Closed-form mutual information curves");
  analyze_cmd->add_option("--protocol", af.protocol)->check(protocols);
  analyze_cmd->add_option("--d-grid", af.d_grid, "START:END:STEP");
  analyze_cmd->add_option("--q", af.q, "Eve presence fraction (two-way curves)");
  analyze_cmd->add_option("--format", af.format)->check(CLI::IsMember({"csv", "json"}));
  analyze_cmd->add_option("--output", af.output);

  SimulateFlags sf;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo protocol run");
  simulate_cmd->add_option("--protocol", sf.protocol)->required()->check(protocols);
  simulate_cmd->add_option("--attack", sf.attack)->check(attacks);
  simulate_cmd->add_option("--q", sf.q)->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--rounds", sf.rounds)->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sf.seed);
  simulate_cmd->add_option("--p-segment", sf.p_segment)->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--dark-count", sf.dark_count)->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--cm-prob", sf.cm_prob)->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--threads", sf.threads, "0 = all hardware threads");
  simulate_cmd->add_option("--format", sf.format)->check(CLI::IsMember({"csv", "json"}));
  simulate_cmd->add_option("--output", sf.output);
  simulate_cmd->add_option("--records", sf.records, "Per-round CSV log path");

  TableFlags tf;
  auto* table_cmd = app.add_subcommand("table", "Protocol comparison table");
  table_cmd->add_option("--p-segment", tf.p_segment)->check(CLI::Range(0.0, 1.0));
  table_cmd->add_option("--d-grid", tf.d_grid, "START:END:STEP in [0, 1]");
  table_cmd->add_option("--format", tf.format)->check(CLI::IsMember({"csv", "json"}));
  table_cmd->add_option("--output", tf.output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*analyze_cmd) emit(analyze(af), af.output, out);
    if (*simulate_cmd) emit(simulate(sf), sf.output, out);
    if (*table_cmd) emit(table(tf), tf.output, out);
  } catch (const ConfigMismatch& e) {
    err << "qkdsim: " << e.what() << '\n';
    return kConfigMismatch;
  } catch (const IoError& e) {
    err << "qkdsim: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "qkdsim: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "qkdsim: " << e.what() << '\n';
    return kUsageError;
  }
  return kOk;
}

}  // namespace qkd::cli
