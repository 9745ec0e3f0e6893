// Copyright 2026 The pulsegraph Authors
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


#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pulsegraph/ad9910.hpp"
#include "pulsegraph/bench.hpp"
#include "pulsegraph/dds_sim.hpp"
#include "pulsegraph/evaluate.hpp"
#include "pulsegraph/rfsoc.hpp"
#include "pulsegraph/serialize.hpp"
#include "pulsegraph/transform.hpp"

namespace pulsegraph::cli {

namespace {

// I/O and usage problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

struct TranspileArgs {
  std::string target;
  std::string input;
  std::string schedule;
  std::string channel_map;
  std::string bind;
  int channel_index = 0;
  std::string output;
};

std::string transpile(const TranspileArgs& a) {
  std::string sched_path = a.schedule;
  std::string input_text;
  if (sched_path.empty()) {
    if (a.input.empty()) throw UsageError("--input or --schedule is required");
    input_text = read_file(a.input);
    if (is_schedule_document(input_text)) sched_path = a.input;
  }
  std::optional<Bindings> bindings;
  if (!a.bind.empty()) bindings = parse_bindings(read_file(a.bind));

  if (!sched_path.empty()) {
    Schedule s = parse_schedule(read_file(sched_path));
    if (bindings) bind_parameters(s, *bindings);
    if (a.target == "ad9910") {
      return emit_ad9910_program(transpile_schedule_ad9910(s));
    }
    ChannelMap map;
    if (!a.channel_map.empty()) {
      map = parse_channel_map(read_file(a.channel_map));
    } else {
      for (std::size_t i = 0; i < s.channels().size(); ++i) {
        map[s.channels()[i]] = static_cast<int>(i);
      }
    }
    return emit_rfsoc_program(transpile_schedule_rfsoc(s, map));
  }

  Graph g;
  NodeId root = parse_graph(g, input_text);
  if (bindings) substitute(g, root, *bindings);
  if (a.target == "ad9910") return emit_ad9910(transpile_ad9910(g, root));
  return emit_pulse_record(
      to_pulse_record(transpile_rfsoc_channel(g, root), a.channel_index));
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"pulsegraph: pulse graph transpiler and DDS simulator"};
  app.require_subcommand(1);

  TranspileArgs tr;
  auto* transpile_cmd = app.add_subcommand("transpile", "Lower a graph or schedule to device records");
  transpile_cmd->add_option("--target", tr.target)->required()->check(CLI::IsMember({"ad9910", "rfsoc"}));
  transpile_cmd->add_option("--input", tr.input, "GraphDocument or ScheduleDocument");
  transpile_cmd->add_option("--schedule", tr.schedule, "ScheduleDocument");
  transpile_cmd->add_option("--channel-map", tr.channel_map, "JSON object name -> index");
  transpile_cmd->add_option("--bind", tr.bind, "JSON object name -> value");
  transpile_cmd->add_option("--channel-index", tr.channel_index, "RFSoC channel for a single graph");
  transpile_cmd->add_option("--output", tr.output);

  double rate = 0.0;
  std::string sample_input, sample_bind, sample_output;
  auto* sample_cmd = app.add_subcommand("sample", "Sample a graph to CSV");
  sample_cmd->add_option("--rate", rate, "Hz")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--input", sample_input)->required();
  sample_cmd->add_option("--bind", sample_bind);
  sample_cmd->add_option("--output", sample_output);

  std::string sim_target, sim_input, sim_channel, sim_output;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate device records to CSV");
  simulate_cmd->add_option("--target", sim_target)->required()->check(CLI::IsMember({"ad9910", "rfsoc"}));
  simulate_cmd->add_option("--input", sim_input)->required();
  simulate_cmd->add_option("--channel", sim_channel, "channel to pick from a program");
  simulate_cmd->add_option("--output", sim_output);

  std::string bench_name, bench_ir = "graph", bench_output;
  bench::SbcOptions sbc;
  bench::VqaOptions vqa;
  int trials = 10;
  auto* bench_cmd = app.add_subcommand("bench", "Run the SBC or VQA benchmark");
  bench_cmd->add_option("benchmark", bench_name)->required()->check(CLI::IsMember({"sbc", "vqa"}));
  bench_cmd->add_option("--ir", bench_ir)->check(CLI::IsMember({"graph", "direct"}));
  bench_cmd->add_option("--depth", vqa.depth)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", sbc.reps)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--warmup", vqa.warmup)->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--seed", vqa.seed);
  bench_cmd->add_option("--output", bench_output);

  std::string validate_input;
  auto* validate_cmd = app.add_subcommand("validate", "Check a graph or schedule document");
  validate_cmd->add_option("--input", validate_input)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*transpile_cmd) {
      write_output(tr.output, transpile(tr), out);
    } else if (*sample_cmd) {
      Graph g;
      NodeId root = parse_graph(g, read_file(sample_input));
      if (!sample_bind.empty()) {
        substitute(g, root, parse_bindings(read_file(sample_bind)));
      }
      write_output(sample_output, to_csv(sample(g, root, rate)), out);
    } else if (*simulate_cmd) {
      const std::string text = read_file(sim_input);
      SampledWaveform w;
      if (sim_target == "ad9910") {
        w = simulate_ad9910(parse_ad9910(text));
      } else {
        w = simulate_rfsoc_channel(parse_pulse_records(text, sim_channel));
      }
      write_output(sim_output, to_csv(w), out);
    } else if (*bench_cmd) {
      const bench::Ir ir = *bench::ir_from_name(bench_ir);
      bench::BenchResult result;
      if (bench_name == "sbc") {
        sbc.trials = trials;
        sbc.warmup = vqa.warmup;
        result = bench::run_sbc(ir, sbc);
      } else {
        vqa.trials = trials;
        result = bench::run_vqa(ir, vqa);
      }
      write_output(bench_output, bench::to_json(result), out);
    } else if (*validate_cmd) {
      const std::string text = read_file(validate_input);
      if (is_schedule_document(text)) {
        Schedule s = parse_schedule(text);
        out << "ok: schedule with " << s.channels().size() << " channel(s), "
            << s.parameter_count() << " parameter(s)\n";
      } else {
        Graph g;
        NodeId root = parse_graph(g, text);
        out << "ok: " << kind_name(g.kind(root)) << " graph with "
            << post_order(g, root).size() << " node(s)\n";
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError || e.code() == ErrorCode::UnknownKind
               ? 2
               : 1;
  }
  return 0;
}

}  // namespace pulsegraph::cli
