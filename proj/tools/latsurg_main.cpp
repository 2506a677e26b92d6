// latsurg command-line driver.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "latsurg/board.hpp"
#include "latsurg/circuit.hpp"
#include "latsurg/circuits.hpp"
#include "latsurg/errors.hpp"
#include "latsurg/layout_io.hpp"
#include "latsurg/layout_search.hpp"
#include "latsurg/ler.hpp"
#include "latsurg/oracle.hpp"
#include "latsurg/pdag.hpp"
#include "latsurg/pipeline.hpp"
#include "latsurg/schedule.hpp"
#include "latsurg/svg.hpp"
#include "latsurg/transpiler.hpp"

namespace ls = latsurg;

namespace {

struct CompileArgs {
  std::string circuit;
  std::string format = "auto";
  std::string layout = "builtin:compact";
  std::string board;
  double alpha_e = ls::ScoreParams{}.alpha_e;
  std::string mapping = "ea";
  std::string scheduler = "loose";
  std::string y_synthesis = "bipartite";
  std::string correction = "always";
  std::uint64_t seed = 0;
  std::string calib;
  int distance = 9;
  std::string out;
  std::string metrics;
};

// "WxH" -> rows = H, cols = W.
std::pair<int, int> parse_board_dims(const std::string& s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) throw ls::ConfigError("board size must be WxH, got '" + s + "'");
  try {
    const int w = std::stoi(s.substr(0, x));
    const int h = std::stoi(s.substr(x + 1));
    if (w <= 0 || h <= 0) throw ls::ConfigError("board dimensions must be positive, got '" + s + "'");
    return {h, w};
  } catch (const std::logic_error&) {
    throw ls::ConfigError("board size must be WxH, got '" + s + "'");
  }
}

void add_compile_options(CLI::App* app, CompileArgs& a) {
  app->add_option("--circuit", a.circuit, "Input circuit: .qasm, .pbc, or bench:<name>")->required();
  app->add_option("--format", a.format, "Input format")->check(CLI::IsMember({"auto", "qasm", "pbc"}));
  app->add_option("--layout", a.layout, "builtin:{compact,standard,sparse}, a layout file, or auto");
  app->add_option("--board", a.board, "Board size WxH for --layout auto");
  app->add_option("--alpha-e", a.alpha_e, "Density factor for --layout auto");
  app->add_option("--mapping", a.mapping, "Qubit mapping")->check(CLI::IsMember({"ea", "greedy", "identity"}));
  app->add_option("--scheduler", a.scheduler, "Scheduler")->check(CLI::IsMember({"loose", "spc"}));
  app->add_option("--y-synthesis", a.y_synthesis, "Y-synthesis mode")->check(CLI::IsMember({"bipartite", "naive", "off"}));
  app->add_option("--correction-policy,--correction", a.correction, "Correction scheduling policy")
      ->check(CLI::IsMember({"always", "never", "seeded-random"}));
  app->add_option("--seed", a.seed, "Seed for the seeded-random correction policy");
  app->add_option("--calib", a.calib, "Calibration JSON (default: $LATSURG_CALIBRATION, then the model default)");
  app->add_option("--distance", a.distance, "Code distance for the default calibration");
}

ls::RunConfig to_config(const CompileArgs& a) {
  ls::RunConfig c;
  c.input = a.circuit;
  c.input_format = a.format;
  c.layout = a.layout;
  if (!a.board.empty()) std::tie(c.rows, c.cols) = parse_board_dims(a.board);
  c.score.alpha_e = a.alpha_e;
  c.options.mapping = ls::parse_mapping_kind(a.mapping);
  c.options.scheduler = ls::parse_scheduler_kind(a.scheduler);
  c.options.y_mode = ls::parse_y_mode(a.y_synthesis);
  c.options.policy = ls::parse_correction_policy(a.correction);
  c.options.seed = a.seed;
  c.calibration_path = a.calib;
  c.distance = a.distance;
  c.schedule_out = a.out;
  c.metrics_out = a.metrics;
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else ls::write_file(path, text);
}

void warn_score(const ls::ScoreParams& p) {
  if (auto w = ls::check_score_params(p)) std::cerr << "warning: " << *w << "\n";
}

ls::GateCircuit load_circuit(const std::string& input, const std::string& format) {
  if (input.rfind("bench:", 0) == 0) return ls::benchmark_circuit(input.substr(6));
  const std::string text = ls::read_file(input);
  const bool qasm_ext = input.size() > 5 && input.substr(input.size() - 5) == ".qasm";
  const bool qasm = format == "qasm" || (format == "auto" && (qasm_ext || text.find("OPENQASM") != std::string::npos));
  if (!qasm) throw ls::ConfigError("verify needs a gate circuit (qasm or bench:<name>) as input");
  return ls::parse_qasm(text);
}

int cmd_transpile(const std::string& circuit, const std::string& format, const std::string& out,
                  const std::string& dot) {
  const ls::PbcProgram p = ls::load_program(circuit, format);
  emit(out, ls::write_pbc(p));
  if (!dot.empty()) emit(dot, ls::PDag(p).to_dot());
  return 0;
}

int cmd_layout(std::size_t qubits, const std::string& board, double alpha_e, const std::string& out,
               const std::string& svg) {
  ls::ScoreParams params;
  params.alpha_e = alpha_e;
  warn_score(params);
  ls::LayoutResult r;
  if (board.empty()) {
    r = ls::design_layout_auto(qubits, params);
  } else {
    const auto [rows, cols] = parse_board_dims(board);
    r = ls::design_layout(qubits, rows, cols, params);
  }
  nlohmann::ordered_json j = ls::layout_to_json(r.board);
  j["alpha_e"] = params.alpha_e;
  j["score"] = ls::score_board(r.board, params);
  j["trace"] = ls::layout_trace_to_json(r.trace);
  emit(out, j.dump(2) + "\n");
  if (!svg.empty()) ls::write_file(svg, ls::board_svg(r.board));
  return 0;
}

int cmd_compile(const CompileArgs& a, const std::string& svg) {
  const ls::RunConfig cfg = to_config(a);
  warn_score(cfg.score);
  const ls::CompileResult r = ls::run_compile(cfg);
  if (cfg.metrics_out.empty()) std::cout << ls::compile_metrics_json(r, &cfg).dump(2) << "\n";
  if (!svg.empty()) ls::write_file(svg, ls::board_svg(r.board));
  return 0;
}

int cmd_estimate(const std::string& schedule_path, const std::string& calib, int distance, const std::string& out,
                 const std::string& csv) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ls::read_file(schedule_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ls::ParseError("schedule", std::string("invalid JSON: ") + e.what());
  }
  const ls::Schedule s = ls::schedule_from_json(j);
  ls::RunConfig cfg;
  cfg.calibration_path = calib;
  cfg.distance = distance;
  const ls::CalibrationTable table = ls::resolve_calibration(cfg);
  ls::PbcProgram source(s.program.num_qubits());
  for (std::size_t i = 0; i < s.program.size(); ++i)
    if (!s.is_correction[i]) source.push_back(s.program[i]);
  const ls::ValidationReport v = ls::validate_schedule(s, s.initial, source);
  if (!v) throw ls::ValidationError("schedule failed validation: " + v.message);
  const ls::LerReport rep = ls::estimate_ler(s, table);
  nlohmann::ordered_json report = ls::ler_report_to_json(rep);
  report["calibration"] = ls::calibration_to_json(table);
  emit(out, report.dump(2) + "\n");
  if (!csv.empty()) {
    std::ostringstream o;
    o.precision(10);
    o << "t,p_ppm,p_pr,p_idle,p_layer\n";
    for (std::size_t t = 0; t < rep.p_layer.size(); ++t)
      o << t << ',' << rep.p_ppm[t] << ',' << rep.p_pr[t] << ',' << rep.p_idle[t] << ',' << rep.p_layer[t] << '\n';
    ls::write_file(csv, o.str());
  }
  return 0;
}

struct CompareArgs {
  std::vector<std::string> circuits;
  std::vector<std::string> layouts{"builtin:compact"};
  std::vector<std::string> schedulers{"loose", "spc"};
  std::vector<double> alphas;
  std::string board;
  std::string y_synthesis = "bipartite";
  std::string correction = "always";
  std::uint64_t seed = 0;
  std::string calib;
  int distance = 9;
  std::string out;
  std::string svg_dir;
};

std::string format_alpha(double a) {
  std::ostringstream o;
  o << a;
  return o.str();
}

int cmd_compare(CompareArgs a) {
  if (a.circuits.empty())
    for (const auto& n : ls::benchmark_suite()) a.circuits.push_back("bench:" + n);
  if (a.alphas.empty()) a.alphas.push_back(ls::ScoreParams{}.alpha_e);
  std::ostringstream csv;
  csv.precision(10);
  csv << "circuit,config,ok,clocks,tiles,p_total,relative_ler,relative_clocks,error\n";
  bool all_ok = true;
  for (const auto& circuit : a.circuits) {
    std::vector<std::pair<std::string, ls::RunConfig>> configs;
    for (const auto& layout : a.layouts)
      for (const auto& sched : a.schedulers)
        for (double alpha : a.alphas) {
          CompileArgs c;
          c.circuit = circuit;
          c.layout = layout;
          c.board = a.board;
          c.alpha_e = alpha;
          c.scheduler = sched;
          c.y_synthesis = a.y_synthesis;
          c.correction = a.correction;
          c.seed = a.seed;
          c.calib = a.calib;
          c.distance = a.distance;
          std::string name = layout + "/" + sched;
          if (a.alphas.size() > 1) name += "/alpha=" + format_alpha(alpha);
          configs.emplace_back(name, to_config(c));
        }
    const auto rows = ls::run_compare(configs);
    std::vector<std::pair<std::string, double>> bars;
    for (const auto& r : rows) {
      all_ok = all_ok && r.ok;
      std::string err = r.error;
      std::replace(err.begin(), err.end(), ',', ';');
      csv << circuit << ',' << r.name << ',' << (r.ok ? 1 : 0) << ',' << r.clocks << ',' << r.tiles << ','
          << r.p_total << ',' << r.relative_ler << ',' << r.relative_clocks << ',' << err << '\n';
      if (r.ok) bars.emplace_back(r.name, r.relative_ler);
    }
    if (!a.svg_dir.empty()) {
      std::filesystem::create_directories(a.svg_dir);
      std::string stem = circuit.rfind("bench:", 0) == 0 ? circuit.substr(6)
                                                         : std::filesystem::path(circuit).stem().string();
      ls::write_file((std::filesystem::path(a.svg_dir) / (stem + "_relative_ler.svg")).string(),
                     ls::bar_chart_svg(stem + ": relative LER", bars));
    }
  }
  emit(a.out, csv.str());
  return all_ok ? 0 : 1;
}

int cmd_verify(const CompileArgs& a, double tol) {
  const ls::GateCircuit circuit = ls::with_default_measurements(load_circuit(a.circuit, a.format));
  if (circuit.num_qubits() > ls::kOracleMaxQubits)
    throw ls::SizeError("circuit has " + std::to_string(circuit.num_qubits()) + " qubits; the oracle handles at most " +
                        std::to_string(ls::kOracleMaxQubits));
  ls::RunConfig cfg = to_config(a);
  const ls::PbcProgram transpiled = ls::transpile(circuit);
  const ls::Board board = ls::resolve_layout(cfg, transpiled.num_qubits());
  ls::CompileOptions opt = cfg.options;
  opt.calib = ls::resolve_calibration(cfg);
  const ls::CompileResult r = ls::compile_program(transpiled, board, opt);
  const double dist = ls::distribution_distance(ls::outcome_distribution(circuit), ls::outcome_distribution(r.program));
  const bool semantics = dist <= tol;
  std::cout << "schedule: " << (r.validation ? "valid" : "INVALID " + r.validation.message) << "\n";
  std::cout << "clocks: " << r.metrics.clocks << "\n";
  std::cout << "outcome distance: " << dist << (semantics ? " (ok)" : " (MISMATCH)") << "\n";
  return r.validation && semantics ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latsurg: Clifford+T to lattice-surgery compiler"};
  app.require_subcommand(1);

  std::string t_circuit, t_format = "auto", t_out, t_dot;
  auto* transpile = app.add_subcommand("transpile", "Lower a Clifford+T circuit to PBC text");
  transpile->add_option("--circuit", t_circuit, "Input circuit: .qasm, .pbc, or bench:<name>")->required();
  transpile->add_option("--format", t_format, "Input format")->check(CLI::IsMember({"auto", "qasm", "pbc"}));
  transpile->add_option("--out", t_out, "Output PBC file (default stdout)");
  transpile->add_option("--dot", t_dot, "Write the dependency DAG in DOT format");

  std::size_t l_qubits = 0;
  std::string l_board, l_out, l_svg;
  double l_alpha = ls::ScoreParams{}.alpha_e;
  auto* layout = app.add_subcommand("layout", "Design a data layout");
  layout->add_option("--qubits", l_qubits, "Number of logical qubits")->required();
  layout->add_option("--board", l_board, "Board size WxH (default: smallest feasible square)");
  layout->add_option("--alpha-e", l_alpha, "Density factor");
  layout->add_option("--out", l_out, "Output layout JSON (default stdout)");
  layout->add_option("--svg", l_svg, "Write an SVG rendering of the board");

  CompileArgs c_args;
  std::string c_svg;
  auto* compile = app.add_subcommand("compile", "Compile a circuit to a lattice-surgery schedule");
  add_compile_options(compile, c_args);
  compile->add_option("--out", c_args.out, "Output schedule JSON");
  compile->add_option("--metrics", c_args.metrics, "Output metrics JSON (default stdout)");
  compile->add_option("--svg", c_svg, "Write an SVG rendering of the board");

  std::string e_schedule, e_calib, e_out, e_csv;
  int e_distance = 9;
  auto* estimate = app.add_subcommand("estimate", "Estimate the logical error rate of a schedule");
  estimate->add_option("--schedule", e_schedule, "Schedule JSON")->required();
  estimate->add_option("--calib", e_calib, "Calibration JSON");
  estimate->add_option("--distance", e_distance, "Code distance for the default calibration");
  estimate->add_option("--out", e_out, "Output report JSON (default stdout)");
  estimate->add_option("--csv", e_csv, "Write per-clock error probabilities as CSV");

  CompareArgs k_args;
  auto* compare = app.add_subcommand("compare", "Compare configurations with relative LER and clocks");
  compare->add_option("--circuit", k_args.circuits, "Circuits (repeatable; default: the benchmark suite)");
  compare->add_option("--layout", k_args.layouts, "Layouts (repeatable)");
  compare->add_option("--scheduler", k_args.schedulers, "Schedulers (repeatable)")
      ->check(CLI::IsMember({"loose", "spc"}));
  compare->add_option("--alpha-e", k_args.alphas, "Density factors for designed layouts (repeatable)");
  compare->add_option("--board", k_args.board, "Board size WxH for designed layouts");
  compare->add_option("--y-synthesis", k_args.y_synthesis, "Y-synthesis mode")
      ->check(CLI::IsMember({"bipartite", "naive", "off"}));
  compare->add_option("--correction-policy,--correction", k_args.correction, "Correction scheduling policy")
      ->check(CLI::IsMember({"always", "never", "seeded-random"}));
  compare->add_option("--seed", k_args.seed, "Seed");
  compare->add_option("--calib", k_args.calib, "Calibration JSON");
  compare->add_option("--distance", k_args.distance, "Code distance for the default calibration");
  compare->add_option("--out", k_args.out, "Output CSV (default stdout)");
  compare->add_option("--svg-dir", k_args.svg_dir, "Directory for SVG bar charts");

  CompileArgs v_args;
  double v_tol = 1e-9;
  auto* verify = app.add_subcommand("verify", "Cross-check a small compile against the dense oracle");
  add_compile_options(verify, v_args);
  verify->add_option("--tol", v_tol, "Outcome-distribution tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*transpile) return cmd_transpile(t_circuit, t_format, t_out, t_dot);
    if (*layout) return cmd_layout(l_qubits, l_board, l_alpha, l_out, l_svg);
    if (*compile) return cmd_compile(c_args, c_svg);
    if (*estimate) return cmd_estimate(e_schedule, e_calib, e_distance, e_out, e_csv);
    if (*compare) return cmd_compare(k_args);
    if (*verify) return cmd_verify(v_args, v_tol);
  } catch (const ls::Error& e) {
    std::cerr << e.stage() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
