#include "latsurg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "latsurg/circuits.hpp"
#include "latsurg/errors.hpp"
#include "latsurg/layout_io.hpp"
#include "latsurg/pdag.hpp"
#include "latsurg/transpiler.hpp"

namespace latsurg {

SchedulerKind parse_scheduler_kind(const std::string& name) {
  if (name == "loose") return SchedulerKind::loose;
  if (name == "spc") return SchedulerKind::spc;
  throw ConfigError("unknown scheduler '" + name + "' (expected loose or spc)");
}

std::string scheduler_kind_name(SchedulerKind kind) { return kind == SchedulerKind::loose ? "loose" : "spc"; }

CompileResult compile_program(const PbcProgram& transpiled, const Board& board, const CompileOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  CompileResult r;
  r.transpiled = transpiled;
  r.board = board;
  const PDag dag(transpiled);
  r.mapping = make_map(opt.mapping, dag, board);
  r.program = apply_y_mode(transpiled, y_access(board, r.mapping), opt.y_mode);
  const ScheduleOptions so{opt.policy, opt.seed};
  r.schedule = opt.scheduler == SchedulerKind::loose ? loose_schedule(r.program, board, r.mapping, so)
                                                     : spc_schedule(r.program, board, r.mapping, so);
  r.validation = validate_schedule(r.schedule, board, r.program);
  r.metrics = compute_metrics(r.schedule);
  r.ler = estimate_ler(r.schedule, opt.calib);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CompileResult compile_circuit(const GateCircuit& circuit, const Board& board, const CompileOptions& options) {
  return compile_program(transpile(circuit), board, options);
}

PbcProgram load_program(const std::string& input, const std::string& format) {
  if (input.rfind("bench:", 0) == 0) return transpile(benchmark_circuit(input.substr(6)));
  const std::string text = read_file(input);
  std::string fmt = format;
  if (fmt == "auto") {
    const auto dot = input.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : input.substr(dot + 1);
    if (ext == "qasm") fmt = "qasm";
    else if (ext == "pbc") fmt = "pbc";
    else fmt = text.find("OPENQASM") != std::string::npos ? "qasm" : "pbc";
  }
  if (fmt == "qasm") return transpile(parse_qasm(text));
  if (fmt == "pbc") return parse_pbc(text);
  throw ConfigError("unknown input format '" + format + "' (expected auto, qasm or pbc)");
}

Board resolve_layout(const RunConfig& config, std::size_t n) {
  const std::string& l = config.layout;
  if (l == "auto") {
    if (config.rows > 0 && config.cols > 0) return design_layout(n, config.rows, config.cols, config.score).board;
    return design_layout_auto(n, config.score).board;
  }
  std::string style = l;
  if (l.rfind("builtin:", 0) == 0) style = l.substr(8);
  if (style == "compact" || style == "standard" || style == "sparse") return builtin_layout(parse_layout_style(style), n);
  return parse_layout(read_file(l));
}

CalibrationTable resolve_calibration(const RunConfig& config) {
  if (!config.calibration_path.empty()) return load_calibration(config.calibration_path);
  if (const char* env = std::getenv("LATSURG_CALIBRATION"); env && *env) return load_calibration(env);
  return default_calibration(config.distance);
}

CompileResult run_compile(const RunConfig& config) {
  const PbcProgram program = load_program(config.input, config.input_format);
  const Board board = resolve_layout(config, program.num_qubits());
  CompileOptions opt = config.options;
  opt.calib = resolve_calibration(config);
  CompileResult r = compile_program(program, board, opt);
  if (!r.validation) throw ValidationError("schedule failed validation: " + r.validation.message);
  if (!config.schedule_out.empty()) write_file(config.schedule_out, schedule_to_json(r.schedule).dump(2) + "\n");
  if (!config.metrics_out.empty())
    write_file(config.metrics_out, compile_metrics_json(r, &config).dump(2) + "\n");
  return r;
}

nlohmann::ordered_json compile_metrics_json(const CompileResult& r, const RunConfig* config) {
  nlohmann::ordered_json j;
  if (config) {
    j["input"] = config->input;
    j["layout"] = config->layout;
    j["mapping"] = mapping_kind_name(config->options.mapping);
    j["scheduler"] = scheduler_kind_name(config->options.scheduler);
    j["y_synthesis"] = y_mode_name(config->options.y_mode);
    j["correction_policy"] = correction_policy_name(config->options.policy);
    j["seed"] = config->options.seed;
  }
  j["clocks"] = r.metrics.clocks;
  j["tiles"] = r.board.tile_count();
  j["operators"] = r.schedule.program.size();
  j["measurements"] = r.metrics.measurements;
  j["rotations"] = r.metrics.rotations;
  j["moves"] = r.metrics.moves;
  j["corrections"] = r.metrics.corrections;
  j["mean_bus"] = r.metrics.mean_bus;
  j["max_bus"] = r.metrics.max_bus;
  j["p_total"] = r.ler.p_total;
  j["breakdown"] = {{"ppm", r.ler.sum_ppm}, {"pr", r.ler.sum_pr}, {"idle", r.ler.sum_idle}};
  j["resources"] = {{"tiles", r.ler.resources.tiles},
                    {"data_qubits", r.ler.resources.data_qubits},
                    {"measure_qubits", r.ler.resources.measure_qubits},
                    {"clocks", r.ler.resources.clocks},
                    {"cycles", r.ler.resources.cycles}};
  j["valid"] = r.validation.ok;
  return j;
}

std::vector<CompareRow> run_compare(const std::vector<std::pair<std::string, RunConfig>>& configs) {
  std::vector<CompareRow> rows;
  for (const auto& [name, cfg] : configs) {
    CompareRow row;
    row.name = name;
    try {
      const CompileResult r = run_compile(cfg);
      row.ok = true;
      row.clocks = r.metrics.clocks;
      row.tiles = r.board.tile_count();
      row.p_total = r.ler.p_total;
    } catch (const Error& e) {
      row.error = e.stage() + ": " + e.what();
    }
    rows.push_back(std::move(row));
  }
  double max_p = 0.0;
  int max_c = 0;
  for (const auto& r : rows)
    if (r.ok) {
      max_p = std::max(max_p, r.p_total);
      max_c = std::max(max_c, r.clocks);
    }
  for (auto& r : rows) {
    if (!r.ok) continue;
    r.relative_ler = max_p > 0 ? r.p_total / max_p : 1.0;
    r.relative_clocks = max_c > 0 ? static_cast<double>(r.clocks) / max_c : 1.0;
  }
  return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out.precision(10);
  out << "name,ok,clocks,tiles,p_total,relative_ler,relative_clocks,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << r.name << ',' << (r.ok ? 1 : 0) << ',' << r.clocks << ',' << r.tiles << ',' << r.p_total << ','
        << r.relative_ler << ',' << r.relative_clocks << ',' << err << '\n';
  }
  return out.str();
}

SqueezeResult squeeze_layout(const PbcProgram& transpiled, const Board& reference, const ScoreParams& params,
                             const CompileOptions& options, double max_fraction, double clock_slack) {
  SqueezeResult out;
  const CompileResult ref = compile_program(transpiled, reference, options);
  out.reference_tiles = reference.tile_count();
  out.reference_clocks = ref.metrics.clocks;
  const int n = static_cast<int>(transpiled.num_qubits());
  const int limit = static_cast<int>(std::floor(max_fraction * out.reference_tiles + 1e-9));
  std::vector<std::pair<int, int>> dims;
  for (int r = 2; r <= limit; ++r)
    for (int c = 2; r * c <= limit; ++c)
      if (r * c >= n + 2 && std::max(r, c) <= 3 * std::min(r, c)) dims.emplace_back(r, c);
  std::sort(dims.begin(), dims.end(), [](auto a, auto b) {
    const int ta = a.first * a.second, tb = b.first * b.second;
    if (ta != tb) return ta > tb;
    const int sa = std::abs(a.first - a.second), sb = std::abs(b.first - b.second);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  const double allowed = (1.0 + clock_slack) * out.reference_clocks;
  for (auto [r, c] : dims) {
    out.tried.emplace_back(r, c);
    LayoutResult lay;
    try {
      lay = design_layout(transpiled.num_qubits(), r, c, params);
    } catch (const InfeasibleBoardError&) {
      continue;
    }
    CompileResult res;
    try {
      res = compile_program(transpiled, lay.board, options);
    } catch (const DeadlockError&) {
      continue;
    }
    if (!res.validation) continue;
    if (res.metrics.clocks <= allowed + 1e-9) {
      out.found = true;
      out.layout = std::move(lay);
      out.compiled = std::move(res);
      return out;
    }
  }
  return out;
}

}  // namespace latsurg
