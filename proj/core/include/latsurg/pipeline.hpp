#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latsurg/board.hpp"
#include "latsurg/circuit.hpp"
#include "latsurg/layout_search.hpp"
#include "latsurg/ler.hpp"
#include "latsurg/mapping.hpp"
#include "latsurg/schedule.hpp"
#include "latsurg/scheduler.hpp"
#include "latsurg/ysynth.hpp"

namespace latsurg {

enum class SchedulerKind { loose, spc };
SchedulerKind parse_scheduler_kind(const std::string& name);
std::string scheduler_kind_name(SchedulerKind kind);

struct CompileOptions {
  MappingKind mapping = MappingKind::edge_aware;
  SchedulerKind scheduler = SchedulerKind::loose;
  YMode y_mode = YMode::bipartite;
  CorrectionPolicy policy = CorrectionPolicy::always;
  std::uint64_t seed = 0;
  CalibrationTable calib = default_calibration();
};

struct CompileResult {
  PbcProgram transpiled;
  PbcProgram program;  // after Y synthesis; what the scheduler ran
  Board board;
  QubitMap mapping;
  Schedule schedule;
  ScheduleMetrics metrics;
  LerReport ler;
  ValidationReport validation;
  double seconds = 0.0;
};

// map -> Y synthesis against the mapping's Y access -> schedule -> validate
// -> estimate.
CompileResult compile_program(const PbcProgram& transpiled, const Board& board, const CompileOptions& options = {});
CompileResult compile_circuit(const GateCircuit& circuit, const Board& board, const CompileOptions& options = {});

struct RunConfig {
  std::string input;                  // file path or bench:<name>
  std::string input_format = "auto";  // auto, qasm, pbc
  // builtin:<style>, a layout file, or "auto" (designed; rows/cols 0 = square
  // auto size).
  std::string layout = "builtin:compact";
  int rows = 0;
  int cols = 0;
  ScoreParams score;
  CompileOptions options;
  std::string calibration_path;
  int distance = 9;
  std::string schedule_out;
  std::string metrics_out;
};

// Input program (transpiled if the source is a gate circuit).
PbcProgram load_program(const std::string& input, const std::string& format = "auto");
Board resolve_layout(const RunConfig& config, std::size_t num_qubits);
// Calibration from the config path, else LATSURG_CALIBRATION, else the model
// default at the configured distance.
CalibrationTable resolve_calibration(const RunConfig& config);

CompileResult run_compile(const RunConfig& config);

nlohmann::ordered_json compile_metrics_json(const CompileResult& result, const RunConfig* config = nullptr);

struct CompareRow {
  std::string name;
  bool ok = false;
  std::string error;
  int clocks = 0;
  int tiles = 0;
  double p_total = 0.0;
  double relative_ler = 0.0;  // p_total / max p_total over successful rows
  double relative_clocks = 0.0;
};

// Failed runs are reported in their row; the others still run.
std::vector<CompareRow> run_compare(const std::vector<std::pair<std::string, RunConfig>>& configs);
std::string compare_csv(const std::vector<CompareRow>& rows);

struct SqueezeResult {
  bool found = false;
  LayoutResult layout;
  CompileResult compiled;
  int reference_tiles = 0;
  int reference_clocks = 0;
  std::vector<std::pair<int, int>> tried;  // rows, cols
};

// Largest designed board with at most max_fraction * reference tiles whose
// compiled clocks stay within (1 + clock_slack) of the reference layout.
SqueezeResult squeeze_layout(const PbcProgram& transpiled, const Board& reference, const ScoreParams& params,
                             const CompileOptions& options, double max_fraction = 0.85, double clock_slack = 0.10);

}  // namespace latsurg
