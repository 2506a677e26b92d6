#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latsurg/board.hpp"
#include "latsurg/circuit.hpp"
#include "latsurg/mapping.hpp"
#include "latsurg/routing.hpp"

namespace latsurg {

enum class InstrKind { measure, move, rotate };
std::string instr_kind_name(InstrKind kind);

// One lattice-surgery instruction occupying `tiles` for clocks
// [start, start + duration).
struct Instruction {
  InstrKind kind = InstrKind::measure;
  int start = 0;
  int duration = 1;
  int op = -1;     // measure: program index
  int patch = -1;  // move / rotate
  Coord from;      // move: source tile
  Coord to;        // move: destination; rotate: helper tile
  std::vector<Coord> bus;
  BusRequest request;
  std::vector<Coord> tiles;

  int end() const { return start + duration; }
  bool active_at(int t) const { return start <= t && t < end(); }
  bool operator==(const Instruction&) const = default;
};

struct ScheduleMetrics {
  int clocks = 0;
  int measurements = 0;
  int rotations = 0;
  int moves = 0;
  int corrections = 0;
  double mean_bus = 0.0;
  int max_bus = 0;
  std::vector<int> bus_lengths;       // per measurement, in start order
  std::vector<int> idle_per_clock;    // data patches doing nothing
};

// Result of a scheduler run. `program` is the scheduled program, including
// any inserted corrections (flagged in `is_correction`).
struct Schedule {
  std::string scheduler;
  std::string correction_policy = "always";
  std::uint64_t seed = 0;
  Board initial;
  Board final_board;
  QubitMap mapping;
  PbcProgram program;
  std::vector<bool> is_correction;
  std::vector<Instruction> instructions;  // sorted by start, stable

  int total_clocks() const;
  // Instructions grouped by start clock; index t holds those starting at t.
  std::vector<std::vector<const Instruction*>> slices() const;
};

ScheduleMetrics compute_metrics(const Schedule& schedule);

nlohmann::ordered_json schedule_to_json(const Schedule& schedule);
// Inverse of schedule_to_json; held tiles are rebuilt by replay. Throws
// ParseError on a malformed file.
Schedule schedule_from_json(const nlohmann::json& j);
nlohmann::ordered_json metrics_to_json(const ScheduleMetrics& metrics);

}  // namespace latsurg
