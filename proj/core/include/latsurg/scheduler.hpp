#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latsurg/board.hpp"
#include "latsurg/mapping.hpp"
#include "latsurg/routing.hpp"
#include "latsurg/schedule.hpp"

namespace latsurg {

// Whether a pi/4 teleportation correction follows each pi/8 rotation.
enum class CorrectionPolicy { always, never, seeded_random };
CorrectionPolicy parse_correction_policy(const std::string& name);
std::string correction_policy_name(CorrectionPolicy p);

struct CorrectedProgram {
  PbcProgram program;
  std::vector<bool> is_correction;
};

// Inserts P_{+-pi/4} right after each P_{+-pi/8} selected by the policy.
CorrectedProgram expand_corrections(const PbcProgram& program, CorrectionPolicy policy, std::uint64_t seed);

// Boundaries an operator must reach: one terminal per (patch, edge), two for
// a Y letter; pi/8 adds the magic port, pi/4 the ancilla.
BusRequest request_for(const PauliOperator& op, const QubitMap& map);

// Terminals of `request` whose edge faces the main routing component.
int satisfied_units(const BoardAnalysis& analysis, const BusRequest& request);

// 0 if the op breaks C(B); otherwise satisfied_units after the op.
int reward(const Board& board, const PatchOp& op, const BusRequest& pending);

struct ScheduleOptions {
  CorrectionPolicy policy = CorrectionPolicy::always;
  std::uint64_t seed = 0;
};

// Frontier operators are packed into slices; a stuck operator is unblocked by
// reward-greedy moves and rotations.
Schedule loose_schedule(const PbcProgram& program, const Board& board, const QubitMap& map,
                        const ScheduleOptions& options = {});

// Baseline: program order, one operator per slice, in-place rotations and
// first-found routing.
Schedule spc_schedule(const PbcProgram& program, const Board& board, const QubitMap& map,
                      const ScheduleOptions& options = {});

struct ValidationReport {
  bool ok = true;
  std::string message;

  explicit operator bool() const { return ok; }
};

// Replays the schedule from `board`. `program` is the operator list before
// correction insertion.
ValidationReport validate_schedule(const Schedule& schedule, const Board& board, const PbcProgram& program);

}  // namespace latsurg
