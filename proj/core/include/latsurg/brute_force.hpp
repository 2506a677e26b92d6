#pragma once

#include <cstddef>
#include <cstdint>

#include "latsurg/board.hpp"
#include "latsurg/circuit.hpp"
#include "latsurg/ler.hpp"
#include "latsurg/mapping.hpp"
#include "latsurg/scheduler.hpp"

namespace latsurg {

struct BruteForceOptions {
  CorrectionPolicy policy = CorrectionPolicy::never;
  std::uint64_t seed = 0;
  int clock_budget = 64;
  std::size_t state_budget = 2'000'000;
  // Also search for the least p_total schedule under `calib`.
  bool minimize_ler = false;
  CalibrationTable calib = default_calibration();
};

struct BruteForceResult {
  int clocks = 0;
  double min_p_total = 0.0;  // only with minimize_ler
  std::size_t states = 0;
};

// Exact search over (board, finished operators, rotations in flight). Each
// clock starts any tile-disjoint set of measurements, moves and rotations, so
// every schedule the validator accepts is a path in the search graph.
// Throws BudgetExceededError past the clock or state budget.
BruteForceResult brute_force_optimum(const PbcProgram& program, const Board& board, const QubitMap& map,
                                     const BruteForceOptions& options = {});

}  // namespace latsurg
