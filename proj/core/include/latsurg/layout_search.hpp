#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latsurg/board.hpp"

namespace latsurg {

struct ScoreParams {
  double alpha_e = 0.2;  // density factor
};

// Throws ConfigError for a negative factor; returns a warning outside (0, 0.5).
std::optional<std::string> check_score_params(const ScoreParams& params);

// C(B) * (N_x + N_z - alpha_e * N_e).
double score_board(const Board& board, const ScoreParams& params);

struct LayoutStep {
  int step = 0;
  int patch = -1;
  Coord tile;
  Orientation orientation = Orientation::h;
  double score = 0.0;
  int n_x = 0;
  int n_z = 0;
  int n_e = 0;
  int relocations = 0;  // moves accepted by the relocation sweep
};

struct LayoutCandidate {
  Board board;
  double score = 0.0;
  int step = 0;
};

struct LayoutResult {
  Board board;
  std::vector<LayoutStep> trace;
};

// Empty board with the ancilla at (0, 0) and the magic port at (0, cols-1).
Board empty_design_board(int rows, int cols);

// Greedy placement of patches 0..n-1, one highest-scoring (tile,
// orientation) per step followed by one relocation sweep. Ties: fewer N_e,
// then row-major tile, then 'h'. Throws InfeasibleBoardError when no
// placement keeps C(B) = 1.
LayoutResult design_layout(std::size_t n, int rows, int cols, const ScoreParams& params = {});

// Smallest square board (side growing from the minimum) that design_layout
// fills.
LayoutResult design_layout_auto(std::size_t n, const ScoreParams& params = {});

// One sweep over patches in id order: each patch takes its best strictly
// improving one-tile move or re-orientation.
Board relocate_pass(const Board& board, const ScoreParams& params, int* accepted = nullptr);

nlohmann::ordered_json layout_trace_to_json(const std::vector<LayoutStep>& trace);

}  // namespace latsurg
