#include "latsurg/layout_search.hpp"

#include <cmath>
#include <tuple>

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {

struct Scored {
  double score = 0.0;
  int n_e = 0;
  BoardAnalysis analysis;
};

Scored evaluate(const Board& board, const ScoreParams& params) {
  Scored s;
  s.analysis = analyze(board);
  s.n_e = s.analysis.n_e;
  s.score = s.analysis.connected ? s.analysis.n_x + s.analysis.n_z - params.alpha_e * s.analysis.n_e : 0.0;
  return s;
}

constexpr double kEps = 1e-12;

// a better than b: higher score, then fewer N_e, then smaller tile, then 'h'.
bool better(double sa, int ea, Coord ta, Orientation oa, double sb, int eb, Coord tb, Orientation ob) {
  if (sa > sb + kEps) return true;
  if (sa < sb - kEps) return false;
  return std::make_tuple(ea, ta, static_cast<int>(oa)) < std::make_tuple(eb, tb, static_cast<int>(ob));
}

}  // namespace

std::optional<std::string> check_score_params(const ScoreParams& p) {
  if (!(p.alpha_e >= 0.0)) throw ConfigError("layout-search", "alpha_e must be non-negative");
  if (p.alpha_e <= 0.0 || p.alpha_e >= 0.5)
    return "alpha_e = " + std::to_string(p.alpha_e) + " is outside the stable range (0, 0.5)";
  return std::nullopt;
}

double score_board(const Board& board, const ScoreParams& params) { return evaluate(board, params).score; }

Board empty_design_board(int rows, int cols) {
  if (rows < 1 || cols < 2) throw InfeasibleBoardError("board " + std::to_string(rows) + "x" + std::to_string(cols) +
                                                       " cannot hold an ancilla and a magic port");
  Board b(rows, cols);
  b.place_ancilla({0, 0});
  b.place_magic({0, cols - 1});
  return b;
}

Board relocate_pass(const Board& board, const ScoreParams& params, int* accepted) {
  Board cur = board;
  double cur_score = score_board(cur, params);
  int moves = 0;
  for (int id : board.patch_ids()) {
    const Patch& p = cur.patch(id);
    const Coord from = p.anchor();
    std::vector<Coord> targets{from};
    for (Coord n : neighbors(cur, from))
      if (cur.is_routing(n)) targets.push_back(n);
    std::optional<std::tuple<double, int, Coord, Orientation>> best;
    for (Coord t : targets) {
      for (Orientation o : {Orientation::h, Orientation::v}) {
        if (t == from && o == p.orientation) continue;
        Board next = cur;
        next.set_patch_tiles(id, {t});
        next.set_orientation(id, o);
        const Scored s = evaluate(next, params);
        if (s.score <= cur_score + kEps) continue;
        if (!best || better(s.score, s.n_e, t, o, std::get<0>(*best), std::get<1>(*best), std::get<2>(*best),
                            std::get<3>(*best)))
          best = std::make_tuple(s.score, s.n_e, t, o);
      }
    }
    if (!best) continue;
    cur.set_patch_tiles(id, {std::get<2>(*best)});
    cur.set_orientation(id, std::get<3>(*best));
    cur_score = std::get<0>(*best);
    ++moves;
  }
  if (accepted) *accepted = moves;
  return cur;
}

LayoutResult design_layout(std::size_t n, int rows, int cols, const ScoreParams& params) {
  check_score_params(params);
  Board board = empty_design_board(rows, cols);
  if (static_cast<int>(n) + 2 > board.tile_count())
    throw InfeasibleBoardError(std::to_string(n) + " patches do not fit on a " + std::to_string(rows) + "x" +
                               std::to_string(cols) + " board");
  LayoutResult out;
  for (std::size_t i = 0; i < n; ++i) {
    const int id = static_cast<int>(i);
    const BoardAnalysis an = analyze(board);
    std::optional<std::tuple<double, int, Coord, Orientation>> best;
    for (int t = 0; t < board.tile_count(); ++t) {
      const Coord c = board.coord(t);
      if (!an.in_main(board, c)) continue;
      for (Orientation o : {Orientation::h, Orientation::v}) {
        Board next = board;
        next.add_patch(id, c, o);
        const Scored s = evaluate(next, params);
        if (!s.analysis.connected) continue;
        if (!best || better(s.score, s.n_e, c, o, std::get<0>(*best), std::get<1>(*best), std::get<2>(*best),
                            std::get<3>(*best)))
          best = std::make_tuple(s.score, s.n_e, c, o);
      }
    }
    if (!best)
      throw InfeasibleBoardError("no connected placement for patch " + std::to_string(id) + " on a " +
                                 std::to_string(rows) + "x" + std::to_string(cols) + " board");
    board.add_patch(id, std::get<2>(*best), std::get<3>(*best));
    LayoutStep step;
    step.step = id + 1;
    step.patch = id;
    step.tile = std::get<2>(*best);
    step.orientation = std::get<3>(*best);
    board = relocate_pass(board, params, &step.relocations);
    const Scored s = evaluate(board, params);
    step.score = s.score;
    step.n_x = s.analysis.n_x;
    step.n_z = s.analysis.n_z;
    step.n_e = s.analysis.n_e;
    out.trace.push_back(step);
  }
  out.board = std::move(board);
  return out;
}

LayoutResult design_layout_auto(std::size_t n, const ScoreParams& params) {
  int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n + 2)))));
  for (;; ++side) {
    if (side > 4 * static_cast<int>(n) + 8) throw InfeasibleBoardError("no square board fits " + std::to_string(n) + " patches");
    try {
      return design_layout(n, side, side, params);
    } catch (const InfeasibleBoardError&) {
    }
  }
}

nlohmann::ordered_json layout_trace_to_json(const std::vector<LayoutStep>& trace) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : trace) {
    nlohmann::ordered_json j;
    j["step"] = s.step;
    j["patch"] = s.patch;
    j["tile"] = {s.tile.r, s.tile.c};
    j["orientation"] = std::string(1, orientation_char(s.orientation));
    j["score"] = s.score;
    j["n_x"] = s.n_x;
    j["n_z"] = s.n_z;
    j["n_e"] = s.n_e;
    j["relocations"] = s.relocations;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace latsurg
