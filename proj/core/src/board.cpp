#include "latsurg/board.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "latsurg/errors.hpp"

namespace latsurg {

char orientation_char(Orientation o) { return o == Orientation::h ? 'h' : 'v'; }
char edge_char(EdgeType e) { return e == EdgeType::X ? 'X' : 'Z'; }

Board::Board(int rows, int cols)
    : rows_(rows), cols_(cols), kind_(static_cast<std::size_t>(rows * cols), TileKind::routing),
      owner_(static_cast<std::size_t>(rows * cols), -1) {
  if (rows <= 0 || cols <= 0) throw IllegalOpError("board dimensions must be positive");
}

void Board::set_kind(Coord p, TileKind k, int owner) {
  if (!in_bounds(p))
    throw IllegalOpError("tile (" + std::to_string(p.r) + "," + std::to_string(p.c) + ") is outside the board");
  kind_[index(p)] = k;
  owner_[index(p)] = owner;
}

void Board::set_blocked(Coord p) {
  if (!is_routing(p)) throw IllegalOpError("only routing tiles can be blocked");
  set_kind(p, TileKind::blocked);
}

void Board::set_routing(Coord p) {
  if (in_bounds(p) && kind(p) == TileKind::data) throw IllegalOpError("tile holds a data patch");
  if (ancilla_ && *ancilla_ == p) ancilla_.reset();
  if (magic_ && *magic_ == p) magic_.reset();
  set_kind(p, TileKind::routing);
}

void Board::place_ancilla(Coord p) {
  if (!is_routing(p)) throw IllegalOpError("ancilla tile must be free");
  if (ancilla_) set_kind(*ancilla_, TileKind::routing);
  ancilla_ = p;
  set_kind(p, TileKind::ancilla);
}

void Board::place_magic(Coord p) {
  if (!is_routing(p)) throw IllegalOpError("magic port tile must be free");
  if (magic_) set_kind(*magic_, TileKind::routing);
  magic_ = p;
  set_kind(p, TileKind::magic);
}

void Board::add_patch(int id, Coord p, Orientation o) {
  if (patches_.count(id)) throw IllegalOpError("patch " + std::to_string(id) + " already exists");
  if (!is_routing(p))
    throw IllegalOpError("tile (" + std::to_string(p.r) + "," + std::to_string(p.c) + ") is occupied");
  patches_[id] = Patch{id, {p}, o};
  set_kind(p, TileKind::data, id);
}

void Board::remove_patch(int id) {
  const Patch& pt = patch(id);
  for (Coord t : pt.tiles) set_kind(t, TileKind::routing);
  patches_.erase(id);
}

void Board::set_patch_tiles(int id, std::vector<Coord> tiles) {
  Patch& pt = patches_.at(id);
  for (Coord t : pt.tiles) set_kind(t, TileKind::routing);
  pt.tiles = std::move(tiles);
  for (Coord t : pt.tiles) set_kind(t, TileKind::data, id);
}

void Board::set_orientation(int id, Orientation o) { patches_.at(id).orientation = o; }

const Patch& Board::patch(int id) const {
  auto it = patches_.find(id);
  if (it == patches_.end()) throw IllegalOpError("no patch with id " + std::to_string(id));
  return it->second;
}

std::vector<int> Board::patch_ids() const {
  std::vector<int> ids;
  for (const auto& [id, _] : patches_) ids.push_back(id);
  return ids;
}

std::string Board::key() const {
  std::string s;
  s.reserve(kind_.size() * 3);
  for (int i = 0; i < tile_count(); ++i) {
    switch (kind_[i]) {
      case TileKind::routing: s += '.'; break;
      case TileKind::blocked: s += '#'; break;
      case TileKind::ancilla: s += 'A'; break;
      case TileKind::magic: s += 'M'; break;
      case TileKind::data: {
        const Patch& p = patches_.at(owner_[i]);
        s += std::to_string(p.id);
        s += orientation_char(p.orientation);
        break;
      }
    }
    s += ',';
  }
  return s;
}

std::vector<Coord> neighbors(const Board& board, Coord p) {
  std::vector<Coord> out;
  for (Coord d : {Coord{-1, 0}, Coord{0, 1}, Coord{1, 0}, Coord{0, -1}}) {
    Coord n{p.r + d.r, p.c + d.c};
    if (board.in_bounds(n)) out.push_back(n);
  }
  return out;
}

namespace {

// Offsets of the boundaries carrying `edge` for orientation `o`, in the
// up/right/down/left order.
std::vector<Coord> side_offsets(Orientation o, EdgeType edge) {
  const bool horizontal = (o == Orientation::h) == (edge == EdgeType::X);
  if (horizontal) return {{0, 1}, {0, -1}};
  return {{-1, 0}, {1, 0}};
}

std::vector<Coord> sides_of(const Board& board, const std::vector<Coord>& tiles, Orientation o, EdgeType edge) {
  std::vector<Coord> out;
  for (Coord t : tiles)
    for (Coord d : side_offsets(o, edge)) {
      Coord n{t.r + d.r, t.c + d.c};
      if (!board.in_bounds(n)) continue;
      if (std::find(tiles.begin(), tiles.end(), n) != tiles.end()) continue;
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
  return out;
}

}  // namespace

std::vector<Coord> edge_side_tiles(const Board& board, const Patch& patch, EdgeType edge) {
  return sides_of(board, patch.tiles, patch.orientation, edge);
}

std::vector<Coord> ancilla_side_tiles(const Board& board, EdgeType edge) {
  if (!board.ancilla()) return {};
  return sides_of(board, {*board.ancilla()}, Orientation::h, edge);
}

BoardAnalysis analyze(const Board& board) {
  BoardAnalysis a;
  a.component.assign(static_cast<std::size_t>(board.tile_count()), -1);
  int next = 0;
  for (int i = 0; i < board.tile_count(); ++i) {
    const Coord start = board.coord(i);
    if (board.kind(start) != TileKind::routing || a.component[i] >= 0) continue;
    std::deque<Coord> queue{start};
    a.component[i] = next;
    while (!queue.empty()) {
      const Coord p = queue.front();
      queue.pop_front();
      for (Coord n : neighbors(board, p)) {
        if (board.kind(n) != TileKind::routing || a.component[board.index(n)] >= 0) continue;
        a.component[board.index(n)] = next;
        queue.push_back(n);
      }
    }
    ++next;
  }

  auto comp_of = [&](Coord p) { return board.is_routing(p) ? a.component[board.index(p)] : -1; };
  if (board.ancilla()) {
    int first_any = -1;
    for (Coord xs : ancilla_side_tiles(board, EdgeType::X)) {
      const int cx = comp_of(xs);
      if (cx < 0) continue;
      if (first_any < 0) first_any = cx;
      for (Coord zs : ancilla_side_tiles(board, EdgeType::Z)) {
        if (comp_of(zs) == cx && (a.main_component < 0 || cx < a.main_component)) a.main_component = cx;
      }
    }
    a.ancilla_ok = a.main_component >= 0;
    if (!a.ancilla_ok) {
      for (Coord zs : ancilla_side_tiles(board, EdgeType::Z))
        if (first_any < 0) first_any = comp_of(zs);
      a.main_component = first_any;
    }
  }
  if (board.magic()) {
    a.magic_ok = false;
    for (Coord n : neighbors(board, *board.magic())) a.magic_ok |= a.in_main(board, n);
  }

  bool all_exposed = true;
  for (const auto& [id, patch] : board.patches()) {
    PatchExposure e;
    for (Coord s : edge_side_tiles(board, patch, EdgeType::X)) e.x_sides += a.in_main(board, s) ? 1 : 0;
    for (Coord s : edge_side_tiles(board, patch, EdgeType::Z)) e.z_sides += a.in_main(board, s) ? 1 : 0;
    e.x = e.x_sides > 0;
    e.z = e.z_sides > 0;
    a.n_x += e.x ? 1 : 0;
    a.n_z += e.z ? 1 : 0;
    a.n_e += e.x_sides + e.z_sides;
    all_exposed &= e.x || e.z;
    a.exposure[id] = e;
  }
  a.connected = a.ancilla_ok && a.magic_ok && all_exposed;
  return a;
}

bool check_connectivity(const Board& board) { return analyze(board).connected; }

std::string op_kind_name(PatchOpKind kind) {
  switch (kind) {
    case PatchOpKind::init: return "init";
    case PatchOpKind::expand: return "expand";
    case PatchOpKind::shrink: return "shrink";
    case PatchOpKind::move: return "move";
    case PatchOpKind::rotate: return "rotate";
    case PatchOpKind::measure: return "measure";
  }
  return "?";
}

int op_cost(PatchOpKind kind) {
  switch (kind) {
    case PatchOpKind::init: return 0;
    case PatchOpKind::expand: return 1;
    case PatchOpKind::shrink: return 0;
    case PatchOpKind::move: return 1;
    case PatchOpKind::rotate: return 3;
    case PatchOpKind::measure: return 1;
  }
  return 0;
}

std::string PatchOp::str() const {
  std::ostringstream out;
  out << op_kind_name(kind);
  if (patch >= 0) out << " p" << patch;
  for (Coord t : tiles) out << " (" << t.r << "," << t.c << ")";
  return out.str();
}

PatchOp PatchOp::init(int patch, Coord tile, Orientation o, InitState s) {
  PatchOp op{PatchOpKind::init, patch, {tile}};
  op.orientation = o;
  op.state = s;
  return op;
}
PatchOp PatchOp::expand(int patch, std::vector<Coord> tiles) { return {PatchOpKind::expand, patch, std::move(tiles)}; }
PatchOp PatchOp::shrink(int patch, Coord kept) { return {PatchOpKind::shrink, patch, {kept}}; }
PatchOp PatchOp::move(int patch, Coord dest) { return {PatchOpKind::move, patch, {dest}}; }
PatchOp PatchOp::rotate(int patch, std::optional<Coord> helper) {
  PatchOp op{PatchOpKind::rotate, patch, {}};
  if (helper) op.tiles.push_back(*helper);
  return op;
}
PatchOp PatchOp::measure(std::vector<Coord> bus) { return {PatchOpKind::measure, -1, std::move(bus)}; }

std::optional<Coord> rotation_helper(const Board& board, const Patch& patch) {
  for (Coord t : patch.tiles)
    for (Coord n : neighbors(board, t))
      if (board.is_routing(n)) return n;
  return std::nullopt;
}

namespace {

bool adjacent_to(const Board& board, const std::vector<Coord>& tiles, Coord p) {
  for (Coord n : neighbors(board, p))
    if (std::find(tiles.begin(), tiles.end(), n) != tiles.end()) return true;
  return false;
}

std::string at(Coord p) { return "(" + std::to_string(p.r) + "," + std::to_string(p.c) + ")"; }

}  // namespace

Board apply_op(const Board& board, const PatchOp& op) {
  Board out = board;
  switch (op.kind) {
    case PatchOpKind::init: {
      if (op.tiles.size() != 1) throw IllegalOpError("init needs exactly one tile");
      out.add_patch(op.patch, op.tiles[0], op.orientation);
      return out;
    }
    case PatchOpKind::expand: {
      std::vector<Coord> tiles = board.patch(op.patch).tiles;
      if (op.tiles.empty()) throw IllegalOpError("expand needs target tiles");
      for (Coord t : op.tiles) {
        if (!board.is_routing(t)) throw IllegalOpError("expand target " + at(t) + " is not a free routing tile");
        if (!adjacent_to(board, tiles, t)) throw IllegalOpError("expand target " + at(t) + " is not contiguous with the patch");
        tiles.push_back(t);
      }
      out.set_patch_tiles(op.patch, tiles);
      return out;
    }
    case PatchOpKind::shrink: {
      const Patch& p = board.patch(op.patch);
      if (op.tiles.size() != 1 || std::find(p.tiles.begin(), p.tiles.end(), op.tiles[0]) == p.tiles.end())
        throw IllegalOpError("shrink must keep one of the patch's tiles");
      out.set_patch_tiles(op.patch, {op.tiles[0]});
      return out;
    }
    case PatchOpKind::move: {
      const Patch& p = board.patch(op.patch);
      if (p.tiles.size() != 1) throw IllegalOpError("move needs a single-tile patch");
      if (op.tiles.size() != 1) throw IllegalOpError("move needs one destination");
      const Coord dest = op.tiles[0];
      if (!board.is_routing(dest)) throw IllegalOpError("move destination " + at(dest) + " is occupied");
      if (manhattan(dest, p.anchor()) != 1) throw IllegalOpError("move destination " + at(dest) + " is not adjacent");
      out.set_patch_tiles(op.patch, {dest});
      return out;
    }
    case PatchOpKind::rotate: {
      const Patch& p = board.patch(op.patch);
      if (!op.tiles.empty()) {
        const Coord h = op.tiles[0];
        if (!board.is_routing(h) || !adjacent_to(board, p.tiles, h))
          throw IllegalOpError("rotation helper " + at(h) + " is not a free adjacent tile");
      } else if (!rotation_helper(board, p)) {
        throw IllegalOpError("no free tile next to patch " + std::to_string(op.patch) + " for rotation");
      }
      out.set_orientation(op.patch, rotated(p.orientation));
      return out;
    }
    case PatchOpKind::measure: {
      for (Coord t : op.tiles)
        if (!board.is_routing(t)) throw IllegalOpError("bus tile " + at(t) + " is not routing space");
      return out;
    }
  }
  return out;
}

LayoutStyle parse_layout_style(const std::string& name) {
  if (name == "compact") return LayoutStyle::compact;
  if (name == "standard") return LayoutStyle::standard;
  if (name == "sparse") return LayoutStyle::sparse;
  throw ConfigError("unknown layout style '" + name + "' (expected compact, standard or sparse)");
}

std::string layout_style_name(LayoutStyle s) {
  switch (s) {
    case LayoutStyle::compact: return "compact";
    case LayoutStyle::standard: return "standard";
    case LayoutStyle::sparse: return "sparse";
  }
  return "?";
}

Board builtin_layout(LayoutStyle style, std::size_t n) {
  if (n == 0) throw InfeasibleBoardError("layout needs at least one qubit");
  const int N = static_cast<int>(n);
  switch (style) {
    case LayoutStyle::compact: {
      // Two data rows around one routing row; X boundaries face the routing
      // row. The last column carries the magic port and ancilla.
      const int k = (N + 1) / 2;
      Board b(3, k + 2);
      for (int i = 0; i < N; ++i) b.add_patch(i, {i < k ? 0 : 2, i < k ? i : i - k}, Orientation::v);
      b.place_magic({0, k + 1});
      b.place_ancilla({2, k + 1});
      return b;
    }
    case LayoutStyle::standard: {
      // Data rows ". Q Q . Q Q ." separated by routing rows; the smallest
      // connected candidate wins, ties broken towards square boards.
      auto build = [N](int p) {
        const int per_row = 2 * p;
        const int data_rows = (N + per_row - 1) / per_row;
        Board b(2 * data_rows + 1, 3 * p + 1);
        for (int i = 0; i < N; ++i) {
          const int row = 2 * (i / per_row) + 1;
          const int slot = i % per_row;
          b.add_patch(i, {row, 3 * (slot / 2) + 1 + slot % 2}, Orientation::h);
        }
        b.place_ancilla({0, 0});
        b.place_magic({b.rows() - 1, b.cols() - 1});
        return b;
      };
      std::optional<Board> best;
      for (int p = 1; p <= N; ++p) {
        Board b = build(p);
        if (!check_connectivity(b)) continue;
        const auto skew = [](const Board& x) { return std::abs(x.rows() - x.cols()); };
        if (!best || b.tile_count() < best->tile_count() ||
            (b.tile_count() == best->tile_count() && skew(b) < skew(*best)))
          best = std::move(b);
      }
      return *best;
    }
    case LayoutStyle::sparse: {
      // A 1x1 grid would leave the magic port on the only Z-side tile.
      const int k = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(N)))));
      Board b(2 * k, 2 * k);
      for (int i = 0; i < N; ++i) b.add_patch(i, {2 * (i / k) + 1, 2 * (i % k) + 1}, Orientation::h);
      b.place_ancilla({0, 0});
      b.place_magic({0, 2 * k - 1});
      return b;
    }
  }
  return {};
}

}  // namespace latsurg
