#pragma once

#include <compare>
#include <cstdlib>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latsurg/pauli.hpp"

namespace latsurg {

struct Coord {
  int r = 0;
  int c = 0;

  auto operator<=>(const Coord&) const = default;
};

inline int manhattan(Coord a, Coord b) { return std::abs(a.r - b.r) + std::abs(a.c - b.c); }

enum class TileKind { routing, data, ancilla, magic, blocked };

// 'h': X boundaries left/right, Z boundaries top/bottom. 'v': the reverse.
enum class Orientation { h, v };
enum class EdgeType { X, Z };

inline Orientation rotated(Orientation o) { return o == Orientation::h ? Orientation::v : Orientation::h; }
char orientation_char(Orientation o);
char edge_char(EdgeType e);

struct Patch {
  int id = 0;
  std::vector<Coord> tiles;  // one tile except mid-deformation
  Orientation orientation = Orientation::h;

  Coord anchor() const { return tiles.front(); }
  bool operator==(const Patch&) const = default;
};

// Tile grid with data patches, one ancilla tile and an optional magic port.
class Board {
 public:
  Board() = default;
  Board(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int tile_count() const { return rows_ * cols_; }
  bool in_bounds(Coord p) const { return p.r >= 0 && p.c >= 0 && p.r < rows_ && p.c < cols_; }
  int index(Coord p) const { return p.r * cols_ + p.c; }
  Coord coord(int index) const { return {index / cols_, index % cols_}; }

  TileKind kind(Coord p) const { return kind_.at(index(p)); }
  bool is_routing(Coord p) const { return in_bounds(p) && kind(p) == TileKind::routing; }
  // Patch id on a data tile, or -1.
  int patch_at(Coord p) const { return owner_.at(index(p)); }

  void set_blocked(Coord p);
  void set_routing(Coord p);
  void place_ancilla(Coord p);
  void place_magic(Coord p);
  void add_patch(int id, Coord p, Orientation o);
  void remove_patch(int id);
  // Low-level tile reassignment used by apply_op; no legality checks.
  void set_patch_tiles(int id, std::vector<Coord> tiles);
  void set_orientation(int id, Orientation o);

  const std::optional<Coord>& ancilla() const { return ancilla_; }
  const std::optional<Coord>& magic() const { return magic_; }
  bool has_patch(int id) const { return patches_.count(id) != 0; }
  const Patch& patch(int id) const;
  const std::map<int, Patch>& patches() const { return patches_; }
  std::vector<int> patch_ids() const;
  std::size_t patch_count() const { return patches_.size(); }

  // Canonical serialization, usable as a hash key.
  std::string key() const;

  bool operator==(const Board&) const = default;

 private:
  void set_kind(Coord p, TileKind k, int owner = -1);

  int rows_ = 0;
  int cols_ = 0;
  std::vector<TileKind> kind_;
  std::vector<int> owner_;
  std::map<int, Patch> patches_;
  std::optional<Coord> ancilla_;
  std::optional<Coord> magic_;
};

// In-bounds neighbours in the order up, right, down, left.
std::vector<Coord> neighbors(const Board& board, Coord p);

// Tiles facing the boundaries of `edge` type, excluding the patch's own.
std::vector<Coord> edge_side_tiles(const Board& board, const Patch& patch, EdgeType edge);
// Same for the ancilla tile, which behaves like an 'h' patch.
std::vector<Coord> ancilla_side_tiles(const Board& board, EdgeType edge);

struct PatchExposure {
  bool x = false;
  bool z = false;
  int x_sides = 0;  // X boundaries touching main routing
  int z_sides = 0;
};

// Routing-space analysis relative to the main routing component, the one
// holding both an X-side and a Z-side neighbour of the ancilla.
struct BoardAnalysis {
  std::vector<int> component;  // per tile; -1 for non-routing
  int main_component = -1;
  bool ancilla_ok = false;
  bool magic_ok = true;
  std::map<int, PatchExposure> exposure;
  int n_x = 0;
  int n_z = 0;
  int n_e = 0;
  bool connected = false;  // C(B)

  bool in_main(const Board& b, Coord p) const {
    return b.in_bounds(p) && main_component >= 0 && component[b.index(p)] == main_component;
  }
};

BoardAnalysis analyze(const Board& board);
bool check_connectivity(const Board& board);

enum class PatchOpKind { init, expand, shrink, move, rotate, measure };
enum class InitState { zero, plus };

std::string op_kind_name(PatchOpKind kind);
// Clock cost: init 0, expand 1, shrink 0, move 1, rotate 3, measure 1.
int op_cost(PatchOpKind kind);

struct PatchOp {
  PatchOpKind kind = PatchOpKind::measure;
  int patch = -1;
  // expand: new tiles; shrink: the kept tile; move: destination; rotate:
  // the free helper tile (optional); measure: bus tiles; init: the tile.
  std::vector<Coord> tiles;
  Orientation orientation = Orientation::h;  // init only
  InitState state = InitState::zero;         // init only

  int cost() const { return op_cost(kind); }
  std::string str() const;

  static PatchOp init(int patch, Coord tile, Orientation o, InitState s = InitState::zero);
  static PatchOp expand(int patch, std::vector<Coord> tiles);
  static PatchOp shrink(int patch, Coord kept);
  static PatchOp move(int patch, Coord dest);
  static PatchOp rotate(int patch, std::optional<Coord> helper = std::nullopt);
  static PatchOp measure(std::vector<Coord> bus);

  bool operator==(const PatchOp&) const = default;
};

// Free routing neighbour a rotation would borrow: first of up/right/down/left.
std::optional<Coord> rotation_helper(const Board& board, const Patch& patch);

// Returns the successor board. Throws IllegalOpError on a violated
// precondition.
Board apply_op(const Board& board, const PatchOp& op);

enum class LayoutStyle { compact, standard, sparse };
LayoutStyle parse_layout_style(const std::string& name);
std::string layout_style_name(LayoutStyle s);

// Reference layouts with patches 0..n-1, ancilla and magic port.
Board builtin_layout(LayoutStyle style, std::size_t n);

}  // namespace latsurg
