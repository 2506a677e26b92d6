#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latsurg/board.hpp"

namespace latsurg {

// Boundary a multi-patch measurement must reach.
struct EdgeTerminal {
  int patch = -1;
  EdgeType edge = EdgeType::Z;

  bool operator==(const EdgeTerminal&) const = default;
};

// Everything one lattice-surgery measurement needs to touch.
struct BusRequest {
  std::vector<EdgeTerminal> terminals;
  bool magic = false;    // pi/8: consume a magic state at the port
  bool ancilla = false;  // pi/4: both ancilla boundaries

  bool operator==(const BusRequest&) const = default;
};

// Tiles that are unavailable in the current time slice.
using TileMask = std::vector<char>;

// The routing tiles that can serve each requirement (in request order:
// terminals, then magic, then ancilla X, ancilla Z).
std::vector<std::vector<Coord>> terminal_groups(const Board& board, const BusRequest& request,
                                                const TileMask* busy = nullptr);

// Greedy Steiner tree over free routing tiles touching every group: grows
// from a start tile by repeated 0-1 BFS where chosen tiles cost nothing.
// Returns nullopt if some group cannot be joined.
std::optional<std::vector<Coord>> find_bus(const Board& board, const BusRequest& request,
                                           const TileMask* busy = nullptr);

// As find_bus but throws NoPathError when no bus exists.
std::vector<Coord> bus_patches(const Board& board, const BusRequest& request);

// Union of shortest paths from the first tile of the first group to every
// other group, with no tile sharing between paths considered.
std::optional<std::vector<Coord>> first_found_bus(const Board& board, const BusRequest& request,
                                                  const TileMask* busy = nullptr);

// True iff a set of routing tiles is 4-connected.
bool is_connected_tiles(const Board& board, const std::vector<Coord>& tiles);

}  // namespace latsurg
