#include "latsurg/routing.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {

bool free_tile(const Board& board, Coord p, const TileMask* busy) {
  return board.is_routing(p) && (!busy || !(*busy)[board.index(p)]);
}

void push_free(std::vector<Coord>& group, const Board& board, const std::vector<Coord>& cands, const TileMask* busy) {
  for (Coord c : cands)
    if (free_tile(board, c, busy) && std::find(group.begin(), group.end(), c) == group.end()) group.push_back(c);
}

// Multi-source BFS from `tree` over free tiles; tree tiles are at distance 0.
// Returns the shortest path (excluding tree tiles) to the nearest tile of
// any open group, or nullopt.
std::optional<std::vector<Coord>> grow(const Board& board, const std::vector<char>& in_tree,
                                       const std::vector<char>& target, const TileMask* busy) {
  const int n = board.tile_count();
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::deque<int> queue;
  for (int i = 0; i < n; ++i)
    if (in_tree[i]) {
      parent[i] = -1;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    if (target[cur]) {
      std::vector<Coord> path;
      for (int p = cur; p >= 0 && !in_tree[p]; p = parent[p]) path.push_back(board.coord(p));
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Coord nb : neighbors(board, board.coord(cur))) {
      const int ni = board.index(nb);
      if (parent[ni] != -2 || !free_tile(board, nb, busy)) continue;
      parent[ni] = cur;
      queue.push_back(ni);
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Coord>> steiner_from(const Board& board, const std::vector<std::vector<Coord>>& groups,
                                               Coord start, const TileMask* busy) {
  const int n = board.tile_count();
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<Coord> tree{start};
  in_tree[board.index(start)] = 1;
  std::vector<bool> done(groups.size(), false);
  auto refresh = [&] {
    bool all = true;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (!done[g])
        for (Coord c : groups[g]) done[g] = done[g] || in_tree[board.index(c)];
      all &= done[g];
    }
    return all;
  };
  while (!refresh()) {
    std::vector<char> target(static_cast<std::size_t>(n), 0);
    for (std::size_t g = 0; g < groups.size(); ++g)
      if (!done[g])
        for (Coord c : groups[g]) target[board.index(c)] = 1;
    auto path = grow(board, in_tree, target, busy);
    if (!path) return std::nullopt;
    for (Coord c : *path) {
      in_tree[board.index(c)] = 1;
      tree.push_back(c);
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

// Union of independent shortest paths from `start` to every other group.
std::optional<std::vector<Coord>> star_from(const Board& board, const std::vector<std::vector<Coord>>& groups,
                                            Coord start, const TileMask* busy) {
  const int n = board.tile_count();
  std::vector<char> root(static_cast<std::size_t>(n), 0);
  root[board.index(start)] = 1;
  std::vector<Coord> bus{start};
  for (const auto& group : groups) {
    if (std::find(group.begin(), group.end(), start) != group.end()) continue;
    std::vector<char> target(static_cast<std::size_t>(n), 0);
    for (Coord c : group) target[board.index(c)] = 1;
    auto path = grow(board, root, target, busy);
    if (!path) return std::nullopt;
    for (Coord c : *path)
      if (std::find(bus.begin(), bus.end(), c) == bus.end()) bus.push_back(c);
  }
  std::sort(bus.begin(), bus.end());
  return bus;
}

}  // namespace

std::vector<std::vector<Coord>> terminal_groups(const Board& board, const BusRequest& request, const TileMask* busy) {
  std::vector<std::vector<Coord>> groups;
  for (const EdgeTerminal& t : request.terminals) {
    std::vector<Coord> g;
    push_free(g, board, edge_side_tiles(board, board.patch(t.patch), t.edge), busy);
    groups.push_back(std::move(g));
  }
  if (request.magic) {
    std::vector<Coord> g;
    if (board.magic()) push_free(g, board, neighbors(board, *board.magic()), busy);
    groups.push_back(std::move(g));
  }
  if (request.ancilla) {
    for (EdgeType e : {EdgeType::X, EdgeType::Z}) {
      std::vector<Coord> g;
      push_free(g, board, ancilla_side_tiles(board, e), busy);
      groups.push_back(std::move(g));
    }
  }
  return groups;
}

std::optional<std::vector<Coord>> find_bus(const Board& board, const BusRequest& request, const TileMask* busy) {
  const auto groups = terminal_groups(board, request, busy);
  if (groups.empty()) return std::vector<Coord>{};
  for (const auto& g : groups)
    if (g.empty()) return std::nullopt;
  // Greedy trees from each tile of the smallest group, plus the first-group
  // shortest-path stars as a fallback bound; keep the smallest.
  std::size_t seed = 0;
  for (std::size_t g = 1; g < groups.size(); ++g)
    if (groups[g].size() < groups[seed].size()) seed = g;
  std::optional<std::vector<Coord>> best;
  auto keep = [&](std::optional<std::vector<Coord>> cand) {
    if (cand && (!best || cand->size() < best->size())) best = std::move(cand);
  };
  for (Coord start : groups[seed]) keep(steiner_from(board, groups, start, busy));
  for (Coord start : groups.front()) keep(star_from(board, groups, start, busy));
  return best;
}

std::vector<Coord> bus_patches(const Board& board, const BusRequest& request) {
  auto bus = find_bus(board, request);
  if (!bus) throw NoPathError("no routing path joins every required boundary");
  return *bus;
}

std::optional<std::vector<Coord>> first_found_bus(const Board& board, const BusRequest& request,
                                                  const TileMask* busy) {
  const auto groups = terminal_groups(board, request, busy);
  if (groups.empty()) return std::vector<Coord>{};
  for (const auto& g : groups)
    if (g.empty()) return std::nullopt;
  return star_from(board, groups, groups.front().front(), busy);
}

bool is_connected_tiles(const Board& board, const std::vector<Coord>& tiles) {
  if (tiles.empty()) return true;
  std::vector<char> member(static_cast<std::size_t>(board.tile_count()), 0);
  for (Coord t : tiles) member[board.index(t)] = 1;
  std::vector<char> seen(member.size(), 0);
  std::deque<Coord> queue{tiles.front()};
  seen[board.index(tiles.front())] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    const Coord p = queue.front();
    queue.pop_front();
    for (Coord nb : neighbors(board, p)) {
      const int i = board.index(nb);
      if (!member[i] || seen[i]) continue;
      seen[i] = 1;
      ++count;
      queue.push_back(nb);
    }
  }
  return count == tiles.size();
}

}  // namespace latsurg
