#include "latsurg/mapping.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "latsurg/errors.hpp"

namespace latsurg {

QubitMap::QubitMap(std::vector<int> qubit_to_patch) : to_patch_(std::move(qubit_to_patch)) {}

int QubitMap::qubit_of(int patch) const {
  for (std::size_t q = 0; q < to_patch_.size(); ++q)
    if (to_patch_[q] == patch) return static_cast<int>(q);
  return -1;
}

MappingKind parse_mapping_kind(const std::string& name) {
  if (name == "ea" || name == "edge-aware") return MappingKind::edge_aware;
  if (name == "greedy") return MappingKind::greedy;
  if (name == "identity") return MappingKind::identity;
  throw ConfigError("unknown mapping '" + name + "' (expected ea, greedy or identity)");
}

std::string mapping_kind_name(MappingKind kind) {
  switch (kind) {
    case MappingKind::edge_aware: return "ea";
    case MappingKind::greedy: return "greedy";
    case MappingKind::identity: return "identity";
  }
  return "?";
}

namespace {

void require_capacity(std::size_t n, const Board& board) {
  if (board.patch_count() < n)
    throw CapacityError("board has " + std::to_string(board.patch_count()) + " patches for " + std::to_string(n) +
                        " qubits");
}

int ancilla_distance(const Board& board, const Patch& p) {
  return board.ancilla() ? manhattan(p.anchor(), *board.ancilla()) : 0;
}

}  // namespace

QubitMap edge_aware_map(const PDag& dag, const Board& board) {
  const std::size_t n = dag.num_qubits();
  require_capacity(n, board);
  const auto demand = rotation_demand(dag);
  std::vector<std::size_t> qubits(n);
  std::iota(qubits.begin(), qubits.end(), 0);
  std::sort(qubits.begin(), qubits.end(), [&](std::size_t a, std::size_t b) {
    return demand[a] != demand[b] ? demand[a] > demand[b] : a < b;
  });

  const BoardAnalysis an = analyze(board);
  struct Rank {
    int cls;
    int dist;
    int id;
  };
  std::vector<Rank> patches;
  for (const auto& [id, p] : board.patches()) {
    const auto& e = an.exposure.at(id);
    const int cls = (e.x && e.z) ? 0 : (e.x || e.z) ? 1 : 2;
    patches.push_back({cls, ancilla_distance(board, p), id});
  }
  std::sort(patches.begin(), patches.end(), [](const Rank& a, const Rank& b) {
    return std::tie(a.cls, a.dist, a.id) < std::tie(b.cls, b.dist, b.id);
  });
  std::vector<int> table(n);
  for (std::size_t i = 0; i < n; ++i) table[qubits[i]] = patches[i].id;
  return QubitMap(std::move(table));
}

QubitMap greedy_map(const PDag& dag, const Board& board) {
  const std::size_t n = dag.num_qubits();
  require_capacity(n, board);
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (const auto& node : dag.nodes()) {
    const auto s = node.op.word().support();
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        ++w[s[i]][s[j]];
        ++w[s[j]][s[i]];
      }
  }
  std::vector<int> total(n, 0);
  for (std::size_t a = 0; a < n; ++a) total[a] = std::accumulate(w[a].begin(), w[a].end(), 0);

  std::vector<int> table(n, -1);
  std::set<int> free_patches;
  for (int id : board.patch_ids()) free_patches.insert(id);
  std::vector<bool> placed(n, false);

  for (std::size_t step = 0; step < n; ++step) {
    // Next qubit: strongest tie to the placed set, then busiest, then id.
    std::size_t pick = n;
    std::pair<int, int> best{-1, -1};
    for (std::size_t q = 0; q < n; ++q) {
      if (placed[q]) continue;
      int tie = 0;
      for (std::size_t p = 0; p < n; ++p)
        if (placed[p]) tie += w[q][p];
      const std::pair<int, int> key{tie, total[q]};
      if (key > best) {
        best = key;
        pick = q;
      }
    }
    // Patch minimising weighted distance to placed partners.
    int best_patch = -1;
    std::tuple<long, int, int> best_cost{0, 0, 0};
    for (int id : free_patches) {
      const Patch& pt = board.patch(id);
      long cost = 0;
      for (std::size_t p = 0; p < n; ++p)
        if (placed[p] && w[pick][p]) cost += static_cast<long>(w[pick][p]) * manhattan(pt.anchor(), board.patch(table[p]).anchor());
      const std::tuple<long, int, int> key{cost, ancilla_distance(board, pt), id};
      if (best_patch < 0 || key < best_cost) {
        best_cost = key;
        best_patch = id;
      }
    }
    table[pick] = best_patch;
    placed[pick] = true;
    free_patches.erase(best_patch);
  }
  return QubitMap(std::move(table));
}

QubitMap identity_map(std::size_t n, const Board& board) {
  require_capacity(n, board);
  const auto ids = board.patch_ids();
  return QubitMap(std::vector<int>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n)));
}

QubitMap make_map(MappingKind kind, const PDag& dag, const Board& board) {
  switch (kind) {
    case MappingKind::edge_aware: return edge_aware_map(dag, board);
    case MappingKind::greedy: return greedy_map(dag, board);
    case MappingKind::identity: return identity_map(dag.num_qubits(), board);
  }
  return {};
}

void check_map(const QubitMap& map, const Board& board) {
  std::set<int> seen;
  for (std::size_t q = 0; q < map.num_qubits(); ++q) {
    const int p = map.patch_of(q);
    if (!board.has_patch(p)) throw ValidationError("mapping", "qubit " + std::to_string(q) + " maps to missing patch " + std::to_string(p));
    if (!seen.insert(p).second) throw ValidationError("mapping", "patch " + std::to_string(p) + " is used twice");
  }
}

YAccess y_access(const Board& board, const QubitMap& map) {
  const BoardAnalysis an = analyze(board);
  YAccess access = YAccess::none(map.num_qubits());
  for (std::size_t q = 0; q < map.num_qubits(); ++q) {
    const auto& e = an.exposure.at(map.patch_of(q));
    access.y_capable[q] = e.x && e.z;
  }
  return access;
}

}  // namespace latsurg
