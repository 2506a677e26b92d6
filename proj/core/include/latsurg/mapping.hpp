#pragma once

#include <string>
#include <vector>

#include "latsurg/board.hpp"
#include "latsurg/pdag.hpp"
#include "latsurg/ysynth.hpp"

namespace latsurg {

// Bijection from logical qubits to board patches.
class QubitMap {
 public:
  QubitMap() = default;
  explicit QubitMap(std::vector<int> qubit_to_patch);

  std::size_t num_qubits() const { return to_patch_.size(); }
  int patch_of(std::size_t qubit) const { return to_patch_.at(qubit); }
  // Qubit on a patch, or -1.
  int qubit_of(int patch) const;
  const std::vector<int>& table() const { return to_patch_; }

  bool operator==(const QubitMap&) const = default;

 private:
  std::vector<int> to_patch_;
};

enum class MappingKind { edge_aware, greedy, identity };
MappingKind parse_mapping_kind(const std::string& name);
std::string mapping_kind_name(MappingKind kind);

// Qubits by rotation demand (descending), patches by exposure class (both
// edges, one edge, none) and then Manhattan distance to the ancilla; paired
// rank to rank.
QubitMap edge_aware_map(const PDag& dag, const Board& board);

// Interaction-weighted greedy placement: heavily interacting qubits land on
// mutually close patches, the first one next to the ancilla.
QubitMap greedy_map(const PDag& dag, const Board& board);

// Qubit i on the i-th patch in id order.
QubitMap identity_map(std::size_t num_qubits, const Board& board);

QubitMap make_map(MappingKind kind, const PDag& dag, const Board& board);

// Throws ValidationError unless the map is a bijection onto existing patches.
void check_map(const QubitMap& map, const Board& board);

// Y access implied by a mapping: a qubit keeps Y letters iff its patch
// exposes both edge types.
YAccess y_access(const Board& board, const QubitMap& map);

}  // namespace latsurg
