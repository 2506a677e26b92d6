#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "latsurg/circuit.hpp"
#include "latsurg/pdag.hpp"

namespace latsurg {

enum class YMode { bipartite, naive, off };

YMode parse_y_mode(const std::string& name);
std::string y_mode_name(YMode mode);

// Which qubits may keep a Y letter (their patch can reach X and Z edges at
// once). Y letters on the other qubits are rewritten.
struct YAccess {
  std::vector<bool> y_capable;

  static YAccess none(std::size_t n) { return {std::vector<bool>(n, false)}; }
  static YAccess all(std::size_t n) { return {std::vector<bool>(n, true)}; }
  bool restricted(std::size_t q) const { return q >= y_capable.size() || !y_capable[q]; }
};

using QubitGroup = std::vector<std::size_t>;

// P == L * core * R (in program order) with L = (Z_b)_{-pi/4} and
// R = (Z_b)_{+pi/4} for each non-empty group b.
struct YDecomposition {
  std::size_t source = 0;
  QubitGroup b1;
  QubitGroup b2;
  std::vector<PauliOperator> left;
  PauliOperator core;
  std::vector<PauliOperator> right;

  std::vector<PauliOperator> sequence() const;
};

// Rewrites the Y letters on the union of b1 and b2 (each of odd size).
YDecomposition decompose_y(const PauliOperator& op, const QubitGroup& b1, const QubitGroup& b2);

// Groups whose conjugation rotation would be absorbed by a neighbour:
// `before` lists groups absorbing a left rotation, `after` groups absorbing a
// right one.
struct BipartitionContext {
  std::vector<QubitGroup> before;
  std::vector<QubitGroup> after;
};

// Picks the odd/odd split of an even-sized Y index set with the most
// absorbed rotations. Ties: smaller b1, then lexicographically smaller b1.
std::pair<QubitGroup, QubitGroup> choose_bipartition(const QubitGroup& y_indices,
                                                     const BipartitionContext& context);

std::size_t absorbed_count(const QubitGroup& b1, const QubitGroup& b2, const BipartitionContext& context);

// Merges operators with identical words that are adjacent once
// disjoint-support operators are skipped. Angle sums of pi/2 become Pauli
// frame flips on later operators.
PbcProgram pauli_synthesis(const PbcProgram& program);

// Y decomposition with neighbour-aware bipartitions followed by
// pauli_synthesis.
PbcProgram y_synthesize(const PbcProgram& program, const PDag& dag, const YAccess& access);
PbcProgram y_synthesize(const PbcProgram& program, const YAccess& access);

// Fixed {first} / rest split with no synthesis.
PbcProgram naive_y_decompose(const PbcProgram& program, const YAccess& access);

PbcProgram apply_y_mode(const PbcProgram& program, const YAccess& access, YMode mode);

// Restricted Y positions of an operator.
QubitGroup restricted_y_indices(const PauliOperator& op, const YAccess& access);

}  // namespace latsurg
