#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "latsurg/circuit.hpp"

namespace latsurg {

struct PDagNode {
  std::size_t id = 0;  // index in the source program
  PauliOperator op;
  std::vector<std::size_t> predecessors;
  std::vector<std::size_t> successors;
};

// Dependency DAG over a PBC program. Node i depends on node j < i iff some
// qubit is touched by both and by nothing in between.
class PDag {
 public:
  PDag() = default;
  explicit PDag(const PbcProgram& program);

  std::size_t num_qubits() const { return n_; }
  std::size_t total_nodes() const { return nodes_.size(); }
  std::size_t remaining() const { return remaining_; }
  bool empty() const { return remaining_ == 0; }

  const PDagNode& node(std::size_t id) const { return nodes_.at(id); }
  const std::vector<PDagNode>& nodes() const { return nodes_; }
  bool removed(std::size_t id) const { return removed_.at(id); }
  std::size_t edge_count() const;

  // Executable node ids, ascending.
  std::vector<std::size_t> frontier() const { return {frontier_.begin(), frontier_.end()}; }
  bool in_frontier(std::size_t id) const { return frontier_.count(id) != 0; }

  // Removes and returns the frontier node with the lowest index.
  PDagNode pop_executable();
  // Removes a specific frontier node. Throws ContractViolation otherwise.
  void remove(std::size_t id);

  std::string to_dot() const;

 private:
  std::size_t n_ = 0;
  std::vector<PDagNode> nodes_;
  std::vector<std::size_t> indegree_;
  std::vector<bool> removed_;
  std::set<std::size_t> frontier_;
  std::size_t remaining_ = 0;
};

PDag build_pdag(const PbcProgram& program);

// Per-qubit count of access-type switches (X <-> Z, into or out of Y) along
// the qubit's operator chain. A leading Y counts as one switch.
std::vector<std::size_t> rotation_demand(const PDag& dag);

}  // namespace latsurg
