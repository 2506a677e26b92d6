#include "latsurg/pdag.hpp"

#include <limits>
#include <sstream>

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

PDag::PDag(const PbcProgram& program) : n_(program.num_qubits()) {
  const std::size_t l = program.size();
  nodes_.resize(l);
  indegree_.assign(l, 0);
  removed_.assign(l, false);
  remaining_ = l;
  std::vector<std::size_t> last(n_, kNone);
  for (std::size_t i = 0; i < l; ++i) {
    PDagNode& node = nodes_[i];
    node.id = i;
    node.op = program[i];
    for (std::size_t q : node.op.word().support()) {
      const std::size_t j = last[q];
      last[q] = i;
      if (j == kNone) continue;
      // A multi-qubit overlap yields one edge, not one per shared qubit.
      bool seen = false;
      for (std::size_t p : node.predecessors) seen |= p == j;
      if (seen) continue;
      node.predecessors.push_back(j);
      nodes_[j].successors.push_back(i);
    }
    indegree_[i] = node.predecessors.size();
    if (indegree_[i] == 0) frontier_.insert(i);
  }
}

std::size_t PDag::edge_count() const {
  std::size_t e = 0;
  for (const auto& n : nodes_) e += n.successors.size();
  return e;
}

PDagNode PDag::pop_executable() {
  if (frontier_.empty()) throw EmptyDagError("pop_executable on an empty dag");
  const std::size_t id = *frontier_.begin();
  remove(id);
  return nodes_[id];
}

void PDag::remove(std::size_t id) {
  if (!frontier_.count(id)) throw ContractViolation("pdag", "node " + std::to_string(id) + " is not executable");
  frontier_.erase(id);
  removed_[id] = true;
  --remaining_;
  for (std::size_t s : nodes_[id].successors)
    if (--indegree_[s] == 0) frontier_.insert(s);
}

std::string PDag::to_dot() const {
  std::ostringstream out;
  out << "digraph pdag {\n  node [shape=box, fontname=monospace];\n";
  for (const auto& n : nodes_) {
    out << "  n" << n.id << " [label=\"" << n.id << ": " << n.op.str() << "\"";
    if (removed_[n.id]) out << ", style=dashed";
    out << "];\n";
  }
  for (const auto& n : nodes_)
    for (std::size_t s : n.successors) out << "  n" << n.id << " -> n" << s << ";\n";
  out << "}\n";
  return out.str();
}

PDag build_pdag(const PbcProgram& program) { return PDag(program); }

std::vector<std::size_t> rotation_demand(const PDag& dag) {
  std::vector<std::size_t> demand(dag.num_qubits(), 0);
  std::vector<Letter> prev(dag.num_qubits(), Letter::I);
  for (const auto& node : dag.nodes()) {
    for (std::size_t q : node.op.word().support()) {
      const Letter l = node.op.word().get(q);
      const Letter p = prev[q];
      if (p == Letter::I) {
        if (l == Letter::Y) ++demand[q];
      } else if (p != l) {
        ++demand[q];
      }
      prev[q] = l;
    }
  }
  return demand;
}

}  // namespace latsurg
