#include "latsurg/transpiler.hpp"

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {

PauliOperator rot1(std::size_t n, std::size_t q, Letter l, int eighths) {
  return PauliOperator::rotation(PauliWord::single(n, q, l), eighths);
}

}  // namespace

std::vector<PauliOperator> decompose_gate(const Gate& g, std::size_t n) {
  switch (g.kind) {
    case GateKind::S: return {rot1(n, g.q0, Letter::Z, 2)};
    case GateKind::Sdg: return {rot1(n, g.q0, Letter::Z, -2)};
    case GateKind::T: return {rot1(n, g.q0, Letter::Z, 1)};
    case GateKind::Tdg: return {rot1(n, g.q0, Letter::Z, -1)};
    case GateKind::X: return {rot1(n, g.q0, Letter::X, 4)};
    case GateKind::Y: return {rot1(n, g.q0, Letter::Y, 4)};
    case GateKind::Z: return {rot1(n, g.q0, Letter::Z, 4)};
    case GateKind::H:
      return {rot1(n, g.q0, Letter::Z, 2), rot1(n, g.q0, Letter::X, 2), rot1(n, g.q0, Letter::Z, 2)};
    case GateKind::CX: {
      PauliWord zx(n);
      zx.set(g.q0, Letter::Z);
      zx.set(g.q1, Letter::X);
      return {PauliOperator::rotation(zx, 2), rot1(n, g.q1, Letter::X, -2), rot1(n, g.q0, Letter::Z, -2)};
    }
    case GateKind::Measure: return {PauliOperator::measurement(PauliWord::single(n, g.q0, Letter::Z))};
  }
  throw UnsupportedGateError("unsupported gate kind");
}

PbcProgram decompose_circuit(const GateCircuit& circuit) {
  PbcProgram out(circuit.num_qubits());
  for (const Gate& g : circuit.gates())
    for (auto& op : decompose_gate(g, circuit.num_qubits())) out.push_back(std::move(op));
  return out;
}

CliffordAbsorption absorb_cliffords_tracked(const PbcProgram& program) {
  // [C1..Cm, T] == [C1^dag..Cm^dag T Cm..C1, C1..Cm]: conjugate by the most
  // recent Clifford first.
  std::vector<PauliOperator> frame;
  PbcProgram out(program.num_qubits());
  for (const PauliOperator& op : program.ops()) {
    if (op.is_identity_rotation()) continue;
    if (op.is_rotation() && op.is_clifford()) {
      frame.push_back(op);
      continue;
    }
    PauliOperator moved = op;
    for (auto it = frame.rbegin(); it != frame.rend(); ++it) {
      moved = it->is_pauli_rotation() ? conjugate_past_pauli(it->word(), moved) : conjugate_past(*it, moved);
    }
    out.push_back(std::move(moved));
  }
  return {std::move(out), std::move(frame)};
}

PbcProgram absorb_cliffords(const PbcProgram& program) { return absorb_cliffords_tracked(program).program; }

GateCircuit with_default_measurements(const GateCircuit& circuit) {
  if (circuit.has_measurements()) return circuit;
  GateCircuit out = circuit;
  for (std::size_t q = 0; q < circuit.num_qubits(); ++q) out.measure(q);
  return out;
}

PbcProgram transpile(const GateCircuit& circuit) {
  circuit.validate();
  return absorb_cliffords(decompose_circuit(with_default_measurements(circuit)));
}

}  // namespace latsurg
