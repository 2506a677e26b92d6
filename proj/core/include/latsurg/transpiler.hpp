#pragma once

#include <vector>

#include "latsurg/circuit.hpp"
#include "latsurg/pauli.hpp"

namespace latsurg {

// Pauli-rotation image of one gate on an n-qubit register, in application
// order. Measurements map to a Z measurement.
std::vector<PauliOperator> decompose_gate(const Gate& gate, std::size_t num_qubits);

// Concatenated decomposition of every gate, without absorption.
PbcProgram decompose_circuit(const GateCircuit& circuit);

// Commutes every Clifford (+-pi/4, pi/2) rotation to the end of the program
// and drops it there. Non-Clifford rotations and measurements are rewritten
// as they are passed.
PbcProgram absorb_cliffords(const PbcProgram& program);

// Absorbed program plus the Cliffords it pushed past the end, in order:
// running `program` then `frame` equals the input.
struct CliffordAbsorption {
  PbcProgram program;
  std::vector<PauliOperator> frame;
};
CliffordAbsorption absorb_cliffords_tracked(const PbcProgram& program);

// decompose_circuit + absorb_cliffords. Appends a Z measurement on every
// qubit when the circuit has none.
PbcProgram transpile(const GateCircuit& circuit);

// The circuit with the default final Z layer appended if it has no
// measurements.
GateCircuit with_default_measurements(const GateCircuit& circuit);

}  // namespace latsurg
