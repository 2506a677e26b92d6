#pragma once

#include <cstddef>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "latsurg/circuit.hpp"

namespace latsurg {

using DenseUnitary = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Largest register the dense oracle accepts.
inline constexpr std::size_t kOracleMaxQubits = 8;

// Qubit 0 is the least significant bit of the basis index.
DenseUnitary pauli_matrix(const PauliWord& word);
DenseUnitary rotation_matrix(const PauliOperator& rotation);
DenseUnitary gate_matrix(const Gate& gate, std::size_t num_qubits);

// Product of the rotations in program order (the first op acts first).
// Throws SizeError above kOracleMaxQubits, ContractViolation on a measurement.
DenseUnitary program_unitary(const PbcProgram& program);
// Unitary part of a gate circuit; measurements are ignored.
DenseUnitary circuit_unitary(const GateCircuit& circuit);

bool is_unitary(const DenseUnitary& u, double tol = 1e-9);
bool equivalent_up_to_phase(const DenseUnitary& a, const DenseUnitary& b, double tol = 1e-9);

// Outcome bitstrings ('0' = +1 eigenvalue) of the measurements in order,
// starting from |0...0>.
using OutcomeDistribution = std::map<std::string, double>;
OutcomeDistribution outcome_distribution(const PbcProgram& program);
// Z measurements of a gate circuit in gate order.
OutcomeDistribution outcome_distribution(const GateCircuit& circuit);
double distribution_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

}  // namespace latsurg
