#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "latsurg/circuit.hpp"

namespace latsurg {

// Cuccaro ripple-carry adder on 2*bits + 2 qubits.
GateCircuit ripple_adder(std::size_t bits);
// First-order Trotter steps of a transverse-field Ising chain, with T as the
// rotation angle.
GateCircuit ising_chain(std::size_t n, std::size_t steps);
// Hadamards and controlled-S layers of a QFT; smaller angles are dropped.
GateCircuit qft_fragment(std::size_t n);
// Swap test between two k-qubit registers with one control qubit.
GateCircuit swap_test(std::size_t k);
// Seeded uniform mix of h, s, t, tdg, cx.
GateCircuit random_clifford_t(std::size_t n, std::size_t gates, std::uint64_t seed);

// Named circuits: adder<bits>, ising<n>, qft<n>, swap<k>,
// random-<n>-<gates>-<seed>. Throws ConfigError otherwise.
GateCircuit benchmark_circuit(const std::string& name);
// The in-repo suite, 4 to 10 qubits.
std::vector<std::string> benchmark_suite();

}  // namespace latsurg
