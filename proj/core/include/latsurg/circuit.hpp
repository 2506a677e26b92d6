#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "latsurg/pauli.hpp"

namespace latsurg {

enum class GateKind { H, S, Sdg, T, Tdg, X, Y, Z, CX, Measure };

std::string gate_name(GateKind kind);

struct Gate {
  GateKind kind;
  std::size_t q0 = 0;
  std::size_t q1 = 0;  // CX target

  bool operator==(const Gate&) const = default;
};

// Clifford+T gate list. Measurements may only form the final layer.
class GateCircuit {
 public:
  GateCircuit() = default;
  explicit GateCircuit(std::size_t num_qubits) : n_(num_qubits) {}

  std::size_t num_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }

  GateCircuit& add(GateKind kind, std::size_t q0, std::size_t q1 = 0);
  GateCircuit& h(std::size_t q) { return add(GateKind::H, q); }
  GateCircuit& s(std::size_t q) { return add(GateKind::S, q); }
  GateCircuit& sdg(std::size_t q) { return add(GateKind::Sdg, q); }
  GateCircuit& t(std::size_t q) { return add(GateKind::T, q); }
  GateCircuit& tdg(std::size_t q) { return add(GateKind::Tdg, q); }
  GateCircuit& x(std::size_t q) { return add(GateKind::X, q); }
  GateCircuit& y(std::size_t q) { return add(GateKind::Y, q); }
  GateCircuit& z(std::size_t q) { return add(GateKind::Z, q); }
  GateCircuit& cx(std::size_t c, std::size_t t) { return add(GateKind::CX, c, t); }
  GateCircuit& measure(std::size_t q) { return add(GateKind::Measure, q); }
  // Exact Clifford+T Toffoli (7 T gates).
  GateCircuit& ccx(std::size_t a, std::size_t b, std::size_t c);

  bool has_measurements() const;
  std::size_t t_count() const;
  // Throws ParseError if a unitary gate follows a measurement.
  void validate() const;

 private:
  std::size_t n_ = 0;
  std::vector<Gate> gates_;
};

// Pauli-based computation program: rotations followed by measurements.
class PbcProgram {
 public:
  PbcProgram() = default;
  explicit PbcProgram(std::size_t num_qubits) : n_(num_qubits) {}
  PbcProgram(std::size_t num_qubits, std::vector<PauliOperator> ops);

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliOperator>& ops() const { return ops_; }
  std::vector<PauliOperator>& mutable_ops() { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  const PauliOperator& operator[](std::size_t i) const { return ops_[i]; }

  void push_back(PauliOperator op);

  std::size_t rotation_count() const;
  std::size_t t_rotation_count() const;
  std::size_t measurement_count() const;
  // Program with every measurement removed.
  PbcProgram rotations_only() const;

  bool operator==(const PbcProgram&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliOperator> ops_;
};

// Native PBC text: one `<angle> <word>` per line, `#` comments, an optional
// `qubits N` directive (needed only for empty programs).
PbcProgram parse_pbc(std::string_view text);
std::string write_pbc(const PbcProgram& program);

// OpenQASM 2.0 subset: qreg/creg, h s sdg t tdg x y z cx, measure, barrier.
GateCircuit parse_qasm(std::string_view text);
std::string write_qasm(const GateCircuit& circuit);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace latsurg
