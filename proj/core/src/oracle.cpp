#include "latsurg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {

using cd = std::complex<double>;

void check_size(std::size_t n) {
  if (n > kOracleMaxQubits)
    throw SizeError("dense oracle supports at most " + std::to_string(kOracleMaxQubits) + " qubits, got " +
                    std::to_string(n));
}

std::size_t dim(std::size_t n) { return std::size_t{1} << n; }

// P|b> = phase(b) |b ^ xmask>.
void pauli_action(const PauliWord& w, std::size_t& xmask, std::vector<cd>& phase) {
  const std::size_t n = w.num_qubits();
  xmask = 0;
  for (std::size_t q = 0; q < n; ++q)
    if (w.x(q)) xmask |= std::size_t{1} << q;
  phase.assign(dim(n), cd(1, 0));
  for (std::size_t b = 0; b < dim(n); ++b) {
    cd ph(1, 0);
    for (std::size_t q = 0; q < n; ++q) {
      const bool bit = (b >> q) & 1U;
      switch (w.get(q)) {
        case Letter::I:
        case Letter::X: break;
        case Letter::Z: if (bit) ph = -ph; break;
        case Letter::Y: ph *= bit ? cd(0, -1) : cd(0, 1); break;
      }
    }
    phase[b] = ph;
  }
}

DenseUnitary single_qubit(const Eigen::Matrix2cd& m, std::size_t q, std::size_t n) {
  DenseUnitary u = DenseUnitary::Zero(dim(n), dim(n));
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t b = 0; b < dim(n); ++b) {
    const std::size_t in = (b & bit) ? 1 : 0;
    for (std::size_t out = 0; out < 2; ++out) {
      const std::size_t row = out ? (b | bit) : (b & ~bit);
      u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(b)) += m(static_cast<Eigen::Index>(out),
                                                                           static_cast<Eigen::Index>(in));
    }
  }
  return u;
}

// Projects `state` onto the (+/-) eigenspace of a signed Pauli.
StateVector project(const StateVector& state, const PauliWord& w, bool negated, bool minus) {
  std::size_t xmask = 0;
  std::vector<cd> phase;
  pauli_action(w, xmask, phase);
  StateVector ps = StateVector::Zero(state.size());
  for (Eigen::Index b = 0; b < state.size(); ++b)
    ps(static_cast<Eigen::Index>(static_cast<std::size_t>(b) ^ xmask)) += phase[static_cast<std::size_t>(b)] * state(b);
  const double s = (negated ? -1.0 : 1.0) * (minus ? -1.0 : 1.0);
  return 0.5 * (state + s * ps);
}

struct Branch {
  StateVector state;
  std::string bits;
};

OutcomeDistribution run_branches(std::size_t n, const std::vector<PauliOperator>& ops) {
  StateVector init = StateVector::Zero(static_cast<Eigen::Index>(dim(n)));
  init(0) = 1.0;
  std::vector<Branch> branches{{init, ""}};
  for (const auto& op : ops) {
    if (op.is_rotation()) {
      const DenseUnitary r = rotation_matrix(op);
      for (auto& br : branches) br.state = r * br.state;
      continue;
    }
    std::vector<Branch> next;
    for (const auto& br : branches) {
      for (int outcome = 0; outcome < 2; ++outcome) {
        StateVector s = project(br.state, op.word(), op.negated(), outcome == 1);
        if (s.squaredNorm() < 1e-24) continue;
        next.push_back({std::move(s), br.bits + static_cast<char>('0' + outcome)});
      }
    }
    branches = std::move(next);
  }
  OutcomeDistribution dist;
  for (const auto& br : branches) dist[br.bits] += br.state.squaredNorm();
  return dist;
}

}  // namespace

DenseUnitary pauli_matrix(const PauliWord& word) {
  const std::size_t n = word.num_qubits();
  check_size(n);
  std::size_t xmask = 0;
  std::vector<cd> phase;
  pauli_action(word, xmask, phase);
  DenseUnitary m = DenseUnitary::Zero(static_cast<Eigen::Index>(dim(n)), static_cast<Eigen::Index>(dim(n)));
  for (std::size_t b = 0; b < dim(n); ++b)
    m(static_cast<Eigen::Index>(b ^ xmask), static_cast<Eigen::Index>(b)) = phase[b];
  return m;
}

DenseUnitary rotation_matrix(const PauliOperator& rotation) {
  if (!rotation.is_rotation()) throw ContractViolation("oracle", "rotation_matrix needs a rotation, got " + rotation.str());
  const std::size_t n = rotation.num_qubits();
  check_size(n);
  const double theta = rotation.eighths() * M_PI / 8.0;
  const auto d = static_cast<Eigen::Index>(dim(n));
  return std::cos(theta) * DenseUnitary::Identity(d, d) - cd(0, std::sin(theta)) * pauli_matrix(rotation.word());
}

DenseUnitary gate_matrix(const Gate& g, std::size_t n) {
  check_size(n);
  const double r = 1.0 / std::sqrt(2.0);
  const cd i(0, 1);
  Eigen::Matrix2cd m;
  switch (g.kind) {
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::S: m << 1, 0, 0, i; break;
    case GateKind::Sdg: m << 1, 0, 0, -i; break;
    case GateKind::T: m << 1, 0, 0, std::exp(i * (M_PI / 4)); break;
    case GateKind::Tdg: m << 1, 0, 0, std::exp(-i * (M_PI / 4)); break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -i, i, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::Measure: {
      const auto d = static_cast<Eigen::Index>(dim(n));
      return DenseUnitary::Identity(d, d);
    }
    case GateKind::CX: {
      const auto d = static_cast<Eigen::Index>(dim(n));
      DenseUnitary u = DenseUnitary::Zero(d, d);
      const std::size_t c = std::size_t{1} << g.q0;
      const std::size_t t = std::size_t{1} << g.q1;
      for (std::size_t b = 0; b < dim(n); ++b)
        u(static_cast<Eigen::Index>((b & c) ? (b ^ t) : b), static_cast<Eigen::Index>(b)) = 1.0;
      return u;
    }
  }
  return single_qubit(m, g.q0, n);
}

DenseUnitary program_unitary(const PbcProgram& program) {
  const std::size_t n = program.num_qubits();
  check_size(n);
  const auto d = static_cast<Eigen::Index>(dim(n));
  DenseUnitary u = DenseUnitary::Identity(d, d);
  for (const auto& op : program.ops()) {
    if (op.is_measurement()) throw ContractViolation("oracle", "program_unitary got a measurement: " + op.str());
    u = rotation_matrix(op) * u;
  }
  return u;
}

DenseUnitary circuit_unitary(const GateCircuit& circuit) {
  const std::size_t n = circuit.num_qubits();
  check_size(n);
  const auto d = static_cast<Eigen::Index>(dim(n));
  DenseUnitary u = DenseUnitary::Identity(d, d);
  for (const auto& g : circuit.gates())
    if (g.kind != GateKind::Measure) u = gate_matrix(g, n) * u;
  return u;
}

bool is_unitary(const DenseUnitary& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - DenseUnitary::Identity(u.rows(), u.cols())).norm() < tol;
}

bool equivalent_up_to_phase(const DenseUnitary& a, const DenseUnitary& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < 1e-300) return a.norm() < tol;
  cd phase = a(r, c) / b(r, c);
  if (std::abs(phase) < 1e-300) return false;
  phase /= std::abs(phase);
  return (a - phase * b).norm() < tol;
}

OutcomeDistribution outcome_distribution(const PbcProgram& program) {
  check_size(program.num_qubits());
  return run_branches(program.num_qubits(), program.ops());
}

OutcomeDistribution outcome_distribution(const GateCircuit& circuit) {
  const std::size_t n = circuit.num_qubits();
  check_size(n);
  // Measurements form the final layer, so the unitary can be applied first.
  StateVector s = StateVector::Zero(static_cast<Eigen::Index>(dim(n)));
  s(0) = 1.0;
  s = circuit_unitary(circuit) * s;
  std::vector<std::size_t> measured;
  for (const auto& g : circuit.gates())
    if (g.kind == GateKind::Measure) measured.push_back(g.q0);
  OutcomeDistribution dist;
  for (Eigen::Index b = 0; b < s.size(); ++b) {
    const double p = std::norm(s(b));
    if (p < 1e-24) continue;
    std::string bits;
    for (std::size_t q : measured) bits += ((static_cast<std::size_t>(b) >> q) & 1U) ? '1' : '0';
    dist[bits] += p;
  }
  return dist;
}

double distribution_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  std::set<std::string> keys;
  for (const auto& [k, v] : a) keys.insert(k);
  for (const auto& [k, v] : b) keys.insert(k);
  double worst = 0.0;
  for (const auto& k : keys) {
    const auto ia = a.find(k);
    const auto ib = b.find(k);
    const double pa = ia == a.end() ? 0.0 : ia->second;
    const double pb = ib == b.end() ? 0.0 : ib->second;
    worst = std::max(worst, std::abs(pa - pb));
  }
  return worst;
}

}  // namespace latsurg
