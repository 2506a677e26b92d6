#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "latsurg/circuit.hpp"
#include "latsurg/circuits.hpp"
#include "latsurg/errors.hpp"
#include "latsurg/oracle.hpp"
#include "latsurg/transpiler.hpp"

namespace latsurg {
namespace {

std::vector<std::string> strs(const std::vector<PauliOperator>& ops) {
  std::vector<std::string> out;
  for (const auto& op : ops) out.push_back(op.str());
  return out;
}

using Strings = std::vector<std::string>;

TEST(DecomposeGate, StandardDecompositions) {
  EXPECT_EQ(strs(decompose_gate({GateKind::H, 0}, 1)), (Strings{"pi/4 Z", "pi/4 X", "pi/4 Z"}));
  EXPECT_EQ(strs(decompose_gate({GateKind::CX, 0, 1}, 2)), (Strings{"pi/4 ZX", "-pi/4 IX", "-pi/4 ZI"}));
  EXPECT_EQ(strs(decompose_gate({GateKind::T, 2}, 3)), (Strings{"pi/8 IIZ"}));
  EXPECT_EQ(strs(decompose_gate({GateKind::Tdg, 0}, 1)), (Strings{"-pi/8 Z"}));
  EXPECT_EQ(strs(decompose_gate({GateKind::S, 0}, 1)), (Strings{"pi/4 Z"}));
  EXPECT_EQ(strs(decompose_gate({GateKind::Sdg, 0}, 1)), (Strings{"-pi/4 Z"}));
  EXPECT_EQ(strs(decompose_gate({GateKind::X, 0}, 1)), (Strings{"pi/2 X"}));
  EXPECT_EQ(strs(decompose_gate({GateKind::Y, 0}, 1)), (Strings{"pi/2 Y"}));
  EXPECT_EQ(strs(decompose_gate({GateKind::Z, 0}, 1)), (Strings{"pi/2 Z"}));
}

TEST(DecomposeGate, EachGateMatchesItsMatrix) {
  for (GateKind k : {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::X, GateKind::Y,
                     GateKind::Z}) {
    const Gate g{k, 1};
    EXPECT_TRUE(equivalent_up_to_phase(program_unitary(PbcProgram(2, decompose_gate(g, 2))), gate_matrix(g, 2)))
        << gate_name(k);
  }
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{0, 2}}) {
    const Gate g{GateKind::CX, static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
    EXPECT_TRUE(equivalent_up_to_phase(program_unitary(PbcProgram(3, decompose_gate(g, 3))), gate_matrix(g, 3)));
  }
}

TEST(DecomposeGate, MeasureAndRangeChecks) {
  EXPECT_ANY_THROW(decompose_gate({GateKind::H, 3}, 2));
  EXPECT_EQ(strs(decompose_gate({GateKind::Measure, 1}, 2)), (Strings{"M IZ"}));
}

TEST(AbsorbCliffords, CommutingCliffordIsDeleted) {
  const PbcProgram p(1, {PauliOperator::parse("pi/4 Z"), PauliOperator::parse("M Z")});
  EXPECT_EQ(strs(absorb_cliffords(p).ops()), (Strings{"M Z"}));
}

TEST(AbsorbCliffords, CliffordTurnsXIntoY) {
  const PbcProgram p(1, {PauliOperator::parse("pi/4 Z"), PauliOperator::parse("pi/8 X"), PauliOperator::parse("M Z")});
  const PbcProgram r = absorb_cliffords(p);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].word().str(), "Y");
  EXPECT_EQ(std::abs(r[0].eighths()), 1);
  EXPECT_EQ(r[1].str(), "M Z");
  EXPECT_LT(distribution_distance(outcome_distribution(p), outcome_distribution(r)), 1e-12);
}

TEST(AbsorbCliffords, TOnlyUnchanged) {
  PbcProgram p(2);
  p.push_back(PauliOperator::parse("pi/8 ZI"));
  p.push_back(PauliOperator::parse("-pi/8 IZ"));
  EXPECT_EQ(absorb_cliffords(p), p);
}

TEST(AbsorbCliffords, IdempotentOnRandomPrograms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 4;
    PbcProgram p = testing::random_rotations(rng, n, 1 + rng() % 12);
    for (std::size_t q = 0; q < n; ++q) p.push_back(PauliOperator::measurement(PauliWord::single(n, q, Letter::Z)));
    const PbcProgram once = absorb_cliffords(p);
    EXPECT_EQ(absorb_cliffords(once), once);
    for (const auto& op : once.ops()) EXPECT_TRUE(op.is_measurement() || op.is_t_like()) << op.str();
  }
}

TEST(AbsorbCliffords, TrackedFrameRestoresTheUnitary) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 3;
    const PbcProgram p = testing::random_rotations(rng, n, 1 + rng() % 10);
    const CliffordAbsorption a = absorb_cliffords_tracked(p);
    PbcProgram full = a.program;
    for (const auto& f : a.frame) full.push_back(f);
    EXPECT_TRUE(equivalent_up_to_phase(program_unitary(full), program_unitary(p)));
  }
}

TEST(Transpile, EmptyCircuitGetsDefaultMeasurements) {
  const PbcProgram p = transpile(GateCircuit(2));
  EXPECT_EQ(strs(p.ops()), (Strings{"M ZI", "M IZ"}));
}

TEST(Transpile, HadamardThenMeasureIsXMeasurement) {
  GateCircuit c(1);
  c.h(0).measure(0);
  const PbcProgram p = transpile(c);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].word().str(), "X");
  PbcProgram mx(1, {PauliOperator::parse("M X")});
  EXPECT_LT(distribution_distance(outcome_distribution(p), outcome_distribution(c)), 1e-12);
  EXPECT_LT(distribution_distance(outcome_distribution(p), outcome_distribution(mx)), 1e-12);
}

TEST(Transpile, QftFragmentKeepsTCount) {
  const GateCircuit c = qft_fragment(3);
  const std::size_t t = c.t_count();
  EXPECT_GE(t, 4u);
  const PbcProgram p = transpile(c);
  EXPECT_EQ(p.rotation_count(), t);
  const CliffordAbsorption a = absorb_cliffords_tracked(decompose_circuit(c));
  PbcProgram full = a.program.rotations_only();
  for (const auto& f : a.frame) full.push_back(f);
  GateCircuit unitary_part(c.num_qubits());
  for (const auto& g : c.gates())
    if (g.kind != GateKind::Measure) unitary_part.add(g.kind, g.q0, g.q1);
  EXPECT_TRUE(equivalent_up_to_phase(program_unitary(full), circuit_unitary(unitary_part)));
}

TEST(Transpile, RotationCountEqualsTCount) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const GateCircuit c = testing::random_gates(rng, 1 + rng() % 6, rng() % 40);
    const PbcProgram p = transpile(c);
    EXPECT_EQ(p.rotation_count(), c.t_count());
    EXPECT_EQ(p.t_rotation_count(), c.t_count());
  }
}

TEST(Transpile, OutcomeDistributionsMatchOracle) {
  std::mt19937_64 rng(2025);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 4;
    const GateCircuit c = testing::random_gates(rng, n, rng() % 21);
    const double d = distribution_distance(outcome_distribution(transpile(c)),
                                           outcome_distribution(with_default_measurements(c)));
    EXPECT_LT(d, 1e-9) << "case " << i;
  }
}

TEST(GateCircuit, MeasurementMustBeFinal) {
  GateCircuit c(1);
  c.measure(0).h(0);
  EXPECT_THROW(c.validate(), ParseError);
  EXPECT_THROW(transpile(c), ParseError);
}

TEST(GateCircuit, ToffoliIsExact) {
  GateCircuit c(3);
  c.ccx(0, 1, 2);
  EXPECT_EQ(c.t_count(), 7u);
  DenseUnitary expect = DenseUnitary::Identity(8, 8);
  // Qubit 0 is the least significant bit; flip bit 2 when bits 0 and 1 are set.
  expect(3, 3) = 0;
  expect(7, 7) = 0;
  expect(3, 7) = 1;
  expect(7, 3) = 1;
  EXPECT_TRUE(equivalent_up_to_phase(circuit_unitary(c), expect));
}

TEST(Qasm, ParsesSupportedSubset) {
  const GateCircuit c = parse_qasm(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n"
      "h q[0];\ncx q[0],q[1];\nt q[1];\ntdg q[0];\nbarrier q;\nmeasure q[0] -> c[0];\nmeasure q[1] -> c[1];\n");
  EXPECT_EQ(c.num_qubits(), 2u);
  ASSERT_EQ(c.gates().size(), 6u);
  EXPECT_EQ(c.gates()[1], (Gate{GateKind::CX, 0, 1}));
  EXPECT_EQ(parse_qasm(write_qasm(c)).gates(), c.gates());
}

TEST(Qasm, RejectsUnsupportedConstructs) {
  const std::string head = "OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\n";
  EXPECT_THROW(parse_qasm(head + "rz(0.3) q[0];\n"), UnsupportedGateError);
  EXPECT_THROW(parse_qasm(head + "if(c==1) x q[0];\n"), Error);
  EXPECT_THROW(parse_qasm(head + "h q[4];\n"), Error);
}

TEST(Pbc, TextRoundTrip) {
  const PbcProgram p = parse_pbc("# comment\nqubits 3\npi/8 XYZ\n\n-pi/4 IIZ  # trailing\nM ZZI\n");
  EXPECT_EQ(p.num_qubits(), 3u);
  EXPECT_EQ(strs(p.ops()), (Strings{"pi/8 XYZ", "-pi/4 IIZ", "M ZZI"}));
  EXPECT_EQ(parse_pbc(write_pbc(p)), p);
  EXPECT_EQ(parse_pbc("qubits 4\n").num_qubits(), 4u);
  EXPECT_THROW(parse_pbc("pi/8 XY\npi/8 XYZ\n"), Error);
  EXPECT_THROW(parse_pbc("pi/5 X\n"), ParseError);
}

}  // namespace
}  // namespace latsurg
