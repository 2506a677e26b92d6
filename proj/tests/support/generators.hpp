#pragma once

// Seeded random generators for property tests.

#include <cstdint>
#include <random>
#include <string>

#include "latsurg/board.hpp"
#include "latsurg/circuit.hpp"
#include "latsurg/layout_io.hpp"
#include "latsurg/pauli.hpp"

namespace latsurg::testing {

inline PauliWord random_word(std::mt19937_64& rng, std::size_t n, bool allow_identity = false) {
  for (;;) {
    PauliWord w(n);
    for (std::size_t q = 0; q < n; ++q) w.set(q, static_cast<Letter>(rng() % 4));
    if (allow_identity || !w.is_identity()) return w;
  }
}

// Random operator with an angle in {+-pi/8, +-pi/4, pi/2} or a measurement.
inline PauliOperator random_operator(std::mt19937_64& rng, std::size_t n, bool allow_measure = true) {
  PauliWord w = random_word(rng, n);
  static constexpr int kEighths[] = {1, -1, 2, -2, 4};
  const auto pick = rng() % (allow_measure ? 6 : 5);
  if (pick == 5) return PauliOperator::measurement(std::move(w), rng() % 2 == 0);
  return PauliOperator::rotation(std::move(w), kEighths[pick]);
}

// Rotations only, angles drawn from `eighths`.
inline PbcProgram random_rotations(std::mt19937_64& rng, std::size_t n, std::size_t count,
                                   std::initializer_list<int> eighths = {1, -1, 2, -2, 4}) {
  PbcProgram p(n);
  const std::vector<int> angles(eighths);
  for (std::size_t i = 0; i < count; ++i)
    p.push_back(PauliOperator::rotation(random_word(rng, n), angles[rng() % angles.size()]));
  return p;
}

inline GateCircuit random_gates(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  GateCircuit c(n);
  static constexpr GateKind kOne[] = {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::T,
                                      GateKind::Tdg, GateKind::X, GateKind::Y, GateKind::Z};
  for (std::size_t i = 0; i < count; ++i) {
    if (n >= 2 && rng() % 4 == 0) {
      const std::size_t a = rng() % n;
      std::size_t b = rng() % (n - 1);
      if (b >= a) ++b;
      c.cx(a, b);
    } else {
      c.add(kOne[rng() % 8], rng() % n);
    }
  }
  return c;
}

// Measurement-only program over X/Z letters: every patch-op path is
// exercised without Y handling.
inline PbcProgram random_xz_program(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  PbcProgram p(n);
  for (std::size_t i = 0; i < count; ++i) {
    PauliWord w(n);
    for (std::size_t q = 0; q < n; ++q) {
      const auto l = rng() % 3;
      if (l == 1) w.set(q, Letter::X);
      if (l == 2) w.set(q, Letter::Z);
    }
    if (w.is_identity()) w.set(rng() % n, Letter::Z);
    const auto kind = rng() % 3;
    p.push_back(kind == 0 ? PauliOperator::rotation(w, rng() % 2 ? 1 : -1)
                : kind == 1 ? PauliOperator::rotation(w, rng() % 2 ? 2 : -2)
                            : PauliOperator::measurement(w));
  }
  return p;
}

// Compact board for the five-qubit Z-parity measurement.
inline Board compact_example_board() {
  return parse_layout_text("Q0v Q1v Q2v M . A\n. . . . . .\nQ5v Q6v Q7v Q8v Q3v Q4v\n");
}

// Irregular board for the same measurement.
inline Board irregular_example_board() {
  return parse_layout_text("Q1h Q2h Q3h Q4h #\n. . . . Q0h\nA . M Q5v .\n");
}

inline PbcProgram z_measurement(std::size_t n, std::size_t k) {
  PauliWord w(n);
  for (std::size_t q = 0; q < k; ++q) w.set(q, Letter::Z);
  PbcProgram p(n);
  p.push_back(PauliOperator::measurement(w));
  return p;
}

}  // namespace latsurg::testing
