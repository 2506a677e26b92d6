#include "latsurg/circuits.hpp"

#include <random>
#include <regex>

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {

void maj(GateCircuit& c, std::size_t a, std::size_t b, std::size_t d) {
  c.cx(d, b);
  c.cx(d, a);
  c.ccx(a, b, d);
}

void uma(GateCircuit& c, std::size_t a, std::size_t b, std::size_t d) {
  c.ccx(a, b, d);
  c.cx(d, a);
  c.cx(a, b);
}

void controlled_s(GateCircuit& c, std::size_t a, std::size_t b) {
  c.t(a);
  c.t(b);
  c.cx(a, b);
  c.tdg(b);
  c.cx(a, b);
}

}  // namespace

GateCircuit ripple_adder(std::size_t bits) {
  if (bits == 0) throw ConfigError("circuits", "adder needs at least one bit");
  // Layout: carry-in 0, then (b_i, a_i) pairs, carry-out last.
  const std::size_t n = 2 * bits + 2;
  GateCircuit c(n);
  auto a = [](std::size_t i) { return 2 * i + 2; };
  auto b = [](std::size_t i) { return 2 * i + 1; };
  for (std::size_t i = 0; i < bits; ++i) c.x(a(i));
  maj(c, 0, b(0), a(0));
  for (std::size_t i = 1; i < bits; ++i) maj(c, a(i - 1), b(i), a(i));
  c.cx(a(bits - 1), n - 1);
  for (std::size_t i = bits; i-- > 1;) uma(c, a(i - 1), b(i), a(i));
  uma(c, 0, b(0), a(0));
  return c;
}

GateCircuit ising_chain(std::size_t n, std::size_t steps) {
  if (n < 2) throw ConfigError("circuits", "ising chain needs at least two qubits");
  GateCircuit c(n);
  for (std::size_t q = 0; q < n; ++q) c.h(q);
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t q = 0; q + 1 < n; ++q) {
      c.cx(q, q + 1);
      c.t(q + 1);
      c.cx(q, q + 1);
    }
    for (std::size_t q = 0; q < n; ++q) {
      c.h(q);
      c.t(q);
      c.h(q);
    }
  }
  return c;
}

GateCircuit qft_fragment(std::size_t n) {
  if (n == 0) throw ConfigError("circuits", "qft needs at least one qubit");
  GateCircuit c(n);
  for (std::size_t q = 0; q < n; q += 2) c.x(q);
  for (std::size_t q = 0; q < n; ++q) {
    c.h(q);
    if (q + 1 < n) controlled_s(c, q + 1, q);
  }
  return c;
}

GateCircuit swap_test(std::size_t k) {
  if (k == 0) throw ConfigError("circuits", "swap test needs registers of at least one qubit");
  GateCircuit c(2 * k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    c.h(1 + i);
    c.t(1 + i);
    c.h(1 + k + i);
  }
  c.h(0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t x = 1 + i, y = 1 + k + i;
    c.cx(y, x);
    c.ccx(0, x, y);
    c.cx(y, x);
  }
  c.h(0);
  c.measure(0);
  return c;
}

GateCircuit random_clifford_t(std::size_t n, std::size_t gates, std::uint64_t seed) {
  if (n == 0) throw ConfigError("circuits", "random circuit needs at least one qubit");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, n > 1 ? 4 : 3);
  std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
  GateCircuit c(n);
  for (std::size_t g = 0; g < gates; ++g) {
    const std::size_t q = qubit(rng);
    switch (kind(rng)) {
      case 0: c.h(q); break;
      case 1: c.s(q); break;
      case 2: c.t(q); break;
      case 3: c.tdg(q); break;
      default: {
        std::size_t t = qubit(rng);
        while (t == q) t = qubit(rng);
        c.cx(q, t);
      }
    }
  }
  return c;
}

GateCircuit benchmark_circuit(const std::string& name) {
  std::smatch m;
  static const std::regex simple("(adder|ising|qft|swap)([0-9]+)");
  static const std::regex random("random-([0-9]+)-([0-9]+)-([0-9]+)");
  if (std::regex_match(name, m, simple)) {
    const auto v = static_cast<std::size_t>(std::stoul(m[2]));
    if (m[1] == "adder") return ripple_adder(v);
    if (m[1] == "ising") return ising_chain(v, 2);
    if (m[1] == "qft") return qft_fragment(v);
    return swap_test(v);
  }
  if (std::regex_match(name, m, random))
    return random_clifford_t(std::stoul(m[1]), std::stoul(m[2]), std::stoull(m[3]));
  throw ConfigError("circuits", "unknown benchmark '" + name + "'");
}

std::vector<std::string> benchmark_suite() { return {"adder1", "adder2", "ising6", "qft5", "swap2", "adder3", "ising8", "adder4"}; }

}  // namespace latsurg
