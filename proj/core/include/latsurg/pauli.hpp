#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace latsurg {

// Letter encoding is (x_bit | z_bit << 1): I=0, X=1, Z=2, Y=3.
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char letter_char(Letter l);
Letter letter_from_char(char c);

// n-qubit Pauli word in symplectic form: two packed bit-vectors.
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::size_t num_qubits);

  static PauliWord from_string(std::string_view letters);
  // Single-letter word on qubit `q` of an n-qubit register.
  static PauliWord single(std::size_t num_qubits, std::size_t q, Letter l);

  std::size_t num_qubits() const { return n_; }
  Letter get(std::size_t q) const;
  void set(std::size_t q, Letter l);
  bool x(std::size_t q) const;
  bool z(std::size_t q) const;

  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  bool is_identity() const;
  // True iff every non-identity letter is Z.
  bool is_z_type() const;
  bool overlaps(const PauliWord& other) const;

  std::span<const std::uint64_t> xs() const { return x_; }
  std::span<const std::uint64_t> zs() const { return z_; }

  std::string str() const;

  bool operator==(const PauliWord&) const = default;
  std::strong_ordering operator<=>(const PauliWord& o) const;

  PauliWord& operator^=(const PauliWord& o);

 private:
  friend struct PhasedPauli;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

// i^phase_exp * word.
struct PhasedPauli {
  PauliWord word;
  int phase_exp = 0;  // mod 4

  bool operator==(const PhasedPauli&) const = default;
};

void check_same_size(const PauliWord& a, const PauliWord& b);

// Exact product a*b with phase.
PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b);

// Symplectic inner product parity test.
bool commutes(const PauliWord& a, const PauliWord& b);

enum class OpKind : std::uint8_t { rotation, measurement };

// A Pauli product rotation exp(-i*theta*P) with theta = eighths*pi/8, or a
// Pauli product measurement of +P / -P. The word always carries phase +1; the
// sign lives in the angle (rotation) or in `negated` (measurement).
class PauliOperator {
 public:
  PauliOperator() = default;

  static PauliOperator rotation(PauliWord word, int eighths);
  static PauliOperator measurement(PauliWord word, bool negated = false);
  // Parses `<angle> <word>`, angle in {pi/8,-pi/8,pi/4,-pi/4,pi/2,M,-M}.
  static PauliOperator parse(std::string_view text);

  const PauliWord& word() const { return word_; }
  PauliWord& mutable_word() { return word_; }
  OpKind kind() const { return kind_; }
  bool is_measurement() const { return kind_ == OpKind::measurement; }
  bool is_rotation() const { return kind_ == OpKind::rotation; }
  // Canonical numerator in (-4, 4]; rotations are taken mod pi (global phase).
  int eighths() const { return eighths_; }
  bool negated() const { return negated_; }
  std::size_t num_qubits() const { return word_.num_qubits(); }

  bool is_identity_rotation() const { return is_rotation() && eighths_ == 0; }
  bool is_t_like() const { return is_rotation() && (eighths_ == 1 || eighths_ == -1); }
  bool is_quarter() const { return is_rotation() && (eighths_ == 2 || eighths_ == -2); }
  bool is_pauli_rotation() const { return is_rotation() && eighths_ == 4; }
  bool is_clifford() const { return is_quarter() || is_pauli_rotation(); }

  // Negate the operator sign: P_theta -> P_-theta, M(P) -> M(-P).
  void flip_sign();
  PauliOperator flipped() const;
  void set_eighths(int eighths);
  void set_word(PauliWord w) { word_ = std::move(w); }

  std::string angle_str() const;
  std::string str() const;

  bool operator==(const PauliOperator&) const = default;

 private:
  PauliWord word_;
  OpKind kind_ = OpKind::rotation;
  int eighths_ = 0;
  bool negated_ = false;
};

int canonical_eighths(int eighths);

// Applies a phased word to an operator: the result has word `p.word` and, if
// p's phase is i^2, a flipped sign. Contract: phase must be real (0 or 2).
PauliOperator with_signed_word(const PauliOperator& like, const PhasedPauli& p);

// Moves the Clifford `clifford` (angle +-pi/4) rightward past `target`:
// returns clifford^dagger * target * clifford, i.e. (iPP')_theta on
// anticommuting words and `target` unchanged otherwise.
PauliOperator conjugate_past(const PauliOperator& clifford,
                             const PauliOperator& target);

// Pauli-frame version for an angle-pi/2 rotation: flips the sign of an
// anticommuting target.
PauliOperator conjugate_past_pauli(const PauliWord& pauli,
                                   const PauliOperator& target);

// Canonical form: word phase +1, rotation numerator in (-4, 4].
PauliOperator canonical(const PauliOperator& op);

}  // namespace latsurg
