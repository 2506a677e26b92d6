#include "latsurg/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Z: return 'Z';
    case Letter::Y: return 'Y';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I':
    case '_': return Letter::I;
    case 'X': return Letter::X;
    case 'Y': return Letter::Y;
    case 'Z': return Letter::Z;
    default: throw ParseError("pauli", std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliWord::PauliWord(std::size_t num_qubits)
    : n_(num_qubits), x_(words_for(num_qubits), 0), z_(words_for(num_qubits), 0) {}

PauliWord PauliWord::from_string(std::string_view letters) {
  PauliWord w(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) w.set(q, letter_from_char(letters[q]));
  return w;
}

PauliWord PauliWord::single(std::size_t num_qubits, std::size_t q, Letter l) {
  PauliWord w(num_qubits);
  w.set(q, l);
  return w;
}

Letter PauliWord::get(std::size_t q) const {
  return static_cast<Letter>(static_cast<int>(x(q)) | (static_cast<int>(z(q)) << 1));
}

void PauliWord::set(std::size_t q, Letter l) {
  if (q >= n_) throw DimensionError("qubit index " + std::to_string(q) + " out of range");
  const std::uint64_t bit = std::uint64_t{1} << (q % kWordBits);
  const auto v = static_cast<int>(l);
  if (v & 1) x_[q / kWordBits] |= bit; else x_[q / kWordBits] &= ~bit;
  if (v & 2) z_[q / kWordBits] |= bit; else z_[q / kWordBits] &= ~bit;
}

bool PauliWord::x(std::size_t q) const { return (x_[q / kWordBits] >> (q % kWordBits)) & 1U; }
bool PauliWord::z(std::size_t q) const { return (z_[q / kWordBits] >> (q % kWordBits)) & 1U; }

std::size_t PauliWord::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
  return w;
}

std::vector<std::size_t> PauliWord::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    std::uint64_t m = x_[i] | z_[i];
    while (m) {
      out.push_back(i * kWordBits + std::countr_zero(m));
      m &= m - 1;
    }
  }
  return out;
}

bool PauliWord::is_identity() const {
  for (std::size_t i = 0; i < x_.size(); ++i)
    if (x_[i] | z_[i]) return false;
  return true;
}

bool PauliWord::is_z_type() const {
  return std::all_of(x_.begin(), x_.end(), [](std::uint64_t v) { return v == 0; });
}

bool PauliWord::overlaps(const PauliWord& other) const {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < x_.size(); ++i)
    if ((x_[i] | z_[i]) & (other.x_[i] | other.z_[i])) return true;
  return false;
}

std::string PauliWord::str() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = letter_char(get(q));
  return s;
}

std::strong_ordering PauliWord::operator<=>(const PauliWord& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  return str() <=> o.str();
}

PauliWord& PauliWord::operator^=(const PauliWord& o) {
  check_same_size(*this, o);
  for (std::size_t i = 0; i < x_.size(); ++i) {
    x_[i] ^= o.x_[i];
    z_[i] ^= o.z_[i];
  }
  return *this;
}

void check_same_size(const PauliWord& a, const PauliWord& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("Pauli words act on " + std::to_string(a.num_qubits()) + " and " +
                         std::to_string(b.num_qubits()) + " qubits");
  }
}

PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b) {
  check_same_size(a.word, b.word);
  const auto ax = a.word.xs();
  const auto az = a.word.zs();
  const auto bx = b.word.xs();
  const auto bz = b.word.zs();
  // Per qubit: XY=iZ, YZ=iX, ZX=iY; the reversed orders give -i.
  int forward = 0;
  int backward = 0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const std::uint64_t a_x = ax[i] & ~az[i], a_y = ax[i] & az[i], a_z = ~ax[i] & az[i];
    const std::uint64_t b_x = bx[i] & ~bz[i], b_y = bx[i] & bz[i], b_z = ~bx[i] & bz[i];
    forward += std::popcount((a_x & b_y) | (a_y & b_z) | (a_z & b_x));
    backward += std::popcount((a_y & b_x) | (a_z & b_y) | (a_x & b_z));
  }
  PhasedPauli out{a.word, 0};
  out.word ^= b.word;
  out.phase_exp = ((a.phase_exp + b.phase_exp + forward - backward) % 4 + 4) % 4;
  return out;
}

bool commutes(const PauliWord& a, const PauliWord& b) {
  check_same_size(a, b);
  const auto ax = a.xs(), az = a.zs(), bx = b.xs(), bz = b.zs();
  int parity = 0;
  for (std::size_t i = 0; i < ax.size(); ++i)
    parity ^= std::popcount((ax[i] & bz[i]) ^ (az[i] & bx[i])) & 1;
  return parity == 0;
}

int canonical_eighths(int eighths) {
  int k = ((eighths % 8) + 8) % 8;
  if (k > 4) k -= 8;
  return k;
}

PauliOperator PauliOperator::rotation(PauliWord word, int eighths) {
  PauliOperator op;
  op.word_ = std::move(word);
  op.kind_ = OpKind::rotation;
  op.eighths_ = canonical_eighths(eighths);
  return op;
}

PauliOperator PauliOperator::measurement(PauliWord word, bool negated) {
  PauliOperator op;
  op.word_ = std::move(word);
  op.kind_ = OpKind::measurement;
  op.negated_ = negated;
  return op;
}

PauliOperator PauliOperator::parse(std::string_view text) {
  const std::string line = trim(text);
  const auto space = line.find_first_of(" \t");
  if (space == std::string::npos) throw ParseError("pauli", "expected '<angle> <word>', got '" + line + "'");
  const std::string angle = line.substr(0, space);
  const std::string word = trim(std::string_view(line).substr(space));
  if (word.empty() || word.find_first_of(" \t") != std::string::npos)
    throw ParseError("pauli", "malformed Pauli word in '" + line + "'");
  PauliWord w = PauliWord::from_string(word);
  if (angle == "M") return measurement(std::move(w), false);
  if (angle == "-M") return measurement(std::move(w), true);
  if (angle == "pi/8") return rotation(std::move(w), 1);
  if (angle == "-pi/8") return rotation(std::move(w), -1);
  if (angle == "pi/4") return rotation(std::move(w), 2);
  if (angle == "-pi/4") return rotation(std::move(w), -2);
  if (angle == "pi/2" || angle == "-pi/2") return rotation(std::move(w), 4);
  throw ParseError("pauli", "unsupported angle '" + angle + "' (only multiples of pi/8 in "
                            "{pi/8,-pi/8,pi/4,-pi/4,pi/2} and M/-M are accepted)");
}

void PauliOperator::flip_sign() {
  if (is_measurement()) negated_ = !negated_;
  else eighths_ = canonical_eighths(-eighths_);
}

PauliOperator PauliOperator::flipped() const {
  PauliOperator op = *this;
  op.flip_sign();
  return op;
}

void PauliOperator::set_eighths(int eighths) { eighths_ = canonical_eighths(eighths); }

std::string PauliOperator::angle_str() const {
  if (is_measurement()) return negated_ ? "-M" : "M";
  switch (eighths_) {
    case 0: return "0";
    case 1: return "pi/8";
    case -1: return "-pi/8";
    case 2: return "pi/4";
    case -2: return "-pi/4";
    case 4: return "pi/2";
    default: return std::to_string(eighths_) + "pi/8";
  }
}

std::string PauliOperator::str() const { return angle_str() + " " + word_.str(); }

PauliOperator with_signed_word(const PauliOperator& like, const PhasedPauli& p) {
  if (p.phase_exp % 2 != 0)
    throw ContractViolation("pauli", "non-Hermitian phase i^" + std::to_string(p.phase_exp));
  PauliOperator out = like;
  out.set_word(p.word);
  if (p.phase_exp == 2) out.flip_sign();
  return out;
}

PauliOperator conjugate_past(const PauliOperator& clifford, const PauliOperator& target) {
  if (!clifford.is_quarter())
    throw ContractViolation("pauli", "conjugate_past requires a +-pi/4 rotation, got " + clifford.str());
  if (commutes(clifford.word(), target.word())) return target;
  // C = exp(-i s pi/4 P): C^dag P' C = s * i P P' for anticommuting P, P'.
  PhasedPauli prod = multiply({clifford.word(), 0}, {target.word(), 0});
  prod.phase_exp = (prod.phase_exp + 1 + (clifford.eighths() < 0 ? 2 : 0)) % 4;
  return with_signed_word(target, prod);
}

PauliOperator conjugate_past_pauli(const PauliWord& pauli, const PauliOperator& target) {
  if (commutes(pauli, target.word())) return target;
  return target.flipped();
}

PauliOperator canonical(const PauliOperator& op) {
  PauliOperator out = op;
  if (out.is_rotation()) out.set_eighths(out.eighths());
  return out;
}

}  // namespace latsurg
