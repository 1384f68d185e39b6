#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftec {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed-length bit vector packed into 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }

  void set(std::size_t i, bool v) {
    if (v)
      words_[i / 64] |= std::uint64_t{1} << (i % 64);
    else
      words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  BitVec operator^(const BitVec& o) const {
    BitVec r(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = words_[w] ^ o.words_[w];
    return r;
  }

  BitVec operator|(const BitVec& o) const {
    BitVec r(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = words_[w] | o.words_[w];
    return r;
  }

  void operator^=(const BitVec& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  // Parity of the AND of two vectors; this is the workhorse of the
  // symplectic product.
  static bool parity_of_and(const BitVec& a, const BitVec& b) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) acc ^= a.words_[w] & b.words_[w];
    return __builtin_popcountll(acc) & 1;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && words_ == o.words_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }
  bool operator<(const BitVec& o) const { return words_ < o.words_; }

  std::uint64_t to_ullong() const {
    if (n_ > 64) throw std::overflow_error("BitVec::to_ullong: more than 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// An n-qubit element of the error group E: i^phase * product over qubits of
// {I, X, Y, Z} chosen by the (x, z) mask pair. Both masks set at position i
// means a Y_i factor. Convention: Y = i*X*Z, so each single-qubit factor is
// the Hermitian Pauli matrix.
class PauliOperator {
 public:
  PauliOperator() : PauliOperator(1) {}

  explicit PauliOperator(std::size_t n) : x_(n), z_(n), phase_(0) {
    if (n < 1) throw DimensionError("PauliOperator: n must be >= 1");
  }

  static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

  static PauliOperator single(char kind, std::size_t qubit, std::size_t n) {
    PauliOperator p(n);
    if (qubit >= n) throw DimensionError("PauliOperator::single: qubit out of range");
    switch (kind) {
      case 'X': p.x_.set(qubit, true); break;
      case 'Z': p.z_.set(qubit, true); break;
      case 'Y': p.x_.set(qubit, true); p.z_.set(qubit, true); break;
      default: throw std::invalid_argument("PauliOperator::single: kind must be X, Y or Z");
    }
    return p;
  }

  std::size_t num_qubits() const { return x_.size(); }
  const BitVec& x_mask() const { return x_; }
  const BitVec& z_mask() const { return z_; }
  int phase_power() const { return phase_; }

  bool has_x(std::size_t i) const { return x_.get(i); }
  bool has_z(std::size_t i) const { return z_.get(i); }

  void set_x(std::size_t i, bool v) { x_.set(i, v); }
  void set_z(std::size_t i, bool v) { z_.set(i, v); }
  void set_phase_power(int k) { phase_ = ((k % 4) + 4) % 4; }

  bool is_identity() const { return x_.none() && z_.none(); }

  PauliOperator without_phase() const {
    PauliOperator p = *this;
    p.phase_ = 0;
    return p;
  }

  friend PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
    if (a.num_qubits() != b.num_qubits())
      throw DimensionError("multiply: operator lengths differ");
    const std::size_t n = a.num_qubits();
    PauliOperator r(n);
    r.x_ = a.x_ ^ b.x_;
    r.z_ = a.z_ ^ b.z_;
    // Per-qubit phase bookkeeping for P(x,z) = i^{x z} X^x Z^z.
    int delta = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int x1 = a.x_.get(i), z1 = a.z_.get(i);
      const int x2 = b.x_.get(i), z2 = b.z_.get(i);
      const int x3 = x1 ^ x2, z3 = z1 ^ z2;
      delta += x1 * z1 + x2 * z2 + 2 * z1 * x2 - x3 * z3;
    }
    r.phase_ = (((a.phase_ + b.phase_ + delta) % 4) + 4) % 4;
    return r;
  }

  // 0 iff the operators commute, 1 iff they anticommute.
  friend int symplectic_product(const PauliOperator& a, const PauliOperator& b) {
    if (a.num_qubits() != b.num_qubits())
      throw DimensionError("symplectic_product: operator lengths differ");
    return static_cast<int>(BitVec::parity_of_and(a.x_, b.z_) ^
                            BitVec::parity_of_and(a.z_, b.x_));
  }

  // Support size: number of qubits carrying an X, Y or Z factor.
  friend std::size_t weight(const PauliOperator& p) { return (p.x_ | p.z_).count(); }

  bool operator==(const PauliOperator& o) const {
    return x_ == o.x_ && z_ == o.z_ && phase_ == o.phase_;
  }
  bool operator!=(const PauliOperator& o) const { return !(*this == o); }

  // Ordering used for deterministic tie-breaks: weight first, then masks.
  bool operator<(const PauliOperator& o) const {
    const std::size_t wa = weight(*this), wb = weight(o);
    if (wa != wb) return wa < wb;
    if (x_ != o.x_) return x_ < o.x_;
    if (z_ != o.z_) return z_ < o.z_;
    return phase_ < o.phase_;
  }

 private:
  BitVec x_, z_;
  int phase_;
};

// Textual notation X(b...b)Z(b...b), leftmost bit is qubit 0, with an
// optional "i^k " prefix when the phase power is nonzero.
inline std::string format_notation(const PauliOperator& p) {
  std::string s;
  if (p.phase_power() != 0) s += "i^" + std::to_string(p.phase_power()) + " ";
  s += "X(";
  for (std::size_t i = 0; i < p.num_qubits(); ++i) s += p.has_x(i) ? '1' : '0';
  s += ")Z(";
  for (std::size_t i = 0; i < p.num_qubits(); ++i) s += p.has_z(i) ? '1' : '0';
  s += ")";
  return s;
}

inline PauliOperator parse_notation(const std::string& text) {
  std::size_t pos = 0;
  int phase = 0;
  if (text.rfind("i^", 0) == 0) {
    if (text.size() < 3 || text[2] < '0' || text[2] > '3')
      throw ParseError("parse_notation: bad phase prefix in '" + text + "'");
    phase = text[2] - '0';
    pos = 3;
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }
  auto expect = [&](const char* lit) {
    const std::size_t len = std::char_traits<char>::length(lit);
    if (text.compare(pos, len, lit) != 0)
      throw ParseError("parse_notation: expected '" + std::string(lit) + "' in '" + text + "'");
    pos += len;
  };
  auto read_bits = [&]() {
    std::string bits;
    while (pos < text.size() && (text[pos] == '0' || text[pos] == '1')) bits += text[pos++];
    return bits;
  };
  expect("X(");
  const std::string xbits = read_bits();
  expect(")Z(");
  const std::string zbits = read_bits();
  expect(")");
  if (pos != text.size())
    throw ParseError("parse_notation: trailing characters in '" + text + "'");
  if (xbits.empty() || xbits.size() != zbits.size())
    throw ParseError("parse_notation: X and Z bit lists must be nonempty and equal length");
  PauliOperator p(xbits.size());
  for (std::size_t i = 0; i < xbits.size(); ++i) {
    p.set_x(i, xbits[i] == '1');
    p.set_z(i, zbits[i] == '1');
  }
  p.set_phase_power(phase);
  return p;
}

}  // namespace ftec
