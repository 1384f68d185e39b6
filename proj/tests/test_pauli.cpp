#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dense_oracle.hpp"
#include "ftec/pauli.hpp"

using namespace ftec;

namespace {

PauliOperator random_pauli(std::size_t n, std::mt19937_64& rng) {
  PauliOperator p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.set_x(i, rng() & 1);
    p.set_z(i, rng() & 1);
  }
  p.set_phase_power(static_cast<int>(rng() % 4));
  return p;
}

// All 16 phase-free Paulis on two qubits.
std::vector<PauliOperator> all_two_qubit_paulis() {
  std::vector<PauliOperator> out;
  for (int m = 0; m < 16; ++m) {
    PauliOperator p(2);
    p.set_x(0, m & 1);
    p.set_z(0, m & 2);
    p.set_x(1, m & 4);
    p.set_z(1, m & 8);
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("multiply: X*Z = -iY on one qubit") {
  const auto r = multiply(PauliOperator::single('X', 0, 1), PauliOperator::single('Z', 0, 1));
  CHECK(r.has_x(0));
  CHECK(r.has_z(0));
  CHECK(r.phase_power() == 3);
  // cross-check against the dense product
  const auto prod = oracle::matmul(oracle::pauli_X(), oracle::pauli_Z());
  CHECK(oracle::max_abs_diff(oracle::dense(r), prod) < 1e-12);
}

TEST_CASE("multiply: identity and involution") {
  std::mt19937_64 rng(7);
  const auto p = random_pauli(3, rng);
  CHECK(multiply(p, PauliOperator::identity(3)) == p);
  const auto x = PauliOperator::single('X', 0, 1);
  const auto sq = multiply(x, x);
  CHECK(sq.is_identity());
  CHECK(sq.phase_power() == 0);
}

TEST_CASE("multiply: length mismatch throws") {
  CHECK_THROWS_AS(multiply(PauliOperator::identity(2), PauliOperator::identity(3)),
                  DimensionError);
  CHECK_THROWS_AS(symplectic_product(PauliOperator::identity(2), PauliOperator::identity(3)),
                  DimensionError);
}

TEST_CASE("multiply matches dense-matrix products on random pairs") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    const auto prod = oracle::matmul(oracle::dense(a), oracle::dense(b));
    CHECK(oracle::max_abs_diff(oracle::dense(multiply(a, b)), prod) < 1e-12);
  }
}

TEST_CASE("multiply is associative on random triples") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    const auto c = random_pauli(n, rng);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("symplectic product: named cases") {
  CHECK(symplectic_product(PauliOperator::single('X', 0, 5), PauliOperator::single('Z', 0, 5)) == 1);
  CHECK(symplectic_product(PauliOperator::single('X', 0, 5), PauliOperator::single('Z', 1, 5)) == 0);
  const auto a = parse_notation("X(11000)Z(00101)");
  const auto b = parse_notation("X(01100)Z(10010)");
  CHECK(symplectic_product(a, b) == 0);
  CHECK(oracle::commute(a, b));
}

TEST_CASE("symplectic product agrees with dense commutators for all n=2 pairs") {
  const auto all = all_two_qubit_paulis();
  for (const auto& a : all)
    for (const auto& b : all)
      CHECK((symplectic_product(a, b) == 0) == oracle::commute(a, b));
}

TEST_CASE("symplectic product of anything with itself is 0") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_pauli(1 + rng() % 6, rng);
    CHECK(symplectic_product(p, p) == 0);
  }
}

TEST_CASE("weight") {
  CHECK(weight(PauliOperator::identity(4)) == 0);
  CHECK(weight(PauliOperator::single('Y', 2, 5)) == 1);
  CHECK(weight(parse_notation("X(11000)Z(00101)")) == 4);
}

TEST_CASE("weight is subadditive under multiplication") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    CHECK(weight(multiply(a, b)) <= weight(a) + weight(b));
  }
}

TEST_CASE("notation: five-qubit code generator") {
  const auto p = parse_notation("X(11000)Z(00101)");
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(p.has_x(i) == (i == 0 || i == 1));
    CHECK(p.has_z(i) == (i == 2 || i == 4));
  }
  CHECK(p.phase_power() == 0);
}

TEST_CASE("notation: Z_4 and round trips") {
  const auto p = parse_notation("X(00000)Z(00001)");
  CHECK(p == PauliOperator::single('Z', 4, 5));
  for (const char* s : {"X(11000)Z(00101)", "X(0)Z(1)", "i^2 X(10)Z(01)", "i^1 X(1)Z(1)"}) {
    CHECK(format_notation(parse_notation(s)) == s);
  }
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p2 = random_pauli(1 + rng() % 9, rng);
    CHECK(parse_notation(format_notation(p2)) == p2);
  }
}

TEST_CASE("notation: malformed strings rejected") {
  for (const char* s : {"", "X(11)Z(1)", "X(11)", "Z(11)X(11)", "X(12)Z(00)",
                        "X(11)Z(11)x", "i^5 X(1)Z(1)"}) {
    CHECK_THROWS_AS(parse_notation(s), ParseError);
  }
}
