#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "dense_oracle.hpp"
#include "ftec/decode.hpp"
#include "ftec/stab_code.hpp"

using namespace ftec;

namespace {

PauliOperator cyclic_shift(const PauliOperator& p, std::size_t s) {
  PauliOperator r(p.num_qubits());
  const std::size_t n = p.num_qubits();
  for (std::size_t i = 0; i < n; ++i) {
    r.set_x((i + s) % n, p.has_x(i));
    r.set_z((i + s) % n, p.has_z(i));
  }
  return r;
}

// Independent GF(2) rank computation over dense bool rows.
std::size_t dense_gf2_rank(std::vector<std::vector<int>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

std::size_t rank_of(const std::vector<PauliOperator>& gens) {
  std::vector<std::vector<int>> rows;
  for (const auto& g : gens) {
    std::vector<int> row;
    for (std::size_t i = 0; i < g.num_qubits(); ++i) row.push_back(g.has_x(i));
    for (std::size_t i = 0; i < g.num_qubits(); ++i) row.push_back(g.has_z(i));
    rows.push_back(row);
  }
  return dense_gf2_rank(rows);
}

}  // namespace

TEST_CASE("validate accepts the five-qubit generator set") {
  const auto code = five_qubit_code();
  CHECK(code.n == 5);
  CHECK(code.g() == 4);
  CHECK(code.k() == 1);
  CHECK(code.t == 1);
  CHECK(rank_of(code.generators) == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      CHECK(oracle::commute(code.generators[i], code.generators[j]));
}

TEST_CASE("validate rejects non-commuting and dependent sets") {
  CHECK_THROWS_AS(
      validate({PauliOperator::single('X', 0, 1), PauliOperator::single('Z', 0, 1)}, 1),
      NonCommutingError);
  CHECK_THROWS_AS(
      validate({PauliOperator::single('Z', 0, 2), PauliOperator::single('Z', 0, 2)}, 2),
      DependentError);
  CHECK_THROWS_AS(validate({PauliOperator::identity(3)}, 4), DimensionError);
  // product of the first two smuggled in as a third generator
  const auto a = parse_notation("X(110)Z(000)");
  const auto b = parse_notation("X(011)Z(000)");
  CHECK_THROWS_AS(validate({a, b, multiply(a, b).without_phase()}, 3), DependentError);
}

TEST_CASE("five-qubit generators are the cyclic shifts of X(11000)Z(00101)") {
  const auto code = five_qubit_code();
  const auto g0 = parse_notation("X(11000)Z(00101)");
  CHECK(code.generators[0] == g0);
  CHECK(code.generators[1] == parse_notation("X(01100)Z(10010)"));
  for (std::size_t s = 0; s < 4; ++s) CHECK(code.generators[s] == cyclic_shift(g0, s));
  for (int sign : code.signs) CHECK(sign == +1);
}

TEST_CASE("the five cyclic shifts have rank 4, so shifts 0-3 suffice") {
  std::vector<PauliOperator> all;
  const auto g0 = parse_notation("X(11000)Z(00101)");
  for (std::size_t s = 0; s < 5; ++s) all.push_back(cyclic_shift(g0, s));
  CHECK(rank_of(all) == 4);
}

// The reference table fixes the syndrome bit order but not which cyclic
// shift feeds which bit. Search every ordered choice of 4 of the 5 shifts
// for the assignment whose anticommutation syndromes match the reference
// table; it must be unique and equal the hard-coded one.
TEST_CASE("reference-table search fixes the generator ordering uniquely") {
  const auto g0 = parse_notation("X(11000)Z(00101)");
  std::vector<PauliOperator> shifts;
  for (std::size_t s = 0; s < 5; ++s) shifts.push_back(cyclic_shift(g0, s));

  std::vector<std::vector<std::size_t>> matches;
  std::vector<std::size_t> idx = {0, 1, 2, 3, 4};
  std::sort(idx.begin(), idx.end());
  do {
    const std::vector<std::size_t> pick(idx.begin(), idx.begin() + 4);
    // only distinct ordered 4-subsets; skip permutations of the unused tail
    bool ok = true;
    for (const auto& [bits, name] : five_qubit_reference_rows()) {
      const auto err = pauli_from_name(name, 5);
      for (std::size_t j = 0; j < 4 && ok; ++j)
        if ((bits[j] == '1') != (symplectic_product(err, shifts[pick[j]]) != 0)) ok = false;
      if (!ok) break;
    }
    if (ok && (matches.empty() || matches.back() != pick)) matches.push_back(pick);
  } while (std::next_permutation(idx.begin(), idx.end()));

  REQUIRE(matches.size() == 1);
  CHECK(matches[0] == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("steane code structure") {
  const auto code = steane_code();
  CHECK(code.n == 7);
  CHECK(code.g() == 6);
  CHECK(code.k() == 1);
  std::set<std::string> x_supports, z_supports;
  for (const auto& g : code.generators) {
    const bool pure_x = g.z_mask().none();
    const bool pure_z = g.x_mask().none();
    CHECK((pure_x || pure_z));
    std::string support;
    for (std::size_t i = 0; i < 7; ++i) support += (g.has_x(i) || g.has_z(i)) ? '1' : '0';
    (pure_x ? x_supports : z_supports).insert(support);
  }
  CHECK(x_supports == z_supports);  // self-dual CSS
  CHECK(rank_of(code.generators) == 6);
}

TEST_CASE("syndrome oracle: reference rows") {
  const auto code = five_qubit_code();
  CHECK(syndrome_of_pauli(code, PauliOperator::identity(5)).str() == "0000");
  CHECK(syndrome_of_pauli(code, PauliOperator::single('Z', 4, 5)).str() == "0001");
  CHECK(syndrome_of_pauli(code, PauliOperator::single('Y', 2, 5)).str() == "1111");
}

TEST_CASE("stabilizer elements have zero syndrome; syndromes add under multiplication") {
  for (const auto& code : {five_qubit_code(), steane_code()}) {
    // products of up to 3 generators
    for (std::size_t i = 0; i < code.g(); ++i)
      for (std::size_t j = 0; j < code.g(); ++j)
        for (std::size_t k = 0; k < code.g(); ++k) {
          const auto s = multiply(multiply(code.generators[i], code.generators[j]),
                                  code.generators[k]);
          CHECK(syndrome_of_pauli(code, s).bits.none());
        }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      PauliOperator a(code.n), b(code.n);
      for (std::size_t i = 0; i < code.n; ++i) {
        a.set_x(i, rng() & 1);
        a.set_z(i, rng() & 1);
        b.set_x(i, rng() & 1);
        b.set_z(i, rng() & 1);
      }
      const auto sa = syndrome_of_pauli(code, a);
      const auto sb = syndrome_of_pauli(code, b);
      CHECK(syndrome_of_pauli(code, multiply(a, b)).bits == (sa.bits ^ sb.bits));
    }
  }
}

TEST_CASE("generator 0 support matches the parity set {0,1,2,4}") {
  const auto g = five_qubit_code().generators[0];
  for (std::size_t i = 0; i < 5; ++i)
    CHECK((g.has_x(i) || g.has_z(i)) == (i != 3));
}

TEST_CASE("distinct syndromes: five-qubit and Steane") {
  const auto r5 = distinct_syndrome_check(five_qubit_code());
  CHECK(r5.num_errors == 16);
  CHECK(r5.num_distinct == 16);
  CHECK(r5.all_distinct());

  const auto r7 = distinct_syndrome_check(steane_code());
  CHECK(r7.num_errors == 22);
  CHECK(r7.num_distinct == 22);
  CHECK(r7.all_distinct());
}

TEST_CASE("distinct syndromes: broken code reports a collision") {
  const auto code = validate({parse_notation("X(000)Z(110)")}, 3, 1);
  const auto r = distinct_syndrome_check(code);
  CHECK(!r.all_distinct());
  bool found = false;
  for (const auto& c : r.collisions)
    if (!c.stabilizer_equivalent) found = true;
  CHECK(found);
}

TEST_CASE("code file round trip and diagnostics") {
  const auto code = five_qubit_code();
  const std::string text = format_code_file(code);
  std::istringstream in(text);
  const auto parsed = parse_code_file(in);
  CHECK(parsed.n == code.n);
  CHECK(parsed.t == code.t);
  CHECK(parsed.generators == code.generators);
  CHECK(format_code_file(parsed) == text);

  std::istringstream bad1("n=1 k=0 t=1\nX(1)Z(0)\nX(0)Z(1)\n");
  CHECK_THROWS_AS(parse_code_file(bad1), NonCommutingError);
  std::istringstream bad2("nonsense\n");
  CHECK_THROWS_AS(parse_code_file(bad2), ParseError);
  std::istringstream bad3("n=2 k=0 t=1\nX(00)Z(11)\n");
  CHECK_THROWS_AS(parse_code_file(bad3), ParseError);  // k mismatch

  std::istringstream signed_in("n=2 k=1 t=0\n-X(00)Z(11)\n");
  const auto signed_code = parse_code_file(signed_in);
  CHECK(signed_code.signs[0] == -1);
  CHECK(format_code_file(signed_code) == "n=2 k=1 t=0\n-X(00)Z(11)\n");
}
