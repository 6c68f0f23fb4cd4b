#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "gf2to1/field.hpp"
#include "oracles.hpp"

using namespace gf2to1;

namespace {

oracle::Field ref(const FieldCtx& F) { return {F.degree(), F.modulus()}; }

}  // namespace

TEST_CASE("default moduli are the smallest irreducible masks") {
  CHECK(default_modulus(2) == 0b111);
  CHECK(default_modulus(4) == 0b10011);
  for (int n = 1; n <= kMaxDegree; ++n) {
    const std::uint32_t mod = default_modulus(n);
    CHECK(oracle::f2_irreducible(mod));
    CHECK((mod >> n) == 1u);
    if (n <= 16) {
      for (std::uint32_t p = (1u << n); p < mod; ++p) CHECK_FALSE(oracle::f2_irreducible(p));
    }
  }
}

TEST_CASE("irreducibility test matches trial division") {
  for (std::uint32_t p = 2; p < (1u << 11); ++p) CHECK(is_irreducible_f2(p) == oracle::f2_irreducible(p));
}

TEST_CASE("context creation validates degree and modulus") {
  CHECK_THROWS_WITH_AS(FieldCtx::create(0), doctest::Contains("DegreeOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(FieldCtx::create(25), doctest::Contains("DegreeOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(FieldCtx::create(4, 0b10101), doctest::Contains("NotIrreducible"), Error);
  CHECK_THROWS_WITH_AS(FieldCtx::create(4, 0b1011), doctest::Contains("NotIrreducible"), Error);
  const FieldCtx alt = FieldCtx::create(4, 0x19);
  CHECK(alt.modulus() == 0x19);
  CHECK_FALSE(alt == FieldCtx::create(4));
  CHECK(FieldCtx::create(4) == FieldCtx::create(4));
  CHECK(FieldCtx::create(4).order() == 16);
  CHECK(FieldCtx::create(4).to_json() == R"({"n": 4, "modulus": "0x13"})");
}

TEST_CASE("multiplication agrees with shift-and-add") {
  for (int n = 1; n <= 7; ++n) {
    const FieldCtx F = FieldCtx::create(n);
    const auto R = ref(F);
    for (std::uint32_t a = 0; a < F.order(); ++a)
      for (std::uint32_t b = 0; b < F.order(); ++b) REQUIRE(F.mul(Elem{a}, Elem{b}).bits == R.mul(a, b));
  }
  std::mt19937_64 rng(11);
  for (int n : {8, 12, 16, 20, 21, 22, 23, 24}) {
    const FieldCtx F = FieldCtx::create(n);
    const auto R = ref(F);
    for (int t = 0; t < 2000; ++t) {
      std::uint32_t a = rng() % F.order(), b = rng() % F.order();
      REQUIRE(F.mul(Elem{a}, Elem{b}).bits == R.mul(a, b));
    }
  }
  const FieldCtx F16 = FieldCtx::create(4);
  CHECK(F16.mul(Elem{0x2}, Elem{0x9}) == Elem{0x1});
}

TEST_CASE("multiplication is commutative and associative on random triples") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 12; ++n) {
    const FieldCtx F = FieldCtx::create(n);
    for (int t = 0; t < 500; ++t) {
      Elem a{static_cast<std::uint32_t>(rng() % F.order())}, b{static_cast<std::uint32_t>(rng() % F.order())},
          c{static_cast<std::uint32_t>(rng() % F.order())};
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.mul(a, b + c) == F.mul(a, b) + F.mul(a, c));
    }
  }
}

TEST_CASE("inverse, division and the group order") {
  for (int n = 1; n <= 12; ++n) {
    const FieldCtx F = FieldCtx::create(n);
    for (std::uint32_t a = 1; a < F.order(); ++a) {
      REQUIRE(F.mul(Elem{a}, F.inv(Elem{a})) == F.one());
      REQUIRE(F.pow(Elem{a}, F.order() - 1) == F.one());
    }
    CHECK_THROWS_WITH_AS(F.inv(F.zero()), doctest::Contains("DivisionByZero"), Error);
    CHECK_THROWS_WITH_AS(F.div(F.one(), F.zero()), doctest::Contains("DivisionByZero"), Error);
  }
  const FieldCtx F4 = FieldCtx::create(2);
  CHECK(F4.inv(Elem{0x2}) == Elem{0x3});
  const FieldCtx F16 = FieldCtx::create(4);
  for (std::uint32_t a = 1; a < 16; ++a) CHECK(F16.inv(Elem{a}).bits == ref(F16).inv(a));
}

TEST_CASE("addition is xor and self-inverse") {
  const FieldCtx F = FieldCtx::create(5);
  for (std::uint32_t a = 0; a < F.order(); ++a) {
    CHECK(F.add(Elem{a}, Elem{a}) == F.zero());
    CHECK(F.add(Elem{a}, Elem{7}).bits == (a ^ 7u));
  }
}

TEST_CASE("power conventions and agreement with repeated multiplication") {
  const FieldCtx F = FieldCtx::create(6);
  const auto R = ref(F);
  CHECK(F.pow(F.zero(), 0) == F.one());
  CHECK(F.pow(F.zero(), 5) == F.zero());
  CHECK(F.pow(F.zero(), F.order() - 1) == F.zero());
  for (std::uint32_t a = 0; a < F.order(); ++a)
    for (ExpInt e = 0; e < 140; e += 7) REQUIRE(F.pow(Elem{a}, e).bits == R.pow(a, e));
  // Exponents reduce modulo 2^n - 1 for nonzero bases.
  CHECK(F.pow(Elem{5}, 3 + 63 * 1000) == F.pow(Elem{5}, 3));
  const FieldCtx F22 = FieldCtx::create(22);
  const auto R22 = ref(F22);
  CHECK(F22.pow(Elem{0x12345}, 987654321ULL).bits == R22.pow_fast(0x12345, 987654321ULL));
}

TEST_CASE("absolute trace") {
  const FieldCtx F16 = FieldCtx::create(4);
  CHECK(F16.trace_abs(Elem{0x2}) == F16.zero());
  CHECK(F16.trace_abs(Elem{0x8}) == F16.one());
  CHECK(F16.trace_abs(F16.zero()) == F16.zero());
  for (int n = 1; n <= 12; ++n) {
    const FieldCtx F = FieldCtx::create(n);
    const auto R = ref(F);
    std::uint32_t ones = 0;
    for (std::uint32_t a = 0; a < F.order(); ++a) {
      const Elem t = F.trace_abs(Elem{a});
      REQUIRE(t.bits == R.trace(a));
      ones += t.bits;
    }
    CHECK(ones == F.order() / 2);
  }
  const FieldCtx F8 = FieldCtx::create(8);
  for (std::uint32_t a = 0; a < 256; a += 3)
    for (std::uint32_t b = 0; b < 256; b += 5)
      CHECK(F8.trace_abs(Elem{a} + Elem{b}) == F8.trace_abs(Elem{a}) + F8.trace_abs(Elem{b}));
}

TEST_CASE("relative trace lands in the subfield and composes") {
  const FieldCtx F16 = FieldCtx::create(4);
  CHECK(F16.trace_rel(F16.zero(), 2) == F16.zero());
  int zeros = 0;
  for (std::uint32_t a = 0; a < 16; ++a) {
    const Elem t = F16.trace_rel(Elem{a}, 2);
    CHECK(F16.pow(t, 4) == t);
    zeros += t.is_zero();
  }
  CHECK(zeros == 4);
  for (auto [n, m] : {std::pair{4, 2}, {6, 2}, {6, 3}, {8, 4}}) {
    const FieldCtx F = FieldCtx::create(n);
    const auto R = ref(F);
    for (std::uint32_t a = 0; a < F.order(); ++a) {
      const Elem t = F.trace_rel(Elem{a}, m);
      REQUIRE(t.bits == R.trace(a, n, m));
      REQUIRE(F.trace(t, m, 1) == F.trace_abs(Elem{a}));
      REQUIRE(F.in_subfield(t, m));
    }
  }
  CHECK_THROWS_WITH_AS(F16.trace_rel(Elem{1}, 3), doctest::Contains("NotADivisor"), Error);
  CHECK_THROWS_WITH_AS(F16.in_subfield(Elem{1}, 3), doctest::Contains("NotADivisor"), Error);
}

TEST_CASE("subfield enumeration") {
  const FieldCtx F = FieldCtx::create(12);
  const auto R = ref(F);
  for (int m : {1, 2, 3, 4, 6, 12}) {
    const auto sub = F.subfield_elements(m);
    CHECK(sub.size() == (std::size_t{1} << m));
    for (Elem a : sub) CHECK(R.in_subfield(a.bits, m));
    CHECK(std::is_sorted(sub.begin(), sub.end()));
  }
}

TEST_CASE("frobenius and square roots") {
  const FieldCtx F16 = FieldCtx::create(4);
  CHECK(F16.frobenius(Elem{0x2}, 2) == F16.pow(Elem{0x2}, 4));
  CHECK(F16.sqrt(F16.zero()) == F16.zero());
  for (int n : {1, 5, 10}) {
    const FieldCtx F = FieldCtx::create(n);
    for (std::uint32_t a = 0; a < F.order(); ++a) {
      REQUIRE(F.sqrt(F.sqr(Elem{a})) == Elem{a});
      REQUIRE(F.frobenius(Elem{a}, -1) == F.sqrt(Elem{a}));
      REQUIRE(F.frobenius(Elem{a}, n) == Elem{a});
    }
  }
}

TEST_CASE("exponent helpers") {
  const FieldCtx F = FieldCtx::create(6);
  CHECK(F.reduce_exponent(0) == 0);
  CHECK(F.reduce_exponent(63) == 63);
  CHECK(F.reduce_exponent(64) == 1);
  const ExpInt e = F.signed_exponent(2 - 8);
  for (std::uint32_t a = 1; a < F.order(); ++a) {
    CHECK(F.mul(F.pow(Elem{a}, e), F.pow(Elem{a}, 6)) == F.one());
    CHECK(F.pow(Elem{a}, F.shift_exponent(5, 3)) == F.pow(Elem{a}, 40));
  }
}

TEST_CASE("modular inverse of integers") {
  CHECK(int_mod_inverse(1, 3) == 1);
  CHECK(int_mod_inverse(3, 7) == 5);
  CHECK(int_mod_inverse(5, 1) == 0);
  CHECK_THROWS_WITH_AS(int_mod_inverse(3, 15), doctest::Contains("NotInvertible"), Error);
  for (std::uint64_t M = 2; M < 200; ++M)
    for (std::uint64_t e = 1; e < M; ++e)
      if (gcd_u64(e, M) == 1) REQUIRE((e * int_mod_inverse(e, M)) % M == 1);
}

TEST_CASE("hex text format") {
  const FieldCtx F = FieldCtx::create(4);
  CHECK(to_hex(Elem{0x1f}) == "0x1f");
  CHECK(to_hex(std::uint64_t{0}) == "0x0");
  CHECK(parse_hex("0xAb") == 0xab);
  CHECK(parse_elem(F, "0x8") == Elem{8});
  CHECK_THROWS_WITH_AS(parse_hex("12"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_hex("0xg1"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_elem(F, "0x10"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(F.element(16), doctest::Contains("ElementOutOfRange"), Error);
}

TEST_CASE("contexts are shared safely across threads") {
  const FieldCtx F = FieldCtx::create(16);
  std::vector<std::thread> pool;
  std::vector<std::uint32_t> acc(4);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      std::uint32_t x = 0;
      for (std::uint32_t a = 1 + t; a < F.order(); a += 4) x ^= F.mul(Elem{a}, F.inv(Elem{a})).bits;
      acc[t] = x;
    });
  for (auto& th : pool) th.join();
  for (int t = 0; t < 4; ++t) {
    std::uint32_t count = 0;
    for (std::uint32_t a = 1 + t; a < F.order(); a += 4) ++count;
    CHECK(acc[t] == count % 2);
  }
}
