#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "gf2to1/polyalg.hpp"
#include "oracles.hpp"

using namespace gf2to1;

namespace {

oracle::Field ref(const FieldCtx& F) { return {F.degree(), F.modulus()}; }

std::vector<std::uint32_t> raw(const UniPoly& p) {
  std::vector<std::uint32_t> r;
  for (Elem c : p.coeffs()) r.push_back(c.bits);
  return r;
}

UniPoly random_poly(const FieldCtx& F, std::mt19937_64& rng, int deg) {
  std::vector<Elem> c(deg + 1);
  for (auto& e : c) e = Elem{static_cast<std::uint32_t>(rng() % F.order())};
  if (c.back().is_zero()) c.back() = F.one();
  return UniPoly(F, c);
}

// Brute-force 2-to-1 test on the whole field for a polynomial with given coefficients.
bool brute_two_to_one(const oracle::Field& R, const std::vector<std::uint32_t>& p) {
  std::vector<std::uint32_t> vals;
  for (std::uint32_t x = 0; x < R.q(); ++x) vals.push_back(oracle::eval(R, p, x));
  return oracle::two_to_one(vals);
}

}  // namespace

TEST_CASE("polynomials normalize and evaluate") {
  const FieldCtx F = FieldCtx::create(4);
  const UniPoly p(F, {Elem{1}, Elem{0}, Elem{3}, Elem{0}, Elem{0}});
  CHECK(p.degree() == 2);
  CHECK(UniPoly(F).degree() == -1);
  CHECK(UniPoly(F).is_zero());
  CHECK(p.leading() == Elem{3});
  CHECK(p.monic().leading() == F.one());
  const auto R = ref(F);
  for (std::uint32_t x = 0; x < 16; ++x) CHECK(p(Elem{x}).bits == oracle::eval(R, raw(p), x));
  CHECK_THROWS_AS(UniPoly(F, {Elem{16}}), Error);
}

TEST_CASE("ring operations agree with pointwise evaluation") {
  const FieldCtx F = FieldCtx::create(5);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const UniPoly a = random_poly(F, rng, rng() % 6), b = random_poly(F, rng, rng() % 6);
    const UniPoly s = a + b, m = a * b, c = compose(a, b);
    for (std::uint32_t x = 0; x < F.order(); ++x) {
      REQUIRE(s(Elem{x}) == a(Elem{x}) + b(Elem{x}));
      REQUIRE(m(Elem{x}) == F.mul(a(Elem{x}), b(Elem{x})));
      REQUIRE(c(Elem{x}) == a(b(Elem{x})));
    }
  }
}

TEST_CASE("division with remainder and gcd") {
  const FieldCtx F = FieldCtx::create(4);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const UniPoly a = random_poly(F, rng, rng() % 8), b = random_poly(F, rng, 1 + rng() % 4);
    const DivMod qr = divmod(a, b);
    CHECK(qr.quot * b + qr.rem == a);
    CHECK(qr.rem.degree() < b.degree());
    CHECK(raw(qr.rem) == oracle::poly_rem(ref(F), raw(a), raw(b)));
    const UniPoly g = gcd(a, b);
    CHECK(g.leading() == F.one());
    CHECK(divmod(a, g).rem.is_zero());
    CHECK(divmod(b, g).rem.is_zero());
  }
  const UniPoly x = UniPoly::x(F);
  const UniPoly x1 = x + UniPoly::constant(F, F.one());
  CHECK(gcd(x * x1, x1 * x1) == x1);
  CHECK(gcd(UniPoly(F), UniPoly(F)).is_zero());
  CHECK_THROWS_WITH_AS(divmod(x, UniPoly(F)), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("sylvester resultant agrees with the Euclidean recurrence") {
  for (int n : {2, 3, 4, 6}) {
    const FieldCtx F = FieldCtx::create(n);
    const auto R = ref(F);
    std::mt19937_64 rng(100 + n);
    for (int t = 0; t < 60; ++t) {
      const UniPoly f = random_poly(F, rng, 1 + rng() % 5), g = random_poly(F, rng, 1 + rng() % 5);
      REQUIRE(sylvester_resultant(f, g).bits == oracle::resultant(R, raw(f), raw(g)));
      // A common root forces a zero resultant.
      const bool common = !gcd(f, g).is_zero() && gcd(f, g).degree() > 0;
      if (common) CHECK(sylvester_resultant(f, g).is_zero());
    }
  }
}

TEST_CASE("resultant against the product over the roots") {
  // Res(prod (x - r_i), g) = prod g(r_i)
  const FieldCtx F = FieldCtx::create(6);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    UniPoly f = UniPoly::constant(F, F.one());
    Elem expect = F.one();
    const UniPoly g = random_poly(F, rng, 1 + rng() % 4);
    const int k = 1 + rng() % 4;
    for (int i = 0; i < k; ++i) {
      const Elem r{static_cast<std::uint32_t>(rng() % F.order())};
      f = f * UniPoly(F, {r, F.one()});
      expect = F.mul(expect, g(r));
    }
    CHECK(sylvester_resultant(f, g) == expect);
  }
}

TEST_CASE("quadratic roots and the trace criterion") {
  for (int n : {1, 2, 3, 4, 5}) {
    const FieldCtx F = FieldCtx::create(n);
    const auto R = ref(F);
    for (std::uint32_t a = 0; a < F.order(); ++a)
      for (std::uint32_t b = 0; b < F.order(); ++b) {
        const auto got = solve_quadratic(F, Elem{a}, Elem{b});
        const auto want = oracle::roots(R, {b, a, 1});
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i].bits == want[i]);
        if (a != 0) {
          const std::uint32_t t = R.trace(R.mul(b, R.inv(R.mul(a, a))));
          REQUIRE(got.empty() == (t == 1));
        }
      }
  }
}

TEST_CASE("cubic unique root criterion") {
  for (int n : {2, 3, 4}) {
    const FieldCtx F = FieldCtx::create(n);
    const auto R = ref(F);
    for (std::uint32_t a = 0; a < F.order(); ++a)
      for (std::uint32_t b = 1; b < F.order(); ++b) {
        const auto want = oracle::roots(R, {b, a, 0, 1});
        const CubicRoot got = cubic_unique_root(F, Elem{a}, Elem{b});
        REQUIRE(got.unique == (want.size() == 1));
        if (got.unique) {
          REQUIRE(got.root.has_value());
          REQUIRE(got.root->bits == want[0]);
        }
      }
  }
}

TEST_CASE("cubic criterion over a subfield") {
  const FieldCtx F = FieldCtx::create(6);
  const auto R = ref(F);
  const auto sub = F.subfield_elements(3);
  for (Elem a : sub)
    for (Elem b : sub) {
      if (b.is_zero()) continue;
      int count = 0;
      for (Elem x : sub)
        if (oracle::eval(R, {b.bits, a.bits, 0, 1}, x.bits) == 0) ++count;
      REQUIRE(cubic_unique_root(F, a, b, 3).unique == (count == 1));
    }
}

TEST_CASE("quartic 2-to-1 criterion against brute force") {
  for (int n : {2, 3, 4}) {
    const FieldCtx F = FieldCtx::create(n);
    const auto R = ref(F);
    for (std::uint32_t a3 = 0; a3 < F.order(); ++a3)
      for (std::uint32_t a2 = 0; a2 < F.order(); ++a2)
        for (std::uint32_t a1 = 0; a1 < F.order(); ++a1)
          REQUIRE(quartic_two_to_one(F, Elem{a3}, Elem{a2}, Elem{a1}) == brute_two_to_one(R, {0, a1, a2, a3, 1}));
  }
}

TEST_CASE("quartic criterion over a subfield") {
  const FieldCtx F = FieldCtx::create(4);
  const auto R = ref(F);
  const auto sub = F.subfield_elements(2);
  for (Elem a3 : sub)
    for (Elem a2 : sub)
      for (Elem a1 : sub) {
        std::vector<std::uint32_t> vals;
        for (Elem x : sub) vals.push_back(oracle::eval(R, {0, a1.bits, a2.bits, a3.bits, 1}, x.bits));
        REQUIRE(quartic_two_to_one(F, a3, a2, a1, 2) == oracle::two_to_one(vals));
      }
}

TEST_CASE("linearized maps: matrix and term evaluation agree") {
  const FieldCtx F = FieldCtx::create(7);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    std::vector<LinearizedMap::Term> terms;
    for (int j = 0; j < 4; ++j) terms.push_back({Elem{static_cast<std::uint32_t>(rng() % F.order())}, static_cast<int>(rng() % 10)});
    const LinearizedMap L(F, terms);
    for (std::uint32_t x = 0; x < F.order(); ++x) {
      REQUIRE(L(Elem{x}) == L.evaluate_terms(Elem{x}));
      std::uint32_t direct = 0;
      for (auto [c, j] : terms) direct ^= F.mul(c, F.frobenius(Elem{x}, j)).bits;
      REQUIRE(L(Elem{x}).bits == direct);
    }
    for (const auto& [c, j] : L.terms()) {
      CHECK(j >= 0);
      CHECK(j < 7);
    }
  }
}

TEST_CASE("linearized maps: composition, sums and scaling") {
  const FieldCtx F = FieldCtx::create(6);
  const LinearizedMap A = LinearizedMap::frobenius_plus_identity(F, 2);
  const LinearizedMap B(F, {{Elem{5}, 1}, {Elem{9}, 3}});
  const LinearizedMap AB = A.after(B), S = A + B, C = B.scaled(Elem{7});
  for (std::uint32_t x = 0; x < F.order(); ++x) {
    CHECK(AB(Elem{x}) == A(B(Elem{x})));
    CHECK(S(Elem{x}) == A(Elem{x}) + B(Elem{x}));
    CHECK(C(Elem{x}) == F.mul(Elem{7}, B(Elem{x})));
  }
  CHECK(LinearizedMap::identity(F)(Elem{33}) == Elem{33});
  CHECK(LinearizedMap::zero(F)(Elem{33}) == Elem{0});
  CHECK(A.coefficients_in_subfield(1));
  CHECK_FALSE(B.coefficients_in_subfield(2));
}

TEST_CASE("trace as a linearized map") {
  const FieldCtx F = FieldCtx::create(6);
  for (int m : {1, 2, 3}) {
    const LinearizedMap T = LinearizedMap::trace_to_subfield(F, m);
    for (std::uint32_t x = 0; x < F.order(); ++x) CHECK(T(Elem{x}) == F.trace_rel(Elem{x}, m));
  }
}

TEST_CASE("kernels and linear solves") {
  const FieldCtx F = FieldCtx::create(6);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const LinearizedMap L(F, {{Elem{static_cast<std::uint32_t>(rng() % 64)}, static_cast<int>(rng() % 6)},
                              {Elem{static_cast<std::uint32_t>(rng() % 64)}, static_cast<int>(rng() % 6)}});
    std::vector<Elem> brute;
    for (std::uint32_t x = 0; x < 64; ++x)
      if (L(Elem{x}).is_zero()) brute.push_back(Elem{x});
    const auto basis = linearized_kernel(L);
    std::vector<Elem> span;
    for (std::uint32_t combo = 0; combo < (1u << basis.size()); ++combo) {
      Elem v;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (combo >> i & 1) v += basis[i];
      span.push_back(v);
    }
    std::sort(span.begin(), span.end());
    CHECK(span == brute);
    const Elem b{static_cast<std::uint32_t>(rng() % 64)};
    std::vector<Elem> sol;
    for (std::uint32_t x = 0; x < 64; ++x)
      if (L(Elem{x}) == b) sol.push_back(Elem{x});
    CHECK(solve_linearized(L, b) == sol);
  }
  // x^4 + x has kernel F4 inside F64.
  CHECK(linearized_kernel(LinearizedMap::frobenius_plus_identity(F, 2)).size() == 2);
  const FieldCtx F16 = FieldCtx::create(4);
  CHECK(linearized_kernel(LinearizedMap::frobenius_plus_identity(F16, 1)) == std::vector<Elem>{Elem{1}});
  for (int n : {3, 5, 7})
    CHECK(kernel_intersection(LinearizedMap::frobenius_plus_identity(FieldCtx::create(n), 1),
                              LinearizedMap::trace_to_subfield(FieldCtx::create(n), 1)) == 0);
  const LinearizedMap A = LinearizedMap::frobenius_plus_identity(F, 2);
  const LinearizedMap B = LinearizedMap::frobenius_plus_identity(F, 3);
  CHECK(kernel_intersection(A, B) == 1);
  CHECK(kernel_intersection(A, A) == 2);
}
