#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gf2to1/elem.hpp"
#include "gf2to1/error.hpp"

namespace gf2to1 {

inline constexpr int kMinDegree = 1;
inline constexpr int kMaxDegree = 24;

/// Smallest irreducible polynomial of each degree 1..24 as an (n+1)-bit mask.
std::uint32_t default_modulus(int n);

/// Trial division against every polynomial of degree 1..deg/2.
bool is_irreducible_f2(std::uint32_t poly);

/// Exact arithmetic in GF(2^n), 1 <= n <= 24.
///
/// Immutable after construction; copies share the same tables, so a context
/// can be passed by value and used from several threads at once. Up to
/// n = 20 multiplication and exponentiation go through log/antilog tables
/// built from a generator found at construction; above that a carry-less
/// multiply with bitwise reduction is used.
class FieldCtx {
 public:
  /// Context over the default modulus, or `modulus` when given. The modulus
  /// is always re-checked for irreducibility.
  static FieldCtx create(int n, std::optional<std::uint32_t> modulus = std::nullopt);

  int degree() const { return t_->n; }
  std::uint32_t modulus() const { return t_->modulus; }
  /// Number of elements, 2^n.
  std::uint32_t order() const { return t_->order; }
  /// A primitive element (generator of the multiplicative group).
  Elem generator() const { return t_->generator; }

  bool contains(Elem a) const { return a.bits < t_->order; }
  /// Checked conversion from a raw mask.
  Elem element(std::uint64_t bits) const;

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }

  Elem add(Elem a, Elem b) const { return a + b; }
  Elem mul(Elem a, Elem b) const;
  Elem sqr(Elem a) const { return mul(a, a); }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const;
  /// a^e with 0^0 = 1 and 0^e = 0 for e > 0.
  Elem pow(Elem a, ExpInt e) const;

  /// a^(2^j); j may be any integer and is taken modulo n.
  Elem frobenius(Elem a, long long j) const;
  /// The unique square root a^(2^(n-1)).
  Elem sqrt(Elem a) const { return frobenius(a, degree() - 1); }

  /// Absolute trace, 0 or 1.
  Elem trace_abs(Elem a) const { return trace(a, degree(), 1); }
  /// Relative trace onto the subfield F_{2^m}; m must divide n.
  Elem trace_rel(Elem a, int m) const { return trace(a, degree(), m); }
  /// Tr^k_l(a) = sum_{i < k/l} a^(2^(l*i)). Requires l | k and k | n; for
  /// k < n the argument is expected to lie in F_{2^k}.
  Elem trace(Elem a, int k, int l) const;

  /// Membership in the subfield F_{2^m} (a^(2^m) = a); m must divide n.
  bool in_subfield(Elem a, int m) const;
  /// All elements of F_{2^m} inside this field, ascending.
  std::vector<Elem> subfield_elements(int m) const;

  /// Reduce a positive exponent modulo 2^n - 1 into [1, 2^n - 1]; 0 stays 0.
  /// Keeps 0^e behaviour intact for every reduced exponent.
  ExpInt reduce_exponent(ExpInt e) const;
  /// e * 2^j as a reduced exponent.
  ExpInt shift_exponent(ExpInt e, long long j) const;
  /// Map a signed exponent (e.g. 2 - 2^m) to an equivalent reduced ExpInt.
  ExpInt signed_exponent(long long e) const;

  /// {"n": 4, "modulus": "0x13"}
  std::string to_json() const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.t_ == b.t_ || (a.degree() == b.degree() && a.modulus() == b.modulus());
  }

 private:
  struct Tables {
    int n = 0;
    std::uint32_t modulus = 0;
    std::uint32_t order = 0;
    Elem generator;
    bool use_logs = false;
    std::vector<std::uint32_t> exp;  // 2 * (order - 1) entries
    std::vector<std::uint32_t> log;
  };

  explicit FieldCtx(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  void require_divisor(int m) const;

  std::shared_ptr<const Tables> t_;
};

/// Throws ContextMismatch when the two contexts differ.
void require_same(const FieldCtx& a, const FieldCtx& b);

/// t with e*t = 1 (mod M), 0 < t < M, by extended Euclid. For M = 1 returns 0.
std::uint64_t int_mod_inverse(std::uint64_t e, std::uint64_t M);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Lowercase hex with 0x prefix.
std::string to_hex(std::uint64_t v);
std::string to_hex(Elem e);
/// Parses "0x..." (prefix required); throws ParseError.
std::uint64_t parse_hex(const std::string& s);
Elem parse_elem(const FieldCtx& ctx, const std::string& s);

}  // namespace gf2to1
