#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gf2to1/field.hpp"

namespace gf2to1 {

/// Dense univariate polynomial over a FieldCtx; coeffs()[i] multiplies x^i.
/// Always normalized: no trailing zero coefficients.
class UniPoly {
 public:
  explicit UniPoly(FieldCtx ctx, std::vector<Elem> coeffs = {});

  static UniPoly monomial(const FieldCtx& ctx, Elem c, std::size_t degree);
  static UniPoly constant(const FieldCtx& ctx, Elem c) { return monomial(ctx, c, 0); }
  static UniPoly x(const FieldCtx& ctx) { return monomial(ctx, ctx.one(), 1); }

  const FieldCtx& ctx() const { return ctx_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }
  Elem leading() const { return c_.empty() ? Elem{0} : c_.back(); }

  Elem operator()(Elem x) const;
  UniPoly monic() const;
  UniPoly scaled(Elem s) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.ctx_ == b.ctx_ && a.c_ == b.c_; }

 private:
  void normalize();

  FieldCtx ctx_;
  std::vector<Elem> c_;
};

struct DivMod {
  UniPoly quot;
  UniPoly rem;
};

DivMod divmod(const UniPoly& p, const UniPoly& q);
/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& p, const UniPoly& q);
/// p(q(x)).
UniPoly compose(const UniPoly& p, const UniPoly& q);

/// Determinant of the Sylvester matrix of f and g (both of degree >= 1).
Elem sylvester_resultant(const UniPoly& f, const UniPoly& g);

/// Roots of x^2 + a x + b, ascending. For a != 0 the root is obtained by
/// solving the F2-linear system x^2 + a x = b; the result is empty exactly
/// when Tr(b / a^2) = 1.
std::vector<Elem> solve_quadratic(const FieldCtx& ctx, Elem a, Elem b);

struct CubicRoot {
  bool unique = false;
  std::optional<Elem> root;
};

/// x^3 + a x + b with b != 0: unique root iff Tr(a^3 / b^2 + 1) = 1. With
/// m > 0 the question is asked over the subfield F_{2^m} (a, b must lie
/// there); m = 0 means the whole field.
CubicRoot cubic_unique_root(const FieldCtx& ctx, Elem a, Elem b, int m = 0);

/// 2-to-1 criterion for x^4 + a3 x^3 + a2 x^2 + a1 x over F_{2^m} (m = 0:
/// the whole field).
bool quartic_two_to_one(const FieldCtx& ctx, Elem a3, Elem a2, Elem a1, int m = 0);

/// F2-linear map sum_j c_j x^(2^j), kept both as a term list and as an n x n
/// bit matrix (column i is the image of x^i).
class LinearizedMap {
 public:
  using Term = std::pair<Elem, int>;  // (coefficient, frobenius power)

  LinearizedMap(FieldCtx ctx, std::vector<Term> terms);

  static LinearizedMap identity(const FieldCtx& ctx) { return LinearizedMap(ctx, {{ctx.one(), 0}}); }
  static LinearizedMap zero(const FieldCtx& ctx) { return LinearizedMap(ctx, {}); }
  /// x^(2^k) + x
  static LinearizedMap frobenius_plus_identity(const FieldCtx& ctx, int k);
  /// Tr^n_m as sum_i x^(2^(m*i)).
  static LinearizedMap trace_to_subfield(const FieldCtx& ctx, int m);

  const FieldCtx& ctx() const { return ctx_; }
  /// Terms with frobenius powers reduced into [0, n) and like powers merged.
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<std::uint32_t>& columns() const { return cols_; }

  /// Matrix action.
  Elem operator()(Elem x) const;
  /// Direct evaluation of the term list.
  Elem evaluate_terms(Elem x) const;

  bool coefficients_in_subfield(int m) const;

  /// (*this)(other(x))
  LinearizedMap after(const LinearizedMap& other) const;
  LinearizedMap scaled(Elem s) const;
  friend LinearizedMap operator+(const LinearizedMap& a, const LinearizedMap& b);

 private:
  FieldCtx ctx_;
  std::vector<Term> terms_;
  std::vector<std::uint32_t> cols_;
};

/// A basis of ker(L).
std::vector<Elem> linearized_kernel(const LinearizedMap& L);
/// Dimension of ker(L1) intersected with ker(L2).
int kernel_intersection(const LinearizedMap& L1, const LinearizedMap& L2);
/// Every x with L(x) = b, ascending: empty or a coset of the kernel.
std::vector<Elem> solve_linearized(const LinearizedMap& L, Elem b);

}  // namespace gf2to1
