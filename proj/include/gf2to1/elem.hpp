#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace gf2to1 {

/// Exponent for field powers. Reduced modulo 2^n - 1 only for nonzero bases.
using ExpInt = std::uint64_t;

/// One element of GF(2^n) in the polynomial basis: bit i is the coefficient
/// of x^i. The owning FieldCtx is implicit; only the context can multiply.
struct Elem {
  std::uint32_t bits = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t b) : bits(b) {}

  constexpr bool is_zero() const { return bits == 0; }

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;

  // Addition in characteristic 2.
  friend constexpr Elem operator+(Elem a, Elem b) { return Elem{a.bits ^ b.bits}; }
  constexpr Elem& operator+=(Elem o) {
    bits ^= o.bits;
    return *this;
  }
};

}  // namespace gf2to1

template <>
struct std::hash<gf2to1::Elem> {
  std::size_t operator()(gf2to1::Elem e) const noexcept { return std::hash<std::uint32_t>{}(e.bits); }
};
