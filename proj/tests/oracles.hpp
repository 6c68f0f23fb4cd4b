#pragma once

// Brute-force reference implementations used by the tests. They share no
// code with the library: plain shift-and-add multiplication, definitional
// traces, root counting by evaluation and a Euclidean resultant.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct Field {
  int n;
  u32 mod;
  u32 q() const { return u32{1} << n; }

  u32 mul(u32 a, u32 b) const {
    u32 r = 0;
    for (int i = 0; i < n; ++i) {
      if (b >> i & 1) r ^= a;
      a <<= 1;
      if (a >> n & 1) a ^= mod;
    }
    return r;
  }
  u32 pow(u32 a, u64 e) const {
    u32 r = 1;
    for (u64 i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  // Square-and-multiply for large exponents, still built on mul above.
  u32 pow_fast(u32 a, u64 e) const {
    u32 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u32 inv(u32 a) const {
    for (u32 b = 1; b < q(); ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }
  u32 frob(u32 a, int j) const {
    for (int i = 0; i < j; ++i) a = mul(a, a);
    return a;
  }
  // sum_{i < k/l} a^(2^(l i))
  u32 trace(u32 a, int k, int l) const {
    u32 r = 0;
    for (int i = 0; i < k / l; ++i) r ^= frob(a, l * i);
    return r;
  }
  u32 trace(u32 a) const { return trace(a, n, 1); }
  bool in_subfield(u32 a, int m) const { return frob(a, m) == a; }
};

// Polynomial remainder over F2 on bit masks.
inline u64 f2_mod(u64 a, u64 b) {
  int db = 63 - __builtin_clzll(b);
  while (a && 63 - __builtin_clzll(a) >= db) a ^= b << ((63 - __builtin_clzll(a)) - db);
  return a;
}

inline bool f2_irreducible(u64 p) {
  int d = 63 - __builtin_clzll(p);
  for (u64 g = 2; g < (u64{1} << (d / 2 + 1)); ++g)
    if (f2_mod(p, g) == 0) return false;
  return true;
}

inline std::map<u32, u64> preimage_counts(const std::vector<u32>& values) {
  std::map<u32, u64> c;
  for (u32 v : values) ++c[v];
  return c;
}

// Every value has 2 preimages; on odd-size domains exactly one value has 1.
inline bool two_to_one(const std::vector<u32>& values) {
  u64 ones = 0;
  for (const auto& [v, k] : preimage_counts(values)) {
    if (k == 1) ++ones;
    else if (k != 2) return false;
  }
  return values.size() % 2 == 0 ? ones == 0 : ones == 1;
}

// The other preimage of f(a), found by scanning the domain.
inline std::optional<u32> partner(const std::vector<u32>& dom, const std::vector<u32>& values, std::size_t i) {
  for (std::size_t j = 0; j < dom.size(); ++j)
    if (j != i && values[j] == values[i]) return dom[j];
  return std::nullopt;
}

// Coefficients low to high.
inline u32 eval(const Field& F, const std::vector<u32>& p, u32 x) {
  u32 r = 0, xp = 1;
  for (u32 c : p) {
    r ^= F.mul(c, xp);
    xp = F.mul(xp, x);
  }
  return r;
}

inline std::vector<u32> roots(const Field& F, const std::vector<u32>& p) {
  std::vector<u32> r;
  for (u32 x = 0; x < F.q(); ++x)
    if (eval(F, p, x) == 0) r.push_back(x);
  return r;
}

inline void trim(std::vector<u32>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::vector<u32> poly_rem(const Field& F, std::vector<u32> a, std::vector<u32> b) {
  trim(a);
  trim(b);
  const u32 lc_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const u32 t = F.mul(a.back(), lc_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] ^= F.mul(t, b[i]);
    trim(a);
  }
  return a;
}

// Res(f, g) by the Euclidean recurrence; signs vanish in characteristic 2.
inline u32 resultant(const Field& F, std::vector<u32> f, std::vector<u32> g) {
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  u32 acc = 1;
  while (true) {
    const int df = static_cast<int>(f.size()) - 1, dg = static_cast<int>(g.size()) - 1;
    if (dg == 0) return F.mul(acc, F.pow_fast(g[0], static_cast<u64>(df)));
    if (df == 0) return F.mul(acc, F.pow_fast(f[0], static_cast<u64>(dg)));
    if (df < dg) {
      std::swap(f, g);
      continue;
    }
    std::vector<u32> r = poly_rem(F, f, g);
    if (r.empty()) return 0;
    const int dr = static_cast<int>(r.size()) - 1;
    acc = F.mul(acc, F.pow_fast(g.back(), static_cast<u64>(df - dr)));
    f = g;
    g = r;
  }
}

}  // namespace oracle
