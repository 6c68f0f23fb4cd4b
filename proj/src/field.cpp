#include "gf2to1/field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <map>
#include <mutex>

namespace gf2to1 {

namespace {

constexpr std::array<std::uint32_t, kMaxDegree + 1> kModulusTable = {
    0,          0x2,        0x7,        0xb,       0x13,      0x25,      0x43,
    0x83,       0x11b,      0x203,      0x409,     0x805,     0x1009,    0x201b,
    0x4021,     0x8003,     0x1002b,    0x20009,   0x40009,   0x80027,   0x100009,
    0x200005,   0x400003,   0x800021,   0x100001b,
};

constexpr int kLogTableMaxDegree = 20;

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : static_cast<int>(std::bit_width(p)) - 1; }

std::uint64_t poly_mod_f2(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p != 0) continue;
    out.push_back(p);
    while (v % p == 0) v /= p;
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::ElementOutOfRange: return "ElementOutOfRange";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::DegreeTooLow: return "DegreeTooLow";
    case Errc::ZeroConstantTerm: return "ZeroConstantTerm";
    case Errc::NotTwoToOne: return "NotTwoToOne";
    case Errc::OddDomain: return "OddDomain";
    case Errc::DomainNotFullField: return "DomainNotFullField";
    case Errc::NotBijective: return "NotBijective";
    case Errc::InvolutionsDiffer: return "InvolutionsDiffer";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ConditionFailed: return "ConditionFailed";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::ZeroC: return "ZeroC";
    case Errc::NoClosedForm: return "NoClosedForm";
    case Errc::DeltaInSubfield: return "DeltaInSubfield";
    case Errc::PoleAtTheta: return "PoleAtTheta";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

std::uint32_t default_modulus(int n) {
  if (n < kMinDegree || n > kMaxDegree)
    throw Error(Errc::DegreeOutOfRange, "degree " + std::to_string(n) + " outside [1,24]");
  return kModulusTable[static_cast<std::size_t>(n)];
}

bool is_irreducible_f2(std::uint32_t poly) {
  const int n = poly_degree(poly);
  if (n < 1) return false;
  for (int d = 1; d <= n / 2; ++d)
    for (std::uint64_t g = std::uint64_t{1} << d; g < (std::uint64_t{2} << d); ++g)
      if (poly_mod_f2(poly, g) == 0) return false;
  return true;
}

FieldCtx FieldCtx::create(int n, std::optional<std::uint32_t> modulus) {
  const std::uint32_t mod = modulus ? *modulus : default_modulus(n);
  if (n < kMinDegree || n > kMaxDegree)
    throw Error(Errc::DegreeOutOfRange, "degree " + std::to_string(n) + " outside [1,24]");
  if (poly_degree(mod) != n)
    throw Error(Errc::NotIrreducible, "modulus " + to_hex(mod) + " does not have degree " + std::to_string(n));
  if (!is_irreducible_f2(mod)) throw Error(Errc::NotIrreducible, "modulus " + to_hex(mod) + " is reducible");

  // Tables are immutable, so one instance per (n, modulus) is shared.
  static std::mutex cache_mutex;
  static std::map<std::pair<int, std::uint32_t>, std::shared_ptr<const Tables>> cache;
  const std::lock_guard<std::mutex> lock(cache_mutex);
  if (const auto it = cache.find({n, mod}); it != cache.end()) return FieldCtx(it->second);

  auto t = std::make_shared<Tables>();
  t->n = n;
  t->modulus = mod;
  t->order = std::uint32_t{1} << n;

  FieldCtx probe(t);
  const std::uint64_t group = t->order - 1;
  const auto factors = prime_factors(group);
  for (std::uint32_t g = (n == 1 ? 1 : 2); g < t->order; ++g) {
    bool primitive = true;
    for (auto p : factors) {
      // square-and-multiply with the table-free multiply
      std::uint32_t acc = 1, base = g;
      for (std::uint64_t e = group / p; e; e >>= 1) {
        if (e & 1) acc = probe.mul_slow(acc, base);
        base = probe.mul_slow(base, base);
      }
      if (acc == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      t->generator = Elem{g};
      break;
    }
  }

  if (n <= kLogTableMaxDegree) {
    t->use_logs = true;
    t->exp.resize(2 * group);
    t->log.assign(t->order, 0);
    std::uint32_t v = 1;
    for (std::uint64_t i = 0; i < group; ++i) {
      t->exp[i] = v;
      t->exp[i + group] = v;
      t->log[v] = static_cast<std::uint32_t>(i);
      v = probe.mul_slow(v, t->generator.bits);
    }
  }
  cache[{n, mod}] = t;
  return FieldCtx(std::move(t));
}

std::uint32_t FieldCtx::mul_slow(std::uint32_t a, std::uint32_t b) const {
  std::uint64_t prod = 0;
  for (std::uint64_t x = a; b; b >>= 1, x <<= 1)
    if (b & 1) prod ^= x;
  const int n = t_->n;
  for (int d = poly_degree(prod); d >= n; d = poly_degree(prod))
    prod ^= static_cast<std::uint64_t>(t_->modulus) << (d - n);
  return static_cast<std::uint32_t>(prod);
}

Elem FieldCtx::element(std::uint64_t bits) const {
  if (bits >= t_->order) throw Error(Errc::ElementOutOfRange, to_hex(bits) + " is not below 2^" + std::to_string(t_->n));
  return Elem{static_cast<std::uint32_t>(bits)};
}

Elem FieldCtx::mul(Elem a, Elem b) const {
  if (a.is_zero() || b.is_zero()) return Elem{0};
  if (t_->use_logs) return Elem{t_->exp[t_->log[a.bits] + t_->log[b.bits]]};
  return Elem{mul_slow(a.bits, b.bits)};
}

Elem FieldCtx::inv(Elem a) const {
  if (a.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (t_->use_logs) {
    const std::uint32_t l = t_->log[a.bits];
    return Elem{t_->exp[l == 0 ? 0 : (t_->order - 1) - l]};
  }
  return pow(a, t_->order - 2);
}

Elem FieldCtx::div(Elem a, Elem b) const {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
  return mul(a, inv(b));
}

Elem FieldCtx::pow(Elem a, ExpInt e) const {
  if (e == 0) return one();
  if (a.is_zero()) return zero();
  const std::uint64_t group = t_->order - 1;
  const std::uint64_t r = e % group;
  if (t_->use_logs) return Elem{t_->exp[(static_cast<std::uint64_t>(t_->log[a.bits]) * r) % group]};
  std::uint32_t acc = 1, base = a.bits;
  for (std::uint64_t k = r; k; k >>= 1) {
    if (k & 1) acc = mul_slow(acc, base);
    base = mul_slow(base, base);
  }
  return Elem{acc};
}

Elem FieldCtx::frobenius(Elem a, long long j) const {
  const long long n = t_->n;
  long long k = ((j % n) + n) % n;
  for (; k > 0; --k) a = sqr(a);
  return a;
}

void FieldCtx::require_divisor(int m) const {
  if (m < 1 || t_->n % m != 0)
    throw Error(Errc::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(t_->n));
}

Elem FieldCtx::trace(Elem a, int k, int l) const {
  require_divisor(k);
  if (l < 1 || k % l != 0) throw Error(Errc::NotADivisor, std::to_string(l) + " does not divide " + std::to_string(k));
  Elem sum{0};
  Elem term = a;
  for (int i = 0; i < k / l; ++i) {
    sum += term;
    term = frobenius(term, l);
  }
  return sum;
}

bool FieldCtx::in_subfield(Elem a, int m) const {
  require_divisor(m);
  return frobenius(a, m) == a;
}

std::vector<Elem> FieldCtx::subfield_elements(int m) const {
  require_divisor(m);
  std::vector<Elem> out{Elem{0}};
  // F_{2^m}^* is generated by g^((2^n-1)/(2^m-1)).
  const std::uint64_t sub_order = (std::uint64_t{1} << m) - 1;
  const Elem h = pow(generator(), (order() - 1) / sub_order);
  Elem v = one();
  for (std::uint64_t i = 0; i < sub_order; ++i) {
    out.push_back(v);
    v = mul(v, h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExpInt FieldCtx::reduce_exponent(ExpInt e) const {
  if (e == 0) return 0;
  const std::uint64_t group = order() - 1;
  return (e - 1) % group + 1;
}

ExpInt FieldCtx::shift_exponent(ExpInt e, long long j) const {
  if (e == 0) return 0;
  const std::uint64_t group = order() - 1;
  const long long n = t_->n;
  const long long k = ((j % n) + n) % n;
  const unsigned __int128 r = (static_cast<unsigned __int128>(reduce_exponent(e)) << k) % group;
  return r == 0 ? group : static_cast<ExpInt>(r);
}

ExpInt FieldCtx::signed_exponent(long long e) const {
  const long long group = static_cast<long long>(order() - 1);
  if (e >= 0) return static_cast<ExpInt>(e);
  long long r = ((e % group) + group) % group;
  return r == 0 ? static_cast<ExpInt>(group) : static_cast<ExpInt>(r);
}

std::string FieldCtx::to_json() const {
  return "{\"n\": " + std::to_string(degree()) + ", \"modulus\": \"" + to_hex(modulus()) + "\"}";
}

void require_same(const FieldCtx& a, const FieldCtx& b) {
  if (!(a == b)) throw Error(Errc::ContextMismatch, "operands belong to different fields");
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t int_mod_inverse(std::uint64_t e, std::uint64_t M) {
  if (M == 0) throw Error(Errc::NotInvertible, "modulus 0");
  if (gcd_u64(e % M, M) != 1 && M != 1)
    throw Error(Errc::NotInvertible, std::to_string(e) + " is not invertible modulo " + std::to_string(M));
  if (M == 1) return 0;
  __int128 old_r = static_cast<__int128>(e % M), r = M;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  __int128 t = old_s % static_cast<__int128>(M);
  if (t < 0) t += M;
  return static_cast<std::uint64_t>(t);
}

std::string to_hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string to_hex(Elem e) { return to_hex(static_cast<std::uint64_t>(e.bits)); }

std::uint64_t parse_hex(const std::string& s) {
  if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
    throw Error(Errc::ParseError, "expected 0x-prefixed hex, got '" + s + "'");
  if (s.size() > 2 + 16) throw Error(Errc::ParseError, "hex literal too long: '" + s + "'");
  std::uint64_t v = 0;
  for (std::size_t i = 2; i < s.size(); ++i) {
    const char ch = s[i];
    int d;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
    else throw Error(Errc::ParseError, "bad hex digit in '" + s + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

Elem parse_elem(const FieldCtx& ctx, const std::string& s) {
  const std::uint64_t v = parse_hex(s);
  if (v >= ctx.order()) throw Error(Errc::ParseError, "element " + s + " outside GF(2^" + std::to_string(ctx.degree()) + ")");
  return Elem{static_cast<std::uint32_t>(v)};
}

}  // namespace gf2to1
