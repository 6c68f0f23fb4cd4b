#include "gf2to1/polyalg.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace gf2to1 {

namespace {

// Column-echelon reduction over F2. Each column carries the mask of input
// basis vectors that produced it, so columns reducing to zero are kernel
// vectors and a reduced right-hand side yields a preimage.
class F2Eliminator {
 public:
  explicit F2Eliminator(const std::vector<std::uint64_t>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      std::uint64_t v = columns[i];
      std::uint64_t t = std::uint64_t{1} << i;
      reduce(v, t);
      if (v == 0) {
        kernel_.push_back(t);
      } else {
        const int hb = static_cast<int>(std::bit_width(v)) - 1;
        pivots_[static_cast<std::size_t>(hb)] = {v, t};
        has_[static_cast<std::size_t>(hb)] = true;
      }
    }
  }

  const std::vector<std::uint64_t>& kernel() const { return kernel_; }

  std::optional<std::uint64_t> preimage(std::uint64_t b) const {
    std::uint64_t t = 0;
    reduce(b, t);
    if (b != 0) return std::nullopt;
    return t;
  }

 private:
  void reduce(std::uint64_t& v, std::uint64_t& t) const {
    while (v != 0) {
      const auto hb = static_cast<std::size_t>(std::bit_width(v) - 1);
      if (!has_[hb]) return;
      v ^= pivots_[hb].first;
      t ^= pivots_[hb].second;
    }
  }

  std::array<std::pair<std::uint64_t, std::uint64_t>, 64> pivots_{};
  std::array<bool, 64> has_{};
  std::vector<std::uint64_t> kernel_;
};

std::vector<std::uint64_t> widen(const std::vector<std::uint32_t>& cols) {
  return {cols.begin(), cols.end()};
}

}  // namespace

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(FieldCtx ctx, std::vector<Elem> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  for (auto c : c_)
    if (!ctx_.contains(c)) throw Error(Errc::ElementOutOfRange, "coefficient " + to_hex(c) + " outside field");
  normalize();
}

void UniPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::monomial(const FieldCtx& ctx, Elem c, std::size_t degree) {
  std::vector<Elem> v(degree + 1, Elem{0});
  v[degree] = c;
  return UniPoly(ctx, std::move(v));
}

Elem UniPoly::operator()(Elem x) const {
  Elem acc{0};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = ctx_.mul(acc, x) + *it;
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(ctx_.inv(leading()));
}

UniPoly UniPoly::scaled(Elem s) const {
  std::vector<Elem> v(c_);
  for (auto& c : v) c = ctx_.mul(c, s);
  return UniPoly(ctx_, std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  require_same(a.ctx_, b.ctx_);
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), Elem{0});
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UniPoly(a.ctx_, std::move(v));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  require_same(a.ctx_, b.ctx_);
  if (a.is_zero() || b.is_zero()) return UniPoly(a.ctx_);
  std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, Elem{0});
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.ctx_.mul(a.c_[i], b.c_[j]);
  return UniPoly(a.ctx_, std::move(v));
}

DivMod divmod(const UniPoly& p, const UniPoly& q) {
  require_same(p.ctx(), q.ctx());
  if (q.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  const FieldCtx& ctx = p.ctx();
  std::vector<Elem> rem(p.coeffs());
  const int dq = q.degree();
  if (p.degree() < dq) return {UniPoly(ctx), p};
  std::vector<Elem> quot(static_cast<std::size_t>(p.degree() - dq + 1), Elem{0});
  const Elem lead_inv = ctx.inv(q.leading());
  for (int d = p.degree(); d >= dq; --d) {
    const Elem top = rem[static_cast<std::size_t>(d)];
    if (top.is_zero()) continue;
    const Elem factor = ctx.mul(top, lead_inv);
    quot[static_cast<std::size_t>(d - dq)] = factor;
    for (int i = 0; i <= dq; ++i)
      rem[static_cast<std::size_t>(d - dq + i)] += ctx.mul(factor, q.coeff(static_cast<std::size_t>(i)));
  }
  return {UniPoly(ctx, std::move(quot)), UniPoly(ctx, std::move(rem))};
}

UniPoly gcd(const UniPoly& p, const UniPoly& q) {
  UniPoly a = p, b = q;
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly compose(const UniPoly& p, const UniPoly& q) {
  require_same(p.ctx(), q.ctx());
  UniPoly acc(p.ctx());
  for (int i = p.degree(); i >= 0; --i)
    acc = acc * q + UniPoly::constant(p.ctx(), p.coeff(static_cast<std::size_t>(i)));
  return acc;
}

Elem sylvester_resultant(const UniPoly& f, const UniPoly& g) {
  require_same(f.ctx(), g.ctx());
  if (f.degree() < 1 || g.degree() < 1) throw Error(Errc::DegreeTooLow, "resultant needs two non-constant polynomials");
  const FieldCtx& ctx = f.ctx();
  const auto n = static_cast<std::size_t>(f.degree());
  const auto m = static_cast<std::size_t>(g.degree());
  const std::size_t size = n + m;

  // Rows hold coefficients from the leading one down, shifted right per row.
  std::vector<std::vector<Elem>> mat(size, std::vector<Elem>(size, Elem{0}));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) mat[r][r + i] = f.coeff(n - i);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) mat[m + r][r + i] = g.coeff(m - i);

  // Row swaps only change the sign, which is invisible in characteristic 2.
  Elem det = ctx.one();
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && mat[pivot][col].is_zero()) ++pivot;
    if (pivot == size) return Elem{0};
    std::swap(mat[pivot], mat[col]);
    const Elem p = mat[col][col];
    det = ctx.mul(det, p);
    const Elem p_inv = ctx.inv(p);
    for (std::size_t r = col + 1; r < size; ++r) {
      if (mat[r][col].is_zero()) continue;
      const Elem factor = ctx.mul(mat[r][col], p_inv);
      for (std::size_t c = col; c < size; ++c) mat[r][c] += ctx.mul(factor, mat[col][c]);
    }
  }
  return det;
}

std::vector<Elem> solve_quadratic(const FieldCtx& ctx, Elem a, Elem b) {
  if (a.is_zero()) return {ctx.sqrt(b)};
  const LinearizedMap lin(ctx, {{ctx.one(), 1}, {a, 0}});
  auto roots = solve_linearized(lin, b);
  for (auto r : roots)
    if (!(ctx.sqr(r) + ctx.mul(a, r) + b).is_zero()) throw std::logic_error("quadratic root failed substitution");
  return roots;
}

CubicRoot cubic_unique_root(const FieldCtx& ctx, Elem a, Elem b, int m) {
  if (b.is_zero()) throw Error(Errc::ZeroConstantTerm, "cubic criterion needs b != 0");
  const int deg = m == 0 ? ctx.degree() : m;
  if (!ctx.in_subfield(a, deg) || !ctx.in_subfield(b, deg))
    throw Error(Errc::ElementOutOfRange, "cubic coefficients outside F_2^" + std::to_string(deg));
  const Elem t = ctx.trace(ctx.div(ctx.pow(a, 3), ctx.sqr(b)) + ctx.one(), deg, 1);
  CubicRoot out;
  out.unique = t == ctx.one();
  if (!out.unique) return out;
  int count = 0;
  for (Elem x : ctx.subfield_elements(deg)) {
    if ((ctx.pow(x, 3) + ctx.mul(a, x) + b).is_zero()) {
      ++count;
      out.root = x;
    }
  }
  if (count != 1) throw std::logic_error("cubic criterion predicted a unique root but found " + std::to_string(count));
  return out;
}

bool quartic_two_to_one(const FieldCtx& ctx, Elem a3, Elem a2, Elem a1, int m) {
  const int deg = m == 0 ? ctx.degree() : m;
  if (a3.is_zero() && a1.is_zero()) return !a2.is_zero();
  if (a3.is_zero()) return ctx.trace(ctx.div(ctx.pow(a2, 3), ctx.sqr(a1)) + ctx.one(), deg, 1) == ctx.one();
  return deg % 2 == 1 && ctx.sqr(a2) == ctx.mul(a1, a3);
}

// ---------------------------------------------------------------------------
// LinearizedMap

LinearizedMap::LinearizedMap(FieldCtx ctx, std::vector<Term> terms) : ctx_(std::move(ctx)) {
  const int n = ctx_.degree();
  std::vector<Elem> by_power(static_cast<std::size_t>(n), Elem{0});
  for (auto [c, j] : terms) {
    if (!ctx_.contains(c)) throw Error(Errc::ElementOutOfRange, "coefficient " + to_hex(c) + " outside field");
    by_power[static_cast<std::size_t>(((j % n) + n) % n)] += c;
  }
  for (int j = 0; j < n; ++j)
    if (!by_power[static_cast<std::size_t>(j)].is_zero()) terms_.emplace_back(by_power[static_cast<std::size_t>(j)], j);

  cols_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cols_[static_cast<std::size_t>(i)] = evaluate_terms(Elem{std::uint32_t{1} << i}).bits;

  // Matrix and term list must agree: exhaustively for small fields, on a
  // fixed stride otherwise.
  const std::uint32_t q = ctx_.order();
  const std::uint32_t step = n <= 12 ? 1 : q / 257 + 1;
  for (std::uint32_t v = 0; v < q; v += step)
    if ((*this)(Elem{v}) != evaluate_terms(Elem{v})) throw std::logic_error("linearized matrix disagrees with term list");
}

LinearizedMap LinearizedMap::frobenius_plus_identity(const FieldCtx& ctx, int k) {
  return LinearizedMap(ctx, {{ctx.one(), k}, {ctx.one(), 0}});
}

LinearizedMap LinearizedMap::trace_to_subfield(const FieldCtx& ctx, int m) {
  if (m < 1 || ctx.degree() % m != 0)
    throw Error(Errc::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(ctx.degree()));
  std::vector<Term> terms;
  for (int i = 0; i < ctx.degree() / m; ++i) terms.emplace_back(ctx.one(), m * i);
  return LinearizedMap(ctx, std::move(terms));
}

Elem LinearizedMap::operator()(Elem x) const {
  std::uint32_t out = 0;
  for (std::uint32_t v = x.bits; v; v &= v - 1) out ^= cols_[static_cast<std::size_t>(std::countr_zero(v))];
  return Elem{out};
}

Elem LinearizedMap::evaluate_terms(Elem x) const {
  Elem acc{0};
  for (auto [c, j] : terms_) acc += ctx_.mul(c, ctx_.frobenius(x, j));
  return acc;
}

bool LinearizedMap::coefficients_in_subfield(int m) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return ctx_.in_subfield(t.first, m); });
}

LinearizedMap LinearizedMap::after(const LinearizedMap& other) const {
  require_same(ctx_, other.ctx_);
  // c x^(2^j) applied to d x^(2^k) gives c d^(2^j) x^(2^(j+k)).
  std::vector<Term> terms;
  for (auto [c, j] : terms_)
    for (auto [d, k] : other.terms_) terms.emplace_back(ctx_.mul(c, ctx_.frobenius(d, j)), j + k);
  return LinearizedMap(ctx_, std::move(terms));
}

LinearizedMap LinearizedMap::scaled(Elem s) const {
  std::vector<Term> terms(terms_);
  for (auto& t : terms) t.first = ctx_.mul(t.first, s);
  return LinearizedMap(ctx_, std::move(terms));
}

LinearizedMap operator+(const LinearizedMap& a, const LinearizedMap& b) {
  require_same(a.ctx_, b.ctx_);
  std::vector<LinearizedMap::Term> terms(a.terms_);
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return LinearizedMap(a.ctx_, std::move(terms));
}

std::vector<Elem> linearized_kernel(const LinearizedMap& L) {
  const F2Eliminator elim(widen(L.columns()));
  std::vector<Elem> basis;
  for (auto t : elim.kernel()) basis.emplace_back(static_cast<std::uint32_t>(t));
  return basis;
}

int kernel_intersection(const LinearizedMap& L1, const LinearizedMap& L2) {
  require_same(L1.ctx(), L2.ctx());
  const int n = L1.ctx().degree();
  std::vector<std::uint64_t> stacked(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < stacked.size(); ++i)
    stacked[i] = static_cast<std::uint64_t>(L1.columns()[i]) | (static_cast<std::uint64_t>(L2.columns()[i]) << n);
  return static_cast<int>(F2Eliminator(stacked).kernel().size());
}

std::vector<Elem> solve_linearized(const LinearizedMap& L, Elem b) {
  const F2Eliminator elim(widen(L.columns()));
  const auto particular = elim.preimage(b.bits);
  if (!particular) return {};
  const auto& kernel = elim.kernel();
  std::vector<Elem> out;
  out.reserve(std::size_t{1} << kernel.size());
  for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << kernel.size()); ++combo) {
    std::uint64_t x = *particular;
    for (std::size_t i = 0; i < kernel.size(); ++i)
      if (combo >> i & 1) x ^= kernel[i];
    out.emplace_back(static_cast<std::uint32_t>(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gf2to1
