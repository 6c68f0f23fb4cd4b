#include "gf2to1/mapping.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace gf2to1 {

namespace {

void check_elem(const FieldCtx& ctx, Elem a, const char* what) {
  if (!ctx.contains(a)) throw Error(Errc::ElementOutOfRange, std::string(what) + " " + to_hex(a) + " outside field");
}

void check_inner(const FieldCtx& ctx, const Inner& in) {
  check_elem(ctx, in.delta, "inner offset");
  if (in.lin) require_same(ctx, in.lin->ctx());
  if (in.arg) require_same(ctx, in.arg->ctx());
}

// (value, multiplicity) ascending by value. Dense domains count into a
// field-sized array; sparse ones sort a copy.
std::vector<std::pair<Elem, std::uint64_t>> count_values(const FieldCtx& ctx, std::span<const Elem> values) {
  std::vector<std::pair<Elem, std::uint64_t>> out;
  if (values.size() * 16 >= ctx.order()) {
    std::vector<std::uint32_t> counts(ctx.order(), 0);
    for (Elem v : values) {
      check_elem(ctx, v, "value");
      ++counts[v.bits];
    }
    for (std::uint32_t v = 0; v < ctx.order(); ++v)
      if (counts[v]) out.emplace_back(Elem{v}, counts[v]);
    return out;
  }
  std::vector<Elem> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    out.emplace_back(sorted[i], j - i);
    i = j;
  }
  return out;
}

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// MappingSpec

Elem Inner::operator()(Elem x) const {
  Elem v = arg ? (*arg)(x) : x;
  if (lin) v = (*lin)(v);
  return v + delta;
}

MappingSpec::MappingSpec(FieldCtx ctx, std::vector<Term> terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    check_elem(ctx_, t.c, "coefficient");
    for (const auto& f : t.factors) check_inner(ctx_, f.inner);
  }
}

MappingSpec MappingSpec::constant(const FieldCtx& ctx, Elem c) { return MappingSpec(ctx, {Term{c, {}}}); }

MappingSpec MappingSpec::monomial(const FieldCtx& ctx, Elem c, ExpInt e) {
  return MappingSpec(ctx, {Term{c, {Factor{Inner::x(), e}}}});
}

MappingSpec MappingSpec::power(const FieldCtx& ctx, Inner inner, ExpInt e, Elem c) {
  return MappingSpec(ctx, {Term{c, {Factor{std::move(inner), e}}}});
}

MappingSpec MappingSpec::linearized(const LinearizedMap& L, Elem delta) {
  return power(L.ctx(), Inner::affine(L, delta), 1, L.ctx().one());
}

MappingSpec MappingSpec::from_poly(const UniPoly& p) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (p.coeffs()[i].is_zero()) continue;
    if (i == 0)
      terms.push_back(Term{p.coeffs()[i], {}});
    else
      terms.push_back(Term{p.coeffs()[i], {Factor{Inner::x(), i}}});
  }
  return MappingSpec(p.ctx(), std::move(terms));
}

Elem MappingSpec::operator()(Elem x) const {
  Elem sum{0};
  for (const auto& t : terms_) {
    Elem v = t.c;
    for (const auto& f : t.factors) {
      if (v.is_zero()) break;
      v = ctx_.mul(v, ctx_.pow(f.inner(x), f.e));
    }
    sum += v;
  }
  return sum;
}

MappingSpec MappingSpec::scaled(Elem s) const {
  std::vector<Term> terms(terms_);
  for (auto& t : terms) t.c = ctx_.mul(t.c, s);
  return MappingSpec(ctx_, std::move(terms));
}

MappingSpec MappingSpec::frobenius(long long j) const {
  std::vector<Term> terms(terms_);
  for (auto& t : terms) {
    t.c = ctx_.frobenius(t.c, j);
    for (auto& f : t.factors) f.e = ctx_.shift_exponent(f.e, j);
  }
  return MappingSpec(ctx_, std::move(terms));
}

MappingSpec MappingSpec::compose(const MappingSpec& g) const {
  require_same(ctx_, g.ctx_);
  const auto shared_g = std::make_shared<const MappingSpec>(g);
  std::vector<Term> terms(terms_);
  for (auto& t : terms)
    for (auto& f : t.factors)
      f.inner.arg = f.inner.arg ? std::make_shared<const MappingSpec>(f.inner.arg->compose(g)) : shared_g;
  return MappingSpec(ctx_, std::move(terms));
}

MappingSpec operator+(const MappingSpec& a, const MappingSpec& b) {
  require_same(a.ctx_, b.ctx_);
  std::vector<Term> terms(a.terms_);
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return MappingSpec(a.ctx_, std::move(terms));
}

MappingSpec operator*(const MappingSpec& a, const MappingSpec& b) {
  require_same(a.ctx_, b.ctx_);
  std::vector<Term> terms;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Term p{a.ctx_.mul(s.c, t.c), s.factors};
      p.factors.insert(p.factors.end(), t.factors.begin(), t.factors.end());
      terms.push_back(std::move(p));
    }
  return MappingSpec(a.ctx_, std::move(terms));
}

// ---------------------------------------------------------------------------
// DomainSet

DomainSet::DomainSet(FieldCtx ctx, Kind kind, std::vector<Elem> elems)
    : ctx_(std::move(ctx)), kind_(kind), elems_(std::make_shared<const std::vector<Elem>>(sorted_unique(std::move(elems)))) {}

DomainSet DomainSet::full(const FieldCtx& ctx) {
  std::vector<Elem> v(ctx.order());
  for (std::uint32_t i = 0; i < ctx.order(); ++i) v[i] = Elem{i};
  return DomainSet(ctx, Kind::Full, std::move(v));
}

DomainSet DomainSet::trace_slice(const FieldCtx& ctx, int m, Elem gamma) {
  check_elem(ctx, gamma, "trace value");
  const LinearizedMap tr = LinearizedMap::trace_to_subfield(ctx, m);
  std::vector<Elem> v;
  for (std::uint32_t i = 0; i < ctx.order(); ++i)
    if (tr(Elem{i}) == gamma) v.emplace_back(i);
  DomainSet d(ctx, Kind::TraceSlice, std::move(v));
  d.m_ = m;
  d.gamma_ = gamma;
  return d;
}

DomainSet DomainSet::mu(const FieldCtx& ctx, std::uint64_t d, bool exclude_one) {
  const std::uint64_t group = ctx.order() - 1;
  if (d == 0 || group % d != 0)
    throw Error(Errc::NotADivisor, std::to_string(d) + " does not divide " + std::to_string(group));
  const Elem h = ctx.pow(ctx.generator(), group / d);
  std::vector<Elem> v;
  Elem p = ctx.one();
  for (std::uint64_t i = 0; i < d; ++i) {
    if (!(exclude_one && p == ctx.one())) v.push_back(p);
    p = ctx.mul(p, h);
  }
  DomainSet out(ctx, Kind::Mu, std::move(v));
  out.d_ = d;
  out.exclude_one_ = exclude_one;
  return out;
}

DomainSet DomainSet::image(const MappingSpec& g, const DomainSet& base, int jobs) {
  require_same(g.ctx(), base.ctx());
  DomainSet out(base.ctx(), Kind::Image, evaluate_all(g, base, jobs));
  out.image_spec_ = std::make_shared<const MappingSpec>(g);
  out.image_base_ = std::make_shared<const DomainSet>(base);
  return out;
}

DomainSet DomainSet::explicit_list(const FieldCtx& ctx, std::vector<Elem> elems) {
  for (Elem e : elems) check_elem(ctx, e, "domain element");
  return DomainSet(ctx, Kind::Explicit, std::move(elems));
}

std::optional<std::size_t> DomainSet::index_of(Elem a) const {
  if (is_full_field()) {
    if (!ctx_.contains(a)) return std::nullopt;
    return a.bits;
  }
  const auto it = std::lower_bound(elems_->begin(), elems_->end(), a);
  if (it == elems_->end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - elems_->begin());
}

bool DomainSet::contains(Elem a) const { return index_of(a).has_value(); }

// ---------------------------------------------------------------------------
// Evaluation and profiles

std::vector<Elem> evaluate_all(const Evaluator& f, const DomainSet& dom, int jobs) {
  const auto& xs = dom.elements();
  std::vector<Elem> out(xs.size());
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(xs.size() / 1024, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (xs.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const std::size_t lo = w * chunk, hi = std::min(xs.size(), lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) out[i] = f(xs[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Elem> evaluate_all(const MappingSpec& f, const DomainSet& dom, int jobs) {
  require_same(f.ctx(), dom.ctx());
  return evaluate_all(Evaluator([&f](Elem x) { return f(x); }), dom, jobs);
}

PreimageProfile profile_of_values(const FieldCtx& ctx, std::span<const Elem> values) {
  PreimageProfile p;
  p.domain_size = values.size();
  for (const auto& [v, c] : count_values(ctx, values)) {
    ++p.histogram[c];
    ++p.image_size;
  }
  return p;
}

PreimageProfile preimage_profile(const MappingSpec& f, const DomainSet& dom, int jobs) {
  return profile_of_values(dom.ctx(), evaluate_all(f, dom, jobs));
}

PreimageProfile preimage_profile(const Evaluator& f, const DomainSet& dom, int jobs) {
  return profile_of_values(dom.ctx(), evaluate_all(f, dom, jobs));
}

Verdict two_to_one_verdict(const FieldCtx& ctx, std::span<const Elem> values) {
  Verdict out;
  out.profile.domain_size = values.size();
  const bool odd = values.size() % 2 == 1;
  bool seen_single = false;
  for (const auto& [v, c] : count_values(ctx, values)) {
    ++out.profile.histogram[c];
    ++out.profile.image_size;
    const bool ok = c == 2 || (odd && c == 1 && !seen_single);
    if (c == 1) seen_single = true;
    if (!ok && !out.witness) out.witness = v;
  }
  out.two_to_one = !out.witness && (!odd || seen_single);
  return out;
}

Verdict is_two_to_one(const MappingSpec& f, const DomainSet& dom, int jobs) {
  return two_to_one_verdict(dom.ctx(), evaluate_all(f, dom, jobs));
}

Verdict is_two_to_one(const Evaluator& f, const DomainSet& dom, int jobs) {
  return two_to_one_verdict(dom.ctx(), evaluate_all(f, dom, jobs));
}

// ---------------------------------------------------------------------------
// Involutions

PairingTable::PairingTable(DomainSet dom, std::vector<Elem> image) : dom_(std::move(dom)), image_(std::move(image)) {
  if (image_.size() != dom_.size())
    throw Error(Errc::InvalidParams, "table has " + std::to_string(image_.size()) + " values for a domain of " +
                                         std::to_string(dom_.size()));
  for (Elem v : image_) check_elem(dom_.ctx(), v, "table value");
}

Elem PairingTable::operator()(Elem a) const {
  const auto i = dom_.index_of(a);
  if (!i) throw Error(Errc::ElementOutOfRange, to_hex(a) + " is not in the table's domain", a);
  return image_[*i];
}

std::optional<Elem> PairingTable::first_violation() const {
  const auto& xs = dom_.elements();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Elem b = image_[i];
    if (b == xs[i]) return xs[i];
    const auto j = dom_.index_of(b);
    if (!j || image_[*j] != xs[i]) return xs[i];
  }
  return std::nullopt;
}

bool PairingTable::is_involution() const {
  const auto& xs = dom_.elements();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto j = dom_.index_of(image_[i]);
    if (!j || image_[*j] != xs[i]) return false;
  }
  return true;
}

bool PairingTable::fixed_point_free() const {
  const auto& xs = dom_.elements();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (image_[i] == xs[i]) return false;
  return true;
}

PairingTable tabulate(const Evaluator& f, const DomainSet& dom, int jobs) {
  return PairingTable(dom, evaluate_all(f, dom, jobs));
}

namespace {

PairingTable pair_up(const DomainSet& dom, const std::vector<Elem>& values) {
  if (dom.size() % 2 == 1) throw Error(Errc::OddDomain, "domain has odd size " + std::to_string(dom.size()));
  const Verdict v = two_to_one_verdict(dom.ctx(), values);
  if (!v.two_to_one) throw Error(Errc::NotTwoToOne, "value " + to_hex(*v.witness) + " breaks the 2-to-1 property", v.witness);
  std::vector<std::pair<Elem, std::uint32_t>> by_value(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) by_value[i] = {values[i], static_cast<std::uint32_t>(i)};
  std::sort(by_value.begin(), by_value.end());
  const auto& xs = dom.elements();
  std::vector<Elem> partner(xs.size());
  for (std::size_t i = 0; i < by_value.size(); i += 2) {
    const auto a = by_value[i].second, b = by_value[i + 1].second;
    partner[a] = xs[b];
    partner[b] = xs[a];
  }
  return PairingTable(dom, std::move(partner));
}

}  // namespace

PairingTable derive_involution(const MappingSpec& f, const DomainSet& dom, int jobs) {
  return pair_up(dom, evaluate_all(f, dom, jobs));
}

PairingTable derive_involution(const Evaluator& f, const DomainSet& dom, int jobs) {
  return pair_up(dom, evaluate_all(f, dom, jobs));
}

UniPoly interpolate_involution(const PairingTable& tbl) {
  const DomainSet& dom = tbl.domain();
  const FieldCtx& ctx = dom.ctx();
  if (!dom.is_full_field()) throw Error(Errc::DomainNotFullField, "interpolation needs the whole field as domain");
  if (ctx.degree() > kMaxInterpolationDegree)
    throw Error(Errc::TooLarge, "interpolation is limited to n <= " + std::to_string(kMaxInterpolationDegree));
  // I(x) = sum_a I(a) (1 + (x + a)^(q-1)); the x^j coefficient is
  // sum_a I(a) a^(q-1-j) for j >= 1 and I(0) for j = 0.
  const std::uint32_t q = ctx.order();
  std::vector<Elem> c(q, Elem{0});
  c[0] = tbl(Elem{0});
  c[q - 1] += tbl(Elem{0});
  for (std::uint32_t a = 1; a < q; ++a) {
    const Elem ia = ctx.inv(Elem{a});
    Elem term = tbl(Elem{a});
    if (term.is_zero()) continue;
    for (std::uint32_t j = 1; j < q; ++j) {
      term = ctx.mul(term, ia);
      c[j] += term;
    }
  }
  return UniPoly(ctx, std::move(c));
}

PairingTable conjugate_involution(const PairingTable& I, const Evaluator& p, const DomainSet& S) {
  const DomainSet& D = I.domain();
  require_same(D.ctx(), S.ctx());
  if (S.size() != D.size())
    throw Error(Errc::NotBijective, "sets differ in size (" + std::to_string(S.size()) + " vs " + std::to_string(D.size()) + ")");
  const std::vector<Elem> pv = evaluate_all(p, S);
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> preimage(D.size(), kUnset);
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const auto j = D.index_of(pv[i]);
    if (!j) throw Error(Errc::NotBijective, "p maps " + to_hex(S.elements()[i]) + " outside the target set", S.elements()[i]);
    if (preimage[*j] != kUnset) throw Error(Errc::NotBijective, "p is not injective at " + to_hex(S.elements()[i]), S.elements()[i]);
    preimage[*j] = i;
  }
  std::vector<Elem> out(S.size());
  for (std::size_t i = 0; i < pv.size(); ++i) out[i] = S.elements()[preimage[*D.index_of(I(pv[i]))]];
  return PairingTable(S, std::move(out));
}

Elem OuterBijection::operator()(Elem v) const {
  const auto it = std::lower_bound(pairs.begin(), pairs.end(), v, [](const auto& p, Elem x) { return p.first < x; });
  if (it == pairs.end() || it->first != v) throw Error(Errc::ElementOutOfRange, to_hex(v) + " is not in Im(f)", v);
  return it->second;
}

OuterBijection outer_bijection_witness(const Evaluator& f, const Evaluator& fbar, const DomainSet& A) {
  const PairingTable If = derive_involution(f, A);
  const PairingTable Ifbar = derive_involution(fbar, A);
  const auto& xs = A.elements();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (If.image()[i] != Ifbar.image()[i])
      throw Error(Errc::InvolutionsDiffer,
                  "at " + to_hex(xs[i]) + " the partners are " + to_hex(If.image()[i]) + " and " + to_hex(Ifbar.image()[i]),
                  xs[i]);
  OuterBijection out;
  const auto fv = evaluate_all(f, A), gv = evaluate_all(fbar, A);
  for (std::size_t i = 0; i < xs.size(); ++i) out.pairs.emplace_back(fv[i], gv[i]);
  std::sort(out.pairs.begin(), out.pairs.end());
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
  for (std::size_t i = 1; i < out.pairs.size(); ++i)
    if (out.pairs[i].first == out.pairs[i - 1].first) throw std::logic_error("outer bijection is not well defined");
  out.image_size_f = out.pairs.size();
  out.image_size_fbar = sorted_unique(gv).size();
  if (out.image_size_f != A.size() / 2 || out.image_size_fbar != A.size() / 2)
    throw std::logic_error("2-to-1 maps with equal involutions must have images of size |A|/2");
  return out;
}

// ---------------------------------------------------------------------------
// Counting

std::uint64_t deriver_count_formula(int n) {
  if (n < 1 || n > 4) throw Error(Errc::TooLarge, "formula evaluated only for 1 <= n <= 4");
  std::uint64_t r = 1;
  for (std::uint64_t k = (std::uint64_t{1} << (n - 1)) + 1; k <= (std::uint64_t{1} << n); ++k) r *= k;
  return r;
}

namespace {

void require_fpf_full(const PairingTable& I, int max_n) {
  if (!I.domain().is_full_field()) throw Error(Errc::DomainNotFullField, "counting needs an involution of the whole field");
  if (I.domain().ctx().degree() > max_n) throw Error(Errc::TooLarge, "counting limited to n <= " + std::to_string(max_n));
  if (const auto v = I.first_violation())
    throw Error(Errc::InvalidParams, "not a fixed-point-free involution at " + to_hex(*v), v);
}

bool derives(const PairingTable& I, const std::vector<Elem>& table) {
  const Verdict v = two_to_one_verdict(I.domain().ctx(), table);
  if (!v.two_to_one) return false;
  return derive_involution([&](Elem x) { return table[x.bits]; }, I.domain()) == I;
}

}  // namespace

std::uint64_t count_derivers(const PairingTable& I) {
  require_fpf_full(I, 3);
  const auto& xs = I.domain().elements();
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a : xs)
    if (a < I(a)) pairs.emplace_back(a, I(a));
  const std::uint32_t q = I.domain().ctx().order();
  std::vector<Elem> table(q);
  std::vector<bool> used(q, false);
  std::uint64_t count = 0;
  // Assign a distinct value to each pair in turn; every completed
  // assignment is a candidate map, re-verified before it is counted.
  auto assign = [&](auto&& self, std::size_t k) -> void {
    if (k == pairs.size()) {
      if (derives(I, table)) ++count;
      return;
    }
    for (std::uint32_t v = 0; v < q; ++v) {
      if (used[v]) continue;
      used[v] = true;
      table[pairs[k].first.bits] = table[pairs[k].second.bits] = Elem{v};
      self(self, k + 1);
      used[v] = false;
    }
  };
  assign(assign, 0);
  return count;
}

std::uint64_t count_derivers_by_scan(const PairingTable& I) {
  require_fpf_full(I, 2);
  const std::uint32_t q = I.domain().ctx().order();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < q; ++i) total *= q;
  std::uint64_t count = 0;
  std::vector<Elem> table(q);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < q; ++i, c /= q) table[i] = Elem{static_cast<std::uint32_t>(c % q)};
    if (derives(I, table)) ++count;
  }
  return count;
}

}  // namespace gf2to1
