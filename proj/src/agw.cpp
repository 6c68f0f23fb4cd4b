#include "gf2to1/agw.hpp"

#include <algorithm>
#include <numeric>

namespace gf2to1 {

namespace {

void require_one_field(const DiagramSpec& d) {
  const FieldCtx& ctx = d.A.ctx();
  for (const DomainSet* s : {&d.Abar, &d.S, &d.Sbar}) require_same(ctx, s->ctx());
  for (const MappingSpec* m : {&d.f, &d.fbar, &d.lambda, &d.lambdabar}) require_same(ctx, m->ctx());
}

// First value outside `target`, if any.
std::optional<Elem> first_outside(const std::vector<Elem>& values, const DomainSet& target) {
  for (Elem v : values)
    if (!target.contains(v)) return v;
  return std::nullopt;
}

// First element of `target` missing from `values`, if any.
std::optional<Elem> first_missed(std::vector<Elem> values, const DomainSet& target) {
  std::sort(values.begin(), values.end());
  for (Elem t : target.elements())
    if (!std::binary_search(values.begin(), values.end(), t)) return t;
  return std::nullopt;
}

// Domain indices grouped by value: (value, index) ascending.
std::vector<std::pair<Elem, std::size_t>> group_by(const std::vector<Elem>& values) {
  std::vector<std::pair<Elem, std::size_t>> g(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) g[i] = {values[i], i};
  std::sort(g.begin(), g.end());
  return g;
}

std::pair<std::size_t, std::size_t> equal_run(const std::vector<std::pair<Elem, std::size_t>>& g, Elem v) {
  const auto lo = std::lower_bound(g.begin(), g.end(), std::make_pair(v, std::size_t{0}));
  auto hi = lo;
  while (hi != g.end() && hi->first == v) ++hi;
  return {static_cast<std::size_t>(lo - g.begin()), static_cast<std::size_t>(hi - g.begin())};
}

class CertBuilder {
 public:
  explicit CertBuilder(std::string mode) { cert_.mode = std::move(mode); }

  // Records the condition; returns whether checking may continue.
  bool check(std::string name, bool held, std::optional<Elem> witness = std::nullopt, std::string detail = {}) {
    cert_.conditions.push_back({name, held, held ? std::nullopt : witness, std::move(detail)});
    if (!held && !cert_.refused_by) cert_.refused_by = std::move(name);
    return held;
  }

  Certificate finish(const FieldCtx& ctx, const std::vector<Elem>& f_values) {
    cert_.certified = !cert_.refused_by;
    cert_.direct_two_to_one = two_to_one_verdict(ctx, f_values).two_to_one;
    return std::move(cert_);
  }

 private:
  Certificate cert_;
};

struct DiagramValues {
  std::vector<Elem> f, lambda, fbar, lambdabar;
};

DiagramValues evaluate_diagram(const DiagramSpec& d, int jobs) {
  return {evaluate_all(d.f, d.A, jobs), evaluate_all(d.lambda, d.A, jobs), evaluate_all(d.fbar, d.S, jobs),
          evaluate_all(d.lambdabar, d.Abar, jobs)};
}

bool check_commutes(CertBuilder& b, const DiagramSpec& d, int jobs) {
  const CommuteCheck c = verify_commutes(d, jobs);
  return b.check("commutes", c.commutes, c.witness, "lambdabar(f(a)) = fbar(lambda(a)) for every a in A");
}

bool check_into(CertBuilder& b, const std::string& name, const std::vector<Elem>& values, const DomainSet& target) {
  const auto w = first_outside(values, target);
  return b.check(name, !w, w, "value outside the stated codomain");
}

bool check_onto(CertBuilder& b, const std::string& name, const std::vector<Elem>& values, const DomainSet& target) {
  if (const auto w = first_outside(values, target)) return b.check(name, false, w, "value outside the stated codomain");
  const auto miss = first_missed(values, target);
  return b.check(name, !miss, miss, "codomain element without preimage");
}

}  // namespace

CommuteCheck verify_commutes(const DiagramSpec& d, int jobs) {
  require_one_field(d);
  const auto lhs = evaluate_all([&](Elem a) { return d.lambdabar(d.f(a)); }, d.A, jobs);
  const auto rhs = evaluate_all([&](Elem a) { return d.fbar(d.lambda(a)); }, d.A, jobs);
  CommuteCheck out;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] != rhs[i]) {
      out.commutes = false;
      out.witness = d.A.elements()[i];
      break;
    }
  return out;
}

void Certificate::throw_if_refused() const {
  if (certified) return;
  const std::string which = refused_by.value_or("unknown");
  std::optional<Elem> w;
  for (const auto& c : conditions)
    if (c.name == which) w = c.witness;
  throw Error(Errc::ConditionFailed, mode + "-mode condition " + which + " failed", w);
}

Certificate certify_base_mode(const DiagramSpec& d, int jobs) {
  require_one_field(d);
  CertBuilder b("base");
  const DiagramValues v = evaluate_diagram(d, jobs);
  [&] {
    if (!check_commutes(b, d, jobs)) return;
    if (!check_onto(b, "f_onto_Abar", v.f, d.Abar)) return;
    if (!check_onto(b, "fbar_onto_Sbar", v.fbar, d.Sbar)) return;
    if (!check_onto(b, "lambda_onto_S", v.lambda, d.S)) return;
    if (!check_onto(b, "lambdabar_onto_Sbar", v.lambdabar, d.Sbar)) return;
    const Verdict fv = two_to_one_verdict(d.A.ctx(), v.fbar);
    if (!b.check("fbar_two_to_one", fv.two_to_one, fv.witness, "fbar is 2-to-1 from S to Sbar")) return;
    if (!b.check("S_even", d.S.size() % 2 == 0, std::nullopt, "|S| = " + std::to_string(d.S.size()))) return;

    const auto a_fibers = group_by(v.lambda);
    const auto abar_fibers = group_by(v.lambdabar);
    const auto& Sx = d.S.elements();
    for (std::size_t si = 0; si < Sx.size(); ++si) {
      const auto [alo, ahi] = equal_run(a_fibers, Sx[si]);
      const auto [tlo, thi] = equal_run(abar_fibers, v.fbar[si]);
      std::vector<Elem> imgs;
      for (std::size_t k = alo; k < ahi; ++k) imgs.push_back(v.f[a_fibers[k].second]);
      std::sort(imgs.begin(), imgs.end());
      std::vector<Elem> target;
      for (std::size_t k = tlo; k < thi; ++k) target.push_back(d.Abar.elements()[abar_fibers[k].second]);
      std::sort(target.begin(), target.end());
      if (imgs != target) {
        b.check("f_fiber_bijective", false, Sx[si],
                "f does not map the fiber over s bijectively onto the fiber over fbar(s)");
        return;
      }
    }
    b.check("f_fiber_bijective", true);
  }();
  return b.finish(d.A.ctx(), v.f);
}

Certificate certify_fiber_mode(const DiagramSpec& d, int jobs) {
  require_one_field(d);
  CertBuilder b("fiber");
  const DiagramValues v = evaluate_diagram(d, jobs);
  [&] {
    if (!check_commutes(b, d, jobs)) return;
    if (!check_into(b, "f_into_Abar", v.f, d.Abar)) return;
    if (!check_into(b, "lambda_into_S", v.lambda, d.S)) return;
    if (!check_into(b, "lambdabar_into_Sbar", v.lambdabar, d.Sbar)) return;
    if (!check_onto(b, "fbar_onto_Sbar", v.fbar, d.Sbar)) return;
    const Verdict inj = two_to_one_verdict(d.A.ctx(), v.fbar);
    const bool injective = inj.profile.histogram.size() <= 1 && (inj.profile.histogram.empty() || inj.profile.histogram.begin()->first == 1);
    if (!b.check("fbar_bijective", injective && d.S.size() == d.Sbar.size(), std::nullopt, "fbar is a bijection S -> Sbar"))
      return;

    const auto a_fibers = group_by(v.lambda);
    std::size_t odd_fibers = 0;
    std::optional<Elem> second_odd;
    for (Elem s : d.S.elements()) {
      const auto [lo, hi] = equal_run(a_fibers, s);
      std::vector<Elem> imgs;
      for (std::size_t k = lo; k < hi; ++k) imgs.push_back(v.f[a_fibers[k].second]);
      if (!two_to_one_verdict(d.A.ctx(), imgs).two_to_one) {
        b.check("f_fiber_two_to_one", false, s, "f restricted to the fiber over s is not 2-to-1");
        return;
      }
      if (imgs.size() % 2 == 1 && ++odd_fibers == 2) second_odd = s;
    }
    b.check("f_fiber_two_to_one", true);
    b.check("at_most_one_odd_fiber", odd_fibers <= 1, second_odd, std::to_string(odd_fibers) + " odd fibers");
  }();
  return b.finish(d.A.ctx(), v.f);
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

void require(ConstructionReport& r, const std::string& name, bool held, const std::string& detail,
             std::optional<Elem> witness = std::nullopt) {
  r.conditions.push_back({name, held, held ? std::nullopt : witness, detail});
  if (!held) throw Error(Errc::ConditionFailed, r.name + ": " + name + " (" + detail + ")", witness);
}

DiagramSpec square(const MappingSpec& f, const MappingSpec& lambda, const MappingSpec& fbar, const MappingSpec& lambdabar,
                   int jobs) {
  const DomainSet A = DomainSet::full(f.ctx());
  const DomainSet S = DomainSet::image(lambda, A, jobs);
  return {A, DomainSet::image(f, A, jobs), S, DomainSet::image(fbar, S, jobs), f, fbar, lambda, lambdabar};
}

void finish(ConstructionReport& r, int jobs) {
  bool ok = true;
  for (const auto& c : r.certificates) ok = ok && c.certified;
  if (r.f.ctx().degree() <= kDirectCheckMaxDegree) {
    r.direct_two_to_one = is_two_to_one(r.f, DomainSet::full(r.f.ctx()), jobs).two_to_one;
    ok = ok && *r.direct_two_to_one;
  }
  r.certified = ok;
}

bool q_linearized(const LinearizedMap& L, int k) {
  for (const auto& [c, j] : L.terms())
    if (j % k != 0) return false;
  return L.coefficients_in_subfield(k);
}

}  // namespace

ConstructionReport build_construction_1(const FieldCtx& ctx, int m, Elem a, const MappingSpec& g, int jobs) {
  require_same(ctx, g.ctx());
  ConstructionReport r{"construction_1", MappingSpec::zero(ctx), {}, {}, {}, std::nullopt, false};
  const int n = ctx.degree();
  require(r, "m_divides_n", m >= 1 && n % m == 0, "m = " + std::to_string(m) + ", n = " + std::to_string(n));
  require(r, "n_over_m_odd", (n / m) % 2 == 1, "n/m = " + std::to_string(n / m));
  require(r, "a_in_subfield", ctx.in_subfield(a, m), "a must lie in F_2^m", a);
  require(r, "trace_a_nonzero", !ctx.trace(a, m, 1).is_zero(), "Tr_m(a) != 0", a);

  const LinearizedMap tr = LinearizedMap::trace_to_subfield(ctx, m);
  const LinearizedMap phi = LinearizedMap::frobenius_plus_identity(ctx, 1);
  require(r, "kernel_intersection_trivial", kernel_intersection(phi, tr) == 0, "ker(x^2 + x) and ker(Tr^n_m) meet only in 0");

  const MappingSpec h = MappingSpec::monomial(ctx, ctx.one(), 2) + MappingSpec::identity(ctx) + MappingSpec::constant(ctx, a);
  const MappingSpec lambda = MappingSpec::linearized(tr);
  const MappingSpec h_tr = h.compose(lambda);
  const MappingSpec g_tr = g.compose(lambda);
  r.f = MappingSpec::linearized(phi) * h_tr + g_tr.frobenius(m) + g_tr;

  const DomainSet A = DomainSet::full(ctx);
  const DomainSet S = DomainSet::image(lambda, A, jobs);
  std::optional<Elem> root;
  for (Elem s : S.elements())
    if (h(s).is_zero()) root = s;
  require(r, "h_nonzero_on_trace_image", !root, "h(Tr(F)) avoids 0, the strict form of the hypothesis", root);

  const MappingSpec fbar = MappingSpec::linearized(phi) * h;
  require(r, "fbar_quartic_criterion", quartic_two_to_one(ctx, Elem{0}, a + ctx.one(), a, m),
          "x^4 + (a+1) x^2 + a x is 2-to-1 on F_2^m");

  r.diagrams.push_back(square(r.f, lambda, fbar, lambda, jobs));
  r.certificates.push_back(certify_base_mode(r.diagrams.back(), jobs));
  finish(r, jobs);
  return r;
}

ConstructionReport build_construction_2(int k, int n, Elem b, Elem a, int jobs) {
  const FieldCtx ctx = FieldCtx::create(k * n);
  ConstructionReport r{"construction_2", MappingSpec::zero(ctx), {}, {}, {}, std::nullopt, false};
  require(r, "n_odd", n % 2 == 1, "n = " + std::to_string(n));
  require(r, "a_nonzero", !a.is_zero(), "a != 0");
  require(r, "coefficients_in_subfield", ctx.contains(a) && ctx.contains(b) && ctx.in_subfield(a, k) && ctx.in_subfield(b, k),
          "a and b lie in F_2^k");
  const Elem b1 = b + ctx.one();
  require(r, "trace_condition", !ctx.trace(ctx.div(ctx.pow(b1, 3), ctx.sqr(a)) + ctx.one(), k, 1).is_zero(),
          "Tr_k((b+1)^3 / a^2 + 1) != 0");
  require(r, "fbar_quartic_criterion", quartic_two_to_one(ctx, Elem{0}, b1, a, k), "x^4 + (b+1) x^2 + a x is 2-to-1 on F_2^k");

  const LinearizedMap tr = LinearizedMap::trace_to_subfield(ctx, k);
  const MappingSpec gpoly = MappingSpec::monomial(ctx, ctx.one(), 3) + MappingSpec::monomial(ctx, b, 1) + MappingSpec::constant(ctx, a);
  std::optional<Elem> bad_y;
  for (Elem y : ctx.subfield_elements(k)) {
    const LinearizedMap Fy(ctx, {{ctx.one(), 1}, {gpoly(y), 0}});
    if (kernel_intersection(Fy, tr) != 0) bad_y = y;
  }
  require(r, "kernel_condition", !bad_y, "ker(x^2 + g(y) x) and ker(Tr) meet only in 0 for every y in F_q", bad_y);

  const MappingSpec lambda = MappingSpec::linearized(tr);
  r.f = MappingSpec::monomial(ctx, ctx.one(), 2) + MappingSpec::identity(ctx) * gpoly.compose(lambda);

  const MappingSpec fbar = MappingSpec::monomial(ctx, ctx.one(), 4) + MappingSpec::monomial(ctx, b1, 2) + MappingSpec::monomial(ctx, a, 1);
  r.diagrams.push_back(square(r.f, lambda, fbar, lambda, jobs));
  r.certificates.push_back(certify_base_mode(r.diagrams.back(), jobs));

  // Fiber form of the same map: split A by Tr(f(x)); the bottom map is the
  // identity on the trace values actually reached.
  const MappingSpec tr_f = lambda.compose(r.f);
  r.diagrams.push_back(square(r.f, tr_f, MappingSpec::identity(ctx), lambda, jobs));
  r.certificates.push_back(certify_fiber_mode(r.diagrams.back(), jobs));
  finish(r, jobs);
  return r;
}

ConstructionReport build_construction_3(int k, const LinearizedMap& L1, const LinearizedMap& L2, const LinearizedMap& L3,
                                        const MappingSpec& g, int jobs) {
  const FieldCtx& ctx = L1.ctx();
  require_same(ctx, L2.ctx());
  require_same(ctx, L3.ctx());
  require_same(ctx, g.ctx());
  ConstructionReport r{"construction_3", MappingSpec::zero(ctx), {}, {}, {}, std::nullopt, false};
  require(r, "k_divides_n", k >= 1 && ctx.degree() % k == 0, "k = " + std::to_string(k));
  require(r, "L3_q_linear", q_linearized(L3, k), "L3 is q-linearized with coefficients in F_q");
  require(r, "maps_commute_with_L3",
          L3.after(L1).columns() == L1.after(L3).columns() && L3.after(L2).columns() == L2.after(L3).columns(),
          "L3 o L1 = L1 o L3 and L3 o L2 = L2 o L3");

  const MappingSpec l3 = MappingSpec::linearized(L3);
  const DomainSet A = DomainSet::full(ctx);
  const DomainSet S = DomainSet::image(l3, A, jobs);
  std::optional<Elem> outside;
  for (Elem y : S.elements())
    if (!ctx.in_subfield(g(y), k)) outside = y;
  require(r, "g_of_image_in_subfield", !outside, "g(L3(F)) lies in F_q", outside);
  require(r, "image_size_even", S.size() % 2 == 0, "|L3(F)| = " + std::to_string(S.size()));

  const MappingSpec fbar = MappingSpec::linearized(L1) + MappingSpec::linearized(L2) * g;
  const Verdict fv = is_two_to_one(fbar, S, jobs);
  require(r, "fbar_two_to_one_on_image", fv.two_to_one, "L1 + L2 g is 2-to-1 on L3(F)", fv.witness);

  std::vector<Elem> ys;
  if (ctx.degree() <= kDirectCheckMaxDegree) {
    ys = S.elements();
  } else {
    for (Elem y : ctx.subfield_elements(k))
      if (S.contains(y)) ys.push_back(y);
  }
  std::optional<Elem> bad_y;
  for (Elem y : ys) {
    const LinearizedMap Fy = L1 + L2.scaled(g(y));
    if (kernel_intersection(Fy, L3) != 0) {
      bad_y = y;
      break;
    }
  }
  require(r, "kernel_condition", !bad_y, "ker(L1 + g(y) L2) and ker(L3) meet only in 0 for y in L3(F)", bad_y);

  r.f = MappingSpec::linearized(L1) + MappingSpec::linearized(L2) * g.compose(l3);
  r.diagrams.push_back(square(r.f, l3, fbar, l3, jobs));
  r.certificates.push_back(certify_base_mode(r.diagrams.back(), jobs));
  finish(r, jobs);
  return r;
}

ConstructionReport build_construction_4(int k, Elem delta, const MappingSpec& g, const LinearizedMap& L, int jobs) {
  const FieldCtx& ctx = g.ctx();
  require_same(ctx, L.ctx());
  ConstructionReport r{"construction_4", MappingSpec::zero(ctx), {}, {}, {}, std::nullopt, false};
  const int n = ctx.degree();
  require(r, "k_range", k >= 1 && k < n, "1 <= k < n");
  require(r, "delta_in_field", ctx.contains(delta), "delta lies in the field", delta);
  const int ell = std::gcd(n, k);
  require(r, "L_coefficients_in_subfield", L.coefficients_in_subfield(ell), "L has coefficients in F_2^gcd(n,k)");

  const LinearizedMap frob = LinearizedMap::frobenius_plus_identity(ctx, k);
  require(r, "kernel_condition", kernel_intersection(L, frob) == 0, "ker(L) and ker(x^(2^k) + x) meet only in 0");

  const MappingSpec lambda = MappingSpec::linearized(frob, delta);
  const MappingSpec lambdabar = MappingSpec::linearized(frob, L(delta));
  const MappingSpec h = g.frobenius(k) + g + MappingSpec::linearized(L);
  const DomainSet S = DomainSet::image(lambda, DomainSet::full(ctx), jobs);
  const Verdict hv = is_two_to_one(h, S, jobs);
  require(r, "h_two_to_one_on_S", hv.two_to_one, "h = g^(2^k) + g + L is 2-to-1 on S", hv.witness);

  r.f = g.compose(lambda) + MappingSpec::linearized(L);
  r.diagrams.push_back(square(r.f, lambda, h, lambdabar, jobs));
  r.certificates.push_back(certify_base_mode(r.diagrams.back(), jobs));
  finish(r, jobs);
  return r;
}

}  // namespace gf2to1
