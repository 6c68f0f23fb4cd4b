#include "gf2to1/families.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace gf2to1 {

namespace {

ExpInt pow2(int e) { return ExpInt{1} << e; }

Error invalid(const Violation& v) { return Error(Errc::InvalidParams, v.condition + " (" + v.detail + ")"); }

Elem sum(std::initializer_list<Elem> xs) {
  Elem r;
  for (Elem x : xs) r += x;
  return r;
}

struct Mul {
  const FieldCtx& f;
  Elem operator()(std::initializer_list<Elem> xs) const {
    Elem r = f.one();
    for (Elem x : xs) r = f.mul(r, x);
    return r;
  }
};

std::vector<Elem> full_values(const Evaluator& f, const FieldCtx& ctx, int jobs) {
  return evaluate_all(f, DomainSet::full(ctx), jobs);
}

std::optional<Elem> first_difference(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != b[x]) return Elem{static_cast<std::uint32_t>(x)};
  return std::nullopt;
}

Evaluator table_evaluator(std::vector<Elem> values) {
  auto v = std::make_shared<const std::vector<Elem>>(std::move(values));
  return [v](Elem x) { return (*v)[x.bits]; };
}

}  // namespace

// ---------------------------------------------------------------------------

MappingSpec lambda_map(const FormShape& sh) {
  return MappingSpec::linearized(LinearizedMap::frobenius_plus_identity(sh.ctx, sh.k), sh.delta);
}

MappingSpec form_map(const FormShape& sh) {
  auto L = LinearizedMap::frobenius_plus_identity(sh.ctx, sh.k);
  return MappingSpec::power(sh.ctx, Inner::affine(L, sh.delta), sh.s, sh.ctx.one()) +
         MappingSpec::monomial(sh.ctx, sh.c, 1);
}

MappingSpec h_map(const FormShape& sh) {
  const FieldCtx& f = sh.ctx;
  return MappingSpec::monomial(f, f.one(), f.shift_exponent(sh.s, sh.k)) + MappingSpec::monomial(f, f.one(), sh.s) +
         MappingSpec::monomial(f, sh.c, 1);
}

DomainSet lambda_image(const FormShape& sh, int jobs) {
  return DomainSet::image(lambda_map(sh), DomainSet::full(sh.ctx), jobs);
}

Equivalence h_on_S_equivalence(const FormShape& sh, int jobs) {
  Equivalence e;
  e.f_two_to_one = is_two_to_one(form_map(sh), DomainSet::full(sh.ctx), jobs).two_to_one;
  e.h_two_to_one = is_two_to_one(h_map(sh), lambda_image(sh, jobs), jobs).two_to_one;
  return e;
}

std::string_view form_name(InvolutionSpec::Form f) {
  switch (f) {
    case InvolutionSpec::Form::Polynomial: return "polynomial";
    case InvolutionSpec::Form::AffineTransfer: return "affine_transfer";
    case InvolutionSpec::Form::Composite: return "composite";
    case InvolutionSpec::Form::Table: return "table";
  }
  return "?";
}

InvolutionSpec transfer_involution(const FormShape& sh, const PairingTable& I_h) {
  if (sh.c.is_zero()) throw Error(Errc::ZeroC, "the transfer formula divides by c");
  require_same(sh.ctx, I_h.domain().ctx());
  const FieldCtx ctx = sh.ctx;
  const Elem cinv = ctx.inv(sh.c);
  const ExpInt s = sh.s;
  const MappingSpec lam = lambda_map(sh);
  InvolutionSpec out;
  out.form = InvolutionSpec::Form::Table;
  out.eval = [ctx, cinv, s, lam, I_h](Elem x) {
    Elem u = lam(x);
    return ctx.mul(cinv, ctx.pow(I_h(u), s) + ctx.pow(u, s)) + x;
  };
  out.provenance = "transfer of the involution derived from h on S";
  return out;
}

InvolutionSpec affine_transfer(const FormShape& sh, Elem xi, std::string provenance) {
  if (sh.c.is_zero()) throw Error(Errc::ZeroC, "the transfer formula divides by c");
  const FieldCtx& ctx = sh.ctx;
  const Elem cinv = ctx.inv(sh.c);
  auto L = LinearizedMap::frobenius_plus_identity(ctx, sh.k);
  MappingSpec spec = MappingSpec::power(ctx, Inner::affine(L, sh.delta + xi), sh.s, cinv) +
                     MappingSpec::power(ctx, Inner::affine(L, sh.delta), sh.s, cinv) + MappingSpec::identity(ctx);
  InvolutionSpec out;
  out.form = InvolutionSpec::Form::AffineTransfer;
  out.spec = spec;
  out.eval = [spec](Elem x) { return spec(x); };
  out.offset = xi;
  out.provenance = std::move(provenance);
  return out;
}

// ---------------------------------------------------------------------------

int FamilyParams::n() const { return row == 8 ? 4 * m : 2 * m; }

int FamilyParams::k() const {
  if (row >= 1 && row <= 4) return 1;
  if (row == 8) return 2 * m;
  return m;
}

ExpInt FamilyParams::s() const {
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw invalid({"exponent_defined", what});
  };
  need(m >= 1 && m <= 12, "m out of range");
  switch (row) {
    case 1: return pow2(m) + 1;
    case 2: return pow2(2 * m - 1) + pow2(m - 1);
    case 3:
      need(m >= 2, "row 3 needs m >= 2");
      return pow2(2 * m - 2) + pow2(m - 2);
    case 4: {
      ExpInt v = pow2(2 * m) + pow2(m) + 1;
      need(v % 3 == 0, "3 does not divide 2^(2m) + 2^m + 1");
      return v / 3;
    }
    case 5:
    case 6:
      need(i.has_value() && *i >= 1 && *i <= 62, "i missing or out of range");
      return row == 5 ? pow2(*i) + 1 : pow2(m) + pow2(*i) + 1;
    case 7:
      need(m >= 2, "row 7 needs m >= 2");
      return pow2(2 * m - 2) + pow2(m) - pow2(m - 2);
    case 8: return (pow2(2 * m - 1) - pow2(m - 1) + 1) * (pow2(2 * m) - 1) + 1;
    default: need(false, "row must be 1..8");
  }
  return 0;
}

FieldCtx FamilyParams::field() const { return FieldCtx::create(n(), modulus); }

FormShape FamilyParams::shape() const { return {field(), k(), s(), delta, c}; }

std::optional<Violation> validate_family(const FamilyParams& p) {
  auto fail = [](std::string cond, std::string detail) { return Violation{std::move(cond), std::move(detail)}; };
  if (p.row < 1 || p.row > 8) return fail("row", "row must be 1..8");
  if (p.m < 1) return fail("m_positive", "m must be at least 1");
  if (p.n() > kMaxDegree) return fail("degree_range", "field degree " + std::to_string(p.n()) + " exceeds 24");
  std::optional<FieldCtx> fo;
  try {
    fo = p.field();
  } catch (const Error& e) {
    return fail("modulus", e.what());
  }
  const FieldCtx& F = *fo;
  const int m = p.m;
  if (!F.contains(p.delta)) return fail("delta_in_field", "delta outside the field");
  if (!F.contains(p.c)) return fail("c_in_field", "c outside the field");

  if (p.row <= 4) {
    if (m % 2 != 0) return fail("m_even", "rows 1-4 need m even");
    if (p.row == 4 && (pow2(2 * m) + pow2(m) + 1) % 3 != 0)
      return fail("exponent_integral", "3 must divide 2^(2m) + 2^m + 1");
    if (F.trace_abs(p.delta) != F.one()) return fail("trace_delta", "Tr_2m(delta) must be 1");
    if (p.c != F.one()) return fail("c_equals_one", "c must be 1");
    return std::nullopt;
  }

  if (p.row == 5 || p.row == 6) {
    if (!p.i) return fail("i_present", "rows 5-6 need i");
    if (*p.i < 1 || *p.i > 62) return fail("i_range", "i must satisfy 1 <= i <= 62");
  }
  const Elem gamma = (p.row <= 7) ? F.trace_rel(p.delta, m) : Elem{0};

  switch (p.row) {
    case 5: {
      if (gcd_u64(m, *p.i) != 1) return fail("gcd_m_i", "gcd(m, i) must be 1");
      if (!F.in_subfield(p.c, m) || p.c.is_zero()) return fail("c_in_subfield", "c must lie in F_2^m minus 0");
      Elem arg = F.sqr(p.delta) + F.mul(F.frobenius(p.c, m - *p.i), p.delta);
      if (F.trace_rel(arg, m).is_zero()) return fail("trace_condition", "Tr^2m_m(delta^2 + c^(2^(m-i)) delta) must be nonzero");
      return std::nullopt;
    }
    case 6: {
      if (!F.in_subfield(p.c, m)) return fail("c_in_subfield", "c must lie in F_2^m");
      if (p.c.is_zero() && !p.allow_zero_c) return fail("c_nonzero", "c = 0 is excluded (the involution needs 1/c)");
      Elem v = F.pow(gamma, pow2(*p.i) + 2) + F.mul(p.c, gamma);
      if (v.is_zero()) return fail("gamma_condition", "gamma^(2^i+2) + c gamma must be nonzero");
      return std::nullopt;
    }
    case 7: {
      if (m < 2) return fail("m_at_least_2", "row 7 needs m >= 2");
      if (F.in_subfield(p.delta, m)) return fail("delta_outside_subfield", "delta must not lie in F_2^m");
      if (!F.in_subfield(p.c, m) || p.c.is_zero()) return fail("c_in_subfield", "c must lie in F_2^m minus 0");
      if (F.trace(F.inv(p.c) + F.one(), m, 1) != F.one()) return fail("trace_inverse_c", "Tr_m(1/c + 1) must be 1");
      return std::nullopt;
    }
    case 8: {
      if (F.in_subfield(p.delta, 2 * m)) return fail("delta_outside_subfield", "delta must not lie in F_2^(2m)");
      if (!F.in_subfield(p.c, 2 * m) || F.in_subfield(p.c, m))
        return fail("c_outside_subfield", "c must lie in F_2^(2m) minus F_2^m");
      return std::nullopt;
    }
  }
  return std::nullopt;
}

MappingSpec construct_family(const FamilyParams& p) {
  if (auto v = validate_family(p)) throw invalid(*v);
  return form_map(p.shape());
}

std::vector<FamilyParams> admissible_instances(int row, int m, std::optional<int> i,
                                               std::optional<std::uint32_t> modulus, bool allow_zero_c) {
  std::vector<FamilyParams> out;
  FamilyParams base;
  base.row = row;
  base.m = m;
  base.i = i;
  base.modulus = modulus;
  base.allow_zero_c = allow_zero_c;
  if (row < 1 || row > 8 || m < 1 || base.n() > kMaxDegree) return out;
  std::optional<FieldCtx> fo;
  try {
    fo = base.field();
  } catch (const Error&) {
    return out;
  }
  const FieldCtx& F = *fo;
  std::vector<Elem> cs;
  if (row <= 4)
    cs = {F.one()};
  else
    cs = F.subfield_elements(row == 8 ? 2 * m : m);
  for (std::uint32_t d = 0; d < F.order(); ++d) {
    for (Elem c : cs) {
      FamilyParams p = base;
      p.delta = Elem{d};
      p.c = c;
      if (!validate_family(p)) out.push_back(p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Elem row5_offset(const FamilyParams& p) {
  const FieldCtx F = p.field();
  const int m = p.m;
  const Elem gamma = F.trace_rel(p.delta, m);
  const ExpInt M = pow2(m) - 1;
  const ExpInt t = int_mod_inverse((pow2(*p.i) - 1) % M, M);
  Elem base = F.pow(gamma, pow2(*p.i) - 1) + F.div(p.c, gamma);
  return F.pow(base, t);
}

std::string_view row6_candidate_name(Row6Candidate c) {
  return c == Row6Candidate::Printed ? "gamma + 1/gamma^(2^i)" : "gamma + c/gamma^(2^i)";
}

Elem row6_offset(const FamilyParams& p, Row6Candidate which) {
  const FieldCtx F = p.field();
  const Elem gamma = F.trace_rel(p.delta, p.m);
  const Elem num = which == Row6Candidate::Printed ? F.one() : p.c;
  return gamma + F.div(num, F.pow(gamma, pow2(*p.i)));
}

Elem row7_alpha(const FamilyParams& p) {
  const FieldCtx F = p.field();
  CubicRoot r = cubic_unique_root(F, F.one(), p.c, p.m);
  if (!r.unique || !r.root) throw invalid({"cubic_root", "x^3 + x + c has no unique root in F_2^m"});
  return *r.root;
}

Elem row7_offset(const FamilyParams& p) {
  const FieldCtx F = p.field();
  const Elem a4 = F.pow(row7_alpha(p), 4);
  return F.div(p.delta + F.frobenius(p.delta, p.m), a4 + F.one());
}

namespace {

Elem row8_pairing(const FieldCtx& F, Elem c, Elem cb, Elem v, int m) {
  const Elem x = F.sqrt(v);
  const Elem X = F.frobenius(v, m - 1);
  Mul P{F};
  Elem A1 = sum({P({x, x, X, X, cb}), P({x, X, c, cb}), P({x, x, cb}), P({c, x, x}), c});
  Elem A2 = sum({P({x, x, X, X, cb}), P({c, x, x, X, X}), P({x, X, c, cb}), P({x, x, cb}), P({c, X, X})});
  Elem B1 = P({x, x, sum({P({x, X, c, cb}), P({cb, X, X}), P({c, x, x}), cb, c})});
  Elem B2 = sum({P({c, x, x, X, X}), P({x, X, c, cb}), P({cb, X, X}), P({c, X, X}), cb});
  Elem A = F.mul(A1, A2);
  if (A.is_zero()) throw Error(Errc::DivisionByZero, "A vanishes on the subgroup", v);
  return F.div(F.mul(B1, B2), A);
}

InvolutionSpec row8_involution(const FamilyParams& p) {
  const FormShape sh = p.shape();
  const FieldCtx F = sh.ctx;
  const int m = p.m;
  const Elem c = p.c, cb = F.frobenius(p.c, m), cinv = F.inv(p.c);
  const Elem D = p.delta + F.frobenius(p.delta, 2 * m);
  const ExpInt phi_e = pow2(2 * m) - 1;
  const ExpInt s = sh.s;
  const MappingSpec lam = lambda_map(sh);
  InvolutionSpec out;
  out.form = InvolutionSpec::Form::Composite;
  out.eval = [=](Elem x) {
    Elem u = lam(x);
    Elem v = F.pow(u, phi_e);
    Elem w = row8_pairing(F, c, cb, v, m);
    Elem Ih = F.div(D, F.one() + w);
    return F.mul(cinv, F.pow(Ih, s) + F.pow(u, s)) + x;
  };
  out.provenance = "row 8: transfer of phi^-1 o B/A(sqrt(x), x^(2^(m-1))) o phi, phi = x^(2^(2m)-1)";
  return out;
}

}  // namespace

InvolutionSpec closed_form_involution(const FamilyParams& p) {
  if (auto v = validate_family(p)) throw invalid(*v);
  const FormShape sh = p.shape();
  const FieldCtx& F = sh.ctx;
  const int m = p.m;
  switch (p.row) {
    case 1:
    case 2:
      throw Error(Errc::NoClosedForm, "row " + std::to_string(p.row) + " has no explicit involution; use the table route");
    case 3: {
      LinearizedMap L(F, {{F.one(), m + 1}, {F.one(), m}, {F.one(), 1}, {F.one(), 0}});
      Elem d = p.delta + F.frobenius(p.delta, m) + F.one();
      MappingSpec spec = MappingSpec::identity(F) + MappingSpec::constant(F, F.one()) +
                         MappingSpec::power(F, Inner::affine(L, d), F.order() - 2, F.one());
      InvolutionSpec out;
      out.form = InvolutionSpec::Form::Polynomial;
      out.spec = spec;
      out.eval = [spec](Elem x) { return spec(x); };
      out.provenance = "row 3: x + 1 + 1/(x^(2^(m+1)) + x^(2^m) + x^2 + x + delta + delta^(2^m) + 1)";
      return out;
    }
    case 4: {
      ExpInt e = (pow2(2 * m + 1) - pow2(m) - 1) / 3;
      MappingSpec spec = MappingSpec::power(F, Inner::affine(LinearizedMap::frobenius_plus_identity(F, 1), p.delta), e, F.one()) +
                         MappingSpec::identity(F) + MappingSpec::constant(F, F.one());
      InvolutionSpec out;
      out.form = InvolutionSpec::Form::Polynomial;
      out.spec = spec;
      out.eval = [spec](Elem x) { return spec(x); };
      out.provenance = "row 4: (x^2 + x + delta)^((2^(2m+1) - 2^m - 1)/3) + x + 1";
      return out;
    }
    case 5:
      return affine_transfer(sh, row5_offset(p), "row 5: offset (gamma^(2^i-1) + c/gamma)^(1/(2^i-1))");
    case 6: {
      // Both offsets are tried; the one that yields an involution of f is kept.
      const MappingSpec f = form_map(sh);
      for (Row6Candidate cand : {Row6Candidate::Proof, Row6Candidate::Printed}) {
        InvolutionSpec I = affine_transfer(sh, row6_offset(p, cand), "row 6: offset " + std::string(row6_candidate_name(cand)));
        if (check_involution(I.eval, [f](Elem x) { return f(x); }, F).ok()) {
          if (cand == Row6Candidate::Printed) I.provenance += " (printed offset)";
          return I;
        }
      }
      throw Error(Errc::NoClosedForm, "neither row-6 offset yields an involution for this instance");
    }
    case 7:
      return affine_transfer(sh, row7_offset(p), "row 7: offset (delta + delta^(2^m))/(alpha^4 + 1), alpha^3 + alpha + c = 0");
    case 8: return row8_involution(p);
  }
  throw invalid({"row", "row must be 1..8"});
}

InvolutionSpec table_involution(const FamilyParams& p, int jobs) {
  if (auto v = validate_family(p)) throw invalid(*v);
  const FormShape sh = p.shape();
  PairingTable Ih = derive_involution(h_map(sh), lambda_image(sh, jobs), jobs);
  return transfer_involution(sh, Ih);
}

// ---------------------------------------------------------------------------

InvolutionCheck check_involution(const Evaluator& I, const Evaluator& f, const FieldCtx& ctx, int jobs) {
  const std::vector<Elem> iv = full_values(I, ctx, jobs);
  const std::vector<Elem> fv = full_values(f, ctx, jobs);
  InvolutionCheck r{true, true, true, std::nullopt};
  for (std::uint32_t x = 0; x < iv.size(); ++x) {
    const Elem y = iv[x];
    bool bad = false;
    if (!ctx.contains(y) || iv[y.bits].bits != x) r.involution = false, bad = true;
    if (y.bits == x) r.fixed_point_free = false, bad = true;
    if (ctx.contains(y) && fv[y.bits] != fv[x]) r.preserves_f = false, bad = true;
    if (bad && !r.witness) r.witness = Elem{x};
  }
  return r;
}

bool InstanceReport::ok() const {
  if (!two_to_one || !derived.ok() || !transfer_matches_derived) return false;
  if (closed && (!closed->ok() || !closed_matches_derived.value_or(false))) return false;
  return true;
}

InstanceReport check_instance(const FamilyParams& p, int jobs) {
  InstanceReport r;
  r.params = p;
  const MappingSpec f = construct_family(p);
  const FieldCtx& F = f.ctx();
  r.s = p.s();
  const DomainSet full = DomainSet::full(F);
  Verdict v = is_two_to_one(f, full, jobs);
  r.profile = v.profile;
  r.two_to_one = v.two_to_one;
  if (!r.two_to_one) return r;

  const Evaluator fe = [f](Elem x) { return f(x); };
  PairingTable derived = derive_involution(f, full, jobs);
  const Evaluator de = table_evaluator(derived.image());
  r.derived = check_involution(de, fe, F, jobs);

  try {
    InvolutionSpec closed = closed_form_involution(p);
    r.closed = check_involution(closed.eval, fe, F, jobs);
    r.closed_matches_derived = !first_difference(full_values(closed.eval, F, jobs), derived.image());
    r.closed_provenance = closed.provenance;
  } catch (const Error& e) {
    if (e.code() != Errc::NoClosedForm) throw;
  }

  InvolutionSpec tr = table_involution(p, jobs);
  r.transfer_matches_derived = !first_difference(full_values(tr.eval, F, jobs), derived.image());
  return r;
}

Row6Resolution resolve_row6_offset(const std::vector<int>& ms, int jobs) {
  Row6Resolution res;
  res.ms = ms;
  res.candidates = {{Row6Candidate::Printed, 0, 0, std::nullopt}, {Row6Candidate::Proof, 0, 0, std::nullopt}};
  for (int m : ms) {
    for (int i = 1; i <= m; ++i) {
      for (const FamilyParams& p : admissible_instances(6, m, i)) {
        const FormShape sh = p.shape();
        const MappingSpec f = form_map(sh);
        const Evaluator fe = [f](Elem x) { return f(x); };
        for (Row6CandidateResult& cr : res.candidates) {
          ++cr.instances;
          InvolutionSpec I = affine_transfer(sh, row6_offset(p, cr.candidate), "");
          if (!check_involution(I.eval, fe, sh.ctx, jobs).ok()) {
            ++cr.failures;
            if (!cr.first_failure) cr.first_failure = p;
          }
        }
      }
    }
  }
  int winners = 0;
  for (const Row6CandidateResult& cr : res.candidates) {
    if (cr.instances > 0 && cr.failures == 0) {
      ++winners;
      res.winner = cr.candidate;
    }
  }
  if (winners != 1) res.winner.reset();
  return res;
}

// ---------------------------------------------------------------------------

MuReduction mu_reduction(const UniPoly& hbar, ExpInt r, Elem delta, int m) {
  const FieldCtx& F = hbar.ctx();
  if (m < 1 || F.degree() != 2 * m)
    throw Error(Errc::InvalidParams, "hbar must live over F_2^(2m) with m = " + std::to_string(m));
  if (!F.contains(delta)) throw Error(Errc::ElementOutOfRange, "delta outside the field", delta);
  if (F.in_subfield(delta, m)) throw Error(Errc::DeltaInSubfield, "delta must not lie in F_2^m", delta);

  const ExpInt e0 = pow2(m) - 1;
  const MappingSpec hb = MappingSpec::from_poly(hbar);
  const MappingSpec xr = MappingSpec::monomial(F, F.one(), r);
  const MappingSpec phi0 = MappingSpec::monomial(F, F.one(), e0);
  MuReduction out{
      xr * hb.compose(phi0),
      xr * MappingSpec::power(F, Inner::nested(std::make_shared<const MappingSpec>(hb)), e0, F.one()),
      phi0,
      DomainSet::explicit_list(F, {}),
      DomainSet::mu(F, pow2(m) + 1, true),
  };
  std::vector<Elem> s;
  for (Elem z : F.subfield_elements(m)) s.push_back(z + delta);
  out.S = DomainSet::explicit_list(F, std::move(s));
  out.h_two_to_one = is_two_to_one(out.h, out.S).two_to_one;
  out.phi_two_to_one = is_two_to_one(out.phi, out.mu_star).two_to_one;
  std::vector<Elem> img = evaluate_all(out.phi0, out.S);
  std::sort(img.begin(), img.end());
  out.phi0_bijective = img == out.mu_star.elements();
  return out;
}

UniPoly row7_hbar(const FieldCtx& ctx, int m, Elem c) {
  if (m < 2) throw Error(Errc::InvalidParams, "row 7 needs m >= 2");
  std::vector<Elem> co(pow2(m) - pow2(m - 2) + 2);
  co[0] = c;
  co[pow2(m - 2) + 1] += ctx.one();
  co[pow2(m) - pow2(m - 2) + 1] += ctx.one();
  return UniPoly(ctx, std::move(co));
}

Elem moebius_pair(const FieldCtx& ctx, int m, Elem theta, Elem z) {
  const ExpInt d = pow2(m) + 1;
  for (Elem a : {theta, z})
    if (!ctx.contains(a) || a.is_zero() || a == ctx.one() || ctx.pow(a, d) != ctx.one())
      throw Error(Errc::ElementOutOfRange, "argument outside mu_(2^m+1)^*", a);
  if (z == theta) throw Error(Errc::PoleAtTheta, "z equals theta", z);
  return ctx.div(ctx.one() + ctx.mul(theta, z), theta + z);
}

// ---------------------------------------------------------------------------

std::string_view resultant_identity_name(ResultantIdentity w) {
  return w == ResultantIdentity::Factored19 ? "eq19" : "eq25";
}

namespace {

struct Point {
  Elem x, y, c;
};

// Sylvester resultant in Y of the specialized P and Q, and the factored
// right-hand sides; nullopt when a leading Y-coefficient vanishes.
struct Evaluated {
  Elem res;
  Elem rhs;
  Elem rhs_alt;
};

std::optional<Evaluated> eval19(const FieldCtx& F, int m, Point pt) {
  Mul P{F};
  const Elem x = pt.x, y = pt.y, X = F.frobenius(x, m);
  const Elem P1 = sum({P({y, y, X}), P({X, y}), P({x, x}), P({x, X}), P({x, x, X})});
  const Elem P0 = P({y, y, X});
  const Elem Q2 = P({x, y}) + x, Q1 = P({x, y});
  const Elem Q0 = sum({P({X, X, x, y}), P({y, x, X}), P({y, X, X})});
  if (P1.is_zero() || Q2.is_zero()) return std::nullopt;
  const Elem res = sylvester_resultant(UniPoly(F, {P0, P1}), UniPoly(F, {Q0, Q1, Q2}));
  const Elem xy = x + y, a = P({x, X}) + x + X, b = sum({P({X, y}), P({x, X}), x, X});
  const Elem tail = P({xy, xy, a, b, b});
  return Evaluated{res, P({x, X, tail}), P({y, X, tail})};
}

std::optional<Evaluated> eval25(const FieldCtx& F, int m, Point pt) {
  Mul P{F};
  const Elem x = pt.x, y = pt.y, c = pt.c, X = F.frobenius(x, m), cb = F.frobenius(c, m);
  const Elem P2 = P({y, x, x, X}) + P({X, y});
  const Elem P1 = sum({P({y, y, x, X, X}), P({y, y, c, X}), P({c, x, x, X}), P({y, y, x}), P({X, X, x}), x});
  const Elem P0 = P({y, x, x, X}) + P({X, y});
  const Elem Q2 = sum({P({y, X}), P({y, cb, x}), P({x, x, y, X})});
  const Elem Q1 = sum({P({y, y, x, X, X}), P({y, y, x}), P({X, X, x}), x});
  const Elem Q0 = sum({P({cb, X, X, y, x}), P({y, X}), P({y, x, x, X})});
  if (P2.is_zero() || Q2.is_zero()) return std::nullopt;
  const Elem res = sylvester_resultant(UniPoly(F, {P0, P1, P2}), UniPoly(F, {Q0, Q1, Q2}));
  const Elem A1 = sum({P({x, x, X, X, cb}), P({x, X, c, cb}), P({x, x, cb}), P({c, x, x}), c});
  const Elem A2 = sum({P({x, x, X, X, cb}), P({c, x, x, X, X}), P({x, X, c, cb}), P({x, x, cb}), P({c, X, X})});
  const Elem B1 = P({x, x, sum({P({x, X, c, cb}), P({cb, X, X}), P({c, x, x}), cb, c})});
  const Elem B2 = sum({P({c, x, x, X, X}), P({x, X, c, cb}), P({cb, X, X}), P({c, X, X}), cb});
  const Elem A = F.mul(A1, A2), B = F.mul(B1, B2), xy = x + y;
  const Elem rhs = P({y, y, X, X, xy, xy, P({A, y, y}) + B});
  return Evaluated{res, rhs, rhs};
}

}  // namespace

ResultantReport resultant_identity_check(ResultantIdentity which, int m, std::uint64_t samples, std::uint64_t seed) {
  ResultantReport r;
  r.which = which;
  r.m = m;
  r.seed = seed;
  r.requested = samples;
  r.exhaustive = samples == 0;
  const bool is19 = which == ResultantIdentity::Factored19;
  if (m < 1 || (is19 && m % 2 != 0))
    throw Error(Errc::InvalidParams, is19 ? "the first identity needs m even" : "m must be positive");
  r.n = is19 ? 2 * m : 4 * m;
  const FieldCtx F = FieldCtx::create(r.n);

  std::vector<Elem> xs, ys, cs;
  if (is19) {
    const ExpInt e = F.signed_exponent(2 - static_cast<long long>(pow2(m)));
    for (std::uint32_t a = 1; a < F.order(); ++a)
      if (F.trace_abs(F.pow(Elem{a}, e)) == F.one()) xs.push_back(Elem{a});
    ys = xs;
    cs = {Elem{0}};
  } else {
    xs = DomainSet::mu(F, pow2(2 * m) + 1, true).elements();
    ys = xs;
    for (Elem c : F.subfield_elements(2 * m))
      if (!F.in_subfield(c, m)) cs.push_back(c);
  }

  std::uint64_t alt = 0;
  auto visit = [&](Point pt) {
    auto ev = is19 ? eval19(F, m, pt) : eval25(F, m, pt);
    if (!ev) {
      ++r.skipped;
      return;
    }
    ++r.evaluated;
    if (ev->res != ev->rhs) {
      ++r.mismatches;
      if (!r.first_mismatch) r.first_mismatch = std::array<Elem, 3>{pt.x, pt.y, pt.c};
    }
    if (ev->res != ev->rhs_alt) ++alt;
  };

  if (r.exhaustive) {
    for (Elem x : xs)
      for (Elem y : ys)
        for (Elem c : cs) visit({x, y, c});
  } else if (!xs.empty() && !cs.empty()) {
    std::mt19937_64 rng(seed);
    for (std::uint64_t t = 0; t < samples; ++t) {
      Elem x = xs[rng() % xs.size()];
      Elem y = ys[rng() % ys.size()];
      Elem c = cs[rng() % cs.size()];
      visit({x, y, c});
    }
  }
  if (is19) r.mismatches_leading_y = alt;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

FieldCtx odd_field(int m) {
  if (m < 1 || 2 * m + 1 > kMaxDegree) throw Error(Errc::InvalidParams, "odd catalog needs 1 <= m <= 11");
  return FieldCtx::create(2 * m + 1);
}

void check_index(int idx) {
  if (idx < 1 || idx > 5) throw Error(Errc::IndexOutOfRange, "catalog index must be 1..5, got " + std::to_string(idx));
}

MappingSpec monomials(const FieldCtx& F, std::initializer_list<ExpInt> es) {
  MappingSpec out = MappingSpec::zero(F);
  for (ExpInt e : es) out = out + MappingSpec::monomial(F, F.one(), e);
  return out;
}

// x + 1/den(x), with 1/0 read as 0.
MappingSpec plus_inverse(const MappingSpec& den) {
  const FieldCtx& F = den.ctx();
  return MappingSpec::identity(F) +
         MappingSpec::power(F, Inner::nested(std::make_shared<const MappingSpec>(den)), F.order() - 2, F.one());
}

MappingSpec odd_denominator(int idx, int m) {
  const FieldCtx F = odd_field(m);
  const ExpInt a = pow2(m + 1), b = pow2(m + 2);
  switch (idx) {
    case 1: return monomials(F, {b + 2, b, a, 2, 0});
    case 2: return monomials(F, {a, a - 1, 0});
    case 3: return monomials(F, {b + 2, a, 0});
  }
  throw Error(Errc::IndexOutOfRange, "only involutions 1..3 have a denominator");
}

}  // namespace

MappingSpec odd_field_map(int idx, int m, bool repaired) {
  check_index(idx);
  const FieldCtx F = odd_field(m);
  const ExpInt a = pow2(m + 1), b = pow2(m + 2), q = F.order();
  switch (idx) {
    case 1: return monomials(F, {a + 2, a, 2, 1});
    case 2: return repaired ? monomials(F, {a + 1, a + 2, 2, 1}) : monomials(F, {a + 2, a + 2, 2, 1});
    case 3: return monomials(F, {b + 4, a + 2, 2, 1});
    case 4: return monomials(F, {q - a + 2, a, 2, 1});
    default: return monomials(F, {q - 2, q - a, q - a - 2, 1});
  }
}

InvolutionSpec odd_field_involution(int idx, int m) {
  check_index(idx);
  const FieldCtx F = odd_field(m);
  const ExpInt a = pow2(m + 1), q = F.order();
  InvolutionSpec out;
  out.form = InvolutionSpec::Form::Polynomial;
  out.provenance = "odd-degree catalog, involution " + std::to_string(idx);
  if (idx <= 3) {
    out.spec = plus_inverse(odd_denominator(idx, m));
  } else if (idx == 4) {
    out.spec = monomials(F, {q - a + 1, a - 1, 1, 0});
  } else {
    const MappingSpec body = monomials(F, {q - 2, q - a, q - a - 2});
    out.form = InvolutionSpec::Form::Composite;
    out.eval = [body](Elem x) { return x.bits <= 1 ? x + Elem{1} : body(x); };
    return out;
  }
  MappingSpec spec = *out.spec;
  out.eval = [spec](Elem x) { return spec(x); };
  return out;
}

std::vector<Elem> odd_involution_denominator_zeros(int idx, int m) {
  const MappingSpec den = odd_denominator(idx, m);
  std::vector<Elem> zeros;
  for (std::uint32_t x = 0; x < den.ctx().order(); ++x)
    if (den(Elem{x}).is_zero()) zeros.push_back(Elem{x});
  return zeros;
}

std::string OddRepairCandidate::describe() const {
  auto term = [](ExpInt a, long long b) {
    std::ostringstream os;
    os << "x^(";
    if (a == 0) {
      os << b;
    } else {
      if (a != 1) os << a << "*";
      os << "2^(m+1)";
      if (b > 0) os << "+" << b;
      if (b < 0) os << b;
    }
    os << ")";
    return os.str();
  };
  return term(alpha1, beta1) + " + " + term(alpha2, beta2) + " + x^2 + x";
}

std::vector<OddRepairCandidate> repair_odd_map_2(const std::vector<int>& ms) {
  std::vector<std::pair<ExpInt, long long>> shapes;
  for (ExpInt a : {0, 1, 2, 4})
    for (long long b = -3; b <= 4; ++b) shapes.emplace_back(a, b);

  struct Prepared {
    FieldCtx F;
    std::vector<Elem> inv;
  };
  std::vector<Prepared> fields;
  for (int m : ms) {
    const FieldCtx F = odd_field(m);
    fields.push_back({F, full_values(odd_field_involution(2, m).eval, F, 1)});
  }

  std::vector<OddRepairCandidate> out;
  for (std::size_t u = 0; u < shapes.size(); ++u) {
    for (std::size_t v = u + 1; v < shapes.size(); ++v) {
      auto [a1, b1] = shapes[u];
      auto [a2, b2] = shapes[v];
      bool good = !ms.empty();
      for (std::size_t j = 0; j < ms.size() && good; ++j) {
        const FieldCtx& F = fields[j].F;
        const long long base = static_cast<long long>(pow2(ms[j] + 1));
        const long long e1 = static_cast<long long>(a1) * base + b1, e2 = static_cast<long long>(a2) * base + b2;
        if (e1 <= 0 || e2 <= 0 || e1 == e2) {
          good = false;
          break;
        }
        const MappingSpec f = monomials(F, {static_cast<ExpInt>(e1), static_cast<ExpInt>(e2), 2, 1});
        const std::vector<Elem> fv = evaluate_all(f, DomainSet::full(F));
        if (!two_to_one_verdict(F, fv).two_to_one) {
          good = false;
          break;
        }
        for (std::uint32_t x = 0; x < F.order(); ++x)
          if (fv[fields[j].inv[x].bits] != fv[x]) {
            good = false;
            break;
          }
      }
      if (good) out.push_back({a1, b1, a2, b2});
    }
  }
  return out;
}

}  // namespace gf2to1
