#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gf2to1/field.hpp"
#include "gf2to1/polyalg.hpp"

namespace gf2to1 {

class MappingSpec;

/// The argument of one power in a mapping term: L(a(x)) + delta, where a is
/// a nested spec (absent: x itself) and L a linearized map (absent: identity).
struct Inner {
  std::optional<LinearizedMap> lin;
  Elem delta;
  std::shared_ptr<const MappingSpec> arg;

  static Inner x() { return {}; }
  static Inner affine(LinearizedMap L, Elem delta) { return {std::move(L), delta, nullptr}; }
  static Inner nested(std::shared_ptr<const MappingSpec> spec) { return {std::nullopt, Elem{0}, std::move(spec)}; }

  bool is_identity() const { return !lin && delta.is_zero() && !arg; }
  Elem operator()(Elem x) const;
};

struct Factor {
  Inner inner;
  ExpInt e = 1;
};

/// c * prod_j inner_j(x)^e_j; no factors means the constant c.
struct Term {
  Elem c;
  std::vector<Factor> factors;
};

/// A closed-form map sum_t c_t prod inner(x)^e, evaluable pointwise.
class MappingSpec {
 public:
  MappingSpec(FieldCtx ctx, std::vector<Term> terms);

  static MappingSpec zero(const FieldCtx& ctx) { return MappingSpec(ctx, {}); }
  static MappingSpec constant(const FieldCtx& ctx, Elem c);
  static MappingSpec identity(const FieldCtx& ctx) { return monomial(ctx, ctx.one(), 1); }
  /// c x^e
  static MappingSpec monomial(const FieldCtx& ctx, Elem c, ExpInt e);
  /// c inner(x)^e
  static MappingSpec power(const FieldCtx& ctx, Inner inner, ExpInt e, Elem c);
  static MappingSpec linearized(const LinearizedMap& L, Elem delta = Elem{0});
  static MappingSpec from_poly(const UniPoly& p);

  const FieldCtx& ctx() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }

  Elem operator()(Elem x) const;

  MappingSpec scaled(Elem s) const;
  /// x -> f(x)^(2^j)
  MappingSpec frobenius(long long j) const;
  /// x -> f(g(x))
  MappingSpec compose(const MappingSpec& g) const;
  friend MappingSpec operator+(const MappingSpec& a, const MappingSpec& b);
  friend MappingSpec operator*(const MappingSpec& a, const MappingSpec& b);

 private:
  FieldCtx ctx_;
  std::vector<Term> terms_;
};

using Evaluator = std::function<Elem(Elem)>;

/// A finite subset of a field, stored ascending without duplicates.
class DomainSet {
 public:
  enum class Kind { Full, TraceSlice, Mu, Image, Explicit };

  static DomainSet full(const FieldCtx& ctx);
  /// {x : Tr^n_m(x) = gamma}
  static DomainSet trace_slice(const FieldCtx& ctx, int m, Elem gamma);
  /// mu_d = {x : x^d = 1}; d must divide 2^n - 1. exclude_one gives mu_d^*.
  static DomainSet mu(const FieldCtx& ctx, std::uint64_t d, bool exclude_one);
  /// {g(x) : x in base}
  static DomainSet image(const MappingSpec& g, const DomainSet& base, int jobs = 1);
  static DomainSet explicit_list(const FieldCtx& ctx, std::vector<Elem> elems);

  Kind kind() const { return kind_; }
  const FieldCtx& ctx() const { return ctx_; }
  const std::vector<Elem>& elements() const { return *elems_; }
  std::size_t size() const { return elems_->size(); }
  bool contains(Elem a) const;
  /// Position of a in elements(), or nullopt.
  std::optional<std::size_t> index_of(Elem a) const;
  bool is_full_field() const { return size() == ctx_.order(); }

  // Construction parameters, kept for serialization.
  int slice_m() const { return m_; }
  Elem slice_gamma() const { return gamma_; }
  std::uint64_t mu_d() const { return d_; }
  bool mu_exclude_one() const { return exclude_one_; }
  const std::shared_ptr<const MappingSpec>& image_spec() const { return image_spec_; }
  const std::shared_ptr<const DomainSet>& image_base() const { return image_base_; }

  friend bool operator==(const DomainSet& a, const DomainSet& b) {
    return a.ctx_ == b.ctx_ && *a.elems_ == *b.elems_;
  }

 private:
  DomainSet(FieldCtx ctx, Kind kind, std::vector<Elem> elems);

  FieldCtx ctx_;
  Kind kind_;
  std::shared_ptr<const std::vector<Elem>> elems_;
  int m_ = 0;
  Elem gamma_;
  std::uint64_t d_ = 0;
  bool exclude_one_ = false;
  std::shared_ptr<const MappingSpec> image_spec_;
  std::shared_ptr<const DomainSet> image_base_;
};

/// f evaluated at every element of dom, in domain order. The work is split
/// into `jobs` contiguous ranges.
std::vector<Elem> evaluate_all(const Evaluator& f, const DomainSet& dom, int jobs = 1);
std::vector<Elem> evaluate_all(const MappingSpec& f, const DomainSet& dom, int jobs = 1);

struct PreimageProfile {
  /// preimage count -> number of image values with that count
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t domain_size = 0;
  std::uint64_t image_size = 0;
};

/// Profile of a list of values (the images of a domain, in any order).
PreimageProfile profile_of_values(const FieldCtx& ctx, std::span<const Elem> values);
PreimageProfile preimage_profile(const MappingSpec& f, const DomainSet& dom, int jobs = 1);
PreimageProfile preimage_profile(const Evaluator& f, const DomainSet& dom, int jobs = 1);

struct Verdict {
  bool two_to_one = false;
  PreimageProfile profile;
  /// An image value whose preimage count breaks the definition.
  std::optional<Elem> witness;
};

/// Even domains: every value has 2 or 0 preimages. Odd domains: all but one
/// value have 2 or 0 and the exception has exactly 1.
Verdict two_to_one_verdict(const FieldCtx& ctx, std::span<const Elem> values);
Verdict is_two_to_one(const MappingSpec& f, const DomainSet& dom, int jobs = 1);
Verdict is_two_to_one(const Evaluator& f, const DomainSet& dom, int jobs = 1);

/// A map on a DomainSet given by its value at each element, in domain order.
class PairingTable {
 public:
  PairingTable(DomainSet dom, std::vector<Elem> image);

  const DomainSet& domain() const { return dom_; }
  const std::vector<Elem>& image() const { return image_; }
  /// Throws ElementOutOfRange for points outside the domain.
  Elem operator()(Elem a) const;

  bool is_involution() const;
  bool fixed_point_free() const;
  /// First domain element where I(I(a)) != a or I(a) == a, if any.
  std::optional<Elem> first_violation() const;

  friend bool operator==(const PairingTable& a, const PairingTable& b) {
    return a.dom_ == b.dom_ && a.image_ == b.image_;
  }

 private:
  DomainSet dom_;
  std::vector<Elem> image_;
};

/// Tabulates f over dom (no involution checks).
PairingTable tabulate(const Evaluator& f, const DomainSet& dom, int jobs = 1);

/// The involution pairing each a with the other preimage of f(a).
PairingTable derive_involution(const MappingSpec& f, const DomainSet& dom, int jobs = 1);
PairingTable derive_involution(const Evaluator& f, const DomainSet& dom, int jobs = 1);

/// Largest field degree accepted by interpolate_involution.
inline constexpr int kMaxInterpolationDegree = 12;

/// The reduced polynomial (degree < q) agreeing with tbl on the full field.
UniPoly interpolate_involution(const PairingTable& tbl);

/// a -> p^{-1}(I(p(a))) on S, where p must be a bijection S -> domain(I).
PairingTable conjugate_involution(const PairingTable& I, const Evaluator& p, const DomainSet& S);

struct OuterBijection {
  /// (f(a), fbar(a)) pairs, ascending by f(a).
  std::vector<std::pair<Elem, Elem>> pairs;
  std::uint64_t image_size_f = 0;
  std::uint64_t image_size_fbar = 0;
  /// p(v) for v in Im(f); throws ElementOutOfRange otherwise.
  Elem operator()(Elem v) const;
};

/// p with fbar = p o f on A, when f and fbar derive the same involution.
/// Throws NotTwoToOne, OddDomain, or InvolutionsDiffer (with witness).
OuterBijection outer_bijection_witness(const Evaluator& f, const Evaluator& fbar, const DomainSet& A);

/// (2^n)! / (2^(n-1))!
std::uint64_t deriver_count_formula(int n);
/// Number of 2-to-1 maps of the full field deriving I, by constructing each
/// one: an injective assignment of values to the pairs of I. n <= 3.
std::uint64_t count_derivers(const PairingTable& I);
/// Same count by scanning all q^q functions; n <= 2.
std::uint64_t count_derivers_by_scan(const PairingTable& I);

}  // namespace gf2to1
