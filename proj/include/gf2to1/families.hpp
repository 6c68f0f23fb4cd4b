#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gf2to1/mapping.hpp"

namespace gf2to1 {

// ---------------------------------------------------------------------------
// Maps of the form (x^(2^k) + x + delta)^s + c x

/// One concrete instance of the form (x^(2^k) + x + delta)^s + c x.
struct FormShape {
  FieldCtx ctx;
  int k = 1;
  ExpInt s = 1;
  Elem delta;
  Elem c;
};

/// x^(2^k) + x + delta
MappingSpec lambda_map(const FormShape& sh);
/// (x^(2^k) + x + delta)^s + c x
MappingSpec form_map(const FormShape& sh);
/// x^(2^k s) + x^s + c x
MappingSpec h_map(const FormShape& sh);
/// S = {x^(2^k) + x + delta : x in the field}
DomainSet lambda_image(const FormShape& sh, int jobs = 1);

struct Equivalence {
  bool f_two_to_one = false;
  bool h_two_to_one = false;
  bool agree() const { return f_two_to_one == h_two_to_one; }
};

/// Both sides of "f is 2-to-1 on the field iff h is 2-to-1 on S", each by
/// enumeration. Works for any shape, admissible or not.
Equivalence h_on_S_equivalence(const FormShape& sh, int jobs = 1);

/// An involution together with how it was obtained.
struct InvolutionSpec {
  enum class Form { Polynomial, AffineTransfer, Composite, Table };
  Form form = Form::Composite;
  /// Closed form, when one is expressible as a MappingSpec.
  std::optional<MappingSpec> spec;
  Evaluator eval;
  /// xi when the involution on S is x + xi.
  std::optional<Elem> offset;
  std::string provenance;

  Elem operator()(Elem x) const { return eval(x); }
};

std::string_view form_name(InvolutionSpec::Form f);

/// x -> c^{-1} (g(I_h(lambda(x))) + g(lambda(x))) + x with g = x^s, where I_h
/// is the involution derived from h on S. Throws ZeroC for c = 0.
InvolutionSpec transfer_involution(const FormShape& sh, const PairingTable& I_h);

/// The same transfer when I_h(x) = x + xi:
/// c^{-1} [(lambda(x) + xi)^s + lambda(x)^s] + x.
InvolutionSpec affine_transfer(const FormShape& sh, Elem xi, std::string provenance);

// ---------------------------------------------------------------------------
// The eight rows

struct FamilyParams {
  int row = 0;
  int m = 0;
  std::optional<int> i;
  Elem delta;
  Elem c;
  /// Override of the default modulus for the field of degree n().
  std::optional<std::uint32_t> modulus;
  /// Row 6 only: admit c = 0.
  bool allow_zero_c = false;

  int n() const;
  int k() const;
  /// The row's exponent; throws InvalidParams when undefined (e.g. row 7, m = 1).
  ExpInt s() const;
  FieldCtx field() const;
  FormShape shape() const;
};

struct Violation {
  std::string condition;
  std::string detail;
};

/// Every hypothesis of the governing theorem. Never throws.
std::optional<Violation> validate_family(const FamilyParams& p);

/// The two-term map; throws InvalidParams carrying the violation.
MappingSpec construct_family(const FamilyParams& p);

/// Every (delta, c) passing validate_family for the given row, m and i,
/// ascending by (delta, c). c is fixed to 1 for rows 1-4.
std::vector<FamilyParams> admissible_instances(int row, int m, std::optional<int> i = std::nullopt,
                                               std::optional<std::uint32_t> modulus = std::nullopt,
                                               bool allow_zero_c = false);

/// Closed form of the derived involution for rows 3-8. Rows 1-2 throw
/// NoClosedForm.
InvolutionSpec closed_form_involution(const FamilyParams& p);

/// The derived involution of h on S, carried over to the field.
InvolutionSpec table_involution(const FamilyParams& p, int jobs = 1);

// Row-specific offsets and helpers, exposed for testing.
Elem row5_offset(const FamilyParams& p);
enum class Row6Candidate { Printed, Proof };
std::string_view row6_candidate_name(Row6Candidate c);
/// gamma + 1/gamma^(2^i) (Printed) or gamma + c/gamma^(2^i) (Proof).
Elem row6_offset(const FamilyParams& p, Row6Candidate which);
/// The root alpha of x^3 + x + c in F_{2^m}.
Elem row7_alpha(const FamilyParams& p);
Elem row7_offset(const FamilyParams& p);

struct Row6CandidateResult {
  Row6Candidate candidate;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::optional<FamilyParams> first_failure;
};

struct Row6Resolution {
  std::vector<int> ms;
  std::vector<Row6CandidateResult> candidates;
  /// The unique candidate valid on every admissible instance, if exactly one.
  std::optional<Row6Candidate> winner;
};

/// Tests both offsets on every admissible (delta, c, i) with 1 <= i <= m for
/// each m in ms.
Row6Resolution resolve_row6_offset(const std::vector<int>& ms, int jobs = 1);

// ---------------------------------------------------------------------------
// Checking instances

struct InvolutionCheck {
  bool involution = false;
  bool fixed_point_free = false;
  bool preserves_f = false;
  std::optional<Elem> witness;
  bool ok() const { return involution && fixed_point_free && preserves_f; }
};

/// I(I(x)) = x, I(x) != x and f(I(x)) = f(x) on the whole field.
InvolutionCheck check_involution(const Evaluator& I, const Evaluator& f, const FieldCtx& ctx, int jobs = 1);

struct InstanceReport {
  FamilyParams params;
  ExpInt s = 0;
  PreimageProfile profile;
  bool two_to_one = false;
  InvolutionCheck derived;
  /// Empty for rows without a closed form.
  std::optional<InvolutionCheck> closed;
  std::optional<bool> closed_matches_derived;
  std::optional<std::string> closed_provenance;
  bool transfer_matches_derived = false;
  bool ok() const;
};

/// Profile, derived-involution postconditions, closed form and transfer
/// cross-checks for one admissible instance.
InstanceReport check_instance(const FamilyParams& p, int jobs = 1);

// ---------------------------------------------------------------------------
// Subgroup reduction

struct MuReduction {
  MappingSpec h;     // x^r hbar(x^(2^m - 1))
  MappingSpec phi;   // x^r hbar(x)^(2^m - 1)
  MappingSpec phi0;  // x^(2^m - 1)
  DomainSet S;       // {z + delta : z in F_{2^m}}
  DomainSet mu_star;
  bool h_two_to_one = false;
  bool phi_two_to_one = false;
  bool phi0_bijective = false;
};

/// Both sides of the reduction from S to mu_{2^m+1}^*, over the field of
/// hbar (degree 2m). Throws DeltaInSubfield when delta lies in F_{2^m}.
MuReduction mu_reduction(const UniPoly& hbar, ExpInt r, Elem delta, int m);

/// hbar(u) = u^(2^(m-2)+1) + u^(2^m-2^(m-2)+1) + c, the row-7 h in reduced form.
UniPoly row7_hbar(const FieldCtx& ctx, int m, Elem c);

/// (1 + theta z) / (theta + z) for theta, z in mu_{2^m+1}^*, z != theta.
Elem moebius_pair(const FieldCtx& ctx, int m, Elem theta, Elem z);

// ---------------------------------------------------------------------------
// Resultant identities

enum class ResultantIdentity { Factored19, Factored25 };

struct ResultantReport {
  ResultantIdentity which;
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::uint64_t requested = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
  /// Mismatches against the factorization as stated.
  std::uint64_t mismatches = 0;
  /// First mismatching (x, y, c).
  std::optional<std::array<Elem, 3>> first_mismatch;
  /// Identity 19 only: mismatches against the factorization with leading
  /// factor y X in place of x X.
  std::optional<std::uint64_t> mismatches_leading_y;
};

std::string_view resultant_identity_name(ResultantIdentity w);

/// Substitutes sample points into P and Q, takes the Sylvester resultant in
/// Y and compares with the factored right-hand side. samples = 0 means every
/// admissible point.
ResultantReport resultant_identity_check(ResultantIdentity which, int m, std::uint64_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Odd-degree catalog over F_{2^(2m+1)}

/// Map idx (1..5). Item 2 as listed has two equal terms and collapses to
/// x^2 + x; `repaired` substitutes the reconstruction from
/// repair_odd_map_2 instead.
MappingSpec odd_field_map(int idx, int m, bool repaired = false);
/// Involution idx (1..5).
InvolutionSpec odd_field_involution(int idx, int m);
/// Zeros of the denominator of involution idx (1..3) on the field.
std::vector<Elem> odd_involution_denominator_zeros(int idx, int m);

struct OddRepairCandidate {
  ExpInt alpha1 = 0;
  long long beta1 = 0;
  ExpInt alpha2 = 0;
  long long beta2 = 0;
  std::string describe() const;
};

/// Searches maps x^(a1 2^(m+1) + b1) + x^(a2 2^(m+1) + b2) + x^2 + x
/// (a in {0,1,2,4}, b in [-3,4]) that are 2-to-1 and paired with
/// involution 2 at every m in ms.
std::vector<OddRepairCandidate> repair_odd_map_2(const std::vector<int>& ms);

}  // namespace gf2to1
