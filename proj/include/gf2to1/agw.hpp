#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gf2to1/mapping.hpp"

namespace gf2to1 {

/// The square
///
///     A  --f-->  Abar
///     |lambda     |lambdabar
///     S  --fbar-> Sbar
///
/// All four sets live in one field.
struct DiagramSpec {
  DomainSet A, Abar, S, Sbar;
  MappingSpec f, fbar, lambda, lambdabar;
};

struct CommuteCheck {
  bool commutes = true;
  /// First a in A with lambdabar(f(a)) != fbar(lambda(a)).
  std::optional<Elem> witness;
};

CommuteCheck verify_commutes(const DiagramSpec& d, int jobs = 1);

struct ConditionResult {
  std::string name;
  bool held = false;
  std::optional<Elem> witness;
  std::string detail;
};

struct Certificate {
  std::string mode;  // "base" or "fiber"
  std::vector<ConditionResult> conditions;
  bool certified = false;
  /// Name of the first condition that failed, when refused.
  std::optional<std::string> refused_by;
  /// Independent is_two_to_one(f, A).
  bool direct_two_to_one = false;
  /// A certificate must never contradict the direct verdict.
  bool agrees() const { return !certified || direct_two_to_one; }
  /// Throws ConditionFailed naming the failed condition.
  void throw_if_refused() const;
};

/// fbar 2-to-1 from S onto Sbar, |S| even, and f a bijection from every
/// lambda-fiber over s onto the lambdabar-fiber over fbar(s). The four maps
/// must be surjective onto their targets; a failure there is a refusal.
Certificate certify_base_mode(const DiagramSpec& d, int jobs = 1);

/// fbar a bijection S -> Sbar, f 2-to-1 on every lambda-fiber, and at most
/// one fiber of odd size.
Certificate certify_fiber_mode(const DiagramSpec& d, int jobs = 1);

/// Largest field degree at which construction outputs are re-verified by
/// full enumeration.
inline constexpr int kDirectCheckMaxDegree = 16;

struct ConstructionReport {
  std::string name;
  MappingSpec f;
  /// Hypotheses and theorem conditions, in the order checked.
  std::vector<ConditionResult> conditions;
  std::vector<DiagramSpec> diagrams;
  std::vector<Certificate> certificates;
  /// Direct enumeration verdict (absent above kDirectCheckMaxDegree).
  std::optional<bool> direct_two_to_one;
  bool certified = false;
};

/// f(x) = (x^2 + x) h(Tr^n_m(x)) + g(Tr^n_m(x))^(2^m) + g(Tr^n_m(x)) with
/// h(x) = x^2 + x + a over F_{2^n}.
ConstructionReport build_construction_1(const FieldCtx& ctx, int m, Elem a, const MappingSpec& g, int jobs = 1);

/// f(x) = x^2 + x g(Tr^{kn}_k(x)), g(x) = x^3 + b x + a over F_{2^{kn}}.
ConstructionReport build_construction_2(int k, int n, Elem b, Elem a, int jobs = 1);

/// f(x) = L1(x) + L2(x) g(L3(x)) over F_{q^n}, q = 2^k. L3 must be
/// q-linearized over F_q and commute with L1 and L2; this admits x^2 and x
/// for L1, L2 when L3 is a trace.
ConstructionReport build_construction_3(int k, const LinearizedMap& L1, const LinearizedMap& L2,
                                        const LinearizedMap& L3, const MappingSpec& g, int jobs = 1);

/// f(x) = g(x^(2^k) + x + delta) + L(x), with h = g^(2^k) + g + L.
ConstructionReport build_construction_4(int k, Elem delta, const MappingSpec& g, const LinearizedMap& L, int jobs = 1);

}  // namespace gf2to1
