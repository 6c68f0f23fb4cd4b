#include "gf2to1/serialize.hpp"

#include <fstream>
#include <sstream>

namespace gf2to1 {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::uint64_t as_uint(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  if (j.is_string()) return parse_hex(j.get<std::string>());
  bad(std::string(what) + " must be a non-negative integer");
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::optional<std::uint32_t> optional_modulus(const Json& j) {
  if (!j.contains("modulus") || j.at("modulus").is_null()) return std::nullopt;
  std::uint64_t v = as_uint(j.at("modulus"), "modulus");
  if (v > 0xffffffffULL) bad("modulus too wide");
  return static_cast<std::uint32_t>(v);
}

Json witness_json(const std::optional<Elem>& w) { return w ? to_json(*w) : Json(nullptr); }

Json inner_json(const Inner& in) {
  Json j;
  if (in.is_identity()) {
    j["kind"] = "x";
    return j;
  }
  j["kind"] = in.arg ? "nested" : "affine";
  if (in.arg) j["spec"] = to_json(*in.arg);
  if (in.lin) j["frob_terms"] = to_json(*in.lin);
  if (!in.delta.is_zero() || !in.arg) j["delta"] = to_json(in.delta);
  return j;
}

Inner inner_from_json(const Json& j, const FieldCtx& ctx) {
  const std::string kind = member(j, "kind").get<std::string>();
  Inner in;
  if (kind == "x") return in;
  if (kind != "affine" && kind != "nested") bad("unknown inner kind \"" + kind + "\"");
  if (kind == "nested") in.arg = std::make_shared<const MappingSpec>(mapping_from_json(member(j, "spec"), ctx));
  if (j.contains("frob_terms")) in.lin = linearized_from_json(ctx, j.at("frob_terms"));
  if (j.contains("delta")) in.delta = elem_from_json(ctx, j.at("delta"));
  return in;
}

Json factor_json(const Factor& f) {
  Json j;
  j["inner"] = inner_json(f.inner);
  j["e"] = f.e;
  return j;
}

Factor factor_from_json(const Json& j, const FieldCtx& ctx) {
  return {inner_from_json(member(j, "inner"), ctx), as_uint(member(j, "e"), "e")};
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const FieldCtx& ctx) {
  Json j;
  j["n"] = ctx.degree();
  j["modulus"] = to_hex(ctx.modulus());
  return j;
}

FieldCtx field_from_json(const Json& j) {
  return FieldCtx::create(as_int(member(j, "n"), "n"), optional_modulus(j));
}

Json to_json(Elem e) { return to_hex(e); }

Elem elem_from_json(const FieldCtx& ctx, const Json& j) {
  if (!j.is_string()) bad("elements are hex strings such as \"0x1\"");
  return parse_elem(ctx, j.get<std::string>());
}

Json to_json(const UniPoly& p) {
  Json j = Json::array();
  for (Elem c : p.coeffs()) j.push_back(to_json(c));
  return j;
}

UniPoly poly_from_json(const FieldCtx& ctx, const Json& j) {
  if (!j.is_array()) bad("a polynomial is an array of hex coefficients");
  std::vector<Elem> c;
  for (const Json& e : j) c.push_back(elem_from_json(ctx, e));
  return UniPoly(ctx, std::move(c));
}

Json to_json(const LinearizedMap& L) {
  Json j = Json::array();
  for (const auto& [c, p] : L.terms()) j.push_back(Json::array({to_json(c), p}));
  return j;
}

LinearizedMap linearized_from_json(const FieldCtx& ctx, const Json& j) {
  if (!j.is_array()) bad("frob_terms must be an array of [coefficient, power] pairs");
  std::vector<LinearizedMap::Term> terms;
  for (const Json& t : j) {
    if (!t.is_array() || t.size() != 2) bad("frob_terms entries are [coefficient, power]");
    terms.emplace_back(elem_from_json(ctx, t[0]), as_int(t[1], "frobenius power"));
  }
  return LinearizedMap(ctx, std::move(terms));
}

Json to_json(const MappingSpec& f) {
  Json terms = Json::array();
  for (const Term& t : f.terms()) {
    Json j;
    j["c"] = to_json(t.c);
    if (t.factors.size() == 1) {
      j["inner"] = inner_json(t.factors[0].inner);
      j["e"] = t.factors[0].e;
    } else if (!t.factors.empty()) {
      j["factors"] = Json::array();
      for (const Factor& fa : t.factors) j["factors"].push_back(factor_json(fa));
    }
    terms.push_back(std::move(j));
  }
  Json out;
  out["terms"] = std::move(terms);
  return out;
}

MappingSpec mapping_from_json(const Json& j, const std::optional<FieldCtx>& ctx_in) {
  std::optional<FieldCtx> ctx = ctx_in;
  if (j.is_object() && j.contains("field")) ctx = field_from_json(j.at("field"));
  if (!ctx) bad("a map needs a field: pass --n or add \"field\"");
  const Json& terms = member(j, "terms");
  if (!terms.is_array()) bad("\"terms\" must be an array");
  std::vector<Term> out;
  for (const Json& t : terms) {
    Term term{elem_from_json(*ctx, member(t, "c")), {}};
    if (t.contains("factors")) {
      for (const Json& fa : t.at("factors")) term.factors.push_back(factor_from_json(fa, *ctx));
    } else if (t.contains("inner") || t.contains("e")) {
      Inner in = t.contains("inner") ? inner_from_json(t.at("inner"), *ctx) : Inner::x();
      term.factors.push_back({std::move(in), as_uint(member(t, "e"), "e")});
    }
    out.push_back(std::move(term));
  }
  return MappingSpec(*ctx, std::move(out));
}

Json to_json(const DomainSet& d) {
  Json j;
  switch (d.kind()) {
    case DomainSet::Kind::Full: j["kind"] = "full"; break;
    case DomainSet::Kind::TraceSlice:
      j["kind"] = "trace_slice";
      j["m"] = d.slice_m();
      j["gamma"] = to_json(d.slice_gamma());
      break;
    case DomainSet::Kind::Mu:
      j["kind"] = "mu";
      j["d"] = d.mu_d();
      j["exclude_one"] = d.mu_exclude_one();
      break;
    case DomainSet::Kind::Image:
      if (d.image_spec() && d.image_base()) {
        j["kind"] = "image";
        j["spec"] = to_json(*d.image_spec());
        j["base"] = to_json(*d.image_base());
        break;
      }
      [[fallthrough]];
    case DomainSet::Kind::Explicit:
      j["kind"] = "explicit";
      j["elements"] = Json::array();
      for (Elem e : d.elements()) j["elements"].push_back(to_json(e));
      break;
  }
  return j;
}

DomainSet domain_from_json(const Json& j, const FieldCtx& ctx) {
  const std::string kind = member(j, "kind").get<std::string>();
  if (kind == "full") return DomainSet::full(ctx);
  if (kind == "trace_slice")
    return DomainSet::trace_slice(ctx, as_int(member(j, "m"), "m"), elem_from_json(ctx, member(j, "gamma")));
  if (kind == "mu") return DomainSet::mu(ctx, as_uint(member(j, "d"), "d"), j.value("exclude_one", false));
  if (kind == "image") return DomainSet::image(mapping_from_json(member(j, "spec"), ctx), domain_from_json(member(j, "base"), ctx));
  if (kind == "explicit") {
    std::vector<Elem> es;
    for (const Json& e : member(j, "elements")) es.push_back(elem_from_json(ctx, e));
    return DomainSet::explicit_list(ctx, std::move(es));
  }
  bad("unknown domain kind \"" + kind + "\"");
}

Json to_json(const PairingTable& t) {
  Json j = Json::array();
  const auto& dom = t.domain().elements();
  for (std::size_t i = 0; i < dom.size(); ++i) j.push_back(Json::array({to_json(dom[i]), to_json(t.image()[i])}));
  return j;
}

PairingTable pairing_from_json(const Json& j, const FieldCtx& ctx) {
  if (!j.is_array()) bad("a pairing table is an array of [a, I(a)] pairs");
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const Json& p : j) {
    if (!p.is_array() || p.size() != 2) bad("pairing entries are [a, I(a)]");
    pairs.emplace_back(elem_from_json(ctx, p[0]), elem_from_json(ctx, p[1]));
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<Elem> dom, img;
  for (const auto& [a, b] : pairs) {
    if (!dom.empty() && dom.back() == a) bad("duplicate domain element " + to_hex(a));
    dom.push_back(a);
    img.push_back(b);
  }
  return PairingTable(DomainSet::explicit_list(ctx, std::move(dom)), std::move(img));
}

Json to_json(const DiagramSpec& d) {
  Json j;
  j["field"] = to_json(d.A.ctx());
  j["A"] = to_json(d.A);
  j["Abar"] = to_json(d.Abar);
  j["S"] = to_json(d.S);
  j["Sbar"] = to_json(d.Sbar);
  j["f"] = to_json(d.f);
  j["fbar"] = to_json(d.fbar);
  j["lambda"] = to_json(d.lambda);
  j["lambdabar"] = to_json(d.lambdabar);
  return j;
}

DiagramSpec diagram_from_json(const Json& j, const std::optional<FieldCtx>& ctx_in) {
  std::optional<FieldCtx> ctx = ctx_in;
  if (j.is_object() && j.contains("field")) ctx = field_from_json(j.at("field"));
  if (!ctx) bad("a diagram needs a field: pass --n or add \"field\"");
  auto dom = [&](const char* k) { return domain_from_json(member(j, k), *ctx); };
  auto map = [&](const char* k) { return mapping_from_json(member(j, k), ctx); };
  return {dom("A"), dom("Abar"), dom("S"), dom("Sbar"), map("f"), map("fbar"), map("lambda"), map("lambdabar")};
}

Json to_json(const PreimageProfile& p) {
  Json h = Json::object();
  for (const auto& [count, values] : p.histogram) h[std::to_string(count)] = values;
  Json j;
  j["histogram"] = std::move(h);
  j["domain_size"] = p.domain_size;
  j["image_size"] = p.image_size;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["two_to_one"] = v.two_to_one;
  j["profile"] = to_json(v.profile);
  j["witness"] = witness_json(v.witness);
  return j;
}

Json to_json(const ConditionResult& c) {
  Json j;
  j["name"] = c.name;
  j["held"] = c.held;
  j["witness"] = witness_json(c.witness);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json to_json(const Certificate& c) {
  Json j;
  j["mode"] = c.mode;
  j["certified"] = c.certified;
  j["refused_by"] = c.refused_by ? Json(*c.refused_by) : Json(nullptr);
  j["direct_two_to_one"] = c.direct_two_to_one;
  j["agrees_with_direct"] = c.agrees();
  j["conditions"] = Json::array();
  for (const ConditionResult& r : c.conditions) j["conditions"].push_back(to_json(r));
  return j;
}

Json to_json(const ConstructionReport& r) {
  Json j;
  j["name"] = r.name;
  j["field"] = to_json(r.f.ctx());
  j["f"] = to_json(r.f);
  j["conditions"] = Json::array();
  for (const ConditionResult& c : r.conditions) j["conditions"].push_back(to_json(c));
  j["certificates"] = Json::array();
  for (const Certificate& c : r.certificates) j["certificates"].push_back(to_json(c));
  j["direct_two_to_one"] = r.direct_two_to_one ? Json(*r.direct_two_to_one) : Json(nullptr);
  j["certified"] = r.certified;
  return j;
}

Json to_json(const FamilyParams& p) {
  Json j;
  j["row"] = p.row;
  j["m"] = p.m;
  if (p.i) j["i"] = *p.i;
  j["delta"] = to_json(p.delta);
  j["c"] = to_json(p.c);
  if (p.modulus) j["modulus"] = to_hex(*p.modulus);
  if (p.allow_zero_c) j["allow_zero_c"] = true;
  return j;
}

FamilyParams family_from_json(const Json& j) {
  FamilyParams p;
  p.row = as_int(member(j, "row"), "row");
  p.m = as_int(member(j, "m"), "m");
  if (j.contains("i") && !j.at("i").is_null()) p.i = as_int(j.at("i"), "i");
  p.modulus = optional_modulus(j);
  p.allow_zero_c = j.value("allow_zero_c", false);
  auto raw = [&](const char* key, std::uint32_t dflt) {
    if (!j.contains(key)) return Elem{dflt};
    const Json& v = j.at(key);
    if (!v.is_string()) bad(std::string(key) + " must be a hex string");
    std::uint64_t bits = parse_hex(v.get<std::string>());
    if (bits > 0xffffffffULL) bad(std::string(key) + " too wide");
    return Elem{static_cast<std::uint32_t>(bits)};
  };
  p.delta = raw("delta", 0);
  p.c = raw("c", 1);
  return p;
}

Json to_json(const InvolutionCheck& c) {
  Json j;
  j["involution"] = c.involution;
  j["fixed_point_free"] = c.fixed_point_free;
  j["preserves_f"] = c.preserves_f;
  j["witness"] = witness_json(c.witness);
  return j;
}

Json to_json(const InstanceReport& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["s"] = r.s;
  j["two_to_one"] = r.two_to_one;
  j["profile"] = to_json(r.profile);
  j["derived_involution"] = to_json(r.derived);
  if (r.closed) {
    Json c = to_json(*r.closed);
    c["matches_derived"] = r.closed_matches_derived.value_or(false);
    c["provenance"] = r.closed_provenance.value_or("");
    j["closed_form"] = std::move(c);
  } else {
    j["closed_form"] = nullptr;
  }
  j["transfer_matches_derived"] = r.transfer_matches_derived;
  j["ok"] = r.ok();
  return j;
}

Json to_json(const ResultantReport& r) {
  Json j;
  j["identity"] = resultant_identity_name(r.which);
  j["m"] = r.m;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["exhaustive"] = r.exhaustive;
  j["requested"] = r.requested;
  j["evaluated"] = r.evaluated;
  j["skipped"] = r.skipped;
  j["mismatches"] = r.mismatches;
  if (r.first_mismatch) {
    const auto& [x, y, c] = *r.first_mismatch;
    Json w;
    w["x"] = to_json(x);
    w["y"] = to_json(y);
    if (r.which == ResultantIdentity::Factored25) w["c"] = to_json(c);
    j["first_mismatch"] = std::move(w);
  } else {
    j["first_mismatch"] = nullptr;
  }
  if (r.mismatches_leading_y) j["mismatches_with_leading_factor_yX"] = *r.mismatches_leading_y;
  return j;
}

Json to_json(const Row6Resolution& r) {
  Json j;
  j["m_values"] = r.ms;
  j["candidates"] = Json::array();
  for (const Row6CandidateResult& c : r.candidates) {
    Json cj;
    cj["offset"] = row6_candidate_name(c.candidate);
    cj["instances"] = c.instances;
    cj["failures"] = c.failures;
    cj["first_failure"] = c.first_failure ? to_json(*c.first_failure) : Json(nullptr);
    j["candidates"].push_back(std::move(cj));
  }
  j["winner"] = r.winner ? Json(row6_candidate_name(*r.winner)) : Json(nullptr);
  return j;
}

std::map<int, std::uint32_t> modulus_table_from_json(const Json& j) {
  if (!j.is_object()) bad("a modulus table maps degrees to hex masks");
  std::map<int, std::uint32_t> out;
  for (const auto& [k, v] : j.items()) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      bad("modulus table key \"" + k + "\" is not a degree");
    }
    std::uint64_t mask = as_uint(v, "modulus");
    if (mask > 0xffffffffULL) bad("modulus too wide");
    out[n] = static_cast<std::uint32_t>(mask);
  }
  return out;
}

std::map<int, std::uint32_t> load_modulus_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read modulus table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return modulus_table_from_json(parse_json(ss.str()));
}

}  // namespace gf2to1
