#include "gf2to1/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gf2to1/serialize.hpp"

namespace gf2to1 {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::uint32_t kMaxListedTable = 1024;

struct Global {
  std::optional<int> n;
  std::string modulus;
  int jobs = 1;
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  bool csv = false;
  bool timing = false;
};

// Wall time per phase, reported only with --timing.
class Phases {
 public:
  explicit Phases(bool on) : on_(on) {}
  template <class F>
  auto run(const std::string& name, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(name, t0);
    } else {
      auto r = f();
      record(name, t0);
      return r;
    }
  }
  void attach(Json& report) const {
    if (on_) report["timing_ms"] = times_;
  }

 private:
  void record(const std::string& name, std::chrono::steady_clock::time_point t0) {
    if (!on_) return;
    std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - t0;
    times_[name] = d.count();
  }
  bool on_;
  Json times_ = Json::object();
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::uint32_t> modulus_for(const Global& g, int n) {
  if (!g.modulus.empty()) {
    std::uint64_t v = parse_hex(g.modulus);
    if (v > 0xffffffffULL) throw Error(Errc::ParseError, "modulus too wide");
    return static_cast<std::uint32_t>(v);
  }
  if (const char* path = std::getenv("GF2TO1_MODULUS_TABLE"); path && *path) {
    auto table = load_modulus_table(path);
    if (auto it = table.find(n); it != table.end()) return it->second;
  }
  return std::nullopt;
}

FieldCtx field_for(const Global& g, int n) { return FieldCtx::create(n, modulus_for(g, n)); }

FieldCtx required_field(const Global& g) {
  if (!g.n) throw Usage("--n is required");
  return field_for(g, *g.n);
}

Json header(const std::string& command) {
  Json j;
  j["command"] = command;
  j["version"] = std::string(kVersion);
  return j;
}

Json table_json(const std::vector<Elem>& dom, const std::vector<Elem>& img) {
  Json j = Json::array();
  for (std::size_t i = 0; i < dom.size(); ++i) j.push_back(Json::array({to_json(dom[i]), to_json(img[i])}));
  return j;
}

Json domain_summary(const DomainSet& d) {
  Json j = to_json(d);
  if (d.kind() == DomainSet::Kind::Explicit && d.size() > kMaxListedTable) j.erase("elements");
  if (d.kind() == DomainSet::Kind::Image) {
    j.erase("spec");
    j.erase("base");
  }
  j["size"] = d.size();
  return j;
}

FamilyParams family_arg(const Global& g, const std::string& text) {
  FamilyParams p = family_from_json(parse_json(text));
  if (!p.modulus && p.row >= 1 && p.row <= 8 && p.m >= 1) p.modulus = modulus_for(g, p.n());
  return p;
}

// "full", "full:n=4", "mu:d=5", "mu*:d=5", "trace_slice:m=2,gamma=0x1", or a
// JSON object.
struct DomainText {
  std::string kind;
  std::map<std::string, std::string> args;
  std::optional<Json> json;
};

DomainText parse_domain_text(const std::string& text) {
  DomainText d;
  if (!text.empty() && text.front() == '{') {
    d.json = parse_json(text);
    return d;
  }
  auto colon = text.find(':');
  d.kind = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(Errc::ParseError, "domain argument \"" + kv + "\" is not key=value");
      d.args[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  }
  return d;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, what + " must be an integer, got \"" + s + "\"");
  }
}

DomainSet build_domain(const DomainText& d, const FieldCtx& ctx) {
  if (d.json) return domain_from_json(*d.json, ctx);
  auto arg = [&](const std::string& k) {
    auto it = d.args.find(k);
    if (it == d.args.end()) throw Error(Errc::ParseError, "domain \"" + d.kind + "\" needs " + k + "=");
    return it->second;
  };
  if (d.kind == "full") return DomainSet::full(ctx);
  if (d.kind == "mu" || d.kind == "mu*") return DomainSet::mu(ctx, to_int(arg("d"), "d"), d.kind == "mu*");
  if (d.kind == "trace_slice") return DomainSet::trace_slice(ctx, to_int(arg("m"), "m"), parse_elem(ctx, arg("gamma")));
  throw Error(Errc::ParseError, "unknown domain \"" + d.kind + "\"");
}

struct MapInput {
  MappingSpec f;
  DomainSet dom;
  Json input;
};

MapInput map_input(const Global& g, const std::string& map_text, const std::string& domain_text) {
  const Json mj = parse_json(map_text);
  const DomainText dt = parse_domain_text(domain_text);
  std::optional<FieldCtx> ctx;
  if (mj.is_object() && mj.contains("field"))
    ctx = field_from_json(mj.at("field"));
  else if (g.n)
    ctx = field_for(g, *g.n);
  else if (auto it = dt.args.find("n"); it != dt.args.end())
    ctx = field_for(g, to_int(it->second, "n"));
  if (!ctx) throw Usage("the map needs a field: pass --n, a \"field\" object, or full:n=<degree>");
  MappingSpec f = mapping_from_json(mj, ctx);
  DomainSet dom = build_domain(dt, *ctx);
  Json in;
  in["map"] = to_json(f);
  return {std::move(f), std::move(dom), std::move(in)};
}

Json violation_json(const Violation& v) {
  Json j;
  j["condition"] = v.condition;
  j["detail"] = v.detail;
  return j;
}

int emit(std::ostream& out, const Json& report, int code) {
  out << report.dump(2) << "\n";
  return code;
}

// ---------------------------------------------------------------------------

int cmd_field_info(const Global& g, const std::string& elem, std::ostream& out) {
  const FieldCtx F = required_field(g);
  Json r = header("field-info");
  r["field"] = to_json(F);
  r["order"] = F.order();
  r["default_modulus"] = F.modulus() == default_modulus(F.degree());
  r["generator"] = to_json(F.generator());
  if (!elem.empty()) {
    const Elem a = parse_elem(F, elem);
    Json e;
    e["value"] = to_json(a);
    e["inverse"] = a.is_zero() ? Json(nullptr) : to_json(F.inv(a));
    e["square"] = to_json(F.sqr(a));
    e["sqrt"] = to_json(F.sqrt(a));
    e["trace"] = to_json(F.trace_abs(a));
    r["element"] = std::move(e);
  }
  return emit(out, r, kExitOk);
}

struct Subject {
  std::string family, map, domain = "full";
  int odd = 0;
  int m = 0;
  bool repaired = false;
};

void add_subject(CLI::App* sub, Subject& s) {
  sub->add_option("--family", s.family, "family parameters as JSON");
  sub->add_option("--map", s.map, "map as MappingSpec JSON");
  sub->add_option("--domain", s.domain, "domain: full[:n=N], mu:d=D, mu*:d=D, trace_slice:m=M,gamma=G, or JSON");
  sub->add_option("--odd", s.odd, "odd-degree catalog index 1..5 (with --m)");
  sub->add_option("--m", s.m, "catalog parameter m; the field is F_2^(2m+1)");
  sub->add_flag("--repaired", s.repaired, "use the reconstructed catalog map 2");
}

int subject_count(const Subject& s) { return !s.family.empty() + !s.map.empty() + (s.odd != 0); }

int cmd_check(const Global& g, const Subject& s, std::ostream& out) {
  if (subject_count(s) != 1) throw Usage("give exactly one of --family, --map, --odd");
  Phases ph(g.timing);
  Json r = header("check");
  std::optional<MappingSpec> f;
  std::optional<DomainSet> dom;
  if (!s.family.empty()) {
    FamilyParams p = family_arg(g, s.family);
    r["input"] = {{"family", to_json(p)}};
    if (auto v = validate_family(p)) {
      r["violation"] = violation_json(*v);
      return emit(out, r, kExitUsage);
    }
    f = construct_family(p);
    dom = DomainSet::full(f->ctx());
  } else if (!s.map.empty()) {
    MapInput mi = map_input(g, s.map, s.domain);
    r["input"] = mi.input;
    f = mi.f;
    dom = mi.dom;
  } else {
    f = odd_field_map(s.odd, s.m, s.repaired);
    r["input"] = {{"odd", s.odd}, {"m", s.m}, {"repaired", s.repaired}, {"map", to_json(*f)}};
    dom = DomainSet::full(f->ctx());
  }
  r["field"] = to_json(f->ctx());
  r["domain"] = domain_summary(*dom);
  const Verdict v = ph.run("verdict", [&] { return is_two_to_one(*f, *dom, g.jobs); });
  r["verdict"] = to_json(v);
  if (v.two_to_one && dom->size() % 2 == 0) {
    PairingTable I = ph.run("involution", [&] { return derive_involution(*f, *dom, g.jobs); });
    std::uint64_t fixed = 0;
    for (std::size_t i = 0; i < dom->size(); ++i) fixed += dom->elements()[i] == I.image()[i];
    r["involution"] = {{"pairs", dom->size() / 2}, {"fixed_points", fixed}, {"is_involution", I.is_involution()}};
  } else {
    r["involution"] = nullptr;
  }
  ph.attach(r);
  return emit(out, r, v.two_to_one ? kExitOk : kExitVerdict);
}

struct SweepArgs {
  int row = 0, m = 0;
  std::optional<int> i;
  bool allow_zero_c = false;
  std::uint64_t samples = 0;
  bool profile_only = false;
};

std::string csv_status(const InstanceReport& r, bool profile_only) {
  if (profile_only) return "not checked";
  if (!r.two_to_one) return "fail";
  bool ok = r.derived.ok() && r.transfer_matches_derived;
  if (r.closed) return ok && r.closed->ok() && r.closed_matches_derived.value_or(false) ? "closed+table ok" : "fail";
  return ok ? "table ok" : "fail";
}

int cmd_sweep(const Global& g, const SweepArgs& a, std::ostream& out) {
  std::optional<std::uint32_t> mod;
  {
    FamilyParams probe;
    probe.row = a.row;
    probe.m = a.m;
    if (a.row >= 1 && a.row <= 8 && a.m >= 1 && probe.n() <= kMaxDegree) mod = modulus_for(g, probe.n());
  }
  std::vector<FamilyParams> inst = admissible_instances(a.row, a.m, a.i, mod, a.allow_zero_c);
  if (a.samples > 0 && a.samples < inst.size()) {
    std::mt19937_64 rng(g.seed);
    std::vector<std::size_t> idx(inst.size());
    for (std::size_t t = 0; t < idx.size(); ++t) idx[t] = t;
    for (std::size_t t = 0; t < a.samples; ++t) std::swap(idx[t], idx[t + rng() % (idx.size() - t)]);
    idx.resize(a.samples);
    std::sort(idx.begin(), idx.end());
    std::vector<FamilyParams> chosen;
    for (std::size_t t : idx) chosen.push_back(inst[t]);
    inst = std::move(chosen);
  }
  if (g.csv) out << "No,k,m,i,s,delta,c,conditions,verdict,involution\n";
  std::uint64_t passed = 0, failed = 0;
  for (const FamilyParams& p : inst) {
    Phases ph(g.timing);
    InstanceReport r;
    if (a.profile_only) {
      r.params = p;
      r.s = p.s();
      Verdict v = ph.run("verdict", [&] { return is_two_to_one(construct_family(p), DomainSet::full(p.field()), g.jobs); });
      r.profile = v.profile;
      r.two_to_one = v.two_to_one;
    } else {
      r = ph.run("check", [&] { return check_instance(p, g.jobs); });
    }
    const bool ok = a.profile_only ? r.two_to_one : r.ok();
    (ok ? passed : failed) += 1;
    if (g.csv) {
      out << p.row << "," << p.k() << "," << p.m << "," << (p.i ? std::to_string(*p.i) : "") << "," << r.s << ","
          << to_hex(p.delta) << "," << to_hex(p.c) << ",ok," << (r.two_to_one ? "2-to-1" : "not 2-to-1") << ","
          << csv_status(r, a.profile_only) << "\n";
      continue;
    }
    Json rec;
    if (a.profile_only) {
      rec["params"] = to_json(p);
      rec["s"] = r.s;
      rec["two_to_one"] = r.two_to_one;
      rec["profile"] = to_json(r.profile);
      rec["ok"] = ok;
    } else {
      rec = to_json(r);
    }
    ph.attach(rec);
    out << rec.dump() << "\n";
  }
  if (!g.csv) {
    Json sum;
    sum["summary"] = true;
    sum["row"] = a.row;
    sum["m"] = a.m;
    sum["i"] = a.i ? Json(*a.i) : Json(nullptr);
    sum["instances"] = inst.size();
    sum["passed"] = passed;
    sum["failed"] = failed;
    if (inst.empty()) {
      FamilyParams probe;
      probe.row = a.row;
      probe.m = a.m;
      probe.i = a.i;
      probe.c = Elem{1};
      auto v = validate_family(probe);
      sum["violation"] = v ? violation_json(*v) : Json("no admissible (delta, c)");
    }
    out << sum.dump() << "\n";
  }
  return failed == 0 ? kExitOk : kExitVerdict;
}

Json spec_json(const InvolutionSpec& I) {
  Json j;
  j["form"] = form_name(I.form);
  j["provenance"] = I.provenance;
  j["offset"] = I.offset ? to_json(*I.offset) : Json(nullptr);
  j["spec"] = I.spec ? to_json(*I.spec) : Json(nullptr);
  return j;
}

int cmd_involution(const Global& g, const Subject& s, const std::string& mode, std::ostream& out, std::ostream& err) {
  if (subject_count(s) != 1) throw Usage("give exactly one of --family, --map, --odd");
  if (mode != "closed" && mode != "table" && mode != "both") throw Usage("--mode must be closed, table or both");
  Phases ph(g.timing);
  Json r = header("involution");
  r["mode"] = mode;
  bool pass = true;

  if (!s.map.empty()) {
    if (mode == "closed") throw Usage("a user map has no closed form; use --mode table");
    r["mode"] = "table";
    MapInput mi = map_input(g, s.map, s.domain);
    r["input"] = mi.input;
    r["field"] = to_json(mi.f.ctx());
    r["domain"] = domain_summary(mi.dom);
    PairingTable I = ph.run("table", [&] { return derive_involution(mi.f, mi.dom, g.jobs); });
    bool preserves = true;
    for (std::size_t i = 0; i < mi.dom.size(); ++i)
      preserves = preserves && mi.f(I.image()[i]) == mi.f(mi.dom.elements()[i]);
    Json t;
    t["involution"] = I.is_involution();
    t["fixed_point_free"] = I.fixed_point_free();
    t["preserves_f"] = preserves;
    t["witness"] = I.first_violation() ? to_json(*I.first_violation()) : Json(nullptr);
    r["table"] = t;
    if (mi.dom.size() <= kMaxListedTable) r["values"] = to_json(I);
    pass = I.is_involution() && I.fixed_point_free() && preserves;
    ph.attach(r);
    return emit(out, r, pass ? kExitOk : kExitVerdict);
  }

  std::optional<MappingSpec> f;
  std::optional<InvolutionSpec> closed, table;
  if (!s.family.empty()) {
    FamilyParams p = family_arg(g, s.family);
    r["input"] = {{"family", to_json(p)}};
    if (auto v = validate_family(p)) {
      r["violation"] = violation_json(*v);
      return emit(out, r, kExitUsage);
    }
    f = construct_family(p);
    if (mode != "table") {
      try {
        closed = closed_form_involution(p);
      } catch (const Error& e) {
        if (e.code() != Errc::NoClosedForm) throw;
        r["closed_form_note"] = e.what();
        err << "note: " << e.what() << "; emitting the table involution instead\n";
      }
    }
    if (mode != "closed" || !closed) table = ph.run("table", [&] { return table_involution(p, g.jobs); });
  } else {
    f = odd_field_map(s.odd, s.m, s.repaired);
    r["input"] = {{"odd", s.odd}, {"m", s.m}, {"repaired", s.repaired}, {"map", to_json(*f)}};
    if (mode != "table") closed = odd_field_involution(s.odd, s.m);
    if (mode != "closed") {
      PairingTable I = ph.run("table", [&] { return derive_involution(*f, DomainSet::full(f->ctx()), g.jobs); });
      InvolutionSpec t;
      t.form = InvolutionSpec::Form::Table;
      t.eval = [I](Elem x) { return I(x); };
      t.provenance = "derived from the catalog map";
      table = t;
    }
    if (s.odd <= 3) {
      Json zeros = Json::array();
      for (Elem z : odd_involution_denominator_zeros(s.odd, s.m)) zeros.push_back(to_json(z));
      r["denominator_zeros"] = zeros;
    }
  }

  const FieldCtx& F = f->ctx();
  const MappingSpec fm = *f;
  const Evaluator fe = [fm](Elem x) { return fm(x); };
  r["field"] = to_json(F);
  auto report = [&](const char* key, const InvolutionSpec& I) {
    InvolutionCheck c = ph.run(key, [&] { return check_involution(I.eval, fe, F, g.jobs); });
    Json j = spec_json(I);
    j["checks"] = to_json(c);
    r[key] = j;
    pass = pass && c.ok();
  };
  if (closed) report("closed", *closed);
  if (table) report("table", *table);
  if (closed && table) {
    std::optional<Elem> diff;
    for (std::uint32_t x = 0; x < F.order() && !diff; ++x)
      if ((*closed)(Elem{x}) != (*table)(Elem{x})) diff = Elem{x};
    r["closed_equals_table"] = !diff;
    r["first_difference"] = diff ? to_json(*diff) : Json(nullptr);
    pass = pass && !diff;
  }
  if (F.order() <= kMaxListedTable) {
    const InvolutionSpec& I = closed ? *closed : *table;
    std::vector<Elem> dom, img;
    for (std::uint32_t x = 0; x < F.order(); ++x) {
      dom.push_back(Elem{x});
      img.push_back(I(Elem{x}));
    }
    r["values"] = table_json(dom, img);
  }
  ph.attach(r);
  return emit(out, r, pass ? kExitOk : kExitVerdict);
}

int cmd_count(const Global& g, const std::string& involution, bool oracle, std::ostream& out) {
  const FieldCtx F = required_field(g);
  Phases ph(g.timing);
  Json r = header("count");
  r["field"] = to_json(F);
  std::optional<PairingTable> I;
  if (!involution.empty()) {
    I = pairing_from_json(parse_json(involution), F);
  } else {
    std::vector<Elem> img;
    for (std::uint32_t x = 0; x < F.order(); ++x) img.push_back(Elem{x ^ 1u});
    I = PairingTable(DomainSet::full(F), std::move(img));
  }
  r["involution"] = to_json(*I);
  const std::uint64_t formula = deriver_count_formula(F.degree());
  const std::uint64_t built = ph.run("constructive", [&] { return count_derivers(*I); });
  r["formula"] = formula;
  r["constructive"] = built;
  bool pass = built == formula;
  if (oracle) {
    const std::uint64_t scanned = ph.run("oracle", [&] { return count_derivers_by_scan(*I); });
    r["oracle"] = scanned;
    pass = pass && scanned == formula;
  }
  r["match"] = pass;
  ph.attach(r);
  return emit(out, r, pass ? kExitOk : kExitVerdict);
}

int cmd_resultant(const Global& g, const std::string& which, int m, std::uint64_t samples, std::ostream& out) {
  ResultantIdentity w;
  if (which == "eq19")
    w = ResultantIdentity::Factored19;
  else if (which == "eq25")
    w = ResultantIdentity::Factored25;
  else
    throw Usage("--which must be eq19 or eq25");
  Phases ph(g.timing);
  Json r = header("resultant");
  ResultantReport rep = ph.run("check", [&] { return resultant_identity_check(w, m, samples, g.seed); });
  r["field"] = to_json(FieldCtx::create(rep.n));
  r["report"] = to_json(rep);
  ph.attach(r);
  return emit(out, r, rep.mismatches == 0 ? kExitOk : kExitVerdict);
}

struct AgwArgs {
  std::string diagram;
  std::string mode = "both";
  int construction = 0;
  int m = 0, k = 0;
  std::string a, b, gspec;
};

int cmd_agw(const Global& g, const AgwArgs& a, std::ostream& out) {
  Phases ph(g.timing);
  Json r = header("agw");
  if (a.construction != 0) {
    if (!a.diagram.empty()) throw Usage("give either --diagram or --construction");
    ConstructionReport rep = [&] {
      if (a.construction == 1) {
        const FieldCtx F = required_field(g);
        MappingSpec gm = a.gspec.empty() ? MappingSpec::zero(F) : mapping_from_json(parse_json(a.gspec), F);
        return ph.run("construction", [&] { return build_construction_1(F, a.m, parse_elem(F, a.a), gm, g.jobs); });
      }
      if (a.construction == 2) {
        if (!g.n) throw Usage("--n is required");
        const FieldCtx F = FieldCtx::create(a.k * *g.n);
        return ph.run("construction",
                      [&] { return build_construction_2(a.k, *g.n, parse_elem(F, a.b.empty() ? "0x0" : a.b), parse_elem(F, a.a), g.jobs); });
      }
      throw Usage("--construction must be 1 or 2");
    }();
    r["construction"] = to_json(rep);
    ph.attach(r);
    return emit(out, r, rep.certified ? kExitOk : kExitVerdict);
  }
  if (a.diagram.empty()) throw Usage("give --diagram or --construction");
  if (a.mode != "base" && a.mode != "fiber" && a.mode != "both") throw Usage("--mode must be base, fiber or both");
  std::optional<FieldCtx> ctx;
  if (g.n) ctx = field_for(g, *g.n);
  const DiagramSpec d = diagram_from_json(parse_json(a.diagram), ctx);
  r["field"] = to_json(d.A.ctx());
  r["commutes"] = verify_commutes(d, g.jobs).commutes;
  r["certificates"] = Json::array();
  bool any = false, sound = true;
  for (const char* mode : {"base", "fiber"}) {
    if (a.mode != "both" && a.mode != mode) continue;
    Certificate c = ph.run(mode, [&] {
      return std::string(mode) == "base" ? certify_base_mode(d, g.jobs) : certify_fiber_mode(d, g.jobs);
    });
    any = any || c.certified;
    sound = sound && c.agrees();
    r["certificates"].push_back(to_json(c));
  }
  r["certified"] = any;
  ph.attach(r);
  return emit(out, r, any && sound ? kExitOk : kExitVerdict);
}

int usage_code(Errc c) {
  switch (c) {
    case Errc::DegreeOutOfRange:
    case Errc::NotIrreducible:
    case Errc::ParseError:
    case Errc::InvalidParams:
    case Errc::IndexOutOfRange:
    case Errc::TooLarge:
    case Errc::ElementOutOfRange:
    case Errc::NotADivisor:
    case Errc::ContextMismatch:
    case Errc::DomainNotFullField:
    case Errc::DeltaInSubfield:
    case Errc::ZeroC:
      return kExitUsage;
    default:
      return kExitVerdict;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact 2-to-1 mapping and involution toolkit over GF(2^n)", "gf2to1"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--n", g.n, "field degree");
  app.add_option("--modulus", g.modulus, "irreducible modulus as a hex mask");
  app.add_option("--jobs", g.jobs, "worker threads for enumeration")->check(CLI::Range(1, 256));
  app.add_option("--seed", g.seed, "seed for sampling commands");
  auto* json_flag = app.add_flag("--json", g.json, "JSON output (the default)");
  app.add_flag("--csv", g.csv, "CSV output (sweep only)")->excludes(json_flag);
  app.add_flag("--timing", g.timing, "add wall time per phase to reports");

  auto* info = app.add_subcommand("field-info", "describe a field");
  std::string elem;
  info->add_option("--elem", elem, "element to describe");

  auto* check = app.add_subcommand("check", "decide whether a map is 2-to-1 on a domain");
  Subject check_s;
  add_subject(check, check_s);

  auto* sweep = app.add_subcommand("sweep", "verify every admissible instance of a family row");
  SweepArgs sw;
  sweep->add_option("--row", sw.row, "row 1..8")->required();
  sweep->add_option("--m", sw.m, "m")->required();
  sweep->add_option("--i", sw.i, "i (rows 5-6)");
  sweep->add_flag("--allow-zero-c", sw.allow_zero_c, "row 6: admit c = 0");
  sweep->add_option("--samples", sw.samples, "check only this many instances, chosen with --seed (0: all)");
  sweep->add_flag("--profile-only", sw.profile_only, "skip the involution checks");

  auto* inv = app.add_subcommand("involution", "derive and verify the involution of a map");
  Subject inv_s;
  std::string inv_mode = "both";
  add_subject(inv, inv_s);
  inv->add_option("--mode", inv_mode, "closed, table or both");

  auto* count = app.add_subcommand("count", "count the 2-to-1 maps deriving an involution");
  std::string count_inv;
  bool oracle = false;
  count->add_option("--involution", count_inv, "involution as a hex-pair array (default x -> x + 1)");
  count->add_flag("--oracle", oracle, "also scan every function of the field (n <= 2)");

  auto* res = app.add_subcommand("resultant", "check a factored resultant identity");
  std::string which;
  int res_m = 0;
  std::uint64_t samples = 0;
  res->add_option("--which", which, "eq19 or eq25")->required();
  res->add_option("--m", res_m, "m")->required();
  res->add_option("--samples", samples, "number of samples (0: every admissible point)");

  auto* agw = app.add_subcommand("agw", "run the commutative-diagram certifiers");
  AgwArgs ag;
  agw->add_option("--diagram", ag.diagram, "DiagramSpec JSON");
  agw->add_option("--mode", ag.mode, "base, fiber or both");
  agw->add_option("--construction", ag.construction, "1: trace construction over F_2^n; 2: x^2 + x g(Tr) over F_2^(kn)");
  agw->add_option("--m", ag.m, "construction 1: subfield degree");
  agw->add_option("--k", ag.k, "construction 2: base field degree");
  agw->add_option("--a", ag.a, "parameter a");
  agw->add_option("--b", ag.b, "construction 2: parameter b");
  agw->add_option("--g", ag.gspec, "construction 1: g as MappingSpec JSON (default 0)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g.csv && !sweep->parsed()) throw Usage("--csv is only available for sweep");
    if (info->parsed()) return cmd_field_info(g, elem, out);
    if (check->parsed()) return cmd_check(g, check_s, out);
    if (sweep->parsed()) return cmd_sweep(g, sw, out);
    if (inv->parsed()) return cmd_involution(g, inv_s, inv_mode, out, err);
    if (count->parsed()) return cmd_count(g, count_inv, oracle, out);
    if (res->parsed()) return cmd_resultant(g, which, res_m, samples, out);
    if (agw->parsed()) return cmd_agw(g, ag, out);
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gf2to1
