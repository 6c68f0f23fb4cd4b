#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "gf2to1/agw.hpp"
#include "gf2to1/families.hpp"

namespace gf2to1 {

/// Insertion-ordered so that reports keep a stable, readable key order.
using Json = nlohmann::ordered_json;

// Parsing failures of every kind surface as Error(ParseError).
Json parse_json(const std::string& text);

Json to_json(const FieldCtx& ctx);
/// {"n": 4, "modulus": "0x13"}; modulus optional.
FieldCtx field_from_json(const Json& j);

Json to_json(Elem e);
Elem elem_from_json(const FieldCtx& ctx, const Json& j);

/// ["0x0","0x1","0x1"] for x^2 + x.
Json to_json(const UniPoly& p);
UniPoly poly_from_json(const FieldCtx& ctx, const Json& j);

/// [["0x1",1],["0x1",0]] for x^2 + x.
Json to_json(const LinearizedMap& L);
LinearizedMap linearized_from_json(const FieldCtx& ctx, const Json& j);

/// {"terms":[{"c":"0x1","inner":{"kind":"affine","frob_terms":[...],"delta":"0x8"},"e":5}, ...]}.
/// A term with several factors uses "factors":[{"inner":...,"e":...}, ...];
/// a term without "inner" or "factors" is the constant c.
Json to_json(const MappingSpec& f);
/// ctx may be omitted when the object carries "field".
MappingSpec mapping_from_json(const Json& j, const std::optional<FieldCtx>& ctx);

/// {"kind":"full"}, {"kind":"trace_slice","m":2,"gamma":"0x1"},
/// {"kind":"mu","d":5,"exclude_one":true}, {"kind":"image","spec":...,"base":...},
/// {"kind":"explicit","elements":[...]}.
Json to_json(const DomainSet& d);
DomainSet domain_from_json(const Json& j, const FieldCtx& ctx);

/// [["0x0","0x1"], ...]: (a, I(a)) in domain order.
Json to_json(const PairingTable& t);
PairingTable pairing_from_json(const Json& j, const FieldCtx& ctx);

Json to_json(const DiagramSpec& d);
DiagramSpec diagram_from_json(const Json& j, const std::optional<FieldCtx>& ctx);

Json to_json(const PreimageProfile& p);
Json to_json(const Verdict& v);
Json to_json(const ConditionResult& c);
Json to_json(const Certificate& c);
Json to_json(const ConstructionReport& r);

/// {"row":3,"m":2,"delta":"0x8","c":"0x1"}, plus optional "i", "modulus",
/// "allow_zero_c".
Json to_json(const FamilyParams& p);
FamilyParams family_from_json(const Json& j);

Json to_json(const InvolutionCheck& c);
Json to_json(const InstanceReport& r);
Json to_json(const ResultantReport& r);
Json to_json(const Row6Resolution& r);

/// {"4": "0x19", ...}: degree -> modulus mask.
std::map<int, std::uint32_t> modulus_table_from_json(const Json& j);
std::map<int, std::uint32_t> load_modulus_table(const std::string& path);

}  // namespace gf2to1
