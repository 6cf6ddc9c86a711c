#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwalog/group_ring.hpp"

namespace iwalog::io {

using nlohmann::json;

// Values for fields an input leaves out ("l", "prec_l", "trunc_T", "group").
struct Defaults {
  std::int64_t l = 3;
  int prec = 6;
  int trunc = 40;
  std::vector<std::int64_t> group;
};

// Decimal string (optional sign) or JSON integer, reduced mod `modulus`.
std::uint64_t parse_residue(const json& v, std::uint64_t modulus);

// {"l":3, "prec":3, "value":"26"}; a bare string or integer takes l and prec
// from the defaults.
json to_json(const PadicInt& a);
PadicInt padic_from_json(const json& j, const Defaults& d);

// {"l","prec_l","trunc_T","coeffs":["c0","c1",...]}
json to_json(const LambdaElem& a);
LambdaElem lambda_from_json(const json& j, const Defaults& d);

// {"l","prec_l","trunc_T","coeffs":{"-2":"5",...}}. Coefficients known to
// fewer than prec_l digits are listed in "coeff_prec" with their precision.
json to_json(const WedgeElem& a);
WedgeElem wedge_from_json(const json& j, const Defaults& d);

// {"group":[9,3], "coeffs":{"(4,0)": WedgeElem, ...}}
json to_json(const GroupRingElem& x);
GroupRingElem group_elem_from_json(const json& j, const Defaults& d);
AbelianLGroup group_from_orders(const std::vector<std::int64_t>& orders);
std::string element_key(const AbelianLGroup& g, int h);
int element_from_key(const AbelianLGroup& g, const std::string& key);

// {"n", "zeta", "z", "x", "w"}, plus "prec" fields for zeta and z.
json to_json(const WedgeUnitFactors& f);
WedgeUnitFactors factors_from_json(const json& j, const Defaults& d);

json to_json(const LambdaUnitFactors& f);
json to_json(const XiSplit& s);
json to_json(const OneMinusPsiSolution& s);
json to_json(const CokerClass& c);
json to_json(const G2NormalForm& nf);
json to_json(const GroupCokerClass& c);

// Inline JSON text, or @path to read it from a file.
json read_operand(const std::string& text);

}  // namespace iwalog::io
