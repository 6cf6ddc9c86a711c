#include "iwalog/json_io.hpp"

#include <fstream>
#include <sstream>

namespace iwalog::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::int64_t get_l(const json& j, const Defaults& d) { return j.contains("l") ? j.at("l").get<std::int64_t>() : d.l; }
int get_prec(const json& j, const char* key, const Defaults& d) { return j.contains(key) ? j.at(key).get<int>() : d.prec; }
int get_trunc(const json& j, const Defaults& d) { return j.contains("trunc_T") ? j.at("trunc_T").get<int>() : d.trunc; }

int parse_index(const std::string& key) {
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(key, &used);
  } catch (const std::exception&) {
    parse_error("bad coefficient index '" + key + "'");
  }
  if (used != key.size()) parse_error("bad coefficient index '" + key + "'");
  return k;
}

std::int64_t smallest_prime_factor(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

}  // namespace

std::uint64_t parse_residue(const json& v, std::uint64_t modulus) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>() % modulus;
  if (v.is_number_integer()) return detail::reduce_signed(v.get<std::int64_t>(), modulus);
  if (!v.is_string()) parse_error("coefficient must be a decimal string or an integer");
  const std::string s = v.get<std::string>();
  std::size_t i = 0;
  const bool neg = !s.empty() && s[0] == '-';
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) parse_error("empty number '" + s + "'");
  unsigned __int128 r = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') parse_error("bad decimal number '" + s + "'");
    r = (r * 10 + static_cast<unsigned>(s[i] - '0')) % modulus;
  }
  const auto u = static_cast<std::uint64_t>(r);
  return neg && u != 0 ? modulus - u : u;
}

json to_json(const PadicInt& a) { return {{"l", a.l()}, {"prec", a.prec()}, {"value", a.to_string()}}; }

PadicInt padic_from_json(const json& j, const Defaults& d) {
  if (!j.is_object()) return PadicInt::from_residue(d.l, d.prec, parse_residue(j, detail::checked_pow(d.l, d.prec)));
  const std::int64_t l = get_l(j, d);
  const int prec = get_prec(j, "prec", d);
  detail::require_odd_prime(l);
  return PadicInt::from_residue(l, prec, parse_residue(j.at("value"), detail::checked_pow(l, prec)));
}

json to_json(const LambdaElem& a) {
  json c = json::array();
  for (std::uint64_t x : a.coeffs()) c.push_back(std::to_string(x));
  return {{"l", a.l()}, {"prec_l", a.prec()}, {"trunc_T", a.trunc()}, {"coeffs", c}};
}

LambdaElem lambda_from_json(const json& j, const Defaults& d) {
  const std::int64_t l = get_l(j, d);
  const int prec = get_prec(j, "prec_l", d);
  const json& c = j.at("coeffs");
  if (!c.is_array()) parse_error("LambdaElem coefficients must be an array");
  const int trunc = j.contains("trunc_T") ? j.at("trunc_T").get<int>() : std::max<int>(d.trunc, static_cast<int>(c.size()) - 1);
  if (static_cast<int>(c.size()) > trunc + 1) parse_error("more coefficients than trunc_T allows");
  LambdaElem a(l, prec, trunc);
  const std::uint64_t m = detail::checked_pow(l, prec);
  for (std::size_t k = 0; k < c.size(); ++k) a.set_coeff(static_cast<int>(k), parse_residue(c[k], m));
  return a;
}

json to_json(const WedgeElem& a) {
  json c = json::object();
  json p = json::object();
  for (int k = a.lo(); k <= a.hi(); ++k) {
    if (a.coeff(k) != 0) c[std::to_string(k)] = std::to_string(a.coeff(k));
    if (a.coeff_prec(k) < a.prec()) p[std::to_string(k)] = a.coeff_prec(k);
  }
  json out = {{"l", a.l()}, {"prec_l", a.prec()}, {"trunc_T", a.hi()}, {"coeffs", c}};
  if (!p.empty()) out["coeff_prec"] = p;
  return out;
}

WedgeElem wedge_from_json(const json& j, const Defaults& d) {
  const std::int64_t l = get_l(j, d);
  const int prec = get_prec(j, "prec_l", d);
  const int hi = get_trunc(j, d);
  const json& c = j.at("coeffs");
  if (!c.is_object()) parse_error("WedgeElem coefficients must be an object keyed by index");
  WedgeElem a = WedgeElem::zero(l, prec, hi);
  const std::uint64_t m = detail::checked_pow(l, prec);
  auto check = [hi](int k) {
    if (k > hi) parse_error("coefficient index " + std::to_string(k) + " lies above trunc_T " + std::to_string(hi));
  };
  for (const auto& [key, v] : c.items()) {
    const int k = parse_index(key);
    check(k);
    a.set_coeff(k, parse_residue(v, m));
  }
  if (j.contains("coeff_prec")) {
    for (const auto& [key, v] : j.at("coeff_prec").items()) {
      const int k = parse_index(key);
      check(k);
      a.set_coeff(k, a.coeff(k), v.get<int>());
    }
  }
  return a;
}

AbelianLGroup group_from_orders(const std::vector<std::int64_t>& orders) {
  if (orders.empty()) parse_error("group needs at least one invariant factor");
  if (orders[0] < 2) parse_error("invariant factors must be at least 2");
  return AbelianLGroup::from_orders(smallest_prime_factor(orders[0]), orders);
}

std::string element_key(const AbelianLGroup& g, int h) {
  std::string s = "(";
  const auto c = g.coordinates(h);
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

int element_from_key(const AbelianLGroup& g, const std::string& key) {
  std::string body = key;
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::vector<std::int64_t> c;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) c.push_back(parse_index(part));
  if (static_cast<int>(c.size()) != g.rank())
    parse_error("group element '" + key + "' needs " + std::to_string(g.rank()) + " exponents");
  return g.element(c);
}

json to_json(const GroupRingElem& x) {
  json c = json::object();
  for (int h = 0; h < x.group().order(); ++h)
    if (!x.coeff(h).is_zero() || x.coeff(h).window() < x.coeff(h).hi()) c[element_key(x.group(), h)] = to_json(x.coeff(h));
  return {{"group", x.group().orders()}, {"l", x.l()}, {"prec_l", x.prec()}, {"trunc_T", x.hi()}, {"coeffs", c}};
}

GroupRingElem group_elem_from_json(const json& j, const Defaults& d) {
  const std::vector<std::int64_t> orders = j.contains("group") ? j.at("group").get<std::vector<std::int64_t>>() : d.group;
  if (orders.empty()) parse_error("group ring element needs a group (field \"group\" or --group)");
  const AbelianLGroup g = group_from_orders(orders);
  Defaults dd = d;
  dd.l = g.l();
  dd.prec = get_prec(j, "prec_l", d);
  dd.trunc = get_trunc(j, d);
  GroupRingElem x(g, dd.prec, dd.trunc);
  for (const auto& [key, v] : j.at("coeffs").items()) {
    WedgeElem a = wedge_from_json(v, dd);
    if (a.l() != g.l()) throw Error(ErrorCode::MismatchedPrime, "coefficient prime differs from the group's");
    if (a.prec() != dd.prec) parse_error("coefficient precision differs from the element's");
    const int h = element_from_key(g, key);
    x.set_coeff(h, x.coeff(h) + a);
  }
  return x;
}

json to_json(const WedgeUnitFactors& f) {
  return {{"n", f.n},           {"zeta", f.zeta.to_string()}, {"zeta_prec", f.zeta.prec()}, {"z", f.z.to_string()},
          {"z_prec", f.z.prec()}, {"x", to_json(f.x)},          {"w", to_json(f.w)}};
}

WedgeUnitFactors factors_from_json(const json& j, const Defaults& d) {
  const WedgeElem x = wedge_from_json(j.at("x"), d);
  Defaults dw = d;
  dw.prec = std::max(d.prec - 1, 1);
  const WedgeElem w = wedge_from_json(j.at("w"), dw);
  const std::int64_t l = x.l();
  auto scalar = [&](const char* key, const char* prec_key, int fallback) {
    const int p = j.contains(prec_key) ? j.at(prec_key).get<int>() : fallback;
    return PadicInt::from_residue(l, p, parse_residue(j.at(key), detail::checked_pow(l, p)));
  };
  return {j.at("n").get<int>(), scalar("zeta", "zeta_prec", d.prec), scalar("z", "z_prec", d.prec), x, w};
}

json to_json(const LambdaUnitFactors& f) { return {{"c", to_json(f.c)}, {"z", to_json(f.z)}, {"y", to_json(f.y)}}; }

json to_json(const XiSplit& s) { return {{"xi_part", to_json(s.xi_part)}, {"preimage", to_json(s.preimage)}}; }

json to_json(const OneMinusPsiSolution& s) {
  return {{"solution", to_json(s.solution)}, {"obstruction", to_json(s.obstruction)}};
}

json to_json(const CokerClass& c) {
  return {{"zero", c.is_zero()}, {"c1", to_json(c.c1)}, {"b", to_json(c.b)}, {"residual", to_json(c.residual)}};
}

json to_json(const G2NormalForm& nf) {
  json g = json::array();
  for (const auto& a : nf.grad) g.push_back(to_json(a));
  return {{"eps", to_json(nf.eps)}, {"grad", g}};
}

json to_json(const GroupCokerClass& c) {
  json t = json::array();
  for (const auto& s : c.tensor) t.push_back(to_json(s.obstruction));
  return {{"zero", c.is_zero()}, {"base", to_json(c.base)}, {"tensor", t}};
}

json read_operand(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) parse_error("cannot read " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace iwalog::io
