#include "iwalog/eval.hpp"

#include <variant>

namespace iwalog::io {

namespace {

using Operand = std::variant<PadicInt, LambdaElem, WedgeElem, GroupRingElem, WedgeUnitFactors>;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::DomainViolation, what); }

bool group_keys(const json& coeffs) {
  for (const auto& [key, v] : coeffs.items())
    if (!key.empty() && key.front() == '(') return true;
  return false;
}

Operand parse(const json& j, const Defaults& d) {
  if (!j.is_object() || j.contains("value")) return padic_from_json(j, d);
  if (j.contains("x") && j.contains("w")) return factors_from_json(j, d);
  if (!j.contains("coeffs")) throw Error(ErrorCode::ParseError, "operand has no \"coeffs\"");
  const json& c = j.at("coeffs");
  if (c.is_array()) return lambda_from_json(j, d);
  if (j.contains("group") || group_keys(c)) return group_elem_from_json(j, d);
  return wedge_from_json(j, d);
}

template <class T>
const T& as(const Operand& o, const std::string& op) {
  if (const T* p = std::get_if<T>(&o)) return *p;
  bad("operation '" + op + "' does not take this kind of operand");
}

template <class F>
json on_ring(const Operand& a, const std::string& op, F&& f) {
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LambdaElem> || std::is_same_v<T, WedgeElem> || std::is_same_v<T, GroupRingElem>)
          return f(x);
        else
          bad("operation '" + op + "' needs a ring element");
      },
      a);
}

}  // namespace

const std::vector<std::string>& operation_names() {
  static const std::vector<std::string> names = {
      "teichmueller", "binomial",  "val-l",          "add",        "sub",          "mul",
      "negate",       "psi",       "exp-l",          "log-1p",     "one-plus-T-pow", "integral-exp",
      "integral-log", "l-minus-psi", "decompose",    "recompose",  "invert",       "xi-split",
      "log-T",        "one-minus-psi-solve", "kernel-one-minus-psi", "ker-L", "coker", "augmentation",
      "mod-g2",       "lemma4",    "exp-h0"};
  return names;
}

json evaluate(const std::string& op, const std::vector<json>& operands, const EvalOptions& opt) {
  const Defaults& d = opt.defaults;
  std::vector<Operand> xs;
  for (const auto& j : operands) xs.push_back(parse(j, d));
  auto need = [&](std::size_t n) {
    if (xs.size() != n)
      bad("operation '" + op + "' takes " + std::to_string(n) + " operand(s), got " + std::to_string(xs.size()));
  };
  const TailMode mode = opt.determined ? TailMode::Determined : TailMode::Canonical;

  if (op == "log-T") {
    need(0);
    detail::require_odd_prime(d.l);
    return to_json(log_T(d.l, d.prec, d.trunc));
  }
  if (op == "teichmueller") {
    need(1);
    return to_json(teichmueller(as<PadicInt>(xs[0], op)));
  }
  if (op == "binomial") {
    need(1);
    return to_json(binomial(as<PadicInt>(xs[0], op), opt.k));
  }
  if (op == "val-l") {
    need(1);
    const auto v = val_l(as<PadicInt>(xs[0], op));
    return {{"valuation", v ? json(*v) : json("indistinguishable-from-zero")}};
  }
  if (op == "one-plus-T-pow") {
    need(1);
    return to_json(one_plus_T_pow(as<PadicInt>(xs[0], op), d.trunc));
  }
  if (op == "kernel-one-minus-psi") {
    need(1);
    return to_json(kernel_one_minus_psi_check(as<PadicInt>(xs[0], op), d.trunc));
  }
  if (op == "recompose") {
    need(1);
    return to_json(recompose_wedge_unit(as<WedgeUnitFactors>(xs[0], op)));
  }
  if (op == "add" || op == "sub" || op == "mul") {
    need(2);
    return on_ring(xs[0], op, [&](const auto& a) -> json {
      using T = std::decay_t<decltype(a)>;
      const T& b = as<T>(xs[1], op);
      if (op == "add") return to_json(a + b);
      if (op == "sub") return to_json(a - b);
      return to_json(a * b);
    });
  }
  need(1);
  const Operand& x = xs[0];
  if (op == "negate") return on_ring(x, op, [](const auto& a) { return to_json(-a); });
  if (op == "psi") {
    return on_ring(x, op, [](const auto& a) -> json {
      using T = std::decay_t<decltype(a)>;
      if constexpr (std::is_same_v<T, LambdaElem>) return to_json(psi(a));
      else if constexpr (std::is_same_v<T, WedgeElem>) return to_json(psi_wedge(a));
      else return to_json(psi_H(a));
    });
  }
  if (op == "integral-log") {
    return on_ring(x, op, [](const auto& a) -> json {
      using T = std::decay_t<decltype(a)>;
      if constexpr (std::is_same_v<T, LambdaElem>) return to_json(integral_log(a));
      else if constexpr (std::is_same_v<T, WedgeElem>) return to_json(integral_log_wedge(a));
      else return to_json(integral_log_H(a));
    });
  }
  if (op == "invert") {
    return on_ring(x, op, [](const auto& a) -> json {
      using T = std::decay_t<decltype(a)>;
      if constexpr (std::is_same_v<T, LambdaElem>) return to_json(a.inverse());
      else if constexpr (std::is_same_v<T, WedgeElem>) return to_json(invert_unit(a));
      else return to_json(invert_unit_H(a));
    });
  }
  if (op == "exp-l" || op == "log-1p" || op == "l-minus-psi" || op == "decompose") {
    if (const auto* a = std::get_if<LambdaElem>(&x)) {
      if (op == "exp-l") return to_json(exp_l(*a));
      if (op == "log-1p") return to_json(log_1p_l(*a));
      if (op == "l-minus-psi") return to_json(l_minus_psi(*a));
      return to_json(decompose_lambda_unit(*a));
    }
    const WedgeElem& a = as<WedgeElem>(x, op);
    if (op == "exp-l") return to_json(exp_l_wedge(a));
    if (op == "log-1p") return to_json(log_1p_wedge(a));
    if (op == "l-minus-psi") return to_json(l_minus_psi_wedge(a));
    return to_json(decompose_wedge_unit(a, mode));
  }
  if (op == "integral-exp") return to_json(integral_exp(as<LambdaElem>(x, op)));
  if (op == "xi-split") return to_json(xi_split(as<WedgeElem>(x, op), mode));
  if (op == "one-minus-psi-solve") return to_json(one_minus_psi_solve(as<WedgeElem>(x, op)));
  if (op == "ker-L") return {{"member", ker_L_membership(as<WedgeElem>(x, op))}};
  if (op == "coker") {
    if (const auto* a = std::get_if<GroupRingElem>(&x)) return to_json(coker_class_H(*a));
    return to_json(coker_L_class(as<WedgeElem>(x, op)));
  }
  if (op == "augmentation") return to_json(augmentation(as<GroupRingElem>(x, op)));
  if (op == "mod-g2") return to_json(mod_g2(as<GroupRingElem>(x, op)));
  if (op == "lemma4") return {{"holds", lemma4_congruence_check(as<GroupRingElem>(x, op))}};
  if (op == "exp-h0") {
    const GroupRingElem& a = as<GroupRingElem>(x, op);
    if (opt.h0.empty()) bad("exp-h0 needs --h0");
    return to_json(exp_h0(element_from_key(a.group(), opt.h0), a));
  }
  bad("unknown operation '" + op + "'");
}

int exit_code_for(ErrorCode code) {
  return is_precision_error(code) ? 3 : 2;
}

}  // namespace iwalog::io
