#include "iwalog/integral_log.hpp"

#include <algorithm>
#include <string>

namespace iwalog {

namespace {

void require_xi2(const WedgeElem& x) {
  for (const auto& [k, c] : x.nonzero_coeffs())
    if (k < 2 || k % x.l() == 0)
      throw Error(ErrorCode::DomainViolation, "x must be supported on k >= 2 prime to l (index " + std::to_string(k) + ")");
}

}  // namespace

LambdaElem to_lambda(const WedgeElem& a) {
  const int m = a.window();
  if (m < 0) throw Error(ErrorCode::WindowExhausted, "no nonnegative coefficient is known");
  LambdaElem r(a.l(), a.prec(), m);
  for (int k = 0; k <= m; ++k) r.set_coeff(k, a.coeff(k));
  return r;
}

namespace {

// e = T^n * zeta * a * q with a in 1 + T Lambda and q = exp(l w0) in 1 + l Lambda_^.
struct Normalized {
  int n;
  PadicInt zeta;
  LambdaElem a;
  WedgeElem w0;
};

Normalized normalize(const WedgeElem& e, int guard) {
  if (!e.is_unit()) throw Error(ErrorCode::NotAUnit, "element of Lambda_^ is divisible by l");
  const std::int64_t l = e.l();
  const int shift = *e.residue_valuation();
  WedgeElem f = e.shifted(-shift);
  const int m = f.window();
  if (m < 1) throw Error(ErrorCode::WindowExhausted, "unit has no known T^1 coefficient after normalization");
  const int p = e.prec() + guard;
  f = f.lifted(p);
  const PadicInt zeta = teichmueller(f.coeff_padic(0));
  f = f.scaled(zeta.inverse());
  LambdaElem a = LambdaElem::one(l, p, m);
  for (int k = 1; k <= m; ++k) a.set_coeff(k, f.coeff(k));
  const WedgeElem q = f * WedgeElem::from_lambda(a.inverse());
  WedgeElem w0 = log_1p_wedge(q - WedgeElem::one(l, p, q.hi())).divide_by_l_power(1);
  return {shift, zeta, std::move(a), std::move(w0)};
}

}  // namespace

WedgeElem integral_log_wedge(const WedgeElem& e) {
  // L(T^n zeta a exp(l w0)) = n L(T) + L(a) + (l - psi) w0. Expanding
  // e^l / psi(e) directly is the same value, but the unknown tail of e^l meets
  // the deep principal part of psi(e)^-1 there and the window collapses.
  const Normalized f = normalize(e, 0);
  const std::int64_t l = e.l();
  const int p = e.prec() - 1;
  WedgeElem r = WedgeElem::from_lambda(integral_log(f.a)) + l_minus_psi_wedge(f.w0);
  if (f.n != 0) r = r + log_T(l, p, r.hi()).scaled(PadicInt(l, p, f.n));
  require_window(r, "integral logarithm");
  return r;
}

WedgeElem integral_log_wedge_direct(const WedgeElem& e) {
  if (!e.is_unit()) throw Error(ErrorCode::NotAUnit, "integral logarithm needs a unit of Lambda_^");
  const WedgeElem q = e.pow(static_cast<std::uint64_t>(e.l())) * invert_unit(psi_wedge(e));
  const WedgeElem x = q - WedgeElem::one(e.l(), e.prec(), q.hi());
  const auto ul = static_cast<std::uint64_t>(e.l());
  for (int k = x.lo(); k <= x.hi(); ++k)
    if (x.coeff_prec(k) >= 1 && x.coeff(k) % ul != 0)
      throw Error(ErrorCode::FrobeniusCongruenceViolated, "e^l / psi(e) is not 1 mod l");
  WedgeElem r = log_1p_wedge(x).divide_by_l_power(1);
  require_window(r, "integral logarithm");
  return r;
}

WedgeUnitFactors decompose_wedge_unit(const WedgeElem& e, TailMode mode) {
  if (!e.is_unit()) throw Error(ErrorCode::NotAUnit, "decomposition needs a unit of Lambda_^");
  const std::int64_t l = e.l();
  const int n = e.prec();
  const int guard = detail::floor_log(std::max(e.shifted(-*e.residue_valuation()).window(), 1), l);
  const Normalized f = normalize(e, guard);
  const LambdaElem& a = f.a;
  const int p = a.prec();
  const int m = a.trunc();

  // a = (1+T)^a1 u with u in 1 + T^2 Lambda, and L(u) = x + (l - psi) t.
  const PadicInt a1 = a.coeff_padic(1);
  const LambdaElem u = a * one_plus_T_pow_integer(-a1.centered(), l, p, m);
  const XiSplit split = xi_split(WedgeElem::from_lambda(integral_log(u)), mode);
  const WedgeElem& t = split.preimage;

  // exp(l t) = (1+T)^(l t_1) E((l - psi) t) moves l t_1 into the exponent.
  // Only t_1 mod l^(zp-1) enters, so z is as precise as t_1 allows plus one.
  const int zp = std::min(p, t.coeff_prec(1) + 1);
  const std::uint64_t lt1 = (t.coeff(1) % detail::checked_pow(l, zp - 1)) * static_cast<std::uint64_t>(l);
  const PadicInt z = a1.with_prec(zp) - PadicInt::from_residue(l, zp, lt1);
  const WedgeElem w = (f.w0 + t).with_prec(n - 1);
  return {f.n, f.zeta.with_prec(n), z, split.xi_part, w};
}

WedgeElem recompose_wedge_unit(const WedgeUnitFactors& f) {
  const std::int64_t l = f.zeta.l();
  require_xi2(f.x);
  const int m = std::min(f.x.window(), f.w.window());
  if (m < 1) throw Error(ErrorCode::WindowExhausted, "factors have no common window");
  const int n = std::min({f.zeta.prec(), f.z.prec() - detail::floor_log(m, l),
                          f.x.prec() - integral_exp_loss(l, m), f.w.prec() + 1});
  if (n < 1) throw Error(ErrorCode::PrecisionLoss, "factors do not determine the unit to any digit").with_achievable(0);
  const LambdaElem ex = integral_exp(to_lambda(f.x.with_hi(m))).with_prec(n);
  const LambdaElem pz = one_plus_T_pow_lift(f.z, m).with_prec(n);
  const WedgeElem lam = WedgeElem::from_lambda(ex * pz).scaled(f.zeta.with_prec(n));
  return (lam * exp_l_wedge(f.w.lifted(n))).shifted(f.n);
}

bool ker_L_membership(const WedgeElem& e) {
  const WedgeUnitFactors f = decompose_wedge_unit(e);
  const int p = e.prec() - 1;
  const WedgeElem zero_x = WedgeElem::zero(e.l(), f.x.prec(), f.x.hi());
  const WedgeElem zero_w = WedgeElem::zero(e.l(), f.w.prec(), f.w.hi());
  return f.n == 0 && f.x.congruent(zero_x, p, f.x.window()) && f.w.congruent(zero_w, p, f.w.window());
}

CokerClass coker_L_class(const WedgeElem& v) {
  const std::int64_t l = v.l();
  const int n = v.prec();
  const WedgeElem xi = xi_split(v).xi_part;
  if (v.window() < 1) throw Error(ErrorCode::WindowExhausted, "the T^1 coefficient is not known");
  const PadicInt c1 = xi.coeff_padic(1);
  // xi(L(T)) = sum_{i<l} (-1)^i/i T^-i mod l, so its T^-1 coefficient is a unit.
  const WedgeElem xl = xi_split(log_T(l, n, v.hi())).xi_part;
  const WedgeElem neg = xi.negative_part();
  const PadicInt b = neg.coeff_padic(-1) * xl.coeff_padic(-1).inverse();
  const WedgeElem residual = neg - xl.negative_part().scaled(b);
  return {c1, b, residual.filtered([](int k) { return k < 0; })};
}

}  // namespace iwalog
