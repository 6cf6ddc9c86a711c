#include "iwalog/lambda.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace iwalog {

using detail::add_mod;
using detail::mul_mod;
using detail::sub_mod;

LambdaElem::LambdaElem(std::int64_t l, int prec, int trunc) : l_(l), prec_(prec), trunc_(trunc) {
  detail::require_odd_prime(l);
  if (prec < 0) throw Error(ErrorCode::PrecisionLoss, "negative l-adic precision");
  if (trunc < 0) throw Error(ErrorCode::WindowExhausted, "negative T-adic truncation");
  modulus_ = detail::checked_pow(l, prec);
  coeffs_.assign(static_cast<std::size_t>(trunc) + 1, 0);
}

LambdaElem::LambdaElem(std::int64_t l, int prec, int trunc, const std::vector<std::int64_t>& coeffs)
    : LambdaElem(l, prec, trunc) {
  for (std::size_t k = 0; k < coeffs.size() && k <= static_cast<std::size_t>(trunc); ++k)
    coeffs_[k] = detail::reduce_signed(coeffs[k], modulus_);
}

LambdaElem LambdaElem::one(std::int64_t l, int prec, int trunc) {
  LambdaElem r(l, prec, trunc);
  r.coeffs_[0] = 1 % r.modulus_;
  return r;
}

LambdaElem LambdaElem::constant(const PadicInt& c, int trunc) {
  LambdaElem r(c.l(), c.prec(), trunc);
  r.coeffs_[0] = c.residue();
  return r;
}

LambdaElem LambdaElem::monomial(std::int64_t l, int prec, int trunc, int degree, std::int64_t c) {
  LambdaElem r(l, prec, trunc);
  if (degree >= 0 && degree <= trunc) r.coeffs_[degree] = detail::reduce_signed(c, r.modulus_);
  return r;
}

void LambdaElem::set_coeff(int k, std::uint64_t residue) {
  if (k < 0 || k > trunc_) throw Error(ErrorCode::WindowExhausted, "coefficient index outside window");
  coeffs_[k] = residue % modulus_;
}

bool LambdaElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint64_t c) { return c == 0; });
}

std::optional<int> LambdaElem::t_order() const {
  for (int k = 0; k <= trunc_; ++k)
    if (coeffs_[k] != 0) return k;
  return std::nullopt;
}

bool LambdaElem::divisible_by_l_power(int v) const {
  const std::uint64_t lv = detail::checked_pow(l_, std::min(v, prec_));
  return std::all_of(coeffs_.begin(), coeffs_.end(), [lv](std::uint64_t c) { return c % lv == 0; });
}

void LambdaElem::check_compatible(const LambdaElem& o) const {
  if (l_ != o.l_)
    throw Error(ErrorCode::MismatchedPrime, std::to_string(l_) + " vs " + std::to_string(o.l_));
}

LambdaElem LambdaElem::operator+(const LambdaElem& o) const {
  check_compatible(o);
  LambdaElem r(l_, std::min(prec_, o.prec_), std::min(trunc_, o.trunc_));
  for (int k = 0; k <= r.trunc_; ++k)
    r.coeffs_[k] = add_mod(coeffs_[k] % r.modulus_, o.coeffs_[k] % r.modulus_, r.modulus_);
  return r;
}

LambdaElem LambdaElem::operator-(const LambdaElem& o) const {
  check_compatible(o);
  LambdaElem r(l_, std::min(prec_, o.prec_), std::min(trunc_, o.trunc_));
  for (int k = 0; k <= r.trunc_; ++k)
    r.coeffs_[k] = sub_mod(coeffs_[k] % r.modulus_, o.coeffs_[k] % r.modulus_, r.modulus_);
  return r;
}

LambdaElem LambdaElem::operator*(const LambdaElem& o) const {
  check_compatible(o);
  LambdaElem r(l_, std::min(prec_, o.prec_), std::min(trunc_, o.trunc_));
  const std::uint64_t m = r.modulus_;
  for (int k = 0; k <= r.trunc_; ++k) {
    unsigned __int128 acc = 0;
    for (int i = 0; i <= k; ++i) {
      if (coeffs_[i] == 0) continue;
      detail::mul_acc(acc, coeffs_[i], o.coeffs_[k - i], m);
    }
    r.coeffs_[k] = static_cast<std::uint64_t>(acc % m);
  }
  return r;
}

LambdaElem LambdaElem::operator-() const {
  LambdaElem r(*this);
  for (auto& c : r.coeffs_) c = c == 0 ? 0 : modulus_ - c;
  return r;
}

LambdaElem LambdaElem::scaled(const PadicInt& c) const {
  if (c.l() != l_) throw Error(ErrorCode::MismatchedPrime, "scalar from another prime");
  LambdaElem r(l_, std::min(prec_, c.prec()), trunc_);
  for (int k = 0; k <= trunc_; ++k) r.coeffs_[k] = mul_mod(coeffs_[k], c.residue(), r.modulus_);
  return r;
}

LambdaElem LambdaElem::pow(std::uint64_t e) const {
  LambdaElem result = one(l_, prec_, trunc_);
  LambdaElem base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

LambdaElem LambdaElem::inverse() const {
  if (prec_ > 0 && !is_unit()) throw Error(ErrorCode::NotAUnit, "constant term is divisible by l");
  LambdaElem r(l_, prec_, trunc_);
  const std::uint64_t m = modulus_;
  const std::uint64_t inv0 = detail::inv_mod(coeffs_[0], m);
  r.coeffs_[0] = inv0;
  for (int k = 1; k <= trunc_; ++k) {
    unsigned __int128 acc = 0;
    for (int i = 1; i <= k; ++i) detail::mul_acc(acc, coeffs_[i], r.coeffs_[k - i], modulus_);
    const auto s = static_cast<std::uint64_t>(acc % m);
    r.coeffs_[k] = mul_mod(s == 0 ? 0 : m - s, inv0, m);
  }
  return r;
}

LambdaElem LambdaElem::lifted(int prec) const {
  LambdaElem r(l_, prec, trunc_);
  for (int k = 0; k <= trunc_; ++k) r.coeffs_[k] = coeffs_[k] % r.modulus_;
  return r;
}

LambdaElem LambdaElem::with_prec(int prec) const {
  if (prec > prec_)
    throw Error(ErrorCode::PrecisionLoss, "requested precision exceeds known digits").with_achievable(prec_);
  return lifted(prec);
}

LambdaElem LambdaElem::with_trunc(int trunc) const {
  if (trunc > trunc_) throw Error(ErrorCode::WindowExhausted, "requested window exceeds known coefficients");
  LambdaElem r(l_, prec_, trunc);
  std::copy_n(coeffs_.begin(), trunc + 1, r.coeffs_.begin());
  return r;
}

LambdaElem LambdaElem::divide_by_l_power(int v) const {
  if (v > prec_) throw Error(ErrorCode::PrecisionLoss, "cannot divide by more digits than known");
  const std::uint64_t lv = detail::checked_pow(l_, v);
  LambdaElem r(l_, prec_ - v, trunc_);
  for (int k = 0; k <= trunc_; ++k) {
    if (coeffs_[k] % lv != 0)
      throw Error(ErrorCode::NotDivisible, "coefficient " + std::to_string(k) + " not divisible by l^" +
                                               std::to_string(v));
    r.coeffs_[k] = coeffs_[k] / lv;
  }
  return r;
}

bool LambdaElem::congruent(const LambdaElem& o, int n, int m) const {
  if (l_ != o.l_) return false;
  const int p = std::min({n, prec_, o.prec_});
  const int t = std::min({m, trunc_, o.trunc_});
  const std::uint64_t mod = detail::checked_pow(l_, p);
  for (int k = 0; k <= t; ++k)
    if (coeffs_[k] % mod != o.coeffs_[k] % mod) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const LambdaElem& a) {
  os << "[l=" << a.l() << " N=" << a.prec() << " M=" << a.trunc() << ":";
  for (int k = 0; k <= a.trunc(); ++k) os << ' ' << a.coeff(k);
  return os << ']';
}

// ---------------------------------------------------------------------------

std::vector<LambdaElem> psi_t_powers(std::int64_t l, int prec, int trunc) {
  LambdaElem psi_t = one_plus_T_pow_integer(l, l, prec, trunc) - LambdaElem::one(l, prec, trunc);
  std::vector<LambdaElem> powers;
  powers.reserve(static_cast<std::size_t>(trunc) + 1);
  powers.push_back(LambdaElem::one(l, prec, trunc));
  for (int j = 1; j <= trunc; ++j) powers.push_back(powers.back() * psi_t);
  return powers;
}

LambdaElem psi(const LambdaElem& a) {
  // Horner evaluation at psi(T), which has zero constant term.
  LambdaElem psi_t =
      one_plus_T_pow_integer(a.l(), a.l(), a.prec(), a.trunc()) - LambdaElem::one(a.l(), a.prec(), a.trunc());
  LambdaElem r = LambdaElem::zero(a.l(), a.prec(), a.trunc());
  for (int k = a.trunc(); k >= 0; --k) {
    r = r * psi_t;
    r.set_coeff(0, add_mod(r.coeff(0), a.coeff(k), a.modulus()));
  }
  return r;
}

int exp_series_terms(std::int64_t l, int n) {
  // j - v_l(j!) >= j(l-2)/(l-1) + 1/(l-1); scan until that bound clears n.
  int last_bad = 0;
  for (std::int64_t j = 1;; ++j) {
    if (j - detail::factorial_valuation(j, l) < n) last_bad = static_cast<int>(j);
    if ((j * (l - 2) + 1) >= static_cast<std::int64_t>(n) * (l - 1) && j > last_bad) break;
  }
  return last_bad + 1;
}

int log_series_terms(std::int64_t l, int n) {
  // j - v_l(j) >= j - floor(log_l j), and the latter never decreases.
  int last_bad = 0;
  for (std::int64_t j = 1;; ++j) {
    if (j - detail::valuation(static_cast<std::uint64_t>(j), l, 64) < n) last_bad = static_cast<int>(j);
    if (j - detail::floor_log(j, l) >= n && j > last_bad) break;
  }
  return last_bad + 1;
}

// l^j / j! as an element of Z_l at precision prec.
PadicInt exp_series_coefficient(std::int64_t l, int j, int prec) {
  const int v = j - detail::factorial_valuation(j, l);
  if (v >= prec) return PadicInt(l, prec, 0);
  std::uint64_t unit = 1;
  const std::uint64_t m = detail::checked_pow(l, prec);
  for (int i = 2; i <= j; ++i) {
    auto f = static_cast<std::uint64_t>(i);
    while (f % static_cast<std::uint64_t>(l) == 0) f /= static_cast<std::uint64_t>(l);
    unit = mul_mod(unit, f % m, m);
  }
  const std::uint64_t lv = detail::checked_pow(l, v);
  return PadicInt::from_residue(l, prec, mul_mod(lv % m, detail::inv_mod(unit, m), m));
}

LambdaElem exp_l(const LambdaElem& y) {
  const int n = y.prec();
  const int terms = exp_series_terms(y.l(), n);
  LambdaElem result = LambdaElem::one(y.l(), n, y.trunc());
  LambdaElem power = LambdaElem::one(y.l(), n, y.trunc());
  for (int j = 1; j < terms; ++j) {
    power = power * y;
    result = result + power.scaled(exp_series_coefficient(y.l(), j, n));
  }
  return result;
}

LambdaElem log_1p_l(const LambdaElem& x) {
  if (!x.divisible_by_l_power(1))
    throw Error(ErrorCode::LogOutsideDomain, "log(1+x) needs x divisible by l");
  const std::int64_t l = x.l();
  const int n = x.prec();
  const int terms = log_series_terms(l, n);
  int guard = 0;
  for (int j = 1; j < terms; ++j)
    guard = std::max(guard, detail::valuation(static_cast<std::uint64_t>(j), l, 64));
  // x^j is known modulo l^(n+j-1) from x modulo l^n, which covers v_l(j).
  const LambdaElem lifted = x.lifted(n + guard);
  LambdaElem result = LambdaElem::zero(l, n, x.trunc());
  LambdaElem power = lifted;
  for (int j = 1; j < terms; ++j) {
    if (j > 1) power = power * lifted;
    const int v = detail::valuation(static_cast<std::uint64_t>(j), l, 64);
    const auto unit = static_cast<std::int64_t>(j / static_cast<std::int64_t>(detail::checked_pow(l, v)));
    LambdaElem term =
        power.scaled(PadicInt(l, n + guard, unit).inverse()).divide_by_l_power(v).with_prec(n);
    result = (j % 2 == 1) ? result + term : result - term;
  }
  return result;
}

LambdaElem one_plus_T_pow_integer(std::int64_t r, std::int64_t l, int prec, int trunc) {
  LambdaElem base = LambdaElem::monomial(l, prec, trunc, 0, 1) + LambdaElem::monomial(l, prec, trunc, 1, 1);
  if (trunc == 0) base = LambdaElem::one(l, prec, trunc);
  const std::uint64_t e = r < 0 ? static_cast<std::uint64_t>(-(r + 1)) + 1 : static_cast<std::uint64_t>(r);
  LambdaElem p = base.pow(e);
  return r < 0 ? p.inverse() : p;
}

LambdaElem one_plus_T_pow_lift(const PadicInt& z, int trunc) {
  return one_plus_T_pow_integer(z.centered(), z.l(), z.prec(), trunc);
}

LambdaElem one_plus_T_pow(const PadicInt& z, int trunc) {
  const int loss = trunc >= 1 ? detail::floor_log(trunc, z.l()) : 0;
  const int out = z.prec() - loss;
  if (out <= 0 && z.prec() > 0)
    throw Error(ErrorCode::PrecisionLoss, "(1+T)^z up to T^" + std::to_string(trunc) +
                                              " needs more digits of z").with_achievable(out);
  LambdaElem r(z.l(), std::max(out, 0), trunc);
  for (int k = 0; k <= trunc; ++k) r.set_coeff(k, binomial(z, k, r.prec()).residue());
  return r;
}

LambdaElem l_minus_psi(const LambdaElem& y) {
  return y.scaled(PadicInt(y.l(), y.prec(), y.l())) - psi(y);
}

namespace {

void require_t2(const LambdaElem& y, ErrorCode code, const char* what) {
  if (y.coeff(0) != 0 || (y.trunc() >= 1 && y.coeff(1) != 0))
    throw Error(code, std::string(what) + " must lie in T^2 Lambda");
}

}  // namespace

LambdaElem integral_exp(const LambdaElem& y) {
  require_t2(y, ErrorCode::ExpOutsideDomain, "argument of E");
  const std::int64_t l = y.l();
  const int n = y.prec();
  const int trunc = y.trunc();
  // Each pivot division by l costs a digit, and an error in f_j feeds the
  // degrees >= l*j, so the loss compounds along chains 2, 2l, 2l^2, ...
  const int guard = 1 + (trunc >= 1 ? detail::floor_log(trunc, l) : 0);
  const int work = n + guard;
  const std::uint64_t m = detail::checked_pow(l, work);

  const LambdaElem target = exp_l(y.lifted(work));  // f^l / psi(f)
  const std::vector<LambdaElem> psi_pows = psi_t_powers(l, work, trunc);

  LambdaElem f = LambdaElem::one(l, work, trunc);
  LambdaElem psi_f = LambdaElem::one(l, work, trunc);
  for (int k = 2; k <= trunc; ++k) {
    const LambdaElem fk = f.with_trunc(k).pow(static_cast<std::uint64_t>(l));
    unsigned __int128 acc = 0;
    for (int i = 0; i <= k; ++i)
      detail::mul_acc(acc, psi_f.coeff(i), target.coeff(k - i), m);
    const std::uint64_t rhs = sub_mod(static_cast<std::uint64_t>(acc % m), fk.coeff(k), m);
    if (rhs % static_cast<std::uint64_t>(l) != 0)
      throw Error(ErrorCode::FrobeniusCongruenceViolated, "integral exponential pivot not divisible by l");
    const std::uint64_t m1 = m / static_cast<std::uint64_t>(l);
    const std::uint64_t lk = k - 1 < work - 1 ? detail::checked_pow(l, k - 1) : 0;
    const std::uint64_t pivot_unit = sub_mod(1, lk, m1);
    const std::uint64_t coeff = mul_mod(rhs / static_cast<std::uint64_t>(l), detail::inv_mod(pivot_unit, m1), m1);
    f.set_coeff(k, coeff);
    psi_f = psi_f + psi_pows[k].scaled(PadicInt::from_residue(l, work, coeff));
  }
  return f.with_prec(n);
}

int integral_exp_loss(std::int64_t l, int trunc) { return trunc >= 2 ? detail::floor_log(trunc / 2, l) : 0; }

LambdaElem integral_log(const LambdaElem& e) {
  if (!e.is_unit()) throw Error(ErrorCode::NotAUnit, "integral logarithm needs a unit of Lambda");
  const LambdaElem q = e.pow(static_cast<std::uint64_t>(e.l())) * psi(e).inverse();
  const LambdaElem x = q - LambdaElem::one(e.l(), e.prec(), e.trunc());
  if (!x.divisible_by_l_power(1))
    throw Error(ErrorCode::FrobeniusCongruenceViolated, "e^l / psi(e) is not 1 mod l");
  return log_1p_l(x).divide_by_l_power(1);
}

LambdaUnitFactors decompose_lambda_unit(const LambdaElem& e) {
  if (!e.is_unit()) throw Error(ErrorCode::NotAUnit, "decomposition needs a unit of Lambda");
  const int n = e.prec();
  const LambdaElem lifted = e.lifted(n + integral_exp_loss(e.l(), e.trunc()));
  const PadicInt c = e.coeff_padic(0);
  const LambdaElem normalized = lifted.scaled(lifted.coeff_padic(0).inverse());
  const PadicInt z = normalized.coeff_padic(1);
  const LambdaElem u = normalized * one_plus_T_pow_integer(-z.centered(), e.l(), lifted.prec(), e.trunc());
  return {c, z, integral_log(u)};
}

LambdaElem recompose_lambda_unit(const LambdaUnitFactors& f) {
  const int n = f.y.prec() - integral_exp_loss(f.y.l(), f.y.trunc());
  const LambdaElem ey = integral_exp(f.y).with_prec(n);
  const LambdaElem pw = one_plus_T_pow_lift(f.z, f.y.trunc()).with_prec(n);
  return ey.scaled(f.c.with_prec(n)) * pw;
}

}  // namespace iwalog
