#include "iwalog/zl.hpp"

#include <string>

namespace iwalog {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::MismatchedPrime: return "MismatchedPrime";
    case ErrorCode::TeichmullerOfNonUnit: return "TeichmullerOfNonUnit";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::LogOutsideDomain: return "LogOutsideDomain";
    case ErrorCode::ExpOutsideDomain: return "ExpOutsideDomain";
    case ErrorCode::FrobeniusCongruenceViolated: return "FrobeniusCongruenceViolated";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace detail {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(std::int64_t l) {
  if (l == 2) throw Error(ErrorCode::InvalidPrime, "l = 2 is not supported");
  if (!is_prime(l)) throw Error(ErrorCode::InvalidPrime, std::to_string(l) + " is not prime");
}

std::uint64_t checked_pow(std::int64_t l, int e) {
  if (e < 0) throw Error(ErrorCode::PrecisionLoss, "negative exponent");
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > kModulusLimit / static_cast<std::uint64_t>(l))
      throw Error(ErrorCode::PrecisionLoss,
                  std::to_string(l) + "^" + std::to_string(e) + " exceeds the 62-bit modulus limit");
    r *= static_cast<std::uint64_t>(l);
  }
  return r;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  return reduce_signed(static_cast<__int128>(v), m);
}

std::uint64_t reduce_signed(__int128 v, std::uint64_t m) {
  __int128 r = v % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error(ErrorCode::NotAUnit, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return reduce_signed(t, m);
}

int valuation(std::uint64_t x, std::int64_t l, int cap) {
  if (x == 0) return cap;
  int v = 0;
  const auto ul = static_cast<std::uint64_t>(l);
  while (v < cap && x % ul == 0) {
    x /= ul;
    ++v;
  }
  return v;
}

int factorial_valuation(std::int64_t n, std::int64_t l) {
  int v = 0;
  for (std::int64_t p = l; p <= n; p *= l) {
    v += static_cast<int>(n / p);
    if (p > n / l) break;
  }
  return v;
}

int floor_log(std::int64_t n, std::int64_t l) {
  int t = 0;
  std::int64_t p = l;
  while (p <= n) {
    ++t;
    if (p > n / l) break;
    p *= l;
  }
  return t;
}

}  // namespace detail

using detail::add_mod;
using detail::mul_mod;
using detail::sub_mod;

PadicInt::PadicInt(std::int64_t l, int prec, std::uint64_t residue, bool)
    : l_(l), prec_(prec), modulus_(detail::checked_pow(l, prec)), residue_(residue % modulus_) {}

PadicInt::PadicInt(std::int64_t l, int prec, std::int64_t value) : l_(l), prec_(prec) {
  detail::require_odd_prime(l);
  if (prec < 0) throw Error(ErrorCode::PrecisionLoss, "negative precision");
  modulus_ = detail::checked_pow(l, prec);
  residue_ = detail::reduce_signed(value, modulus_);
}

PadicInt PadicInt::from_residue(std::int64_t l, int prec, std::uint64_t residue) {
  detail::require_odd_prime(l);
  return PadicInt(l, prec, residue, true);
}

PadicInt PadicInt::from_rational(std::int64_t l, int prec, std::int64_t num, std::int64_t den) {
  PadicInt n(l, prec, num);
  PadicInt d(l, prec, den);
  if (prec > 0 && !d.is_unit())
    throw Error(ErrorCode::NotAUnit, "denominator " + std::to_string(den) + " is divisible by l");
  return n * d.inverse();
}

std::int64_t PadicInt::centered() const noexcept {
  if (residue_ > modulus_ / 2) return -static_cast<std::int64_t>(modulus_ - residue_);
  return static_cast<std::int64_t>(residue_);
}

void PadicInt::check_same_prime(const PadicInt& o) const {
  if (l_ != o.l_)
    throw Error(ErrorCode::MismatchedPrime, std::to_string(l_) + " vs " + std::to_string(o.l_));
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
  check_same_prime(o);
  const int p = std::min(prec_, o.prec_);
  const std::uint64_t m = detail::checked_pow(l_, p);
  return PadicInt(l_, p, add_mod(residue_ % m, o.residue_ % m, m), true);
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
  check_same_prime(o);
  const int p = std::min(prec_, o.prec_);
  const std::uint64_t m = detail::checked_pow(l_, p);
  return PadicInt(l_, p, sub_mod(residue_ % m, o.residue_ % m, m), true);
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
  check_same_prime(o);
  const int p = std::min(prec_, o.prec_);
  const std::uint64_t m = detail::checked_pow(l_, p);
  return PadicInt(l_, p, mul_mod(residue_, o.residue_, m), true);
}

PadicInt PadicInt::operator-() const {
  return PadicInt(l_, prec_, residue_ == 0 ? 0 : modulus_ - residue_, true);
}

PadicInt PadicInt::pow(std::uint64_t e) const {
  return PadicInt(l_, prec_, detail::pow_mod(residue_, e, modulus_), true);
}

PadicInt PadicInt::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::NotAUnit, to_string() + " is divisible by " + std::to_string(l_));
  return PadicInt(l_, prec_, detail::inv_mod(residue_, modulus_), true);
}

PadicInt PadicInt::divide_by_l_power(int v) const {
  if (v > prec_) throw Error(ErrorCode::PrecisionLoss, "cannot divide by more digits than known");
  const std::uint64_t lv = detail::checked_pow(l_, v);
  if (residue_ % lv != 0)
    throw Error(ErrorCode::NotDivisible, to_string() + " is not divisible by l^" + std::to_string(v));
  return PadicInt(l_, prec_ - v, residue_ / lv, true);
}

PadicInt PadicInt::with_prec(int prec) const {
  if (prec > prec_)
    throw Error(ErrorCode::PrecisionLoss, "requested precision exceeds known digits")
        .with_achievable(prec_);
  return PadicInt(l_, prec, residue_, true);
}

PadicInt PadicInt::lifted(int prec) const { return PadicInt(l_, prec, residue_, true); }

bool PadicInt::congruent(const PadicInt& o, int n) const {
  if (l_ != o.l_) return false;
  const int p = std::min({n, prec_, o.prec_});
  const std::uint64_t m = detail::checked_pow(l_, p);
  return residue_ % m == o.residue_ % m;
}

PadicInt teichmueller(const PadicInt& a) {
  if (a.prec() > 0 && !a.is_unit())
    throw Error(ErrorCode::TeichmullerOfNonUnit, a.to_string() + " is not a unit");
  // Each l-th power gains one correct digit.
  PadicInt z = a;
  for (int i = 0; i < a.prec(); ++i) z = z.pow(static_cast<std::uint64_t>(a.l()));
  return z;
}

std::uint64_t integer_binomial_mod(std::int64_t z, std::int64_t k, std::int64_t l, int prec) {
  if (k < 0) return 0;
  const std::uint64_t m = detail::checked_pow(l, prec);
  if (k == 0) return 1 % m;
  // z(z-1)...(z-k+1) carries at least v_l(k!) factors of l; compute the
  // product modulo l^(prec + v_l(k!)) and divide.
  const int vk = detail::factorial_valuation(k, l);
  const std::uint64_t big = detail::checked_pow(l, prec + vk);
  const auto ul = static_cast<std::uint64_t>(l);
  std::uint64_t num = 1 % big;
  std::uint64_t den_unit = 1 % m;
  for (std::int64_t i = 0; i < k; ++i) {
    num = mul_mod(num, detail::reduce_signed(static_cast<__int128>(z) - i, big), big);
    std::uint64_t f = static_cast<std::uint64_t>(i + 1);
    while (f % ul == 0) f /= ul;
    den_unit = mul_mod(den_unit, f % m, m);
  }
  const std::uint64_t lv = detail::checked_pow(l, vk);
  // num is divisible by l^vk as an integer; the residue mod l^(prec+vk) is too.
  const std::uint64_t q = (num / lv) % m;
  return mul_mod(q, detail::inv_mod(den_unit, m), m);
}

PadicInt binomial(const PadicInt& z, std::int64_t k) {
  const int loss = k >= 1 ? detail::floor_log(k, z.l()) : 0;
  return binomial(z, k, std::max(0, z.prec() - loss));
}

PadicInt binomial(const PadicInt& z, std::int64_t k, int target_prec) {
  if (k < 0) throw Error(ErrorCode::DomainViolation, "negative k in binomial");
  const int loss = k >= 1 ? detail::floor_log(k, z.l()) : 0;
  const int achievable = z.prec() - loss;
  if (target_prec > achievable)
    throw Error(ErrorCode::PrecisionLoss,
                "C(z," + std::to_string(k) + ") mod l^" + std::to_string(target_prec) +
                    " needs z mod l^" + std::to_string(target_prec + loss))
        .with_achievable(achievable);
  // Any integer representative of z gives the same value mod l^target.
  const auto r = static_cast<std::int64_t>(z.residue());
  return PadicInt::from_residue(z.l(), target_prec, integer_binomial_mod(r, k, z.l(), target_prec));
}

std::optional<int> val_l(const PadicInt& a) {
  if (a.residue() == 0) return std::nullopt;
  return detail::valuation(a.residue(), a.l(), a.prec());
}

}  // namespace iwalog
