#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "iwalog/zl.hpp"

namespace iwalog {

// Element of Z_l[[T]] modulo (l^N, T^(M+1)).
class LambdaElem {
 public:
  LambdaElem(std::int64_t l, int prec, int trunc);
  LambdaElem(std::int64_t l, int prec, int trunc, const std::vector<std::int64_t>& coeffs);

  static LambdaElem zero(std::int64_t l, int prec, int trunc) { return {l, prec, trunc}; }
  static LambdaElem one(std::int64_t l, int prec, int trunc);
  static LambdaElem constant(const PadicInt& c, int trunc);
  static LambdaElem monomial(std::int64_t l, int prec, int trunc, int degree, std::int64_t c);

  std::int64_t l() const noexcept { return l_; }
  int prec() const noexcept { return prec_; }
  int trunc() const noexcept { return trunc_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return coeffs_; }

  std::uint64_t coeff(int k) const { return k >= 0 && k <= trunc_ ? coeffs_[k] : 0; }
  PadicInt coeff_padic(int k) const { return PadicInt::from_residue(l_, prec_, coeff(k)); }
  void set_coeff(int k, std::uint64_t residue);

  bool is_zero() const;
  bool is_unit() const { return coeffs_[0] % static_cast<std::uint64_t>(l_) != 0; }
  // Valuation of the lowest coefficient in T; nullopt for zero.
  std::optional<int> t_order() const;
  // All coefficients divisible by l^v.
  bool divisible_by_l_power(int v) const;

  LambdaElem operator+(const LambdaElem& o) const;
  LambdaElem operator-(const LambdaElem& o) const;
  LambdaElem operator*(const LambdaElem& o) const;
  LambdaElem operator-() const;
  LambdaElem scaled(const PadicInt& c) const;
  LambdaElem pow(std::uint64_t e) const;
  LambdaElem inverse() const;  // NotAUnit unless the constant term is a unit

  // Same residues read at a larger l-adic cap (the integer lift).
  LambdaElem lifted(int prec) const;
  LambdaElem with_prec(int prec) const;
  LambdaElem with_trunc(int trunc) const;
  LambdaElem divide_by_l_power(int v) const;

  // Agreement modulo (l^n, T^(m+1)), also clipped to both operands.
  bool congruent(const LambdaElem& o, int n, int m) const;
  bool operator==(const LambdaElem& o) const {
    return l_ == o.l_ && prec_ == o.prec_ && trunc_ == o.trunc_ && coeffs_ == o.coeffs_;
  }

 private:
  void check_compatible(const LambdaElem& o) const;

  std::int64_t l_;
  int prec_;
  int trunc_;
  std::uint64_t modulus_;
  std::vector<std::uint64_t> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const LambdaElem& a);

// (c, z, y) with unit = c * (1+T)^z * E(y), y in T^2 Lambda. The exponent z
// is used through its canonical integer lift.
struct LambdaUnitFactors {
  PadicInt c;
  PadicInt z;
  LambdaElem y;
};

// The Z_l-algebra map T -> (1+T)^l - 1.
LambdaElem psi(const LambdaElem& a);
// ((1+T)^l - 1)^j for j = 0..trunc, each truncated at trunc.
std::vector<LambdaElem> psi_t_powers(std::int64_t l, int prec, int trunc);

// exp(l*y) for y in Lambda.
LambdaElem exp_l(const LambdaElem& y);
// log(1+x) for x in l*Lambda; LogOutsideDomain otherwise.
LambdaElem log_1p_l(const LambdaElem& x);

// l^j / j! modulo l^prec.
PadicInt exp_series_coefficient(std::int64_t l, int j, int prec);
// Smallest j0 with j - v_l(j!) >= n for every j >= j0.
int exp_series_terms(std::int64_t l, int n);
// Smallest j0 with j - v_l(j) >= n for every j >= j0.
int log_series_terms(std::int64_t l, int n);

// (1+T)^z for z in Z_l; precision prec(z) - floor(log_l trunc).
LambdaElem one_plus_T_pow(const PadicInt& z, int trunc);
// (1+T)^r for the integer r, exact modulo l^prec.
LambdaElem one_plus_T_pow_integer(std::int64_t r, std::int64_t l, int prec, int trunc);
// (1+T)^lift(z) where lift(z) is the canonical centered representative.
LambdaElem one_plus_T_pow_lift(const PadicInt& z, int trunc);

// The integral exponential on T^2 Lambda, applied to the canonical integer
// lift of y; exact modulo l^N for that lift.
LambdaElem integral_exp(const LambdaElem& y);
// Digits of E(y) mod (l^N, T^(M+1)) that are not determined by y mod l^N:
// E(l^N d) = E(d)^(l^N) is only 1 mod l^(N - floor(log_l(M/2))).
int integral_exp_loss(std::int64_t l, int trunc);
// The integral logarithm (1/l) log(e^l / psi(e)); output precision N-1.
LambdaElem integral_log(const LambdaElem& e);
// l*y - psi(y).
LambdaElem l_minus_psi(const LambdaElem& y);

// Reads e as its canonical lift and carries integral_exp_loss extra digits in
// y, so that recomposition reproduces e at precision N-1.
LambdaUnitFactors decompose_lambda_unit(const LambdaElem& e);
// c * (1+T)^lift(z) * E(y) at precision prec(y) - integral_exp_loss.
LambdaElem recompose_lambda_unit(const LambdaUnitFactors& f);

}  // namespace iwalog
