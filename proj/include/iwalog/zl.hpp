#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "iwalog/errors.hpp"

namespace iwalog {

namespace detail {

// Moduli are kept below 2^62 so that sums of two residues fit and products
// fit in unsigned __int128.
constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 62;

bool is_prime(std::int64_t n);
// Throws InvalidPrime unless l is an odd prime.
void require_odd_prime(std::int64_t l);

// l^e; throws PrecisionLoss if it does not fit under kModulusLimit.
std::uint64_t checked_pow(std::int64_t l, int e);

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}
// acc += a*b, folding acc modulo m before it can overflow (a, b < 2^62).
inline void mul_acc(unsigned __int128& acc, std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  acc += static_cast<unsigned __int128>(a) * b;
  if (acc >> 126) acc %= m;
}
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Reduces a signed integer into [0, m).
std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m);
std::uint64_t reduce_signed(__int128 v, std::uint64_t m);

// Inverse of a unit modulo m; throws NotAUnit otherwise.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// Largest v <= cap with l^v | x (x == 0 gives cap).
int valuation(std::uint64_t x, std::int64_t l, int cap);

// l-adic valuation of n! (Legendre).
int factorial_valuation(std::int64_t n, std::int64_t l);
// Largest t with l^t <= n (n >= 1).
int floor_log(std::int64_t n, std::int64_t l);

}  // namespace detail

// An element of Z_l known modulo l^prec.
class PadicInt {
 public:
  PadicInt(std::int64_t l, int prec, std::int64_t value);
  // num/den with den prime to l.
  static PadicInt from_rational(std::int64_t l, int prec, std::int64_t num, std::int64_t den);
  static PadicInt from_residue(std::int64_t l, int prec, std::uint64_t residue);

  std::int64_t l() const noexcept { return l_; }
  int prec() const noexcept { return prec_; }
  std::uint64_t residue() const noexcept { return residue_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  bool is_unit() const noexcept { return residue_ % static_cast<std::uint64_t>(l_) != 0; }
  bool is_zero() const noexcept { return residue_ == 0; }

  // Canonical representative in (-l^prec/2, l^prec/2].
  std::int64_t centered() const noexcept;

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  PadicInt pow(std::uint64_t e) const;
  PadicInt inverse() const;  // NotAUnit for non-units

  // Exact division by l^v; precision drops by v.
  PadicInt divide_by_l_power(int v) const;
  PadicInt with_prec(int prec) const;  // prec <= this->prec()
  PadicInt lifted(int prec) const;     // same residue, larger cap

  bool operator==(const PadicInt& o) const noexcept {
    return l_ == o.l_ && prec_ == o.prec_ && residue_ == o.residue_;
  }
  // Agreement modulo l^min(prec, n).
  bool congruent(const PadicInt& o, int n) const;

  std::string to_string() const { return std::to_string(residue_); }

 private:
  PadicInt(std::int64_t l, int prec, std::uint64_t residue, bool);
  void check_same_prime(const PadicInt& o) const;

  std::int64_t l_;
  int prec_;
  std::uint64_t modulus_;
  std::uint64_t residue_;
};

// The Teichmueller representative: zeta^(l-1) = 1 and zeta = a mod l.
PadicInt teichmueller(const PadicInt& a);

// C(z, k) modulo l^(prec(z) - floor(log_l k)): the binomial coefficient
// depends on z only modulo l^(n + floor(log_l k)) when asked modulo l^n.
PadicInt binomial(const PadicInt& z, std::int64_t k);
// Same, but at an explicit target precision; PrecisionLoss carries the
// precision that z supports.
PadicInt binomial(const PadicInt& z, std::int64_t k, int target_prec);

// C(z, k) for an ordinary integer z (any sign), modulo l^prec.
std::uint64_t integer_binomial_mod(std::int64_t z, std::int64_t k, std::int64_t l, int prec);

// nullopt means the residue is zero: valuation >= prec, unknown exactly.
std::optional<int> val_l(const PadicInt& a);

}  // namespace iwalog
