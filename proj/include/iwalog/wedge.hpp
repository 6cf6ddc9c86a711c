#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "iwalog/lambda.hpp"

namespace iwalog {

// Element of the completed localization Z_l[[T]]_^, i.e. sum_k x_k T^k with
// x_k -> 0 as k -> -inf, modulo l^N.
//
// Coefficients live on [lo, hi]. Below lo they are exactly zero; above hi they
// are unknown. Every stored coefficient has its own precision p_k <= N, so a
// deep principal part with large valuations only disturbs the top of the
// window by as much as it really does. window() is the largest K such that
// every coefficient up to K is known modulo l^N.
class WedgeElem {
 public:
  WedgeElem(std::int64_t l, int prec, int hi);

  static WedgeElem zero(std::int64_t l, int prec, int hi) { return {l, prec, hi}; }
  static WedgeElem one(std::int64_t l, int prec, int hi);
  static WedgeElem monomial(std::int64_t l, int prec, int hi, int k, std::int64_t c);
  static WedgeElem constant(const PadicInt& c, int hi);
  static WedgeElem from_map(std::int64_t l, int prec, int hi, const std::map<int, std::int64_t>& coeffs);
  static WedgeElem from_lambda(const LambdaElem& a);
  // Raw storage: residues and precisions for the indices lo..hi.
  static WedgeElem from_parts(std::int64_t l, int prec, int lo, int hi, std::vector<std::uint64_t> residues,
                              std::vector<int> precs);

  std::int64_t l() const noexcept { return l_; }
  int prec() const noexcept { return prec_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  int window() const;
  // Depth of the principal part: max(0, -lo).
  int depth() const noexcept { return lo_ < 0 ? -lo_ : 0; }

  std::uint64_t coeff(int k) const;
  int coeff_prec(int k) const;
  PadicInt coeff_padic(int k) const;  // at the full precision N; requires coeff_prec(k) == N
  void set_coeff(int k, std::uint64_t residue) { set_coeff(k, residue, prec_); }
  void set_coeff(int k, std::uint64_t residue, int prec);

  // Nonzero coefficients at indices up to the window.
  std::map<int, std::uint64_t> nonzero_coeffs() const;
  bool is_zero() const;
  // Lowest index whose coefficient is a unit (the T-bar valuation of e mod l).
  std::optional<int> residue_valuation() const;
  bool is_unit() const;

  WedgeElem operator+(const WedgeElem& o) const;
  WedgeElem operator-(const WedgeElem& o) const;
  WedgeElem operator*(const WedgeElem& o) const;
  WedgeElem operator-() const;
  WedgeElem scaled(const PadicInt& c) const;
  WedgeElem shifted(int n) const;  // T^n * this
  WedgeElem pow(std::uint64_t e) const;

  // Coefficients whose index satisfies keep; the others become exact zeros
  // (unknown ones above hi stay unknown).
  WedgeElem filtered(const std::function<bool(int)>& keep) const;
  WedgeElem positive_part() const;
  WedgeElem negative_part() const;

  WedgeElem lifted(int prec) const;
  WedgeElem with_prec(int prec) const;
  WedgeElem with_hi(int hi) const;
  // Drops everything above the window, so all remaining coefficients are exact.
  WedgeElem settled() const { return with_hi(window()); }
  WedgeElem divide_by_l_power(int v) const;

  // Agreement modulo l^n at every index <= m; false when either side does
  // not know some coefficient to n digits.
  bool congruent(const WedgeElem& o, int n, int m) const;
  // Same l, N and window, equal coefficients up to the window.
  bool operator==(const WedgeElem& o) const;

 private:
  std::size_t idx(int k) const { return static_cast<std::size_t>(k - lo_); }
  void extend_to(int k);
  void trim();
  int val_at(int k) const;  // min(v_l(x_k), p_k)
  void check_compatible(const WedgeElem& o) const;

  std::int64_t l_;
  int prec_;
  int lo_;
  int hi_;
  std::vector<std::uint64_t> c_;
  std::vector<int> p_;
};

std::ostream& operator<<(std::ostream& os, const WedgeElem& a);

// The projection onto Xi (support prime to l) along (l - psi), with preimage.
struct XiSplit {
  WedgeElem xi_part;
  WedgeElem preimage;
};

// input = (1 - psi)(solution) + obstruction; obstruction lives on {0} and on
// the negative indices prime to l.
struct OneMinusPsiSolution {
  WedgeElem solution;
  WedgeElem obstruction;
};

WedgeElem psi_wedge(const WedgeElem& a);
WedgeElem l_minus_psi_wedge(const WedgeElem& a);
WedgeElem one_minus_psi(const WedgeElem& a);
WedgeElem invert_unit(const WedgeElem& e);
// exp(l*y) and log(1+x) for x in l*Lambda_^.
WedgeElem exp_l_wedge(const WedgeElem& y);
WedgeElem log_1p_wedge(const WedgeElem& x);

// x mod T^(M+1) does not determine xi(x): the digit of x at l^j * m reaches
// xi at index about m with valuation j. Canonical takes every preimage digit
// whose image lies above the window to be zero, which gives an exact split of
// a lift of x. Determined marks those digits unknown and reports only what x
// really fixes.
enum class TailMode { Canonical, Determined };

XiSplit xi_split(const WedgeElem& x, TailMode mode = TailMode::Canonical);
// L(T) from its series in v = -(1/l) sum_{i<l} C(l,i) T^(-i).
WedgeElem log_T(std::int64_t l, int prec, int hi);
OneMinusPsiSolution one_minus_psi_solve(const WedgeElem& y);
// (1 - psi) applied to the constant c, which is always zero.
WedgeElem kernel_one_minus_psi_check(const PadicInt& c, int hi);

// Throws WindowExhausted when nothing of the positive window survived.
void require_window(const WedgeElem& a, const char* what);

}  // namespace iwalog
