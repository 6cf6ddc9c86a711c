#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "iwalog/integral_log.hpp"

namespace iwalog {

// Finite abelian l-group Z/l^(a_1) x ... x Z/l^(a_r) with fixed generators.
// Elements are numbered 0..order-1 in mixed radix, the first generator
// varying fastest; 0 is the identity.
class AbelianLGroup {
 public:
  AbelianLGroup(std::int64_t l, std::vector<int> exponents);
  // From factor orders such as {9, 3}; each must be a power of l.
  static AbelianLGroup from_orders(std::int64_t l, const std::vector<std::int64_t>& orders);

  std::int64_t l() const noexcept { return l_; }
  int rank() const noexcept { return static_cast<int>(a_.size()); }
  const std::vector<int>& exponents() const noexcept { return a_; }
  std::vector<std::int64_t> orders() const;
  int order() const noexcept { return order_; }

  std::vector<std::int64_t> coordinates(int h) const;
  int element(const std::vector<std::int64_t>& coords) const;  // reduces each coordinate
  int generator(int i) const;
  int mul(int g, int h) const;
  int inverse(int h) const;
  int pow(int h, std::int64_t k) const;
  std::int64_t element_order(int h) const;
  // Nilpotency index of the augmentation ideal of F_l[H].
  int radical_nilpotency() const;

  bool operator==(const AbelianLGroup& o) const { return l_ == o.l_ && a_ == o.a_; }

 private:
  std::int64_t l_;
  std::vector<int> a_;
  std::vector<std::int64_t> moduli_;
  int order_;
};

// Element of Lambda_^[H]: one WedgeElem per group element.
class GroupRingElem {
 public:
  GroupRingElem(AbelianLGroup group, int prec, int hi);

  static GroupRingElem embed(const AbelianLGroup& group, const WedgeElem& a);
  static GroupRingElem monomial(const AbelianLGroup& group, int h, const WedgeElem& a);
  static GroupRingElem one(const AbelianLGroup& group, int prec, int hi);

  const AbelianLGroup& group() const noexcept { return group_; }
  std::int64_t l() const noexcept { return group_.l(); }
  int prec() const noexcept { return prec_; }
  int hi() const;
  int window() const;
  const WedgeElem& coeff(int h) const { return c_[static_cast<std::size_t>(h)]; }
  void set_coeff(int h, const WedgeElem& a);

  GroupRingElem operator+(const GroupRingElem& o) const;
  GroupRingElem operator-(const GroupRingElem& o) const;
  GroupRingElem operator*(const GroupRingElem& o) const;
  GroupRingElem operator-() const;
  GroupRingElem times(const WedgeElem& a) const;
  GroupRingElem scaled(const PadicInt& c) const;
  GroupRingElem pow(std::uint64_t e) const;
  GroupRingElem lifted(int prec) const;
  GroupRingElem with_prec(int prec) const;
  GroupRingElem with_hi(int hi) const;
  GroupRingElem divide_by_l_power(int v) const;

  bool is_zero() const;
  // Every coefficient agrees mod l^n up to index m.
  bool congruent(const GroupRingElem& o, int n, int m) const;

 private:
  AbelianLGroup group_;
  int prec_;
  std::vector<WedgeElem> c_;
};

std::ostream& operator<<(std::ostream& os, const GroupRingElem& x);

// x mod g^2 as eps + sum_i grad_i (g_i - 1), grad_i taken mod l^(a_i).
struct G2NormalForm {
  WedgeElem eps;
  std::vector<WedgeElem> grad;
};

struct GroupCokerClass {
  CokerClass base;
  std::vector<OneMinusPsiSolution> tensor;

  bool is_zero() const;
};

WedgeElem augmentation(const GroupRingElem& x);
GroupRingElem psi_H(const GroupRingElem& x);
GroupRingElem invert_unit_H(const GroupRingElem& e);
// log(1+x) for x in l Lambda_^[H].
GroupRingElem log_1p_H(const GroupRingElem& x);
// (1/l) log(e^l / psi(e)); precision N-1.
GroupRingElem integral_log_H(const GroupRingElem& e);
G2NormalForm mod_g2(const GroupRingElem& x);
// Agreement of two normal forms mod l^min(n, a_i) up to index m.
bool g2_congruent(const G2NormalForm& a, const G2NormalForm& b, int n, int m);
// L(e) = sum_h (e_h - psi(e_h))(h - 1) mod g^2 for e in 1 + g.
bool lemma4_congruence_check(const GroupRingElem& e);
GroupCokerClass coker_class_H(const GroupRingElem& v);
// exp((h0 - 1) x) for h0 of order l and x in rad = g + l Lambda_^[H].
GroupRingElem exp_h0(int h0, const GroupRingElem& x);

}  // namespace iwalog
