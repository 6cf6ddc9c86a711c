#include "iwalog/group_ring.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>

namespace iwalog {

AbelianLGroup::AbelianLGroup(std::int64_t l, std::vector<int> exponents) : l_(l), a_(std::move(exponents)), order_(1) {
  detail::require_odd_prime(l);
  for (int a : a_) {
    if (a < 1) throw Error(ErrorCode::DomainViolation, "every invariant factor must have order at least l");
    moduli_.push_back(static_cast<std::int64_t>(detail::checked_pow(l, a)));
    if (static_cast<std::int64_t>(order_) * moduli_.back() > 1 << 16)
      throw Error(ErrorCode::DomainViolation, "group is too large");
    order_ *= static_cast<int>(moduli_.back());
  }
}

AbelianLGroup AbelianLGroup::from_orders(std::int64_t l, const std::vector<std::int64_t>& orders) {
  std::vector<int> a;
  for (std::int64_t o : orders) {
    int e = 0;
    std::int64_t x = o;
    while (x > 1 && x % l == 0) {
      x /= l;
      ++e;
    }
    if (x != 1 || e == 0) throw Error(ErrorCode::DomainViolation, std::to_string(o) + " is not a positive power of l");
    a.push_back(e);
  }
  return {l, std::move(a)};
}

std::vector<std::int64_t> AbelianLGroup::orders() const { return moduli_; }

std::vector<std::int64_t> AbelianLGroup::coordinates(int h) const {
  std::vector<std::int64_t> c(a_.size());
  std::int64_t rest = h;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    c[i] = rest % moduli_[i];
    rest /= moduli_[i];
  }
  return c;
}

int AbelianLGroup::element(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != a_.size()) throw Error(ErrorCode::DomainViolation, "exponent vector has the wrong length");
  std::int64_t h = 0;
  std::int64_t stride = 1;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const std::int64_t c = ((coords[i] % moduli_[i]) + moduli_[i]) % moduli_[i];
    h += c * stride;
    stride *= moduli_[i];
  }
  return static_cast<int>(h);
}

int AbelianLGroup::generator(int i) const {
  std::vector<std::int64_t> c(a_.size(), 0);
  c.at(static_cast<std::size_t>(i)) = 1;
  return element(c);
}

int AbelianLGroup::mul(int g, int h) const {
  auto a = coordinates(g);
  const auto b = coordinates(h);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return element(a);
}

int AbelianLGroup::inverse(int h) const {
  auto a = coordinates(h);
  for (auto& x : a) x = -x;
  return element(a);
}

int AbelianLGroup::pow(int h, std::int64_t k) const {
  auto a = coordinates(h);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] * (k % moduli_[i])) % moduli_[i];
  return element(a);
}

std::int64_t AbelianLGroup::element_order(int h) const {
  std::int64_t o = 1;
  while (pow(h, o) != 0) o *= l_;
  return o;
}

int AbelianLGroup::radical_nilpotency() const {
  int n = 1;
  for (std::int64_t m : moduli_) n += static_cast<int>(m - 1);
  return n;
}

// ---------------------------------------------------------------------------

GroupRingElem::GroupRingElem(AbelianLGroup group, int prec, int hi)
    : group_(std::move(group)), prec_(prec),
      c_(static_cast<std::size_t>(group_.order()), WedgeElem::zero(group_.l(), prec, hi)) {}

GroupRingElem GroupRingElem::embed(const AbelianLGroup& group, const WedgeElem& a) { return monomial(group, 0, a); }

GroupRingElem GroupRingElem::monomial(const AbelianLGroup& group, int h, const WedgeElem& a) {
  GroupRingElem r(group, a.prec(), a.hi());
  r.set_coeff(h, a);
  return r;
}

GroupRingElem GroupRingElem::one(const AbelianLGroup& group, int prec, int hi) {
  return embed(group, WedgeElem::one(group.l(), prec, hi));
}

int GroupRingElem::hi() const {
  int h = c_.front().hi();
  for (const auto& a : c_) h = std::min(h, a.hi());
  return h;
}

int GroupRingElem::window() const {
  int w = c_.front().window();
  for (const auto& a : c_) w = std::min(w, a.window());
  return w;
}

void GroupRingElem::set_coeff(int h, const WedgeElem& a) {
  if (a.l() != l()) throw Error(ErrorCode::MismatchedPrime, "coefficient from another prime");
  if (a.prec() != prec_) throw Error(ErrorCode::DomainViolation, "coefficient precision differs from the element");
  if (h < 0 || h >= group_.order()) throw Error(ErrorCode::DomainViolation, "no such group element");
  c_[static_cast<std::size_t>(h)] = a;
}

namespace {

// Entries with no known digit say no more than entries above hi; dropping them
// keeps products from dragging dead tails around.
WedgeElem trim_unknown_tail(const WedgeElem& a) {
  int top = a.hi();
  while (top > a.window() && a.coeff_prec(top) == 0) --top;
  return top < a.hi() ? a.with_hi(top) : a;
}

void check_same(const GroupRingElem& a, const GroupRingElem& b) {
  if (!(a.group() == b.group())) throw Error(ErrorCode::DomainViolation, "elements of different group rings");
  if (a.prec() != b.prec()) throw Error(ErrorCode::DomainViolation, "group ring elements at different precisions");
}

}  // namespace

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
  check_same(*this, o);
  GroupRingElem r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const { return *this + (-o); }

GroupRingElem GroupRingElem::operator-() const {
  GroupRingElem r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  check_same(*this, o);
  // Zero coefficients still carry their unknown tails into the product.
  std::vector<std::optional<WedgeElem>> acc(c_.size());
  for (int g = 0; g < group_.order(); ++g) {
    for (int h = 0; h < group_.order(); ++h) {
      const WedgeElem p = c_[static_cast<std::size_t>(g)] * o.c_[static_cast<std::size_t>(h)];
      auto& slot = acc[static_cast<std::size_t>(group_.mul(g, h))];
      slot = slot ? *slot + p : p;
    }
  }
  GroupRingElem r(group_, prec_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = trim_unknown_tail(*acc[i]);
  return r;
}

GroupRingElem GroupRingElem::times(const WedgeElem& a) const {
  GroupRingElem r = *this;
  for (auto& c : r.c_) c = c * a;
  return r;
}

GroupRingElem GroupRingElem::scaled(const PadicInt& c) const {
  GroupRingElem r = *this;
  for (auto& a : r.c_) a = a.scaled(c);
  r.prec_ = r.c_.front().prec();
  return r;
}

GroupRingElem GroupRingElem::pow(std::uint64_t e) const {
  GroupRingElem result = one(group_, prec_, hi());
  GroupRingElem base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

GroupRingElem GroupRingElem::lifted(int prec) const {
  GroupRingElem r = *this;
  for (auto& a : r.c_) a = a.lifted(prec);
  r.prec_ = prec;
  return r;
}

GroupRingElem GroupRingElem::with_prec(int prec) const {
  GroupRingElem r = *this;
  for (auto& a : r.c_) a = a.with_prec(prec);
  r.prec_ = prec;
  return r;
}

GroupRingElem GroupRingElem::with_hi(int hi) const {
  GroupRingElem r = *this;
  for (auto& a : r.c_) a = a.with_hi(hi);
  return r;
}

GroupRingElem GroupRingElem::divide_by_l_power(int v) const {
  GroupRingElem r = *this;
  for (auto& a : r.c_) a = a.divide_by_l_power(v);
  r.prec_ = prec_ - v;
  return r;
}

bool GroupRingElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const WedgeElem& a) { return a.is_zero(); });
}

bool GroupRingElem::congruent(const GroupRingElem& o, int n, int m) const {
  if (!(group_ == o.group_)) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].congruent(o.c_[i], n, m)) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const GroupRingElem& x) {
  os << "{";
  bool first = true;
  for (int h = 0; h < x.group().order(); ++h) {
    if (x.coeff(h).is_zero()) continue;
    if (!first) os << ", ";
    first = false;
    os << "(";
    const auto c = x.group().coordinates(h);
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "): " << x.coeff(h);
  }
  return os << "}";
}

// ---------------------------------------------------------------------------

bool GroupCokerClass::is_zero() const {
  return base.is_zero() &&
         std::all_of(tensor.begin(), tensor.end(), [](const OneMinusPsiSolution& s) { return s.obstruction.is_zero(); });
}

WedgeElem augmentation(const GroupRingElem& x) {
  WedgeElem s = x.coeff(0);
  for (int h = 1; h < x.group().order(); ++h) s = s + x.coeff(h);
  return s;
}

GroupRingElem psi_H(const GroupRingElem& x) {
  const AbelianLGroup& grp = x.group();
  std::vector<std::optional<WedgeElem>> acc(static_cast<std::size_t>(grp.order()));
  for (int h = 0; h < grp.order(); ++h) {
    const WedgeElem p = trim_unknown_tail(psi_wedge(x.coeff(h)));
    auto& slot = acc[static_cast<std::size_t>(grp.pow(h, grp.l()))];
    slot = slot ? *slot + p : p;
  }
  int hi = x.hi();
  for (const auto& a : acc)
    if (a) hi = std::max(hi, a->hi());
  GroupRingElem r(grp, x.prec(), hi);
  for (int h = 0; h < grp.order(); ++h)
    if (acc[static_cast<std::size_t>(h)]) r.set_coeff(h, *acc[static_cast<std::size_t>(h)]);
  return r;
}

GroupRingElem invert_unit_H(const GroupRingElem& e) {
  const AbelianLGroup& grp = e.group();
  // Lambda_^[H] is local with residue field F_l((T)): e is a unit iff its
  // augmentation is.
  const GroupRingElem x0 = GroupRingElem::embed(grp, invert_unit(augmentation(e)));
  // e x0 = 1 - s with s in g, and g is nilpotent mod l, so the powers s^(2^i)
  // die mod l^N; 1/(1-s) = prod_i (1 + s^(2^i)).
  const GroupRingElem s = GroupRingElem::one(grp, e.prec(), e.hi()) - e * x0;
  const long horizon = static_cast<long>(grp.radical_nilpotency()) * e.prec();
  GroupRingElem inv = x0;
  GroupRingElem sp = s;
  for (long reach = 1; !sp.is_zero(); reach *= 2) {
    if (reach > 2 * horizon) throw Error(ErrorCode::WindowExhausted, "geometric series for the inverse did not terminate");
    inv = inv + inv * sp;
    sp = sp * sp;
  }
  return inv;
}

GroupRingElem log_1p_H(const GroupRingElem& x) {
  const std::int64_t l = x.l();
  const int n = x.prec();
  for (int h = 0; h < x.group().order(); ++h) {
    const WedgeElem& c = x.coeff(h);
    for (int k = c.lo(); k <= c.hi(); ++k)
      if (c.coeff_prec(k) >= 1 && c.coeff(k) % static_cast<std::uint64_t>(l) != 0)
        throw Error(ErrorCode::LogOutsideDomain, "log(1+x) needs x divisible by l");
  }
  const int terms = log_series_terms(l, n);
  int guard = 0;
  for (int j = 1; j < terms; ++j) guard = std::max(guard, detail::valuation(static_cast<std::uint64_t>(j), l, 64));
  const GroupRingElem lifted = x.lifted(n + guard);
  GroupRingElem result(x.group(), n, x.hi());
  GroupRingElem power = lifted;
  for (int j = 1; j < terms; ++j) {
    if (j > 1) power = power * lifted;
    const int v = detail::valuation(static_cast<std::uint64_t>(j), l, 64);
    const auto unit = static_cast<std::int64_t>(j / static_cast<std::int64_t>(detail::checked_pow(l, v)));
    const GroupRingElem term = power.scaled(PadicInt(l, n + guard, unit).inverse()).divide_by_l_power(v).with_prec(n);
    result = j % 2 == 1 ? result + term : result - term;
  }
  return result;
}

GroupRingElem integral_log_H(const GroupRingElem& e) {
  const AbelianLGroup& grp = e.group();
  // Split off the augmentation: e = eps * e1 with e1 in 1 + g, and L(eps) is
  // the Lambda_^ value. Same value as the direct formula, larger window.
  const WedgeElem eps = augmentation(e);
  const WedgeElem base = integral_log_wedge(eps);
  const GroupRingElem e1 = e * GroupRingElem::embed(grp, invert_unit(eps));
  // psi is a ring map, so psi(e1)^-1 = psi(e1^-1); inverting before psi keeps
  // the deep principal part of psi(T)^-1 out of the geometric series.
  const GroupRingElem q = e1.pow(static_cast<std::uint64_t>(grp.l())) * psi_H(invert_unit_H(e1));
  const GroupRingElem x = q - GroupRingElem::one(grp, q.prec(), q.hi());
  for (int h = 0; h < grp.order(); ++h) {
    const WedgeElem& c = x.coeff(h);
    for (int k = c.lo(); k <= c.hi(); ++k)
      if (c.coeff_prec(k) >= 1 && c.coeff(k) % static_cast<std::uint64_t>(grp.l()) != 0)
        throw Error(ErrorCode::FrobeniusCongruenceViolated, "e^l / psi(e) is not 1 mod l");
  }
  return log_1p_H(x).divide_by_l_power(1) + GroupRingElem::embed(grp, base);
}

G2NormalForm mod_g2(const GroupRingElem& x) {
  const AbelianLGroup& grp = x.group();
  const std::int64_t l = grp.l();
  const int n = x.prec();
  G2NormalForm nf{augmentation(x), {}};
  // h - 1 = sum_i b_i (g_i - 1) mod g^2 for h = prod g_i^(b_i).
  for (int i = 0; i < grp.rank(); ++i) {
    WedgeElem g = WedgeElem::zero(l, n, x.hi());
    for (int h = 1; h < grp.order(); ++h) {
      const std::int64_t b = grp.coordinates(h)[static_cast<std::size_t>(i)];
      if (b != 0) g = g + x.coeff(h).scaled(PadicInt(l, n, b));
    }
    nf.grad.push_back(g.with_prec(std::min(n, grp.exponents()[static_cast<std::size_t>(i)])));
  }
  return nf;
}

bool g2_congruent(const G2NormalForm& a, const G2NormalForm& b, int n, int m) {
  if (a.grad.size() != b.grad.size() || !a.eps.congruent(b.eps, n, m)) return false;
  for (std::size_t i = 0; i < a.grad.size(); ++i) {
    const int p = std::min({n, a.grad[i].prec(), b.grad[i].prec()});
    if (!a.grad[i].congruent(b.grad[i], p, m)) return false;
  }
  return true;
}

bool lemma4_congruence_check(const GroupRingElem& e) {
  const AbelianLGroup& grp = e.group();
  const WedgeElem aug = augmentation(e);
  if (!aug.congruent(WedgeElem::one(grp.l(), e.prec(), aug.hi()), e.prec(), aug.window()))
    throw Error(ErrorCode::DomainViolation, "e must have augmentation 1");
  // e = 1 + sum_{h != 1} e_h (h - 1) with e_h the coefficient of h.
  GroupRingElem rhs(grp, e.prec(), e.hi());
  for (int h = 1; h < grp.order(); ++h) {
    const WedgeElem c = e.coeff(h) - psi_wedge(e.coeff(h));
    rhs = rhs + GroupRingElem::monomial(grp, h, c) - GroupRingElem::embed(grp, c);
  }
  const G2NormalForm lhs = mod_g2(integral_log_H(e));
  const G2NormalForm r = mod_g2(rhs.with_prec(e.prec() - 1));
  int m = std::min(lhs.eps.window(), r.eps.window());
  for (std::size_t i = 0; i < lhs.grad.size(); ++i) m = std::min({m, lhs.grad[i].window(), r.grad[i].window()});
  if (m < 0) throw Error(ErrorCode::WindowExhausted, "nothing of the window is left to compare");
  return g2_congruent(lhs, r, e.prec() - 1, m);
}

GroupCokerClass coker_class_H(const GroupRingElem& v) {
  const WedgeElem aug = augmentation(v);
  GroupCokerClass c{coker_L_class(aug), {}};
  const G2NormalForm nf = mod_g2(v - GroupRingElem::embed(v.group(), aug));
  for (const WedgeElem& g : nf.grad) c.tensor.push_back(one_minus_psi_solve(g));
  return c;
}

GroupRingElem exp_h0(int h0, const GroupRingElem& x) {
  const AbelianLGroup& grp = x.group();
  const std::int64_t l = grp.l();
  const int n = x.prec();
  if (h0 <= 0 || h0 >= grp.order() || grp.element_order(h0) != l)
    throw Error(ErrorCode::DomainViolation, "h0 must have order l");
  const WedgeElem aug = augmentation(x);
  for (int k = aug.lo(); k <= aug.window(); ++k)
    if (aug.coeff(k) % static_cast<std::uint64_t>(l) != 0)
      throw Error(ErrorCode::DomainViolation, "x must lie in the radical g + l Lambda_^[H]");

  // (h0-1)^(1+k(l-1)) lies in l^k (h0-1) Z[H] and x^(k n_H) in l^k, so the
  // j-th term y^j / j! has valuation >= floor(j / n_H): j < N n_H suffice.
  // Dividing by j costs v_l(j) digits, carried up front.
  const int terms = n * grp.radical_nilpotency();
  const int p = n + detail::factorial_valuation(terms - 1, l);
  const GroupRingElem lifted = x.lifted(p);
  const GroupRingElem y = (GroupRingElem::monomial(grp, h0, WedgeElem::one(l, p, x.hi())) -
                           GroupRingElem::one(grp, p, x.hi())) * lifted;
  GroupRingElem result = GroupRingElem::one(grp, n, x.hi());
  GroupRingElem term = GroupRingElem::one(grp, p, x.hi());
  for (int j = 1; j < terms; ++j) {
    const int v = detail::valuation(static_cast<std::uint64_t>(j), l, 64);
    const auto unit = static_cast<std::int64_t>(j / static_cast<std::int64_t>(detail::checked_pow(l, v)));
    const GroupRingElem next = term * y.with_prec(term.prec());
    term = next.scaled(PadicInt(l, next.prec(), unit).inverse()).divide_by_l_power(v);
    result = result + term.with_prec(n);
  }
  return result;
}

}  // namespace iwalog
