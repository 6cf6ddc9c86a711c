#include "iwalog/wedge.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>

namespace iwalog {

using detail::add_mod;
using detail::mul_mod;
using detail::sub_mod;

namespace {

std::vector<std::uint64_t> power_table(std::int64_t l, int n) {
  detail::checked_pow(l, n);
  std::vector<std::uint64_t> t(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) t[i] = t[i - 1] * static_cast<std::uint64_t>(l);
  return t;
}

std::int64_t small_binomial(std::int64_t n, std::int64_t k) {
  std::int64_t c = 1;
  for (std::int64_t t = 0; t < k; ++t) c = c * (n - t) / (t + 1);
  return c;
}

// Laurent polynomial in T^-1 with exact integer coefficients mod l^n:
// entry d is the coefficient of T^-d.
using NegPoly = std::vector<std::uint64_t>;

NegPoly negpoly_mul(const NegPoly& a, const NegPoly& b, std::uint64_t m) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) detail::mul_acc(acc[i + j], a[i], b[j], m);
  }
  NegPoly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % m);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// u = ((1+T)^l - 1)^-1 * T^l = (1 + w)^-1 with w = sum_{i<l} C(l,i) T^(i-l),
// as a polynomial in T^-1. Every coefficient of w is divisible by l, so the
// geometric series stops after n terms.
NegPoly psi_t_inverse_unit(std::int64_t l, int n) {
  const std::uint64_t m = detail::checked_pow(l, n);
  NegPoly minus_w(static_cast<std::size_t>(l), 0);
  for (std::int64_t d = 1; d < l; ++d) {
    // T^(i-l) with i = l - d, coefficient C(l, d).
    minus_w[static_cast<std::size_t>(d)] = detail::reduce_signed(-small_binomial(l, d), m);
  }
  NegPoly u{1 % m};
  NegPoly power{1 % m};
  for (int i = 1; i < n; ++i) {
    power = negpoly_mul(power, minus_w, m);
    if (power.empty()) break;
    if (u.size() < power.size()) u.resize(power.size(), 0);
    for (std::size_t d = 0; d < power.size(); ++d) u[d] = add_mod(u[d], power[d], m);
  }
  while (!u.empty() && u.back() == 0) u.pop_back();
  return u;
}

// Accumulates sum a_i * B_i coefficient by coefficient while tracking the
// precision of every output index.
class Accumulator {
 public:
  Accumulator(std::int64_t l, int prec, int lo, int hi)
      : l_(l), prec_(prec), lo_(lo), hi_(hi), pw_(power_table(l, prec)) {
    const std::size_t len = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
    acc_.assign(len, 0);
    p_.assign(len, prec);
  }
  bool in_range(int k) const { return k >= lo_ && k <= hi_; }
  void add(int k, std::uint64_t a, std::uint64_t b) {
    detail::mul_acc(acc_[static_cast<std::size_t>(k - lo_)], a, b, pw_[prec_]);
  }
  void cap(int k, int p) {
    int& q = p_[static_cast<std::size_t>(k - lo_)];
    q = std::min(q, std::max(p, 0));
  }
  WedgeElem finish() const {
    std::vector<std::uint64_t> c(acc_.size());
    for (std::size_t i = 0; i < acc_.size(); ++i) c[i] = static_cast<std::uint64_t>(acc_[i] % pw_[p_[i]]);
    return WedgeElem::from_parts(l_, prec_, lo_, hi_, std::move(c), p_);
  }

 private:
  std::int64_t l_;
  int prec_;
  int lo_;
  int hi_;
  std::vector<std::uint64_t> pw_;
  std::vector<unsigned __int128> acc_;
  std::vector<int> p_;
};

}  // namespace

WedgeElem::WedgeElem(std::int64_t l, int prec, int hi) : l_(l), prec_(prec), lo_(hi + 1), hi_(hi) {
  detail::require_odd_prime(l);
  if (prec < 0) throw Error(ErrorCode::DomainViolation, "negative precision");
  detail::checked_pow(l, prec);
}

WedgeElem WedgeElem::one(std::int64_t l, int prec, int hi) { return monomial(l, prec, hi, 0, 1); }

WedgeElem WedgeElem::monomial(std::int64_t l, int prec, int hi, int k, std::int64_t c) {
  WedgeElem r(l, prec, hi);
  if (k <= hi) r.set_coeff(k, detail::reduce_signed(c, detail::checked_pow(l, prec)));
  return r;
}

WedgeElem WedgeElem::constant(const PadicInt& c, int hi) {
  WedgeElem r(c.l(), c.prec(), hi);
  if (hi >= 0) r.set_coeff(0, c.residue());
  return r;
}

WedgeElem WedgeElem::from_map(std::int64_t l, int prec, int hi, const std::map<int, std::int64_t>& coeffs) {
  WedgeElem r(l, prec, hi);
  if (coeffs.empty()) return r;
  const int lo = std::min(coeffs.begin()->first, hi + 1);
  if (coeffs.rbegin()->first > hi)
    throw Error(ErrorCode::DomainViolation, "coefficient at index " + std::to_string(coeffs.rbegin()->first) +
                                                " lies above the truncation " + std::to_string(hi));
  const std::uint64_t m = detail::checked_pow(l, prec);
  std::vector<std::uint64_t> c(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [k, v] : coeffs) c[static_cast<std::size_t>(k - lo)] = detail::reduce_signed(v, m);
  return from_parts(l, prec, lo, hi, std::move(c), std::vector<int>(static_cast<std::size_t>(hi - lo + 1), prec));
}

WedgeElem WedgeElem::from_lambda(const LambdaElem& a) {
  const auto& src = a.coeffs();
  return from_parts(a.l(), a.prec(), 0, a.trunc(), src, std::vector<int>(src.size(), a.prec()));
}

WedgeElem WedgeElem::from_parts(std::int64_t l, int prec, int lo, int hi, std::vector<std::uint64_t> residues,
                                std::vector<int> precs) {
  WedgeElem r(l, prec, hi);
  const auto len = static_cast<std::size_t>(std::max(hi - lo + 1, 0));
  if (residues.size() != len || precs.size() != len)
    throw Error(ErrorCode::DomainViolation, "storage does not match the index range");
  if (len == 0) return r;
  const auto pw = power_table(l, prec);
  for (std::size_t i = 0; i < len; ++i) {
    precs[i] = std::clamp(precs[i], 0, prec);
    residues[i] %= pw[precs[i]];
  }
  r.lo_ = lo;
  r.c_ = std::move(residues);
  r.p_ = std::move(precs);
  r.trim();
  return r;
}

void WedgeElem::extend_to(int k) {
  if (k >= lo_) return;
  const auto extra = static_cast<std::size_t>(lo_ - k);
  c_.insert(c_.begin(), extra, 0);
  p_.insert(p_.begin(), extra, prec_);
  lo_ = k;
}

void WedgeElem::trim() {
  std::size_t cut = 0;
  while (cut < c_.size() && c_[cut] == 0 && p_[cut] == prec_) ++cut;
  if (cut == 0) return;
  c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(cut));
  p_.erase(p_.begin(), p_.begin() + static_cast<std::ptrdiff_t>(cut));
  lo_ += static_cast<int>(cut);
}

int WedgeElem::window() const {
  for (int k = lo_; k <= hi_; ++k)
    if (p_[idx(k)] < prec_) return k - 1;
  return hi_;
}

std::uint64_t WedgeElem::coeff(int k) const { return k >= lo_ && k <= hi_ ? c_[idx(k)] : 0; }

int WedgeElem::coeff_prec(int k) const {
  if (k < lo_) return prec_;
  if (k > hi_) return 0;
  return p_[idx(k)];
}

PadicInt WedgeElem::coeff_padic(int k) const {
  const int p = coeff_prec(k);
  if (p < prec_)
    throw Error(ErrorCode::WindowExhausted, "coefficient " + std::to_string(k) + " is not known to full precision")
        .with_achievable(p);
  return PadicInt::from_residue(l_, prec_, coeff(k));
}

void WedgeElem::set_coeff(int k, std::uint64_t residue, int prec) {
  if (k > hi_) throw Error(ErrorCode::WindowExhausted, "index " + std::to_string(k) + " lies above the window");
  extend_to(k);
  prec = std::clamp(prec, 0, prec_);
  c_[idx(k)] = residue % detail::checked_pow(l_, prec);
  p_[idx(k)] = prec;
  trim();
}

int WedgeElem::val_at(int k) const {
  const int p = coeff_prec(k);
  return detail::valuation(coeff(k), l_, p);
}

std::map<int, std::uint64_t> WedgeElem::nonzero_coeffs() const {
  std::map<int, std::uint64_t> out;
  const int w = window();
  for (int k = lo_; k <= w; ++k)
    if (c_[idx(k)] != 0) out.emplace(k, c_[idx(k)]);
  return out;
}

bool WedgeElem::is_zero() const { return nonzero_coeffs().empty(); }

std::optional<int> WedgeElem::residue_valuation() const {
  const auto l = static_cast<std::uint64_t>(l_);
  for (int k = lo_; k <= hi_; ++k) {
    if (p_[idx(k)] == 0) return std::nullopt;
    if (c_[idx(k)] % l != 0) return k;
  }
  return std::nullopt;
}

bool WedgeElem::is_unit() const { return prec_ > 0 && residue_valuation().has_value(); }

void WedgeElem::check_compatible(const WedgeElem& o) const {
  if (l_ != o.l_)
    throw Error(ErrorCode::MismatchedPrime, "l=" + std::to_string(l_) + " vs l=" + std::to_string(o.l_));
}

WedgeElem WedgeElem::operator+(const WedgeElem& o) const {
  check_compatible(o);
  const int cap = std::min(prec_, o.prec_);
  const int hi = std::min(hi_, o.hi_);
  const int lo = std::min(lo_, o.lo_);
  if (lo > hi) return zero(l_, cap, hi);
  const auto pw = power_table(l_, cap);
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::uint64_t> c(len);
  std::vector<int> p(len);
  for (int k = lo; k <= hi; ++k) {
    const int q = std::min({coeff_prec(k), o.coeff_prec(k), cap});
    const std::uint64_t m = pw[q];
    c[static_cast<std::size_t>(k - lo)] = (coeff(k) % m + o.coeff(k) % m) % m;
    p[static_cast<std::size_t>(k - lo)] = q;
  }
  return from_parts(l_, cap, lo, hi, std::move(c), std::move(p));
}

WedgeElem WedgeElem::operator-() const {
  WedgeElem r(*this);
  const auto pw = power_table(l_, prec_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] == 0 ? 0 : pw[p_[i]] - r.c_[i];
  return r;
}

WedgeElem WedgeElem::operator-(const WedgeElem& o) const { return *this + (-o); }

WedgeElem WedgeElem::operator*(const WedgeElem& o) const {
  check_compatible(o);
  const int cap = std::min(prec_, o.prec_);
  const int hi = std::max(hi_, o.hi_);
  const int lo = lo_ + o.lo_;
  if (lo > hi) return zero(l_, cap, hi);
  Accumulator acc(l_, cap, lo, hi);

  for (int i = lo_; i <= hi_; ++i) {
    const std::uint64_t a = c_[idx(i)];
    if (a == 0) continue;
    const int jmax = std::min(o.hi_, hi - i);
    for (int j = o.lo_; j <= jmax; ++j) acc.add(i + j, a, o.c_[o.idx(j)]);
  }

  // Precision: a term x_i y_j is only known modulo l^min(p_i + v_j, p_j + v_i),
  // with unknown coefficients above hi counting as p = v = 0.
  auto spread = [&](const WedgeElem& a, const WedgeElem& b) {
    std::vector<int> vb;
    vb.reserve(b.c_.size());
    for (int j = b.lo_; j <= b.hi_; ++j) vb.push_back(std::min(b.val_at(j), cap));
    for (int i = a.lo_; i <= a.hi_; ++i) {
      const int pi = std::min(a.p_[a.idx(i)], cap);
      if (pi >= cap) continue;
      const int jmax = std::min(b.hi_, hi - i);
      for (int j = b.lo_; j <= jmax; ++j) acc.cap(i + j, pi + vb[static_cast<std::size_t>(j - b.lo_)]);
    }
    // Unknown a_i (i > a.hi) against b_j: index n sees min_{j <= n - a.hi - 1} v_j.
    int running = std::numeric_limits<int>::max();
    for (int n = a.hi_ + 1 + b.lo_; n <= hi; ++n) {
      const int j = n - a.hi_ - 1;
      if (j > b.hi_) {
        acc.cap(n, 0);  // both factors unknown
        continue;
      }
      running = std::min(running, vb[static_cast<std::size_t>(j - b.lo_)]);
      if (n >= lo) acc.cap(n, running);
    }
  };
  spread(*this, o);
  spread(o, *this);
  return acc.finish();
}

WedgeElem WedgeElem::scaled(const PadicInt& c) const {
  if (c.l() != l_) throw Error(ErrorCode::MismatchedPrime, "scalar from another prime");
  const int cap = std::min(prec_, c.prec());
  const int vc = detail::valuation(c.residue(), l_, c.prec());
  const auto pw = power_table(l_, cap);
  std::vector<std::uint64_t> r(c_.size());
  std::vector<int> p(p_.size());
  for (int k = lo_; k <= hi_; ++k) {
    const int q = std::min({p_[idx(k)] + vc, c.prec() + val_at(k), cap});
    p[idx(k)] = q;
    r[idx(k)] = mul_mod(c_[idx(k)], c.residue(), pw[q]);
  }
  return from_parts(l_, cap, lo_, hi_, std::move(r), std::move(p));
}

WedgeElem WedgeElem::shifted(int n) const {
  const int lo = lo_ + n;
  if (lo > hi_) return zero(l_, prec_, hi_);
  const auto len = static_cast<std::size_t>(hi_ - lo + 1);
  std::vector<std::uint64_t> c(len, 0);
  std::vector<int> p(len, 0);  // indices above hi + n come from unknown coefficients
  for (int k = lo; k <= hi_; ++k) {
    const int src = k - n;
    if (src > hi_) continue;
    c[static_cast<std::size_t>(k - lo)] = c_[idx(src)];
    p[static_cast<std::size_t>(k - lo)] = p_[idx(src)];
  }
  return from_parts(l_, prec_, lo, hi_, std::move(c), std::move(p));
}

WedgeElem WedgeElem::pow(std::uint64_t e) const {
  WedgeElem result = one(l_, prec_, hi_);
  WedgeElem base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

WedgeElem WedgeElem::filtered(const std::function<bool(int)>& keep) const {
  WedgeElem r(*this);
  for (int k = lo_; k <= hi_; ++k) {
    if (keep(k)) continue;
    r.c_[idx(k)] = 0;
    r.p_[idx(k)] = prec_;
  }
  r.trim();
  return r;
}

WedgeElem WedgeElem::positive_part() const {
  return filtered([](int k) { return k > 0; });
}

WedgeElem WedgeElem::negative_part() const {
  return filtered([](int k) { return k < 0; });
}

WedgeElem WedgeElem::lifted(int prec) const {
  if (prec < prec_) return with_prec(prec);
  WedgeElem r(l_, prec, hi_);
  r.lo_ = lo_;
  r.c_ = c_;
  r.p_ = p_;
  for (auto& q : r.p_)
    if (q == prec_) q = prec;
  r.trim();
  return r;
}

WedgeElem WedgeElem::with_prec(int prec) const {
  if (prec > prec_)
    throw Error(ErrorCode::PrecisionLoss, "requested precision exceeds known digits").with_achievable(prec_);
  std::vector<int> p(p_);
  for (auto& q : p) q = std::min(q, prec);
  return from_parts(l_, prec, lo_, hi_, c_, std::move(p));
}

WedgeElem WedgeElem::with_hi(int hi) const {
  const int lo = std::min(lo_, hi + 1);
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::uint64_t> c(len, 0);
  std::vector<int> p(len, 0);
  for (int k = lo; k <= hi; ++k) {
    c[static_cast<std::size_t>(k - lo)] = coeff(k);
    p[static_cast<std::size_t>(k - lo)] = coeff_prec(k);
  }
  return from_parts(l_, prec_, lo, hi, std::move(c), std::move(p));
}

WedgeElem WedgeElem::divide_by_l_power(int v) const {
  if (v > prec_) throw Error(ErrorCode::PrecisionLoss, "cannot divide by more digits than known");
  const auto pw = power_table(l_, prec_);
  std::vector<std::uint64_t> c(c_.size());
  std::vector<int> p(p_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const int q = p_[i];
    if (c_[i] % pw[std::min(q, v)] != 0)
      throw Error(ErrorCode::NotDivisible,
                  "coefficient " + std::to_string(lo_ + static_cast<int>(i)) + " not divisible by l^" + std::to_string(v));
    c[i] = q >= v ? c_[i] / pw[v] : 0;
    p[i] = std::max(q - v, 0);
  }
  return from_parts(l_, prec_ - v, lo_, hi_, std::move(c), std::move(p));
}

bool WedgeElem::congruent(const WedgeElem& o, int n, int m) const {
  if (l_ != o.l_) return false;
  const std::uint64_t mod = detail::checked_pow(l_, n);
  for (int k = std::min(lo_, o.lo_); k <= m; ++k) {
    if (coeff_prec(k) < n || o.coeff_prec(k) < n) return false;
    if (coeff(k) % mod != o.coeff(k) % mod) return false;
  }
  return true;
}

bool WedgeElem::operator==(const WedgeElem& o) const {
  if (l_ != o.l_ || prec_ != o.prec_ || window() != o.window()) return false;
  return nonzero_coeffs() == o.nonzero_coeffs();
}

std::ostream& operator<<(std::ostream& os, const WedgeElem& a) {
  os << "[l=" << a.l() << " N=" << a.prec() << " window=" << a.window() << " hi=" << a.hi() << ":";
  for (const auto& [k, c] : a.nonzero_coeffs()) os << ' ' << k << ':' << c;
  return os << ']';
}

void require_window(const WedgeElem& a, const char* what) {
  if (a.window() < 0)
    throw Error(ErrorCode::WindowExhausted, std::string(what) + ": no coefficient of nonnegative degree survived");
}

// ---------------------------------------------------------------------------

WedgeElem psi_wedge(const WedgeElem& a) {
  const std::int64_t l = a.l();
  const int n = a.prec();
  const int hi = a.hi();
  const auto li = static_cast<int>(l);

  // psi(T)^k = T^k (l + ... + T^(l-1))^k, so its coefficient at T^(k+i) has
  // valuation >= k - floor(i/(l-1)). The unknown a_k, k > hi, therefore only
  // reach index d modulo l^(hi+1 - floor((d-hi-1)/(l-1))), and psi(a) is
  // known well beyond hi.
  const int out_hi = hi >= 0 ? std::max(hi, hi + (li - 1) * (hi + 2 - n)) : hi;

  // psi(T^-j) = T^(-lj) u^j, u exact.
  const int depth = a.depth();
  std::vector<NegPoly> neg_powers;
  int lo = std::min(a.lo(), 0);
  if (depth > 0) {
    const std::uint64_t m = detail::checked_pow(l, n);
    const NegPoly u = psi_t_inverse_unit(l, n);
    neg_powers.push_back(NegPoly{1 % m});
    for (int j = 1; j <= depth; ++j) {
      neg_powers.push_back(negpoly_mul(neg_powers.back(), u, m));
      lo = std::min(lo, -li * j - static_cast<int>(neg_powers.back().size()) + 1);
    }
  }
  if (lo > out_hi) return WedgeElem::zero(l, n, out_hi);
  Accumulator acc(l, n, lo, out_hi);
  const int cap = n;

  // Every term a_k B_k with B_k exact: precision p_k + v(B_k[d]).
  auto add_term = [&](int k, int d, std::uint64_t b) {
    const std::uint64_t x = a.coeff(k);
    const int pk = a.coeff_prec(k);
    if (x != 0 && b != 0) acc.add(d, x, b);
    if (pk < cap) acc.cap(d, pk + detail::valuation(b, l, cap));
  };

  for (int j = 1; j <= depth; ++j) {
    const int k = -j;
    if (a.coeff(k) == 0 && a.coeff_prec(k) == cap) continue;
    const NegPoly& uj = neg_powers[static_cast<std::size_t>(j)];
    for (std::size_t d = 0; d < uj.size(); ++d) {
      const int deg = -li * j - static_cast<int>(d);
      if (deg <= out_hi) add_term(k, deg, uj[d]);
    }
  }
  if (hi >= 0) add_term(0, 0, 1);
  if (hi >= 1) {
    // psi(T)^k, one sparse multiplication by psi(T) at a time.
    const std::uint64_t m = detail::checked_pow(l, n);
    std::vector<std::uint64_t> pt(static_cast<std::size_t>(l) + 1);
    for (std::int64_t i = 1; i <= l; ++i) pt[static_cast<std::size_t>(i)] = small_binomial(l, i) % m;
    const auto len = static_cast<std::size_t>(out_hi) + 1;
    std::vector<std::uint64_t> power(len, 0), next(len);
    power[0] = 1 % m;
    for (int k = 1; k <= hi; ++k) {
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t d = static_cast<std::size_t>(k - 1); d < len; ++d) {
        if (power[d] == 0) continue;
        for (std::size_t i = 1; i < pt.size() && d + i < len; ++i) next[d + i] = add_mod(next[d + i], mul_mod(power[d], pt[i], m), m);
      }
      power.swap(next);
      if (a.coeff(k) == 0 && a.coeff_prec(k) == cap) continue;
      for (int d = k; d <= out_hi; ++d) add_term(k, d, power[static_cast<std::size_t>(d)]);
    }
  }
  for (int d = hi + 1; d <= out_hi; ++d) acc.cap(d, std::max(0, hi + 1 - (d - hi - 1) / (li - 1)));
  return acc.finish();
}

WedgeElem l_minus_psi_wedge(const WedgeElem& a) {
  return a.scaled(PadicInt(a.l(), a.prec(), a.l())) - psi_wedge(a);
}

WedgeElem one_minus_psi(const WedgeElem& a) { return a - psi_wedge(a); }

WedgeElem invert_unit(const WedgeElem& e) {
  const auto k0 = e.residue_valuation();
  if (!k0 || *k0 > e.window()) throw Error(ErrorCode::NotAUnit, "element is divisible by l");
  const std::int64_t l = e.l();
  const int n = e.prec();
  const WedgeElem f = e.shifted(-*k0);

  // Invert the Lambda part (constant term a unit) as a power series.
  const int wa = f.window();
  if (wa < 0) throw Error(ErrorCode::WindowExhausted, "unit has no known nonnegative part after normalization");
  LambdaElem a(l, n, wa);
  for (int k = 0; k <= wa; ++k) a.set_coeff(k, f.coeff(k));
  const WedgeElem x0 = WedgeElem::from_lambda(a.inverse());

  // f x0 = 1 - s with s = 0 mod l; 1/(1-s) = prod_i (1 + s^(2^i)).
  const WedgeElem s = WedgeElem::one(l, n, f.hi()) - f * x0;
  WedgeElem inv = x0;
  WedgeElem sp = s;
  for (int reach = 1; reach < n; reach *= 2) {
    inv = inv + inv * sp;
    if (2 * reach < n) sp = sp * sp;
  }
  return inv.shifted(-*k0);
}

WedgeElem exp_l_wedge(const WedgeElem& y) {
  const std::int64_t l = y.l();
  const int n = y.prec();
  const int terms = exp_series_terms(l, n);
  WedgeElem result = WedgeElem::one(l, n, y.hi());
  WedgeElem power = WedgeElem::one(l, n, y.hi());
  for (int j = 1; j < terms; ++j) {
    power = power * y;
    result = result + power.scaled(exp_series_coefficient(l, j, n));
  }
  return result;
}

WedgeElem log_1p_wedge(const WedgeElem& x) {
  const std::int64_t l = x.l();
  const int n = x.prec();
  for (int k = x.lo(); k <= x.hi(); ++k)
    if (x.coeff_prec(k) >= 1 && x.coeff(k) % static_cast<std::uint64_t>(l) != 0)
      throw Error(ErrorCode::LogOutsideDomain, "log(1+x) needs x divisible by l (index " + std::to_string(k) + ")");
  const int terms = log_series_terms(l, n);
  int guard = 0;
  for (int j = 1; j < terms; ++j)
    guard = std::max(guard, detail::valuation(static_cast<std::uint64_t>(j), l, 64));
  const WedgeElem lifted = x.lifted(n + guard);
  WedgeElem result = WedgeElem::zero(l, n, x.hi());
  WedgeElem power = lifted;
  for (int j = 1; j < terms; ++j) {
    if (j > 1) power = power * lifted;
    const int v = detail::valuation(static_cast<std::uint64_t>(j), l, 64);
    const auto unit = static_cast<std::int64_t>(j / static_cast<std::int64_t>(detail::checked_pow(l, v)));
    const WedgeElem term =
        power.scaled(PadicInt(l, n + guard, unit).inverse()).divide_by_l_power(v).with_prec(n);
    result = j % 2 == 1 ? result + term : result - term;
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

// A digit-level element being assembled: residues and precisions over [lo, hi].
struct DigitBuffer {
  DigitBuffer(std::int64_t l, int prec, int lo, int hi)
      : l(l), prec(prec), lo(lo), hi(hi), m(detail::checked_pow(l, prec)) {
    const auto len = static_cast<std::size_t>(std::max(hi - lo + 1, 0));
    c.assign(len, 0);
    p.assign(len, prec);
  }
  void add(int k, std::int64_t d) {
    auto& x = c[static_cast<std::size_t>(k - lo)];
    x = add_mod(x, detail::reduce_signed(d, m), m);
  }
  void unknown(int k) { p[static_cast<std::size_t>(k - lo)] = 0; }
  WedgeElem finish() const { return WedgeElem::from_parts(l, prec, lo, hi, c, p); }

  std::int64_t l;
  int prec, lo, hi;
  std::uint64_t m;
  std::vector<std::uint64_t> c;
  std::vector<int> p;
};

int floor_div(int a, std::int64_t b) {
  const auto q = static_cast<int>(a / b);
  return (a % b != 0 && a < 0) ? q - 1 : q;
}

}  // namespace

XiSplit xi_split(const WedgeElem& x, TailMode mode) {
  const std::int64_t l = x.l();
  const auto ul = static_cast<std::uint64_t>(l);
  const int n = x.prec();
  const int hi = x.hi();
  WedgeElem xi = WedgeElem::zero(l, n, hi);
  WedgeElem pre = WedgeElem::zero(l, n, hi);
  WedgeElem rest = x;
  for (int r = 0; r < n; ++r) {
    const int lo = std::min(rest.lo(), 0);
    DigitBuffer xr(l, n, lo, hi);
    DigitBuffer wr(l, n, floor_div(lo, l), hi);
    for (int k = rest.lo(); k <= hi; ++k) {
      const bool known = rest.coeff_prec(k) >= 1;
      const auto d = static_cast<std::int64_t>(rest.coeff(k) % ul);
      if (k % l != 0) {
        if (!known) xr.unknown(k);
        else if (d != 0) xr.add(k, d);
      } else {
        // psi(w) = w(T^l) mod l, so the digit at lk comes from -w at k.
        if (!known) wr.unknown(k / static_cast<int>(l));
        else if (d != 0) wr.add(k / static_cast<int>(l), -d);
      }
    }
    // Coefficients of w whose image index l*k lies above the window: zero in
    // the canonical split, unknown in the determined one.
    if (mode == TailMode::Determined)
      for (int k = std::max(floor_div(hi, l) + 1, wr.lo); k <= hi; ++k) wr.unknown(k);
    const WedgeElem xi_r = xr.finish();
    const WedgeElem w_r = wr.finish();
    const PadicInt lr(l, n, static_cast<std::int64_t>(detail::checked_pow(l, r)));
    xi = xi + xi_r.scaled(lr);
    pre = pre + w_r.scaled(lr);
    if (r + 1 < n) rest = (rest - xi_r - l_minus_psi_wedge(w_r)).divide_by_l_power(1);
  }
  return {xi, pre};
}

WedgeElem log_T(std::int64_t l, int prec, int hi) {
  const std::uint64_t m = detail::checked_pow(l, prec);
  // v = -(1/l) sum_{i<l} C(l,i) T^-i; C(l,i)/l is an integer.
  NegPoly v(static_cast<std::size_t>(l), 0);
  for (std::int64_t i = 1; i < l; ++i) {
    v[static_cast<std::size_t>(i)] = detail::reduce_signed(-(small_binomial(l, i) / l), m);
  }
  NegPoly sum;
  NegPoly power{1 % m};
  const int terms = log_series_terms(l, prec + 1);
  for (int j = 1; j < terms; ++j) {
    power = negpoly_mul(power, v, m);
    const int vj = detail::valuation(static_cast<std::uint64_t>(j), l, 64);
    const int e = j - 1 - vj;
    if (e >= prec) continue;
    const std::uint64_t unit = static_cast<std::uint64_t>(j) / detail::checked_pow(l, vj);
    const std::uint64_t coef = mul_mod(detail::checked_pow(l, e), detail::inv_mod(unit % m, m), m);
    if (sum.size() < power.size()) sum.resize(power.size(), 0);
    for (std::size_t d = 0; d < power.size(); ++d) sum[d] = add_mod(sum[d], mul_mod(power[d], coef, m), m);
  }
  std::map<int, std::int64_t> coeffs;
  for (std::size_t d = 1; d < sum.size(); ++d)
    if (sum[d] != 0) coeffs.emplace(-static_cast<int>(d), static_cast<std::int64_t>(sum[d]));
  return WedgeElem::from_map(l, prec, hi, coeffs);
}

OneMinusPsiSolution one_minus_psi_solve(const WedgeElem& y) {
  const std::int64_t l = y.l();
  const auto ul = static_cast<std::uint64_t>(l);
  const int n = y.prec();
  const int hi = y.hi();
  WedgeElem sol = WedgeElem::zero(l, n, hi);
  WedgeElem obs = WedgeElem::zero(l, n, hi);
  WedgeElem rest = y;
  for (int r = 0; r < n; ++r) {
    const int lo = std::min(rest.lo(), 0);
    DigitBuffer sr(l, n, lo, hi);
    DigitBuffer orr(l, n, lo, hi);
    // Digits mod l; -1 marks an unknown digit.
    std::vector<std::int64_t> digit(static_cast<std::size_t>(hi - lo + 1), 0);
    for (int k = lo; k <= hi; ++k)
      digit[static_cast<std::size_t>(k - lo)] =
          rest.coeff_prec(k) >= 1 ? static_cast<std::int64_t>(rest.coeff(k) % ul) : -1;
    auto dig = [&](int k) -> std::int64_t& { return digit[static_cast<std::size_t>(k - lo)]; };

    // T^k = (1 - psi)(-T^(k/l)) + T^(k/l) for negative k divisible by l; the
    // carried index k/l is closer to 0, so one upward sweep settles it.
    for (int k = lo; k < 0 && k <= hi; ++k) {
      const std::int64_t d = dig(k);
      if (k % l == 0) {
        const int q = k / static_cast<int>(l);
        if (d < 0) {
          sr.unknown(q);
          dig(q) = -1;
        } else if (d != 0) {
          sr.add(q, -d);
          if (dig(q) >= 0) dig(q) = (dig(q) + d) % l;
        }
      } else if (d < 0) {
        orr.unknown(k);
      } else if (d != 0) {
        orr.add(k, d);
      }
    }
    if (hi >= 0) {
      if (dig(0) < 0) orr.unknown(0);
      else if (dig(0) != 0) orr.add(0, dig(0));
    }
    // Positive digits: (1 - psi) sum_i T^(k l^i) = T^k up to terms past the window.
    for (int k = 1; k <= hi; ++k) {
      const std::int64_t d = dig(k);
      if (d == 0) continue;
      for (std::int64_t t = k; t <= hi; t *= l) {
        if (d < 0) sr.unknown(static_cast<int>(t));
        else sr.add(static_cast<int>(t), d);
      }
    }
    const WedgeElem s_r = sr.finish();
    const WedgeElem o_r = orr.finish();
    const PadicInt lr(l, n, static_cast<std::int64_t>(detail::checked_pow(l, r)));
    sol = sol + s_r.scaled(lr);
    obs = obs + o_r.scaled(lr);
    if (r + 1 < n) rest = (rest - one_minus_psi(s_r) - o_r).divide_by_l_power(1);
  }
  return {sol, obs};
}

WedgeElem kernel_one_minus_psi_check(const PadicInt& c, int hi) { return one_minus_psi(WedgeElem::constant(c, hi)); }

}  // namespace iwalog
