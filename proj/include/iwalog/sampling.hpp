#pragma once

#include <map>
#include <random>
#include <vector>

#include "iwalog/group_ring.hpp"

// Random elements for property checks. The distributions keep principal parts
// shallow enough that products retain a useful window.
namespace iwalog::sampling {

inline PadicInt random_zl(std::mt19937_64& rng, std::int64_t l, int n) {
  return PadicInt::from_residue(l, n, rng() % detail::checked_pow(l, n));
}

inline PadicInt random_teichmueller(std::mt19937_64& rng, std::int64_t l, int n) {
  return teichmueller(PadicInt(l, n, 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(l - 1))));
}

// Coefficients of degree >= from random, the rest zero.
inline LambdaElem random_lambda_elem(std::mt19937_64& rng, std::int64_t l, int n, int m, int from) {
  LambdaElem r(l, n, m);
  for (int k = from; k <= m; ++k) r.set_coeff(k, rng() % r.modulus());
  return r;
}

inline LambdaElem random_lambda_unit(std::mt19937_64& rng, std::int64_t l, int n, int m) {
  LambdaElem r = random_lambda_elem(rng, l, n, m, 0);
  if (r.coeff(0) % static_cast<std::uint64_t>(l) == 0) r.set_coeff(0, r.coeff(0) + 1);
  return r;
}

// Principal part of the given depth; the coefficient at T^-j is divisible by
// l^ceil(j/2).
inline WedgeElem random_wedge(std::mt19937_64& rng, std::int64_t l, int n, int hi, int depth, int from = 0) {
  std::map<int, std::int64_t> c;
  const auto m = static_cast<std::int64_t>(detail::checked_pow(l, n));
  for (int k = -depth; k <= hi; ++k) {
    if (k < 0 || k >= from) {
      std::int64_t x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m));
      if (k < 0) x *= static_cast<std::int64_t>(detail::checked_pow(l, std::min((-k + 1) / 2, n)));
      c[k] = x % m;
    }
  }
  return WedgeElem::from_map(l, n, hi, c);
}

inline WedgeElem random_lambda(std::mt19937_64& rng, std::int64_t l, int n, int hi, int from) {
  return random_wedge(rng, l, n, hi, 0, from);
}

// Unit of Lambda_^: unit constant term, l times a random principal part,
// shifted by T^-2..T^2.
inline WedgeElem random_unit(std::mt19937_64& rng, std::int64_t l, int n, int hi, int depth) {
  WedgeElem e = random_wedge(rng, l, n, hi, depth);
  e = e.filtered([](int k) { return k >= 0; }) +
      random_wedge(rng, l, n, hi, depth).negative_part().scaled(PadicInt(l, n, l));
  if (e.coeff(0) % static_cast<std::uint64_t>(l) == 0) e = e + WedgeElem::one(l, n, hi);
  const int shift = static_cast<int>(rng() % 5) - 2;
  return e.shifted(shift);
}

// Support k >= 2 prime to l.
inline WedgeElem random_xi2(std::mt19937_64& rng, std::int64_t l, int n, int hi) {
  return random_lambda(rng, l, n, hi, 2).filtered([l](int k) { return k % l != 0; });
}

// 1 + sum_{h != 1} r_h (h - 1).
inline GroupRingElem random_one_plus_g(std::mt19937_64& rng, const AbelianLGroup& g, int n, int hi, int depth) {
  GroupRingElem e = GroupRingElem::one(g, n, hi);
  for (int h = 1; h < g.order(); ++h) {
    const WedgeElem r = random_wedge(rng, g.l(), n, hi, depth);
    e = e + GroupRingElem::monomial(g, h, r) - GroupRingElem::embed(g, r);
  }
  return e;
}

// An element of g + l Lambda_^[H].
inline GroupRingElem random_rad(std::mt19937_64& rng, const AbelianLGroup& g, int n, int hi, int depth) {
  const WedgeElem lr = random_wedge(rng, g.l(), n, hi, depth).scaled(PadicInt(g.l(), n, g.l()));
  return random_one_plus_g(rng, g, n, hi, depth) - GroupRingElem::one(g, n, hi) + GroupRingElem::embed(g, lr);
}

inline GroupRingElem random_unit_H(std::mt19937_64& rng, const AbelianLGroup& g, int n, int hi, int depth) {
  return GroupRingElem::embed(g, random_unit(rng, g.l(), n, hi, depth)) * random_one_plus_g(rng, g, n, hi, depth);
}

// An element of order l.
inline int order_l_element(const AbelianLGroup& g) { return g.pow(g.generator(0), g.orders()[0] / g.l()); }

}  // namespace iwalog::sampling
