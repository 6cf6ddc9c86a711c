#pragma once

#include "iwalog/wedge.hpp"

namespace iwalog {

// e = T^n * zeta * (1+T)^z * E(x) * exp(l*w), x in Xi_2 (support k >= 2,
// l not dividing k), zeta^(l-1) = 1.
//
// x and z carry floor(log_l M) digits beyond N-1 and N: E and (1+T)^z are
// evaluated at integer lifts, and those digits are what makes the product
// land on e again at precision N-1.
struct WedgeUnitFactors {
  int n;
  PadicInt zeta;
  PadicInt z;
  WedgeElem x;
  WedgeElem w;
};

// Class of v in Lambda_^ / im(L). c1 is the T^1 coefficient of xi(v), b the
// multiple of xi(L(T)) matching it at T^-1, residual what is left over at the
// other negative indices prime to l.
struct CokerClass {
  PadicInt c1;
  PadicInt b;
  WedgeElem residual;

  bool is_zero() const { return c1.is_zero() && residual.is_zero(); }
};

// (1/l) log(e^l / psi(e)) for a unit of Lambda_^; precision N-1. Computed
// factor by factor, which keeps almost the whole window of e.
WedgeElem integral_log_wedge(const WedgeElem& e);
// The same value straight from e^l * psi(e)^-1.
WedgeElem integral_log_wedge_direct(const WedgeElem& e);

WedgeUnitFactors decompose_wedge_unit(const WedgeElem& e, TailMode mode = TailMode::Canonical);
// Precision min(N_zeta, N_z - floor(log_l M), N_x - integral_exp_loss, N_w + 1).
WedgeElem recompose_wedge_unit(const WedgeUnitFactors& f);

// e in mu_(l-1) x (1+T)^Z_l: n = 0 and x, w vanish to precision N-1.
bool ker_L_membership(const WedgeElem& e);
CokerClass coker_L_class(const WedgeElem& v);

// The nonnegative part of a, up to its window, as an element of Lambda.
LambdaElem to_lambda(const WedgeElem& a);

}  // namespace iwalog
