#include <gtest/gtest.h>

#include <random>

#include "iwalog/lambda.hpp"
#include "oracle_e.hpp"

using namespace iwalog;

namespace {

LambdaElem poly(std::int64_t l, int n, int m, std::vector<std::int64_t> c) { return {l, n, m, c}; }

LambdaElem random_elem(std::mt19937_64& rng, std::int64_t l, int n, int m, int from_degree) {
  LambdaElem r(l, n, m);
  for (int k = from_degree; k <= m; ++k) r.set_coeff(k, rng() % r.modulus());
  return r;
}

LambdaElem random_unit(std::mt19937_64& rng, std::int64_t l, int n, int m) {
  LambdaElem r = random_elem(rng, l, n, m, 0);
  if (r.coeff(0) % static_cast<std::uint64_t>(l) == 0) r.set_coeff(0, r.coeff(0) + 1);
  return r;
}

}  // namespace

TEST(LambdaRing, Products) {
  const auto a = poly(3, 4, 6, {1, 1}) * poly(3, 4, 6, {1, -1});
  EXPECT_EQ(a, poly(3, 4, 6, {1, 0, -1}));
  EXPECT_EQ(poly(3, 4, 6, {0, 1}) * poly(3, 4, 6, {0, 1}), poly(3, 4, 6, {0, 0, 1}));
  EXPECT_EQ(poly(3, 1, 6, {1, 1}).pow(3), poly(3, 1, 6, {1, 0, 0, 1}));
}

TEST(LambdaRing, MismatchedPrime) {
  EXPECT_THROW(poly(3, 4, 6, {1}) + poly(5, 4, 6, {1}), Error);
}

TEST(Psi, Values) {
  EXPECT_EQ(psi(poly(3, 4, 12, {0, 1})), poly(3, 4, 12, {0, 3, 3, 1}));
  EXPECT_EQ(psi(poly(3, 4, 12, {1, 1})), poly(3, 4, 12, {1, 1}).pow(3));
  EXPECT_EQ(psi(poly(5, 4, 12, {17})), poly(5, 4, 12, {17}));
}

TEST(Psi, RingHomomorphism) {
  std::mt19937_64 rng(3);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 30; ++i) {
      const auto a = random_elem(rng, l, 5, 20, 0);
      const auto b = random_elem(rng, l, 5, 20, 0);
      EXPECT_EQ(psi(a * b), psi(a) * psi(b));
      EXPECT_EQ(psi(a + b), psi(a) + psi(b));
    }
  }
}

TEST(Psi, FrobeniusCongruence) {
  std::mt19937_64 rng(5);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 100; ++i) {
      const auto e = random_elem(rng, l, 4, 30, 0);
      EXPECT_TRUE((e.pow(static_cast<std::uint64_t>(l)) - psi(e)).divisible_by_l_power(1));
    }
  }
}

TEST(SeriesBounds, ComputedNotHardCoded) {
  for (std::int64_t l : {3, 5, 7}) {
    for (int n = 1; n <= 8; ++n) {
      const int je = exp_series_terms(l, n);
      const int jl = log_series_terms(l, n);
      for (int j = je; j < je + 200; ++j) EXPECT_GE(j - detail::factorial_valuation(j, l), n);
      for (int j = jl; j < jl + 200; ++j)
        EXPECT_GE(j - detail::valuation(static_cast<std::uint64_t>(j), l, 64), n);
      EXPECT_LT((je - 1) - detail::factorial_valuation(je - 1, l), n);
    }
  }
}

TEST(ExpLog, FixedValues) {
  EXPECT_EQ(exp_l(LambdaElem::zero(3, 3, 4)), LambdaElem::one(3, 3, 4));
  EXPECT_EQ(exp_l(poly(3, 3, 0, {-1})).coeff(0), 25u);
  EXPECT_TRUE(log_1p_l(LambdaElem::zero(3, 3, 4)).is_zero());
  EXPECT_EQ(log_1p_l(poly(3, 3, 0, {-3})).coeff(0), 24u);
  try {
    log_1p_l(poly(3, 3, 2, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LogOutsideDomain);
  }
}

TEST(ExpLog, InversePair) {
  std::mt19937_64 rng(9);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 40; ++i) {
      const auto y = random_elem(rng, l, 6, 20, 0);
      const auto ly = y.scaled(PadicInt(l, 6, l));
      const auto one = LambdaElem::one(l, 6, 20);
      EXPECT_EQ(log_1p_l(exp_l(y) - one), ly);
      EXPECT_EQ(exp_l(log_1p_l(ly).divide_by_l_power(1)), (one + ly).with_prec(5));
    }
  }
}

TEST(OnePlusTPow, Values) {
  EXPECT_EQ(one_plus_T_pow(PadicInt(3, 8, 3), 6), poly(3, 7, 6, {1, 3, 3, 1}));
  EXPECT_EQ(one_plus_T_pow(PadicInt::from_rational(3, 2, 1, 2), 2), poly(3, 2, 2, {1, 5, 1}));
  EXPECT_EQ(one_plus_T_pow(PadicInt(5, 4, 0), 10), LambdaElem::one(5, 3, 10));
  // Lift route and binomial route agree where both are defined.
  const PadicInt z(5, 6, 12345);
  EXPECT_TRUE(one_plus_T_pow(z, 20).congruent(one_plus_T_pow_lift(z, 20), 5, 20));
  // (1+T)^z = 1 + zT mod T^2.
  EXPECT_EQ(one_plus_T_pow_lift(z, 20).coeff(1), z.residue());
}

TEST(IntegralExp, Values) {
  EXPECT_EQ(integral_exp(LambdaElem::zero(3, 4, 10)), LambdaElem::one(3, 4, 10));
  const auto f = integral_exp(poly(3, 4, 10, {0, 0, -2}));
  EXPECT_EQ(f.coeff(1), 0u);
  EXPECT_EQ(f.coeff(2), 1u);
  try {
    integral_exp(poly(3, 4, 10, {0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ExpOutsideDomain);
  }
}

TEST(IntegralExp, Multiplicative) {
  std::mt19937_64 rng(13);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 20; ++i) {
      const auto a = random_elem(rng, l, 5, 25, 2);
      const auto b = random_elem(rng, l, 5, 25, 2);
      // The sum is taken over the integers so that E sees the same lifts.
      EXPECT_EQ(integral_exp(a.lifted(6) + b.lifted(6)).with_prec(5), integral_exp(a) * integral_exp(b));
      // On residue classes E is only defined up to integral_exp_loss digits.
      const int stable = 5 - integral_exp_loss(l, 25);
      EXPECT_TRUE(integral_exp(a + b).congruent(integral_exp(a) * integral_exp(b), stable, 25));
    }
  }
}

TEST(IntegralExp, AgreesWithDirectSeriesOracle) {
  std::mt19937_64 rng(17);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 10; ++i) {
      const auto y = random_elem(rng, l, 4, 12, 2);
      std::vector<std::int64_t> lift;
      for (auto c : y.coeffs()) lift.push_back(static_cast<std::int64_t>(c));
      const auto expected = oracle::integral_exp_direct(lift, l, 4, 12);
      const auto got = integral_exp(y);
      for (int k = 0; k <= 12; ++k) EXPECT_EQ(got.coeff(k), expected[k]) << "l=" << l << " k=" << k;
    }
  }
}

TEST(IntegralExp, GuardDigitsAreEnough) {
  // Computing from a higher-precision lift must agree at precision N.
  std::mt19937_64 rng(19);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 10; ++i) {
      const auto y = random_elem(rng, l, 4, 40, 2);
      EXPECT_EQ(integral_exp(y), integral_exp(y.lifted(8)).with_prec(4));
    }
  }
}

TEST(IntegralLog, Values) {
  EXPECT_TRUE(integral_log(poly(3, 6, 20, {1, 1})).is_zero());
  // L(exp(3T)) = (3 - psi)(T) = -3T^2 - T^3.
  const auto v = integral_log(exp_l(poly(3, 6, 20, {0, 1})));
  EXPECT_EQ(v, poly(3, 5, 20, {0, 0, -3, -1}));
  EXPECT_EQ(l_minus_psi(poly(3, 6, 20, {0, 1})), poly(3, 6, 20, {0, 0, -3, -1}));
  EXPECT_EQ(l_minus_psi(poly(5, 6, 20, {7})), poly(5, 6, 20, {28}));
  EXPECT_THROW(integral_log(poly(3, 6, 20, {3, 1})), Error);
}

TEST(IntegralLog, InverseOfIntegralExp) {
  std::mt19937_64 rng(23);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 30; ++i) {
      const auto y = random_elem(rng, l, 6, 30, 2);
      EXPECT_EQ(integral_log(integral_exp(y)), y.with_prec(5));
      auto u = random_elem(rng, l, 6, 30, 2);
      u.set_coeff(0, 1);
      const int g = integral_exp_loss(l, 30);
      EXPECT_EQ(integral_exp(integral_log(u.lifted(6 + g))).with_prec(5), u.with_prec(5));
    }
  }
}

TEST(IntegralLog, HomomorphismKernelImage) {
  std::mt19937_64 rng(29);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 30; ++i) {
      const auto a = random_unit(rng, l, 6, 30);
      const auto b = random_unit(rng, l, 6, 30);
      EXPECT_EQ(integral_log(a * b), integral_log(a) + integral_log(b));
      EXPECT_EQ(integral_log(a).coeff(1), 0u);
      const auto zeta = teichmueller(PadicInt(l, 6, static_cast<std::int64_t>(1 + rng() % (l - 1))));
      const PadicInt z(l, 6, static_cast<std::int64_t>(rng() % 100000));
      EXPECT_TRUE(integral_log(one_plus_T_pow_lift(z, 30).scaled(zeta)).is_zero());
    }
  }
}

TEST(IntegralLog, ExpOfMultipleOfL) {
  // exp(l y) = (1+T)^(l y_1) E((l - psi) y) for y in T Lambda.
  std::mt19937_64 rng(31);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 30; ++i) {
      const auto y = random_elem(rng, l, 6, 30, 1);
      // Both factors see y through the same integer lift.
      const auto wide = y.lifted(6 + detail::floor_log(30, l));
      const PadicInt ly1 = wide.coeff_padic(1) * PadicInt(l, wide.prec(), l);
      EXPECT_EQ(exp_l(y), (one_plus_T_pow_lift(ly1, 30) * integral_exp(l_minus_psi(wide))).with_prec(6));
      EXPECT_EQ(integral_log(exp_l(y)), l_minus_psi(y).with_prec(5));
    }
  }
}

TEST(DecomposeLambdaUnit, Examples) {
  const auto f = decompose_lambda_unit(poly(3, 6, 20, {5}));
  EXPECT_EQ(f.c.residue(), 5u);
  EXPECT_TRUE(f.z.is_zero());
  EXPECT_TRUE(f.y.is_zero());
  EXPECT_EQ(f.y.trunc(), 20);

  const auto g = decompose_lambda_unit(poly(3, 6, 20, {1, 2, 1}));
  EXPECT_EQ(g.c.residue(), 1u);
  EXPECT_EQ(g.z.residue(), 2u);
  EXPECT_TRUE(g.y.is_zero());

  const auto h = decompose_lambda_unit(poly(3, 6, 20, {1, 0, 1}));
  EXPECT_TRUE(h.z.is_zero());
  EXPECT_EQ(recompose_lambda_unit(h), poly(3, 5, 20, {1, 0, 1}));
  EXPECT_TRUE(integral_exp(h.y).congruent(poly(3, 5, 20, {1, 0, 1}), 5, 20));
}

TEST(DecomposeLambdaUnit, RoundTrip) {
  std::mt19937_64 rng(37);
  for (std::int64_t l : {3, 5, 7}) {
    for (int i = 0; i < 30; ++i) {
      const auto e = random_unit(rng, l, 6, 40);
      const auto f = decompose_lambda_unit(e);
      EXPECT_EQ(f.y.coeff(0), 0u);
      EXPECT_EQ(f.y.coeff(1), 0u);
      EXPECT_EQ(recompose_lambda_unit(f), e.with_prec(5));
    }
  }
}
