#include <gtest/gtest.h>

#include <random>

#include "iwalog/group_ring.hpp"
#include "random_group.hpp"

using namespace iwalog;
using namespace iwalog::testing;

namespace {

constexpr int kN = 6;
constexpr int kM = 40;
// Products through psi(T)^-1 eat into the window; inputs carry the margin.
constexpr int kHi = 100;

GroupRingElem mono(const AbelianLGroup& g, int h, int n = kN, int hi = kHi) {
  return GroupRingElem::monomial(g, h, WedgeElem::one(g.l(), n, hi));
}

GroupRingElem one(const AbelianLGroup& g, int n = kN, int hi = kHi) { return GroupRingElem::one(g, n, hi); }

bool same(const GroupRingElem& a, const GroupRingElem& b, int n, int min_window = kM) {
  const int m = std::min(a.window(), b.window());
  EXPECT_GE(m, min_window);
  return a.congruent(b, n, m);
}

// Image in Lambda_^[H / <h0>]: each coefficient moves to its coset's smallest element.
std::vector<WedgeElem> coset_sums(const GroupRingElem& x, int h0) {
  const AbelianLGroup& g = x.group();
  std::vector<WedgeElem> out(static_cast<std::size_t>(g.order()), WedgeElem::zero(g.l(), x.prec(), x.hi()));
  for (int h = 0; h < g.order(); ++h) {
    int rep = h;
    for (int j = 1; j < g.l(); ++j) rep = std::min(rep, g.mul(h, g.pow(h0, j)));
    out[static_cast<std::size_t>(rep)] = out[static_cast<std::size_t>(rep)] + x.coeff(h);
  }
  return out;
}

}  // namespace

TEST(AbelianLGroup, MixedRadix) {
  const AbelianLGroup g = AbelianLGroup::from_orders(3, {9, 3});
  EXPECT_EQ(g.order(), 27);
  EXPECT_EQ(g.exponents(), (std::vector<int>{2, 1}));
  const int h = g.element({4, 2});
  EXPECT_EQ(g.coordinates(h), (std::vector<std::int64_t>{4, 2}));
  EXPECT_EQ(g.mul(h, g.inverse(h)), 0);
  EXPECT_EQ(g.pow(h, 3), g.element({3, 0}));
  EXPECT_EQ(g.element_order(h), 9);
  EXPECT_EQ(g.element_order(g.generator(1)), 3);
  EXPECT_EQ(AbelianLGroup(3, {2}).radical_nilpotency(), 9);
  EXPECT_EQ(AbelianLGroup(3, {1, 1}).radical_nilpotency(), 5);
  EXPECT_THROW(AbelianLGroup::from_orders(3, {6}), Error);
  EXPECT_THROW(AbelianLGroup(4, {1}), Error);
}

TEST(GroupRing, AugmentationAndProducts) {
  const AbelianLGroup g(3, {2});
  const std::int64_t l = 3;
  const int h = g.generator(0);
  EXPECT_TRUE(augmentation(mono(g, h)).congruent(WedgeElem::one(l, kN, kHi), kN, kHi));
  EXPECT_TRUE(augmentation(mono(g, h) - one(g)).is_zero());
  const WedgeElem t = WedgeElem::monomial(l, kN, kHi, 1, 1);
  const WedgeElem aug = augmentation(GroupRingElem::monomial(g, h, t) + mono(g, g.pow(h, 5)));
  EXPECT_TRUE(aug.congruent(t + WedgeElem::one(l, kN, kHi), kN, kHi));

  EXPECT_TRUE(same(mono(g, h) * mono(g, g.inverse(h)), one(g), kN));
  EXPECT_TRUE(augmentation((mono(g, h) - one(g)).pow(9)).is_zero());
  const int h0 = order_l_element(g);
  GroupRingElem norm = one(g);
  for (int j = 1; j < l; ++j) norm = norm + mono(g, g.pow(h0, j));
  EXPECT_TRUE(((mono(g, h0) - one(g)) * norm).is_zero());
}

TEST(GroupRing, PsiTransportsToPowers) {
  for (const auto& g : test_groups()) {
    const std::int64_t l = g.l();
    for (int h = 0; h < g.order(); ++h) EXPECT_TRUE(same(psi_H(mono(g, h)), mono(g, g.pow(h, l)), kN));
    EXPECT_TRUE(same(psi_H(mono(g, order_l_element(g))), one(g), kN));
    const WedgeElem t = WedgeElem::monomial(l, kN, kHi, 1, 1);
    const int h = g.generator(0);
    EXPECT_TRUE(same(psi_H(GroupRingElem::monomial(g, h, t)),
                     GroupRingElem::monomial(g, g.pow(h, l), psi_wedge(t).with_hi(kHi)), kN));
  }
}

TEST(GroupRing, FrobeniusCongruence) {
  std::mt19937_64 rng(41);
  for (const auto& g : test_groups()) {
    for (int i = 0; i < 5; ++i) {
      GroupRingElem x(g, kN, kHi);
      for (int h = 0; h < g.order(); ++h) x.set_coeff(h, random_wedge(rng, g.l(), kN, kHi, 1));
      EXPECT_TRUE(same(x.pow(static_cast<std::uint64_t>(g.l())), psi_H(x), 1));
    }
  }
}

TEST(InvertUnitH, Examples) {
  std::mt19937_64 rng(42);
  for (const auto& g : test_groups()) {
    const std::int64_t l = g.l();
    for (int h = 0; h < g.order(); ++h) EXPECT_TRUE(same(invert_unit_H(mono(g, h)), mono(g, g.inverse(h)), kN));
    const WedgeElem t = WedgeElem::monomial(l, kN, kHi, 1, 1);
    const int h = g.generator(0);
    const GroupRingElem e = one(g) + GroupRingElem::monomial(g, h, t) - GroupRingElem::embed(g, t);
    EXPECT_TRUE(same(invert_unit_H(e) * e, one(g), kN));
    for (int i = 0; i < 5; ++i) {
      const GroupRingElem u = random_unit_H(rng, g, kN, kHi, 2);
      EXPECT_TRUE(same(u * invert_unit_H(u), one(g), kN));
    }
    EXPECT_THROW(invert_unit_H(one(g).scaled(PadicInt(l, kN, l))), Error);
  }
}

TEST(IntegralLogH, Kernel) {
  std::mt19937_64 rng(43);
  for (const auto& g : test_groups()) {
    const std::int64_t l = g.l();
    for (int i = 0; i < 20; ++i) {
      const PadicInt zeta = teichmueller(PadicInt(l, kN, 1 + static_cast<std::int64_t>(i % (l - 1))));
      const PadicInt z = PadicInt::from_residue(l, kN, rng() % detail::checked_pow(l, kN));
      const WedgeElem base = WedgeElem::from_lambda(one_plus_T_pow_lift(z, kHi)).scaled(zeta);
      const int h = static_cast<int>(rng() % static_cast<std::uint64_t>(g.order()));
      const GroupRingElem v = integral_log_H(GroupRingElem::monomial(g, h, base));
      EXPECT_EQ(v.prec(), kN - 1);
      EXPECT_GE(v.window(), kM);
      EXPECT_TRUE(vanishes(v, kN - 1));
    }
  }
}

TEST(IntegralLogH, OnePlusTTimesAugmentationIdealFixture) {
  const AbelianLGroup g(3, {1});
  const int h = g.generator(0);
  const WedgeElem t = WedgeElem::monomial(3, kN, kHi, 1, 1);
  const GroupRingElem e = one(g) + GroupRingElem::monomial(g, h, t) - GroupRingElem::embed(g, t);
  const G2NormalForm nf = mod_g2(integral_log_H(e));
  EXPECT_TRUE(nf.eps.congruent(WedgeElem::zero(3, kN - 1, kHi), kN - 1, nf.eps.window()));
  ASSERT_EQ(nf.grad.size(), 1u);
  // -2T - 3T^2 - T^3, read mod 3.
  const WedgeElem want = w(3, 1, kHi, {{1, -2}, {2, -3}, {3, -1}});
  EXPECT_GE(nf.grad[0].window(), kM);
  EXPECT_TRUE(nf.grad[0].congruent(want, 1, nf.grad[0].window()));
  EXPECT_TRUE(lemma4_congruence_check(e));
}

TEST(IntegralLogH, HomomorphismAndAugmentation) {
  std::mt19937_64 rng(44);
  for (const auto& g : test_groups()) {
    for (int i = 0; i < 5; ++i) {
      const GroupRingElem e1 = random_unit_H(rng, g, kN, kHi, 1);
      const GroupRingElem e2 = random_unit_H(rng, g, kN, kHi, 1);
      const GroupRingElem l1 = integral_log_H(e1);
      EXPECT_TRUE(same(integral_log_H(e1 * e2), l1 + integral_log_H(e2), kN - 1));
      const WedgeElem a = augmentation(l1);
      const WedgeElem b = integral_log_wedge(augmentation(e1));
      EXPECT_TRUE(a.congruent(b, kN - 1, std::min(a.window(), b.window())));
    }
  }
}

TEST(IntegralLogH, SplittingCompatibility) {
  std::mt19937_64 rng(45);
  for (const auto& g : test_groups()) {
    for (int i = 0; i < 5; ++i) {
      const WedgeElem e = random_unit(rng, g.l(), kN, kHi, 2);
      const GroupRingElem lhs = integral_log_H(GroupRingElem::embed(g, e));
      EXPECT_TRUE(same(lhs, GroupRingElem::embed(g, integral_log_wedge(e)), kN - 1));
    }
  }
}

TEST(IntegralLogH, Errors) {
  const AbelianLGroup g(3, {1});
  EXPECT_THROW(integral_log_H(one(g).scaled(PadicInt(3, kN, 3))), Error);
}

TEST(ModG2, Examples) {
  const AbelianLGroup z9(3, {2});
  const int g1 = z9.generator(0);
  const G2NormalForm a = mod_g2(mono(z9, z9.pow(g1, 4)));
  EXPECT_TRUE(a.eps.congruent(WedgeElem::one(3, kN, kHi), kN, kHi));
  ASSERT_EQ(a.grad.size(), 1u);
  EXPECT_EQ(a.grad[0].prec(), 2);
  EXPECT_EQ(a.grad[0].coeff(0), 4u);

  const AbelianLGroup g(3, {1, 1});
  const GroupRingElem x = (mono(g, g.generator(0)) - one(g)) * (mono(g, g.generator(1)) - one(g));
  const G2NormalForm b = mod_g2(x);
  EXPECT_TRUE(b.eps.is_zero());
  for (const auto& c : b.grad) EXPECT_TRUE(c.is_zero());

  const G2NormalForm c = mod_g2((mono(z9, g1) - one(z9)).scaled(PadicInt(3, kN, 9)));
  EXPECT_TRUE(c.grad[0].is_zero());
}

TEST(ModG2, AdditiveAndKillsSquares) {
  std::mt19937_64 rng(46);
  for (const auto& g : test_groups()) {
    for (int i = 0; i < 5; ++i) {
      const GroupRingElem x = random_one_plus_g(rng, g, kN, kHi, 1) - one(g);
      const GroupRingElem y = random_one_plus_g(rng, g, kN, kHi, 1) - one(g);
      const G2NormalForm sq = mod_g2(x * y);
      EXPECT_TRUE(sq.eps.congruent(WedgeElem::zero(g.l(), kN, kHi), kN, sq.eps.window()));
      for (const auto& c : sq.grad) {
        EXPECT_GE(c.window(), kM);
        EXPECT_TRUE(c.congruent(WedgeElem::zero(g.l(), c.prec(), kHi), c.prec(), c.window()));
      }
      const G2NormalForm nx = mod_g2(x);
      const G2NormalForm ny = mod_g2(y);
      G2NormalForm sum{nx.eps + ny.eps, {}};
      for (std::size_t k = 0; k < nx.grad.size(); ++k) sum.grad.push_back(nx.grad[k] + ny.grad[k]);
      EXPECT_TRUE(g2_congruent(mod_g2(x + y), sum, kN, kHi));
    }
  }
}

TEST(Lemma4Congruence, FixturesAndRandom) {
  std::mt19937_64 rng(47);
  for (const auto& g : test_groups()) {
    EXPECT_TRUE(lemma4_congruence_check(one(g)));
    EXPECT_TRUE(lemma4_congruence_check(mono(g, g.order() - 1)));
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(lemma4_congruence_check(random_one_plus_g(rng, g, kN, kHi, 2)));
    EXPECT_THROW(lemma4_congruence_check(one(g).scaled(PadicInt(g.l(), kN, 2))), Error);
  }
}

TEST(CokerClassH, Examples) {
  std::mt19937_64 rng(48);
  for (const auto& g : test_groups()) {
    for (int i = 0; i < 5; ++i) EXPECT_TRUE(coker_class_H(integral_log_H(random_unit_H(rng, g, kN, kHi, 2))).is_zero());

    const GroupCokerClass a = coker_class_H(mono(g, g.generator(0)) - one(g));
    EXPECT_FALSE(a.is_zero());
    EXPECT_TRUE(a.base.is_zero());
    EXPECT_EQ(a.tensor[0].obstruction.coeff(0), 1u);

    const GroupCokerClass b = coker_class_H(GroupRingElem::embed(g, WedgeElem::monomial(g.l(), kN, kHi, -1, 1)));
    EXPECT_FALSE(b.base.is_zero());
    for (const auto& s : b.tensor) EXPECT_TRUE(s.obstruction.is_zero());
  }
}

TEST(ExpH0, LogInvertsAndInverse) {
  std::mt19937_64 rng(49);
  for (const auto& g : test_groups()) {
    const int h0 = order_l_element(g);
    EXPECT_TRUE(same(exp_h0(h0, GroupRingElem(g, kN, kHi)), one(g), kN));
    for (int i = 0; i < 3; ++i) {
      const GroupRingElem x = random_rad(rng, g, kN, kHi, 1);
      const GroupRingElem e = exp_h0(h0, x);
      const GroupRingElem y = (mono(g, h0, kN - 1) - one(g, kN - 1)) * x.with_prec(kN - 1);
      EXPECT_TRUE(same(integral_log_H(e), y, kN - 1));
      EXPECT_TRUE(same(e * exp_h0(h0, -x), one(g), kN));
    }
  }
  const AbelianLGroup z9(3, {2});
  EXPECT_THROW(exp_h0(z9.generator(0), GroupRingElem(z9, kN, kHi)), Error);
  EXPECT_THROW(exp_h0(3, one(z9)), Error);
}

TEST(CosetTransport, KillsH0MinusOneTimesRadical) {
  std::mt19937_64 rng(50);
  for (const auto& g : test_groups()) {
    const int h0 = order_l_element(g);
    for (int i = 0; i < 5; ++i) {
      const GroupRingElem x = (mono(g, h0) - one(g)) * random_rad(rng, g, kN, kHi, 1);
      for (const auto& c : coset_sums(x, h0)) EXPECT_TRUE(c.is_zero());
    }
  }
}
