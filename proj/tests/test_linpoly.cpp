#include <gtest/gtest.h>

#include "rankstore/linpoly.hpp"

using namespace rankstore;

namespace {

LinearizedPoly random_poly(const ExtField& f, Rng& rng, std::size_t terms) {
  ExtVector c;
  for (std::size_t i = 0; i < terms; ++i) c.push_back(f.random(rng));
  return LinearizedPoly(std::move(c));
}

ExtVector independent_points(const ExtField& f, Rng& rng, std::size_t n) {
  ExtVector p;
  while (p.size() < n) {
    p.push_back(f.random(rng));
    if (rank_over_base(f, p) < p.size()) p.pop_back();
  }
  return p;
}

// Every element of the F_q-span of basis.
ExtVector span_of(const ExtField& f, const ExtVector& basis) {
  ExtVector out{f.zero()};
  for (const auto& b : basis) {
    ExtVector next;
    for (const auto& s : out)
      for (Digit l = 0; l < f.q(); ++l) next.push_back(s + b.scaled(l));
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(LinearizedPoly, ZeroHasNoCoefficients) {
  auto f = ExtField::make(3, 3);
  LinearizedPoly z({f.zero(), f.zero()});
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(z.q_degree());
  EXPECT_EQ(LinearizedPoly::monomial(f.one(), 2).q_degree(), 2u);
}

TEST(Evaluate, Examples) {
  auto f = ExtField::make(3, 4);
  Rng rng(1);
  auto p = random_poly(f, rng, 3);
  EXPECT_TRUE(lp_evaluate(p, f.zero()).is_zero());
  auto xq = LinearizedPoly::monomial(f.one(), 1);
  for (Digit a = 0; a < 3; ++a) EXPECT_EQ(lp_evaluate(xq, f.embed(a)), f.embed(a));
}

TEST(Evaluate, IsFqLinear) {
  auto f = ExtField::make(5, 4);
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    auto p = random_poly(f, rng, 1 + rng.index(4));
    auto a = f.random(rng), b = f.random(rng);
    Digit al = rng.below(5), be = rng.below(5);
    ASSERT_EQ(p(a.scaled(al) + b.scaled(be)), p(a).scaled(al) + p(b).scaled(be));
  }
}

TEST(Interpolate, SinglePoint) {
  auto f = ExtField::make(3, 3);
  Rng rng(3);
  auto g = f.random(rng);
  while (g.is_zero()) g = f.random(rng);
  auto y = f.random(rng);
  ExtVector pts{g}, vals{y};
  auto p = lp_interpolate(f, pts, vals);
  ASSERT_LE(p.coeffs().size(), 1u);
  EXPECT_EQ(p.coeff(0, f), y * g.inverse());
}

TEST(Interpolate, AllZeroValuesGiveZero) {
  auto f = ExtField::make(3, 4);
  Rng rng(4);
  auto pts = independent_points(f, rng, 3);
  ExtVector vals(3, f.zero());
  EXPECT_TRUE(lp_interpolate(f, pts, vals).is_zero());
}

TEST(Interpolate, RoundTripAndUniqueness) {
  auto f = ExtField::make(3, 5);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    auto p = random_poly(f, rng, 3);
    auto pts = independent_points(f, rng, 3);
    ExtVector vals;
    for (const auto& g : pts) vals.push_back(p(g));
    auto r1 = lp_interpolate(f, pts, vals);
    auto r2 = lp_interpolate(f, pts, vals);
    ASSERT_EQ(r1, p);
    ASSERT_EQ(r1, r2);
  }
}

TEST(Interpolate, DependentPointsRejected) {
  auto f = ExtField::make(3, 4);
  auto a = f.basis(1);
  ExtVector pts{a, a.scaled(2)}, vals{f.one(), f.one()};
  EXPECT_THROW(lp_interpolate(f, pts, vals), PreconditionError);
  ExtVector short_vals{f.one()};
  EXPECT_THROW(lp_interpolate(f, pts, short_vals), ParameterError);
}

TEST(MinSubspacePoly, EmptyBasisIsIdentity) {
  auto f = ExtField::make(3, 3);
  EXPECT_EQ(lp_min_subspace_poly(f, ExtVector{}), LinearizedPoly::identity(f));
}

TEST(MinSubspacePoly, SingleVector) {
  auto f = ExtField::make(3, 3);
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    auto b = f.random(rng);
    if (b.is_zero()) continue;
    auto p = lp_min_subspace_poly(f, ExtVector{b});
    // x^q - b^{q-1} x
    LinearizedPoly expect({-(b * b), f.one()});
    ASSERT_EQ(p, expect);
    for (Digit l = 0; l < 3; ++l) ASSERT_TRUE(p(b.scaled(l)).is_zero());
  }
}

TEST(MinSubspacePoly, VanishesExactlyOnSpan) {
  auto f = ExtField::make(3, 3);
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    auto basis = independent_points(f, rng, 2);
    auto p = lp_min_subspace_poly(f, basis);
    ASSERT_EQ(p.q_degree(), 2u);
    ASSERT_EQ(p.coeffs().back(), f.one());
    auto span = span_of(f, basis);
    for (const auto& s : span) ASSERT_TRUE(p(s).is_zero());
    // Nonzero everywhere else, checked over the whole field.
    std::size_t roots = 0;
    for (const auto& e : span_of(f, {f.basis(0), f.basis(1), f.basis(2)}))
      if (p(e).is_zero()) ++roots;
    ASSERT_EQ(roots, span.size());
  }
  auto a = f.basis(0);
  EXPECT_THROW(lp_min_subspace_poly(f, ExtVector{a, a.scaled(2)}), PreconditionError);
}

TEST(Compose, Examples) {
  auto f = ExtField::make(3, 4);
  Rng rng(8);
  auto p = random_poly(f, rng, 3);
  EXPECT_EQ(lp_compose(p, LinearizedPoly::identity(f)), p);
  EXPECT_TRUE(lp_compose(LinearizedPoly{}, p).is_zero());
}

TEST(Compose, PointwiseAndAssociative) {
  auto f = ExtField::make(3, 5);
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    auto a = random_poly(f, rng, 3), b = random_poly(f, rng, 3), c = random_poly(f, rng, 2);
    auto ab = lp_compose(a, b);
    auto ab_c = lp_compose(ab, c), a_bc = lp_compose(a, lp_compose(b, c));
    for (int i = 0; i < 20; ++i) {
      auto x = f.random(rng);
      ASSERT_EQ(ab(x), a(b(x)));
      ASSERT_EQ(ab_c(x), a_bc(x));
    }
  }
}

TEST(DivideLeft, RecoversRightFactor) {
  auto f = ExtField::make(3, 6);
  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    ExtVector vc{f.random(rng), f.random(rng), f.one()};
    if (t % 3 == 0) vc[0] = f.zero();  // lowest coefficient zero
    LinearizedPoly v(vc);
    auto g = random_poly(f, rng, 3);
    auto q = lp_divide_left(lp_compose(v, g), v);
    ASSERT_TRUE(q);
    ASSERT_EQ(*q, g);
  }
  LinearizedPoly v({f.one(), f.one()});
  EXPECT_FALSE(lp_divide_left(LinearizedPoly({f.basis(1)}), LinearizedPoly::monomial(f.one(), 2)));
  EXPECT_THROW(lp_divide_left(v, LinearizedPoly{}), DivisionByZero);
}

TEST(Kernel, DimensionAtMostQDegree) {
  auto f = ExtField::make(3, 3);
  auto all = span_of(f, {f.basis(0), f.basis(1), f.basis(2)});
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t deg = 1 + rng.index(2);
    auto p = random_poly(f, rng, deg + 1);
    if (p.is_zero()) continue;
    std::size_t roots = 0;
    for (const auto& e : all)
      if (p(e).is_zero()) ++roots;
    std::size_t bound = 1;
    for (std::size_t i = 0; i < *p.q_degree(); ++i) bound *= 3;
    ASSERT_LE(roots, bound);
  }
}
