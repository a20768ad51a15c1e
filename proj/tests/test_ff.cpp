#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "rankstore/ext_field.hpp"
#include "rankstore/matrix.hpp"

using namespace rankstore;

namespace {

// Oracle: the span of v enumerated element by element. Its dimension is the
// base-q log of its size.
std::size_t brute_force_rank(const ExtField& f, const ExtVector& v) {
  std::set<std::vector<Digit>> span{f.zero().digits()};
  for (const auto& e : v) {
    std::set<std::vector<Digit>> next;
    for (const auto& s : span)
      for (Digit l = 0; l < f.q(); ++l) next.insert((f.from_digits(s) + e.scaled(l)).digits());
    span = std::move(next);
  }
  std::size_t dim = 0;
  for (std::size_t size = 1; size < span.size(); size *= f.q()) ++dim;
  return dim;
}

// Oracle for the modulus choice: counting through monic degree-n candidates in
// the documented order, the first one with no factor of degree <= n/2.
std::vector<Digit> first_irreducible_by_trial(const PrimeField& bf, std::size_t n) {
  const Digit q = bf.q();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  for (std::size_t code = 0; code < total; ++code) {
    poly::Poly cand(n + 1, 0);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= q) cand[i] = static_cast<Digit>(c % q);
    cand[n] = 1;
    bool reducible = false;
    for (std::size_t d = 1; d <= n / 2 && !reducible; ++d) {
      std::size_t divs = 1;
      for (std::size_t i = 0; i < d; ++i) divs *= q;
      for (std::size_t dc = 0; dc < divs && !reducible; ++dc) {
        poly::Poly div(d + 1, 0);
        std::size_t t = dc;
        for (std::size_t i = 0; i < d; ++i, t /= q) div[i] = static_cast<Digit>(t % q);
        div[d] = 1;
        auto r = poly::mod(bf, cand, div);
        poly::trim(r);
        if (r.empty()) reducible = true;
      }
    }
    if (!reducible) return cand;
  }
  return {};
}

}  // namespace

TEST(PrimeField, RejectsNonPrimeAndTwo) {
  EXPECT_THROW(PrimeField(2), ParameterError);
  EXPECT_THROW(PrimeField(9), ParameterError);
  EXPECT_NO_THROW(PrimeField(11));
}

TEST(PrimeField, InverseAndArithmetic) {
  PrimeField f(7);
  for (Digit a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_THROW(f.inv(0), DivisionByZero);
  EXPECT_EQ(f.reduce(-1), 6u);
  EXPECT_EQ(f.sub(2, 5), 4u);
}

TEST(ExtField, ModulusIsSmallestIrreducible) {
  for (Digit q : {3u, 5u, 11u})
    for (std::size_t n = 1; n <= 4; ++n) {
      if (q == 11 && n > 3) continue;
      auto f = ExtField::make(q, n);
      EXPECT_EQ(f.params().modulus, first_irreducible_by_trial(PrimeField(q), n)) << "q=" << q << " n=" << n;
    }
  EXPECT_EQ(ExtField::make(3, 2).params().modulus, (std::vector<Digit>{1, 0, 1}));
}

TEST(ExtField, ModulusMustBeIrreducible) {
  EXPECT_THROW(ExtField::with_modulus(3, {2, 0, 1}), ParameterError);  // x^2 - 1
  EXPECT_NO_THROW(ExtField::with_modulus(3, {1, 0, 1}));
}

TEST(ExtField, XSquaredIsTwoInF9) {
  auto f = ExtField::make(3, 2);
  auto x = f.basis(1);
  EXPECT_EQ(x * x, f.embed(2));
}

TEST(ExtField, InverseOfXIsTwoX) {
  auto f = ExtField::make(3, 2);
  auto x = f.basis(1);
  // Exhaustive search over the nine elements.
  std::optional<ExtElem> found;
  for (Digit a = 0; a < 3; ++a)
    for (Digit b = 0; b < 3; ++b) {
      auto c = f.from_digits({a, b});
      if (x * c == f.one()) found = c;
    }
  ASSERT_TRUE(found);
  EXPECT_EQ(*found, f.parse("0.2"));
  EXPECT_EQ(x.inverse(), *found);
  EXPECT_EQ(f.one().inverse(), f.one());
  EXPECT_THROW(f.zero().inverse(), DivisionByZero);
}

TEST(ExtField, Identities) {
  auto f = ExtField::make(3, 5);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    auto a = f.random(rng);
    EXPECT_EQ(a + f.zero(), a);
    EXPECT_EQ(a * f.one(), a);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), f.one());
  }
}

TEST(ExtField, FieldAxiomsOnRandomTriples) {
  for (auto [q, n] : {std::pair<Digit, std::size_t>{3, 4}, {5, 3}, {11, 6}}) {
    auto f = ExtField::make(q, n);
    Rng rng(q * 100 + n);
    for (int i = 0; i < 1000; ++i) {
      auto a = f.random(rng), b = f.random(rng), c = f.random(rng);
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a + b, b + a);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a - a, f.zero());
    }
  }
}

TEST(ExtField, MixedFieldsRejected) {
  auto f = ExtField::make(3, 2);
  auto g = ExtField::make(3, 3);
  EXPECT_THROW((void)(f.one() + g.one()), ParameterError);
  EXPECT_THROW((void)(f.one() * g.one()), ParameterError);
}

TEST(Frobenius, BasicFacts) {
  auto f = ExtField::make(3, 4);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    auto a = f.random(rng), b = f.random(rng);
    EXPECT_EQ(a.frobenius(0), a);
    EXPECT_EQ(a.frobenius(4), a);
    EXPECT_EQ(a.frobenius(1), a * a * a);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_EQ((a + b).frobenius(i), a.frobenius(i) + b.frobenius(i));
      EXPECT_EQ((a * b).frobenius(i), a.frobenius(i) * b.frobenius(i));
    }
  }
  for (Digit v = 0; v < 3; ++v)
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(f.embed(v).frobenius(i), f.embed(v));
}

TEST(RankOverBase, Examples) {
  auto f = ExtField::make(3, 4);
  EXPECT_EQ(rank_over_base(f, ExtVector(5, f.zero())), 0u);
  Rng rng(3);
  auto a = f.random(rng);
  while (a.is_zero()) a = f.random(rng);
  EXPECT_EQ(rank_over_base(f, ExtVector{a, a.scaled(2), a.scaled(1)}), 1u);
  EXPECT_EQ(rank_over_base(f, ExtVector{f.basis(0), f.basis(1), f.basis(2)}), 3u);
}

TEST(RankOverBase, MatchesBruteForceSpan) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto f = ExtField::make(3, n);
    Rng rng(10 + n);
    for (int t = 0; t < 200; ++t) {
      ExtVector v;
      const std::size_t len = 1 + rng.index(3);
      for (std::size_t i = 0; i < len; ++i) v.push_back(rng.below(3) ? f.random(rng) : f.zero());
      ASSERT_EQ(rank_over_base(f, v), brute_force_rank(f, v));
    }
  }
}

TEST(RankOverBase, InvariantUnderScalingAndPermutation) {
  auto f = ExtField::make(3, 5);
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    ExtVector v;
    for (int i = 0; i < 4; ++i) v.push_back(f.random(rng));
    const auto r = rank_over_base(f, v);
    auto w = v;
    const auto k = rng.index(4);
    w[k] = w[k].scaled(2);
    std::reverse(w.begin(), w.end());
    std::swap(w[0], w[2]);
    ASSERT_EQ(rank_over_base(f, w), r);
  }
}

TEST(SolveLinear, Examples) {
  PrimeField bf(3);
  auto id = identity(bf, 3);
  std::vector<Digit> b{2, 0, 1};
  EXPECT_EQ(*solve_linear(bf, id, b).x, b);

  BaseMatrix a(2, 2, 1);
  auto none = solve_linear(bf, a, std::vector<Digit>{0, 1});
  EXPECT_FALSE(none.x);
  EXPECT_EQ(none.rank, 1u);
  EXPECT_EQ(none.nullspace.size(), 1u);
  EXPECT_THROW(solve_linear(bf, a, std::vector<Digit>{0, 1, 2}), ParameterError);
}

TEST(SolveLinear, RecoversKnownSolution) {
  PrimeField bf(3);
  Rng rng(5);
  int done = 0;
  while (done < 100) {
    BaseMatrix a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = rng.below(3);
    if (rank(bf, a) < 4) continue;
    std::vector<Digit> x0(4);
    for (auto& v : x0) v = rng.below(3);
    std::vector<Digit> b(4, 0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) b[i] = bf.add(b[i], bf.mul(a(i, j), x0[j]));
    auto s = solve_linear(bf, a, b);
    ASSERT_TRUE(s.x);
    ASSERT_EQ(*s.x, x0);
    ++done;
  }
}

TEST(SolveLinear, WorksOverExtensionField) {
  auto f = ExtField::make(3, 3);
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    Matrix<ExtElem> a(3, 4, f.zero());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = f.random(rng);
    ExtVector b{f.random(rng), f.random(rng), f.random(rng)};
    auto s = solve_linear(f, a, b);
    if (!s.x) continue;
    for (std::size_t i = 0; i < 3; ++i) {
      ExtElem acc = f.zero();
      for (std::size_t j = 0; j < 4; ++j) acc += a(i, j) * (*s.x)[j];
      ASSERT_EQ(acc, b[i]);
    }
    for (const auto& nv : s.nullspace)
      for (std::size_t i = 0; i < 3; ++i) {
        ExtElem acc = f.zero();
        for (std::size_t j = 0; j < 4; ++j) acc += a(i, j) * nv[j];
        ASSERT_TRUE(acc.is_zero());
      }
  }
}

TEST(Serialization, RoundTrip) {
  auto f = ExtField::make(3, 3);
  EXPECT_EQ(f.parse("2.0.1").to_string(), "2.0.1");
  EXPECT_EQ(f.parse("2.0.1"), f.embed(2) + f.basis(2));
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    auto a = f.random(rng);
    EXPECT_EQ(f.parse(a.to_string()), a);
  }
  EXPECT_THROW(f.parse("3.0.0"), ParameterError);
  EXPECT_THROW(f.parse("1.0"), ParameterError);
  EXPECT_THROW(f.parse("1..0"), ParameterError);
  auto g = ExtField::make(11, 2);
  EXPECT_EQ(g.parse("10.7").to_string(), "10.7");
}
