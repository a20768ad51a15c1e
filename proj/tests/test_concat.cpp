#include <gtest/gtest.h>

#include "rankstore/concat.hpp"

using namespace rankstore;

namespace {

ConcatScheme zigzag_scheme(std::size_t t = 1) { return make_scheme(plan_params(4, 3, t, 5, 4), zigzag_5_3()); }

std::vector<std::vector<std::size_t>> all_subsets() {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b)
      for (std::size_t c = b + 1; c < 5; ++c) out.push_back({a, b, c});
  return out;
}

NodeBlocks pick(const NodeBlocks& y, const std::vector<std::size_t>& idx) {
  NodeBlocks out;
  for (auto i : idx) out.push_back(y[i]);
  return out;
}

// Independent summation of bound (3).
std::size_t capacity_oracle(std::size_t alpha, std::size_t beta, std::size_t k, std::size_t d, std::size_t t) {
  std::size_t total = 0;
  for (std::size_t i = 2 * t + 1; i <= k; ++i) {
    const std::size_t link = (d - i + 1) * beta;
    total += link < alpha ? link : alpha;
  }
  return total;
}

}  // namespace

TEST(PlanParams, ZigzagScenario) {
  auto p = plan_params(4, 3, 1, 5, 4);
  EXPECT_EQ(p.K, 4u);
  EXPECT_EQ(p.delta, 9u);
  EXPECT_EQ(p.m, 12u);
  EXPECT_EQ(p.N, 12u);
  EXPECT_EQ(p.beta, 2u);
  EXPECT_TRUE(p.theorem1_hypothesis());
}

TEST(PlanParams, NoAdversary) {
  auto p = plan_params(4, 3, 0, 5, 4);
  EXPECT_EQ(p.K, 12u);
  EXPECT_EQ(p.delta, 1u);
}

TEST(PlanParams, HadamardScenario) {
  auto p = plan_params(16, 3, 1, 5, 4, 11);
  EXPECT_EQ(p.K, 16u);
  EXPECT_EQ(p.delta, 33u);
  EXPECT_EQ(p.m, 48u);
  EXPECT_EQ(p.beta, 8u);
}

TEST(PlanParams, Infeasible) {
  try {
    plan_params(4, 3, 2, 5, 4);
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("k > 2t"), std::string::npos);
  }
  EXPECT_THROW(plan_params(4, 3, 1, 3, 2), ParameterError);
  EXPECT_THROW(plan_params(3, 3, 1, 5, 4), ParameterError);
  EXPECT_THROW(plan_params(4, 3, 1, 5, 5), ParameterError);
  EXPECT_THROW(plan_params_with_dimension(4, 3, 1, 5, 4, 13), ParameterError);
  EXPECT_EQ(plan_params_with_dimension(4, 3, 1, 5, 4, 5).delta, 8u);
}

TEST(ResilienceCapacity, Examples) {
  EXPECT_EQ(resilience_capacity(4, 2, 3, 4, 1), 4u);
  EXPECT_EQ(resilience_capacity(4, 2, 3, 4, 0), 12u);
  EXPECT_THROW(resilience_capacity(4, 2, 3, 4, 2), ParameterError);
  EXPECT_THROW(resilience_capacity(4, 2, 4, 4, 2), ParameterError);
}

TEST(ResilienceCapacity, MsrPointMatchesOracleAndScheme) {
  for (std::size_t k = 1; k <= 6; ++k)
    for (std::size_t d = k; d <= k + 4; ++d)
      for (std::size_t t = 0; 2 * t < k; ++t) {
        const std::size_t alpha = 2 * (d - k + 1);
        const std::size_t beta = alpha / (d - k + 1);
        const auto cap = resilience_capacity(alpha, beta, k, d, t);
        ASSERT_EQ(cap, capacity_oracle(alpha, beta, k, d, t));
        ASSERT_EQ(cap, alpha * (k - 2 * t));
        ASSERT_EQ(plan_params(alpha, k, t, d + 1, d).K, cap);
        ASSERT_EQ(resilience_capacity(alpha, beta, k, d, 0), alpha * k);
      }
  // Away from the MSR point the min() truncates.
  EXPECT_EQ(resilience_capacity(4, 1, 3, 4, 0), capacity_oracle(4, 1, 3, 4, 0));
  EXPECT_EQ(resilience_capacity(4, 1, 3, 4, 0), 2u + 3u + 4u);
}

TEST(StoredFile, ReshapeIsBijective) {
  auto s = zigzag_scheme();
  Rng rng(1);
  auto f = random_file(s, rng);
  ASSERT_EQ(f.message.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(f.message[i].digits()[j], f.raw[i * 12 + j]);
  EXPECT_EQ(file_from_message(f.message).raw, f.raw);
  EXPECT_THROW(file_from_digits(s, std::vector<Digit>(47, 0)), ParameterError);
}

TEST(Store, ZeroFileAndSystematicPrefix) {
  auto s = zigzag_scheme();
  auto zero = file_from_digits(s, std::vector<Digit>(48, 0));
  for (const auto& b : store(s, zero)) EXPECT_TRUE(all_zero(b));
  Rng rng(2);
  auto f = random_file(s, rng);
  auto y = store(s, f);
  auto c = gab_encode(s.outer, f.message);
  EXPECT_EQ(join_blocks({y[0], y[1], y[2]}), c);
}

TEST(Store, Injective) {
  auto s = zigzag_scheme();
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    auto a = random_file(s, rng), b = random_file(s, rng);
    if (a == b) continue;
    ASSERT_NE(store(s, a), store(s, b));
  }
}

TEST(Collect, ErrorFreeEverySubset) {
  auto s = zigzag_scheme();
  Rng rng(4);
  auto f = random_file(s, rng);
  auto y = store(s, f);
  for (const auto& sub : all_subsets()) {
    auto r = collect(s, pick(y, sub), sub);
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(*r.file, f);
  }
  EXPECT_THROW(collect(s, pick(y, {0, 1}), {0, 1}), ParameterError);
}

TEST(Collect, Example4EndToEnd) {
  auto s = zigzag_scheme();
  auto bf = s.inner.field();
  Rng rng(5);
  auto f = random_file(s, rng);
  auto y = store(s, f);
  ExtVector e;
  for (int i = 0; i < 4; ++i) e.push_back(s.field.random(rng));
  auto polluted = y;
  polluted[0] = add(y[0], e);
  auto plan = ac_find_repair_plan(s.inner, 1);
  polluted[1] = ac_repair(s.inner, polluted, plan);
  const auto b2 = plan.propagation(bf, 0);
  EXPECT_EQ(b2, matrix_from_rows({{2, 0, 1, 0}, {0, 2, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
  auto r = collect(s, pick(polluted, {0, 1, 2}), {0, 1, 2});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.file, f);
  // c~ = c + e [I, B2, 0]
  ExtVector expect = gab_encode(s.outer, f.message);
  auto eb = times(s.field, e, b2);
  for (std::size_t i = 0; i < 4; ++i) {
    expect[i] += e[i];
    expect[4 + i] += eb[i];
  }
  EXPECT_EQ(r.inner_word, expect);
  EXPECT_LE(r.diagnostics.estimated_error_rank, 4u);
}

TEST(Collect, StaticCorruptionRandomTrials) {
  auto s = zigzag_scheme();
  Rng rng(6);
  const auto subsets = all_subsets();
  for (int trial = 0; trial < 200; ++trial) {
    auto f = random_file(s, rng);
    auto y = store(s, f);
    const auto bad = rng.index(5);
    for (auto& v : y[bad]) v += s.field.random(rng);
    const auto& sub = subsets[static_cast<std::size_t>(trial) % subsets.size()];
    auto r = collect(s, pick(y, sub), sub);
    ASSERT_TRUE(r.ok()) << r.diagnostics.reason;
    ASSERT_EQ(*r.file, f);
  }
}

TEST(Collect, ErasedNodesBecomeErasureDirections) {
  // Two erased nodes are 8 directions, within delta - 1 = 8.
  auto s = zigzag_scheme();
  Rng rng(7);
  for (const auto& sub : all_subsets()) {
    auto f = random_file(s, rng);
    auto y = store(s, f);
    auto seen = pick(y, sub);
    for (auto& v : seen[0]) v = s.field.random(rng);
    for (auto& v : seen[2]) v = s.field.random(rng);
    auto r = collect(s, seen, sub, {sub[0], sub[2]});
    ASSERT_TRUE(r.ok()) << r.diagnostics.reason;
    ASSERT_EQ(*r.file, f);
  }
  auto y = store(s, random_file(s, rng));
  EXPECT_THROW(collect(s, pick(y, {0, 1, 2}), {0, 1, 2}, {4}), ParameterError);
}

TEST(Collect, AggregateErrorRankAtMostTAlpha) {
  auto s = zigzag_scheme();
  Rng rng(8);
  auto f = random_file(s, rng);
  auto y = store(s, f);
  y[0] = add(y[0], ExtVector{s.field.random(rng), s.field.random(rng), s.field.random(rng), s.field.random(rng)});
  for (std::size_t failed = 1; failed < 5; ++failed) y[failed] = ac_repair(s.inner, y, ac_find_repair_plan(s.inner, failed));
  const auto c = gab_encode(s.outer, f.message);
  for (const auto& sub : all_subsets()) {
    auto r = collect(s, pick(y, sub), sub);
    EXPECT_LE(rank_over_base(s.field, rankstore::sub(r.inner_word, c)), 4u);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(*r.file, f);
  }
}

TEST(BytePacking, RoundTrip) {
  EXPECT_EQ(digits_per_byte(3), 6u);
  EXPECT_EQ(digits_per_byte(11), 3u);
  EXPECT_EQ(digits_per_byte(257), 1u);
  std::vector<std::uint8_t> bytes;
  for (int i = 0; i < 256; ++i) bytes.push_back(static_cast<std::uint8_t>(i));
  for (Digit q : {3u, 5u, 11u, 257u}) {
    auto d = bytes_to_digits(bytes, q);
    EXPECT_EQ(d.size(), bytes.size() * digits_per_byte(q));
    d.insert(d.end(), 7, 0);
    EXPECT_EQ(digits_to_bytes(d, q, bytes.size()), bytes);
  }
  // 255 = 100110 in base 3, most significant digit first.
  EXPECT_EQ(bytes_to_digits({255}, 3), (std::vector<Digit>{1, 0, 0, 1, 1, 0}));
  EXPECT_THROW(digits_to_bytes({2, 2, 2, 2, 2, 2}, 3, 1), ParameterError);
}
