#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rankstore/errors.hpp"
#include "rankstore/ext_field.hpp"
#include "rankstore/matrix.hpp"
#include "rankstore/random.hpp"

namespace rankstore {

/// (n, k) MDS array code over F_q. blocks[i][j] is the alpha x alpha block
/// A_{i,j}; node j stores y_j = sum_i x_i A_{i,j}. Indices are 0-based.
struct ArrayCode {
  std::string name;
  Digit q = 3;
  std::size_t n = 0, k = 0, alpha = 0, d = 0;
  std::vector<std::vector<BaseMatrix>> blocks;

  PrimeField field() const { return PrimeField(q); }
  std::size_t beta() const { return alpha / (d - k + 1); }

  /// Block column j of G: a (k alpha) x alpha matrix.
  BaseMatrix node_matrix(std::size_t j) const {
    BaseMatrix out;
    for (std::size_t i = 0; i < k; ++i) out = vstack(out, blocks[i][j]);
    return out;
  }

  BaseMatrix generator() const {
    BaseMatrix out;
    for (std::size_t j = 0; j < n; ++j) out = hstack(out, node_matrix(j));
    return out;
  }
};

/// Fails with ParameterError on inconsistent geometry.
inline void ac_validate(const ArrayCode& c) {
  PrimeField bf(c.q);
  if (c.k == 0 || c.k >= c.n) throw ParameterError("array code needs 0 < k < n");
  if (c.d < c.k || c.d >= c.n) throw ParameterError("repair degree d must satisfy k <= d <= n-1");
  if (c.alpha == 0 || c.alpha % (c.d - c.k + 1) != 0)
    throw ParameterError("d - k + 1 = " + std::to_string(c.d - c.k + 1) + " does not divide alpha = " +
                         std::to_string(c.alpha));
  if (c.blocks.size() != c.k) throw ParameterError("block grid must have k rows");
  for (const auto& row : c.blocks) {
    if (row.size() != c.n) throw ParameterError("block grid must have n columns");
    for (const auto& b : row) {
      if (b.rows() != c.alpha || b.cols() != c.alpha) throw ParameterError("blocks must be alpha x alpha");
      for (auto v : b.data())
        if (v >= c.q) throw ParameterError("block entry out of range for q=" + std::to_string(c.q));
    }
  }
}

/// Exact repair of one node. Helper h sends y_h V_h (beta_h symbols); the
/// newcomer stacks the downloads in helper order and multiplies by reconstruct.
struct RepairPlan {
  std::size_t failed = 0;
  std::vector<std::size_t> helpers;
  std::vector<BaseMatrix> download;  ///< per helper, alpha x beta_h
  BaseMatrix reconstruct;            ///< (sum beta_h) x alpha
  std::string method;
  std::string warning;

  std::size_t bandwidth() const {
    std::size_t s = 0;
    for (const auto& v : download) s += v.cols();
    return s;
  }

  /// Rows of reconstruct that act on helper position p.
  BaseMatrix reconstruct_rows(std::size_t p) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < p; ++i) off += download[i].cols();
    return submatrix(reconstruct, off, 0, download[p].cols(), reconstruct.cols());
  }

  /// B = V_h R_h: an error e on helper position p reaches the newcomer as e B.
  BaseMatrix propagation(const PrimeField& bf, std::size_t p) const {
    return multiply(bf, download[p], reconstruct_rows(p));
  }

  std::optional<std::size_t> position_of(std::size_t node) const {
    for (std::size_t p = 0; p < helpers.size(); ++p)
      if (helpers[p] == node) return p;
    return std::nullopt;
  }
};

using NodeBlocks = std::vector<ExtVector>;

inline NodeBlocks ac_encode(const ArrayCode& code, const NodeBlocks& x) {
  if (x.size() != code.k) throw ParameterError("ac_encode: expected " + std::to_string(code.k) + " input blocks");
  ExtVector flat;
  for (const auto& b : x) {
    if (b.size() != code.alpha) throw ParameterError("ac_encode: block length must be alpha");
    flat.insert(flat.end(), b.begin(), b.end());
  }
  if (flat.empty()) throw ParameterError("ac_encode: empty input");
  const auto field = flat.front().field();
  NodeBlocks y;
  for (std::size_t j = 0; j < code.n; ++j) y.push_back(times(field, flat, code.node_matrix(j)));
  return y;
}

namespace detail {

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline BaseMatrix nodes_matrix(const ArrayCode& code, const std::vector<std::size_t>& nodes) {
  BaseMatrix out;
  for (auto j : nodes) out = hstack(out, code.node_matrix(j));
  return out;
}

}  // namespace detail

inline bool ac_verify_mds(const ArrayCode& code) {
  const auto bf = code.field();
  bool ok = true;
  detail::for_each_subset(code.n, code.k, [&](const std::vector<std::size_t>& s) {
    ok = rank(bf, detail::nodes_matrix(code, s)) == code.k * code.alpha;
    return ok;
  });
  return ok;
}

/// Recovers the k input blocks from the contents of k distinct nodes.
inline NodeBlocks ac_decode_any_k(const ArrayCode& code, const NodeBlocks& observed,
                                  const std::vector<std::size_t>& indices) {
  if (indices.size() != code.k || observed.size() != code.k)
    throw ParameterError("ac_decode_any_k: need exactly k nodes");
  auto sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError("ac_decode_any_k: node indices must be distinct");
  for (auto i : indices)
    if (i >= code.n) throw ParameterError("ac_decode_any_k: node index out of range");
  const auto bf = code.field();
  const auto inv = inverse(bf, detail::nodes_matrix(code, indices));
  if (!inv) throw InternalError("selected block columns are singular; the code is not MDS");
  ExtVector flat;
  for (const auto& b : observed) {
    if (b.size() != code.alpha) throw ParameterError("ac_decode_any_k: block length must be alpha");
    flat.insert(flat.end(), b.begin(), b.end());
  }
  const auto x = times(flat.front().field(), flat, *inv);
  NodeBlocks out;
  for (std::size_t i = 0; i < code.k; ++i)
    out.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(i * code.alpha),
                     x.begin() + static_cast<std::ptrdiff_t>((i + 1) * code.alpha));
  return out;
}

/// What helper h sends: y_h V.
inline ExtVector ac_download(const ExtVector& y, const BaseMatrix& v) {
  if (y.empty()) throw ParameterError("empty node content");
  return times(y.front().field(), y, v);
}

/// Assembles the failed node from its helpers. contents is indexed by node.
inline ExtVector ac_repair(const ArrayCode& code, const NodeBlocks& contents, const RepairPlan& plan) {
  if (contents.size() != code.n) throw ParameterError("ac_repair: expected contents for all n nodes");
  if (plan.download.size() != plan.helpers.size() || plan.reconstruct.rows() != plan.bandwidth() ||
      plan.reconstruct.cols() != code.alpha)
    throw RepairFailure("repair plan for node " + std::to_string(plan.failed + 1) + " is malformed");
  ExtVector stacked;
  for (std::size_t p = 0; p < plan.helpers.size(); ++p) {
    const auto h = plan.helpers[p];
    if (h == plan.failed || h >= code.n) throw RepairFailure("repair plan uses an invalid helper");
    const auto part = ac_download(contents[h], plan.download[p]);
    stacked.insert(stacked.end(), part.begin(), part.end());
  }
  return times(stacked.front().field(), stacked, plan.reconstruct);
}

struct PlanSearchOptions {
  std::size_t exhaustive_cap = 1'000'000;  ///< row-selection candidates
  std::size_t subspace_cap = 5'000'000;    ///< subspace candidates (first d-1 helpers)
  std::size_t random_cap = 100'000;
  std::uint64_t seed = 1;
  bool allow_trivial = true;
};

namespace detail {

/// Solves for the reconstruct map given the download matrices, or nullopt.
inline std::optional<BaseMatrix> reconstruct_for(const ArrayCode& code, std::size_t failed,
                                                 const std::vector<std::size_t>& helpers,
                                                 const std::vector<BaseMatrix>& download) {
  const auto bf = code.field();
  BaseMatrix m;
  for (std::size_t p = 0; p < helpers.size(); ++p) m = hstack(m, multiply(bf, code.node_matrix(helpers[p]), download[p]));
  auto rt = solve_left(bf, transpose(m), transpose(code.node_matrix(failed)));
  if (!rt) return std::nullopt;
  return transpose(*rt);
}

/// Round trips on random F_q inputs: the repaired block must equal the stored one.
inline bool plan_round_trips(const ArrayCode& code, const RepairPlan& plan, Rng& rng, std::size_t trials) {
  const auto bf = code.field();
  for (std::size_t t = 0; t < trials; ++t) {
    BaseMatrix x(1, code.k * code.alpha);
    for (std::size_t i = 0; i < x.cols(); ++i) x(0, i) = rng.below(code.q);
    BaseMatrix stacked;
    for (std::size_t p = 0; p < plan.helpers.size(); ++p)
      stacked = hstack(stacked, multiply(bf, multiply(bf, x, code.node_matrix(plan.helpers[p])), plan.download[p]));
    if (!(multiply(bf, stacked, plan.reconstruct) == multiply(bf, x, code.node_matrix(plan.failed)))) return false;
  }
  return true;
}

/// alpha x beta matrix picking the given coordinates.
inline BaseMatrix selection(std::size_t alpha, const std::vector<std::size_t>& rows) {
  BaseMatrix v(alpha, rows.size(), 0);
  for (std::size_t c = 0; c < rows.size(); ++c) v(rows[c], c) = 1;
  return v;
}

/// Every beta-dimensional subspace of F_q^alpha, as alpha x beta matrices whose
/// transposes are in reduced row echelon form. Pivot sets in lexicographic order.
inline std::vector<BaseMatrix> all_subspaces(Digit q, std::size_t alpha, std::size_t beta) {
  std::vector<BaseMatrix> out;
  for_each_subset(alpha, beta, [&](const std::vector<std::size_t>& piv) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < beta; ++r)
      for (std::size_t c = piv[r] + 1; c < alpha; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
    std::vector<Digit> val(free.size(), 0);
    while (true) {
      BaseMatrix v(alpha, beta, 0);
      for (std::size_t r = 0; r < beta; ++r) v(piv[r], r) = 1;
      for (std::size_t i = 0; i < free.size(); ++i) v(free[i].second, free[i].first) = val[i];
      out.push_back(std::move(v));
      std::size_t i = 0;
      while (i < val.size() && ++val[i] == q) val[i++] = 0;
      if (i == val.size()) break;
    }
    return true;
  });
  return out;
}

/// With the first d-1 download matrices fixed, finds the last one directly: the
/// failed block must be covered modulo what the others already provide.
inline std::optional<BaseMatrix> complete_last_helper(const ArrayCode& code, const BaseMatrix& covered,
                                                      const BaseMatrix& target, std::size_t last, std::size_t beta) {
  const auto bf = code.field();
  const auto left = nullspace(bf, transpose(covered));
  if (left.empty()) return BaseMatrix(code.alpha, beta, 0);
  BaseMatrix l(left.size(), covered.rows());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < covered.rows(); ++j) l(i, j) = left[i][j];
  const auto lt = multiply(bf, l, target);
  if (rank(bf, lt) > beta) return std::nullopt;
  const auto lg = multiply(bf, l, code.node_matrix(last));
  BaseMatrix x(code.alpha, target.cols(), 0);
  for (std::size_t c = 0; c < target.cols(); ++c) {
    auto s = solve_linear(bf, lg, lt.column(c));
    if (!s.x) return std::nullopt;
    for (std::size_t r = 0; r < code.alpha; ++r) x(r, c) = (*s.x)[r];
  }
  // Column space of x, padded with unit vectors up to beta columns.
  auto e = row_reduce(bf, transpose(x));
  BaseMatrix v(code.alpha, 0);
  for (std::size_t r = 0; r < e.rank(); ++r) v = hstack(v, transpose(submatrix(e.rref, r, 0, 1, code.alpha)));
  for (std::size_t u = 0; u < code.alpha && v.cols() < beta; ++u) {
    auto trial = hstack(v, selection(code.alpha, {u}));
    if (rank(bf, trial) == trial.cols()) v = std::move(trial);
  }
  return v;
}

inline std::size_t saturating_pow(std::size_t b, std::size_t e, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > cap / std::max<std::size_t>(b, 1)) return cap + 1;
    r *= b;
  }
  return r;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// Trivial plan: full download from the k lowest-indexed other nodes.
inline RepairPlan ac_trivial_plan(const ArrayCode& code, std::size_t failed) {
  const auto bf = code.field();
  RepairPlan plan;
  plan.failed = failed;
  plan.method = "trivial";
  for (std::size_t j = 0; j < code.n && plan.helpers.size() < code.k; ++j)
    if (j != failed) plan.helpers.push_back(j);
  for (std::size_t p = 0; p < code.k; ++p) plan.download.push_back(identity(bf, code.alpha));
  auto r = detail::reconstruct_for(code, failed, plan.helpers, plan.download);
  if (!r) throw InternalError("full-download repair is singular; the code is not MDS");
  plan.reconstruct = std::move(*r);
  return plan;
}

/// Searches for an optimal-bandwidth plan (d = n-1 helpers, beta each), in
/// this order: exhaustive coordinate selection when small enough, pair-sum
/// subspaces, exhaustive subspaces with the last helper solved directly when
/// small enough, randomized subspaces, then the full-download fallback.
inline RepairPlan ac_find_repair_plan_uncached(const ArrayCode& code, std::size_t failed,
                                               const PlanSearchOptions& opt = {}) {
  ac_validate(code);
  if (failed >= code.n) throw ParameterError("failed node index out of range");
  const auto bf = code.field();
  const std::size_t beta = code.beta();
  RepairPlan plan;
  plan.failed = failed;
  for (std::size_t j = 0; j < code.n; ++j)
    if (j != failed) plan.helpers.push_back(j);
  const std::size_t d = plan.helpers.size();
  Rng verify_rng(Rng::mix(opt.seed, failed));

  auto accept = [&](std::vector<BaseMatrix> download, const char* method) {
    auto r = detail::reconstruct_for(code, failed, plan.helpers, download);
    if (!r) return false;
    RepairPlan cand = plan;
    cand.download = std::move(download);
    cand.reconstruct = std::move(*r);
    cand.method = method;
    if (!detail::plan_round_trips(code, cand, verify_rng, 100)) return false;
    plan = std::move(cand);
    return true;
  };

  if (code.d == code.n - 1 && beta < code.alpha) {
    // Coordinate selection.
    std::vector<std::vector<std::size_t>> choices;
    detail::for_each_subset(code.alpha, beta, [&](const std::vector<std::size_t>& s) {
      choices.push_back(s);
      return true;
    });
    if (detail::saturating_pow(choices.size(), d, opt.exhaustive_cap) <= opt.exhaustive_cap) {
      std::vector<std::size_t> pick(d, 0);
      while (true) {
        std::vector<BaseMatrix> dl;
        for (auto c : pick) dl.push_back(detail::selection(code.alpha, choices[c]));
        if (accept(std::move(dl), "row-selection")) return plan;
        std::size_t i = d;
        while (i > 0 && ++pick[i - 1] == choices.size()) pick[--i] = 0;
        if (i == 0) break;
      }
    }

    // Pair sums across one bit of the coordinate index.
    if (beta * 2 == code.alpha && (code.alpha & (code.alpha - 1)) == 0) {
      for (std::size_t bit = code.alpha >> 1; bit > 0; bit >>= 1) {
        BaseMatrix v(code.alpha, beta, 0);
        std::size_t c = 0;
        for (std::size_t j = 0; j < code.alpha; ++j)
          if (!(j & bit)) {
            v(j, c) = 1;
            v(j | bit, c) = 1;
            ++c;
          }
        if (accept(std::vector<BaseMatrix>(d, v), "pair-sum")) return plan;
      }
    }

    const auto target = code.node_matrix(failed);
    auto try_prefix = [&](std::vector<BaseMatrix> dl, const char* method) {
      BaseMatrix covered;
      for (std::size_t p = 0; p + 1 < d; ++p) covered = hstack(covered, multiply(bf, code.node_matrix(plan.helpers[p]), dl[p]));
      auto last = detail::complete_last_helper(code, covered, target, plan.helpers.back(), beta);
      if (!last) return false;
      dl.push_back(std::move(*last));
      return accept(std::move(dl), method);
    };

    // General subspaces.
    const std::size_t bound =
        detail::binomial(code.alpha, beta) * detail::saturating_pow(code.q, beta * (code.alpha - beta), opt.subspace_cap);
    const auto subs = bound <= opt.subspace_cap ? detail::all_subspaces(code.q, code.alpha, beta) : std::vector<BaseMatrix>{};
    if (!subs.empty() && detail::saturating_pow(subs.size(), d - 1, opt.subspace_cap) <= opt.subspace_cap) {
      std::vector<std::size_t> pick(d - 1, 0);
      while (true) {
        std::vector<BaseMatrix> dl;
        for (auto c : pick) dl.push_back(subs[c]);
        if (try_prefix(std::move(dl), "subspace")) return plan;
        std::size_t i = d - 1;
        while (i > 0 && ++pick[i - 1] == subs.size()) pick[--i] = 0;
        if (i == 0) break;
      }
    }

    // Randomized.
    Rng rng(Rng::mix(opt.seed, 1000 + failed));
    for (std::size_t t = 0; t < opt.random_cap; ++t) {
      std::vector<BaseMatrix> dl;
      for (std::size_t p = 0; p + 1 < d; ++p) {
        BaseMatrix v(code.alpha, beta);
        for (std::size_t i = 0; i < code.alpha; ++i)
          for (std::size_t j = 0; j < beta; ++j) v(i, j) = rng.below(code.q);
        dl.push_back(std::move(v));
      }
      if (try_prefix(std::move(dl), "randomized")) return plan;
    }
  }

  if (!opt.allow_trivial)
    throw PlanSearchFailure("no repair plan with beta=" + std::to_string(beta) + " found for node " +
                            std::to_string(failed + 1));
  auto trivial = ac_trivial_plan(code, failed);
  if (code.d == code.n - 1 && beta < code.alpha)
    trivial.warning = "no optimal plan found for node " + std::to_string(failed + 1) + "; using full download from " +
                      std::to_string(code.k) + " nodes";
  return trivial;
}

std::string ac_serialize(const ArrayCode& code);

/// Memoized search. Plans are deterministic in (code, failed, options).
inline RepairPlan ac_find_repair_plan(const ArrayCode& code, std::size_t failed, const PlanSearchOptions& opt = {}) {
  using Key = std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::size_t, std::uint64_t, bool>;
  static std::mutex mu;
  static std::map<Key, RepairPlan> cache;
  Key key{ac_serialize(code), failed, opt.exhaustive_cap, opt.subspace_cap, opt.random_cap, opt.seed, opt.allow_trivial};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto plan = ac_find_repair_plan_uncached(code, failed, opt);
  std::lock_guard lock(mu);
  cache.emplace(std::move(key), plan);
  return plan;
}

inline BaseMatrix matrix_from_rows(std::initializer_list<std::initializer_list<Digit>> rows) {
  BaseMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (auto v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

/// Systematic (5,3) code: G = [I 0 0 I P1; 0 I 0 I P2; 0 0 I I P3].
inline ArrayCode systematic_5_3(std::string name, Digit q, std::size_t alpha, std::vector<BaseMatrix> last_column) {
  PrimeField bf(q);
  ArrayCode c{std::move(name), q, 5, 3, alpha, 4, {}};
  const BaseMatrix zero(alpha, alpha, 0), id = identity(bf, alpha);
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<BaseMatrix> row;
    for (std::size_t j = 0; j < 3; ++j) row.push_back(i == j ? id : zero);
    row.push_back(id);
    row.push_back(std::move(last_column[i]));
    c.blocks.push_back(std::move(row));
  }
  ac_validate(c);
  return c;
}

inline ArrayCode zigzag_5_3(Digit q = 3) {
  PrimeField bf(q);
  const Digit two = bf.reduce(2);
  auto a2 = matrix_from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {two, 0, 0, 0}, {0, two, 0, 0}});
  auto a3 = matrix_from_rows({{0, 1, 0, 0}, {two, 0, 0, 0}, {0, 0, 0, two}, {0, 0, 1, 0}});
  return systematic_5_3("zigzag_5_3", q, 4, {identity(bf, 4), std::move(a2), std::move(a3)});
}

struct HadamardCoefficients {
  Digit q = 0;
  std::vector<std::pair<Digit, Digit>> ab;  ///< (a_i, b_i), i = 1..3
};

namespace detail {

/// Sign of X_i at coordinate j for alpha = 16: the diagonal of
/// I_{2^{i-1}} (x) blkdiag(I, -I) with blocks of alpha / 2^i.
inline bool hadamard_negative(std::size_t i, std::size_t j, std::size_t alpha) {
  const std::size_t period = alpha >> (i - 1);
  return (j % period) >= period / 2;
}

inline std::vector<Digit> hadamard_diagonal(const PrimeField& bf, Digit a, Digit b, std::size_t i, std::size_t alpha) {
  std::vector<Digit> diag(alpha);
  for (std::size_t j = 0; j < alpha; ++j) {
    const Digit xa = hadamard_negative(i, j, alpha) ? bf.neg(a) : a;
    const Digit xb = hadamard_negative(4, j, alpha) ? bf.neg(b) : b;
    diag[j] = bf.add(bf.add(xa, xb), 1);
  }
  return diag;
}

}  // namespace detail

/// (5,3) Hadamard design code with alpha = 16 and A_{i,5} = a_i X_i + b_i X_4 + I.
inline ArrayCode hadamard_5_3(const HadamardCoefficients& coef) {
  PrimeField bf(coef.q);
  if (coef.ab.size() != 3) throw ParameterError("hadamard_5_3 needs three (a, b) pairs");
  constexpr std::size_t alpha = 16;
  std::vector<BaseMatrix> last;
  for (std::size_t i = 0; i < 3; ++i) {
    auto [a, b] = coef.ab[i];
    if (a >= coef.q || b >= coef.q) throw ParameterError("hadamard coefficient out of range");
    if (bf.sub(bf.mul(a, a), bf.mul(b, b)) != bf.neg(1))
      throw ParameterError("hadamard coefficients (" + std::to_string(a) + ", " + std::to_string(b) +
                           ") violate a^2 - b^2 = -1");
    BaseMatrix m(alpha, alpha, 0);
    const auto diag = detail::hadamard_diagonal(bf, a, b, i + 1, alpha);
    for (std::size_t j = 0; j < alpha; ++j) m(j, j) = diag[j];
    last.push_back(std::move(m));
  }
  return systematic_5_3("hadamard_5_3", coef.q, alpha, std::move(last));
}

/// Smallest q >= min_q (prime) and lexicographically first ordered triple of
/// solutions of a^2 - b^2 = -1 giving an MDS code.
inline HadamardCoefficients hadamard_default_coefficients(Digit min_q = 3) {
  constexpr std::size_t alpha = 16;
  for (Digit q = is_prime(min_q) ? min_q : static_cast<Digit>(next_prime(min_q)); q <= 1000;
       q = static_cast<Digit>(next_prime(q))) {
    PrimeField bf(q);
    std::vector<std::pair<Digit, Digit>> sols;
    for (Digit a = 0; a < q; ++a)
      for (Digit b = 0; b < q; ++b)
        if (bf.sub(bf.mul(a, a), bf.mul(b, b)) == bf.neg(1)) sols.emplace_back(a, b);
    auto usable = [&](const std::vector<Digit>& d) {
      return std::none_of(d.begin(), d.end(), [](Digit v) { return v == 0; });
    };
    for (const auto& s1 : sols)
      for (const auto& s2 : sols)
        for (const auto& s3 : sols) {
          const std::vector<std::pair<Digit, Digit>> ab{s1, s2, s3};
          std::vector<std::vector<Digit>> diags;
          bool ok = true;
          for (std::size_t i = 0; i < 3 && ok; ++i) {
            diags.push_back(detail::hadamard_diagonal(bf, ab[i].first, ab[i].second, i + 1, alpha));
            ok = usable(diags.back());
          }
          for (std::size_t i = 0; i < 3 && ok; ++i)
            for (std::size_t j = i + 1; j < 3 && ok; ++j) {
              std::vector<Digit> diff(alpha);
              for (std::size_t t = 0; t < alpha; ++t) diff[t] = bf.sub(diags[i][t], diags[j][t]);
              ok = usable(diff);
            }
          if (!ok) continue;
          HadamardCoefficients c{q, ab};
          if (ac_verify_mds(hadamard_5_3(c))) return c;
        }
  }
  throw ParameterError("no MDS Hadamard coefficients found for q <= 1000");
}

inline ArrayCode hadamard_5_3() {
  static const HadamardCoefficients coef = hadamard_default_coefficients();
  return hadamard_5_3(coef);
}

/// Text form: header lines, then every block row-major, block (i, j) 1-based.
inline std::string ac_serialize(const ArrayCode& code) {
  std::ostringstream os;
  os << "array_code " << code.name << "\n";
  os << "q " << code.q << "\nn " << code.n << "\nk " << code.k << "\nalpha " << code.alpha << "\nd " << code.d << "\n";
  for (std::size_t i = 0; i < code.k; ++i)
    for (std::size_t j = 0; j < code.n; ++j) {
      os << "block " << i + 1 << " " << j + 1 << "\n";
      const auto& b = code.blocks[i][j];
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) os << (c ? " " : "") << b(r, c);
        os << "\n";
      }
    }
  return os.str();
}

inline ArrayCode ac_parse(const std::string& text) {
  std::istringstream is(text);
  ArrayCode code;
  auto expect = [&](const char* key) {
    std::string k;
    if (!(is >> k) || k != key) throw ParameterError(std::string("array code text: expected '") + key + "'");
  };
  auto number = [&](const char* key) {
    expect(key);
    long long v;
    if (!(is >> v) || v < 0) throw ParameterError(std::string("array code text: bad value for ") + key);
    return static_cast<std::size_t>(v);
  };
  expect("array_code");
  if (!(is >> code.name)) throw ParameterError("array code text: missing name");
  code.q = static_cast<Digit>(number("q"));
  code.n = number("n");
  code.k = number("k");
  code.alpha = number("alpha");
  code.d = number("d");
  if (code.n > 64 || code.alpha > 4096) throw ParameterError("array code text: dimensions too large");
  code.blocks.assign(code.k, std::vector<BaseMatrix>(code.n));
  for (std::size_t i = 0; i < code.k; ++i)
    for (std::size_t j = 0; j < code.n; ++j) {
      expect("block");
      std::size_t bi, bj;
      if (!(is >> bi >> bj) || bi != i + 1 || bj != j + 1) throw ParameterError("array code text: blocks out of order");
      BaseMatrix b(code.alpha, code.alpha);
      for (std::size_t r = 0; r < code.alpha; ++r)
        for (std::size_t c = 0; c < code.alpha; ++c) {
          long long v;
          if (!(is >> v) || v < 0) throw ParameterError("array code text: bad block entry");
          b(r, c) = static_cast<Digit>(v);
        }
      code.blocks[i][j] = std::move(b);
    }
  ac_validate(code);
  return code;
}

}  // namespace rankstore
