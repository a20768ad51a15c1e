#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankstore/errors.hpp"
#include "rankstore/ext_field.hpp"
#include "rankstore/linpoly.hpp"
#include "rankstore/matrix.hpp"

namespace rankstore {

/// Gabidulin code of length m and dimension K over F_{q^N}.
struct GabidulinCode {
  ExtField field;
  std::size_t m = 0;
  std::size_t K = 0;
  ExtVector eval_points;

  std::size_t min_distance() const { return m - K + 1; }
};

/// Evaluation points default to 1, x, ..., x^{m-1}.
inline GabidulinCode make_gabidulin(const ExtField& field, std::size_t m, std::size_t K,
                                    std::optional<ExtVector> points = std::nullopt) {
  if (K == 0 || K > m) throw ParameterError("Gabidulin code needs 1 <= K <= m, got K=" + std::to_string(K) +
                                            " m=" + std::to_string(m));
  if (m > field.degree())
    throw ParameterError("Gabidulin code needs m <= N, got m=" + std::to_string(m) +
                         " N=" + std::to_string(field.degree()));
  GabidulinCode code{field, m, K, {}};
  if (points) {
    if (points->size() != m) throw ParameterError("expected " + std::to_string(m) + " evaluation points");
    if (rank_over_base(field, *points) != m)
      throw ParameterError("evaluation points are not F_q-linearly independent");
    code.eval_points = std::move(*points);
  } else {
    for (std::size_t i = 0; i < m; ++i) code.eval_points.push_back(field.basis(i));
  }
  return code;
}

inline std::size_t gab_min_distance(const GabidulinCode& code) { return code.min_distance(); }

/// Erasure directions: one row of length m over F_q per erased direction.
struct ErasureInfo {
  BaseMatrix directions;

  std::size_t count() const { return directions.rows(); }
};

struct DecodeDiagnostics {
  std::size_t estimated_error_rank = 0;
  bool inconsistent = false;
  std::string reason;
};

/// Either a message or a failure with diagnostics. Failure is not exceptional.
struct DecodeResult {
  std::optional<ExtVector> message;
  DecodeDiagnostics diagnostics;

  bool ok() const { return message.has_value(); }
  explicit operator bool() const { return ok(); }
};

inline ExtVector gab_encode(const GabidulinCode& code, std::span<const ExtElem> message) {
  if (message.size() != code.K)
    throw ParameterError("gab_encode: message has " + std::to_string(message.size()) + " symbols, expected " +
                         std::to_string(code.K));
  const LinearizedPoly f(ExtVector(message.begin(), message.end()));
  ExtVector out;
  out.reserve(code.m);
  for (const auto& g : code.eval_points) out.push_back(f(g));
  return out;
}

namespace detail {

inline DecodeResult decode_failure(std::string reason, std::size_t rank_estimate, bool inconsistent) {
  DecodeResult r;
  r.diagnostics = {rank_estimate, inconsistent, std::move(reason)};
  return r;
}

/// Errors-only decoding on independent points. Finds V of q-degree <= tau and
/// N of q-degree <= K-1+tau with V(y_j) = N(g_j); when the error rank is at most
/// tau, N = V o f for the transmitted f.
inline DecodeResult decode_errors_only(const ExtField& field, std::span<const ExtElem> points,
                                       std::span<const ExtElem> received, std::size_t K) {
  const std::size_t n = points.size();
  const std::size_t tau = (n - K) / 2;
  const std::size_t cols = (tau + 1) + (K + tau);
  Matrix<ExtElem> sys(n, cols, field.zero());
  for (std::size_t j = 0; j < n; ++j) {
    ExtElem y = received[j];
    for (std::size_t i = 0; i <= tau; ++i, y = y.frobenius(1)) sys(j, i) = y;
    ExtElem g = points[j];
    for (std::size_t i = 0; i < K + tau; ++i, g = g.frobenius(1)) sys(j, tau + 1 + i) = -g;
  }
  const auto ns = nullspace(field, sys);
  if (ns.empty()) return decode_failure("key equation has only the trivial solution", tau + 1, true);
  const auto& sol = ns.front();
  const LinearizedPoly v(ExtVector(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(tau + 1)));
  const LinearizedPoly num(ExtVector(sol.begin() + static_cast<std::ptrdiff_t>(tau + 1), sol.end()));
  if (v.is_zero()) return decode_failure("error locator vanished", tau + 1, true);
  const auto f = lp_divide_left(num, v);
  if (!f) return decode_failure("error locator does not divide the key polynomial", *v.q_degree(), true);
  if (f->coeffs().size() > K) return decode_failure("recovered polynomial exceeds message degree", *v.q_degree(), true);
  ExtVector residual;
  residual.reserve(n);
  for (std::size_t j = 0; j < n; ++j) residual.push_back(received[j] - (*f)(points[j]));
  const std::size_t err = rank_over_base(field, residual);
  if (err > tau) return decode_failure("residual rank " + std::to_string(err) + " exceeds radius " +
                                           std::to_string(tau), err, false);
  DecodeResult out;
  out.message = ExtVector(K, field.zero());
  for (std::size_t i = 0; i < f->coeffs().size(); ++i) (*out.message)[i] = f->coeffs()[i];
  out.diagnostics.estimated_error_rank = err;
  return out;
}

}  // namespace detail

/// Decodes f of q-degree < K from values at arbitrary points (possibly
/// dependent). A maximal independent subset of the points is kept, greedily in
/// the given order, and decoded errors-only.
inline DecodeResult decode_at_points(const ExtField& field, std::span<const ExtElem> points,
                                     std::span<const ExtElem> values, std::size_t K) {
  if (points.size() != values.size()) throw ParameterError("decode_at_points: points/values length mismatch");
  ExtVector p, y;
  for (std::size_t i = 0; i < points.size(); ++i) {
    p.push_back(points[i]);
    if (rank_over_base(field, p) < p.size()) {
      p.pop_back();
      continue;
    }
    y.push_back(values[i]);
    if (p.size() == field.degree()) break;
  }
  if (p.size() < K)
    return detail::decode_failure("only " + std::to_string(p.size()) + " independent evaluations for dimension " +
                                      std::to_string(K), 0, true);
  return detail::decode_errors_only(field, p, y, K);
}

/// Errors-and-erasures decoding. The erasure directions are completed to an
/// invertible W; multiplying by W^{-1} confines the erasures to the first s
/// coordinates, which are then punctured away.
inline DecodeResult gab_decode(const GabidulinCode& code, std::span<const ExtElem> received,
                               const ErasureInfo& erasures = {}) {
  if (received.size() != code.m)
    throw ParameterError("gab_decode: received word has length " + std::to_string(received.size()) +
                         ", expected " + std::to_string(code.m));
  const auto& bf = code.field.base();
  const std::size_t s = erasures.count();
  if (s == 0) return detail::decode_errors_only(code.field, code.eval_points, received, code.K);
  if (erasures.directions.cols() != code.m)
    throw ParameterError("erasure directions must have length " + std::to_string(code.m));
  if (rank(bf, erasures.directions) != s) throw ParameterError("erasure directions are linearly dependent");
  if (s + code.K > code.m)
    return detail::decode_failure("erasures leave fewer than K coordinates", 0, true);

  BaseMatrix w = erasures.directions;
  for (std::size_t u = 0; u < code.m && w.rows() < code.m; ++u) {
    BaseMatrix unit(1, code.m, 0);
    unit(0, u) = 1;
    auto trial = vstack(w, unit);
    if (rank(bf, trial) == trial.rows()) w = std::move(trial);
  }
  const auto t = inverse(bf, w);
  if (!t) throw InternalError("completed erasure basis is singular");
  const auto y = times(code.field, received, *t);
  const auto g = times(code.field, code.eval_points, *t);
  return detail::decode_errors_only(code.field, std::span(g).subspan(s), std::span(y).subspan(s), code.K);
}

inline DecodeResult gab_decode(const GabidulinCode& code, const ExtVector& received, const ErasureInfo& erasures = {}) {
  return gab_decode(code, std::span<const ExtElem>(received), erasures);
}

}  // namespace rankstore
