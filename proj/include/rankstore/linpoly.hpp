#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankstore/errors.hpp"
#include "rankstore/ext_field.hpp"
#include "rankstore/matrix.hpp"

namespace rankstore {

/// f(x) = sum_i a_i x^{q^i} over F_{q^N}. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
class LinearizedPoly {
 public:
  LinearizedPoly() = default;

  explicit LinearizedPoly(std::vector<ExtElem> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  /// f(x) = x
  static LinearizedPoly identity(const ExtField& field) { return LinearizedPoly({field.one()}); }

  /// f(x) = a x^{q^i}
  static LinearizedPoly monomial(const ExtElem& a, std::size_t i) {
    std::vector<ExtElem> c(i + 1, a.field().zero());
    c[i] = a;
    return LinearizedPoly(std::move(c));
  }

  const std::vector<ExtElem>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::optional<std::size_t> q_degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }

  /// a_i, or zero beyond the q-degree.
  ExtElem coeff(std::size_t i, const ExtField& field) const { return i < coeffs_.size() ? coeffs_[i] : field.zero(); }

  ExtElem operator()(const ExtElem& x) const {
    ExtElem acc = x.field().zero();
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) acc += coeffs_[i] * x.frobenius(i);
    return acc;
  }

  LinearizedPoly operator+(const LinearizedPoly& o) const { return combine(o, false); }
  LinearizedPoly operator-(const LinearizedPoly& o) const { return combine(o, true); }

  LinearizedPoly scaled(const ExtElem& s) const {
    std::vector<ExtElem> c;
    c.reserve(coeffs_.size());
    for (const auto& a : coeffs_) c.push_back(s * a);
    return LinearizedPoly(std::move(c));
  }

  bool operator==(const LinearizedPoly&) const = default;

 private:
  LinearizedPoly combine(const LinearizedPoly& o, bool subtract) const {
    if (is_zero()) return subtract ? o.scaled_neg() : o;
    if (o.is_zero()) return *this;
    const auto field = coeffs_.front().field();
    std::vector<ExtElem> c(std::max(coeffs_.size(), o.coeffs_.size()), field.zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] = subtract ? c[i] - o.coeffs_[i] : c[i] + o.coeffs_[i];
    return LinearizedPoly(std::move(c));
  }

  LinearizedPoly scaled_neg() const {
    std::vector<ExtElem> c;
    for (const auto& a : coeffs_) c.push_back(-a);
    return LinearizedPoly(std::move(c));
  }

  std::vector<ExtElem> coeffs_;
};

inline ExtElem lp_evaluate(const LinearizedPoly& f, const ExtElem& x) { return f(x); }

/// h = f o g, with h_k = sum_{i+j=k} a_i b_j^{q^i}.
inline LinearizedPoly lp_compose(const LinearizedPoly& f, const LinearizedPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto field = f.coeffs().front().field();
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<ExtElem> h(a.size() + b.size() - 1, field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) h[i + j] += a[i] * b[j].frobenius(i);
  }
  return LinearizedPoly(std::move(h));
}

/// Finds g with composite = left o g, or nullopt when left does not divide
/// composite from the left. Coefficients of g are recovered from the lowest
/// nonzero term of left upwards, then the product is checked in full.
inline std::optional<LinearizedPoly> lp_divide_left(const LinearizedPoly& composite, const LinearizedPoly& left) {
  if (left.is_zero()) throw DivisionByZero("division by the zero linearized polynomial");
  if (composite.is_zero()) return LinearizedPoly{};
  const auto field = left.coeffs().front().field();
  const std::size_t n = field.degree();
  const auto& v = left.coeffs();
  const std::size_t dv = v.size() - 1;
  const std::size_t dc = composite.coeffs().size() - 1;
  if (dc < dv) return std::nullopt;
  std::size_t lo = 0;
  while (v[lo].is_zero()) ++lo;
  const auto lead_inv = v[lo].inverse();
  const std::size_t dg = dc - dv;
  std::vector<ExtElem> g(dg + 1, field.zero());
  for (std::size_t j = 0; j <= dg; ++j) {
    ExtElem acc = composite.coeff(lo + j, field);
    for (std::size_t i = lo + 1; i <= dv && i <= lo + j; ++i) acc -= v[i] * g[lo + j - i].frobenius(i);
    // g_j^{q^lo} = acc / v_lo, undone by the inverse automorphism.
    g[j] = (acc * lead_inv).frobenius((n - lo % n) % n);
  }
  LinearizedPoly out(std::move(g));
  if (!(lp_compose(left, out) == composite)) return std::nullopt;
  return out;
}

/// Unique f of q-degree < points.size() with f(points[i]) = values[i], by a
/// direct solve of the Moore system. Points must be F_q-linearly independent.
inline LinearizedPoly lp_interpolate(const ExtField& field, std::span<const ExtElem> points,
                                     std::span<const ExtElem> values) {
  if (points.size() != values.size()) throw ParameterError("lp_interpolate: points/values length mismatch");
  const std::size_t n = points.size();
  if (n == 0) return {};
  if (n > field.degree() || rank_over_base(field, points) != n)
    throw PreconditionError("lp_interpolate: evaluation points are not F_q-linearly independent");
  Matrix<ExtElem> moore(n, n, field.zero());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) moore(j, i) = points[j].frobenius(i);
  auto sol = solve_linear(field, moore, values);
  if (!sol.x) throw InternalError("Moore matrix singular despite independent points");
  return LinearizedPoly(std::move(*sol.x));
}

/// Monic subspace polynomial of q-degree basis.size() whose roots are exactly
/// the F_q-span of basis. Built as f <- f^q - f(b)^{q-1} f one basis vector at a time.
inline LinearizedPoly lp_min_subspace_poly(const ExtField& field, std::span<const ExtElem> basis) {
  std::vector<ExtElem> f{field.one()};
  for (const auto& b : basis) {
    const ExtElem v = LinearizedPoly(f)(b);
    if (v.is_zero()) throw PreconditionError("lp_min_subspace_poly: basis is not F_q-linearly independent");
    const ExtElem scale = v.frobenius(1) * v.inverse();  // v^{q-1}
    std::vector<ExtElem> next(f.size() + 1, field.zero());
    for (std::size_t k = 0; k < f.size(); ++k) {
      next[k + 1] += f[k].frobenius(1);
      next[k] -= scale * f[k];
    }
    f = std::move(next);
  }
  return LinearizedPoly(std::move(f));
}

}  // namespace rankstore
