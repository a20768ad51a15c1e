#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rankstore/errors.hpp"
#include "rankstore/matrix.hpp"
#include "rankstore/prime_field.hpp"
#include "rankstore/random.hpp"

namespace rankstore {

/// Order q of the base field, extension degree N and the defining modulus.
struct FieldParams {
  Digit q = 3;
  std::size_t N = 1;
  std::vector<Digit> modulus;  ///< N + 1 coefficients, little-endian, monic

  bool operator==(const FieldParams&) const = default;
};

namespace detail {

struct ExtFieldData {
  PrimeField base;
  FieldParams params;
  // reduction[i] = digits of x^{N+i} mod modulus, i in [0, N-1)
  std::vector<std::vector<Digit>> reduction;
  // frobenius[i] maps digit columns a -> a^{q^i}, i in [0, N)
  std::vector<BaseMatrix> frobenius;
};

}  // namespace detail

class ExtElem;

/// The extension field F_{q^N} in the power basis of its modulus. A cheap,
/// copyable handle; elements keep the shared field data alive.
class ExtField {
 public:
  using value_type = ExtElem;

  ExtField() = default;

  /// F_{q^N} over the smallest monic irreducible of degree N.
  static ExtField make(Digit q, std::size_t degree) {
    PrimeField base(q);
    return ExtField(base, poly::smallest_irreducible(base, degree));
  }

  static ExtField with_modulus(Digit q, std::vector<Digit> modulus) {
    PrimeField base(q);
    poly::trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1) throw ParameterError("modulus must be monic of degree >= 1");
    for (auto d : modulus)
      if (d >= q) throw ParameterError("modulus coefficient out of range");
    if (!poly::is_irreducible(base, modulus)) throw ParameterError("modulus polynomial is reducible");
    return ExtField(base, std::move(modulus));
  }

  bool valid() const { return static_cast<bool>(d_); }
  const FieldParams& params() const { return data().params; }
  const PrimeField& base() const { return data().base; }
  Digit q() const { return data().params.q; }
  std::size_t degree() const { return data().params.N; }

  ExtElem zero() const;
  ExtElem one() const;
  ExtElem embed(Digit v) const;
  /// The basis element x^i (i < N).
  ExtElem basis(std::size_t i) const;
  ExtElem from_digits(std::vector<Digit> digits) const;
  ExtElem random(Rng& rng) const;
  /// Inverse of to_string(): N '.'-separated decimal digits, little-endian.
  ExtElem parse(std::string_view text) const;

  ExtElem add(const ExtElem& a, const ExtElem& b) const;
  ExtElem sub(const ExtElem& a, const ExtElem& b) const;
  ExtElem mul(const ExtElem& a, const ExtElem& b) const;
  ExtElem neg(const ExtElem& a) const;
  ExtElem inv(const ExtElem& a) const;
  bool is_zero(const ExtElem& a) const;

  bool operator==(const ExtField& o) const {
    return d_ == o.d_ || (d_ && o.d_ && d_->params == o.d_->params);
  }

 private:
  friend class ExtElem;

  ExtField(const PrimeField& base, std::vector<Digit> modulus);
  explicit ExtField(std::shared_ptr<const detail::ExtFieldData> d) : d_(std::move(d)) {}

  const detail::ExtFieldData& data() const {
    if (!d_) throw ParameterError("use of an uninitialised extension field");
    return *d_;
  }

  std::shared_ptr<const detail::ExtFieldData> d_;
};

/// An element of F_{q^N}: N base-field digits in the power basis. Doubles as a
/// length-N column vector over F_q wherever rank-metric arguments need it.
class ExtElem {
 public:
  ExtElem() = default;

  ExtField field() const { return ExtField(f_); }
  const std::vector<Digit>& digits() const { return c_; }
  bool valid() const { return static_cast<bool>(f_); }

  bool is_zero() const {
    for (auto d : c_)
      if (d) return false;
    return true;
  }

  ExtElem operator+(const ExtElem& o) const {
    const auto& b = check(o).base;
    ExtElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = b.add(c_[i], o.c_[i]);
    return r;
  }
  ExtElem operator-(const ExtElem& o) const {
    const auto& b = check(o).base;
    ExtElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = b.sub(c_[i], o.c_[i]);
    return r;
  }
  ExtElem operator-() const {
    const auto& b = data().base;
    ExtElem r = *this;
    for (auto& d : r.c_) d = b.neg(d);
    return r;
  }
  ExtElem operator*(const ExtElem& o) const;
  ExtElem& operator+=(const ExtElem& o) { return *this = *this + o; }
  ExtElem& operator-=(const ExtElem& o) { return *this = *this - o; }
  ExtElem& operator*=(const ExtElem& o) { return *this = *this * o; }

  /// Multiplication by a base-field scalar.
  ExtElem scaled(Digit s) const {
    ExtElem r = *this;
    const auto& b = data().base;
    s %= b.q();
    for (auto& d : r.c_) d = b.mul(d, s);
    return r;
  }

  ExtElem inverse() const;

  /// a^{q^i}; the Frobenius automorphism applied i times.
  ExtElem frobenius(std::size_t i) const {
    const auto& d = data();
    const auto& m = d.frobenius[i % d.params.N];
    ExtElem r = *this;
    const Digit q = d.params.q;
    for (std::size_t row = 0; row < c_.size(); ++row) {
      std::uint64_t acc = 0;
      for (std::size_t col = 0; col < c_.size(); ++col) acc += static_cast<std::uint64_t>(m(row, col)) * c_[col];
      r.c_[row] = static_cast<Digit>(acc % q);
    }
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) os << '.';
      os << c_[i];
    }
    return os.str();
  }

  bool operator==(const ExtElem& o) const {
    if (c_ != o.c_) return false;
    return f_ == o.f_ || (f_ && o.f_ && f_->params == o.f_->params);
  }

 private:
  friend class ExtField;

  ExtElem(std::shared_ptr<const detail::ExtFieldData> f, std::vector<Digit> c) : f_(std::move(f)), c_(std::move(c)) {}

  const detail::ExtFieldData& data() const {
    if (!f_) throw ParameterError("use of an uninitialised field element");
    return *f_;
  }

  const detail::ExtFieldData& check(const ExtElem& o) const {
    const auto& d = data();
    if (f_ != o.f_ && (!o.f_ || !(f_->params == o.f_->params)))
      throw ParameterError("field elements belong to different extension fields");
    return d;
  }

  std::shared_ptr<const detail::ExtFieldData> f_;
  std::vector<Digit> c_;
};

inline std::ostream& operator<<(std::ostream& os, const ExtElem& e) { return os << e.to_string(); }

using ExtVector = std::vector<ExtElem>;

// ---------------------------------------------------------------------------

inline ExtField::ExtField(const PrimeField& base, std::vector<Digit> modulus) {
  auto d = std::make_shared<detail::ExtFieldData>();
  const std::size_t n = modulus.size() - 1;
  d->base = base;
  d->params = FieldParams{base.q(), n, modulus};

  // x^{N+i} mod f by repeated multiplication with x.
  std::vector<Digit> cur(n, 0);
  for (std::size_t j = 0; j < n; ++j) cur[j] = base.neg(modulus[j]);  // x^N
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d->reduction.push_back(cur);
    const Digit top = cur[n - 1];
    std::vector<Digit> next(n, 0);
    for (std::size_t j = n - 1; j > 0; --j) next[j] = cur[j - 1];
    for (std::size_t j = 0; j < n; ++j) next[j] = base.sub(next[j], base.mul(top, modulus[j]));
    cur = std::move(next);
  }

  // Frobenius matrix: column j holds (x^j)^q = (x^q)^j.
  const poly::Poly x{0, 1};
  const auto xq = poly::powmod(base, x, base.q(), modulus);
  BaseMatrix frob(n, n, 0);
  poly::Poly power{1};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < power.size(); ++i) frob(i, j) = power[i];
    power = poly::mulmod(base, power, xq, modulus);
  }
  d->frobenius.push_back(identity(base, n));
  for (std::size_t i = 1; i < n; ++i) d->frobenius.push_back(multiply(base, frob, d->frobenius.back()));
  d_ = std::move(d);
}

inline ExtElem ExtField::zero() const { return ExtElem(d_, std::vector<Digit>(degree(), 0)); }

inline ExtElem ExtField::one() const { return embed(1); }

inline ExtElem ExtField::embed(Digit v) const {
  std::vector<Digit> c(degree(), 0);
  c[0] = v % q();
  return ExtElem(d_, std::move(c));
}

inline ExtElem ExtField::basis(std::size_t i) const {
  if (i >= degree()) throw ParameterError("basis index out of range");
  std::vector<Digit> c(degree(), 0);
  c[i] = 1;
  return ExtElem(d_, std::move(c));
}

inline ExtElem ExtField::from_digits(std::vector<Digit> digits) const {
  if (digits.size() != degree())
    throw ParameterError("expected " + std::to_string(degree()) + " digits, got " + std::to_string(digits.size()));
  for (auto v : digits)
    if (v >= q()) throw ParameterError("digit " + std::to_string(v) + " out of range for q=" + std::to_string(q()));
  return ExtElem(d_, std::move(digits));
}

inline ExtElem ExtField::random(Rng& rng) const {
  std::vector<Digit> c(degree());
  for (auto& v : c) v = rng.below(q());
  return ExtElem(d_, std::move(c));
}

inline ExtElem ExtField::parse(std::string_view text) const {
  std::vector<Digit> digits;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    auto part = text.substr(pos, dot - pos);
    if (part.empty()) throw ParameterError("malformed field element '" + std::string(text) + "'");
    Digit v = 0;
    for (char ch : part) {
      if (ch < '0' || ch > '9') throw ParameterError("malformed field element '" + std::string(text) + "'");
      v = v * 10 + static_cast<Digit>(ch - '0');
      if (v >= q()) throw ParameterError("digit out of range in '" + std::string(text) + "'");
    }
    digits.push_back(v);
    pos = dot + 1;
  }
  return from_digits(std::move(digits));
}

inline ExtElem ExtField::add(const ExtElem& a, const ExtElem& b) const { return a + b; }
inline ExtElem ExtField::sub(const ExtElem& a, const ExtElem& b) const { return a - b; }
inline ExtElem ExtField::mul(const ExtElem& a, const ExtElem& b) const { return a * b; }
inline ExtElem ExtField::neg(const ExtElem& a) const { return -a; }
inline ExtElem ExtField::inv(const ExtElem& a) const { return a.inverse(); }
inline bool ExtField::is_zero(const ExtElem& a) const { return a.is_zero(); }

inline ExtElem ExtElem::operator*(const ExtElem& o) const {
  const auto& d = check(o);
  const std::size_t n = c_.size();
  const Digit q = d.params.q;
  std::vector<std::uint64_t> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!c_[i]) continue;
    const std::uint64_t ai = c_[i];
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += ai * o.c_[j];
  }
  std::vector<std::uint64_t> acc(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = n; i < 2 * n - 1; ++i) {
    const std::uint64_t h = prod[i] % q;
    if (!h) continue;
    const auto& red = d.reduction[i - n];
    for (std::size_t j = 0; j < n; ++j) acc[j] += h * red[j];
  }
  std::vector<Digit> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<Digit>(acc[j] % q);
  return ExtElem(f_, std::move(out));
}

inline ExtElem ExtElem::inverse() const {
  const auto& d = data();
  if (is_zero()) throw DivisionByZero("inverse of zero in F_{q^N}");
  const auto& base = d.base;
  // Extended Euclid: track s with s * a == r (mod modulus).
  poly::Poly r0 = d.params.modulus, r1 = c_, s0{}, s1{1};
  poly::trim(r1);
  while (poly::degree(r1) > 0) {
    auto [quot, rem] = poly::divmod(base, r0, r1);
    auto s2 = poly::sub(base, s0, poly::mul(base, quot, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const Digit c = base.inv(r1[0]);
  std::vector<Digit> out(d.params.N, 0);
  for (std::size_t i = 0; i < s1.size(); ++i) out[i] = base.mul(s1[i], c);
  return ExtElem(f_, std::move(out));
}

// ---------------------------------------------------------------------------

/// N x m matrix over F_q whose column j is the digit expansion of v[j].
inline BaseMatrix digit_matrix(const ExtField& field, std::span<const ExtElem> v) {
  BaseMatrix m(field.degree(), v.size(), 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto& d = v[j].digits();
    if (d.size() != field.degree()) throw ParameterError("element has wrong number of digits");
    for (std::size_t i = 0; i < d.size(); ++i) m(i, j) = d[i];
  }
  return m;
}

/// Dimension of the F_q-span of the entries: the rank of the vector in the rank metric.
inline std::size_t rank_over_base(const ExtField& field, std::span<const ExtElem> v) {
  if (v.empty()) return 0;
  return rank(field.base(), digit_matrix(field, v));
}

inline std::size_t rank_over_base(std::span<const ExtElem> v) {
  if (v.empty()) return 0;
  return rank_over_base(v.front().field(), v);
}

/// Row vector times an F_q matrix: out_j = sum_i v_i * M(i, j).
inline ExtVector times(const ExtField& field, std::span<const ExtElem> v, const BaseMatrix& m) {
  if (v.size() != m.rows())
    throw ParameterError("vector of length " + std::to_string(v.size()) + " times matrix with " +
                         std::to_string(m.rows()) + " rows");
  const std::size_t n = field.degree();
  const Digit q = field.q();
  ExtVector out;
  out.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::uint64_t s = m(i, j);
      if (!s) continue;
      const auto& d = v[i].digits();
      for (std::size_t t = 0; t < n; ++t) acc[t] += s * d[t];
    }
    std::vector<Digit> digits(n);
    for (std::size_t t = 0; t < n; ++t) digits[t] = static_cast<Digit>(acc[t] % q);
    out.push_back(field.from_digits(std::move(digits)));
  }
  return out;
}

inline ExtVector add(std::span<const ExtElem> a, std::span<const ExtElem> b) {
  if (a.size() != b.size()) throw ParameterError("vector length mismatch");
  ExtVector out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

inline ExtVector sub(std::span<const ExtElem> a, std::span<const ExtElem> b) {
  if (a.size() != b.size()) throw ParameterError("vector length mismatch");
  ExtVector out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

inline bool all_zero(std::span<const ExtElem> v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace rankstore
