#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rankstore/errors.hpp"

namespace rankstore {

/// Residue modulo the base-field characteristic, always kept in [0, q).
using Digit = std::uint32_t;

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p = 2; p * p <= v; ++p)
    if (v % p == 0) return false;
  return true;
}

inline std::uint64_t next_prime(std::uint64_t v) {
  do {
    ++v;
  } while (!is_prime(v));
  return v;
}

/// The prime field F_q. Stateless apart from q; all operations are pure.
class PrimeField {
 public:
  using value_type = Digit;

  PrimeField() = default;
  explicit PrimeField(Digit q) : q_(q) {
    if (q < 3 || q > 65521 || !is_prime(q))
      throw ParameterError("base field order must be a prime in [3, 65521], got " + std::to_string(q));
  }

  Digit q() const { return q_; }

  Digit zero() const { return 0; }
  Digit one() const { return 1; }
  Digit reduce(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(q_);
    return static_cast<Digit>(r < 0 ? r + q_ : r);
  }
  Digit add(Digit a, Digit b) const { return (a + b) % q_; }
  Digit sub(Digit a, Digit b) const { return (a + q_ - b) % q_; }
  Digit neg(Digit a) const { return a == 0 ? 0 : q_ - a; }
  Digit mul(Digit a, Digit b) const {
    return static_cast<Digit>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  Digit pow(Digit a, std::uint64_t e) const {
    std::uint64_t r = 1, b = a % q_;
    while (e) {
      if (e & 1) r = r * b % q_;
      b = b * b % q_;
      e >>= 1;
    }
    return static_cast<Digit>(r);
  }
  Digit inv(Digit a) const {
    if (a % q_ == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
    return pow(a, q_ - 2);
  }
  bool is_zero(Digit a) const { return a == 0; }

  bool operator==(const PrimeField&) const = default;

 private:
  Digit q_ = 3;
};

/// Dense polynomials over F_q, little-endian coefficient vectors.
namespace poly {

using Poly = std::vector<Digit>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

inline Poly sub(const PrimeField& f, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  trim(a);
  return a;
}

/// Remainder of a modulo b (b nonzero).
inline Poly mod(const PrimeField& f, Poly a, const Poly& b) {
  const int db = degree(b);
  if (db < 0) throw DivisionByZero("polynomial division by zero");
  const Digit lead_inv = f.inv(b[db]);
  for (int da = degree(a); da >= db; da = degree(a)) {
    const Digit c = f.mul(a[da], lead_inv);
    const int shift = da - db;
    for (int i = 0; i <= db; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
  }
  trim(a);
  return a;
}

/// Quotient and remainder of a by b (b nonzero).
inline std::pair<Poly, Poly> divmod(const PrimeField& f, Poly a, const Poly& b) {
  const int db = degree(b);
  if (db < 0) throw DivisionByZero("polynomial division by zero");
  const Digit lead_inv = f.inv(b[db]);
  const int da0 = degree(a);
  Poly quot(da0 >= db ? da0 - db + 1 : 0, 0);
  for (int da = da0; da >= db; da = degree(a)) {
    const Digit c = f.mul(a[da], lead_inv);
    const int shift = da - db;
    quot[shift] = c;
    for (int i = 0; i <= db; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
  }
  trim(a);
  trim(quot);
  return {std::move(quot), std::move(a)};
}

inline Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

inline Poly mulmod(const PrimeField& f, const Poly& a, const Poly& b, const Poly& m) {
  return mod(f, mul(f, a, b), m);
}

inline Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly r{1};
  base = mod(f, std::move(base), m);
  while (e) {
    if (e & 1) r = mulmod(f, r, base, m);
    base = mulmod(f, base, base, m);
    e >>= 1;
  }
  return r;
}

inline Poly gcd(const PrimeField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test: f (monic, degree N) is irreducible iff x^{q^N} = x mod f and
/// gcd(x^{q^{N/p}} - x, f) = 1 for every prime p dividing N.
inline bool is_irreducible(const PrimeField& f, const Poly& modulus) {
  const int n = degree(modulus);
  if (n < 1) return false;
  if (n == 1) return true;
  std::vector<int> prime_divisors;
  for (int p = 2, r = n; p <= r; ++p) {
    if (r % p == 0) {
      prime_divisors.push_back(p);
      while (r % p == 0) r /= p;
    }
  }
  const Poly x{0, 1};
  // frob[i] = x^{q^i} mod f
  std::vector<Poly> frob{mod(f, x, modulus)};
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(f, frob.back(), f.q(), modulus));
  if (sub(f, frob[n], x) != Poly{}) return false;
  for (int p : prime_divisors) {
    Poly g = gcd(f, sub(f, frob[n / p], x), modulus);
    if (degree(g) != 0) return false;
  }
  return true;
}

/// Smallest monic irreducible of degree N, ordering candidates by the base-q
/// counter of their lower coefficients (constant term least significant).
inline Poly smallest_irreducible(const PrimeField& f, std::size_t degree_n) {
  if (degree_n == 0) throw ParameterError("extension degree must be positive");
  Poly cand(degree_n + 1, 0);
  cand[degree_n] = 1;
  while (true) {
    if (is_irreducible(f, cand)) return cand;
    std::size_t i = 0;
    while (i < degree_n) {
      if (++cand[i] < f.q()) break;
      cand[i++] = 0;
    }
    if (i == degree_n) throw InternalError("no irreducible polynomial found");
  }
}

}  // namespace poly
}  // namespace rankstore
