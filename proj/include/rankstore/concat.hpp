#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankstore/array_codes.hpp"
#include "rankstore/errors.hpp"
#include "rankstore/ext_field.hpp"
#include "rankstore/gabidulin.hpp"

namespace rankstore {

struct SystemParams {
  Digit q = 3;
  std::size_t N = 0, m = 0, alpha = 0, k = 0, n = 0, d = 0, beta = 0, t = 0;
  std::size_t K = 0;      ///< outer dimension
  std::size_t delta = 0;  ///< outer rank distance m - K + 1

  bool theorem1_hypothesis() const { return delta >= 2 * t * alpha + 1; }
};

namespace detail {

inline void check_geometry(std::size_t alpha, std::size_t k, std::size_t t, std::size_t n, std::size_t d) {
  if (alpha == 0 || k == 0) throw ParameterError("alpha and k must be positive");
  if (k <= 2 * t)
    throw ParameterError("k > 2t violated (k=" + std::to_string(k) + ", t=" + std::to_string(t) + ")");
  if (n <= k) throw ParameterError("n > k violated");
  if (d < k || d > n - 1) throw ParameterError("k <= d <= n-1 violated");
  if (alpha % (d - k + 1) != 0) throw ParameterError("(d-k+1) | alpha violated");
}

}  // namespace detail

/// Parameters at the optimum: K = alpha (k - 2t), delta = 2 t alpha + 1, N = m = alpha k.
inline SystemParams plan_params(std::size_t alpha, std::size_t k, std::size_t t, std::size_t n, std::size_t d,
                                Digit q = 3) {
  detail::check_geometry(alpha, k, t, n, d);
  PrimeField check(q);
  SystemParams p;
  p.q = q;
  p.alpha = alpha;
  p.k = k;
  p.t = t;
  p.n = n;
  p.d = d;
  p.m = alpha * k;
  p.N = p.m;
  p.beta = alpha / (d - k + 1);
  p.K = alpha * (k - 2 * t);
  p.delta = p.m - p.K + 1;
  return p;
}

/// Same geometry with an explicit outer dimension; delta follows from K and
/// need not reach 2 t alpha + 1.
inline SystemParams plan_params_with_dimension(std::size_t alpha, std::size_t k, std::size_t t, std::size_t n,
                                               std::size_t d, std::size_t K, Digit q = 3) {
  detail::check_geometry(alpha, k, t, n, d);
  auto p = plan_params(alpha, k, t, n, d, q);
  if (K == 0 || K > p.m) throw ParameterError("outer dimension must satisfy 1 <= K <= m");
  p.K = K;
  p.delta = p.m - K + 1;
  return p;
}

/// Bound (3): sum over i = 2t+1..k of min((d - i + 1) beta, alpha).
inline std::size_t resilience_capacity(std::size_t alpha, std::size_t beta, std::size_t k, std::size_t d,
                                       std::size_t t) {
  if (2 * t >= k) throw ParameterError("t < k/2 violated");
  if (d + 1 < k) throw ParameterError("d >= k - 1 required");
  std::size_t c = 0;
  for (std::size_t i = 2 * t + 1; i <= k; ++i) c += std::min((d - i + 1) * beta, alpha);
  return c;
}

/// Outer Gabidulin code followed by an inner MDS array code.
struct ConcatScheme {
  SystemParams params;
  ExtField field;
  GabidulinCode outer;
  ArrayCode inner;
};

inline ConcatScheme make_scheme(const SystemParams& p, const ArrayCode& inner) {
  if (inner.q != p.q || inner.n != p.n || inner.k != p.k || inner.alpha != p.alpha || inner.d != p.d)
    throw ParameterError("inner code " + inner.name + " does not match the system parameters");
  auto field = ExtField::make(p.q, p.N);
  return {p, field, make_gabidulin(field, p.m, p.K), inner};
}

/// The file as K N base digits and as K message symbols; symbol i holds digits
/// [iN, (i+1)N).
struct StoredFile {
  std::vector<Digit> raw;
  ExtVector message;

  bool operator==(const StoredFile& o) const { return raw == o.raw; }
};

inline StoredFile file_from_digits(const ConcatScheme& s, std::vector<Digit> raw) {
  const std::size_t need = s.params.K * s.params.N;
  if (raw.size() != need)
    throw ParameterError("file must hold K*N = " + std::to_string(need) + " digits, got " + std::to_string(raw.size()));
  StoredFile f{std::move(raw), {}};
  for (std::size_t i = 0; i < s.params.K; ++i)
    f.message.push_back(s.field.from_digits(std::vector<Digit>(f.raw.begin() + static_cast<std::ptrdiff_t>(i * s.params.N),
                                                               f.raw.begin() + static_cast<std::ptrdiff_t>((i + 1) * s.params.N))));
  return f;
}

inline StoredFile file_from_message(const ExtVector& message) {
  StoredFile f;
  f.message = message;
  for (const auto& e : message) f.raw.insert(f.raw.end(), e.digits().begin(), e.digits().end());
  return f;
}

inline StoredFile random_file(const ConcatScheme& s, Rng& rng) {
  std::vector<Digit> raw(s.params.K * s.params.N);
  for (auto& v : raw) v = rng.below(s.params.q);
  return file_from_digits(s, std::move(raw));
}

/// Contiguous split of the length-m codeword into k blocks of alpha.
inline NodeBlocks split_blocks(const ExtVector& c, std::size_t k, std::size_t alpha) {
  NodeBlocks out;
  for (std::size_t i = 0; i < k; ++i)
    out.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(i * alpha), c.begin() + static_cast<std::ptrdiff_t>((i + 1) * alpha));
  return out;
}

inline ExtVector join_blocks(const NodeBlocks& b) {
  ExtVector out;
  for (const auto& x : b) out.insert(out.end(), x.begin(), x.end());
  return out;
}

inline NodeBlocks store_message(const ConcatScheme& s, const ExtVector& message) {
  const auto c = gab_encode(s.outer, message);
  return ac_encode(s.inner, split_blocks(c, s.params.k, s.params.alpha));
}

inline NodeBlocks store(const ConcatScheme& s, const StoredFile& file) {
  if (file.raw.size() != s.params.K * s.params.N) throw ParameterError("file size does not match K*N");
  return store_message(s, file.message);
}

struct CollectResult {
  std::optional<StoredFile> file;
  DecodeDiagnostics diagnostics;
  ExtVector inner_word;  ///< c + e B' as seen by the outer decoder

  bool ok() const { return file.has_value(); }
};

/// Reads k nodes (contents[i] belongs to node indices[i]); nodes listed in
/// erased are treated as unknown and turned into alpha erasure directions each.
inline CollectResult collect(const ConcatScheme& s, const NodeBlocks& contents, const std::vector<std::size_t>& indices,
                             const std::vector<std::size_t>& erased = {}) {
  const auto& p = s.params;
  if (indices.size() != p.k || contents.size() != p.k)
    throw ParameterError("collect needs exactly k = " + std::to_string(p.k) + " nodes");
  NodeBlocks obs = contents;
  for (auto e : erased) {
    auto it = std::find(indices.begin(), indices.end(), e);
    if (it == indices.end()) throw ParameterError("erased node " + std::to_string(e + 1) + " is not in the subset");
    obs[static_cast<std::size_t>(it - indices.begin())] = ExtVector(p.alpha, s.field.zero());
  }
  auto sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  bool systematic = true;
  for (std::size_t i = 0; i < p.k; ++i) systematic = systematic && indices[i] == i;

  CollectResult out;
  const auto bf = s.inner.field();
  BaseMatrix ginv;
  if (systematic) {
    out.inner_word = join_blocks(obs);
    ginv = identity(bf, p.m);
  } else {
    out.inner_word = join_blocks(ac_decode_any_k(s.inner, obs, indices));
    ginv = *inverse(bf, detail::nodes_matrix(s.inner, indices));
  }
  ErasureInfo er;
  for (auto e : erased) {
    const auto pos = static_cast<std::size_t>(std::find(indices.begin(), indices.end(), e) - indices.begin());
    er.directions = vstack(er.directions, submatrix(ginv, pos * p.alpha, 0, p.alpha, p.m));
  }
  auto r = gab_decode(s.outer, out.inner_word, er);
  out.diagnostics = r.diagnostics;
  if (r) out.file = file_from_message(*r.message);
  return out;
}

/// Smallest D with q^D >= 256: digits per byte.
inline std::size_t digits_per_byte(Digit q) {
  std::size_t d = 0;
  for (std::uint64_t v = 1; v < 256; v *= q) ++d;
  return d;
}

/// Each byte becomes digits_per_byte(q) base-q digits, most significant first.
inline std::vector<Digit> bytes_to_digits(const std::vector<std::uint8_t>& bytes, Digit q) {
  const std::size_t D = digits_per_byte(q);
  std::vector<Digit> out;
  out.reserve(bytes.size() * D);
  for (auto b : bytes) {
    std::vector<Digit> ds(D);
    unsigned v = b;
    for (std::size_t i = D; i-- > 0;) {
      ds[i] = static_cast<Digit>(v % q);
      v /= q;
    }
    out.insert(out.end(), ds.begin(), ds.end());
  }
  return out;
}

/// Inverse of bytes_to_digits; trailing padding beyond byte_length is ignored.
inline std::vector<std::uint8_t> digits_to_bytes(const std::vector<Digit>& digits, Digit q, std::size_t byte_length) {
  const std::size_t D = digits_per_byte(q);
  if (digits.size() < byte_length * D) throw ParameterError("not enough digits for the recorded byte length");
  std::vector<std::uint8_t> out(byte_length);
  for (std::size_t i = 0; i < byte_length; ++i) {
    unsigned v = 0;
    for (std::size_t j = 0; j < D; ++j) v = v * q + digits[i * D + j];
    if (v > 255) throw ParameterError("digit group does not encode a byte");
    out[i] = static_cast<std::uint8_t>(v);
  }
  return out;
}

}  // namespace rankstore
