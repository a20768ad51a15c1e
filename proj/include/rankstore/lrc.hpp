#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankstore/errors.hpp"
#include "rankstore/ext_field.hpp"
#include "rankstore/gabidulin.hpp"

namespace rankstore {

/// One locality group: consecutive data coordinates plus a sum parity.
struct LrcGroup {
  std::vector<std::size_t> members;
  std::size_t parity = 0;
};

/// Gabidulin codeword of length m followed by one parity per group.
/// Positions 0..m-1 hold data symbols, m..n-1 hold the group parities in group order.
struct LrcCode {
  GabidulinCode base;
  std::size_t r = 0;
  std::size_t j = 0;  ///< size of the remainder group, 0 when r | m
  std::vector<LrcGroup> groups;
  std::size_t n = 0;

  std::size_t k() const { return base.K; }
  std::size_t m() const { return base.m; }

  std::size_t group_of(std::size_t pos) const {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (groups[g].parity == pos) return g;
      for (auto i : groups[g].members)
        if (i == pos) return g;
    }
    throw ParameterError("position " + std::to_string(pos) + " out of range");
  }

  /// Evaluation point behind position pos: g_i for data, the group sum for a parity.
  ExtElem point(std::size_t pos) const {
    if (pos < m()) return base.eval_points[pos];
    const auto& grp = groups.at(group_of(pos));
    ExtElem s = base.field.zero();
    for (auto i : grp.members) s += base.eval_points[i];
    return s;
  }
};

inline LrcCode lrc_build(std::size_t m, std::size_t k_out, std::size_t r, std::size_t N, Digit q = 3) {
  if (k_out >= m) throw ParameterError("k_out < m violated");
  if (m > N) throw ParameterError("m <= N violated");
  if (r == 0 || r >= k_out) throw ParameterError("0 < r < k_out violated");
  const std::size_t j = m % r;
  if (j != 0 && j != k_out % r)
    throw ParameterError("neither m = 0 (mod r) nor m = k = j (mod r) holds (m mod r = " + std::to_string(j) +
                         ", k mod r = " + std::to_string(k_out % r) + ")");
  LrcCode code{make_gabidulin(ExtField::make(q, N), m, k_out), r, j, {}, 0};
  std::size_t next = m;
  for (std::size_t start = 0; start < m; start += r) {
    LrcGroup g;
    for (std::size_t i = start; i < m && i < start + r; ++i) g.members.push_back(i);
    g.parity = next++;
    code.groups.push_back(std::move(g));
  }
  code.n = next;
  return code;
}

inline ExtVector lrc_encode(const LrcCode& code, std::span<const ExtElem> message) {
  if (message.size() != code.k())
    throw ParameterError("lrc_encode: message has " + std::to_string(message.size()) + " symbols, expected " +
                         std::to_string(code.k()));
  auto word = gab_encode(code.base, message);
  for (const auto& g : code.groups) {
    ExtElem s = code.base.field.zero();
    for (auto i : g.members) s += word[i];
    word.push_back(s);
  }
  return word;
}

inline ExtVector lrc_encode(const LrcCode& code, const ExtVector& message) {
  return lrc_encode(code, std::span<const ExtElem>(message));
}

struct LocalRepair {
  ExtElem value;
  std::vector<std::size_t> accessed;
};

/// Rebuilds one position from its group. Every read goes through `accessed`.
inline LocalRepair lrc_local_repair(const LrcCode& code, std::span<const std::optional<ExtElem>> symbols,
                                    std::size_t failed) {
  if (symbols.size() != code.n)
    throw ParameterError("lrc_local_repair: expected " + std::to_string(code.n) + " symbols");
  const auto& g = code.groups[code.group_of(failed)];
  std::vector<std::size_t> needed;
  for (auto i : g.members)
    if (i != failed) needed.push_back(i);
  if (failed != g.parity) needed.push_back(g.parity);

  LocalRepair out{code.base.field.zero(), {}};
  for (auto i : needed) {
    if (!symbols[i])
      throw LocalRepairImpossible("position " + std::to_string(i) + " of the group is also missing");
    out.accessed.push_back(i);
    if (failed == g.parity || i == g.parity)
      out.value += *symbols[i];
    else
      out.value -= *symbols[i];
  }
  return out;
}

inline std::size_t lrc_min_distance(std::size_t n, std::size_t k_out, std::size_t r) {
  if (r == 0 || r >= k_out || k_out >= n) throw ParameterError("r < k_out < n violated");
  return n - k_out + 2 - (k_out + r - 1) / r;
}

/// Decodes from surviving positions, each mapped to its evaluation point.
inline DecodeResult lrc_decode(const LrcCode& code, std::span<const std::optional<ExtElem>> received) {
  if (received.size() != code.n)
    throw ParameterError("lrc_decode: expected " + std::to_string(code.n) + " symbols");
  ExtVector points, values;
  for (std::size_t i = 0; i < code.n; ++i) {
    if (!received[i]) continue;
    points.push_back(code.point(i));
    values.push_back(*received[i]);
  }
  return decode_at_points(code.base.field, points, values, code.k());
}

inline DecodeResult lrc_decode(const LrcCode& code, const std::vector<std::optional<ExtElem>>& received) {
  return lrc_decode(code, std::span<const std::optional<ExtElem>>(received));
}

}  // namespace rankstore
