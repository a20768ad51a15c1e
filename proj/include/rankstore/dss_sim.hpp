#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rankstore/array_codes.hpp"
#include "rankstore/concat.hpp"
#include "rankstore/errors.hpp"
#include "rankstore/gabidulin.hpp"

namespace rankstore {

enum class AdversaryModel { none, static_errors, dynamic };

inline std::string to_string(AdversaryModel m) {
  switch (m) {
    case AdversaryModel::none: return "none";
    case AdversaryModel::static_errors: return "static";
    case AdversaryModel::dynamic: return "dynamic";
  }
  return "?";
}

inline AdversaryModel parse_adversary_model(const std::string& s) {
  if (s == "none") return AdversaryModel::none;
  if (s == "static") return AdversaryModel::static_errors;
  if (s == "dynamic") return AdversaryModel::dynamic;
  throw ParameterError("unknown adversary model '" + s + "' (expected none, static or dynamic)");
}

/// What a compromised node is asked to send: honest = content V.
struct TransmissionRequest {
  std::size_t step;
  std::size_t sender;
  std::string event;
  const ExtField& field;
  const ExtVector& content;
  const BaseMatrix& v;
  const ExtVector& honest;
  const BaseMatrix& registry;  ///< N x r basis of the sender's signed column space
};

using Policy = std::function<ExtVector(const TransmissionRequest&, Rng&)>;

/// True iff every symbol lies in the F_q-span of the basis columns.
inline bool in_column_space(const ExtField& field, const BaseMatrix& basis, const ExtVector& payload) {
  const auto bf = field.base();
  const std::size_t r = basis.cols() == 0 ? 0 : rank(bf, basis);
  for (const auto& s : payload) {
    BaseMatrix col(field.degree(), 1);
    for (std::size_t i = 0; i < field.degree(); ++i) col(i, 0) = s.digits()[i];
    if (rank(bf, basis.cols() == 0 ? col : hstack(basis, col)) != r) return false;
  }
  return true;
}

namespace detail {

inline ExtVector random_span_element(const TransmissionRequest& req, Rng& rng, std::size_t count) {
  ExtVector out;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<Digit> acc(req.field.degree(), 0);
    for (std::size_t c = 0; c < req.registry.cols(); ++c) {
      const Digit l = rng.below(req.field.q());
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = (acc[i] + l * req.registry(i, c)) % req.field.q();
    }
    out.push_back(req.field.from_digits(std::move(acc)));
  }
  return out;
}

}  // namespace detail

/// Shipped policies: honest, rerandomize (fresh random symbols every time),
/// in_subspace (random vectors inside the signed space), off_subspace (honest
/// payload plus a random vector outside it).
inline Policy make_policy(const std::string& name) {
  if (name == "honest") return [](const TransmissionRequest& r, Rng&) { return r.honest; };
  if (name == "rerandomize")
    return [](const TransmissionRequest& r, Rng& rng) {
      ExtVector out;
      for (std::size_t i = 0; i < r.honest.size(); ++i) out.push_back(r.field.random(rng));
      return out;
    };
  if (name == "in_subspace")
    return [](const TransmissionRequest& r, Rng& rng) { return detail::random_span_element(r, rng, r.honest.size()); };
  if (name == "off_subspace")
    return [](const TransmissionRequest& r, Rng& rng) {
      while (true) {
        ExtVector out = r.honest;
        out[rng.index(out.size())] += r.field.random(rng);
        if (!in_column_space(r.field, r.registry, out)) return out;
      }
    };
  throw ParameterError("unknown adversary policy '" + name +
                       "' (expected honest, rerandomize, in_subspace or off_subspace)");
}

struct Adversary {
  AdversaryModel model = AdversaryModel::none;
  std::vector<std::size_t> nodes;         ///< compromised, 0-based
  std::string policy_name = "honest";     ///< dynamic model only
  Policy policy;                          ///< overrides policy_name when set
  std::vector<ExtVector> static_errors;   ///< per compromised node; random when empty

  bool compromised(std::size_t node) const { return std::find(nodes.begin(), nodes.end(), node) != nodes.end(); }
};

struct DssEvent {
  std::size_t step = 0;
  std::string op;
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> helpers;
  std::vector<std::size_t> detected;
  std::string method;
  std::size_t download = 0;
  std::string outcome;
  std::size_t error_rank = 0;
  std::size_t aggregate_rank = 0;
  std::vector<std::pair<std::size_t, BaseMatrix>> propagation;  ///< (origin node, taint block)
};

/// content_i = truth_i + y_e T_i for every node i.
struct DssState {
  ConcatScheme scheme;
  StoredFile file;
  Adversary adversary;
  std::uint64_t seed = 0;
  PlanSearchOptions plan_options;

  NodeBlocks truth, nodes;
  ExtVector y_e;
  std::vector<BaseMatrix> taint;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> static_origin;  ///< node -> (offset, length) in y_e
  std::vector<BaseMatrix> registry;
  std::vector<std::optional<RepairPlan>> plans;
  std::vector<DssEvent> log;
  std::size_t max_aggregate_rank = 0;

  const SystemParams& params() const { return scheme.params; }
  std::size_t rank_bound() const { return params().t * params().alpha; }
};

namespace detail {

inline BaseMatrix column_basis(const ExtField& field, const ExtVector& content) {
  const auto e = row_reduce(field.base(), transpose(digit_matrix(field, content)));
  BaseMatrix out(field.degree(), 0);
  for (std::size_t r = 0; r < e.rank(); ++r) out = hstack(out, transpose(submatrix(e.rref, r, 0, 1, field.degree())));
  return out;
}

inline void sign(DssState& s, std::size_t node) { s.registry[node] = column_basis(s.scheme.field, s.nodes[node]); }

/// Appends new error coordinates delta; node gets rows for them, others zero.
inline void append_taint(DssState& s, const ExtVector& delta, std::size_t node, const BaseMatrix& rows) {
  const std::size_t a = s.params().alpha;
  s.y_e.insert(s.y_e.end(), delta.begin(), delta.end());
  for (std::size_t i = 0; i < s.taint.size(); ++i)
    s.taint[i] = vstack(s.taint[i], i == node ? rows : BaseMatrix(delta.size(), a, 0));
}

inline void reset_taint(DssState& s, std::size_t node) { s.taint[node] = BaseMatrix(s.y_e.size(), s.params().alpha, 0); }

/// Registers content - truth as fresh coordinates for node.
inline void install(DssState& s, std::size_t node, ExtVector content) {
  s.nodes[node] = std::move(content);
  reset_taint(s, node);
  const auto dev = sub(s.nodes[node], s.truth[node]);
  if (!all_zero(dev)) append_taint(s, dev, node, identity(s.scheme.field.base(), s.params().alpha));
}

inline std::size_t aggregate_rank(const DssState& s) {
  ExtVector all;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    auto d = sub(s.nodes[i], s.truth[i]);
    all.insert(all.end(), d.begin(), d.end());
  }
  return rank_over_base(s.scheme.field, all);
}

inline void check_taint(const DssState& s) {
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto dev = sub(s.nodes[i], s.truth[i]);
    if (s.y_e.empty()) {
      if (!all_zero(dev)) throw InternalError("node " + std::to_string(i + 1) + " deviates without registered error");
      continue;
    }
    if (times(s.scheme.field, s.y_e, s.taint[i]) != dev)
      throw InternalError("taint bookkeeping out of step for node " + std::to_string(i + 1));
  }
}

inline DssEvent& finish(DssState& s, DssEvent ev) {
  check_taint(s);
  ev.step = s.log.size() + 1;
  ev.aggregate_rank = aggregate_rank(s);
  s.max_aggregate_rank = std::max(s.max_aggregate_rank, ev.aggregate_rank);
  s.log.push_back(std::move(ev));
  return s.log.back();
}

inline Rng event_rng(const DssState& s) { return Rng(Rng::mix(s.seed, s.log.size() + 1)); }

inline ExtVector transmit(const DssState& s, std::size_t sender, const BaseMatrix& v, const std::string& event,
                          Rng& rng) {
  auto honest = ac_download(s.nodes[sender], v);
  if (s.adversary.model != AdversaryModel::dynamic || !s.adversary.compromised(sender)) return honest;
  const auto policy = s.adversary.policy ? s.adversary.policy : make_policy(s.adversary.policy_name);
  TransmissionRequest req{s.log.size() + 1, sender, event, s.scheme.field, s.nodes[sender], v, honest, s.registry[sender]};
  auto out = policy(req, rng);
  if (out.size() != honest.size()) throw ParameterError("adversary policy returned a payload of the wrong length");
  return out;
}

inline const RepairPlan& plan_for(DssState& s, std::size_t failed) {
  if (!s.plans[failed]) s.plans[failed] = ac_find_repair_plan(s.scheme.inner, failed, s.plan_options);
  return *s.plans[failed];
}

inline void check_node(const DssState& s, std::size_t node) {
  if (node >= s.params().n) throw ParameterError("node " + std::to_string(node + 1) + " out of range");
}

inline const RepairPlan& checked_plan(DssState& s, std::size_t failed, const std::optional<std::vector<std::size_t>>& helpers) {
  check_node(s, failed);
  const auto& plan = plan_for(s, failed);
  if (helpers) {
    auto h = *helpers;
    std::sort(h.begin(), h.end());
    if (h != plan.helpers) {
      std::string want;
      for (auto x : plan.helpers) want += (want.empty() ? "" : ",") + std::to_string(x + 1);
      throw ParameterError("repair of node " + std::to_string(failed + 1) + " uses helpers " + want);
    }
  }
  return plan;
}

/// Installs stacked payloads through the plan; deviations of payloads from
/// the honest downloads become new error coordinates.
inline void install_repair(DssState& s, const RepairPlan& plan, const std::vector<ExtVector>& payloads) {
  const auto& f = s.scheme.field;
  const auto bf = f.base();
  ExtVector stacked;
  for (const auto& p : payloads) stacked.insert(stacked.end(), p.begin(), p.end());
  const auto content = times(f, stacked, plan.reconstruct);
  BaseMatrix t(s.y_e.size(), s.params().alpha, 0);
  for (std::size_t p = 0; p < plan.helpers.size(); ++p)
    t = add(bf, t, multiply(bf, s.taint[plan.helpers[p]], plan.propagation(bf, p)));
  s.nodes[plan.failed] = content;
  s.taint[plan.failed] = std::move(t);
  for (std::size_t p = 0; p < plan.helpers.size(); ++p) {
    const auto delta = sub(payloads[p], ac_download(s.nodes[plan.helpers[p]], plan.download[p]));
    if (!all_zero(delta)) append_taint(s, delta, plan.failed, plan.reconstruct_rows(p));
  }
  sign(s, plan.failed);
}

inline std::vector<std::pair<std::size_t, BaseMatrix>> static_propagation(const DssState& s, std::size_t node) {
  std::vector<std::pair<std::size_t, BaseMatrix>> out;
  for (const auto& [origin, range] : s.static_origin)
    out.emplace_back(origin, submatrix(s.taint[node], range.first, 0, range.second, s.params().alpha));
  return out;
}

}  // namespace detail

inline std::size_t aggregate_error_rank(const DssState& s) { return detail::aggregate_rank(s); }

/// Stores the file, signs every node, then applies static corruptions once.
inline DssState sim_init(const ConcatScheme& scheme, const StoredFile& file, Adversary adversary, std::uint64_t seed,
                         PlanSearchOptions plan_options = {}) {
  const auto& p = scheme.params;
  if (adversary.model == AdversaryModel::none) adversary.nodes.clear();
  if (adversary.nodes.size() > p.t)
    throw ParameterError("adversary controls " + std::to_string(adversary.nodes.size()) + " nodes, budget t = " +
                         std::to_string(p.t));
  auto sorted = adversary.nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError("compromised nodes must be distinct");
  for (auto v : sorted)
    if (v >= p.n) throw ParameterError("compromised node " + std::to_string(v + 1) + " out of range");
  if (adversary.model == AdversaryModel::dynamic && !adversary.policy) make_policy(adversary.policy_name);

  DssState s;
  s.scheme = scheme;
  s.file = file;
  s.adversary = std::move(adversary);
  s.seed = seed;
  s.plan_options = plan_options;
  s.truth = store(scheme, file);
  s.nodes = s.truth;
  s.taint.assign(p.n, BaseMatrix(0, p.alpha));
  s.registry.assign(p.n, BaseMatrix());
  s.plans.assign(p.n, std::nullopt);
  for (std::size_t i = 0; i < p.n; ++i) detail::sign(s, i);
  detail::finish(s, DssEvent{0, "store", {}, {}, {}, "", 0, "ok", 0, 0, {}});

  if (s.adversary.model == AdversaryModel::static_errors) {
    if (!s.adversary.static_errors.empty() && s.adversary.static_errors.size() != s.adversary.nodes.size())
      throw ParameterError("one static error vector per compromised node required");
    for (std::size_t i = 0; i < s.adversary.nodes.size(); ++i) {
      const auto node = s.adversary.nodes[i];
      ExtVector e;
      if (s.adversary.static_errors.empty()) {
        auto rng = detail::event_rng(s);
        for (std::size_t j = 0; j < p.alpha; ++j) e.push_back(scheme.field.random(rng));
        s.adversary.static_errors.push_back(e);
      } else {
        e = s.adversary.static_errors[i];
        if (e.size() != p.alpha) throw ParameterError("static error must have alpha symbols");
      }
      s.static_origin[node] = {s.y_e.size(), p.alpha};
      s.nodes[node] = add(s.nodes[node], e);
      detail::append_taint(s, e, node, identity(scheme.field.base(), p.alpha));
      DssEvent ev;
      ev.op = "corrupt";
      ev.nodes = {node};
      ev.error_rank = rank_over_base(scheme.field, e);
      ev.outcome = "ok";
      detail::finish(s, std::move(ev));
    }
  }
  return s;
}

/// Exact repair through the inner code's plan; compromised helpers transmit
/// per their model.
inline const DssEvent& sim_fail_repair(DssState& s, std::size_t failed,
                                       const std::optional<std::vector<std::size_t>>& helpers = std::nullopt) {
  const auto& plan = detail::checked_plan(s, failed, helpers);
  auto rng = detail::event_rng(s);
  std::vector<ExtVector> payloads;
  for (std::size_t p = 0; p < plan.helpers.size(); ++p)
    payloads.push_back(detail::transmit(s, plan.helpers[p], plan.download[p], "repair", rng));
  detail::install_repair(s, plan, payloads);
  DssEvent ev;
  ev.op = "repair";
  ev.nodes = {failed};
  ev.helpers = plan.helpers;
  ev.method = plan.method;
  ev.download = plan.bandwidth();
  ev.outcome = plan.warning.empty() ? "ok" : "ok (" + plan.warning + ")";
  ev.propagation = detail::static_propagation(s, failed);
  return detail::finish(s, std::move(ev));
}

struct SimCollect {
  CollectResult result;
  bool correct = false;
};

/// Reads k nodes (through the adversary for compromised ones) and decodes.
inline SimCollect sim_collect(DssState& s, const std::vector<std::size_t>& subset,
                              const std::vector<std::size_t>& erased = {}) {
  if (subset.size() != s.params().k) throw ParameterError("collect needs exactly k = " + std::to_string(s.params().k) + " nodes");
  for (auto v : subset) detail::check_node(s, v);
  auto rng = detail::event_rng(s);
  const auto id = identity(s.scheme.field.base(), s.params().alpha);
  NodeBlocks contents;
  for (auto v : subset) contents.push_back(detail::transmit(s, v, id, "collect", rng));
  SimCollect out;
  out.result = collect(s.scheme, contents, subset, erased);
  out.correct = out.result.ok() && *out.result.file == s.file;
  DssEvent ev;
  ev.op = "collect";
  ev.nodes = subset;
  ev.detected = erased;
  ev.download = s.params().k * s.params().alpha;
  ev.error_rank = out.result.diagnostics.estimated_error_rank;
  ev.outcome = !out.result.ok() ? "fail" : out.correct ? "ok" : "wrong";
  detail::finish(s, std::move(ev));
  return out;
}

/// Newcomer decodes the outer codeword from its d beta downloads, which are
/// evaluations of f at the points g G_h V_h, and rebuilds its block. On a decode
/// failure the node keeps its previous content.
inline const DssEvent& sim_naive_repair(DssState& s, std::size_t failed,
                                        const std::optional<std::vector<std::size_t>>& helpers = std::nullopt) {
  const auto& plan = detail::checked_plan(s, failed, helpers);
  const auto& field = s.scheme.field;
  auto rng = detail::event_rng(s);
  const auto bf = field.base();
  ExtVector points, values;
  for (std::size_t p = 0; p < plan.helpers.size(); ++p) {
    const auto h = plan.helpers[p];
    auto pay = detail::transmit(s, h, plan.download[p], "naive_repair", rng);
    auto pts = times(field, s.scheme.outer.eval_points, multiply(bf, s.scheme.inner.node_matrix(h), plan.download[p]));
    points.insert(points.end(), pts.begin(), pts.end());
    values.insert(values.end(), pay.begin(), pay.end());
  }
  auto r = decode_at_points(field, points, values, s.params().K);
  DssEvent ev;
  ev.op = "naive_repair";
  ev.nodes = {failed};
  ev.helpers = plan.helpers;
  ev.method = "naive";
  ev.download = plan.bandwidth();
  ev.error_rank = r.diagnostics.estimated_error_rank;
  if (r) {
    auto rebuilt = store_message(s.scheme, *r.message);
    detail::install(s, failed, rebuilt[failed]);
    detail::sign(s, failed);
    ev.outcome = s.nodes[failed] == s.truth[failed] ? "ok" : "wrong";
  } else {
    ev.outcome = "fail";
  }
  return detail::finish(s, std::move(ev));
}

/// Membership of every payload symbol in the sender's signed column space.
inline bool verifier_check(const DssState& s, std::size_t sender, const ExtVector& payload) {
  detail::check_node(s, sender);
  return in_column_space(s.scheme.field, s.registry[sender], payload);
}

/// Verified repair. Payloads that fail verification trigger the fallback:
/// full downloads from the lowest-indexed passing helpers, outer decoding with
/// the failing nodes as erasures, and restoration of the failed node and every
/// failing node. Restored nodes are re-signed.
inline const DssEvent& sim_verified_repair(DssState& s, std::size_t failed,
                                           const std::optional<std::vector<std::size_t>>& helpers = std::nullopt) {
  const auto& plan = detail::checked_plan(s, failed, helpers);
  const auto& p = s.params();
  auto rng = detail::event_rng(s);
  std::vector<ExtVector> payloads;
  std::vector<std::size_t> failing;
  for (std::size_t i = 0; i < plan.helpers.size(); ++i) {
    payloads.push_back(detail::transmit(s, plan.helpers[i], plan.download[i], "verified_repair", rng));
    if (!verifier_check(s, plan.helpers[i], payloads.back())) failing.push_back(plan.helpers[i]);
  }
  DssEvent ev;
  ev.op = "verified_repair";
  ev.nodes = {failed};
  ev.helpers = plan.helpers;
  ev.method = plan.method;
  ev.download = plan.bandwidth();
  if (failing.empty()) {
    detail::install_repair(s, plan, payloads);
    ev.outcome = "ok";
    ev.propagation = detail::static_propagation(s, failed);
    return detail::finish(s, std::move(ev));
  }

  const auto id = identity(s.scheme.field.base(), p.alpha);
  std::vector<std::size_t> chosen;
  NodeBlocks contents;
  bool enough = true;
  while (true) {
    chosen.clear();
    contents.clear();
    if (failing.size() >= p.k) {
      enough = false;
      break;
    }
    for (auto h : plan.helpers)
      if (std::find(failing.begin(), failing.end(), h) == failing.end() && chosen.size() < p.k - failing.size())
        chosen.push_back(h);
    if (chosen.size() < p.k - failing.size()) {
      enough = false;
      break;
    }
    bool clean = true;
    for (auto h : chosen) {
      auto full = detail::transmit(s, h, id, "fallback", rng);
      ev.download += p.alpha - plan.download[*plan.position_of(h)].cols();
      if (!verifier_check(s, h, full)) {
        failing.push_back(h);
        clean = false;
        break;
      }
      contents.push_back(std::move(full));
    }
    if (clean) break;
  }
  std::sort(failing.begin(), failing.end());
  ev.detected = failing;
  if (!enough) {
    ev.outcome = "fallback-fail (too few passing helpers)";
    return detail::finish(s, std::move(ev));
  }
  auto subset = chosen;
  for (auto f : failing) {
    subset.push_back(f);
    contents.push_back(ExtVector(p.alpha, s.scheme.field.zero()));
  }
  auto r = collect(s.scheme, contents, subset, failing);
  ev.error_rank = r.diagnostics.estimated_error_rank;
  if (!r.ok()) {
    ev.outcome = "fallback-fail (" + r.diagnostics.reason + ")";
    return detail::finish(s, std::move(ev));
  }
  const auto rebuilt = store_message(s.scheme, r.file->message);
  std::vector<std::size_t> restored{failed};
  restored.insert(restored.end(), failing.begin(), failing.end());
  bool exact = true;
  for (auto v : restored) {
    detail::install(s, v, rebuilt[v]);
    detail::sign(s, v);
    exact = exact && s.nodes[v] == s.truth[v];
  }
  ev.outcome = exact ? "fallback-ok" : "fallback-wrong";
  return detail::finish(s, std::move(ev));
}

namespace detail {

inline std::string node_list(const std::vector<std::size_t>& v) {
  std::string out;
  for (auto x : v) out += (out.empty() ? "" : ",") + std::to_string(x + 1);
  return out.empty() ? "-" : out;
}

inline void print_matrix(std::ostream& os, const BaseMatrix& m, const std::string& indent) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << indent;
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "\n";
  }
}

}  // namespace detail

/// Plain text report with a fixed field order. Node numbers are 1-based.
inline std::string sim_report(const DssState& s, const std::string& name = "") {
  const auto& p = s.params();
  std::ostringstream os;
  if (!name.empty()) os << "scenario: " << name << "\n";
  os << "code: " << s.scheme.inner.name << "\n";
  os << "q: " << p.q << "\nN: " << p.N << "\nm: " << p.m << "\nalpha: " << p.alpha << "\nk: " << p.k << "\nn: " << p.n
     << "\nd: " << p.d << "\nbeta: " << p.beta << "\nt: " << p.t << "\nK: " << p.K << "\ndelta: " << p.delta << "\n";
  if (2 * p.t < p.k) {
    const auto cap = resilience_capacity(p.alpha, p.beta, p.k, p.d, p.t);
    os << "resilience_capacity: " << cap << "\n";
    os << "capacity_attained: " << (p.K == cap ? "yes" : p.K < cap ? "below" : "above") << "\n";
  }
  os << "theorem1_hypothesis: " << (p.theorem1_hypothesis() ? "yes" : "no") << " (delta " << p.delta
     << " vs 2t*alpha+1 = " << 2 * p.t * p.alpha + 1 << ")\n";
  os << "adversary: " << to_string(s.adversary.model) << " nodes=" << detail::node_list(s.adversary.nodes);
  if (s.adversary.model == AdversaryModel::dynamic) os << " policy=" << (s.adversary.policy ? "custom" : s.adversary.policy_name);
  os << "\nseed: " << s.seed << "\n";
  for (const auto& e : s.log) {
    os << "event " << e.step << ": " << e.op;
    if (!e.nodes.empty()) os << (e.op == "collect" ? " nodes=" : " node=") << detail::node_list(e.nodes);
    if (!e.helpers.empty()) os << " helpers=" << detail::node_list(e.helpers);
    if (!e.method.empty()) os << " method=" << e.method;
    if (e.op != "store" && e.op != "corrupt") os << " download=" << e.download;
    if (!e.detected.empty()) os << (e.op == "collect" ? " erased=" : " detected=") << detail::node_list(e.detected);
    if (e.op == "corrupt" || e.op == "collect" || e.op == "naive_repair" || e.op == "verified_repair")
      os << " error_rank=" << e.error_rank;
    os << " outcome=" << e.outcome << " aggregate_rank=" << e.aggregate_rank << "\n";
    for (const auto& [origin, b] : e.propagation) {
      os << "  propagation node " << origin + 1 << " -> node " << e.nodes.front() + 1 << ":\n";
      detail::print_matrix(os, b, "    ");
    }
  }
  os << "aggregate_rank: " << aggregate_error_rank(s) << "\n";
  os << "max_aggregate_rank: " << s.max_aggregate_rank << "\n";
  os << "rank_bound_t_alpha: " << s.rank_bound() << "\n";
  os << "registry_dims:";
  for (std::size_t i = 0; i < s.registry.size(); ++i) os << " " << i + 1 << ":" << s.registry[i].cols();
  os << "\n";
  return os.str();
}

/// Re-runs the event log from the initial inputs.
inline DssState replay(const DssState& s) {
  Adversary adv = s.adversary;
  auto plan_options = s.plan_options;
  auto r = sim_init(s.scheme, s.file, adv, s.seed, plan_options);
  for (const auto& e : s.log) {
    if (e.op == "store" || e.op == "corrupt") continue;
    if (e.op == "repair") sim_fail_repair(r, e.nodes.front());
    else if (e.op == "naive_repair") sim_naive_repair(r, e.nodes.front());
    else if (e.op == "verified_repair") sim_verified_repair(r, e.nodes.front());
    else if (e.op == "collect") sim_collect(r, e.nodes, e.detected);
    else throw InternalError("unknown event '" + e.op + "' in log");
  }
  return r;
}

}  // namespace rankstore
