#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankstore/dss_sim.hpp"
#include "rankstore/lrc.hpp"

namespace rankstore {

/// Per-event expectations; unset fields are not checked.
struct EventExpect {
  std::optional<std::string> outcome;
  std::optional<bool> correct;
  std::optional<std::size_t> download;
  std::optional<std::size_t> error_rank;
  std::optional<std::size_t> aggregate_rank;
  std::optional<std::size_t> error_weight;
  std::optional<std::vector<std::size_t>> detected;
  std::optional<std::size_t> propagation_from;
  std::optional<BaseMatrix> propagation;
};

struct ScenarioEvent {
  std::string op;
  std::vector<std::size_t> nodes;  ///< 0-based
  std::optional<std::vector<std::size_t>> helpers;
  std::vector<std::size_t> erased;
  EventExpect expect;
};

struct ScenarioConfig {
  std::string name;
  std::string code;  ///< zigzag, hadamard or lrc
  std::size_t alpha = 0, k = 0, n = 0, d = 0, t = 0;
  std::optional<std::size_t> K;
  Digit q = 3;
  std::size_t m = 0, r = 0, N = 0;  ///< lrc only
  std::uint64_t seed = 1;
  AdversaryModel model = AdversaryModel::none;
  std::vector<std::size_t> adversary_nodes;
  std::string policy = "honest";
  bool rank_bound_each_event = false;
  std::vector<ScenarioEvent> events;
};

namespace detail {

using nlohmann::json;

inline void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ParameterError(where + " must be an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ParameterError("unknown key '" + key + "' in " + where);
}

inline std::size_t get_count(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ParameterError(where + "." + key + " is required");
  if (!j[key].is_number_unsigned()) throw ParameterError(where + "." + key + " must be a non-negative integer");
  return j[key].get<std::size_t>();
}

inline std::vector<std::size_t> get_nodes(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) throw ParameterError(where + " must be a list of node numbers");
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0 || v.get<std::size_t>() > n)
      throw ParameterError(where + ": node numbers run from 1 to n = " + std::to_string(n));
    out.push_back(v.get<std::size_t>() - 1);
  }
  return out;
}

inline EventExpect parse_expect(const json& j, std::size_t n, const std::string& where) {
  only_keys(j, {"outcome", "correct", "download", "error_rank", "aggregate_rank", "error_weight", "detected",
                "propagation"},
            where);
  EventExpect e;
  if (j.contains("outcome")) e.outcome = j["outcome"].get<std::string>();
  if (j.contains("correct")) e.correct = j["correct"].get<bool>();
  if (j.contains("download")) e.download = get_count(j, "download", where);
  if (j.contains("error_rank")) e.error_rank = get_count(j, "error_rank", where);
  if (j.contains("aggregate_rank")) e.aggregate_rank = get_count(j, "aggregate_rank", where);
  if (j.contains("error_weight")) e.error_weight = get_count(j, "error_weight", where);
  if (j.contains("detected")) e.detected = get_nodes(j["detected"], n, where + ".detected");
  if (j.contains("propagation")) {
    const auto& p = j["propagation"];
    only_keys(p, {"from", "matrix"}, where + ".propagation");
    e.propagation_from = get_nodes(json::array({p.at("from")}), n, where + ".propagation.from").front();
    const auto rows = p.at("matrix").get<std::vector<std::vector<Digit>>>();
    if (rows.empty() || rows.front().empty()) throw ParameterError(where + ".propagation.matrix is empty");
    BaseMatrix b(rows.size(), rows.front().size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != b.cols()) throw ParameterError(where + ".propagation.matrix rows differ in length");
      for (std::size_t c = 0; c < b.cols(); ++c) b(i, c) = rows[i][c];
    }
    e.propagation = b;
  }
  return e;
}

}  // namespace detail

/// Parses and validates a scenario; every rejection names the violated constraint.
inline ScenarioConfig parse_scenario(const std::string& text) {
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    detail::only_keys(j, {"name", "code", "params", "seed", "adversary", "assert", "events"}, "scenario");
    ScenarioConfig c;
    c.name = j.value("name", std::string("unnamed"));
    if (!j.contains("code")) throw ParameterError("scenario.code is required");
    c.code = j["code"].get<std::string>();
    if (c.code != "zigzag" && c.code != "hadamard" && c.code != "lrc")
      throw ParameterError("scenario.code must be zigzag, hadamard or lrc");
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw ParameterError("scenario.seed must be a non-negative integer");
      c.seed = j["seed"].get<std::uint64_t>();
    }
    const json params = j.value("params", json::object());
    if (c.code == "lrc") {
      detail::only_keys(params, {"m", "k", "r", "N", "q"}, "params");
      c.m = detail::get_count(params, "m", "params");
      c.k = detail::get_count(params, "k", "params");
      c.r = detail::get_count(params, "r", "params");
      c.N = params.contains("N") ? detail::get_count(params, "N", "params") : c.m;
      c.q = static_cast<Digit>(params.contains("q") ? detail::get_count(params, "q", "params") : 3);
      c.n = lrc_build(c.m, c.k, c.r, c.N, c.q).n;
    } else {
      detail::only_keys(params, {"alpha", "k", "n", "d", "t", "K", "q"}, "params");
      c.alpha = detail::get_count(params, "alpha", "params");
      c.k = detail::get_count(params, "k", "params");
      c.n = detail::get_count(params, "n", "params");
      c.d = detail::get_count(params, "d", "params");
      c.t = detail::get_count(params, "t", "params");
      if (params.contains("K")) c.K = detail::get_count(params, "K", "params");
      if (params.contains("q")) c.q = static_cast<Digit>(detail::get_count(params, "q", "params"));
      else if (c.code == "hadamard") c.q = 11;
      if (c.n != 5 || c.k != 3 || c.d != 4) throw ParameterError("zigzag and hadamard codes are (n, k, d) = (5, 3, 4)");
      if (c.code == "zigzag" && c.alpha != 4) throw ParameterError("zigzag code has alpha = 4");
      if (c.code == "hadamard" && c.alpha != 16) throw ParameterError("hadamard code has alpha = 16");
      if (c.K) plan_params_with_dimension(c.alpha, c.k, c.t, c.n, c.d, *c.K, c.q);
      else plan_params(c.alpha, c.k, c.t, c.n, c.d, c.q);
    }
    if (j.contains("adversary")) {
      const auto& a = j["adversary"];
      detail::only_keys(a, {"model", "nodes", "policy"}, "adversary");
      c.model = parse_adversary_model(a.value("model", std::string("none")));
      if (a.contains("nodes")) c.adversary_nodes = detail::get_nodes(a["nodes"], c.n, "adversary.nodes");
      c.policy = a.value("policy", std::string("honest"));
      if (c.model == AdversaryModel::dynamic) make_policy(c.policy);
      if (c.code == "lrc" && c.model == AdversaryModel::dynamic)
        throw ParameterError("lrc scenarios support static adversaries only");
      if (c.code != "lrc" && c.adversary_nodes.size() > c.t)
        throw ParameterError("adversary.nodes exceeds the budget t = " + std::to_string(c.t));
    }
    if (j.contains("assert")) {
      detail::only_keys(j["assert"], {"rank_bound_each_event"}, "assert");
      c.rank_bound_each_event = j["assert"].value("rank_bound_each_event", false);
    }
    const json events = j.value("events", json::array());
    if (!events.is_array()) throw ParameterError("scenario.events must be a list");
    for (std::size_t i = 0; i < events.size(); ++i) {
      const auto& e = events[i];
      const std::string where = "events[" + std::to_string(i) + "]";
      detail::only_keys(e, {"op", "node", "nodes", "helpers", "erased", "expect"}, where);
      ScenarioEvent ev;
      ev.op = e.at("op").get<std::string>();
      const bool is_collect = ev.op == "collect";
      const std::set<std::string> ops = c.code == "lrc" ? std::set<std::string>{"repair", "collect"}
                                                        : std::set<std::string>{"repair", "naive_repair",
                                                                                "verified_repair", "collect"};
      if (!ops.count(ev.op)) throw ParameterError(where + ": unknown op '" + ev.op + "' for code " + c.code);
      if (is_collect) {
        if (c.code != "lrc") {
          ev.nodes = detail::get_nodes(e.at("nodes"), c.n, where + ".nodes");
          if (ev.nodes.size() != c.k) throw ParameterError(where + ": collect needs exactly k = " + std::to_string(c.k) + " nodes");
        }
        if (e.contains("erased")) ev.erased = detail::get_nodes(e["erased"], c.n, where + ".erased");
      } else {
        ev.nodes = detail::get_nodes(json::array({e.at("node")}), c.n, where + ".node");
        if (e.contains("helpers")) {
          if (c.code == "lrc") throw ParameterError(where + ": lrc repair reads its own group, helpers not accepted");
          ev.helpers = detail::get_nodes(e["helpers"], c.n, where + ".helpers");
        }
      }
      if (e.contains("expect")) ev.expect = detail::parse_expect(e["expect"], c.n, where + ".expect");
      c.events.push_back(std::move(ev));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed scenario: ") + e.what());
  }
}

inline ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

struct ScenarioOutcome {
  std::string report;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

namespace detail {

inline std::string nodes_text(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s;
}

template <typename T>
void expect_eq(std::vector<std::string>& out, std::size_t step, const char* what, const std::optional<T>& want,
               const T& got, std::string (*show)(const T&)) {
  if (want && !(*want == got))
    out.push_back("event " + std::to_string(step) + ": expected " + what + " " + show(*want) + ", got " + show(got));
}

inline std::string show_size(const std::size_t& v) { return std::to_string(v); }
inline std::string show_str(const std::string& v) { return v; }
inline std::string show_bool(const bool& v) { return v ? "true" : "false"; }
inline std::string show_nodes(const std::vector<std::size_t>& v) { return "[" + nodes_text(v) + "]"; }
inline std::string show_matrix(const BaseMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ";" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + std::to_string(m(i, j));
  }
  return s + "]";
}

inline ScenarioOutcome run_dss_scenario(const ScenarioConfig& c) {
  const auto params = c.K ? plan_params_with_dimension(c.alpha, c.k, c.t, c.n, c.d, *c.K, c.q)
                          : plan_params(c.alpha, c.k, c.t, c.n, c.d, c.q);
  const auto inner = c.code == "zigzag" ? zigzag_5_3(c.q)
                     : c.q == 11       ? hadamard_5_3()
                                       : hadamard_5_3(hadamard_default_coefficients(c.q));
  const auto scheme = make_scheme(params, inner);
  Rng file_rng(Rng::mix(c.seed, 0));
  Adversary adv;
  adv.model = c.model;
  adv.nodes = c.adversary_nodes;
  adv.policy_name = c.policy;
  auto s = sim_init(scheme, random_file(scheme, file_rng), adv, c.seed);

  ScenarioOutcome out;
  auto check_bound = [&] {
    if (c.rank_bound_each_event && s.log.back().aggregate_rank > s.rank_bound())
      out.violations.push_back("event " + std::to_string(s.log.back().step) + ": aggregate rank " +
                               std::to_string(s.log.back().aggregate_rank) + " exceeds t*alpha = " +
                               std::to_string(s.rank_bound()));
  };
  for (std::size_t i = 0; i < s.log.size(); ++i)
    if (c.rank_bound_each_event && s.log[i].aggregate_rank > s.rank_bound())
      out.violations.push_back("event " + std::to_string(s.log[i].step) + ": aggregate rank exceeds t*alpha");

  for (const auto& e : c.events) {
    std::optional<bool> correct;
    if (e.op == "repair") sim_fail_repair(s, e.nodes.front(), e.helpers);
    else if (e.op == "naive_repair") sim_naive_repair(s, e.nodes.front(), e.helpers);
    else if (e.op == "verified_repair") sim_verified_repair(s, e.nodes.front(), e.helpers);
    else correct = sim_collect(s, e.nodes, e.erased).correct;
    const auto& ev = s.log.back();
    auto& v = out.violations;
    expect_eq(v, ev.step, "outcome", e.expect.outcome, ev.outcome, show_str);
    if (correct) expect_eq(v, ev.step, "correct", e.expect.correct, *correct, show_bool);
    else if (e.expect.correct) expect_eq(v, ev.step, "correct", e.expect.correct, s.nodes == s.truth, show_bool);
    expect_eq(v, ev.step, "download", e.expect.download, ev.download, show_size);
    expect_eq(v, ev.step, "error_rank", e.expect.error_rank, ev.error_rank, show_size);
    expect_eq(v, ev.step, "aggregate_rank", e.expect.aggregate_rank, ev.aggregate_rank, show_size);
    expect_eq(v, ev.step, "detected", e.expect.detected, ev.detected, show_nodes);
    if (e.expect.propagation) {
      BaseMatrix got;
      bool found = false;
      for (const auto& [origin, b] : ev.propagation)
        if (origin == *e.expect.propagation_from) {
          got = b;
          found = true;
        }
      if (!found)
        v.push_back("event " + std::to_string(ev.step) + ": no propagation from node " +
                    std::to_string(*e.expect.propagation_from + 1));
      else
        expect_eq(v, ev.step, "propagation", e.expect.propagation, got, show_matrix);
    }
    check_bound();
  }
  out.report = sim_report(s, c.name);
  return out;
}

struct LrcState {
  LrcCode code;
  ExtVector truth, nodes;
  std::size_t error_weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) w += nodes[i] != truth[i];
    return w;
  }
  std::size_t error_rank() const { return rank_over_base(code.base.field, sub(nodes, truth)); }
};

/// Static adversaries overwrite their positions once; local repairs read
/// whatever the group currently holds, so pollution spreads within a group.
inline ScenarioOutcome run_lrc_scenario(const ScenarioConfig& c) {
  LrcState st{lrc_build(c.m, c.k, c.r, c.N, c.q), {}, {}};
  const auto& F = st.code.base.field;
  Rng rng(Rng::mix(c.seed, 0));
  ExtVector msg;
  for (std::size_t i = 0; i < c.k; ++i) msg.push_back(F.random(rng));
  st.truth = lrc_encode(st.code, msg);
  st.nodes = st.truth;

  std::ostringstream os;
  os << "scenario: " << c.name << "\ncode: lrc\nq: " << c.q << "\nN: " << c.N << "\nm: " << c.m << "\nk: " << c.k
     << "\nr: " << c.r << "\nn: " << st.code.n << "\ngroups: " << st.code.groups.size()
     << "\nouter_delta: " << st.code.base.min_distance()
     << "\nd_min: " << lrc_min_distance(st.code.n, c.k, c.r) << "\nadversary: " << to_string(c.model)
     << " nodes=" << nodes_text(c.adversary_nodes) << "\nseed: " << c.seed << "\n";
  std::size_t step = 0;
  auto line = [&](const std::string& head, const std::string& outcome) {
    os << "event " << ++step << ": " << head << " error_weight=" << st.error_weight() << " error_rank=" << st.error_rank()
       << " outcome=" << outcome << "\n";
  };
  line("store", "ok");
  if (c.model == AdversaryModel::static_errors)
    for (auto v : c.adversary_nodes) {
      Rng erng(Rng::mix(c.seed, step + 1));
      ExtElem e = F.random(erng);
      while (e.is_zero()) e = F.random(erng);
      st.nodes[v] += e;
      line("corrupt node=" + std::to_string(v + 1), "ok");
    }

  ScenarioOutcome out;
  for (const auto& e : c.events) {
    std::string head, outcome;
    bool correct = false;
    std::size_t download = 0;
    if (e.op == "repair") {
      const auto failed = e.nodes.front();
      std::vector<std::optional<ExtElem>> avail(st.nodes.begin(), st.nodes.end());
      avail[failed].reset();
      const auto rep = lrc_local_repair(st.code, avail, failed);
      st.nodes[failed] = rep.value;
      download = rep.accessed.size();
      head = "repair node=" + std::to_string(failed + 1) + " accessed=" + nodes_text(rep.accessed) +
             " download=" + std::to_string(download);
      correct = st.nodes == st.truth;
      outcome = "ok";
    } else {
      std::vector<std::optional<ExtElem>> rx(st.nodes.begin(), st.nodes.end());
      for (auto i : e.erased) rx[i].reset();
      const auto res = lrc_decode(st.code, rx);
      correct = res.ok() && *res.message == msg;
      outcome = !res.ok() ? "fail" : correct ? "ok" : "wrong";
      download = st.code.n - e.erased.size();
      head = "collect" + (e.erased.empty() ? std::string() : " erased=" + nodes_text(e.erased)) + " download=" + std::to_string(download);
    }
    line(head, outcome);
    auto& v = out.violations;
    expect_eq(v, step, "outcome", e.expect.outcome, outcome, show_str);
    expect_eq(v, step, "correct", e.expect.correct, correct, show_bool);
    expect_eq(v, step, "download", e.expect.download, download, show_size);
    expect_eq(v, step, "error_rank", e.expect.error_rank, st.error_rank(), show_size);
    expect_eq(v, step, "error_weight", e.expect.error_weight, st.error_weight(), show_size);
  }
  out.report = os.str();
  return out;
}

}  // namespace detail

/// Executes the event list; the report ends with the assertion verdict.
inline ScenarioOutcome run_scenario(const ScenarioConfig& c) {
  auto out = c.code == "lrc" ? detail::run_lrc_scenario(c) : detail::run_dss_scenario(c);
  if (out.passed()) out.report += "assertions: pass\n";
  else
    for (const auto& v : out.violations) out.report += "assertion failed: " + v + "\n";
  return out;
}

}  // namespace rankstore
