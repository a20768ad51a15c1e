// rankstore command-line front end: plan, encode, decode, run, lrc.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "rankstore/rankstore.hpp"

using namespace rankstore;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct CodeArgs {
  std::string code = "zigzag";
  std::size_t t = 1;
  Digit q = 0;

  ConcatScheme scheme() const {
    if (code == "zigzag") return make_scheme(plan_params(4, 3, t, 5, 4, q ? q : 3), zigzag_5_3(q ? q : 3));
    if (code == "hadamard") {
      const Digit hq = q ? q : 11;
      return make_scheme(plan_params(16, 3, t, 5, 4, hq),
                         hq == 11 ? hadamard_5_3() : hadamard_5_3(hadamard_default_coefficients(hq)));
    }
    throw ParameterError("unknown code '" + code + "' (expected zigzag or hadamard)");
  }
};

int cmd_plan(std::size_t alpha, std::size_t k, std::size_t t, std::size_t n, std::size_t d, Digit q) {
  const auto p = plan_params(alpha, k, t, n, d, q);
  const auto cap = resilience_capacity(p.alpha, p.beta, p.k, p.d, p.t);
  std::cout << "alpha: " << p.alpha << "\nk: " << p.k << "\nn: " << p.n << "\nd: " << p.d << "\nt: " << p.t
            << "\nq: " << p.q << "\nbeta: " << p.beta << "\nm: " << p.m << "\nN: " << p.N << "\nK: " << p.K
            << "\ndelta: " << p.delta << "\nrepair_bandwidth: " << p.d * p.beta << " (vs alpha*k = " << p.alpha * p.k
            << ")\nresilience_capacity: " << cap << " (" << cap * p.N << " base symbols)\nstored: K*N = "
            << p.K * p.N << " base symbols\ncapacity: "
            << (p.K == cap ? "attained" : "not attained") << "\n";
  std::cout << "capacity table (t, capacity, K):\n";
  for (std::size_t tt = 0; 2 * tt < p.k; ++tt)
    std::cout << "  " << tt << " " << resilience_capacity(p.alpha, p.beta, p.k, p.d, tt) << " "
              << p.alpha * (p.k - 2 * tt) << "\n";
  return kOk;
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct NodeFile {
  std::map<std::string, std::string> header;
  std::vector<ExtVector> stripes;
};

int cmd_encode(const CodeArgs& args, const std::string& input, const std::string& out_dir) {
  const auto s = args.scheme();
  const auto& p = s.params;
  const auto bytes = read_bytes(input);
  auto digits = bytes_to_digits(bytes, p.q);
  const std::size_t stripe = p.K * p.N;
  const std::size_t count = std::max<std::size_t>(1, (digits.size() + stripe - 1) / stripe);
  digits.resize(count * stripe, 0);

  std::filesystem::create_directories(out_dir);
  std::vector<std::ofstream> outs;
  for (std::size_t i = 0; i < p.n; ++i) {
    const auto path = std::filesystem::path(out_dir) / ("node" + std::to_string(i + 1) + ".txt");
    outs.emplace_back(path);
    if (!outs.back()) throw ParameterError("cannot write " + path.string());
    outs.back() << "rankstore-node\nnode: " << i + 1 << "\ncode: " << args.code << "\nq: " << p.q
                << "\nt: " << p.t << "\nbytes: " << bytes.size() << "\nstripes: " << count << "\n";
  }
  for (std::size_t st = 0; st < count; ++st) {
    const auto file = file_from_digits(
        s, std::vector<Digit>(digits.begin() + static_cast<std::ptrdiff_t>(st * stripe),
                              digits.begin() + static_cast<std::ptrdiff_t>((st + 1) * stripe)));
    const auto blocks = store(s, file);
    for (std::size_t i = 0; i < p.n; ++i) {
      for (std::size_t j = 0; j < blocks[i].size(); ++j) outs[i] << (j ? " " : "") << blocks[i][j];
      outs[i] << "\n";
    }
  }
  std::cout << "encoded " << bytes.size() << " bytes into " << count << " stripes across " << p.n
            << " nodes in " << out_dir << "\n";
  return kOk;
}

NodeFile read_node_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read node file " + path);
  NodeFile f;
  std::string line;
  if (!std::getline(in, line) || line != "rankstore-node") throw ParameterError(path + " is not a node file");
  for (const char* key : {"node", "code", "q", "t", "bytes", "stripes"}) {
    if (!std::getline(in, line)) throw ParameterError(path + ": truncated header");
    const auto colon = line.find(": ");
    if (colon == std::string::npos || line.substr(0, colon) != key)
      throw ParameterError(path + ": expected header field '" + key + "'");
    f.header[key] = line.substr(colon + 2);
  }
  return f;
}

void read_stripes(const std::string& path, NodeFile& f, const ExtField& field, std::size_t alpha) {
  std::ifstream in(path);
  std::string line;
  for (int i = 0; i < 7; ++i) std::getline(in, line);
  const std::size_t count = std::stoul(f.header["stripes"]);
  for (std::size_t st = 0; st < count; ++st) {
    if (!std::getline(in, line)) throw ParameterError(path + ": missing stripe " + std::to_string(st + 1));
    std::istringstream ls(line);
    ExtVector block;
    std::string tok;
    while (ls >> tok) block.push_back(field.parse(tok));
    if (block.size() != alpha) throw ParameterError(path + ": stripe " + std::to_string(st + 1) + " has wrong length");
    f.stripes.push_back(std::move(block));
  }
}

int cmd_decode(const std::vector<std::string>& node_paths, const std::string& output,
               const std::vector<std::size_t>& corrupt, std::uint64_t seed) {
  std::vector<NodeFile> files;
  for (const auto& path : node_paths) files.push_back(read_node_file(path));
  if (files.empty()) {
    std::cerr << "error: need k nodes, got 0\n";
    return kFail;
  }
  CodeArgs args;
  args.code = files.front().header["code"];
  args.q = static_cast<Digit>(std::stoul(files.front().header["q"]));
  args.t = std::stoul(files.front().header["t"]);
  for (const auto& f : files)
    for (const char* key : {"code", "q", "t", "bytes", "stripes"})
      if (f.header.at(key) != files.front().header.at(key))
        throw ParameterError(std::string("node files disagree on '") + key + "'");
  const auto s = args.scheme();
  const auto& p = s.params;

  std::map<std::size_t, std::size_t> by_node;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::size_t node = std::stoul(files[i].header["node"]);
    if (node == 0 || node > p.n) throw ParameterError("node number out of range in " + node_paths[i]);
    by_node.emplace(node - 1, i);
  }
  if (by_node.size() < p.k) {
    std::cerr << "error: need k nodes (k = " << p.k << "), got " << by_node.size() << "\n";
    return kFail;
  }
  std::vector<std::size_t> indices;
  for (const auto& [node, i] : by_node)
    if (indices.size() < p.k) indices.push_back(node);
  for (auto node : indices) read_stripes(node_paths[by_node[node]], files[by_node[node]], s.field, p.alpha);

  Rng rng(seed);
  const std::size_t count = std::stoul(files.front().header["stripes"]);
  std::vector<Digit> digits;
  for (std::size_t st = 0; st < count; ++st) {
    NodeBlocks contents;
    for (auto node : indices) {
      auto block = files[by_node[node]].stripes[st];
      if (std::find(corrupt.begin(), corrupt.end(), node + 1) != corrupt.end())
        for (auto& x : block) x += s.field.random(rng);
      contents.push_back(std::move(block));
    }
    const auto r = collect(s, contents, indices);
    if (!r.ok()) {
      std::cerr << "error: stripe " << st + 1 << " failed to decode: " << r.diagnostics.reason << "\n";
      return kFail;
    }
    digits.insert(digits.end(), r.file->raw.begin(), r.file->raw.end());
  }
  const auto bytes = digits_to_bytes(digits, p.q, std::stoul(files.front().header["bytes"]));
  std::ofstream out(output, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + output);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  std::cout << "decoded " << bytes.size() << " bytes from nodes ";
  for (std::size_t i = 0; i < indices.size(); ++i) std::cout << (i ? "," : "") << indices[i] + 1;
  std::cout << "\n";
  return kOk;
}

int cmd_run(const std::string& path, const std::string& out_path) {
  auto config = load_scenario(path);
  if (const char* env = std::getenv("RANKSTORE_SEED")) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ParameterError("RANKSTORE_SEED must be an unsigned integer");
    }
  }
  const auto outcome = run_scenario(config);
  if (out_path.empty()) {
    std::cout << outcome.report;
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParameterError("cannot write " + out_path);
    out << outcome.report;
  }
  if (!outcome.passed()) {
    std::cerr << "assertion failed: " << outcome.violations.front() << "\n";
    return kFail;
  }
  return kOk;
}

std::string positions(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s;
}

int cmd_lrc(const std::vector<std::size_t>& distance, std::size_t erasures, const std::string& pattern,
            std::size_t trials, std::uint64_t seed, bool quiet) {
  if (!distance.empty()) {
    if (distance.size() != 3) throw ParameterError("--distance takes n k r");
    std::cout << lrc_min_distance(distance[0], distance[1], distance[2]) << "\n";
    return kOk;
  }
  const auto code = lrc_build(8, 6, 4, 8);
  const auto& F = code.base.field;
  Rng rng(seed);
  auto message = [&] {
    ExtVector m;
    for (std::size_t i = 0; i < code.k(); ++i) m.push_back(F.random(rng));
    return m;
  };
  auto try_pattern = [&](const std::vector<std::size_t>& erased) {
    const auto msg = message();
    const auto w = lrc_encode(code, msg);
    std::vector<std::optional<ExtElem>> rx(w.begin(), w.end());
    for (auto i : erased) rx[i].reset();
    const auto r = lrc_decode(code, rx);
    return r.ok() && *r.message == msg;
  };
  std::cout << "code: lrc m=8 k=6 r=4 N=8 q=3 n=" << code.n << " d_min=" << lrc_min_distance(code.n, 6, 4) << "\n";

  if (pattern == "worst") {
    std::vector<std::size_t> erased;
    for (std::size_t i = 0; i < erasures && i < code.n; ++i) erased.push_back(i);
    const bool ok = try_pattern(erased);
    const bool expected = erasures < lrc_min_distance(code.n, 6, 4);
    std::cout << "pattern " << positions(erased) << ": " << (ok ? "decoded" : "failed") << " (expected "
              << (expected ? "decoded" : "failure") << ")\n";
    return ok == expected ? kOk : kFail;
  }
  if (pattern != "all") throw ParameterError("--pattern must be all or worst");

  std::vector<bool> pick(code.n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(erasures, code.n)), true);
  std::size_t total = 0, decoded = 0;
  do {
    std::vector<std::size_t> erased;
    for (std::size_t i = 0; i < code.n; ++i)
      if (pick[i]) erased.push_back(i);
    const bool ok = try_pattern(erased);
    ++total;
    decoded += ok;
    if (!quiet) std::cout << "pattern " << positions(erased) << ": " << (ok ? "pass" : "fail") << "\n";
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::cout << decoded << "/" << total << " erasure patterns decoded\n";

  std::size_t corrected = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto msg = message();
    auto w = lrc_encode(code, msg);
    const auto& g = code.groups[rng.index(code.groups.size())];
    ExtElem e = F.random(rng);
    while (e.is_zero()) e = F.random(rng);
    for (auto i : g.members) w[i] += e.scaled(1 + rng.below(F.q() - 1));
    w[g.parity] += e.scaled(1 + rng.below(F.q() - 1));
    const auto r = lrc_decode(code, std::vector<std::optional<ExtElem>>(w.begin(), w.end()));
    corrected += r.ok() && *r.message == msg;
  }
  if (trials) std::cout << corrected << "/" << trials << " group-spread rank-1 errors corrected (weight 5)\n";
  const bool sweep_ok = erasures >= lrc_min_distance(code.n, 6, 4) || decoded == total;
  return sweep_ok && corrected == trials ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rankstore: rank-metric codes for adversarial distributed storage"};
  app.require_subcommand(1);

  std::size_t alpha = 4, k = 3, t = 1, n = 5, d = 4;
  Digit q = 3;
  auto* plan = app.add_subcommand("plan", "print system parameters and the resilience capacity");
  plan->add_option("--alpha", alpha, "symbols per node");
  plan->add_option("--k", k, "nodes needed to collect");
  plan->add_option("--t", t, "adversarial nodes tolerated");
  plan->add_option("--n", n, "storage nodes");
  plan->add_option("--d", d, "repair helpers");
  plan->add_option("--q", q, "base field size");

  CodeArgs code_args;
  std::string input, out_dir = "nodes";
  auto* encode = app.add_subcommand("encode", "encode a file into node files");
  encode->add_option("file", input, "input file")->required();
  encode->add_option("--out-dir", out_dir, "directory for node files");
  encode->add_option("--code", code_args.code, "zigzag or hadamard");
  encode->add_option("--t", code_args.t, "adversarial nodes tolerated");

  std::vector<std::string> node_paths;
  std::string output = "decoded.bin";
  std::vector<std::size_t> corrupt;
  std::uint64_t seed = 1;
  auto* decode = app.add_subcommand("decode", "recover a file from node files");
  decode->add_option("nodes", node_paths, "node files")->required();
  decode->add_option("-o,--out", output, "output file");
  decode->add_option("--corrupt", corrupt, "node number whose content is overwritten with random errors");
  decode->add_option("--seed", seed, "seed for injected errors");

  std::string scenario, report;
  auto* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("scenario", scenario, "scenario file")->required();
  run->add_option("-o,--out", report, "write the report here instead of stdout");

  std::vector<std::size_t> distance;
  std::size_t erasures = 3, trials = 500;
  std::string pattern = "all";
  bool quiet = false;
  auto* lrc = app.add_subcommand("lrc", "locally repairable code demo");
  lrc->add_option("--distance", distance, "print the optimal distance for n k r")->expected(3);
  lrc->add_option("--erasures", erasures, "erasures per pattern");
  lrc->add_option("--pattern", pattern, "all or worst");
  lrc->add_option("--trials", trials, "group-spread error trials");
  lrc->add_option("--seed", seed, "seed");
  lrc->add_flag("--quiet", quiet, "only print totals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*plan) return cmd_plan(alpha, k, t, n, d, q);
    if (*encode) return cmd_encode(code_args, input, out_dir);
    if (*decode) return cmd_decode(node_paths, output, corrupt, seed);
    if (*run) return cmd_run(scenario, report);
    if (*lrc) return cmd_lrc(distance, erasures, pattern, trials, seed, quiet);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
