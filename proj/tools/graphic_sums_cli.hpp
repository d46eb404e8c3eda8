#pragma once

// Command-line front end. run_cli() takes the arguments after the program
// name and writes the report to `out`, diagnostics to `err`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphic_sums/graphic_sums.hpp"

namespace graphic_sums::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "graphic-sums-report/1";

enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadInput = 2,
  kZeroOutDegree = 3,
  kOverCap = 4,
  kSolverFailed = 5,
};

/// Error carrying the exit code it should surface with.
class cli_error : public std::runtime_error {
 public:
  cli_error(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] int code() const noexcept { return code_; }

 private:
  int code_;
};

enum class Format { json, csv };

// ---------------------------------------------------------------- output

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix + "/" + it.key(), rows);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "/" + std::to_string(i), rows);
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

/// JSON: one document. CSV: "key,value" rows keyed by JSON pointer, each
/// value serialized exactly as in the JSON document.
inline void emit(const Json& report, Format format, std::ostream& out) {
  if (format == Format::json) {
    out << report.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << csv_field(k) << ',' << csv_field(v) << "\n";
}

// ---------------------------------------------------------------- helpers

inline Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["version"] = GRAPHIC_SUMS_VERSION;
  j["command"] = command;
  return j;
}

inline Json node_list(std::span<const Node> nodes) {
  Json a = Json::array();
  for (Node v : nodes) a.push_back(v + 1);
  return a;
}

inline Json flags_json(const GraphClassFlags& f) {
  return Json{{"min_outdegree_positive", f.min_outdegree_positive},
              {"min_indegree_positive", f.min_indegree_positive},
              {"strongly_connected", f.strongly_connected},
              {"is_functional", f.is_functional},
              {"has_loop", f.has_loop}};
}

inline Json input_echo(const ParsedGraph& p) {
  return Json{{"n", p.graph.size()},
              {"arcs", p.graph.arc_count()},
              {"duplicate_arcs", p.duplicate_arcs},
              {"class", flags_json(classify(p.graph))}};
}

inline std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cli_error(kBadInput, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline ParsedGraph load_graph(const std::string& path, std::ostream& err) {
  ParsedGraph p = [&] {
    try {
      return parse_graph(read_source(path));
    } catch (const graph_error& e) {
      throw cli_error(kBadInput, path + ": " + e.what());
    }
  }();
  if (p.duplicate_arcs > 0) err << "warning: collapsed " << p.duplicate_arcs << " duplicate arc(s)\n";
  if (p.graph.min_out_degree() == 0) {
    for (Node v = 0; v < p.graph.size(); ++v)
      if (p.graph.out_degree(v) == 0)
        throw cli_error(kZeroOutDegree, "node " + std::to_string(v + 1) + " has no out-neighbors");
  }
  return p;
}

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

/// Accepts "a/b", an integer, or a plain decimal such as 0.001.
inline Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) return Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                                                    boost::multiprecision::cpp_int(text.substr(slash + 1)));
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(text);
    const std::string whole = text.substr(0, dot).empty() ? "0" : text.substr(0, dot);
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(boost::multiprecision::cpp_int(whole + frac), den);
  } catch (const std::exception&) {
    throw cli_error(kBadInput, "cannot parse \"" + text + "\" as a rational");
  }
}

inline Json json_doubles(std::span<const double> xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

// ---------------------------------------------------------------- max

struct MaxArgs {
  std::string file;
  std::optional<std::string> witness_eps;
};

inline Json cmd_max(const MaxArgs& a, std::ostream& err) {
  Stopwatch clock;
  const ParsedGraph p = load_graph(a.file, err);
  const double parse_ms = clock.lap_ms();
  const Digraph& g = p.graph;
  const MaxSumResult r = max_sum_glb(g);

  Json res;
  res["value"] = r.value;
  res["provenance"] = "girth-of-final-components";
  Json comps = Json::array();
  for (const auto& c : r.per_component) comps.push_back(Json{{"nodes", node_list(c.nodes)}, {"girth", c.girth}});
  res["final_components"] = comps;
  Json layers = Json::array();
  for (const auto& w : r.witness_layers) {
    Json lj = Json::array();
    for (const auto& layer : w.layers) lj.push_back(node_list(layer));
    layers.push_back(Json{{"cycle", node_list(w.cycle)}, {"layers", lj}});
  }
  res["witness_layers"] = layers;

  if (a.witness_eps) {
    const Rational eps = parse_rational(*a.witness_eps);
    if (!(eps > 0 && eps < 1)) throw cli_error(kBadInput, "--witness-eps must lie in (0, 1)");
    if (!is_strongly_connected(g)) {
      res["witness"] = nullptr;
      err << "note: epsilon witness is only built for strongly connected graphs\n";
    } else {
      const auto x = epsilon_witness_exact(g, eps);
      const Rational s = eval_max_sum_exact(g, x);
      const Rational expected = Rational(r.value) + Rational(g.size() - r.value) * eps;
      Json xs = Json::array();
      for (const auto& v : x) xs.push_back(v.str());
      res["witness"] = Json{{"epsilon", eps.str()},
                            {"x", xs},
                            {"sum", s.str()},
                            {"expected", expected.str()},
                            {"identity_holds", s == expected}};
    }
  }

  Json report = header("max");
  report["input"] = input_echo(p);
  report["results"] = res;
  report["timing"] = Json{{"parse_ms", parse_ms}, {"compute_ms", clock.lap_ms()}};
  return report;
}

// ---------------------------------------------------------------- min

struct MinArgs {
  std::string file;
  double tol = 1e-11;
  std::size_t cap = kDefaultArrangementCap;
  bool oracle = false;
  std::uint64_t seed = OracleConfig{}.seed;
  std::size_t restarts = OracleConfig{}.restarts;
  std::size_t threads = 0;
};

inline Json audit_json(const ArrangementAudit& a) {
  Json ties = Json::array();
  for (std::size_t i = 0; i < a.ties.size(); ++i)
    ties.push_back(Json{{"arrangement", a.ties[i].to_string()}, {"value", a.tie_values[i]}});
  return Json{{"total", a.total},
              {"discarded_zero_indegree", a.zero_indegree},
              {"discarded_arc_outside_cycles", a.arc_outside_cycles},
              {"discarded_order_violation", a.order_violation},
              {"accepted", a.accepted},
              {"ties", ties}};
}

inline Json cmd_min(const MinArgs& a, std::ostream& err) {
  Stopwatch clock;
  const ParsedGraph p = load_graph(a.file, err);
  const double parse_ms = clock.lap_ms();
  const Digraph& g = p.graph;
  if (a.cap > kMaxArrangementCap)
    throw cli_error(kOverCap, "--cap cannot exceed " + std::to_string(kMaxArrangementCap));
  if (g.size() > a.cap)
    throw cli_error(kOverCap, "n = " + std::to_string(g.size()) + " exceeds the arrangement cap " +
                                  std::to_string(a.cap) + " (raise it with --cap, at most " +
                                  std::to_string(kMaxArrangementCap) + ")");
  MinSumOptions opt;
  opt.solver.tol = a.tol;
  opt.cap = a.cap;
  opt.threads = a.threads;

  Json res;
  double value = 0.0;
  try {
    if (is_strongly_connected(g)) {
      const MinSumResult r = min_sum_glb(g, opt);
      value = r.value;
      res["value"] = r.value;
      res["provenance"] = "chamber-scan";
      res["arrangement"] = r.best_arrangement.to_string();
      res["y"] = json_doubles(r.best_y);
      res["minimizer"] = json_doubles(r.minimizer_x.values());
      res["audit"] = audit_json(r.audit);
    } else {
      const StrongReductionMinSum sr = strong_reduction_minsum(g, opt);
      value = sr.value;
      res["value"] = sr.value;
      res["provenance"] = "strong-component-sum";
      Json comps = Json::array();
      for (const auto& c : sr.components)
        comps.push_back(Json{{"nodes", node_list(c.nodes)},
                             {"value", c.value},
                             {"arrangement", c.detail ? Json(c.detail->best_arrangement.to_string()) : Json(nullptr)}});
      res["components"] = comps;
      // The whole-graph scan only reaches the infimum when it is attained.
      try {
        const MinSumResult whole = scan_arrangements(g, opt);
        const bool attained = std::abs(whole.value - sr.value) <= 1e-8 * std::max(1.0, sr.value);
        res["arrangement"] = attained ? Json(whole.best_arrangement.to_string()) : Json(nullptr);
        res["y"] = attained ? json_doubles(whole.best_y) : Json(nullptr);
        res["minimizer"] = attained ? json_doubles(whole.minimizer_x.values()) : Json(nullptr);
        res["audit"] = audit_json(whole.audit);
      } catch (const solver_error& e) {
        err << "note: whole-graph scan unavailable: " << e.what() << "\n";
        res["arrangement"] = nullptr;
        res["y"] = nullptr;
        res["minimizer"] = nullptr;
        res["audit"] = nullptr;
      }
    }
  } catch (const arrangement_cap_error& e) {
    throw cli_error(kOverCap, e.what());
  } catch (const solver_error& e) {
    throw cli_error(kSolverFailed, std::string("solver failure: ") + e.what());
  }
  const double compute_ms = clock.lap_ms();

  Json timing{{"parse_ms", parse_ms}, {"compute_ms", compute_ms}};
  if (a.oracle) {
    OracleConfig cfg;
    cfg.seed = a.seed;
    cfg.restarts = a.restarts;
    cfg.threads = a.threads;
    const OracleResult o = oracle_min(g, MeanKind::min(), cfg);
    res["oracle"] = Json{{"value", o.value},
                         {"gap", std::abs(value - o.value)},
                         {"seed", cfg.seed},
                         {"restarts", cfg.restarts},
                         {"argmin", json_doubles(o.argmin.values())}};
    timing["oracle_ms"] = clock.lap_ms();
  }

  Json report = header("min");
  report["input"] = input_echo(p);
  report["results"] = res;
  report["timing"] = timing;
  return report;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::optional<std::string> file;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::size_t> arcs;
  std::optional<double> p;
};

inline Json numeric_bounds(std::size_t n, std::optional<std::size_t> k, std::optional<std::size_t> arcs) {
  if (n < 2) throw cli_error(kBadInput, "--n must be at least 2");
  Json res;

  BoundReport smallest;
  const GammaScan scan = min_over_k_gamma_value(n);
  smallest.add("log lower bound", BoundKind::lower, min_minsum_lower_bound(n), "log-bound");
  smallest.add("layered family scan", BoundKind::upper, scan.value, "layered-family-scan", Json{{"k", scan.k}});
  res["smallest_minsum_over_graphs"] = smallest.to_json();

  const DeltaValue d = delta_n(n);
  BoundReport no_sdr;
  no_sdr.add("largest minsum without SDR", BoundKind::exact, d.complement, "no-sdr-extremal",
             Json{{"k", d.k}, {"delta", d.delta}});
  res["largest_minsum_without_sdr"] = no_sdr.to_json();

  BoundReport gir;
  if (arcs) {
    const auto t = bghs_girth_bound(n, *arcs);
    gir.add("arc count girth bound", BoundKind::upper, t ? static_cast<double>(*t) : static_cast<double>(n),
            "bghs-arc-count", Json{{"arcs", *arcs}, {"qualifies", t.has_value()}});
  }
  if (k) {
    if (*k < 1 || *k > n) throw cli_error(kBadInput, "--k must lie in 1..n");
    const ConditionalGirth ch = ch_conditional_bound(n, *k);
    gir.add("conditional girth bound", BoundKind::conditional, static_cast<double>(ch.strongly_connected),
            "caccetta-haggkvist-conditional", Json{{"k", *k}});
    gir.add("conditional maxsum bound", BoundKind::conditional, ch.general, "caccetta-haggkvist-conditional",
            Json{{"k", *k}});
  }
  res["girth"] = gir.to_json();
  return res;
}

inline Json graph_bounds(const Digraph& g, double p) {
  Json res;
  res["power_mean"] = Json{{"p", std::isinf(p) ? Json(p > 0 ? "inf" : "-inf") : Json(p)},
                           {"bounds", sandwich_bounds(g, p).to_json()}};

  BoundReport maxr = sandwich_bounds(g, std::numeric_limits<double>::infinity());
  maxr.add("maxsum exact", BoundKind::exact, static_cast<double>(max_sum_glb(g).value), "girth-of-final-components");
  res["max_sum"] = maxr.to_json();

  BoundReport minr = sandwich_bounds(g, -std::numeric_limits<double>::infinity());
  const CycleCoverResult cover = max_cycle_cover(g);
  minr.add("cycle cover", BoundKind::lower, static_cast<double>(cover.size()), "cycle-cover",
           Json{{"covered", node_list(cover.covered)}});
  const SdrResult sdr = has_sdr(g);
  if (sdr.has_sdr) {
    minr.add("minsum exact = n by SDR", BoundKind::exact, static_cast<double>(g.size()), "bijective-admissible-map",
             Json{{"bijection", node_list(sdr.bijection)}});
  } else {
    Json w{{"hall_violator", node_list(sdr.hall_violator)},
           {"neighborhood", node_list(sdr.violator_neighborhood)}};
    if (is_strongly_connected(g) && g.size() >= 2)
      minr.add("no SDR extremal bound", BoundKind::upper, delta_n(g.size()).complement, "no-sdr-extremal", w);
    else
      res["sdr_violation"] = w;
  }
  res["min_sum"] = minr.to_json();
  return res;
}

inline Json cmd_bounds(const BoundsArgs& a, std::ostream& err) {
  Stopwatch clock;
  Json report = header("bounds");
  if (a.file) {
    if (a.n) throw cli_error(kBadInput, "give either a graph file or --n, not both");
    const ParsedGraph p = load_graph(*a.file, err);
    report["input"] = input_echo(p);
    report["results"] = graph_bounds(p.graph, a.p.value_or(-std::numeric_limits<double>::infinity()));
  } else {
    if (!a.n) throw cli_error(kBadInput, "bounds needs a graph file or --n");
    report["input"] = Json{{"n", *a.n},
                           {"k", a.k ? Json(*a.k) : Json(nullptr)},
                           {"arcs", a.arcs ? Json(*a.arcs) : Json(nullptr)}};
    report["results"] = numeric_bounds(*a.n, a.k, a.arcs);
  }
  report["timing"] = Json{{"compute_ms", clock.lap_ms()}};
  return report;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string kind;
  std::vector<std::string> params;
  std::string format = "edge";
};

inline std::size_t parse_size(const std::string& s, const char* what) {
  long long v = 0;
  if (!detail::parse_count(s, v) || v < 0) throw cli_error(kBadInput, std::string("bad ") + what + ": " + s);
  return static_cast<std::size_t>(v);
}

inline std::vector<long long> parse_pattern(const std::string& s) {
  std::vector<long long> j;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    long long v = 0;
    if (!detail::parse_count(std::string(detail::trim(item)), v))
      throw cli_error(kBadInput, "bad pattern entry \"" + item + "\"");
    j.push_back(v);
  }
  if (j.empty()) throw cli_error(kBadInput, "empty pattern set");
  return j;
}

inline std::string cmd_generate(const GenerateArgs& a) {
  auto need = [&](std::size_t count) {
    if (a.params.size() != count)
      throw cli_error(kBadInput, a.kind + " takes " + std::to_string(count) + " parameter(s)");
  };
  try {
    Digraph g = [&]() -> Digraph {
      if (a.kind == "circulant") {
        need(2);
        const auto j = parse_pattern(a.params[1]);
        return circulant(parse_size(a.params[0], "n"), std::span<const long long>(j));
      }
      if (a.kind == "gamma-k") {
        need(2);
        return gamma_k_family(parse_size(a.params[0], "n"), parse_size(a.params[1], "k"));
      }
      if (a.kind == "no-sdr") {
        need(1);
        return extremal_no_sdr_graph(parse_size(a.params[0], "n"));
      }
      if (a.kind == "cycle") {
        need(1);
        return cycle_graph(parse_size(a.params[0], "n"));
      }
      throw cli_error(kBadInput, "unknown generator \"" + a.kind + "\" (circulant, gamma-k, no-sdr, cycle)");
    }();
    if (a.format == "json") return render_json(g);
    return render_edge_list(g);
  } catch (const graph_error& e) {
    throw cli_error(kBadInput, e.what());
  }
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "quick";
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

namespace verify_detail {

inline std::string describe(const Digraph& g) { return graph_to_json(g).dump(); }

inline Digraph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution arc(density);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::vector<Node>> out(n);
  for (Node v = 0; v < n; ++v) {
    for (Node w = 0; w < n; ++w)
      if (arc(rng)) out[v].push_back(w);
    if (out[v].empty()) out[v].push_back(pick(rng));
  }
  return Digraph(std::move(out));
}

inline Digraph random_strong_graph(std::mt19937_64& rng, std::size_t n, double density) {
  while (true) {
    Digraph g = random_graph(rng, n, density);
    if (is_strongly_connected(g)) return g;
  }
}

// All strongly connected digraphs (loops allowed) on n nodes, one per
// isomorphism class, as the lexicographically smallest relabelled bitmask.
inline std::vector<Digraph> strong_graphs_up_to_iso(std::size_t n) {
  const std::size_t bits = n * n;
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Digraph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    bool canonical = true;
    for (const auto& p : perms) {
      std::uint64_t image = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (mask >> b & 1u) image |= std::uint64_t{1} << (p[b / n] * n + p[b % n]);
      if (image < mask) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    std::vector<std::vector<Node>> adj(n);
    for (std::size_t b = 0; b < bits; ++b)
      if (mask >> b & 1u) adj[b / n].push_back(b % n);
    Digraph g(std::move(adj));
    if (g.min_out_degree() > 0 && is_strongly_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

struct Check {
  std::string name;
  std::size_t cases = 0;
  std::optional<Json> counterexample;

  void fail(Json detail) {
    if (!counterexample) counterexample = std::move(detail);
  }
  [[nodiscard]] Json to_json() const {
    return Json{{"name", name},
                {"passed", !counterexample.has_value()},
                {"cases", cases},
                {"counterexample", counterexample ? *counterexample : Json(nullptr)}};
  }
};

}  // namespace verify_detail

inline Json cmd_verify(const VerifyArgs& a) {
  using namespace verify_detail;
  if (a.suite != "quick" && a.suite != "full") throw cli_error(kBadInput, "suite must be quick or full");
  const bool full = a.suite == "full";
  std::mt19937_64 rng(a.seed);
  MinSumOptions opt;
  opt.threads = a.threads;
  OracleConfig ocfg;
  ocfg.seed = a.seed;
  ocfg.threads = a.threads;
  std::vector<Check> checks;

  {
    Check c{"maxsum equals total final girth and strong reduction"};
    std::uniform_int_distribution<std::size_t> size(1, 8);
    for (int i = 0; i < (full ? 1000 : 200); ++i) {
      const Digraph g = random_graph(rng, size(rng), 0.25);
      ++c.cases;
      const auto m = max_sum_glb(g).value;
      if (m != *total_final_girth(g) || m != strong_reduction_maxsum(g))
        c.fail(Json{{"graph", describe(g)}, {"value", m}});
    }
    checks.push_back(c);
  }
  {
    Check c{"epsilon witness identity in exact arithmetic"};
    std::uniform_int_distribution<std::size_t> size(1, 8);
    for (int i = 0; i < (full ? 300 : 60); ++i) {
      const Digraph g = random_strong_graph(rng, size(rng), 0.3);
      const Rational eps(1, 7 + i);
      ++c.cases;
      const auto gir = girth(g).length();
      const Rational s = eval_max_sum_exact(g, epsilon_witness_exact(g, eps));
      if (s != Rational(gir) + Rational(g.size() - gir) * eps)
        c.fail(Json{{"graph", describe(g)}, {"sum", s.str()}});
    }
    checks.push_back(c);
  }
  {
    Check c{"minsum within cycle cover and node count, attained at minimizer"};
    std::uniform_int_distribution<std::size_t> size(1, full ? 6 : 5);
    for (int i = 0; i < (full ? 200 : 40); ++i) {
      const Digraph g = random_strong_graph(rng, size(rng), 0.35);
      ++c.cases;
      const MinSumResult r = min_sum_glb(g, opt);
      const double at_x = eval_sum(g, MeanKind::min(), r.minimizer_x);
      const double lo = static_cast<double>(max_cycle_cover(g).size());
      if (r.value < lo - 1e-9 || r.value > static_cast<double>(g.size()) + 1e-9 || std::abs(at_x - r.value) > 1e-9)
        c.fail(Json{{"graph", describe(g)}, {"value", r.value}, {"at_minimizer", at_x}, {"cycle_cover", lo}});
    }
    checks.push_back(c);
  }
  {
    Check c{"minsum agrees with numeric oracle"};
    std::uniform_int_distribution<std::size_t> size(2, full ? 6 : 5);
    for (int i = 0; i < (full ? 40 : 6); ++i) {
      const Digraph g = random_strong_graph(rng, size(rng), 0.35);
      ++c.cases;
      const double exact = min_sum_glb(g, opt).value;
      const double o = oracle_min(g, MeanKind::min(), ocfg).value;
      if (std::abs(exact - o) > 1e-4) c.fail(Json{{"graph", describe(g)}, {"exact", exact}, {"oracle", o}});
    }
    checks.push_back(c);
  }
  {
    Check c{"minsum equals n exactly when an SDR exists"};
    const std::size_t top = full ? 4 : 3;
    for (std::size_t n = 1; n <= top; ++n)
      for (const Digraph& g : strong_graphs_up_to_iso(n)) {
        ++c.cases;
        const bool at_n = std::abs(min_sum_glb(g, opt).value - static_cast<double>(n)) <= 1e-8;
        if (at_n != has_sdr(g).has_sdr) c.fail(Json{{"graph", describe(g)}});
      }
    checks.push_back(c);
  }
  {
    Check c{"no-SDR extremal graph attains n - delta_n"};
    for (std::size_t n = 3; n <= (full ? 6u : 5u); ++n) {
      ++c.cases;
      const double v = min_sum_glb(extremal_no_sdr_graph(n), opt).value;
      if (std::abs(v - delta_n(n).complement) > 1e-8) c.fail(Json{{"n", n}, {"value", v}});
    }
    checks.push_back(c);
  }
  {
    Check c{"cyclic closed form matches condensation"};
    const std::size_t top = full ? 30 : 12;
    for (std::size_t n = 1; n <= top; ++n)
      for (unsigned mask = 1; mask < 64; ++mask) {
        std::vector<long long> j;
        for (long long b = 0; b < 6; ++b)
          if (mask >> b & 1u) j.push_back(b + 1);
        ++c.cases;
        const auto formula = cyclic_glb_formula(n, CyclicPattern(j));
        const auto direct = max_sum_glb(circulant(n, std::span<const long long>(j))).value;
        if (formula != direct) c.fail(Json{{"n", n}, {"pattern", j}, {"formula", formula}, {"direct", direct}});
      }
    checks.push_back(c);
  }
  {
    Check c{"arrangement counts follow the ordered Bell recurrence"};
    const std::size_t top = full ? 8 : 7;
    std::vector<boost::multiprecision::cpp_int> fub{1};
    for (std::size_t n = 1; n <= top; ++n) {
      boost::multiprecision::cpp_int s = 0, binom = 1;
      for (std::size_t i = 1; i <= n; ++i) {
        binom = binom * (n - i + 1) / i;
        s += binom * fub[n - i];
      }
      fub.push_back(s);
      ++c.cases;
      if (boost::multiprecision::cpp_int(count_arrangements(n, top)) != s)
        c.fail(Json{{"n", n}, {"expected", s.str()}});
    }
    checks.push_back(c);
  }
  {
    Check c{"log lower bound stays below the layered family scan"};
    for (std::size_t n = 2; n <= 200; ++n) {
      ++c.cases;
      if (!(min_minsum_lower_bound(n) < min_over_k_gamma_value(n).value)) c.fail(Json{{"n", n}});
    }
    checks.push_back(c);
  }

  Json report = header("verify");
  report["suite"] = a.suite;
  report["seed"] = a.seed;
  Json list = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    list.push_back(c.to_json());
    all = all && !c.counterexample;
  }
  report["checks"] = list;
  report["passed"] = all;
  return report;
}

// ---------------------------------------------------------------- entry

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infima of graphic max-sums and min-sums on digraphs", "graphic-sums"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GRAPHIC_SUMS_VERSION));

  bool as_csv = false;
  auto add_format = [&](CLI::App* sub) {
    auto* j = sub->add_flag("--json", "JSON report (default)");
    auto* c = sub->add_flag("--csv", as_csv, "CSV report: key,value rows");
    j->excludes(c);
  };

  MaxArgs max_args;
  auto* max_cmd = app.add_subcommand("max", "Infimum of the max-sum");
  max_cmd->add_option("graph", max_args.file, "Graph file (edge list or JSON, - for stdin)")->required();
  max_cmd->add_option("--witness-eps", max_args.witness_eps, "Build the epsilon witness (rational, e.g. 1/100)");
  add_format(max_cmd);

  MinArgs min_args;
  auto* min_cmd = app.add_subcommand("min", "Infimum of the min-sum");
  min_cmd->add_option("graph", min_args.file, "Graph file (edge list or JSON, - for stdin)")->required();
  min_cmd->add_option("--tol", min_args.tol, "Gradient tolerance of the chamber solves")->check(CLI::PositiveNumber);
  min_cmd->add_option("--cap", min_args.cap, "Largest n to enumerate arrangements for");
  min_cmd->add_flag("--oracle", min_args.oracle, "Also run the numeric oracle and report the gap");
  min_cmd->add_option("--seed", min_args.seed, "Oracle seed");
  min_cmd->add_option("--restarts", min_args.restarts, "Oracle restarts")->check(CLI::PositiveNumber);
  min_cmd->add_option("--threads", min_args.threads, "Worker threads (0: GRAPHIC_SUMS_THREADS or hardware)");
  add_format(min_cmd);

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Bounds for a graph, or numeric calculators for --n");
  bounds_cmd->add_option("graph", bounds_args.file, "Graph file");
  bounds_cmd->add_option("--n", bounds_args.n, "Node count for the numeric calculators");
  bounds_cmd->add_option("--k", bounds_args.k, "Minimum out-degree (conditional girth bounds)");
  bounds_cmd->add_option("--arcs", bounds_args.arcs, "Arc count (girth bound from arc count)");
  bounds_cmd->add_option("--p", bounds_args.p, "Power-mean exponent for the graph sandwich (default -inf)");
  add_format(bounds_cmd);

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated graph");
  gen_cmd->add_option("kind", gen_args.kind, "circulant | gamma-k | no-sdr | cycle")->required();
  gen_cmd->add_option("params", gen_args.params, "n [J as 2,3 | k]");
  gen_cmd->add_option("--format", gen_args.format, "edge or json")->check(CLI::IsMember({"edge", "json"}));

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run the cross-module invariant suite");
  verify_cmd->add_option("--suite", verify_args.suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--seed", verify_args.seed, "Seed for random graphs and the oracle");
  verify_cmd->add_option("--threads", verify_args.threads, "Worker threads (0: GRAPHIC_SUMS_THREADS or hardware)");
  add_format(verify_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  const Format format = as_csv ? Format::csv : Format::json;
  try {
    if (*max_cmd) emit(cmd_max(max_args, err), format, out);
    else if (*min_cmd) emit(cmd_min(min_args, err), format, out);
    else if (*bounds_cmd) emit(cmd_bounds(bounds_args, err), format, out);
    else if (*gen_cmd) out << cmd_generate(gen_args);
    else if (*verify_cmd) {
      const Json report = cmd_verify(verify_args);
      emit(report, format, out);
      if (!report["passed"].get<bool>()) {
        err << "verify: some invariants failed\n";
        return kVerifyFailed;
      }
    }
  } catch (const cli_error& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const arrangement_cap_error& e) {
    err << "error: " << e.what() << "\n";
    return kOverCap;
  } catch (const solver_error& e) {
    err << "error: solver failure: " << e.what() << "\n";
    return kSolverFailed;
  } catch (const graph_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}

}  // namespace graphic_sums::cli
