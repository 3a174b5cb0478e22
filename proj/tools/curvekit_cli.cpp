// curvekit command-line front end.
//
// Exit codes: 0 yes/success, 1 no, 2 unknown, 3 usage or input error,
// 4 runtime failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "curvekit/collar.hpp"
#include "curvekit/curves.hpp"
#include "curvekit/farey.hpp"
#include "curvekit/graph.hpp"
#include "curvekit/mm.hpp"
#include "curvekit/search.hpp"

using namespace curvekit;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 3;
constexpr int kExitRuntime = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SurfaceSig parse_surface(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--surface expects g,n");
  try {
    return SurfaceSig(std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1)));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad surface '") + text + "': " + e.what());
  }
}

// Output sink: stdout, or a file when --out is given.
struct Output {
  std::string path;
  void emit(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      if (text.empty() || text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string certificate_dot(const Graph& g, const SlopeCertificate& cert) {
  std::ostringstream out;
  out << "graph certificate {\n";
  for (std::size_t v = 0; v < g.size(); ++v)
    out << "  \"" << g.label(v) << "\" [label=\"" << g.label(v) << "\\n" << cert.assignment.at(g.label(v)).str()
        << "\"];\n";
  for (const auto& [u, v] : g.edges()) out << "  \"" << g.label(u) << "\" -- \"" << g.label(v) << "\";\n";
  out << "}\n";
  return out.str();
}

int verdict_exit(Verdict v) { return v == Verdict::Yes ? 0 : v == Verdict::No ? 1 : 2; }

// Rows "p,q,r,s" (header and # comments allowed).
std::vector<std::pair<Slope, Slope>> read_pairs(const std::string& text) {
  std::vector<std::pair<Slope, Slope>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      cells.push_back(cell);
    }
    if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;
    if (cells.size() >= 4 && cells[0] == "p") continue;
    if (cells.size() != 4) throw UsageError("pairs line " + std::to_string(lineno) + ": expected p,q,r,s");
    try {
      out.emplace_back(Slope(BigInt(cells[0]), BigInt(cells[1])), Slope(BigInt(cells[2]), BigInt(cells[3])));
    } catch (const std::exception& e) {
      throw UsageError("pairs line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvekit: curve graphs, Farey embeddings and related experiments"};
  app.require_subcommand(1);
  std::string out_path;
  unsigned workers = 0;
  app.add_option("--out", out_path, "write the result here instead of stdout");
  app.add_option("--workers", workers, "worker threads (CURVEKIT_WORKERS takes precedence)");

  std::string graph_path, surface_text = "1,1", schedule_text, format = "json", input_path, csv_path, pairs_path;
  std::string alpha_text, beta_text;
  long long bound = 10, k = 3, max_q = 1000000;
  std::size_t samples = 10000;
  std::uint64_t seed = 7;
  int L = 0;
  long long B = 4;
  bool trace = false;
  double g_scale = 1.0, g_offset = 2.0;

  auto* decide_cmd = app.add_subcommand("decide", "decide whether a graph is an induced subgraph of C(S)");
  decide_cmd->add_option("--surface", surface_text, "g,n")->required();
  decide_cmd->add_option("--graph", graph_path, "graph file")->required();
  decide_cmd->add_option("--schedule", schedule_text, "L1:B1,L2:B2,... (default 0:4,1:4,2:4)");

  auto* check_cmd = app.add_subcommand("farey-check", "recognize Farey-embeddable graphs");
  check_cmd->add_option("--graph", graph_path, "graph file")->required();

  auto* embed_cmd = app.add_subcommand("embed", "construct a slope certificate");
  embed_cmd->add_option("--graph", graph_path, "graph file")->required();
  embed_cmd->add_option("--surface", surface_text, "Farey surface g,n (default 1,1)");
  embed_cmd->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive search over slopes with max(|p|,q) <= bound");
  oracle_cmd->add_option("--graph", graph_path, "graph file")->required();
  oracle_cmd->add_option("--bound", bound, "slope bound Q")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--surface", surface_text, "Farey surface g,n (default 1,1)");

  auto* mm_cmd = app.add_subcommand("mm-estimate", "both sides of the torus distance formula as CSV");
  mm_cmd->add_option("--pairs", pairs_path, "CSV file of p,q,r,s rows");
  mm_cmd->add_option("--alpha", alpha_text, "single slope p/q");
  mm_cmd->add_option("--beta", beta_text, "single slope r/s");
  mm_cmd->add_option("--k", k, "cutoff")->check(CLI::PositiveNumber);

  auto* cal_cmd = app.add_subcommand("calibrate", "empirical comparability constant");
  cal_cmd->add_option("--samples", samples, "number of random pairs");
  cal_cmd->add_option("--max-q", max_q, "denominator bound")->check(CLI::PositiveNumber);
  cal_cmd->add_option("--k", k, "cutoff")->check(CLI::PositiveNumber);
  cal_cmd->add_option("--seed", seed, "sampling seed");
  cal_cmd->add_option("--pairs", pairs_path, "use these pairs instead of sampling");

  auto* collar_cmd = app.add_subcommand("collar-test", "collar lemma experiments on the unit annulus");
  collar_cmd->add_option("--samples", samples, "number of random admissible pairs");
  collar_cmd->add_option("--seed", seed, "sampling seed");
  collar_cmd->add_option("--csv", csv_path, "per-sample counts");

  auto* atlas_cmd = app.add_subcommand("atlas", "enumerate curves by twist words");
  atlas_cmd->add_option("--surface", surface_text, "g,n")->required();
  atlas_cmd->add_option("--L", L, "twist word length")->check(CLI::NonNegativeNumber);
  atlas_cmd->add_option("--B", B, "intersection budget against the seeds")->check(CLI::NonNegativeNumber);
  atlas_cmd->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  auto* reembed_cmd = app.add_subcommand("reembed", "annulus re-embedding move on {\"slopes\":[...],\"cliques\":[[...]]}");
  reembed_cmd->add_option("--input", input_path, "JSON file")->required();
  reembed_cmd->add_flag("--trace", trace, "emit every intermediate state");

  auto* cluster_cmd = app.add_subcommand("cluster", "small clusters / large gaps partition");
  cluster_cmd->add_option("--input", input_path, "JSON with \"points\" or \"distances\"")->required();
  cluster_cmd->add_option("--scale", g_scale, "g(D) = scale*D + offset");
  cluster_cmd->add_option("--offset", g_offset, "g(D) = scale*D + offset");

  auto* raag_cmd = app.add_subcommand("raag", "decide for surfaces of complexity at most 2");
  raag_cmd->add_option("--surface", surface_text, "g,n")->required();
  raag_cmd->add_option("--graph", graph_path, "graph file")->required();
  raag_cmd->add_option("--schedule", schedule_text, "L1:B1,... for non-Farey surfaces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (workers > 0 && !std::getenv("CURVEKIT_WORKERS")) setenv("CURVEKIT_WORKERS", std::to_string(workers).c_str(), 1);
  const Output out{out_path};

  try {
    if (*decide_cmd || *raag_cmd) {
      const SurfaceSig sig = parse_surface(surface_text);
      if (*raag_cmd) {
        const bool supported = (sig.genus() == 0 && sig.punctures() <= 5) || (sig.genus() == 1 && sig.punctures() <= 2);
        if (!supported) throw UsageError("raag supports S_{0,n} with n <= 5 and S_{1,n} with n <= 2");
      }
      const Graph g = parse_graph(read_file(graph_path));
      const auto schedule = schedule_text.empty() ? default_schedule() : parse_schedule(schedule_text);
      const auto outcome = decide(g, sig, schedule);
      ojson doc = ojson::parse(outcome_to_json(outcome));
      if (*raag_cmd) {
        doc["question"] = "right-angled Artin group of the graph embeds in the mapping class group";
        doc["semi_decision"] = !sig.is_farey();
      }
      out.emit(doc.dump());
      return verdict_exit(outcome.verdict);
    }
    if (*check_cmd) {
      const Graph g = parse_graph(read_file(graph_path));
      const auto check = is_farey_embeddable(g);
      ojson doc;
      doc["schema"] = 1;
      doc["embeddable"] = check.embeddable;
      if (check.witness) doc["witness"] = ojson::parse(witness_to_json(*check.witness));
      out.emit(doc.dump());
      return check.embeddable ? 0 : 1;
    }
    if (*embed_cmd) {
      const SurfaceSig sig = parse_surface(surface_text);
      if (!sig.is_farey()) throw UsageError("embed works on Farey surfaces; use decide for " + sig.str());
      const Graph g = parse_graph(read_file(graph_path));
      try {
        const auto cert = farey_embed(g, sig);
        out.emit(format == "dot" ? certificate_dot(g, cert) : certificate_to_json(cert));
        return 0;
      } catch (const NotEmbeddable& e) {
        ojson doc;
        doc["schema"] = 1;
        doc["embeddable"] = false;
        doc["witness"] = ojson::parse(witness_to_json(e.witness));
        out.emit(doc.dump());
        return 1;
      }
    }
    if (*oracle_cmd) {
      const SurfaceSig sig = parse_surface(surface_text);
      if (!sig.is_farey()) throw UsageError("oracle works on Farey surfaces");
      const Graph g = parse_graph(read_file(graph_path));
      const auto cert = bounded_search(g, bound, sig);
      ojson doc;
      doc["schema"] = 1;
      doc["bound"] = bound;
      doc["found"] = cert.has_value();
      if (cert) doc["certificate"] = ojson::parse(certificate_to_json(*cert));
      out.emit(doc.dump());
      return cert ? 0 : 1;
    }
    if (*mm_cmd) {
      std::vector<std::pair<Slope, Slope>> pairs;
      if (!pairs_path.empty()) pairs = read_pairs(read_file(pairs_path));
      if (!alpha_text.empty() || !beta_text.empty()) {
        if (alpha_text.empty() || beta_text.empty()) throw UsageError("--alpha and --beta go together");
        pairs.emplace_back(Slope::parse(alpha_text), Slope::parse(beta_text));
      }
      if (pairs.empty()) throw UsageError("mm-estimate needs --pairs or --alpha/--beta");
      std::string csv = "p,q,r,s,k,lhs,rhs,ratio\n";
      for (const auto& [a, b] : pairs) {
        const auto r = mm_estimate(a, b, k);
        const std::string ratio = r.rhs > 0 ? fmt(r.lhs / r.rhs) : (r.lhs == 0 ? "1" : "inf");
        csv += a.p().str() + "," + a.q().str() + "," + b.p().str() + "," + b.q().str() + "," + std::to_string(k) + "," +
               fmt(r.lhs) + "," + fmt(r.rhs) + "," + ratio + "\n";
      }
      out.emit(csv);
      return 0;
    }
    if (*cal_cmd) {
      const auto pairs = pairs_path.empty() ? sample_slope_pairs(samples, max_q, seed) : read_pairs(read_file(pairs_path));
      const auto result = calibrate_c(pairs, k);
      ojson doc;
      doc["schema"] = 1;
      doc["C_emp"] = result.c_emp;
      auto num = [](const BigInt& x) -> ojson {
        if (abs(x) < BigInt(1) << 62) return x.convert_to<long long>();
        return x.str();
      };
      auto slope_json = [&](const Slope& s) { return ojson::array({num(s.p()), num(s.q())}); };
      doc["witness"] = {slope_json(result.witness.first), slope_json(result.witness.second)};
      doc["samples"] = result.sample_count;
      doc["k"] = k;
      if (pairs_path.empty()) {
        doc["max_q"] = max_q;
        doc["seed"] = seed;
      }
      out.emit(doc.dump());
      return 0;
    }
    if (*collar_cmd) {
      const auto summary = run_collar_test(samples, seed, !csv_path.empty());
      ojson doc;
      doc["schema"] = 1;
      doc["r"] = summary.r;
      doc["tangency_max_residual"] = summary.tangency_max_residual;
      doc["lemma2_max_gap"] = summary.lemma2_max_gap;
      doc["lemma2_min_gap"] = summary.lemma2_min_gap;
      doc["samples"] = summary.samples;
      doc["seed"] = summary.seed;
      out.emit(doc.dump());
      if (!csv_path.empty()) {
        std::string csv = "alpha_lo,alpha_hi,beta_lo,beta_hi,projection,restricted,gap\n";
        for (const auto& row : summary.rows)
          csv += fmt(row.alpha_lo) + "," + fmt(row.alpha_hi) + "," + fmt(row.beta_lo) + "," + fmt(row.beta_hi) + "," +
                 std::to_string(row.projection) + "," + std::to_string(row.restricted) + "," +
                 std::to_string(row.projection - row.restricted) + "\n";
        Output{csv_path}.emit(csv);
      }
      return 0;
    }
    if (*atlas_cmd) {
      const SurfaceSig sig = parse_surface(surface_text);
      const auto atlas = generate_atlas(sig, L, B);
      out.emit(format == "dot" ? to_dot(intersection_graph(atlas, sig), "atlas") : atlas_to_json(atlas, sig));
      return 0;
    }
    if (*reembed_cmd) {
      AnnulusArcSystem sys;
      try {
        sys = annulus_from_json(read_file(input_path));
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad annulus system: ") + e.what());
      }
      const auto states = annulus_reembed_trace(sys);
      ojson doc;
      doc["schema"] = 1;
      doc["N"] = sys.N();
      doc["limit"] = 3.0 * static_cast<double>(sys.N()) + 1.0;
      doc["steps"] = states.size() - 1;
      doc["result"] = ojson::parse(annulus_to_json(states.back()));
      if (trace) {
        auto all = ojson::array();
        for (const auto& s : states) all.push_back(ojson::parse(annulus_to_json(s)));
        doc["trace"] = all;
      }
      out.emit(doc.dump());
      return 0;
    }
    if (*cluster_cmd) {
      nlohmann::json in;
      try {
        in = nlohmann::json::parse(read_file(input_path));
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad cluster input: ") + e.what());
      }
      if (in.contains("g")) {
        g_scale = in["g"].at("scale").get<double>();
        g_offset = in["g"].at("offset").get<double>();
      }
      const GapFunction gap = [=](double D) { return g_scale * D + g_offset; };
      ClusterPartition result;
      if (in.contains("points")) {
        result = cluster_partition(in["points"].get<std::vector<double>>(), gap);
      } else if (in.contains("distances")) {
        const auto d = in["distances"].get<std::vector<std::vector<double>>>();
        for (const auto& row : d)
          if (row.size() != d.size()) throw UsageError("distance matrix must be square");
        result = cluster_partition(d.size(), [&](std::size_t i, std::size_t j) { return d[i][j]; }, gap);
      } else {
        throw UsageError("cluster input needs \"points\" or \"distances\"");
      }
      ojson doc = ojson::parse(cluster_to_json(result));
      doc["g"] = {{"scale", g_scale}, {"offset", g_offset}};
      out.emit(doc.dump());
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
