#include "commands.hpp"

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.hpp"

#include "netshift/embedding.hpp"
#include "netshift/errors.hpp"
#include "netshift/graph.hpp"
#include "netshift/io.hpp"
#include "netshift/mirror.hpp"
#include "netshift/parallel.hpp"
#include "netshift/rng.hpp"
#include "netshift/seedfree.hpp"
#include "netshift/shift_test.hpp"
#include "netshift/types.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace netshift_cli {
namespace {

using json = nlohmann::json;
using netshift::Graph;
using netshift::Index;
using netshift::IndexVec;
using netshift::InputError;
using netshift::Matd;
using netshift::Signature;
using netshift::Vecd;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("write failed for " + path);
}

std::string basename_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string extension_of(const std::string& path) {
  const std::string base = basename_of(path);
  const auto dot = base.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : base.substr(dot + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

long long parse_integer(const std::string& tok, const char* what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw InputError(std::string(what) + ": bad integer '" + tok + "'");
    return v;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError(std::string(what) + ": bad integer '" + tok + "'");
  }
}

std::vector<long long> split_integers(const std::string& s, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_integer(tok, what));
  if (out.empty()) throw InputError(std::string(what) + ": empty list");
  return out;
}

IndexVec parse_index_list(const std::string& s, const char* what) {
  IndexVec out;
  for (long long v : split_integers(s, what)) {
    if (v < 0) throw InputError(std::string(what) + ": vertex indices must be nonnegative");
    out.push_back(static_cast<Index>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// "3" means both networks use dimension 3; "2,3" splits them.
std::pair<Index, Index> parse_dims(const std::string& s) {
  const auto parts = split_integers(s, "--dim");
  if (parts.size() > 2) throw InputError("--dim takes d or d1,d2");
  for (long long v : parts)
    if (v < 1) throw InputError("--dim: dimensions must be positive");
  const Index d1 = static_cast<Index>(parts.front());
  const Index d2 = static_cast<Index>(parts.back());
  return {d1, d2};
}

Signature parse_signature(const std::string& s) {
  const auto parts = split_integers(s, "--signature");
  if (parts.size() != 2) throw InputError("--signature takes d+,d-");
  if (parts[0] < 0 || parts[1] < 0 || parts[0] + parts[1] < 1)
    throw InputError("--signature: counts must be nonnegative with a positive total");
  return Signature{static_cast<Index>(parts[0]), static_cast<Index>(parts[1])};
}

netshift::SamplingMode parse_sampling(const std::string& s) {
  if (s == "uniform") return netshift::SamplingMode::uniform_random;
  if (s == "feasible") return netshift::SamplingMode::feasible_direct;
  throw InputError("--sampling must be 'uniform' or 'feasible'");
}

const char* align_kind_name(netshift::AlignKind kind) {
  switch (kind) {
    case netshift::AlignKind::orthogonal: return "orthogonal";
    case netshift::AlignKind::indefinite_avg: return "indefinite";
    case netshift::AlignKind::rectangular: return "rectangular";
  }
  return "unknown";
}

json matrix_json(const Matd& M) {
  json rows = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vecd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json trace_json(const netshift::SeedFreeTrace& t) {
  Index passed = 0;
  for (const auto& rec : t.candidates) passed += rec.passed_filter ? 1 : 0;
  json chosen_seeds = nullptr;
  json chosen_score = nullptr;
  if (t.chosen >= 0) {
    chosen_seeds = t.candidates[static_cast<std::size_t>(t.chosen)].seeds;
    chosen_score = t.candidates[static_cast<std::size_t>(t.chosen)].h;
  }
  return json{
      {"candidates", t.candidates.size()},
      {"passed_filter", passed},
      {"chosen", t.chosen},
      {"chosen_seeds", chosen_seeds},
      {"chosen_score", chosen_score},
      {"expanded_seed_count", t.expanded_seeds.size()},
      {"expansion_fallback", t.expansion_fallback},
      {"sampling",
       {{"restarts", t.sampling.restarts},
        {"budget_exhausted", t.sampling.budget_exhausted},
        {"no_feasible_start", t.sampling.no_feasible_start}}},
  };
}

// Per-vertex table: statistic, p-value, shifted flag, estimated shift row.
std::string shifts_csv(const json& manifest, const netshift::ShiftReport& rep) {
  const Index n = rep.Yhat.rows();
  const Index d = rep.Yhat.cols();
  std::vector<char> shifted(static_cast<std::size_t>(n), 1);
  for (Index k : rep.Uhat) shifted[static_cast<std::size_t>(k)] = 0;

  std::ostringstream out;
  out << "# manifest: " << manifest.dump() << "\n";
  out << "vertex,T,p,shifted";
  for (Index j = 0; j < d; ++j) out << ",y" << j;
  out << "\n";
  for (Index k = 0; k < n; ++k) {
    out << k << ',' << fmt(rep.T(k)) << ',' << fmt(rep.p(k)) << ','
        << int(shifted[static_cast<std::size_t>(k)]);
    for (Index j = 0; j < d; ++j) out << ',' << fmt(rep.Yhat(k, j));
    out << "\n";
  }
  return out.str();
}

// Block matrix used by the sbm and rankmix models: three assortative
// communities with light cross-links, full rank and positive definite.
Matd sbm_blocks() {
  Matd B(3, 3);
  B << 0.7, 0.1, 0.1, 0.1, 0.65, 0.1, 0.1, 0.1, 0.6;
  return B;
}

// Block matrix with one negative eigenvalue, so the embedding metric is
// indefinite with signature (2, 1).
Matd grdpg_blocks() {
  Matd B(3, 3);
  B << 0.7, 0.1, 0.1, 0.1, 0.3, 0.8, 0.1, 0.8, 0.5;
  return B;
}

struct CompareArgs {
  std::string graph1, graph2;
  std::string dim, signature, seeds;
  std::string sampling = "uniform";
  Index candidates = 1000;
  Index seed_size = 0;
  double alpha = 0.05;
  double filter_alpha = 0.3;
  std::uint64_t rng_seed = 0;
  Index n_hint = 0;
  std::string out = "report.json";
  std::string csv;
};

struct SimulateArgs {
  std::string model;
  Index n = 0;
  Index dim = 3;
  double shift_frac = 0.5;
  std::uint64_t rng_seed = 0;
  std::string g1 = "graph1.mtx";
  std::string g2 = "graph2.mtx";
  std::string truth = "truth.json";
};

struct MirrorArgs {
  std::vector<std::string> files;
  std::string dim, signature;
  std::string sampling = "uniform";
  Index candidates = 1000;
  Index seed_size = 0;
  double alpha = 0.05;
  double filter_alpha = 0.3;
  std::uint64_t rng_seed = 0;
  Index n_hint = 0;
  Index vertex = -1;
  Index mds_dim = 2;
  std::string out = "mirror.json";
};

struct EmbedArgs {
  std::string file;
  std::string dim, signature;
  Index n_hint = 0;
  std::string out = "embedding.csv";
};

// Resolves --dim / --signature into per-network dimensions. The signature
// alone fixes the dimension; when both are given they must agree.
std::tuple<Index, Index, Signature> resolve_dims(const std::string& dim,
                                                 const std::string& signature) {
  Signature sig{0, 0};
  if (!signature.empty()) sig = parse_signature(signature);
  Index d1 = 0, d2 = 0;
  if (!dim.empty()) {
    std::tie(d1, d2) = parse_dims(dim);
    if (sig.total() > 0 && (sig.total() != d1 || sig.total() != d2))
      throw InputError("--signature and --dim disagree on the embedding dimension");
  } else if (sig.total() > 0) {
    d1 = d2 = sig.total();
  } else {
    throw InputError("pass --dim or --signature");
  }
  return {d1, d2, sig};
}

int cmd_compare(const CompareArgs& a) {
  const Graph g1 = netshift::read_graph(a.graph1, a.n_hint);
  const Graph g2 = netshift::read_graph(a.graph2, a.n_hint);
  if (g1.n() != g2.n())
    throw InputError("graphs must share a vertex set (" + std::to_string(g1.n()) + " vs " +
                     std::to_string(g2.n()) + " vertices)");

  const auto [d1, d2, sig] = resolve_dims(a.dim, a.signature);
  const bool seeded = !a.seeds.empty();
  IndexVec seeds;
  if (seeded) seeds = parse_index_list(a.seeds, "--seeds");

  json params = {{"alpha", a.alpha},
                 {"dim1", d1},
                 {"dim2", d2},
                 {"mode", seeded ? "seeded" : "seed-free"},
                 {"signature", a.signature.empty() ? json(nullptr) : json(a.signature)}};
  if (seeded) {
    params["seeds"] = seeds;
  } else {
    params["candidates"] = a.candidates;
    params["seed_size"] = a.seed_size;
    params["filter_alpha"] = a.filter_alpha;
    params["sampling"] = a.sampling;
  }
  const json manifest =
      make_manifest("compare", params, {{"graph1", a.graph1}, {"graph2", a.graph2}}, a.rng_seed);

  const netshift::EmbedOptions eopts;
  const netshift::Embedding e1 =
      sig.total() > 0 ? netshift::embed(g1, sig, eopts) : netshift::embed(g1, d1, eopts);
  const netshift::Embedding e2 =
      sig.total() > 0 ? netshift::embed(g2, sig, eopts) : netshift::embed(g2, d2, eopts);

  netshift::ShiftReport rep;
  json trace = nullptr;
  if (seeded) {
    rep = netshift::run_seeded_embedded(e1, e2, seeds, a.alpha);
  } else {
    netshift::SeedFreeConfig cfg;
    cfg.d1 = d1;
    cfg.d2 = d2;
    cfg.L = a.seed_size;
    cfg.M = a.candidates;
    cfg.alpha = a.alpha;
    cfg.alpha_tilde = a.filter_alpha;
    cfg.rng_seed = a.rng_seed;
    cfg.sampling = parse_sampling(a.sampling);
    auto [r, t] = netshift::run_seedfree_embedded(e1, e2, cfg);
    rep = std::move(r);
    trace = trace_json(t);
  }

  const Index n = g1.n();
  IndexVec flagged;
  {
    std::vector<char> unshifted(static_cast<std::size_t>(n), 0);
    for (Index k : rep.Uhat) unshifted[static_cast<std::size_t>(k)] = 1;
    for (Index k = 0; k < n; ++k)
      if (!unshifted[static_cast<std::size_t>(k)]) flagged.push_back(k);
  }

  const json out = {
      {"schema", 1},
      {"manifest", manifest},
      {"n", n},
      {"dof", rep.dof},
      {"alignment",
       {{"kind", align_kind_name(rep.alignment.kind)},
        {"condition", rep.alignment.condition},
        {"seeds", rep.alignment.seeds},
        {"W", matrix_json(rep.alignment.W)}}},
      {"T", vector_json(rep.T)},
      {"p", vector_json(rep.p)},
      {"unshifted", rep.Uhat},
      {"shifted", flagged},
      {"Yhat", matrix_json(rep.Yhat)},
      {"trace", trace},
  };
  write_text(a.out, out.dump(2) + "\n");
  if (!a.csv.empty()) write_text(a.csv, shifts_csv(manifest, rep));

  std::cout << "flagged " << flagged.size() << " of " << n << " vertices as shifted; wrote "
            << a.out;
  if (!a.csv.empty()) std::cout << " and " << a.csv;
  std::cout << "\n";
  return 0;
}

int cmd_simulate(const SimulateArgs& a) {
  netshift::ShiftScenario sc;
  if (a.model == "rdpg") {
    sc = netshift::make_rdpg_scenario(a.n, a.dim, a.shift_frac, a.rng_seed);
  } else if (a.model == "sbm") {
    sc = netshift::make_sbm_scenario(a.n, sbm_blocks(), a.shift_frac, a.rng_seed);
  } else if (a.model == "grdpg") {
    sc = netshift::make_sbm_scenario(a.n, grdpg_blocks(), a.shift_frac, a.rng_seed);
  } else if (a.model == "rankmix") {
    sc = netshift::make_rank_mismatch_scenario(a.n, sbm_blocks(), a.rng_seed, a.shift_frac);
  } else {
    throw InputError("--model must be rdpg, sbm, grdpg, or rankmix");
  }

  const Graph g1 = netshift::sample_graph(sc.model1, netshift::substream_seed(a.rng_seed, "graph", 1));
  const Graph g2 = netshift::sample_graph(sc.model2, netshift::substream_seed(a.rng_seed, "graph", 2));

  json params = {{"model", a.model}, {"n", a.n}, {"shift_frac", a.shift_frac}};
  if (a.model == "rdpg") params["dim"] = a.dim;
  const json manifest = make_manifest("simulate", params, {}, a.rng_seed);

  const json truth = {
      {"schema", 1},
      {"manifest", manifest},
      {"model", a.model},
      {"n", a.n},
      {"dim1", sc.model1.dim()},
      {"dim2", sc.model2.dim()},
      {"signature1", {sc.model1.sig.d_plus, sc.model1.sig.d_minus}},
      {"signature2", {sc.model2.sig.d_plus, sc.model2.sig.d_minus}},
      {"unshifted", sc.unshifted},
      {"W_true", matrix_json(sc.W_true)},
      {"Y_true", matrix_json(sc.Y_true)},
      {"blocks1", sc.blocks1},
      {"blocks2", sc.blocks2},
  };

  netshift::write_graph(a.g1, g1);
  netshift::write_graph(a.g2, g2);
  write_text(a.truth, truth.dump(2) + "\n");

  std::cout << "simulated " << a.model << " pair on " << a.n << " vertices ("
            << sc.unshifted.size() << " unshifted); wrote " << a.g1 << ", " << a.g2 << ", "
            << a.truth << "\n";
  return 0;
}

int cmd_mirror(const MirrorArgs& a) {
  if (a.files.size() < 2) throw InputError("mirror needs at least two graph files");
  std::vector<Graph> graphs;
  graphs.reserve(a.files.size());
  for (const std::string& f : a.files) graphs.push_back(netshift::read_graph(f, a.n_hint));

  const auto [d1, d2, sig] = resolve_dims(a.dim, a.signature);
  netshift::SeedFreeConfig cfg;
  cfg.d1 = d1;
  cfg.d2 = d2;
  cfg.L = a.seed_size;
  cfg.M = a.candidates;
  cfg.alpha = a.alpha;
  cfg.alpha_tilde = a.filter_alpha;
  cfg.rng_seed = a.rng_seed;
  cfg.sampling = parse_sampling(a.sampling);
  cfg.sig1 = sig;
  cfg.sig2 = sig;

  netshift::MirrorCurve curve = netshift::make_mirror(graphs, cfg, a.mds_dim, a.vertex);
  for (std::size_t i = 0; i < a.files.size(); ++i) curve.labels[i] = basename_of(a.files[i]);

  json params = {{"alpha", a.alpha},
                 {"candidates", a.candidates},
                 {"dim1", d1},
                 {"dim2", d2},
                 {"filter_alpha", a.filter_alpha},
                 {"mds_dim", a.mds_dim},
                 {"sampling", a.sampling},
                 {"seed_size", a.seed_size},
                 {"signature", a.signature.empty() ? json(nullptr) : json(a.signature)},
                 {"vertex", a.vertex >= 0 ? json(a.vertex) : json(nullptr)}};
  std::vector<std::pair<std::string, std::string>> inputs;
  for (std::size_t i = 0; i < a.files.size(); ++i)
    inputs.emplace_back("t" + std::to_string(i), a.files[i]);
  const json manifest = make_manifest("mirror", params, inputs, a.rng_seed);

  const json out = {
      {"schema", 1},
      {"manifest", manifest},
      {"labels", curve.labels},
      {"distance", matrix_json(curve.D)},
      {"points", matrix_json(curve.points)},
      {"iso", vector_json(curve.iso)},
  };
  write_text(a.out, out.dump(2) + "\n");

  std::cout << "mirror over " << graphs.size() << " snapshots; wrote " << a.out << "\n";
  return 0;
}

int cmd_embed(const EmbedArgs& a) {
  const std::string ext = extension_of(a.file);
  Matd A;
  if (ext == "tsv" || ext == "txt" || ext == "edges") {
    A = netshift::read_graph(a.file, a.n_hint).adj;
  } else {
    A = netshift::read_matrix_market(a.file);
  }

  Signature sig{0, 0};
  if (!a.signature.empty()) sig = parse_signature(a.signature);
  const bool automatic = a.dim == "auto";
  if (a.dim.empty() && sig.total() == 0) throw InputError("pass --dim or --signature");
  if (automatic && sig.total() > 0)
    throw InputError("--dim auto cannot be combined with --signature");

  const netshift::EmbedOptions eopts;
  netshift::Embedding e;
  Index selected = 0;
  if (sig.total() > 0) {
    e = netshift::embed_matrix(A, sig, eopts);
  } else if (automatic) {
    const Index n = A.rows();
    if (n < 3) throw InputError("--dim auto needs at least 3 vertices");
    const Index k = std::min<Index>(n - 1, 50);
    const auto [lam, U] = netshift::spectrum_by_magnitude(A, k, eopts);
    selected = netshift::select_dimension(lam.cwiseAbs(), k - 1);
    e = netshift::embed_matrix(A, selected, eopts);
  } else {
    const long long d = parse_integer(a.dim, "--dim");
    if (d < 1) throw InputError("--dim must be positive or 'auto'");
    e = netshift::embed_matrix(A, static_cast<Index>(d), eopts);
  }

  const json params = {{"dim", a.dim.empty() ? json(nullptr) : json(a.dim)},
                       {"signature", a.signature.empty() ? json(nullptr) : json(a.signature)}};
  const json manifest = make_manifest("embed", params, {{"graph", a.file}}, 0);

  std::ostringstream out;
  out << "# manifest: " << manifest.dump() << "\n";
  out << "# eigenvalues:";
  for (Index i = 0; i < e.lambda.size(); ++i)
    out << (i == 0 ? " " : ",") << fmt(e.lambda(i));
  out << "\n";
  out << "# signature: " << e.sig.d_plus << "," << e.sig.d_minus << "\n";
  if (automatic) out << "# selected_dim: " << selected << "\n";
  out << "vertex";
  for (Index j = 0; j < e.X.cols(); ++j) out << ",x" << j;
  out << "\n";
  for (Index i = 0; i < e.X.rows(); ++i) {
    out << i;
    for (Index j = 0; j < e.X.cols(); ++j) out << ',' << fmt(e.X(i, j));
    out << "\n";
  }
  write_text(a.out, out.str());

  std::cout << "embedded " << e.X.rows() << " vertices into " << e.X.cols()
            << " dimensions (signature " << e.sig.d_plus << "," << e.sig.d_minus << "); wrote "
            << a.out << "\n";
  return 0;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("NETSHIFT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"vertex-wise latent position shift tests for paired networks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (overrides NETSHIFT_THREADS; default: all cores)");

  CompareArgs ca;
  CLI::App* cmp = app.add_subcommand("compare", "test two graphs for per-vertex position shifts");
  cmp->fallthrough();
  cmp->add_option("graph1", ca.graph1, "first adjacency file (.mtx or edge list)")->required();
  cmp->add_option("graph2", ca.graph2, "second adjacency file")->required();
  cmp->add_option("--dim", ca.dim, "embedding dimension d or d1,d2");
  cmp->add_option("--signature", ca.signature, "embedding metric signature d+,d-");
  cmp->add_option("--seeds", ca.seeds,
                  "comma-separated vertices known to be unshifted; omit to run seed-free");
  cmp->add_option("--alpha", ca.alpha, "false discovery rate of the final test");
  cmp->add_option("--candidates", ca.candidates, "seed-free: candidate seed sets to draw");
  cmp->add_option("--seed-size", ca.seed_size,
                  "seed-free: vertices per candidate (default max(d1,d2))");
  cmp->add_option("--filter-alpha", ca.filter_alpha, "seed-free: pair filter family level");
  cmp->add_option("--sampling", ca.sampling, "seed-free: uniform or feasible");
  cmp->add_option("--rng-seed", ca.rng_seed, "master seed for candidate sampling");
  cmp->add_option("--n", ca.n_hint, "vertex count for edge lists without a header");
  cmp->add_option("--out", ca.out, "report path (JSON)");
  cmp->add_option("--csv", ca.csv, "also write the per-vertex table to this path");

  SimulateArgs sa;
  CLI::App* sim = app.add_subcommand("simulate", "sample a synthetic graph pair with known truth");
  sim->fallthrough();
  sim->add_option("--model", sa.model, "rdpg, sbm, grdpg, or rankmix")->required();
  sim->add_option("--n", sa.n, "number of vertices")->required();
  sim->add_option("--dim", sa.dim, "latent dimension (rdpg only)");
  sim->add_option("--shift-frac", sa.shift_frac, "fraction of vertices to shift");
  sim->add_option("--rng-seed", sa.rng_seed, "master seed");
  sim->add_option("--g1", sa.g1, "output path for the first graph");
  sim->add_option("--g2", sa.g2, "output path for the second graph");
  sim->add_option("--truth", sa.truth, "output path for the ground truth (JSON)");

  MirrorArgs ma;
  CLI::App* mir = app.add_subcommand("mirror", "low-dimensional drift curve for a graph sequence");
  mir->fallthrough();
  mir->add_option("graphs", ma.files, "two or more snapshot adjacency files")->required();
  mir->add_option("--dim", ma.dim, "embedding dimension d or d1,d2");
  mir->add_option("--signature", ma.signature, "embedding metric signature d+,d-");
  mir->add_option("--vertex", ma.vertex, "track one vertex instead of whole-network distances");
  mir->add_option("--mds-dim", ma.mds_dim, "dimension of the scaled curve");
  mir->add_option("--alpha", ma.alpha, "false discovery rate per pair");
  mir->add_option("--candidates", ma.candidates, "candidate seed sets per pair");
  mir->add_option("--seed-size", ma.seed_size, "vertices per candidate (default max(d1,d2))");
  mir->add_option("--filter-alpha", ma.filter_alpha, "pair filter family level");
  mir->add_option("--sampling", ma.sampling, "uniform or feasible");
  mir->add_option("--rng-seed", ma.rng_seed, "master seed");
  mir->add_option("--n", ma.n_hint, "vertex count for edge lists without a header");
  mir->add_option("--out", ma.out, "output path (JSON)");

  EmbedArgs ea;
  CLI::App* emb = app.add_subcommand("embed", "spectral embedding of one graph or matrix");
  emb->fallthrough();
  emb->add_option("graph", ea.file, "adjacency or symmetric matrix file")->required();
  emb->add_option("--dim", ea.dim, "embedding dimension, or 'auto' to pick by eigengap");
  emb->add_option("--signature", ea.signature, "embedding metric signature d+,d-");
  emb->add_option("--n", ea.n_hint, "vertex count for edge lists without a header");
  emb->add_option("--out", ea.out, "output path (CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    netshift::set_thread_count(resolve_threads(threads));
    if (cmp->parsed()) return cmd_compare(ca);
    if (sim->parsed()) return cmd_simulate(sa);
    if (mir->parsed()) return cmd_mirror(ma);
    return cmd_embed(ea);
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace netshift_cli
