#include "netshift/io.hpp"

#include "netshift/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace netshift {

namespace {

[[noreturn]] void fail(const std::string& path, Index line, const std::string& why) {
  throw InputError(path + ":" + std::to_string(line) + ": " + why);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string extension(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  const std::size_t sep = path.find_last_of("/\\");
  if (dot == std::string::npos || (sep != std::string::npos && dot < sep)) return "";
  return lower(path.substr(dot + 1));
}

bool blank_or_comment(const std::string& line, char marker) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == marker;
  }
  return true;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw NumericalError("failed while writing " + path);
}

// Round-trip-exact decimal form of a double.
std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Matd read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);

  std::string line;
  Index line_no = 0;
  if (!std::getline(in, line)) fail(path, 1, "empty file");
  ++line_no;

  std::istringstream banner(line);
  std::string magic, object, format, field, symmetry;
  banner >> magic >> object >> format >> field >> symmetry;
  if (magic != "%%MatrixMarket") fail(path, line_no, "missing %%MatrixMarket banner");
  object = lower(object), format = lower(format), field = lower(field), symmetry = lower(symmetry);
  if (object != "matrix") fail(path, line_no, "unsupported object '" + object + "'");
  if (format != "coordinate" && format != "array")
    fail(path, line_no, "unsupported format '" + format + "'");
  if (field != "real" && field != "integer" && field != "pattern")
    fail(path, line_no, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    fail(path, line_no, "unsupported symmetry '" + symmetry + "'");
  if (format == "array" && field == "pattern")
    fail(path, line_no, "array format cannot be pattern");

  // Size line, after any % comments.
  do {
    if (!std::getline(in, line)) fail(path, line_no, "missing size line");
    ++line_no;
  } while (blank_or_comment(line, '%'));

  std::istringstream size(line);
  Index rows = -1, cols = -1, nnz = -1;
  if (format == "coordinate") {
    if (!(size >> rows >> cols >> nnz)) fail(path, line_no, "bad coordinate size line");
  } else {
    if (!(size >> rows >> cols)) fail(path, line_no, "bad array size line");
  }
  if (rows < 0 || cols < 0) fail(path, line_no, "negative dimensions");
  if (symmetry == "symmetric" && rows != cols)
    fail(path, line_no, "symmetric matrix must be square");

  Matd A = Matd::Zero(rows, cols);

  if (format == "coordinate") {
    Index seen = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (blank_or_comment(line, '%')) continue;
      std::istringstream entry(line);
      Index i = 0, j = 0;
      double v = 1.0;
      if (!(entry >> i >> j)) fail(path, line_no, "bad coordinate entry");
      if (field != "pattern" && !(entry >> v)) fail(path, line_no, "missing value");
      if (i < 1 || i > rows || j < 1 || j > cols)
        fail(path, line_no, "index out of range");
      A(i - 1, j - 1) = v;
      if (symmetry == "symmetric") A(j - 1, i - 1) = v;
      ++seen;
    }
    if (seen != nnz)
      throw InputError(path + ": expected " + std::to_string(nnz) + " entries, found " +
                       std::to_string(seen));
  } else {
    // Column-major dense values; the symmetric variant stores only the lower
    // triangle. Whitespace-agnostic either way.
    for (Index c = 0; c < cols; ++c)
      for (Index r = (symmetry == "symmetric" ? c : Index{0}); r < rows; ++r) {
        double v;
        if (!(in >> v)) throw InputError(path + ": dense payload ended early");
        A(r, c) = v;
        if (symmetry == "symmetric") A(c, r) = v;
      }
    double extra_probe;
    if (in >> extra_probe) throw InputError(path + ": trailing values after dense payload");
  }
  return A;
}

void write_matrix_market_graph(const std::string& path, const Graph& g) {
  validate_adjacency(g.adj);
  std::ofstream out = open_out(path);
  const Index n = g.n();
  out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  out << n << " " << n << " " << g.edge_count() << "\n";
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < r; ++c)
      if (g.adj(r, c) != 0.0) out << r + 1 << " " << c + 1 << "\n";
  finish_out(out, path);
}

void write_matrix_market_dense(const std::string& path, const Matd& A) {
  std::ofstream out = open_out(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << A.rows() << " " << A.cols() << "\n";
  for (Index c = 0; c < A.cols(); ++c)
    for (Index r = 0; r < A.rows(); ++r) out << exact(A(r, c)) << "\n";
  finish_out(out, path);
}

Graph read_edge_list(const std::string& path, Index n_hint) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);

  std::vector<std::pair<Index, Index>> edges;
  Index max_index = -1;
  Index declared_n = 0;
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line, '#')) {
      std::istringstream comment(line);
      std::string hash, word;
      if (comment >> hash >> word && hash == "#" && word == "vertices:") comment >> declared_n;
      continue;
    }
    std::istringstream entry(line);
    long long u = -1, v = -1;
    if (!(entry >> u >> v)) fail(path, line_no, "expected two vertex indices");
    if (u < 0 || v < 0) fail(path, line_no, "negative vertex index");
    if (u == v) fail(path, line_no, "self-loop is not allowed");
    edges.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
    max_index = std::max<Index>(max_index, std::max<Index>(u, v));
  }

  Index n = n_hint > 0 ? n_hint : std::max<Index>(declared_n, max_index + 1);
  if (n <= 0) throw InputError(path + ": no edges and no vertex count given");
  if (max_index >= n)
    throw InputError(path + ": vertex index " + std::to_string(max_index) +
                     " exceeds vertex count " + std::to_string(n));

  Graph g;
  g.adj = Matd::Zero(n, n);
  for (auto [u, v] : edges) g.adj(u, v) = g.adj(v, u) = 1.0;
  return g;
}

void write_edge_list(const std::string& path, const Graph& g) {
  validate_adjacency(g.adj);
  std::ofstream out = open_out(path);
  out << "# vertices: " << g.n() << "\n";
  for (Index r = 0; r < g.n(); ++r)
    for (Index c = r + 1; c < g.n(); ++c)
      if (g.adj(r, c) != 0.0) out << r << "\t" << c << "\n";
  finish_out(out, path);
}

Graph read_graph(const std::string& path, Index n_hint) {
  const std::string ext = extension(path);
  Graph g;
  if (ext == "tsv" || ext == "txt" || ext == "edges") {
    g = read_edge_list(path, n_hint);
  } else {
    g.adj = read_matrix_market(path);
  }
  validate_adjacency(g.adj);
  return g;
}

void write_graph(const std::string& path, const Graph& g) {
  const std::string ext = extension(path);
  if (ext == "tsv" || ext == "txt" || ext == "edges")
    write_edge_list(path, g);
  else
    write_matrix_market_graph(path, g);
}

}  // namespace netshift
