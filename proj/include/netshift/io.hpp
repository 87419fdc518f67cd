#pragma once

#include "netshift/graph.hpp"
#include "netshift/types.hpp"

#include <string>

namespace netshift {

// Matrix Market reader covering the formats the CLI ingests: coordinate
// entries (pattern, real, or integer field; general or symmetric) and dense
// array (real, general). Malformed content raises InputError naming the file
// and line.
Matd read_matrix_market(const std::string& path);

// Adjacency as "coordinate pattern symmetric" with lower-triangle entries.
void write_matrix_market_graph(const std::string& path, const Graph& g);

// Dense matrix as "array real general" with round-trip-exact doubles.
void write_matrix_market_dense(const std::string& path, const Matd& A);

// Whitespace-separated 0-indexed edge list, one undirected edge per line.
// Blank lines and '#' comments are skipped, duplicate edges collapse, and
// self-loops are rejected. n_hint fixes the vertex count; when it is 0 the
// count comes from an optional "# vertices: N" comment (the writer emits
// one) or, failing that, 1 + the largest index seen.
Graph read_edge_list(const std::string& path, Index n_hint = 0);
void write_edge_list(const std::string& path, const Graph& g);

// Extension dispatch: .tsv/.txt/.edges read as edge lists, everything else
// as Matrix Market. The result is validated as an adjacency matrix.
Graph read_graph(const std::string& path, Index n_hint = 0);

// Graph writer with the same extension dispatch as read_graph.
void write_graph(const std::string& path, const Graph& g);

}  // namespace netshift
