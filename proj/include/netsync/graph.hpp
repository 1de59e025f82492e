#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netsync/eigensolve.hpp"
#include "netsync/linalg.hpp"

namespace netsync {

/// Simple undirected graph: node count plus a normalized edge list
/// (each edge stored (i, j) with i < j, sorted, no duplicates, no loops).
struct Graph {
    int n_nodes = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels; // optional; empty or n_nodes entries
};

/// Hub-and-spokes star: node 0 is the hub, nodes 1..n_peripheral the leaves.
Graph build_star(int n_peripheral);

/// Validate and normalize an explicit edge list. Throws InvalidArgument on
/// out-of-range endpoints or self-loops; duplicate edges collapse to one.
Graph build_from_edges(int n_nodes, std::vector<std::pair<int, int>> edges,
                       std::vector<std::string> labels = {});

/// Preferential-attachment graph: start from a complete graph on m+1 nodes,
/// then attach each new node to m distinct existing nodes chosen with
/// probability proportional to current degree. Deterministic for a fixed
/// seed. Requires 1 <= m < n_nodes.
Graph build_scale_free(int n_nodes, int m, std::uint64_t seed);

int degree(const Graph& g, int node);
std::vector<int> degree_sequence(const Graph& g);

struct LaplacianMatrix {
    Matrix matrix;
    Vec row_sums; // all ~0 by construction; kept as a self-check
};

/// Combinatorial Laplacian L = D - A.
LaplacianMatrix laplacian(const Graph& g);

struct SpectralDecomposition {
    Vec eigenvalues;     // ascending
    Matrix eigenvectors; // column k pairs with eigenvalues[k]
};

/// Full eigendecomposition of a symmetric matrix (Jacobi). Rejects input
/// with asymmetry above 1e-10.
SpectralDecomposition eigendecompose(const Matrix& m);
SpectralDecomposition eigendecompose(const LaplacianMatrix& l);

enum class GershgorinAxis { Row, Column };

struct GershgorinDisc {
    std::complex<double> center; // diagonal entry (real input => real center)
    double radius;               // off-axis absolute sum
};

std::vector<GershgorinDisc> gershgorin_discs(const Matrix& m,
                                             GershgorinAxis axis = GershgorinAxis::Row);

/// True when every disc lies in the closed left half plane:
/// Re(center) + radius <= 0 for all discs.
bool discs_bound_left_half_plane(const std::vector<GershgorinDisc>& discs);

} // namespace netsync
