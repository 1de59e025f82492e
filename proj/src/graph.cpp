#include "netsync/graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "netsync/errors.hpp"
#include "netsync/rng.hpp"

namespace netsync {

Graph build_star(int n_peripheral) {
    if (n_peripheral < 1) throw InvalidArgument("build_star: need at least one peripheral node");
    Graph g;
    g.n_nodes = n_peripheral + 1;
    g.edges.reserve(n_peripheral);
    for (int k = 1; k <= n_peripheral; ++k) g.edges.emplace_back(0, k);
    return g;
}

Graph build_from_edges(int n_nodes, std::vector<std::pair<int, int>> edges,
                       std::vector<std::string> labels) {
    if (n_nodes < 1) throw InvalidArgument("build_from_edges: need at least one node");
    if (!labels.empty() && static_cast<int>(labels.size()) != n_nodes)
        throw InvalidArgument("build_from_edges: label count must match node count");
    for (auto& [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n_nodes || j >= n_nodes)
            throw InvalidArgument("build_from_edges: edge endpoint out of range");
        if (i == j) throw InvalidArgument("build_from_edges: self-loops are not allowed");
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Graph g;
    g.n_nodes = n_nodes;
    g.edges = std::move(edges);
    g.labels = std::move(labels);
    return g;
}

Graph build_scale_free(int n_nodes, int m, std::uint64_t seed) {
    if (m < 1) throw InvalidArgument("build_scale_free: m must be at least 1");
    if (n_nodes <= m) throw InvalidArgument("build_scale_free: need n_nodes > m");

    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> deg(n_nodes, 0);

    // Seed graph: complete on the first m+1 nodes.
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            edges.emplace_back(i, j);
            ++deg[i];
            ++deg[j];
        }

    std::vector<int> chosen;
    for (int v = m + 1; v < n_nodes; ++v) {
        chosen.clear();
        for (int pick = 0; pick < m; ++pick) {
            long total = 0;
            for (int u = 0; u < v; ++u)
                if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) total += deg[u];
            double r = uniform01(rng) * static_cast<double>(total);
            int target = -1;
            for (int u = 0; u < v; ++u) {
                if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) continue;
                r -= static_cast<double>(deg[u]);
                if (r < 0.0) {
                    target = u;
                    break;
                }
            }
            if (target < 0) { // r landed exactly on the total; take the last candidate
                for (int u = v - 1; u >= 0; --u)
                    if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) {
                        target = u;
                        break;
                    }
            }
            chosen.push_back(target);
            edges.emplace_back(target, v);
            ++deg[target];
            ++deg[v];
        }
    }
    return build_from_edges(n_nodes, std::move(edges));
}

int degree(const Graph& g, int node) {
    if (node < 0 || node >= g.n_nodes) throw InvalidArgument("degree: node out of range");
    int d = 0;
    for (const auto& [i, j] : g.edges)
        if (i == node || j == node) ++d;
    return d;
}

std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> deg(g.n_nodes, 0);
    for (const auto& [i, j] : g.edges) {
        ++deg[i];
        ++deg[j];
    }
    return deg;
}

LaplacianMatrix laplacian(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.n_nodes);
    LaplacianMatrix l{Matrix(n, n), Vec(n, 0.0)};
    for (const auto& [i, j] : g.edges) {
        l.matrix(i, j) = -1.0;
        l.matrix(j, i) = -1.0;
        l.matrix(i, i) += 1.0;
        l.matrix(j, j) += 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += l.matrix(i, j);
        l.row_sums[i] = s;
    }
    return l;
}

SpectralDecomposition eigendecompose(const Matrix& m) {
    SymmetricEigen e = jacobi_eigensolve(m);
    return {std::move(e.eigenvalues), std::move(e.eigenvectors)};
}

SpectralDecomposition eigendecompose(const LaplacianMatrix& l) {
    return eigendecompose(l.matrix);
}

std::vector<GershgorinDisc> gershgorin_discs(const Matrix& m, GershgorinAxis axis) {
    if (!m.square()) throw InvalidArgument("gershgorin_discs: matrix must be square");
    const std::size_t n = m.rows();
    std::vector<GershgorinDisc> discs(n);
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            radius += axis == GershgorinAxis::Row ? std::abs(m(i, j)) : std::abs(m(j, i));
        }
        discs[i] = {std::complex<double>(m(i, i), 0.0), radius};
    }
    return discs;
}

bool discs_bound_left_half_plane(const std::vector<GershgorinDisc>& discs) {
    for (const auto& d : discs)
        if (d.center.real() + d.radius > 0.0) return false;
    return true;
}

} // namespace netsync
