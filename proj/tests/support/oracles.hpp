#pragma once

// Independent reference implementations for cross-checking the library's
// numerics. Deliberately different algorithms from the ones under test:
// eigenvalues via characteristic-polynomial bisection instead of iteration,
// Jacobians via central differences, component counts via union-find.

#include <functional>
#include <vector>

#include "netsync/graph.hpp"
#include "netsync/linalg.hpp"

namespace oracle {

/// Monic characteristic polynomial of a (Faddeev-LeVerrier):
/// p(x) = x^n + c[1] x^(n-1) + ... + c[n], returned as {1, c1, ..., cn}.
netsync::Vec charpoly(const netsync::Matrix& a);

double polyval(const netsync::Vec& coeffs, double x);

/// All real roots of the polynomial in [lo, hi], found by sign-change
/// scanning plus bisection. Only reliable for simple roots.
netsync::Vec bisect_roots(const netsync::Vec& coeffs, double lo, double hi,
                          int grid = 200000, double tol = 1e-12);

/// Eigenvalues of a symmetric matrix via the characteristic polynomial
/// (ascending). Scans [-r, r] with r a Gershgorin bound.
netsync::Vec symmetric_eigenvalues(const netsync::Matrix& a);

/// Central-difference Jacobian of f at x with step h.
netsync::Matrix fd_jacobian(const std::function<netsync::Vec(const netsync::Vec&)>& f,
                            const netsync::Vec& x, double h = 1e-6);

int count_components(const netsync::Graph& g);

} // namespace oracle
