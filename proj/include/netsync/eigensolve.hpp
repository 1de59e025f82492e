#pragma once

#include <complex>
#include <vector>

#include "netsync/linalg.hpp"

namespace netsync {

struct SymmetricEigen {
    Vec eigenvalues;     // ascending
    Matrix eigenvectors; // column k pairs with eigenvalues[k], unit norm
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Rejects input whose asymmetry exceeds 1e-10. Sweeps until the off-diagonal
/// Frobenius mass drops below off_tol times the matrix norm (max 50 sweeps).
/// Output ordering is deterministic: eigenvalues ascending, ties broken by
/// eigenvector lexicographic order, each vector sign-fixed so its first
/// nonzero component is positive.
SymmetricEigen jacobi_eigensolve(const Matrix& m, double off_tol = 1e-12);

/// Eigenvalues of a general real square matrix: balance, Householder
/// reduction to Hessenberg form, then Francis double-shift QR. No
/// eigenvectors. Throws ConvergenceError past max_iter QR iterations on any
/// single eigenvalue. Result sorted by modulus descending (then by real and
/// imaginary part, for determinism).
std::vector<std::complex<double>> general_eigenvalues(Matrix a, int max_iter = 500);

} // namespace netsync
