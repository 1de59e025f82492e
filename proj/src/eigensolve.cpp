#include "netsync/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "netsync/errors.hpp"

namespace netsync {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

SymmetricEigen jacobi_eigensolve(const Matrix& m, double off_tol) {
    if (!m.square()) throw InvalidArgument("jacobi_eigensolve: matrix must be square");
    if (asymmetry(m) > 1e-10)
        throw InvalidArgument("jacobi_eigensolve: matrix is not symmetric (asymmetry > 1e-10)");

    const std::size_t n = m.rows();
    Matrix a = m;
    // Symmetrize away the sub-1e-10 noise so the rotations stay exact.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = avg;
        }
    Matrix v = Matrix::identity(n);
    const double fro = frobenius_norm(a);

    const int max_sweeps = 50;
    int sweep = 0;
    while (off_diagonal_norm(a) > off_tol * fro && sweep < max_sweeps) {
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = a(p, p);
                const double aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = a(p, i) = c * aip - s * aiq;
                    a(i, q) = a(q, i) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    if (off_diagonal_norm(a) > off_tol * fro)
        throw ConvergenceError("jacobi_eigensolve: no convergence in 50 sweeps");

    // Deterministic ordering: ascending eigenvalue, lexicographic eigenvector
    // tie-break, sign fixed by the first nonzero component.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Matrix vs = v; // sign-fixed copy used for ordering and output
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(vs(i, k)) > 1e-12) {
                if (vs(i, k) < 0.0)
                    for (std::size_t r = 0; r < n; ++r) vs(r, k) = -vs(r, k);
                break;
            }
        }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (a(x, x) != a(y, y)) return a(x, x) < a(y, y);
        for (std::size_t i = 0; i < n; ++i)
            if (vs(i, x) != vs(i, y)) return vs(i, x) < vs(i, y);
        return false;
    });

    SymmetricEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = vs(i, order[k]);
    }
    return out;
}

namespace {

// Diagonal (radix-2) similarity scaling so row and column norms come close.
// Leaves eigenvalues untouched, improves the accuracy of small ones.
void balance(Matrix& a) {
    const double radix = 2.0;
    const std::size_t n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form, similarity transforms only
// (we never need the accumulated Q: eigenvalues are all that is asked for).
void hessenberg_reduce(Matrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<double> hv(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += a(i, k) * a(i, k);
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const double x0 = a(k + 1, k);
        const double alpha = x0 >= 0.0 ? -xnorm : xnorm;
        hv[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) hv[i] = a(i, k);
        double vn = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vn += hv[i] * hv[i];
        if (vn == 0.0) continue;
        const double beta = 2.0 / vn;
        // A <- P A (rows k+1.., columns k..)
        for (std::size_t j = k; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += hv[i] * a(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * hv[i];
        }
        // A <- A P (all rows, columns k+1..)
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * hv[j];
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * hv[j];
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

inline double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix (the classic
// EISPACK hqr scheme with exceptional shifts every tenth iteration).
std::vector<std::complex<double>> hqr(Matrix& a, int max_iter) {
    const int n = static_cast<int>(a.rows());
    std::vector<std::complex<double>> out(n);
    const double eps = std::numeric_limits<double>::epsilon();

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
    if (anorm == 0.0) return out; // the zero matrix

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                out[nn--] = x + t;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        out[nn - 1] = out[nn] = x + z;
                        if (z != 0.0) out[nn] = x - w / z;
                    } else {
                        out[nn - 1] = {x + p, z};
                        out[nn] = {x + p, -z};
                    }
                    nn -= 2;
                } else {
                    if (its >= max_iter)
                        throw ConvergenceError("general_eigenvalues: QR iteration cap reached");
                    if (its != 0 && its % 10 == 0) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        double s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                                        std::abs(a(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = k != nn - 1 ? a(k + 2, k - 1) : 0.0;
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            double pp = a(k, j) + q * a(k + 1, j);
                            if (k != nn - 1) {
                                pp += r * a(k + 2, j);
                                a(k + 2, j) -= pp * z;
                            }
                            a(k + 1, j) -= pp * y;
                            a(k, j) -= pp * x;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            double pp = x * a(i, k) + y * a(i, k + 1);
                            if (k != nn - 1) {
                                pp += z * a(i, k + 2);
                                a(i, k + 2) -= pp * r;
                            }
                            a(i, k + 1) -= pp * q;
                            a(i, k) -= pp;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
    return out;
}

} // namespace

std::vector<std::complex<double>> general_eigenvalues(Matrix a, int max_iter) {
    if (!a.square()) throw InvalidArgument("general_eigenvalues: matrix must be square");
    const std::size_t n = a.rows();
    std::vector<std::complex<double>> ev;
    if (n == 0) return ev;
    if (n == 1) {
        ev = {a(0, 0)};
    } else if (n == 2) {
        const double mean = 0.5 * (a(0, 0) + a(1, 1));
        const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        const double disc = mean * mean - det;
        if (disc >= 0.0) {
            const double rt = std::sqrt(disc);
            ev = {mean + rt, mean - rt};
        } else {
            const double im = std::sqrt(-disc);
            ev = {{mean, im}, {mean, -im}};
        }
    } else {
        for (double x : a.data())
            if (!std::isfinite(x))
                throw InvalidArgument("general_eigenvalues: non-finite entry");
        balance(a);
        hessenberg_reduce(a);
        ev = hqr(a, max_iter);
    }
    std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return ev;
}

} // namespace netsync
