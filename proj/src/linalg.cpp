#include "netsync/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "netsync/errors.hpp"

namespace netsync {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidArgument("matrix product: inner dimensions disagree");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

Vec Matrix::operator*(const Vec& rhs) const {
    if (cols_ != rhs.size()) throw InvalidArgument("matrix-vector product: dimensions disagree");
    Vec out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * rhs[j];
        out[i] = s;
    }
    return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InvalidArgument("matrix sum: shapes disagree");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InvalidArgument("matrix difference: shapes disagree");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
}

double Matrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (double x : m.data()) s += x * x;
    return std::sqrt(s);
}

double max_abs(const Matrix& m) {
    double s = 0.0;
    for (double x : m.data()) s = std::max(s, std::abs(x));
    return s;
}

double asymmetry(const Matrix& m) {
    if (!m.square()) throw InvalidArgument("asymmetry: matrix must be square");
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            s = std::max(s, std::abs(m(i, j) - m(j, i)));
    return s;
}

namespace {

// In-place LU with partial pivoting. Returns the permutation sign, or 0 if a
// pivot vanished. Pivot row indices land in perm.
int lu_factor(Matrix& a, std::vector<std::size_t>& perm) {
    const std::size_t n = a.rows();
    perm.resize(n);
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) { best = v; piv = r; }
        }
        perm[col] = piv;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            sign = -sign;
        }
        const double p = a(col, col);
        if (p == 0.0) return 0;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / p;
            a(r, col) = f;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return sign;
}

} // namespace

double lu_determinant(Matrix a) {
    if (!a.square()) throw InvalidArgument("determinant: matrix must be square");
    if (a.rows() == 0) return 1.0;
    std::vector<std::size_t> perm;
    const int sign = lu_factor(a, perm);
    if (sign == 0) return 0.0;
    double det = sign;
    for (std::size_t i = 0; i < a.rows(); ++i) det *= a(i, i);
    return det;
}

Vec lu_solve(Matrix a, Vec b) {
    if (!a.square() || a.rows() != b.size())
        throw InvalidArgument("lu_solve: need square matrix matching rhs length");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm;
    if (lu_factor(a, perm) == 0) throw ConvergenceError("lu_solve: singular matrix");
    for (std::size_t i = 0; i < n; ++i)
        if (perm[i] != i) std::swap(b[i], b[perm[i]]);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) b[i] -= a(i, j) * b[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) b[ii] -= a(ii, j) * b[j];
        b[ii] /= a(ii, ii);
    }
    return b;
}

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm_inf(const Vec& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

} // namespace netsync
