#pragma once

#include <cstddef>
#include <vector>

namespace netsync {

using Vec = std::vector<double>;

/// Dense row-major matrix. Everything in this library is small (a dozen rows
/// at most), so there is no sparsity or blocking — just a flat buffer.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Vec operator*(const Vec& rhs) const;
    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    double trace() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);

/// Largest |a(i,j) - a(j,i)| over all pairs; 0 for perfectly symmetric input.
double asymmetry(const Matrix& m);

/// Determinant via LU with partial pivoting. Exact-ish for the small matrices
/// used here; returns 0 when a pivot underflows to zero.
double lu_determinant(Matrix a);

/// Solve a x = b via LU with partial pivoting. Throws ConvergenceError on a
/// (numerically) singular matrix.
Vec lu_solve(Matrix a, Vec b);

double norm2(const Vec& v);
double norm_inf(const Vec& v);

} // namespace netsync
