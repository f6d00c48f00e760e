// numerics.hpp: small dense complex linear algebra, polynomial roots, simplex search

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace nonrecip {

using Complex = std::complex<double>;

/// Row-major dense matrix with explicit dimensions.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> row_major);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const T> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(T scalar);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, T scalar) { return lhs *= scalar; }
    friend Matrix operator*(T scalar, Matrix rhs) { return rhs *= scalar; }
    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs) { return multiply(lhs, rhs); }

    bool operator==(const Matrix&) const = default;

private:
    static Matrix multiply(const Matrix& lhs, const Matrix& rhs);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using CMatrix = Matrix<Complex>;
using RMatrix = Matrix<double>;

CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conj(const CMatrix& a);

/// Largest entry magnitude.
double max_abs(const CMatrix& a);
double max_abs(const RMatrix& a);

/// Solves AX = B by LU with partial pivoting. Throws SingularMatrix when a
/// pivot drops below 1e-12 times the largest entry magnitude of A.
CMatrix lu_solve(const CMatrix& a, const CMatrix& b);
CMatrix inverse(const CMatrix& a);

namespace detail {
// Same as lu_solve with a caller-chosen relative pivot tolerance.
CMatrix lu_solve(const CMatrix& a, const CMatrix& b, double relative_pivot_tol);
}  // namespace detail

/// Ascending eigenvalues of a Hermitian matrix (cyclic complex Jacobi).
/// Throws NotHermitian when max|A - A^dag| > 1e-12.
std::vector<double> hermitian_eigenvalues(const CMatrix& a);

// Polynomial coefficients are ordered highest degree first: {1, 0, -1} is x^2 - 1.

struct RootSearch {
    std::vector<Complex> roots;
    double max_residual = 0.0;  // max |p(root)|
    int iterations = 0;
    bool converged = false;
};

/// Durand-Kerner simultaneous iteration; never throws on non-convergence.
RootSearch find_roots(std::span<const Complex> coeffs);

/// Roots of a polynomial of degree <= 8. Throws NoConvergence when the residual
/// bound |p(root)| <= 1e-9 max|coeff| is not met within 200 iterations.
std::vector<Complex> poly_roots(std::span<const Complex> coeffs);

Complex poly_eval(std::span<const Complex> coeffs, Complex x);

struct SimplexOptions {
    int max_evals = 2000;
    double tol = 1e-8;         // simplex diameter (infinity norm)
    double initial_step = 0.1;
};

struct SimplexResult {
    std::vector<double> argmin;
    double value = 0.0;
    int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead descent from `start`.
SimplexResult minimize_simplex(const Objective& objective, std::span<const double> start,
                               const SimplexOptions& options = {});

}  // namespace nonrecip
