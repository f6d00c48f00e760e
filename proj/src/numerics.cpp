#include "nonrecip/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "nonrecip/error.hpp"

namespace nonrecip {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kHermitianTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
constexpr int kRootMaxIterations = 200;
constexpr double kRootResidualTol = 1e-9;

void require_same_shape(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
    if (r1 != r2 || c1 != c2) {
        throw std::invalid_argument("matrix shape mismatch");
    }
}

}  // namespace

template <typename T>
Matrix<T>::Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> row_major)
    : rows_(rows), cols_(cols), data_(row_major) {
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("initializer length does not match rows*cols");
    }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
}

template <typename T>
Matrix<T> Matrix<T>::diagonal(std::span<const T> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

template <typename T>
Matrix<T>& Matrix<T>::operator+=(const Matrix& rhs) {
    require_same_shape(rows_, cols_, rhs.rows_, rhs.cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

template <typename T>
Matrix<T>& Matrix<T>::operator-=(const Matrix& rhs) {
    require_same_shape(rows_, cols_, rhs.rows_, rhs.cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

template <typename T>
Matrix<T>& Matrix<T>::operator*=(T scalar) {
    for (auto& v : data_) v *= scalar;
    return *this;
}

template <typename T>
Matrix<T> Matrix<T>::multiply(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i) {
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const T a = lhs(i, k);
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

template class Matrix<Complex>;
template class Matrix<double>;

CMatrix adjoint(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

CMatrix transpose(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

CMatrix conj(const CMatrix& a) {
    CMatrix out = a;
    for (auto& v : out.data()) v = std::conj(v);
    return out;
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const RMatrix& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

namespace detail {

CMatrix lu_solve(const CMatrix& a, const CMatrix& b, double relative_pivot_tol) {
    if (!a.square()) throw std::invalid_argument("lu_solve: matrix is not square");
    if (b.rows() != a.rows()) throw std::invalid_argument("lu_solve: right-hand side rows mismatch");

    const std::size_t n = a.rows();
    const std::size_t k = b.cols();
    const double scale = max_abs(a);
    const double threshold = relative_pivot_tol * scale;

    CMatrix lu = a;
    CMatrix x = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(lu(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (scale == 0.0 || best < threshold) {
            std::ostringstream msg;
            msg << "pivot " << best << " below " << threshold << " at column " << col;
            throw Error(ErrorKind::SingularMatrix, msg.str());
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(pivot, j));
            for (std::size_t j = 0; j < k; ++j) std::swap(x(col, j), x(pivot, j));
        }
        const Complex diag = lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = lu(r, col) / diag;
            lu(r, col) = factor;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= factor * lu(col, j);
            for (std::size_t j = 0; j < k; ++j) x(r, j) -= factor * x(col, j);
        }
    }
    for (std::size_t row = n; row-- > 0;) {
        for (std::size_t j = 0; j < k; ++j) {
            Complex acc = x(row, j);
            for (std::size_t c = row + 1; c < n; ++c) acc -= lu(row, c) * x(c, j);
            x(row, j) = acc / lu(row, row);
        }
    }
    return x;
}

}  // namespace detail

CMatrix lu_solve(const CMatrix& a, const CMatrix& b) { return detail::lu_solve(a, b, kPivotTol); }

CMatrix inverse(const CMatrix& a) {
    if (!a.square()) throw std::invalid_argument("inverse: matrix is not square");
    return lu_solve(a, CMatrix::identity(a.rows()));
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a) {
    if (!a.square()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
    const double asym = max_abs(a - adjoint(a));
    if (asym > kHermitianTol) {
        std::ostringstream msg;
        msg << "max|A - A^dag| = " << asym;
        throw Error(ErrorKind::NotHermitian, msg.str());
    }

    const std::size_t n = a.rows();
    CMatrix h = a;
    for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(h(i, j));
        return std::sqrt(s);
    };
    const double total = std::max(max_abs(h), std::numeric_limits<double>::min());

    for (int sweep = 0; sweep < kJacobiMaxSweeps && off_norm() > 1e-16 * total; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(h(p, q));
                if (mag <= 1e-300) continue;
                // Rotate the phase of h(p,q) away, then apply a real Jacobi rotation.
                const Complex phase = std::conj(h(p, q)) / mag;
                const double theta = (h(q, q).real() - h(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * phase;
                const Complex jqq = c * phase;
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex hp = h(r, p);
                    const Complex hq = h(r, q);
                    h(r, p) = hp * jpp + hq * jqp;
                    h(r, q) = hp * jpq + hq * jqq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex hp = h(p, r);
                    const Complex hq = h(q, r);
                    h(p, r) = std::conj(jpp) * hp + std::conj(jqp) * hq;
                    h(q, r) = std::conj(jpq) * hp + std::conj(jqq) * hq;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = h(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

Complex poly_eval(std::span<const Complex> coeffs, Complex x) {
    Complex acc = 0.0;
    for (const auto& c : coeffs) acc = acc * x + c;
    return acc;
}

RootSearch find_roots(std::span<const Complex> coeffs) {
    if (coeffs.empty() || coeffs.front() == Complex{0.0}) {
        throw std::invalid_argument("find_roots: leading coefficient must be nonzero");
    }
    if (coeffs.size() > 9) throw std::invalid_argument("find_roots: degree above 8");

    const std::size_t degree = coeffs.size() - 1;
    RootSearch out;
    out.converged = true;
    if (degree == 0) return out;

    std::vector<Complex> monic(coeffs.begin(), coeffs.end());
    const Complex lead = monic.front();
    for (auto& c : monic) c /= lead;

    double radius = 1.0;
    double max_coeff = 0.0;
    for (std::size_t i = 1; i < monic.size(); ++i) radius = std::max(radius, 1.0 + std::abs(monic[i]));
    for (const auto& c : coeffs) max_coeff = std::max(max_coeff, std::abs(c));

    const double offset = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<Complex> z(degree);
    for (std::size_t k = 0; k < degree; ++k) {
        const double angle = 2.0 * std::numbers::pi * double(k) / double(degree) + offset;
        z[k] = std::polar(radius, angle);
    }

    auto residual = [&] {
        double r = 0.0;
        for (const auto& root : z) r = std::max(r, std::abs(poly_eval(coeffs, root)));
        return r;
    };

    int it = 0;
    for (; it < kRootMaxIterations; ++it) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < degree; ++k) {
            Complex denom = 1.0;
            for (std::size_t j = 0; j < degree; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (denom == Complex{0.0}) denom = 1e-300;
            const Complex step = poly_eval(monic, z[k]) / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (max_step < 1e-15) {
            ++it;
            break;
        }
    }

    out.roots = z;
    out.iterations = it;
    out.max_residual = residual();
    out.converged = out.max_residual <= kRootResidualTol * max_coeff;
    return out;
}

std::vector<Complex> poly_roots(std::span<const Complex> coeffs) {
    RootSearch search = find_roots(coeffs);
    if (!search.converged) {
        std::ostringstream msg;
        msg << "Durand-Kerner stopped after " << search.iterations
            << " iterations with residual " << search.max_residual << "; best iterate:";
        for (const auto& r : search.roots) msg << ' ' << r;
        throw Error(ErrorKind::NoConvergence, msg.str());
    }
    return search.roots;
}

SimplexResult minimize_simplex(const Objective& objective, std::span<const double> start,
                               const SimplexOptions& options) {
    const std::size_t d = start.size();
    SimplexResult result;
    result.argmin.assign(start.begin(), start.end());
    if (d == 0) {
        result.value = objective(result.argmin);
        result.evaluations = 1;
        return result;
    }

    std::vector<std::vector<double>> vertex(d + 1, result.argmin);
    for (std::size_t i = 0; i < d; ++i) {
        const double step = start[i] != 0.0 ? options.initial_step * std::max(1.0, std::abs(start[i]))
                                            : options.initial_step;
        vertex[i + 1][i] += step;
    }
    std::vector<double> value(d + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = objective(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    for (std::size_t i = 0; i <= d; ++i) value[i] = eval(vertex[i]);

    std::vector<std::size_t> order(d + 1);
    auto diameter = [&] {
        double diam = 0.0;
        for (std::size_t i = 1; i <= d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                diam = std::max(diam, std::abs(vertex[order[i]][j] - vertex[order[0]][j]));
        return diam;
    };

    std::vector<double> centroid(d), trial(d), trial2(d);
    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        if (diameter() < options.tol || evals >= options.max_evals) break;

        const std::size_t worst = order[d];
        const std::size_t second = order[d - 1];
        const std::size_t best = order[0];
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) centroid[j] += vertex[order[i]][j] / double(d);

        for (std::size_t j = 0; j < d; ++j) trial[j] = centroid[j] + (centroid[j] - vertex[worst][j]);
        const double f_reflect = eval(trial);

        if (f_reflect < value[best]) {
            for (std::size_t j = 0; j < d; ++j) trial2[j] = centroid[j] + 2.0 * (centroid[j] - vertex[worst][j]);
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                vertex[worst] = trial2;
                value[worst] = f_expand;
            } else {
                vertex[worst] = trial;
                value[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < value[second]) {
            vertex[worst] = trial;
            value[worst] = f_reflect;
            continue;
        }
        const bool outside = f_reflect < value[worst];
        for (std::size_t j = 0; j < d; ++j) {
            trial2[j] = outside ? centroid[j] + 0.5 * (trial[j] - centroid[j])
                                : centroid[j] + 0.5 * (vertex[worst][j] - centroid[j]);
        }
        const double f_contract = eval(trial2);
        if (f_contract < (outside ? f_reflect : value[worst])) {
            vertex[worst] = trial2;
            value[worst] = f_contract;
            continue;
        }
        // shrink toward best
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < d; ++j)
                vertex[i][j] = vertex[best][j] + 0.5 * (vertex[i][j] - vertex[best][j]);
            value[i] = eval(vertex[i]);
        }
    }

    result.argmin = vertex[order[0]];
    result.value = value[order[0]];
    result.evaluations = evals;
    return result;
}

}  // namespace nonrecip
