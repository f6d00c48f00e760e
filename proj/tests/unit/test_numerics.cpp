#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nonrecip/error.hpp"
#include "nonrecip/numerics.hpp"
#include "oracles.hpp"

using namespace nonrecip;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected nonrecip::Error");
    return ErrorKind::ParseError;
}

double inf_norm(const CMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

}  // namespace

TEST_CASE("lu_solve examples") {
    std::mt19937_64 rng(11);
    const CMatrix b = oracle::random_matrix(rng, 3);
    CHECK(lu_solve(CMatrix::identity(3), b) == b);

    const CMatrix a(2, 2, {2.0, 0.0, 0.0, 4.0});
    const CMatrix x = lu_solve(a, CMatrix(2, 1, {2.0, 8.0}));
    CHECK(x(0, 0) == Complex(1.0, 0.0));
    CHECK(x(1, 0) == Complex(2.0, 0.0));
}

TEST_CASE("lu_solve residual on random well-conditioned systems") {
    std::mt19937_64 rng(12);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const CMatrix a = oracle::random_well_conditioned(rng, 4);
        CMatrix b(4, 2);
        for (auto& v : b.data()) v = oracle::random_complex(rng);
        const CMatrix x = lu_solve(a, b);
        worst = std::max(worst, inf_norm(a * x - b) / inf_norm(b));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("lu_solve agrees with Cramer's rule on the Leibniz determinant") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const CMatrix a = oracle::random_well_conditioned(rng, 4);
        CMatrix b(4, 1);
        for (auto& v : b.data()) v = oracle::random_complex(rng);
        const CMatrix x = lu_solve(a, b);
        const Complex det = oracle::determinant(a);
        for (std::size_t k = 0; k < 4; ++k) {
            CMatrix ak = a;
            for (std::size_t i = 0; i < 4; ++i) ak(i, k) = b(i, 0);
            CHECK(std::abs(x(k, 0) - oracle::determinant(ak) / det) <= 1e-12 * (1.0 + std::abs(x(k, 0))));
        }
    }
}

TEST_CASE("lu_solve rejects singular and non-square input") {
    const CMatrix singular(2, 2, {1.0, 2.0, 2.0, 4.0});
    CHECK(kind_of([&] { lu_solve(singular, CMatrix::identity(2)); }) == ErrorKind::SingularMatrix);
    CHECK(kind_of([&] { inverse(CMatrix(2, 2)); }) == ErrorKind::SingularMatrix);
    // pivot below 1e-12 relative to the largest entry
    const CMatrix tiny(2, 2, {1.0, 0.0, 0.0, 1e-13});
    CHECK(kind_of([&] { inverse(tiny); }) == ErrorKind::SingularMatrix);
    const CMatrix small(2, 2, {1.0, 0.0, 0.0, 1e-11});
    CHECK(std::abs(inverse(small)(1, 1) - 1e11) <= 1e-3);
}

TEST_CASE("inverse examples and round trip") {
    CHECK(inverse(CMatrix::identity(4)) == CMatrix::identity(4));
    const CMatrix d(2, 2, {2.0, 0.0, 0.0, Complex(0.0, -1.0)});
    const CMatrix inv = inverse(d);
    CHECK(inv(0, 0) == Complex(0.5, 0.0));
    CHECK(std::abs(inv(1, 1) - Complex(0.0, 1.0)) == 0.0);
    CHECK(inv(0, 1) == Complex(0.0, 0.0));

    std::mt19937_64 rng(14);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const CMatrix a = oracle::random_well_conditioned(rng, 4);
        worst = std::max(worst, inf_norm(a * inverse(a) - CMatrix::identity(4)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("hermitian_eigenvalues examples") {
    const std::vector<double> diag_vals{0.5, 0.5, 0.1, 8.0};
    const CMatrix d = CMatrix::diagonal(std::vector<Complex>(diag_vals.begin(), diag_vals.end()));
    const std::vector<double> e = hermitian_eigenvalues(d);
    REQUIRE(e.size() == 4);
    CHECK(e[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(e[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e[2] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e[3] == doctest::Approx(8.0).epsilon(1e-14));

    const CMatrix pauli(2, 2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
    const std::vector<double> p = hermitian_eigenvalues(pauli);
    CHECK(std::abs(p[0] + 1.0) <= 1e-14);
    CHECK(std::abs(p[1] - 1.0) <= 1e-14);
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
    CMatrix a(2, 2, {1.0, 2.0, 2.0 + 1e-11, 1.0});
    CHECK(kind_of([&] { hermitian_eigenvalues(a); }) == ErrorKind::NotHermitian);
    a(1, 0) = 2.0 + 5e-13;
    CHECK_NOTHROW(hermitian_eigenvalues(a));
}

TEST_CASE("hermitian_eigenvalues trace, determinant and unitary invariance") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 2000; ++trial) {
        const CMatrix a = oracle::random_hermitian(rng, 4);
        const std::vector<double> e = hermitian_eigenvalues(a);
        CHECK(std::is_sorted(e.begin(), e.end()));

        double trace = 0.0;
        for (std::size_t i = 0; i < 4; ++i) trace += a(i, i).real();
        double sum = 0.0;
        double product = 1.0;
        for (double v : e) {
            sum += v;
            product *= v;
        }
        CHECK(std::abs(sum - trace) <= 1e-10);
        CHECK(std::abs(product - oracle::determinant(a).real()) <= 1e-9);

        const CMatrix u = oracle::random_unitary(rng, 4);
        CMatrix b = adjoint(u) * a * u;
        // symmetrize rounding so the precondition holds exactly
        b = 0.5 * (b + adjoint(b));
        const std::vector<double> f = hermitian_eigenvalues(b);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(e[i] - f[i]) <= 1e-8);
    }
}

TEST_CASE("hermitian_eigenvalues smallest value matches determinant bisection") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix a = oracle::random_hermitian(rng, 4);
        CHECK(std::abs(hermitian_eigenvalues(a)[0] - oracle::smallest_eigenvalue_oracle(a)) <= 1e-9);
    }
}

TEST_CASE("poly_roots examples") {
    auto sorted = [](std::vector<Complex> r) {
        std::sort(r.begin(), r.end(), [](Complex x, Complex y) {
            return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
        });
        return r;
    };
    const std::vector<Complex> real_pair = sorted(poly_roots(std::vector<Complex>{1.0, 0.0, -1.0}));
    CHECK(std::abs(real_pair[0] + 1.0) <= 1e-12);
    CHECK(std::abs(real_pair[1] - 1.0) <= 1e-12);

    const std::vector<Complex> imag_pair = sorted(poly_roots(std::vector<Complex>{1.0, 0.0, 1.0}));
    CHECK(std::abs(imag_pair[0] - Complex(0.0, -1.0)) <= 1e-12);
    CHECK(std::abs(imag_pair[1] - Complex(0.0, 1.0)) <= 1e-12);
}

TEST_CASE("poly_roots construct-then-solve round trip") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Complex> roots(4);
        for (auto& r : roots) r = oracle::random_complex(rng, 2.0);
        const std::vector<Complex> coeffs = oracle::expand_roots(roots);
        const std::vector<Complex> found = poly_roots(coeffs);
        REQUIRE(found.size() == 4);
        double max_coeff = 0.0;
        for (Complex c : coeffs) max_coeff = std::max(max_coeff, std::abs(c));
        for (Complex r : roots) {
            double nearest = 1e300;
            for (Complex f : found) nearest = std::min(nearest, std::abs(f - r));
            CHECK(nearest <= 1e-9);
        }
        for (Complex f : found) CHECK(std::abs(poly_eval(coeffs, f)) <= 1e-9 * max_coeff);
    }
}

TEST_CASE("poly_roots is deterministic and reports non-convergence") {
    const std::vector<Complex> c{1.0, Complex(0.3, -0.2), -2.0, 0.5, Complex(0.0, 1.0)};
    CHECK(poly_roots(c) == poly_roots(c));
    CHECK_THROWS_AS(poly_roots(std::vector<Complex>{0.0, 1.0}), std::invalid_argument);

    // a root of multiplicity 8 converges only linearly and cannot reach the bound
    std::vector<Complex> repeated = oracle::expand_roots(std::vector<Complex>(8, Complex(0.3, 0.1)));
    const RootSearch search = find_roots(repeated);
    if (!search.converged) {
        CHECK(kind_of([&] { poly_roots(repeated); }) == ErrorKind::NoConvergence);
    }
}

TEST_CASE("poly_eval uses highest-degree-first order") {
    const std::vector<Complex> c{2.0, -3.0, 1.0};  // 2x^2 - 3x + 1
    CHECK(poly_eval(c, 2.0) == Complex(3.0, 0.0));
    CHECK(poly_eval(c, Complex(0.0, 1.0)) == Complex(-1.0, -3.0));
}

TEST_CASE("minimize_simplex examples") {
    const std::vector<double> c{0.3, -1.2, 2.5};
    const SimplexResult q = minimize_simplex(
        [&](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
            return s;
        },
        std::vector<double>{0.0, 0.0, 0.0});
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(q.argmin[i] - c[i]) <= 1e-6);

    SimplexOptions opts;
    opts.max_evals = 10000;
    const SimplexResult r = minimize_simplex(
        [](std::span<const double> x) {
            return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
        },
        std::vector<double>{-1.2, 1.0}, opts);
    CHECK(std::abs(r.argmin[0] - 1.0) <= 1e-3);
    CHECK(std::abs(r.argmin[1] - 1.0) <= 1e-3);
    CHECK(r.evaluations <= opts.max_evals);
}

TEST_CASE("minimize_simplex respects a penalty wall") {
    // unconstrained minimum at x = 2 lies beyond the wall at x = 1
    const double tol = 1e-6;
    auto penalty = [](double x) { return x > 1.0 ? 1e3 * (x - 1.0) : 0.0; };
    const SimplexResult r = minimize_simplex(
        [&](std::span<const double> x) { return (x[0] - 2.0) * (x[0] - 2.0) + penalty(x[0]); },
        std::vector<double>{0.0});
    CHECK(penalty(r.argmin[0]) < tol);
    CHECK(r.argmin[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("minimize_simplex is deterministic and honours the budget") {
    auto f = [](std::span<const double> x) { return std::cos(3.0 * x[0]) + x[1] * x[1] + 0.1 * x[0] * x[0]; };
    SimplexOptions opts;
    opts.max_evals = 37;
    const SimplexResult a = minimize_simplex(f, std::vector<double>{0.4, 0.7}, opts);
    const SimplexResult b = minimize_simplex(f, std::vector<double>{0.4, 0.7}, opts);
    CHECK(a.argmin == b.argmin);
    CHECK(a.value == b.value);
    CHECK(a.evaluations <= 37);
}
