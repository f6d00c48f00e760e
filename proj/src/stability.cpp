#include "nonrecip/stability.hpp"

#include <cmath>
#include <sstream>

#include "nonrecip/error.hpp"
#include "nonrecip/parallel.hpp"

namespace nonrecip {

namespace {

constexpr double kBisectWidth = 1e-6;
constexpr double kBisectMargin = 1e-6;
constexpr int kBisectMaxIter = 200;

std::array<double, 3> printed_block(const DeviceParams& p) {
    const double kappa = p.kappa1;
    const double g1 = p.g11 * p.g11 + p.g21 * p.g21;  // j = 1
    const double g2 = p.g12 * p.g12 + p.g22 * p.g22;  // j = 2
    const double first = 4.0 * (g1 + g2) - p.gamma1 * p.gamma2 - 2.0 * p.gamma2 * kappa - 4.0 * kappa * kappa;
    const double second = 4.0 * g1 * (p.gamma2 + kappa) + 4.0 * g2 * (p.gamma1 + kappa) -
                          kappa * p.gamma2 * (2.0 * p.gamma1 + kappa);
    const double cross = p.g12 * p.g12 * p.g21 * p.g21 + p.g11 * p.g11 * p.g22 * p.g22;
    const double third = cross / (p.gamma1 * p.gamma2 * kappa * kappa) - g1 / (4.0 * p.gamma1 * kappa) -
                         g2 / (4.0 * p.gamma2 * kappa) + 1.0 / 16.0;
    return {first, second, third};
}

double margin_of(const DeviceParams& p) { return hermitian_eigenvalues(drift_full(p)).front(); }

}  // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::marginal: return "marginal";
        case Verdict::unstable: return "unstable";
    }
    return "unknown";
}

StabilityReport stability_report(const DeviceParams& p) {
    StabilityReport r;
    r.eigenvalues = hermitian_eigenvalues(drift_full(p));
    r.margin = r.eigenvalues.front();
    if (std::abs(r.margin) <= kMarginalBand) {
        r.verdict = Verdict::marginal;
    } else {
        r.verdict = r.margin > 0.0 ? Verdict::stable : Verdict::unstable;
    }
    r.printed_values = printed_block(p);
    bool all_hold = true;
    for (std::size_t i = 0; i < 3; ++i) {
        r.printed_conditions[i] = r.printed_values[i] > 0.0;
        all_hold = all_hold && r.printed_conditions[i];
    }
    r.discrepancy = all_hold != (r.verdict == Verdict::stable);
    return r;
}

std::vector<double> char_poly(const CMatrix& m) {
    if (!m.square()) throw std::invalid_argument("char_poly: matrix is not square");
    const double asym = max_abs(m - adjoint(m));
    if (asym > 1e-12) {
        std::ostringstream msg;
        msg << "max|M - M^dag| = " << asym;
        throw Error(ErrorKind::NotHermitian, msg.str());
    }

    const std::size_t n = m.rows();
    std::vector<Complex> c(n + 1);  // c[k] multiplies lambda^k
    c[n] = 1.0;
    CMatrix aux(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        aux = m * aux;
        for (std::size_t i = 0; i < n; ++i) aux(i, i) += c[n - k + 1];
        const CMatrix product = m * aux;
        Complex trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += product(i, i);
        c[n - k] = -trace / double(k);
    }

    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const Complex coeff = c[n - k];
        if (std::abs(coeff.imag()) > 1e-10 * std::max(1.0, std::abs(coeff.real()))) {
            std::ostringstream msg;
            msg << "imaginary residue " << coeff.imag() << " in coefficient " << k;
            throw Error(ErrorKind::NotHermitian, msg.str());
        }
        out[k] = coeff.real();
    }
    return out;
}

double ScanAxis::value(int index) const {
    if (n <= 1) return min;
    return min + (max - min) * double(index) / double(n - 1);
}

StabilityScan stability_boundary(const DeviceParams& base, const ScanAxis& axis1,
                                 const ScanAxis& axis2, int workers) {
    for (const ScanAxis* axis : {&axis1, &axis2}) {
        if (!is_param_name(axis->param)) {
            throw Error(ErrorKind::InvalidAxis, "unknown parameter '" + axis->param + "'");
        }
        if (axis->n < 2) throw Error(ErrorKind::InvalidAxis, axis->param + ": n must be >= 2");
    }

    StabilityScan scan{axis1, axis2, {}, {}, {}};
    const auto cells = static_cast<std::size_t>(axis1.n * axis2.n);
    scan.margins.resize(cells);
    scan.verdicts.resize(cells);

    auto at = [&](double x1, double x2) {
        DeviceParams p = base;
        set_param(p, axis1.param, x1);
        set_param(p, axis2.param, x2);
        return p;
    };

    parallel_for(cells, workers, [&](std::size_t idx) {
        const int i1 = static_cast<int>(idx) / axis2.n;
        const int i2 = static_cast<int>(idx) % axis2.n;
        const StabilityReport r = stability_report(at(axis1.value(i1), axis2.value(i2)));
        scan.margins[idx] = r.margin;
        scan.verdicts[idx] = r.verdict;
    });

    const double margin_tol = kBisectMargin * base.kappa1;
    // Bisects the margin along the segment between two grid nodes; `along_first`
    // selects which coordinate moves.
    auto refine = [&](double x1, double x2, double lo, double hi, double m_lo, bool along_first) {
        auto point = [&](double s) { return along_first ? at(s, x2) : at(x1, s); };
        const bool lo_stable = m_lo > 0.0;
        double mid = 0.5 * (lo + hi);
        double m_mid = margin_of(point(mid));
        for (int it = 0; it < kBisectMaxIter; ++it) {
            if (std::abs(hi - lo) <= kBisectWidth && std::abs(m_mid) <= margin_tol) break;
            if ((m_mid > 0.0) == lo_stable) {
                lo = mid;
            } else {
                hi = mid;
            }
            mid = 0.5 * (lo + hi);
            m_mid = margin_of(point(mid));
        }
        return along_first ? BoundaryPoint{mid, x2, m_mid} : BoundaryPoint{x1, mid, m_mid};
    };

    for (int i1 = 0; i1 < axis1.n; ++i1) {
        for (int i2 = 0; i2 + 1 < axis2.n; ++i2) {
            const double a = scan.margin_at(i1, i2);
            const double b = scan.margin_at(i1, i2 + 1);
            if ((a > 0.0) != (b > 0.0)) {
                scan.boundary.push_back(refine(axis1.value(i1), 0.0, axis2.value(i2), axis2.value(i2 + 1), a, false));
            }
        }
    }
    for (int i2 = 0; i2 < axis2.n; ++i2) {
        for (int i1 = 0; i1 + 1 < axis1.n; ++i1) {
            const double a = scan.margin_at(i1, i2);
            const double b = scan.margin_at(i1 + 1, i2);
            if ((a > 0.0) != (b > 0.0)) {
                scan.boundary.push_back(refine(0.0, axis2.value(i2), axis1.value(i1), axis1.value(i1 + 1), a, true));
            }
        }
    }
    return scan;
}

}  // namespace nonrecip
