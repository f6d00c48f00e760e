#include "nonrecip/scattering.hpp"

#include <cmath>
#include <sstream>

#include "nonrecip/error.hpp"

namespace nonrecip {

namespace {

constexpr Complex kI{0.0, 1.0};

// (drift - i*w*I)^-1 * rhs, with singular resolvents reported as poles.
CMatrix resolvent_solve(const CMatrix& drift, double w, const CMatrix& rhs) {
    CMatrix a = drift;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= kI * w;
    try {
        return detail::lu_solve(a, rhs, kPoleTol);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingularMatrix) throw;
        std::ostringstream msg;
        msg << "resolvent singular at omega = " << -w << " (" << e.what() << ")";
        throw Error(ErrorKind::PoleAtFrequency, msg.str());
    }
}

CMatrix sqrt_diag(std::initializer_list<double> rates) {
    CMatrix m(rates.size(), rates.size());
    std::size_t i = 0;
    for (double r : rates) {
        m(i, i) = std::sqrt(r);
        ++i;
    }
    return m;
}

ScatteringResult finish(double omega, CMatrix s, std::optional<CMatrix> l) {
    ScatteringResult r;
    r.omega = omega;
    r.t = RMatrix(s.rows(), s.cols());
    r.t_db = RMatrix(s.rows(), s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            r.t(i, j) = std::norm(s(i, j));
            r.t_db(i, j) = to_db(r.t(i, j));
        }
    }
    r.s = std::move(s);
    r.l = std::move(l);
    return r;
}

}  // namespace

ScatteringResult smatrix_full(const DeviceParams& p, double omega) {
    const CMatrix m = drift_full(p);
    const CMatrix root = sqrt_diag({p.kappa1, p.kappa2, p.gamma1, p.gamma2});
    // conjugated-operator response at -omega, conjugated back onto the ports
    const CMatrix printed = CMatrix::identity(4) - root * resolvent_solve(m, -omega, root);
    return finish(omega, conj(printed), std::nullopt);
}

ScatteringResult smatrix_reduced(const DeviceParams& p, double omega) {
    const ReducedDrift reduced = drift_reduced(p);
    const CMatrix root = sqrt_diag({p.kappa1, p.kappa1, p.gamma1});
    const CMatrix bath = sqrt_diag({reduced.lambda_diag[0], reduced.lambda_diag[1], reduced.lambda_diag[2]});

    CMatrix rhs(3, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        rhs(i, i) = root(i, i);
        rhs(i, i + 3) = bath(i, i);
    }
    const CMatrix solved = resolvent_solve(reduced.mprime, -omega, rhs);

    CMatrix s(3, 3);
    CMatrix l(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const Complex printed_s = root(i, i) * solved(i, j) - (i == j ? 1.0 : 0.0);
            const Complex printed_l = root(i, i) * solved(i, j + 3);
            s(i, j) = std::conj(printed_s);
            l(i, j) = std::conj(printed_l);
        }
    }
    return finish(omega, std::move(s), std::move(l));
}

AnalyticTransmission analytic_transmission(const DeviceParams& p, double omega) {
    p.validate();
    if (p.kappa1 != p.kappa2) {
        throw Error(ErrorKind::UnequalKappas, "closed-form transmission needs kappa1 == kappa2");
    }
    const FreqQuantities f = freq_quantities(p, omega);
    const double kappa = p.kappa1;

    AnalyticTransmission out;
    const Complex forward = f.q1_plus + f.q2;
    const Complex backward = f.q1_minus + f.q2;
    out.d = (f.kappa1_tot / 2.0 - kI * (omega + f.omega_11)) *
                (f.kappa2_tot / 2.0 - kI * (omega + f.omega_21)) -
            forward * backward;
    out.numerator12 = kappa * backward;
    out.numerator21 = kappa * forward;
    if (std::abs(out.d) < kPoleTol) {
        std::ostringstream msg;
        msg << "|D| = " << std::abs(out.d) << " at omega = " << omega;
        throw Error(ErrorKind::PoleAtFrequency, msg.str());
    }
    out.s12 = out.numerator12 / out.d;
    out.s21 = out.numerator21 / out.d;
    return out;
}

double to_db(double t) {
    if (t < 0.0 || std::isnan(t)) {
        throw Error(ErrorKind::NegativeProbability, "transmission " + std::to_string(t) + " < 0");
    }
    if (t == 0.0) return kDbFloor;
    return std::max(kDbFloor, 10.0 * std::log10(t));
}

}  // namespace nonrecip
