#include "nonrecip/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "nonrecip/error.hpp"

namespace nonrecip {

namespace {

constexpr Complex kI{0.0, 1.0};

void require(bool ok, const char* invariant) {
    if (!ok) throw Error(ErrorKind::InvalidParams, invariant);
}

void require_equal_kappas(const DeviceParams& p) {
    if (p.kappa1 != p.kappa2) {
        std::ostringstream msg;
        msg << "reduced model needs kappa1 == kappa2 (got " << p.kappa1 << ", " << p.kappa2 << ")";
        throw Error(ErrorKind::UnequalKappas, msg.str());
    }
}

}  // namespace

DeviceParams DeviceParams::symmetric(double kappa, double gamma1, double gamma2, double g_mo1,
                                     double g_mo2, double phi) {
    DeviceParams p;
    p.kappa1 = kappa;
    p.kappa2 = kappa;
    p.gamma1 = gamma1;
    p.gamma2 = gamma2;
    p.g11 = g_mo1;
    p.g21 = g_mo1;
    p.g12 = g_mo2;
    p.g22 = g_mo2;
    p.phi = phi;
    return p;
}

void DeviceParams::validate() const {
    for (double v : {kappa1, kappa2, gamma1, gamma2, g11, g12, g21, g22, phi, nm1, nm2}) {
        require(std::isfinite(v), "all parameters finite");
    }
    require(kappa1 > 0.0, "kappa1 > 0");
    require(kappa2 > 0.0, "kappa2 > 0");
    require(gamma1 > 0.0, "gamma1 > 0");
    require(gamma2 > 0.0, "gamma2 > 0");
    require(g11 >= 0.0, "g11 >= 0");
    require(g12 >= 0.0, "g12 >= 0");
    require(g21 >= 0.0, "g21 >= 0");
    require(g22 >= 0.0, "g22 >= 0");
    require(nm1 >= 0.0, "nm1 >= 0");
    require(nm2 >= 0.0, "nm2 >= 0");
}

CMatrix drift_full(const DeviceParams& p) {
    p.validate();
    CMatrix m(4, 4);
    m(0, 0) = p.kappa1 / 2.0;
    m(1, 1) = p.kappa2 / 2.0;
    m(2, 2) = p.gamma1 / 2.0;
    m(3, 3) = p.gamma2 / 2.0;
    m(0, 2) = -kI * p.g11;
    m(0, 3) = -kI * p.g12;
    m(1, 2) = -kI * p.g21 * std::exp(-kI * p.phi);
    m(1, 3) = -kI * p.g22;
    // lower triangle from the same evaluations so M == M^dag exactly
    m(2, 0) = std::conj(m(0, 2));
    m(3, 0) = std::conj(m(0, 3));
    m(2, 1) = std::conj(m(1, 2));
    m(3, 1) = std::conj(m(1, 3));
    return m;
}

ReducedDrift drift_reduced(const DeviceParams& p) {
    p.validate();
    require_equal_kappas(p);
    const double kappa = p.kappa1;
    const double q2 = 2.0 * p.g12 * p.g22 / p.gamma2;
    const double gamma_12 = 4.0 * p.g12 * p.g12 / p.gamma2;
    const double gamma_22 = 4.0 * p.g22 * p.g22 / p.gamma2;

    ReducedDrift out{CMatrix(3, 3), {gamma_12, gamma_22, 0.0}};
    CMatrix& m = out.mprime;
    m(0, 0) = (kappa - gamma_12) / 2.0;
    m(1, 1) = (kappa - gamma_22) / 2.0;
    m(2, 2) = p.gamma1 / 2.0;
    m(0, 1) = -q2;
    m(0, 2) = -kI * p.g11;
    m(1, 2) = -kI * p.g21 * std::exp(-kI * p.phi);
    m(1, 0) = std::conj(m(0, 1));
    m(2, 0) = std::conj(m(0, 2));
    m(2, 1) = std::conj(m(1, 2));
    return out;
}

FreqQuantities freq_quantities(const DeviceParams& p, double omega) {
    p.validate();
    if (!std::isfinite(omega)) throw Error(ErrorKind::InvalidParams, "omega finite");

    FreqQuantities f;
    f.sigma = 1.0 / Complex(p.gamma1, -2.0 * omega);
    const double sigma_sq = std::norm(f.sigma);
    const double coherent = 2.0 * p.g11 * p.g21;
    f.q1_plus = coherent * f.sigma * std::exp(kI * p.phi);
    f.q1_minus = coherent * f.sigma * std::exp(-kI * p.phi);
    f.q2 = 2.0 * p.g12 * p.g22 / p.gamma2;
    f.gamma_11 = 4.0 * p.g11 * p.g11 * sigma_sq * p.gamma1;
    f.gamma_21 = 4.0 * p.g21 * p.g21 * sigma_sq * p.gamma1;
    f.gamma_12 = 4.0 * p.g12 * p.g12 / p.gamma2;
    f.gamma_22 = 4.0 * p.g22 * p.g22 / p.gamma2;
    f.omega_11 = 4.0 * p.g11 * p.g11 * sigma_sq * omega;
    f.omega_21 = 4.0 * p.g21 * p.g21 * sigma_sq * omega;
    f.kappa1_tot = p.kappa1 - f.gamma_11 - f.gamma_12;
    f.kappa2_tot = p.kappa2 - f.gamma_21 - f.gamma_22;
    return f;
}

double thermal_occupation(double x) {
    if (!(x > 0.0)) {
        throw Error(ErrorKind::InvalidRatio, "hbar*omega_m/(k_B*T) must be > 0, got " + std::to_string(x));
    }
    return 1.0 / std::expm1(x);
}

}  // namespace nonrecip

namespace nonrecip {

namespace {

double* field(DeviceParams& p, std::string_view name) {
    if (name == "kappa1") return &p.kappa1;
    if (name == "kappa2") return &p.kappa2;
    if (name == "gamma1") return &p.gamma1;
    if (name == "gamma2") return &p.gamma2;
    if (name == "g11") return &p.g11;
    if (name == "g12") return &p.g12;
    if (name == "g21") return &p.g21;
    if (name == "g22") return &p.g22;
    if (name == "phi") return &p.phi;
    if (name == "nm1") return &p.nm1;
    if (name == "nm2") return &p.nm2;
    return nullptr;
}

[[noreturn]] void unknown_param(std::string_view name) {
    throw Error(ErrorKind::InvalidAxis, "unknown parameter '" + std::string(name) + "'");
}

}  // namespace

bool is_param_name(std::string_view name) {
    DeviceParams probe;
    return name == "g_mo1" || name == "g_mo2" || field(probe, name) != nullptr;
}

double get_param(const DeviceParams& p, std::string_view name) {
    if (name == "g_mo1") return p.g11;
    if (name == "g_mo2") return p.g12;
    DeviceParams copy = p;
    if (double* f = field(copy, name)) return *f;
    unknown_param(name);
}

void set_param(DeviceParams& p, std::string_view name, double value) {
    if (name == "g_mo1") {
        p.g11 = p.g21 = value;
        return;
    }
    if (name == "g_mo2") {
        p.g12 = p.g22 = value;
        return;
    }
    if (double* f = field(p, name)) {
        *f = value;
        return;
    }
    unknown_param(name);
}

}  // namespace nonrecip
