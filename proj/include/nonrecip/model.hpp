// model.hpp: device parameters, drift matrices and frequency-dependent corrections

#pragma once

#include <array>
#include <string_view>

#include "nonrecip/numerics.hpp"

namespace nonrecip {

/// Effective device parameters. Rates are in units of kappa1; couplings are the
/// field-enhanced strengths between cavity i and mechanical oscillator j.
struct DeviceParams {
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double g11 = 0.0;
    double g12 = 0.0;
    double g21 = 0.0;
    double g22 = 0.0;
    double phi = 0.0;
    double nm1 = 0.0;
    double nm2 = 0.0;

    /// Tied couplings: g21 = g11 and g22 = g12, equal cavity decays.
    static DeviceParams symmetric(double kappa, double gamma1, double gamma2, double g_mo1,
                                  double g_mo2, double phi);

    /// Throws InvalidParams naming the first violated invariant.
    void validate() const;

    bool operator==(const DeviceParams&) const = default;
};

struct ReducedDrift {
    CMatrix mprime;                     // 3x3, Hermitian
    std::array<double, 3> lambda_diag;  // (gamma_12, gamma_22, 0)
};

struct FreqQuantities {
    Complex sigma;       // 1 / (gamma1 - 2 i omega)
    Complex q1_plus;     // 2 g11 g21 sigma e^{+i phi}
    Complex q1_minus;    // 2 g11 g21 sigma e^{-i phi}
    double q2 = 0.0;     // 2 g12 g22 / gamma2
    double gamma_11 = 0.0;
    double gamma_21 = 0.0;
    double gamma_12 = 0.0;
    double gamma_22 = 0.0;
    double omega_11 = 0.0;
    double omega_21 = 0.0;
    double kappa1_tot = 0.0;
    double kappa2_tot = 0.0;
};

/// Full 4-mode drift matrix for mu = (a1^dag, a2^dag, b1, b2).
CMatrix drift_full(const DeviceParams& p);

/// Reduced 3-mode drift after eliminating the strongly damped oscillator.
/// Throws UnequalKappas unless kappa1 == kappa2.
ReducedDrift drift_reduced(const DeviceParams& p);

FreqQuantities freq_quantities(const DeviceParams& p, double omega);

/// Bose occupation 1/(e^x - 1) for x = hbar omega_m / k_B T. Throws InvalidRatio for x <= 0.
double thermal_occupation(double x);

/// Named access to DeviceParams fields for scans. Besides the field names,
/// "g_mo1" addresses the tied pair g11 = g21 and "g_mo2" the pair g12 = g22.
/// Unknown names throw InvalidAxis.
double get_param(const DeviceParams& p, std::string_view name);
void set_param(DeviceParams& p, std::string_view name, double value);
bool is_param_name(std::string_view name);

}  // namespace nonrecip
