// scattering.hpp: input-output scattering of the full and reduced models

#pragma once

#include <optional>

#include "nonrecip/model.hpp"
#include "nonrecip/numerics.hpp"

namespace nonrecip {

/// Scattering at one frequency. Matrices are port-labelled for the annihilation
/// fields: s(i, j) is the amplitude from input port j into output port i, so
/// s(1, 0) is the forward cavity-1 -> cavity-2 element S21 and s(0, 1) is S12.
/// The linear response is solved for the conjugated operator vector
/// (a1^dag, a2^dag, b1[, b2]) and conjugated back at the mirrored frequency.
struct ScatteringResult {
    double omega = 0.0;
    CMatrix s;                // 4x4 full or 3x3 reduced
    std::optional<CMatrix> l; // reduced only: coupling to the eliminated bath
    RMatrix t;                // |s_ij|^2
    RMatrix t_db;             // 10 log10 t_ij, clamped at kDbFloor
};

struct AnalyticTransmission {
    Complex s12;
    Complex s21;
    Complex d;
    Complex numerator12;  // kappa (Q1- + Q2)
    Complex numerator21;  // kappa (Q1+ + Q2)
};

inline constexpr double kDbFloor = -300.0;

/// Pivots (or |D|) below this fraction of the largest entry signal a pole.
inline constexpr double kPoleTol = 1e-8;

/// S = I - sqrt(Gamma) (M - i w I)^-1 sqrt(Gamma), Gamma = diag(kappa1, kappa2, gamma1, gamma2).
/// Throws PoleAtFrequency when the resolvent is singular.
ScatteringResult smatrix_full(const DeviceParams& p, double omega);

/// S' = sqrt(Gamma') (M' - i w I)^-1 sqrt(Gamma') - I and
/// L' = sqrt(Gamma') (M' - i w I)^-1 sqrt(Lambda). Requires kappa1 == kappa2.
ScatteringResult smatrix_reduced(const DeviceParams& p, double omega);

/// Closed-form cavity-to-cavity transmission of the reduced model.
AnalyticTransmission analytic_transmission(const DeviceParams& p, double omega);

/// 10 log10(t); 0 (or anything below the floor) maps to -300. Throws NegativeProbability.
double to_db(double t);

}  // namespace nonrecip
