// noise.hpp: output spectrum at cavity 2 and added noise referred to the input

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonrecip/model.hpp"

namespace nonrecip {

/// Quanta units throughout; vacuum contributes 1/2.
struct NoiseResult {
    double omega = 0.0;
    double s_out = 0.0;  // output spectral density of cavity 2
    double gain = 0.0;   // |S'21|^2
    double added = 0.0;  // s_out / gain - 1/2

    // Inputs of the spectrum formula, kept for auditing.
    double t21 = 0.0;       // |S'21|^2
    double t22 = 0.0;       // |S'22|^2
    double t23 = 0.0;       // |S'23|^2, weight nm1 + 1/2
    double bath_sq = 0.0;   // |L'21 + L'22|^2, weight nm2 + 1/2
};

inline constexpr double kMinGain = 1e-12;

/// s_out = (|S'21|^2 + |S'22|^2)/2 + |S'23|^2 (nm1 + 1/2) + |L'21 + L'22|^2 (nm2 + 1/2).
/// The cross terms L'2i L'2j* sum to a modulus square because the eliminated
/// oscillator feeds both cavities through the same bath operator.
/// Throws ZeroGain when |S'21|^2 < 1e-12, UnequalKappas for kappa1 != kappa2.
NoiseResult output_spectrum_cavity2(const DeviceParams& p, double omega);

struct NoiseSample {
    double omega = 0.0;
    std::optional<NoiseResult> result;
    std::string flag;  // empty, or the error kind that prevented evaluation
};

/// Per-frequency results in input order; ZeroGain and poles are flagged, not thrown.
std::vector<NoiseSample> noise_sweep(const DeviceParams& p, std::span<const double> omegas,
                                     int workers = 1);

}  // namespace nonrecip
