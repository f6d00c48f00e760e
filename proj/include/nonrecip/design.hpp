// design.hpp: isolation solutions, amplifier working points, gain optimization

#pragma once

#include <array>
#include <string>
#include <vector>

#include "nonrecip/model.hpp"

namespace nonrecip {

struct IsolationSolution {
    double phi = 0.0;
    double omega = 0.0;
    double residual = 0.0;  // |Q1- + Q2| at (phi, omega)
    bool feasible = false;
};

/// Closed-form zeros of the backward numerator Q1- + Q2:
/// cos(phi) = -gamma1 g12 g22 / (gamma2 g11 g21), omega = gamma1 tan(phi) / 2.
/// The pair is returned as (+phi, omega) then (-phi, -omega); p.phi is ignored.
/// Throws NoCoherentPath when g11 g21 == 0.
std::array<IsolationSolution, 2> solve_isolation(const DeviceParams& p);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class PointRule {
    lossless_reverse,  // reverse transmission crosses 0 dB with forward gain
    peak_gain,         // maximum forward gain on the scan
};

struct WorkingPoint {
    double omega = 0.0;
    double gain_db = 0.0;     // 10 log10 |S'21|^2
    double reverse_db = 0.0;  // 10 log10 |S'12|^2
    double plateau_halfwidth = 0.0;  // half-length of the run around omega with |reverse_db| <= 0.25
    double stable_margin = 0.0;
    PointRule rule = PointRule::peak_gain;
};

inline constexpr double kPlateauDb = 0.25;

/// Directional-amplifier working point of the reduced model in `range`: the
/// frequency where the reverse transmission is lossless (0 dB) and the forward
/// gain is largest among such crossings. Falls back to the forward-gain peak
/// (golden-section refined to 1e-8) when no crossing has forward gain.
/// Throws Unstable when the drift margin is <= 0.
WorkingPoint find_amplifier_point(const DeviceParams& p, Interval range, int n_scan = 2001);

/// Forward-gain maximum on the scan, refined by golden section.
WorkingPoint peak_gain_point(const DeviceParams& p, Interval range, int n_scan = 201);

struct ParamBound {
    std::string param;  // g11 g12 g21 g22 g_mo1 g_mo2 phi gamma1 gamma2
    Interval range;
};

struct OptimizeOptions {
    int n_scan = 201;
    int seed_levels = 3;
    int starts = 4;
    int workers = 1;
};

struct OptimizeResult {
    DeviceParams params;
    WorkingPoint point;
    int evaluations = 0;
};

/// Maximizes the peak forward gain over `omega_range` subject to a drift margin
/// of at least `epsilon_margin`. Grid seeds over the bounds, then Nelder-Mead
/// from the best feasible seeds. Parameters without a bound keep `base` values.
/// Throws NoFeasiblePoint when no seed meets the margin.
OptimizeResult optimize_gain(const DeviceParams& base, const std::vector<ParamBound>& bounds,
                             double epsilon_margin, Interval omega_range,
                             const OptimizeOptions& options = {});

}  // namespace nonrecip
