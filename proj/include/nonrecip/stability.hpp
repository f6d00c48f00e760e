// stability.hpp: eigenvalue stability margin, printed Routh-Hurwitz block, boundary scans

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "nonrecip/model.hpp"

namespace nonrecip {

enum class Verdict { stable, marginal, unstable };

std::string_view to_string(Verdict v) noexcept;

inline constexpr double kMarginalBand = 1e-10;

/// The drift dynamics mu' = -M mu are asymptotically stable iff every
/// eigenvalue of the Hermitian M is positive; margin is the smallest one.
///
/// The three published Routh-Hurwitz inequalities are evaluated verbatim for
/// comparison only (kappa = kappa1). In the second inequality gamma_{2/j} is
/// read as the other oscillator's damping, gamma_{3-j}.
struct StabilityReport {
    double margin = 0.0;
    std::vector<double> eigenvalues;      // ascending
    std::array<double, 3> printed_values{};  // left-hand sides
    std::array<bool, 3> printed_conditions{};
    Verdict verdict = Verdict::stable;
    /// Set when the printed block and the eigenvalue verdict disagree.
    bool discrepancy = false;

    static constexpr std::string_view condition2_reading = "gamma_{2/j} read as gamma_{3-j}";
};

StabilityReport stability_report(const DeviceParams& p);

/// Coefficients of det(lambda I - M), highest degree first (Faddeev-LeVerrier).
/// Throws NotHermitian.
std::vector<double> char_poly(const CMatrix& m);

struct ScanAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int n = 2;

    double value(int index) const;
};

struct BoundaryPoint {
    double x1 = 0.0;
    double x2 = 0.0;
    double margin = 0.0;
};

struct StabilityScan {
    ScanAxis axis1;
    ScanAxis axis2;
    std::vector<double> margins;   // row-major, axis1 major
    std::vector<Verdict> verdicts;
    std::vector<BoundaryPoint> boundary;

    double margin_at(int i1, int i2) const { return margins[static_cast<std::size_t>(i1 * axis2.n + i2)]; }
};

/// Scans the margin over a 2-D grid and locates sign changes along every grid
/// line, bisected in the scanned parameter to 1e-6 (and |margin| <= 1e-6 kappa1).
StabilityScan stability_boundary(const DeviceParams& base, const ScanAxis& axis1,
                                 const ScanAxis& axis2, int workers = 1);

}  // namespace nonrecip
