#include "nonrecip/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "nonrecip/error.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/scattering.hpp"
#include "nonrecip/stability.hpp"

namespace nonrecip {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kGoldenTol = 1e-8;
constexpr double kInfeasibleOffset = 300.0;
constexpr double kPenaltyWeight = 1e3;

struct Transmission {
    double forward_db = kNaN;
    double reverse_db = kNaN;
};

Transmission transmission_at(const DeviceParams& p, double omega) {
    try {
        const ScatteringResult r = smatrix_reduced(p, omega);
        return {r.t_db(1, 0), r.t_db(0, 1)};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PoleAtFrequency) throw;
        return {};
    }
}

std::vector<double> grid(Interval range, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = n == 1 ? range.lo : range.lo + (range.hi - range.lo) * k / double(n - 1);
    }
    return out;
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > kGoldenTol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

// Bisection on a sign change of g between a and b.
double bisect(const std::function<double(double)>& g, double a, double b, double tol) {
    double ga = g(a);
    for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if ((gm > 0.0) == (ga > 0.0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double require_stable(const DeviceParams& p) {
    const double margin = stability_report(p).margin;
    if (!(margin > 0.0)) {
        std::ostringstream msg;
        msg << "drift margin " << margin << " <= 0";
        throw Error(ErrorKind::Unstable, msg.str());
    }
    return margin;
}

double plateau_halfwidth(const DeviceParams& p, double omega, Interval range, std::span<const double> omegas,
                         std::span<const Transmission> scan) {
    auto flat = [&](double w) {
        const double r = transmission_at(p, w).reverse_db;
        return std::isfinite(r) && std::abs(r) <= kPlateauDb;
    };
    if (!flat(omega)) return 0.0;
    auto flat_node = [&](std::size_t k) {
        return std::isfinite(scan[k].reverse_db) && std::abs(scan[k].reverse_db) <= kPlateauDb;
    };
    auto edge = [&](double inside, double outside) {
        return bisect([&](double w) { return flat(w) ? 1.0 : -1.0; }, inside, outside, 1e-10);
    };

    const auto pos = static_cast<std::size_t>(
        std::lower_bound(omegas.begin(), omegas.end(), omega) - omegas.begin());
    // walk outward over grid nodes that stay flat
    double left = range.lo;
    for (std::size_t k = pos; k-- > 0;) {
        if (!flat_node(k)) {
            left = edge(k + 1 < omegas.size() && omegas[k + 1] < omega ? omegas[k + 1] : omega, omegas[k]);
            break;
        }
    }
    double right = range.hi;
    for (std::size_t k = pos; k < omegas.size(); ++k) {
        if (omegas[k] <= omega) continue;
        if (!flat_node(k)) {
            right = edge(k > 0 && omegas[k - 1] > omega ? omegas[k - 1] : omega, omegas[k]);
            break;
        }
    }
    return 0.5 * (right - left);
}

WorkingPoint locate(const DeviceParams& p, Interval range, int n_scan, bool allow_crossing) {
    if (!(range.hi > range.lo)) throw Error(ErrorKind::InvalidParams, "omega range must have hi > lo");
    if (n_scan < 2) throw Error(ErrorKind::InvalidParams, "n_scan >= 2");
    const double margin = require_stable(p);

    const std::vector<double> omegas = grid(range, n_scan);
    std::vector<Transmission> scan(omegas.size());
    for (std::size_t k = 0; k < omegas.size(); ++k) scan[k] = transmission_at(p, omegas[k]);

    WorkingPoint best;
    best.stable_margin = margin;
    bool found = false;

    if (allow_crossing) {
        for (std::size_t k = 0; k + 1 < omegas.size(); ++k) {
            const double a = scan[k].reverse_db;
            const double b = scan[k + 1].reverse_db;
            if (!std::isfinite(a) || !std::isfinite(b)) continue;
            if ((a > 0.0) == (b > 0.0) && a != 0.0) continue;
            const double w = a == 0.0 ? omegas[k]
                                      : bisect([&](double x) { return transmission_at(p, x).reverse_db; },
                                               omegas[k], omegas[k + 1], 1e-13);
            const Transmission t = transmission_at(p, w);
            if (!(t.forward_db > 0.0)) continue;
            if (!found || t.forward_db > best.gain_db) {
                best.omega = w;
                best.gain_db = t.forward_db;
                best.reverse_db = t.reverse_db;
                best.rule = PointRule::lossless_reverse;
                found = true;
            }
        }
    }

    if (!found) {
        std::size_t arg = omegas.size();
        for (std::size_t k = 0; k < omegas.size(); ++k) {
            if (!std::isfinite(scan[k].forward_db)) continue;
            if (arg == omegas.size() || scan[k].forward_db > scan[arg].forward_db) arg = k;
        }
        if (arg == omegas.size()) throw Error(ErrorKind::PoleAtFrequency, "no regular frequency in scan range");
        const double lo = omegas[arg == 0 ? 0 : arg - 1];
        const double hi = omegas[std::min(arg + 1, omegas.size() - 1)];
        const double w = golden_max(
            [&](double x) {
                const double g = transmission_at(p, x).forward_db;
                return std::isfinite(g) ? g : -std::numeric_limits<double>::infinity();
            },
            lo, hi);
        const Transmission t = transmission_at(p, w);
        const bool refined_better = std::isfinite(t.forward_db) && t.forward_db >= scan[arg].forward_db;
        best.omega = refined_better ? w : omegas[arg];
        best.gain_db = refined_better ? t.forward_db : scan[arg].forward_db;
        best.reverse_db = refined_better ? t.reverse_db : scan[arg].reverse_db;
        best.rule = PointRule::peak_gain;
    }
    best.plateau_halfwidth = plateau_halfwidth(p, best.omega, range, omegas, scan);
    return best;
}

bool is_design_param(std::string_view name) {
    for (std::string_view allowed : {"g11", "g12", "g21", "g22", "g_mo1", "g_mo2", "phi", "gamma1", "gamma2"}) {
        if (name == allowed) return true;
    }
    return false;
}

}  // namespace

std::array<IsolationSolution, 2> solve_isolation(const DeviceParams& p) {
    p.validate();
    const double coherent = p.g11 * p.g21;
    if (coherent == 0.0) {
        throw Error(ErrorKind::NoCoherentPath, "g11 * g21 == 0, backward numerator cannot vanish");
    }
    const double cos_phi = -p.gamma1 * p.g12 * p.g22 / (p.gamma2 * coherent);

    std::array<IsolationSolution, 2> out{};
    // cos_phi == 0 puts the zero at infinite detuning
    if (std::abs(cos_phi) > 1.0 || cos_phi == 0.0) {
        out[0].residual = out[1].residual = std::numeric_limits<double>::infinity();
        out[0].phi = out[1].phi = kNaN;
        out[0].omega = out[1].omega = kNaN;
        return out;
    }
    const double phi = std::acos(cos_phi);
    for (int k = 0; k < 2; ++k) {
        IsolationSolution& s = out[static_cast<std::size_t>(k)];
        s.phi = k == 0 ? phi : -phi;
        s.omega = p.gamma1 * std::tan(s.phi) / 2.0;
        DeviceParams at = p;
        at.phi = s.phi;
        const FreqQuantities f = freq_quantities(at, s.omega);
        s.residual = std::abs(f.q1_minus + f.q2);
        s.feasible = s.residual <= 1e-10;
    }
    return out;
}

WorkingPoint find_amplifier_point(const DeviceParams& p, Interval range, int n_scan) {
    if (n_scan < 100) throw Error(ErrorKind::InvalidParams, "n_scan >= 100");
    return locate(p, range, n_scan, true);
}

WorkingPoint peak_gain_point(const DeviceParams& p, Interval range, int n_scan) {
    return locate(p, range, n_scan, false);
}

OptimizeResult optimize_gain(const DeviceParams& base, const std::vector<ParamBound>& bounds,
                             double epsilon_margin, Interval omega_range, const OptimizeOptions& options) {
    base.validate();
    if (bounds.empty()) throw Error(ErrorKind::InvalidParams, "bounds must not be empty");
    if (!(epsilon_margin > 0.0)) throw Error(ErrorKind::InvalidParams, "epsilon_margin > 0");
    if (!(omega_range.hi > omega_range.lo)) throw Error(ErrorKind::InvalidParams, "omega range must have hi > lo");

    DeviceParams pinned = base;
    std::vector<const ParamBound*> free;
    for (const ParamBound& b : bounds) {
        if (!is_design_param(b.param)) {
            throw Error(ErrorKind::InvalidAxis, "'" + b.param + "' is not an optimizable parameter");
        }
        if (!(b.range.hi >= b.range.lo)) throw Error(ErrorKind::InvalidParams, b.param + ": hi >= lo");
        if (b.range.hi > b.range.lo) {
            free.push_back(&b);
        } else {
            set_param(pinned, b.param, b.range.lo);
        }
    }

    // Unit-cube coordinates; values outside [0,1] are clamped and penalized.
    auto decode = [&](std::span<const double> u, double& box_excess) {
        DeviceParams p = pinned;
        box_excess = 0.0;
        for (std::size_t i = 0; i < free.size(); ++i) {
            const double clamped = std::clamp(u[i], 0.0, 1.0);
            box_excess += std::abs(u[i] - clamped);
            const Interval r = free[i]->range;
            set_param(p, free[i]->param, r.lo + clamped * (r.hi - r.lo));
        }
        return p;
    };

    struct Evaluation {
        double value = std::numeric_limits<double>::infinity();
        bool feasible = false;
    };
    auto evaluate = [&](std::span<const double> u) {
        double excess = 0.0;
        const DeviceParams p = decode(u, excess);
        Evaluation e;
        try {
            p.validate();
        } catch (const Error&) {
            return e;
        }
        const double margin = stability_report(p).margin;
        const double box_penalty = kPenaltyWeight * excess;
        if (margin < epsilon_margin) {
            e.value = kInfeasibleOffset + kPenaltyWeight * (epsilon_margin - margin) + box_penalty;
            return e;
        }
        try {
            e.value = -peak_gain_point(p, omega_range, options.n_scan).gain_db + box_penalty;
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::PoleAtFrequency) throw;
            return e;
        }
        e.feasible = excess == 0.0;
        return e;
    };

    const std::size_t dim = free.size();
    const int levels = std::max(2, options.seed_levels);
    std::size_t n_seeds = 1;
    for (std::size_t i = 0; i < dim; ++i) n_seeds *= static_cast<std::size_t>(levels);

    std::vector<std::vector<double>> seeds(n_seeds, std::vector<double>(dim));
    for (std::size_t s = 0; s < n_seeds; ++s) {
        std::size_t code = s;
        for (std::size_t i = 0; i < dim; ++i) {
            seeds[s][i] = double(code % static_cast<std::size_t>(levels)) / double(levels - 1);
            code /= static_cast<std::size_t>(levels);
        }
    }
    std::vector<Evaluation> seed_eval(n_seeds);
    parallel_for(n_seeds, options.workers, [&](std::size_t s) { seed_eval[s] = evaluate(seeds[s]); });

    std::vector<std::size_t> ranked;
    for (std::size_t s = 0; s < n_seeds; ++s)
        if (seed_eval[s].feasible) ranked.push_back(s);
    if (ranked.empty()) {
        std::ostringstream msg;
        msg << "none of " << n_seeds << " seeds reaches margin " << epsilon_margin;
        throw Error(ErrorKind::NoFeasiblePoint, msg.str());
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](std::size_t a, std::size_t b) { return seed_eval[a].value < seed_eval[b].value; });
    ranked.resize(std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(std::max(1, options.starts))));

    struct Run {
        std::vector<double> best_u;
        double best_value = std::numeric_limits<double>::infinity();
        int evaluations = 0;
    };
    std::vector<Run> runs(ranked.size());
    parallel_for(ranked.size(), options.workers, [&](std::size_t r) {
        Run& run = runs[r];
        run.best_u = seeds[ranked[r]];
        run.best_value = seed_eval[ranked[r]].value;
        // every feasible evaluation is a candidate, so the margin constraint holds exactly
        Objective tracked = [&](std::span<const double> u) {
            const Evaluation e = evaluate(u);
            if (e.feasible && e.value < run.best_value) {
                run.best_value = e.value;
                run.best_u.assign(u.begin(), u.end());
            }
            return e.value;
        };
        SimplexOptions simplex;
        simplex.initial_step = 0.1;
        simplex.tol = 1e-6;
        simplex.max_evals = 800;
        run.evaluations = minimize_simplex(tracked, seeds[ranked[r]], simplex).evaluations;
    });

    std::size_t winner = 0;
    int evaluations = static_cast<int>(n_seeds);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        evaluations += runs[r].evaluations;
        if (runs[r].best_value < runs[winner].best_value) winner = r;
    }

    OptimizeResult result;
    double excess = 0.0;
    result.params = decode(runs[winner].best_u, excess);
    result.point = peak_gain_point(result.params, omega_range, options.n_scan);
    result.evaluations = evaluations;
    if (result.point.stable_margin < epsilon_margin) {
        throw Error(ErrorKind::NoFeasiblePoint, "post-check failed: margin below epsilon");
    }
    return result;
}

}  // namespace nonrecip
