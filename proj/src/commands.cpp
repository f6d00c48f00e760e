#include "nonrecip/commands.hpp"

#include <cmath>
#include <sstream>

#include "nonrecip/design.hpp"
#include "nonrecip/format.hpp"
#include "nonrecip/noise.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/scattering.hpp"
#include "nonrecip/stability.hpp"

namespace nonrecip {

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

struct PairTransmission {
    double t12 = 0.0;
    double t21 = 0.0;
};

PairTransmission cavity_transmission(const DeviceParams& p, double omega, ModelKind model) {
    switch (model) {
        case ModelKind::full: {
            const ScatteringResult r = smatrix_full(p, omega);
            return {r.t(0, 1), r.t(1, 0)};
        }
        case ModelKind::reduced: {
            const ScatteringResult r = smatrix_reduced(p, omega);
            return {r.t(0, 1), r.t(1, 0)};
        }
        case ModelKind::analytic: {
            const AnalyticTransmission a = analytic_transmission(p, omega);
            return {std::norm(a.s12), std::norm(a.s21)};
        }
    }
    return {};
}

void require_equal_kappas(const RunConfig& c) {
    if (c.model != ModelKind::full && c.device.kappa1 != c.device.kappa2) {
        throw Error(ErrorKind::UnequalKappas, std::string(to_string(c.model)) + " model needs kappa1 == kappa2");
    }
}

void write_device(std::ostringstream& out, const DeviceParams& p) {
    out << "[device]\n";
    for (std::string_view name : {"kappa1", "kappa2", "gamma1", "gamma2", "g11", "g12", "g21", "g22", "phi", "nm1", "nm2"}) {
        out << name << " = " << format_number(get_param(p, name)) << "\n";
    }
}

void write_point(std::ostringstream& out, const WorkingPoint& w) {
    out << "omega = " << format_number(w.omega) << "\n"
        << "gain_db = " << format_number(w.gain_db) << "\n"
        << "reverse_db = " << format_number(w.reverse_db) << "\n"
        << "plateau_halfwidth = " << format_number(w.plateau_halfwidth) << "\n"
        << "stable_margin = " << format_number(w.stable_margin) << "\n"
        << "rule = " << (w.rule == PointRule::lossless_reverse ? "lossless_reverse" : "peak_gain") << "\n";
}

}  // namespace

SweepTable run_sweep(const RunConfig& c, int workers) {
    if (!c.sweep) throw Error(ErrorKind::ValidationError, "sweep block required");
    require_equal_kappas(c);
    const std::vector<double> omegas = c.sweep->omegas();
    const bool stable = stability_report(c.device).verdict == Verdict::stable;
    const bool with_noise = c.model != ModelKind::full;

    SweepTable table;
    table.rows.resize(omegas.size());
    parallel_for(omegas.size(), workers, [&](std::size_t i) {
        SweepRow& row = table.rows[i];
        row.omega = omegas[i];
        row.stable = stable;
        try {
            const PairTransmission t = cavity_transmission(c.device, omegas[i], c.model);
            row.t12 = t.t12;
            row.t21 = t.t21;
            row.t12_db = to_db(t.t12);
            row.t21_db = to_db(t.t21);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PoleAtFrequency) throw;
        }
        if (with_noise) {
            try {
                row.added_noise = output_spectrum_cavity2(c.device, omegas[i]).added;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::PoleAtFrequency && e.kind() != ErrorKind::ZeroGain) throw;
            }
        }
    });
    return table;
}

std::string write_sweep_csv(const SweepTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const SweepRow& r : table.rows) {
        out << format_number(r.omega) << ',' << cell(r.t12) << ',' << cell(r.t21) << ',' << cell(r.t12_db) << ','
            << cell(r.t21_db) << ',' << (r.stable ? 1 : 0) << ',' << cell(r.added_noise) << "\n";
    }
    return out.str();
}

MapGrid run_map(const RunConfig& c, int workers) {
    if (!c.map) throw Error(ErrorKind::ValidationError, "map block required");
    const MapBlock& m = *c.map;
    for (const ScanAxis* axis : {&m.axis1, &m.axis2}) {
        if (axis->param != "omega" && !is_param_name(axis->param)) {
            throw Error(ErrorKind::InvalidAxis, "unknown parameter '" + axis->param + "'");
        }
    }
    if (m.scalar == "t21_db" || m.scalar == "t12_db") require_equal_kappas(c);

    MapGrid grid{m.axis1, m.axis2, m.scalar, {}};
    const auto cells = static_cast<std::size_t>(m.axis1.n) * static_cast<std::size_t>(m.axis2.n);
    grid.values.resize(cells);
    parallel_for(cells, workers, [&](std::size_t idx) {
        const int i1 = static_cast<int>(idx / static_cast<std::size_t>(m.axis2.n));
        const int i2 = static_cast<int>(idx % static_cast<std::size_t>(m.axis2.n));
        DeviceParams p = c.device;
        double omega = m.omega.value_or(0.0);
        for (const auto& [axis, index] : {std::pair{&m.axis1, i1}, std::pair{&m.axis2, i2}}) {
            if (axis->param == "omega") {
                omega = axis->value(index);
            } else {
                set_param(p, axis->param, axis->value(index));
            }
        }
        if (m.scalar == "margin") {
            grid.values[idx] = stability_report(p).margin;
            return;
        }
        if (m.scalar == "numerator12") {
            const FreqQuantities f = freq_quantities(p, omega);
            grid.values[idx] = std::abs(p.kappa1 * (f.q1_minus + f.q2));
            return;
        }
        try {
            const PairTransmission t = cavity_transmission(p, omega, c.model);
            grid.values[idx] = to_db(m.scalar == "t21_db" ? t.t21 : t.t12);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PoleAtFrequency) throw;
        }
    });
    return grid;
}

std::string write_map(const MapGrid& g) {
    std::ostringstream out;
    out << "# axis1=" << g.axis1.param << ' ' << format_number(g.axis1.min) << ' ' << format_number(g.axis1.max) << ' '
        << g.axis1.n << "\n";
    out << "# axis2=" << g.axis2.param << ' ' << format_number(g.axis2.min) << ' ' << format_number(g.axis2.max) << ' '
        << g.axis2.n << "\n";
    out << "# scalar=" << g.scalar << "\n";
    for (int i1 = 0; i1 < g.axis1.n; ++i1) {
        for (int i2 = 0; i2 < g.axis2.n; ++i2) {
            out << (i2 ? "," : "") << cell(g.values[static_cast<std::size_t>(i1 * g.axis2.n + i2)]);
        }
        out << "\n";
    }
    return out.str();
}

std::string run_design_report(const RunConfig& c, int workers) {
    if (!c.design) throw Error(ErrorKind::ValidationError, "design block required");
    const DesignBlock& d = *c.design;
    std::ostringstream out;
    out << "# design report\n";
    write_device(out, c.device);
    out << "[range]\nomega_min = " << format_number(d.omega_min) << "\nomega_max = " << format_number(d.omega_max)
        << "\n";

    const auto isolation = solve_isolation(c.device);
    for (std::size_t k = 0; k < isolation.size(); ++k) {
        const IsolationSolution& s = isolation[k];
        out << "[isolation." << k + 1 << "]\n"
            << "feasible = " << (s.feasible ? 1 : 0) << "\n"
            << "phi = " << format_number(s.phi) << "\n"
            << "phi_over_pi = " << format_number(s.phi / 3.141592653589793) << "\n"
            << "omega = " << format_number(s.omega) << "\n"
            << "residual = " << format_number(s.residual) << "\n";
        if (s.feasible) {
            DeviceParams at = c.device;
            at.phi = s.phi;
            const ScatteringResult r = smatrix_reduced(at, s.omega);
            out << "t12_db = " << format_number(r.t_db(0, 1)) << "\n"
                << "t21_db = " << format_number(r.t_db(1, 0)) << "\n"
                << "margin = " << format_number(stability_report(at).margin) << "\n";
        }
    }

    out << "[amplifier]\n";
    write_point(out, find_amplifier_point(c.device, {d.omega_min, d.omega_max}));

    if (d.optimize) {
        OptimizeOptions options;
        options.workers = workers;
        const OptimizeResult opt =
            optimize_gain(c.device, d.optimize->bounds, d.optimize->epsilon_margin, {d.omega_min, d.omega_max}, options);
        out << "[optimize]\nepsilon_margin = " << format_number(d.optimize->epsilon_margin) << "\n";
        for (const ParamBound& b : d.optimize->bounds) {
            out << "bound." << b.param << " = " << format_number(b.range.lo) << ' ' << format_number(b.range.hi) << "\n";
        }
        out << "evaluations = " << opt.evaluations << "\n";
        write_point(out, opt.point);
        out << "[optimize.device]\n";
        std::ostringstream dev;
        write_device(dev, opt.params);
        const std::string body = dev.str();
        out << body.substr(body.find('\n') + 1);
    }
    return out.str();
}

std::string run_stability_report(const RunConfig& c, int workers) {
    const StabilityReport r = stability_report(c.device);
    std::ostringstream out;
    out << "# stability report\n";
    write_device(out, c.device);
    out << "[eigenvalue_criterion]\nverdict = " << to_string(r.verdict) << "\nmargin = " << format_number(r.margin)
        << "\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        out << "eigenvalue." << i + 1 << " = " << format_number(r.eigenvalues[i]) << "\n";
    }
    out << "[printed_conditions]\nreading = " << StabilityReport::condition2_reading << "\n";
    for (std::size_t i = 0; i < 3; ++i) {
        out << "condition." << i + 1 << ".lhs = " << format_number(r.printed_values[i]) << "\n"
            << "condition." << i + 1 << ".holds = " << (r.printed_conditions[i] ? 1 : 0) << "\n";
    }
    out << "discrepancy = " << (r.discrepancy ? 1 : 0) << "\n";

    if (c.map && c.map->axis1.param != "omega" && c.map->axis2.param != "omega") {
        const StabilityScan scan = stability_boundary(c.device, c.map->axis1, c.map->axis2, workers);
        std::size_t stable = 0;
        for (Verdict v : scan.verdicts) stable += v == Verdict::stable ? 1 : 0;
        out << "[boundary]\naxis1 = " << scan.axis1.param << "\naxis2 = " << scan.axis2.param
            << "\nstable_cells = " << stable << "\nunstable_cells = " << scan.verdicts.size() - stable
            << "\npoints = " << scan.boundary.size() << "\n";
        out << scan.axis1.param << ',' << scan.axis2.param << ",margin\n";
        for (const BoundaryPoint& b : scan.boundary) {
            out << format_number(b.x1) << ',' << format_number(b.x2) << ',' << format_number(b.margin) << "\n";
        }
    }
    return out.str();
}

std::string run_noise_table(const RunConfig& c, int workers) {
    if (!c.sweep) throw Error(ErrorKind::ValidationError, "sweep block required");
    const std::vector<double> omegas = c.sweep->omegas();
    const std::vector<NoiseSample> samples = noise_sweep(c.device, omegas, workers);
    std::ostringstream out;
    out << "omega,gain,gain_db,s_out,added_noise,flag\n";
    for (const NoiseSample& s : samples) {
        out << format_number(s.omega) << ',';
        if (s.result) {
            out << format_number(s.result->gain) << ',' << format_number(to_db(s.result->gain)) << ','
                << format_number(s.result->s_out) << ',' << format_number(s.result->added) << ',';
        } else {
            out << ",,,,";
        }
        out << s.flag << "\n";
    }
    return out.str();
}

std::string run_command(std::string_view command, const RunConfig& config, int workers) {
    if (command == "sweep") return write_sweep_csv(run_sweep(config, workers));
    if (command == "map") return write_map(run_map(config, workers));
    if (command == "design") return run_design_report(config, workers);
    if (command == "stability") return run_stability_report(config, workers);
    if (command == "noise") return run_noise_table(config, workers);
    throw Error(ErrorKind::ValidationError, "unknown command '" + std::string(command) + "'");
}

int exit_status(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::ValidationError:
        case ErrorKind::InvalidAxis:
        case ErrorKind::InvalidParams:
        case ErrorKind::InvalidRatio:
            return 1;
        case ErrorKind::UnequalKappas:
        case ErrorKind::NoCoherentPath:
        case ErrorKind::Unstable:
        case ErrorKind::NoFeasiblePoint:
        case ErrorKind::ZeroGain:
        case ErrorKind::PoleAtFrequency:
            return 2;
        case ErrorKind::SingularMatrix:
        case ErrorKind::NotHermitian:
        case ErrorKind::NoConvergence:
        case ErrorKind::NegativeProbability:
            return 3;
    }
    return 3;
}

}  // namespace nonrecip
