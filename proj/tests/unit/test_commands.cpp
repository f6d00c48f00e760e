#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "nonrecip/commands.hpp"
#include "nonrecip/config.hpp"
#include "nonrecip/design.hpp"
#include "nonrecip/error.hpp"
#include "nonrecip/scattering.hpp"
#include "nonrecip/stability.hpp"

using namespace nonrecip;

namespace {

RunConfig fixture(const std::string& name) {
    std::ifstream in(std::string(NONRECIP_FIXTURES) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return parse_config(s.str());
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

/// Value of `key = value` inside section [name].
std::string report_value(const std::string& report, const std::string& section, const std::string& key) {
    bool inside = false;
    for (const std::string& line : lines_of(report)) {
        if (!line.empty() && line.front() == '[') {
            inside = line == "[" + section + "]";
            continue;
        }
        if (inside && line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
    }
    return {};
}

const SweepRow& nearest(const SweepTable& t, double omega) {
    const SweepRow* best = &t.rows.front();
    for (const SweepRow& r : t.rows)
        if (std::abs(r.omega - omega) < std::abs(best->omega - omega)) best = &r;
    return *best;
}

}  // namespace

TEST_CASE("sweep on the Fig. 2(a) fixture") {
    const RunConfig c = fixture("fig2a.json");
    const SweepTable t = run_sweep(c, 1);
    REQUIRE(t.rows.size() == 2001);
    CHECK(t.rows.front().omega == -0.5);
    CHECK(t.rows.back().omega == 0.5);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].omega > t.rows[i - 1].omega);

    // lossless-reverse amplification at -0.081 and its mirror at +0.081
    const SweepRow& minus = nearest(t, -0.081);
    const SweepRow& plus = nearest(t, 0.081);
    CHECK(std::abs(*minus.t21_db - 11.0) <= 0.25);
    CHECK(std::abs(*minus.t12_db) <= 0.1);
    CHECK(std::abs(*plus.t12_db - 11.0) <= 0.25);
    CHECK(minus.stable);
    CHECK(minus.added_noise.has_value());

    const std::string csv = write_sweep_csv(t);
    const std::vector<std::string> lines = lines_of(csv);
    CHECK(lines.front() == "omega,t12,t21,t12_db,t21_db,stable,added_noise");
    CHECK(lines.size() == 2002);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.back() == '\n');
    CHECK(lines[1].rfind("-5.00000000e-01,", 0) == 0);
}

TEST_CASE("sweep edge cases and models") {
    RunConfig c = fixture("fig3.json");
    c.sweep = SweepBlock{-0.2, 0.2, 2};
    const SweepTable two = run_sweep(c);
    REQUIRE(two.rows.size() == 2);
    CHECK(two.rows[0].omega == -0.2);
    CHECK(two.rows[1].omega == 0.2);

    c.sweep = SweepBlock{-0.3, 0.3, 61};
    const SweepTable reduced = run_sweep(c);
    c.model = ModelKind::analytic;
    const SweepTable analytic = run_sweep(c);
    c.model = ModelKind::full;
    const SweepTable full = run_sweep(c);
    for (std::size_t i = 0; i < reduced.rows.size(); ++i) {
        CHECK(*analytic.rows[i].t21 == doctest::Approx(*reduced.rows[i].t21).epsilon(1e-10));
        CHECK(*full.rows[i].t21 == doctest::Approx(smatrix_full(c.device, reduced.rows[i].omega).t(1, 0)));
        CHECK_FALSE(full.rows[i].added_noise.has_value());
    }

    RunConfig none = fixture("fig3.json");
    none.sweep.reset();
    CHECK_THROWS_AS(run_sweep(none), Error);
}

TEST_CASE("sweep records poles without aborting") {
    RunConfig c = fixture("fig3.json");
    double lo = 1.0, hi = 3.0;
    auto scaled = [&](double s) {
        DeviceParams q = c.device;
        q.g11 *= s;
        q.g21 *= s;
        q.g12 *= s;
        q.g22 *= s;
        return q;
    };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (stability_report(scaled(mid)).margin > 0.0 ? lo : hi) = mid;
    }
    c.device = scaled(lo);
    c.model = ModelKind::full;
    c.sweep = SweepBlock{-0.1, 0.1, 3};
    const SweepTable t = run_sweep(c);
    REQUIRE(t.rows.size() == 3);
    CHECK_FALSE(t.rows[1].t21.has_value());
    CHECK(t.rows[0].t21.has_value());
    const std::vector<std::string> lines = lines_of(write_sweep_csv(t));
    CHECK(lines[2] == "0.00000000e+00,,,,,0,");
}

TEST_CASE("map on the Fig. 3(a) axes") {
    RunConfig c = fixture("fig3.json");
    c.map->scalar = "margin";
    const MapGrid g = run_map(c, 2);
    REQUIRE(g.values.size() == 39u * 37u);
    int stable = 0, unstable = 0;
    for (const auto& v : g.values) (*v > 0.0 ? stable : unstable) += 1;
    CHECK(stable > 0);
    CHECK(unstable > 0);

    // sign changes bracket the refined boundary points
    const StabilityScan scan = stability_boundary(c.device, c.map->axis1, c.map->axis2, 1);
    for (int i1 = 0; i1 < c.map->axis1.n; ++i1)
        for (int i2 = 0; i2 < c.map->axis2.n; ++i2)
            CHECK(*g.values[i1 * c.map->axis2.n + i2] == scan.margin_at(i1, i2));
    const double d1 = (c.map->axis1.max - c.map->axis1.min) / (c.map->axis1.n - 1);
    const double d2 = (c.map->axis2.max - c.map->axis2.min) / (c.map->axis2.n - 1);
    for (const BoundaryPoint& b : scan.boundary) {
        const int i1 = static_cast<int>(std::floor((b.x1 - c.map->axis1.min) / d1 + 1e-9));
        const int i2 = static_cast<int>(std::floor((b.x2 - c.map->axis2.min) / d2 + 1e-9));
        bool bracketed = false;
        for (int a = std::max(0, i1 - 1); a <= std::min(c.map->axis1.n - 1, i1 + 1); ++a)
            for (int bb = std::max(0, i2 - 1); bb <= std::min(c.map->axis2.n - 1, i2 + 1); ++bb)
                for (int a2 = a; a2 <= std::min(c.map->axis1.n - 1, a + 1); ++a2)
                    for (int b2 = bb; b2 <= std::min(c.map->axis2.n - 1, bb + 1); ++b2)
                        bracketed = bracketed || ((scan.margin_at(a, bb) > 0.0) != (scan.margin_at(a2, b2) > 0.0));
        CHECK(bracketed);
    }

    const std::vector<std::string> lines = lines_of(write_map(g));
    CHECK(lines[0] == "# axis1=gamma1 1.00000000e-01 2.00000000e+00 39");
    CHECK(lines[1] == "# axis2=gamma2 4.00000000e+00 4.00000000e+01 37");
    CHECK(lines[2] == "# scalar=margin");
    CHECK(lines.size() == 3 + 39);
}

TEST_CASE("1x1 map equals the point evaluation") {
    RunConfig c = fixture("fig3.json");
    c.map->axis1 = ScanAxis{"gamma1", 0.8, 0.8, 1};
    c.map->axis2 = ScanAxis{"gamma2", 12.0, 12.0, 1};
    const MapGrid g = run_map(c);
    REQUIRE(g.values.size() == 1);
    DeviceParams p = c.device;
    p.gamma1 = 0.8;
    p.gamma2 = 12.0;
    CHECK(*g.values[0] == smatrix_reduced(p, -0.1).t_db(1, 0));

    c.map->scalar = "numerator12";
    c.map->axis1 = ScanAxis{"omega", -0.0914, -0.0914, 1};
    c.map->axis2 = ScanAxis{"phi", 2.9, 2.9, 1};
    p = c.device;
    p.phi = 2.9;
    CHECK(*run_map(c).values[0] == std::abs(analytic_transmission(p, -0.0914).numerator12));

    c.map->axis1 = ScanAxis{"gamma9", 0.0, 1.0, 2};
    CHECK_THROWS_AS(run_map(c), Error);
}

TEST_CASE("design reports") {
    const std::string b = run_design_report(fixture("fig2b.json"));
    CHECK(std::abs(std::stod(report_value(b, "isolation.1", "omega")) + 0.298) <= 2e-3);
    CHECK(std::abs(std::stod(report_value(b, "isolation.2", "omega")) - 0.298) <= 2e-3);
    CHECK(report_value(b, "isolation.1", "feasible") == "1");
    CHECK(std::stod(report_value(b, "isolation.1", "residual")) <= 1e-10);
    CHECK(report_value(b, "device", "g11") == "3.23000000e-01");

    const std::string c = run_design_report(fixture("fig3.json"));
    CHECK(std::stod(report_value(c, "optimize", "gain_db")) >= 11.0);
    CHECK(std::stod(report_value(c, "optimize", "stable_margin")) >= 0.02);

    try {
        run_design_report(fixture("zero_couplings.json"));
        FAIL("expected NoCoherentPath");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoCoherentPath);
        CHECK(exit_status(e.kind()) == 2);
    }
}

TEST_CASE("exit statuses") {
    CHECK(exit_status(ErrorKind::ParseError) == 1);
    CHECK(exit_status(ErrorKind::ValidationError) == 1);
    CHECK(exit_status(ErrorKind::NoCoherentPath) == 2);
    CHECK(exit_status(ErrorKind::NoFeasiblePoint) == 2);
    CHECK(exit_status(ErrorKind::SingularMatrix) == 3);
    CHECK(exit_status(ErrorKind::NoConvergence) == 3);
}

TEST_CASE("stability report") {
    const std::string a = run_stability_report(fixture("fig2a.json"));
    CHECK(report_value(a, "eigenvalue_criterion", "verdict") == "stable");
    CHECK(report_value(a, "printed_conditions", "condition.1.holds") == "0");
    CHECK(report_value(a, "printed_conditions", "discrepancy") == "1");

    const std::string c = run_stability_report(fixture("fig3.json"));
    CHECK(std::stoi(report_value(c, "boundary", "points")) > 0);
}

TEST_CASE("noise table") {
    const std::vector<std::string> lines = lines_of(run_noise_table(fixture("fig3.json")));
    CHECK(lines.front() == "omega,gain,gain_db,s_out,added_noise,flag");
    CHECK(lines.size() == 602);
}

TEST_CASE("every command is byte-identical across worker counts") {
    for (const char* name : {"fig2a.json", "fig2b.json", "fig3.json"}) {
        const RunConfig c = fixture(name);
        for (const char* cmd : {"sweep", "map", "design", "stability", "noise"}) {
            if (std::string(cmd) == "map" && !c.map) continue;
            const std::string one = run_command(cmd, c, 1);
            CHECK(run_command(cmd, c, 1) == one);
            CHECK(run_command(cmd, c, 4) == one);
        }
    }
    CHECK_THROWS_AS(run_command("plot", fixture("fig3.json")), Error);
}
