// commands.hpp: sweep / map / design / stability / noise commands and their file formats

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonrecip/config.hpp"
#include "nonrecip/error.hpp"

namespace nonrecip {

struct SweepRow {
    double omega = 0.0;
    std::optional<double> t12, t21, t12_db, t21_db;  // empty at a pole
    bool stable = false;
    std::optional<double> added_noise;
};

struct SweepTable {
    std::vector<std::string> header{"omega", "t12", "t21", "t12_db", "t21_db", "stable", "added_noise"};
    std::vector<SweepRow> rows;  // ascending omega
};

struct MapGrid {
    ScanAxis axis1;
    ScanAxis axis2;
    std::string scalar;
    std::vector<std::optional<double>> values;  // row-major, axis1 major; empty at poles
};

SweepTable run_sweep(const RunConfig& config, int workers = 1);
std::string write_sweep_csv(const SweepTable& table);

MapGrid run_map(const RunConfig& config, int workers = 1);
std::string write_map(const MapGrid& grid);

std::string run_design_report(const RunConfig& config, int workers = 1);
std::string run_stability_report(const RunConfig& config, int workers = 1);
std::string run_noise_table(const RunConfig& config, int workers = 1);

/// Dispatches one of sweep|map|design|stability|noise and returns the file body.
std::string run_command(std::string_view command, const RunConfig& config, int workers = 1);

/// 0 success, 1 parse/validation, 2 domain infeasibility, 3 numeric failure.
int exit_status(ErrorKind kind) noexcept;

}  // namespace nonrecip
