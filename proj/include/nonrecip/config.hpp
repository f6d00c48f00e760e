// config.hpp: JSON run configuration

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonrecip/design.hpp"
#include "nonrecip/model.hpp"
#include "nonrecip/stability.hpp"

namespace nonrecip {

enum class ModelKind { full, reduced, analytic };

std::string_view to_string(ModelKind m) noexcept;
ModelKind parse_model_kind(std::string_view name);  // throws ValidationError

struct SweepBlock {
    double omega_min = 0.0;
    double omega_max = 0.0;
    int n = 2;

    std::vector<double> omegas() const;
    bool operator==(const SweepBlock&) const = default;
};

struct MapBlock {
    ScanAxis axis1;
    ScanAxis axis2;
    std::string scalar = "t21_db";  // t21_db | t12_db | margin | numerator12
    std::optional<double> omega;

    bool operator==(const MapBlock& o) const {
        auto same = [](const ScanAxis& a, const ScanAxis& b) {
            return a.param == b.param && a.min == b.min && a.max == b.max && a.n == b.n;
        };
        return same(axis1, o.axis1) && same(axis2, o.axis2) && scalar == o.scalar && omega == o.omega;
    }
};

struct OptimizeBlock {
    std::vector<ParamBound> bounds;
    double epsilon_margin = 0.0;

    bool operator==(const OptimizeBlock& o) const {
        if (epsilon_margin != o.epsilon_margin || bounds.size() != o.bounds.size()) return false;
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            if (bounds[i].param != o.bounds[i].param || bounds[i].range.lo != o.bounds[i].range.lo ||
                bounds[i].range.hi != o.bounds[i].range.hi)
                return false;
        }
        return true;
    }
};

struct DesignBlock {
    double omega_min = 0.0;
    double omega_max = 0.0;
    std::optional<OptimizeBlock> optimize;

    bool operator==(const DesignBlock&) const = default;
};

struct RunConfig {
    DeviceParams device;
    ModelKind model = ModelKind::reduced;
    std::optional<SweepBlock> sweep;
    std::optional<MapBlock> map;
    std::optional<DesignBlock> design;

    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a JSON document. Omitted kappa1/kappa2 default to 1,
/// nm1/nm2 to 0, phi to 0, g21 to g11 and g22 to g12. Unknown keys are rejected.
/// Throws ParseError (syntax, types, unknown keys) or ValidationError (invariants).
RunConfig parse_config(std::string_view text);

/// Canonical JSON for a config; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

}  // namespace nonrecip
