#include "nonrecip/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nonrecip/error.hpp"

namespace nonrecip {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::ParseError, field + ": " + what);
}

[[noreturn]] void invalid(const std::string& invariant) { throw Error(ErrorKind::ValidationError, invariant); }

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            parse_fail(path.empty() ? key : path + "." + key, "unknown key");
        }
    }
}

const json& object_at(const json& parent, const std::string& key, const std::string& path) {
    const json& v = parent.at(key);
    if (!v.is_object()) parse_fail(path, "expected an object");
    return v;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path + "." + key, "missing required number");
    if (!it->is_number()) parse_fail(path + "." + key, "expected a number");
    return it->get<double>();
}

std::optional<double> optional_number(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_number()) parse_fail(path + "." + key, "expected a number");
    return it->get<double>();
}

int integer(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path + "." + key, "missing required integer");
    if (!it->is_number_integer()) parse_fail(path + "." + key, "expected an integer");
    return it->get<int>();
}

std::string text(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path + "." + key, "missing required string");
    if (!it->is_string()) parse_fail(path + "." + key, "expected a string");
    return it->get<std::string>();
}

DeviceParams parse_device(const json& d) {
    const std::string path = "device";
    reject_unknown(d, path, {"kappa1", "kappa2", "gamma1", "gamma2", "g11", "g12", "g21", "g22", "phi", "nm1", "nm2"});
    DeviceParams p;
    p.kappa1 = optional_number(d, "kappa1", path).value_or(1.0);
    p.kappa2 = optional_number(d, "kappa2", path).value_or(1.0);
    p.gamma1 = number(d, "gamma1", path);
    p.gamma2 = number(d, "gamma2", path);
    p.g11 = number(d, "g11", path);
    p.g12 = number(d, "g12", path);
    p.g21 = optional_number(d, "g21", path).value_or(p.g11);
    p.g22 = optional_number(d, "g22", path).value_or(p.g12);
    p.phi = optional_number(d, "phi", path).value_or(0.0);
    p.nm1 = optional_number(d, "nm1", path).value_or(0.0);
    p.nm2 = optional_number(d, "nm2", path).value_or(0.0);
    try {
        p.validate();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidParams) throw;
        const std::string msg = e.what();
        invalid(msg.substr(msg.find(": ") + 2));
    }
    return p;
}

ScanAxis parse_axis(const json& a, const std::string& path) {
    reject_unknown(a, path, {"param", "min", "max", "n"});
    ScanAxis axis;
    axis.param = text(a, "param", path);
    axis.min = number(a, "min", path);
    axis.max = number(a, "max", path);
    axis.n = integer(a, "n", path);
    if (axis.param != "omega" && !is_param_name(axis.param)) invalid(path + ".param names a device parameter or omega");
    if (axis.n < 1) invalid(path + ".n >= 1");
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) invalid(path + " bounds finite");
    if (axis.max < axis.min) invalid(path + ".max >= min");
    return axis;
}

std::vector<ParamBound> parse_bounds(const json& b, const std::string& path) {
    std::vector<ParamBound> out;
    for (const auto& [key, value] : b.items()) {
        const std::string field = path + "." + key;
        if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
            parse_fail(field, "expected [lo, hi]");
        }
        ParamBound bound{key, {value[0].get<double>(), value[1].get<double>()}};
        if (!(bound.range.hi >= bound.range.lo)) invalid(field + " hi >= lo");
        out.push_back(bound);
    }
    if (out.empty()) invalid(path + " not empty");
    return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::string_view to_string(ModelKind m) noexcept {
    switch (m) {
        case ModelKind::full: return "full";
        case ModelKind::reduced: return "reduced";
        case ModelKind::analytic: return "analytic";
    }
    return "reduced";
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "full") return ModelKind::full;
    if (name == "reduced") return ModelKind::reduced;
    if (name == "analytic") return ModelKind::analytic;
    invalid("model is one of full|reduced|analytic (got '" + std::string(name) + "')");
}

std::vector<double> SweepBlock::omegas() const {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = omega_min + (omega_max - omega_min) * double(k) / double(n - 1);
    }
    out.back() = omega_max;
    return out;
}

RunConfig parse_config(std::string_view text_in) {
    json doc;
    try {
        doc = json::parse(text_in.begin(), text_in.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text_in, e.byte == 0 ? 0 : e.byte - 1);
        std::ostringstream msg;
        msg << "line " << line << ", column " << col << ": " << e.what();
        throw Error(ErrorKind::ParseError, msg.str());
    }
    if (!doc.is_object()) parse_fail("<root>", "expected an object");
    reject_unknown(doc, "", {"device", "model", "sweep", "map", "design"});
    if (!doc.contains("device")) parse_fail("device", "missing required object");

    RunConfig c;
    c.device = parse_device(object_at(doc, "device", "device"));
    if (doc.contains("model")) c.model = parse_model_kind(text(doc, "model", "<root>"));

    if (doc.contains("sweep")) {
        const json& s = object_at(doc, "sweep", "sweep");
        reject_unknown(s, "sweep", {"omega_min", "omega_max", "n"});
        SweepBlock b{number(s, "omega_min", "sweep"), number(s, "omega_max", "sweep"), integer(s, "n", "sweep")};
        if (b.n < 2) invalid("sweep.n >= 2");
        if (!(b.omega_max > b.omega_min)) invalid("sweep.omega_max > omega_min");
        c.sweep = b;
    }
    if (doc.contains("map")) {
        const json& m = object_at(doc, "map", "map");
        reject_unknown(m, "map", {"axis1", "axis2", "scalar", "omega"});
        MapBlock b;
        b.axis1 = parse_axis(object_at(m, "axis1", "map.axis1"), "map.axis1");
        b.axis2 = parse_axis(object_at(m, "axis2", "map.axis2"), "map.axis2");
        if (m.contains("scalar")) b.scalar = text(m, "scalar", "map");
        b.omega = optional_number(m, "omega", "map");
        if (b.scalar != "t21_db" && b.scalar != "t12_db" && b.scalar != "margin" && b.scalar != "numerator12") {
            invalid("map.scalar is one of t21_db|t12_db|margin|numerator12");
        }
        const bool omega_axis = b.axis1.param == "omega" || b.axis2.param == "omega";
        if (b.scalar != "margin" && !omega_axis && !b.omega) invalid("map.omega required for scalar " + b.scalar);
        if (b.scalar == "margin" && omega_axis) invalid("map.scalar margin does not depend on omega");
        c.map = b;
    }
    if (doc.contains("design")) {
        const json& d = object_at(doc, "design", "design");
        reject_unknown(d, "design", {"omega_min", "omega_max", "optimize"});
        DesignBlock b{number(d, "omega_min", "design"), number(d, "omega_max", "design"), std::nullopt};
        if (!(b.omega_max > b.omega_min)) invalid("design.omega_max > omega_min");
        if (d.contains("optimize")) {
            const json& o = object_at(d, "optimize", "design.optimize");
            reject_unknown(o, "design.optimize", {"bounds", "epsilon_margin"});
            OptimizeBlock ob;
            ob.bounds = parse_bounds(object_at(o, "bounds", "design.optimize.bounds"), "design.optimize.bounds");
            ob.epsilon_margin = number(o, "epsilon_margin", "design.optimize");
            if (!(ob.epsilon_margin > 0.0)) invalid("design.optimize.epsilon_margin > 0");
            b.optimize = ob;
        }
        c.design = b;
    }
    return c;
}

std::string emit_config(const RunConfig& c) {
    json doc;
    const DeviceParams& p = c.device;
    doc["device"] = {{"kappa1", p.kappa1}, {"kappa2", p.kappa2}, {"gamma1", p.gamma1}, {"gamma2", p.gamma2},
                     {"g11", p.g11},       {"g12", p.g12},       {"g21", p.g21},       {"g22", p.g22},
                     {"phi", p.phi},       {"nm1", p.nm1},       {"nm2", p.nm2}};
    doc["model"] = std::string(to_string(c.model));
    if (c.sweep) doc["sweep"] = {{"omega_min", c.sweep->omega_min}, {"omega_max", c.sweep->omega_max}, {"n", c.sweep->n}};
    if (c.map) {
        auto axis = [](const ScanAxis& a) { return json{{"param", a.param}, {"min", a.min}, {"max", a.max}, {"n", a.n}}; };
        json m = {{"axis1", axis(c.map->axis1)}, {"axis2", axis(c.map->axis2)}, {"scalar", c.map->scalar}};
        if (c.map->omega) m["omega"] = *c.map->omega;
        doc["map"] = m;
    }
    if (c.design) {
        json d = {{"omega_min", c.design->omega_min}, {"omega_max", c.design->omega_max}};
        if (c.design->optimize) {
            json bounds = json::object();
            for (const ParamBound& b : c.design->optimize->bounds) bounds[b.param] = {b.range.lo, b.range.hi};
            d["optimize"] = {{"bounds", bounds}, {"epsilon_margin", c.design->optimize->epsilon_margin}};
        }
        doc["design"] = d;
    }
    return doc.dump(2) + "\n";
}

}  // namespace nonrecip
