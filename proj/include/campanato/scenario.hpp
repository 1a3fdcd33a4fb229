#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "campanato/catalog.hpp"
#include "campanato/spaces.hpp"
#include "campanato/vanishing.hpp"

namespace campanato {

/// Configuration failures carry the offending key so the CLI can exit 2
/// with a pointed message.
class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Scenario {
    std::string fn_name;                          // catalog entry, or empty for inline samples
    std::vector<double> fn_params;
    std::optional<std::vector<double>> inline_samples;
    int dim = 1;
    Cube box{{0.0, 0.0}, 4.0, 1};
    std::array<int, 2> resolution{4096, 1};
    double alpha = 0.0;
    std::vector<SpaceSpec> spaces;
    CurveConfig curves;
    Thresholds thresholds;
    std::uint64_t seed = 0;
    bool curves_defaulted = true;

    GridFunction make_function() const {
        if (inline_samples)
            return GridFunction(box, resolution, *inline_samples);
        return catalog(fn_name, fn_params, box, resolution);
    }

    std::string header() const {
        std::ostringstream os;
        os << "# function: " << (fn_name.empty() ? "inline" : fn_name);
        for (double p : fn_params) os << " " << p;
        os << "\n# alpha: " << alpha << "\n# box: " << box.describe()
           << " (truncation radius " << 0.5 * box.edge << ", zero outside)"
           << "\n# resolution: " << resolution[0];
        if (dim == 2) os << "x" << resolution[1];
        os << "\n# thresholds: theta=" << thresholds.theta
           << " floor_frac=" << thresholds.floor_frac << "\n# seed: " << seed
           << "\n# mollifier: normalized quartic bump (1-|x|^2)^4\n";
        return os.str();
    }
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ScenarioError("unknown key '" + it.key() + "' in " + where);
    }
}

inline double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ScenarioError("missing key '" + std::string(key) + "' in " + where);
    if (!obj[key].is_number()) throw ScenarioError("key '" + std::string(key) + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

inline GridFunction parse_grid_fn(const json& spec, const Cube& box,
                                  std::array<int, 2> resolution, const std::string& where) {
    reject_unknown_keys(spec, {"name", "params"}, where);
    if (!spec.contains("name")) throw ScenarioError("missing key 'name' in " + where);
    std::vector<double> params;
    if (spec.contains("params")) params = spec["params"].get<std::vector<double>>();
    return catalog(spec["name"].get<std::string>(), params, box, resolution);
}

}  // namespace detail

/// Space spec from JSON, e.g. {"kind":"lp","p":2} or
/// {"kind":"weighted_lp","p":2,"weight":{"name":"power_weight","params":[0.5]}}.
inline SpaceSpec parse_space(const nlohmann::json& j, const Cube& box,
                             std::array<int, 2> resolution) {
    using detail::reject_unknown_keys;
    using detail::require_number;
    if (!j.is_object() || !j.contains("kind"))
        throw ScenarioError("space spec must be an object with a 'kind'");
    std::string kind = j["kind"].get<std::string>();
    const std::string where = "space '" + kind + "'";
    if (kind == "lp") {
        reject_unknown_keys(j, {"kind", "p"}, where);
        double p = require_number(j, "p", where);
        if (!(p >= 1.0)) throw ScenarioError("lp: p must lie in [1, inf)");
        return LpSpace{p};
    }
    if (kind == "linf") {
        reject_unknown_keys(j, {"kind"}, where);
        return LinfSpace{};
    }
    if (kind == "weighted_lp") {
        reject_unknown_keys(j, {"kind", "p", "weight"}, where);
        double p = require_number(j, "p", where);
        if (!(p >= 1.0)) throw ScenarioError("weighted_lp: p must lie in [1, inf)");
        if (!j.contains("weight")) throw ScenarioError("weighted_lp: missing 'weight'");
        GridFunction w = detail::parse_grid_fn(j["weight"], box, resolution, where);
        return WeightedLpSpace{p, std::move(w)};
    }
    if (kind == "variable_lp") {
        reject_unknown_keys(j, {"kind", "exponent", "p_lo", "p_hi"}, where);
        if (j.contains("exponent"))
            return VariableLpSpace{detail::parse_grid_fn(j["exponent"], box, resolution, where)};
        double plo = require_number(j, "p_lo", where);
        double phi = require_number(j, "p_hi", where);
        if (!(plo > 1.0) || !(phi > 1.0))
            throw ScenarioError("variable_lp: exponents must exceed 1");
        double lo = box.lo(0), edge = box.edge;
        return VariableLpSpace{sample_function(
            [=](std::array<double, 2> pt) { return plo + (phi - plo) * (pt[0] - lo) / edge; },
            box, resolution)};
    }
    if (kind == "mixed") {
        reject_unknown_keys(j, {"kind", "p"}, where);
        if (!j.contains("p") || !j["p"].is_array() || j["p"].size() != 2)
            throw ScenarioError("mixed: 'p' must be a two-entry array");
        std::array<double, 2> p{j["p"][0].get<double>(), j["p"][1].get<double>()};
        if (!(p[0] >= 1.0) || !(p[1] >= 1.0))
            throw ScenarioError("mixed: exponents must lie in [1, inf)");
        return MixedNormSpace{p};
    }
    if (kind == "morrey") {
        reject_unknown_keys(j, {"kind", "p", "q"}, where);
        double p = require_number(j, "p", where), q = require_number(j, "q", where);
        if (!(q > 1.0) || !(q <= p)) throw ScenarioError("morrey: need 1 < q <= p");
        return MorreySpace{p, q};
    }
    if (kind == "lorentz") {
        reject_unknown_keys(j, {"kind", "p", "q"}, where);
        double p = require_number(j, "p", where), q = require_number(j, "q", where);
        if (!(p > 1.0) || !(q > 1.0)) throw ScenarioError("lorentz: need p, q in (1, inf)");
        return LorentzSpace{p, q};
    }
    if (kind == "herz") {
        reject_unknown_keys(j, {"kind", "alpha", "p", "q", "homogeneous"}, where);
        double a = require_number(j, "alpha", where);
        double p = require_number(j, "p", where), q = require_number(j, "q", where);
        bool hom = j.value("homogeneous", true);
        if (!(p >= 1.0) || !(q >= 1.0)) throw ScenarioError("herz: need p, q in [1, inf)");
        return HerzSpace{a, p, q, hom};
    }
    throw ScenarioError("unknown space kind '" + kind + "'");
}

/// Compact CLI shorthand: l1, l2, linf, lp:P, wlp:P:DELTA (power weight),
/// vlp:PLO:PHI, mixed:P1:P2, morrey:P:Q, lorentz:P:Q, herz:A:P:Q[:inhom].
inline SpaceSpec parse_space_string(const std::string& s, const Cube& box,
                                    std::array<int, 2> resolution) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw ScenarioError("empty space spec");
    auto num = [&](std::size_t i) {
        try {
            return std::stod(parts.at(i));
        } catch (const std::exception&) {
            throw ScenarioError("bad number in space spec '" + s + "'");
        }
    };
    const std::string& kind = parts[0];
    nlohmann::json j;
    if (kind == "l1") j = {{"kind", "lp"}, {"p", 1.0}};
    else if (kind == "l2") j = {{"kind", "lp"}, {"p", 2.0}};
    else if (kind == "linf") j = {{"kind", "linf"}};
    else if (kind == "lp" && parts.size() == 2) j = {{"kind", "lp"}, {"p", num(1)}};
    else if (kind == "wlp" && parts.size() == 3) {
        j = {{"kind", "weighted_lp"},
             {"p", num(1)},
             {"weight", {{"name", "power_weight"}, {"params", {num(2)}}}}};
    } else if (kind == "vlp" && parts.size() == 3)
        j = {{"kind", "variable_lp"}, {"p_lo", num(1)}, {"p_hi", num(2)}};
    else if (kind == "mixed" && parts.size() == 3)
        j = {{"kind", "mixed"}, {"p", {num(1), num(2)}}};
    else if (kind == "morrey" && parts.size() == 3)
        j = {{"kind", "morrey"}, {"p", num(1)}, {"q", num(2)}};
    else if (kind == "lorentz" && parts.size() == 3)
        j = {{"kind", "lorentz"}, {"p", num(1)}, {"q", num(2)}};
    else if (kind == "herz" && (parts.size() == 4 || parts.size() == 5)) {
        bool hom = parts.size() == 4 || parts[4] != "inhom";
        j = {{"kind", "herz"}, {"alpha", num(1)}, {"p", num(2)}, {"q", num(3)},
             {"homogeneous", hom}};
    } else
        throw ScenarioError("unknown space spec '" + s + "'");
    return parse_space(j, box, resolution);
}

namespace detail {

inline CurveConfig default_curve_config(const Cube& box, std::array<int, 2> resolution) {
    CurveConfig cfg;
    double margin = box.edge / 8.0;
    Cube domain{box.center, box.edge - 2.0 * margin, box.dim};
    cfg.domain = domain;
    double h = box.edge / resolution[0];
    for (double a = domain.edge / 2.0; a >= 8.0 * h; a *= 0.5) cfg.small_scales.push_back(a);
    if (cfg.small_scales.empty()) cfg.small_scales.push_back(domain.edge / 2.0);
    for (double a = domain.edge / 8.0; a <= domain.edge * (1 + 1e-12); a *= 2.0)
        cfg.large_scales.push_back(a);
    cfg.far_base = Cube{box.center, domain.edge / 16.0, box.dim};
    double maxshift = domain.hi(0) - cfg.far_base.hi(0);
    for (double z = maxshift / 8.0; z <= maxshift * (1 + 1e-12); z *= 2.0)
        cfg.shifts.push_back(z);
    return cfg;
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& j) {
    using detail::reject_unknown_keys;
    if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
    reject_unknown_keys(j,
                        {"function", "alpha", "spaces", "dim", "box", "resolution", "curves",
                         "thresholds", "seed"},
                        "scenario");
    Scenario sc;
    if (!j.contains("function")) throw ScenarioError("missing key 'function' in scenario");
    sc.alpha = j.contains("alpha") ? j["alpha"].get<double>() : 0.0;
    if (sc.alpha < 0.0 || sc.alpha > 1.0)
        throw ScenarioError("alpha must lie in [0,1]");
    sc.dim = j.value("dim", 1);
    if (sc.dim != 1 && sc.dim != 2) throw ScenarioError("dim must be 1 or 2");

    if (j.contains("box")) {
        reject_unknown_keys(j["box"], {"center", "edge"}, "box");
        auto c = j["box"].value("center", std::vector<double>{0.0});
        double edge = detail::require_number(j["box"], "edge", "box");
        std::array<double, 2> ctr{c.size() > 0 ? c[0] : 0.0, c.size() > 1 ? c[1] : 0.0};
        sc.box = Cube{ctr, edge, sc.dim};
    } else {
        sc.box = Cube{{0.0, 0.0}, 4.0, sc.dim};
    }
    int defres = sc.dim == 1 ? 4096 : 256;
    int res = j.value("resolution", defres);
    if (res < 8) throw ScenarioError("resolution too small");
    sc.resolution = {res, sc.dim == 2 ? res : 1};

    const auto& fn = j["function"];
    if (fn.contains("samples")) {
        reject_unknown_keys(fn, {"samples"}, "function");
        sc.inline_samples = fn["samples"].get<std::vector<double>>();
        std::size_t expect =
            static_cast<std::size_t>(sc.resolution[0]) * sc.resolution[1];
        if (sc.inline_samples->size() != expect)
            throw ScenarioError("inline sample table size does not match resolution");
    } else {
        reject_unknown_keys(fn, {"name", "params"}, "function");
        if (!fn.contains("name")) throw ScenarioError("missing key 'name' in function");
        sc.fn_name = fn["name"].get<std::string>();
        if (fn.contains("params")) sc.fn_params = fn["params"].get<std::vector<double>>();
        // validate eagerly on a coarse grid so bad params fail at load time
        catalog(sc.fn_name, sc.fn_params, sc.box, {16, sc.dim == 2 ? 16 : 1});
    }

    if (j.contains("spaces")) {
        if (!j["spaces"].is_array()) throw ScenarioError("'spaces' must be an array");
        for (const auto& sj : j["spaces"]) sc.spaces.push_back(parse_space(sj, sc.box, sc.resolution));
    }
    if (sc.spaces.empty()) sc.spaces.push_back(LpSpace{1.0});

    sc.curves = detail::default_curve_config(sc.box, sc.resolution);
    if (j.contains("curves")) {
        sc.curves_defaulted = false;
        const auto& cj = j["curves"];
        reject_unknown_keys(cj, {"small_scales", "shifts", "large_scales", "domain_edge",
                                 "far_base_edge"},
                            "curves");
        if (cj.contains("small_scales"))
            sc.curves.small_scales = cj["small_scales"].get<std::vector<double>>();
        if (cj.contains("shifts")) sc.curves.shifts = cj["shifts"].get<std::vector<double>>();
        if (cj.contains("large_scales"))
            sc.curves.large_scales = cj["large_scales"].get<std::vector<double>>();
        if (cj.contains("domain_edge"))
            sc.curves.domain = Cube{sc.box.center, cj["domain_edge"].get<double>(), sc.dim};
        if (cj.contains("far_base_edge"))
            sc.curves.far_base =
                Cube{sc.box.center, cj["far_base_edge"].get<double>(), sc.dim};
    }
    double h = sc.box.edge / sc.resolution[0];
    for (double a : sc.curves.small_scales)
        if (a < 4.0 * h * (1.0 - 1e-12))
            throw ScenarioError("curves: scale below 4 cells is unresolvable");

    if (j.contains("thresholds")) {
        reject_unknown_keys(j["thresholds"], {"theta", "floor_frac"}, "thresholds");
        sc.thresholds.theta = j["thresholds"].value("theta", sc.thresholds.theta);
        sc.thresholds.floor_frac =
            j["thresholds"].value("floor_frac", sc.thresholds.floor_frac);
    }
    sc.seed = j.value("seed", 0ull);
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    return parse_scenario(j);
}

}  // namespace campanato
