#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "campanato/grid_function.hpp"

namespace campanato {

struct CatalogEntry {
    enum class Provenance { classical, synthetic };
    std::string name;
    std::string params_doc;
    std::string description;
    Provenance provenance;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"loglog", "", "log log(1/|x|) on |x| <= 1/e, zero outside; half-cell clamp at 0",
         CatalogEntry::Provenance::classical},
        {"log_abs", "", "log|x|, half-cell clamp at 0, truncated outside the box",
         CatalogEntry::Provenance::classical},
        {"abs_pow", "alpha in (0,1]", "|x|^alpha", CatalogEntry::Provenance::synthetic},
        {"bump", "[radius > 0, default 1]",
         "normalized quartic bump c (1-|x/r|^2)^4 on |x| < r, unit mass",
         CatalogEntry::Provenance::classical},
        {"sign", "", "sign of the first coordinate (nearest-neighbour evaluation)",
         CatalogEntry::Provenance::synthetic},
        {"poly", "coefficients, graded monomial order",
         "polynomial over the whole box", CatalogEntry::Provenance::synthetic},
        {"power_weight", "delta > -n", "|x|^delta, half-cell clamp at 0",
         CatalogEntry::Provenance::synthetic},
    };
    return entries;
}

/// Unit-mass normalization constant of (1-|x|^2)^4 on the unit ball.
inline double bump_norm_constant(int dim) {
    return dim == 1 ? 315.0 / 256.0 : 5.0 / std::numbers::pi;
}

namespace detail {

inline double radius(const std::array<double, 2>& p, int dim) {
    return dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]);
}

inline double poly_eval(std::span<const double> coeffs, const std::array<double, 2>& p,
                        int dim) {
    if (dim == 1) {
        double s = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) s = s * p[0] + coeffs[k];
        return s;
    }
    // graded order: 1, x, y, x^2, xy, y^2, x^3, ...
    double s = 0.0;
    std::size_t idx = 0;
    for (int deg = 0; idx < coeffs.size(); ++deg)
        for (int ky = 0; ky <= deg && idx < coeffs.size(); ++ky, ++idx)
            s += coeffs[idx] * std::pow(p[0], deg - ky) * std::pow(p[1], ky);
    return s;
}

}  // namespace detail

/// Build a named catalog function sampled on the given grid. Deterministic
/// for fixed name, params and grid. Unknown names and out-of-range
/// parameters are rejected.
inline GridFunction catalog(const std::string& name, std::span<const double> params,
                            const Cube& box, std::array<int, 2> samples) {
    const int n = box.dim;
    double clamp = 0.5 * box.edge / samples[0];
    if (n == 2) clamp = std::min(clamp, 0.5 * box.edge / samples[1]);

    if (name == "loglog") {
        if (!params.empty()) throw std::invalid_argument("catalog: loglog takes no params");
        return sample_function(
            [=](std::array<double, 2> p) {
                double r = detail::radius(p, n);
                if (r > 1.0 / std::numbers::e) return 0.0;
                return std::log(std::log(1.0 / std::max(r, clamp)));
            },
            box, samples);
    }
    if (name == "log_abs") {
        if (!params.empty()) throw std::invalid_argument("catalog: log_abs takes no params");
        return sample_function(
            [=](std::array<double, 2> p) {
                return std::log(std::max(detail::radius(p, n), clamp));
            },
            box, samples);
    }
    if (name == "abs_pow") {
        if (params.size() != 1 || !(params[0] > 0.0) || params[0] > 1.0)
            throw std::invalid_argument("catalog: abs_pow requires alpha in (0,1]");
        double a = params[0];
        return sample_function(
            [=](std::array<double, 2> p) { return std::pow(detail::radius(p, n), a); }, box,
            samples);
    }
    if (name == "bump") {
        double r0 = 1.0;
        if (params.size() > 1) throw std::invalid_argument("catalog: bump takes [radius]");
        if (params.size() == 1) {
            if (!(params[0] > 0.0)) throw std::invalid_argument("catalog: bump radius > 0");
            r0 = params[0];
        }
        double c = bump_norm_constant(n) / (n == 1 ? r0 : r0 * r0);
        return sample_function(
            [=](std::array<double, 2> p) {
                double u = detail::radius(p, n) / r0;
                if (u >= 1.0) return 0.0;
                double w = 1.0 - u * u;
                double w2 = w * w;
                return c * w2 * w2;
            },
            box, samples);
    }
    if (name == "sign") {
        if (!params.empty()) throw std::invalid_argument("catalog: sign takes no params");
        return sample_function(
            [](std::array<double, 2> p) { return p[0] > 0 ? 1.0 : (p[0] < 0 ? -1.0 : 0.0); },
            box, samples, EvalMode::nearest);
    }
    if (name == "poly") {
        if (params.empty()) throw std::invalid_argument("catalog: poly requires coefficients");
        std::vector<double> c(params.begin(), params.end());
        return sample_function(
            [=](std::array<double, 2> p) { return detail::poly_eval(c, p, n); }, box, samples);
    }
    if (name == "power_weight") {
        if (params.size() != 1 || !(params[0] > -static_cast<double>(n)))
            throw std::invalid_argument("catalog: power_weight requires delta > -n");
        double d = params[0];
        return sample_function(
            [=](std::array<double, 2> p) {
                return std::pow(std::max(detail::radius(p, n), clamp), d);
            },
            box, samples);
    }
    throw std::invalid_argument("catalog: unknown name '" + name + "'");
}

inline GridFunction catalog(const std::string& name, std::initializer_list<double> params,
                            const Cube& box, std::array<int, 2> samples) {
    return catalog(name, std::span<const double>(params.begin(), params.size()), box,
                   samples);
}

}  // namespace campanato

