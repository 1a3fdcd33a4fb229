#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "campanato/oscillation.hpp"
#include "campanato/parallel.hpp"
#include "campanato/spaces.hpp"

namespace campanato {

enum class CurveAxis { small_scale, shift_distance, large_scale };

inline const char* curve_axis_name(CurveAxis a) {
    switch (a) {
        case CurveAxis::small_scale: return "small_scale";
        case CurveAxis::shift_distance: return "shift_distance";
        case CurveAxis::large_scale: return "large_scale";
    }
    return "?";
}

/// Sampled scale -> sup-oscillation curve over a named cube family.
struct DecayCurve {
    CurveAxis axis = CurveAxis::small_scale;
    std::vector<std::pair<double, double>> points;  // (parameter, value)
    std::string family;

    double max_value() const {
        double m = 0.0;
        for (const auto& [p, v] : points) m = std::max(m, v);
        return m;
    }
    /// Value at the extreme parameter in the vanishing direction.
    double last_value() const { return points.back().second; }
};

namespace detail {

inline void require_strictly_monotone(const std::vector<double>& xs, bool ascending,
                                      const char* what) {
    if (xs.empty()) throw std::invalid_argument(std::string(what) + ": empty parameter list");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        bool ok = ascending ? xs[i] > xs[i - 1] : xs[i] < xs[i - 1];
        if (!ok)
            throw std::invalid_argument(std::string(what) +
                                        ": parameters must be strictly monotone");
    }
}

// Lattice-anchored cubes of a fixed edge inside D, quarter-edge stride.
// The sup over the family is exact and order-independent.
struct LevelFamily {
    std::vector<Cube> cubes;
};

inline LevelFamily level_family(const GridFunction& f, const Cube& D, double edge) {
    LevelFamily fam;
    double hx = f.cell(0);
    int k = static_cast<int>(std::llround(edge / hx));
    if (k < 4) return fam;
    int stride = std::max(1, k / 4);
    auto anchors = [&](int ax) {
        std::vector<int> as;
        double h = f.cell(ax);
        int kk = static_cast<int>(std::llround(edge / h));
        int i0 = std::max(
            0, static_cast<int>(std::ceil((D.lo(ax) - f.box().lo(ax)) / h - 1e-9)));
        int i1 = std::min(f.samples(ax),
                          static_cast<int>(std::floor((D.hi(ax) - f.box().lo(ax)) / h + 1e-9)));
        for (int i = i0; i + kk <= i1; i += stride) as.push_back(i);
        // keep the right-flush cube so the family spans all of D
        if (!as.empty() && as.back() + kk < i1) as.push_back(i1 - kk);
        return as;
    };
    std::vector<int> ax0 = anchors(0);
    if (f.dim() == 1) {
        for (int i : ax0) {
            double lo = f.box().lo(0) + i * f.cell(0);
            fam.cubes.push_back(Cube{{lo + 0.5 * edge, 0.0}, edge, 1});
        }
        return fam;
    }
    std::vector<int> ax1 = anchors(1);
    for (int j : ax1)
        for (int i : ax0) {
            double lox = f.box().lo(0) + i * f.cell(0);
            double loy = f.box().lo(1) + j * f.cell(1);
            fam.cubes.push_back(Cube{{lox + 0.5 * edge, loy + 0.5 * edge}, edge, 2});
        }
    return fam;
}

inline double family_sup(const GridFunction& f, double alpha, const SpaceSpec& X,
                         const LevelFamily& fam) {
    if (fam.cubes.empty()) return -1.0;
    return parallel_max(static_cast<std::int64_t>(fam.cubes.size()), [&](std::int64_t i) {
        return osc_x(f, fam.cubes[static_cast<std::size_t>(i)], alpha, X);
    });
}

// Caches per-edge sups so dyadic scale chains share work.
class LevelSupCache {
  public:
    LevelSupCache(const GridFunction& f, double alpha, const SpaceSpec& X, const Cube& D)
        : f_(f), alpha_(alpha), X_(X), D_(D) {}

    std::optional<double> sup_at(double edge) {
        auto it = cache_.find(edge);
        if (it != cache_.end()) return it->second;
        LevelFamily fam = level_family(f_, D_, edge);
        std::optional<double> v;
        if (!fam.cubes.empty()) v = family_sup(f_, alpha_, X_, fam);
        cache_.emplace(edge, v);
        return v;
    }

  private:
    const GridFunction& f_;
    double alpha_;
    const SpaceSpec& X_;
    Cube D_;
    std::map<double, std::optional<double>> cache_;
};

inline std::string family_descriptor(const GridFunction& f, const Cube& D) {
    std::ostringstream os;
    os << "lattice-anchored cubes in " << D.describe() << ", dyadic edges, quarter-edge stride"
       << ", grid " << f.samples(0);
    if (f.dim() == 2) os << "x" << f.samples(1);
    return os.str();
}

}  // namespace detail

/// sup over {Q ⊂ D, ℓ(Q) <= a} of O_{alpha,X}, sampled at descending scales.
/// Cubes run over dyadic edges from each scale down to the smallest
/// resolvable one (4 cells), anchored on the lattice.
inline DecayCurve small_cube_curve(const GridFunction& f, double alpha, const SpaceSpec& X,
                                   const std::vector<double>& scales, const Cube& D) {
    detail::require_strictly_monotone(scales, /*ascending=*/false, "small_cube_curve");
    detail::LevelSupCache cache(f, alpha, X, D);
    DecayCurve curve{CurveAxis::small_scale, {}, detail::family_descriptor(f, D)};
    for (double a : scales) {
        double sup = 0.0;
        bool any = false;
        for (double e = a; e >= 4.0 * f.cell(0) * (1.0 - 1e-12); e *= 0.5) {
            auto v = cache.sup_at(e);
            if (v) {
                sup = std::max(sup, *v);
                any = true;
            }
        }
        if (!any)
            throw std::runtime_error("small_cube_curve: empty cube family at scale " +
                                     std::to_string(a));
        curve.points.emplace_back(a, sup);
    }
    return curve;
}

/// O_{alpha,X}(f; Q + z·ray) along ascending shift distances. Shifts are
/// snapped to the lattice so translated cubes stay aligned.
inline DecayCurve far_cube_curve(const GridFunction& f, double alpha, const SpaceSpec& X,
                                 const Cube& Q, const std::vector<double>& shifts,
                                 const std::vector<std::array<double, 2>>& rays = {
                                     {1.0, 0.0}}) {
    detail::require_strictly_monotone(shifts, /*ascending=*/true, "far_cube_curve");
    if (rays.empty()) throw std::invalid_argument("far_cube_curve: no rays");
    DecayCurve curve{CurveAxis::shift_distance, {}, ""};
    std::ostringstream os;
    os << "base cube " << Q.describe() << " shifted along " << rays.size()
       << " ray(s), lattice-snapped";
    curve.family = os.str();
    curve.points.resize(shifts.size());
    parallel_for(static_cast<std::int64_t>(shifts.size()), [&](std::int64_t si) {
        double z = shifts[static_cast<std::size_t>(si)];
        double worst = 0.0;
        for (const auto& ray : rays) {
            std::array<double, 2> offset{z * ray[0], z * ray[1]};
            for (int ax = 0; ax < f.dim(); ++ax)
                offset[ax] = std::round(offset[ax] / f.cell(ax)) * f.cell(ax);
            Cube shifted = Q.translated(offset);
            if (!f.box().contains(shifted))
                throw std::runtime_error("far_cube_curve: shifted cube exits the box");
            worst = std::max(worst, osc_x(f, shifted, alpha, X));
        }
        curve.points[static_cast<std::size_t>(si)] = {z, worst};
    });
    return curve;
}

/// sup over {Q ⊂ D, ℓ(Q) >= a} of O_{alpha,X}, sampled at ascending scales;
/// dyadic edges from each scale up to ℓ(D).
inline DecayCurve large_cube_curve(const GridFunction& f, double alpha, const SpaceSpec& X,
                                   const std::vector<double>& scales, const Cube& D) {
    detail::require_strictly_monotone(scales, /*ascending=*/true, "large_cube_curve");
    detail::LevelSupCache cache(f, alpha, X, D);
    DecayCurve curve{CurveAxis::large_scale, {}, detail::family_descriptor(f, D)};
    for (double a : scales) {
        double sup = 0.0;
        bool any = false;
        for (double e = a; e <= D.edge * (1.0 + 1e-12); e *= 2.0) {
            auto v = cache.sup_at(e);
            if (v) {
                sup = std::max(sup, *v);
                any = true;
            }
        }
        if (!any)
            throw std::runtime_error("large_cube_curve: empty cube family at scale " +
                                     std::to_string(a));
        curve.points.emplace_back(a, sup);
    }
    return curve;
}

struct Thresholds {
    double theta = 0.2;       // relative: last <= theta * max(curve)
    double floor_frac = 0.02; // absolute floor as a fraction of the global sup
};

struct VanishingFlags {
    bool bounded = false;
    bool small_vanish = false;
    bool far_vanish = false;
    bool large_vanish = false;

    bool operator==(const VanishingFlags&) const = default;
};

struct CurveConfig {
    std::vector<double> small_scales;  // descending
    std::vector<double> shifts;        // ascending
    std::vector<double> large_scales;  // ascending
    Cube domain;                       // D for the scale families
    Cube far_base;                     // fixed cube for the shift family
    std::vector<std::array<double, 2>> rays{{1.0, 0.0}};
};

/// Raw curves plus the threshold decisions. Flags are independent evidence;
/// the nesting of the underlying spaces is recorded as a separate
/// consistency bit, never enforced.
struct VanishingReport {
    double alpha = 0.0;
    std::string space;
    VanishingFlags flags;
    DecayCurve small, far, large;
    double global_sup = 0.0;
    Thresholds thresholds;
    bool nesting_consistent = true;

    std::string summary() const {
        std::ostringstream os;
        os << space << ": bounded=" << flags.bounded << " small=" << flags.small_vanish
           << " far=" << flags.far_vanish << " large=" << flags.large_vanish
           << " sup=" << global_sup;
        return os.str();
    }
};

inline VanishingReport classify(const GridFunction& f, double alpha, const SpaceSpec& X,
                                const CurveConfig& cfg, Thresholds thr = {}) {
    VanishingReport rep;
    rep.alpha = alpha;
    rep.space = space_name(X);
    rep.thresholds = thr;
    rep.small = small_cube_curve(f, alpha, X, cfg.small_scales, cfg.domain);
    rep.far = far_cube_curve(f, alpha, X, cfg.far_base, cfg.shifts, cfg.rays);
    rep.large = large_cube_curve(f, alpha, X, cfg.large_scales, cfg.domain);
    rep.global_sup =
        std::max({rep.small.max_value(), rep.far.max_value(), rep.large.max_value()});
    double floor = thr.floor_frac * rep.global_sup;
    auto vanishes = [&](const DecayCurve& c) {
        return c.last_value() <= thr.theta * c.max_value() + 1e-300 &&
               c.last_value() <= floor + 1e-300;
    };
    rep.flags.bounded = std::isfinite(rep.global_sup);
    rep.flags.small_vanish = vanishes(rep.small);
    rep.flags.far_vanish = vanishes(rep.far);
    rep.flags.large_vanish = vanishes(rep.large);
    rep.nesting_consistent =
        !rep.flags.large_vanish || (rep.flags.far_vanish && rep.flags.small_vanish);
    return rep;
}

/// Per-space reports over identical cube families, with pairwise curve
/// ratios against the L1 baseline and the flag-agreement verdict.
struct CrossSpaceComparison {
    std::vector<VanishingReport> reports;  // same order as the input spaces
    VanishingReport baseline;              // L1
    struct RatioSummary {
        std::string space;
        double max_ratio = 0.0;  // max over sampled scales of curve_X / curve_L1
        double min_ratio = 0.0;
    };
    std::vector<RatioSummary> small_ratios;
    bool flags_agree = false;
};

inline CrossSpaceComparison cross_space_compare(const GridFunction& f, double alpha,
                                                const std::vector<SpaceSpec>& spaces,
                                                const CurveConfig& cfg, Thresholds thr = {}) {
    if (spaces.size() < 2)
        throw std::invalid_argument("cross_space_compare: need at least two spaces");
    CrossSpaceComparison out;
    out.baseline = classify(f, alpha, LpSpace{1.0}, cfg, thr);
    for (const auto& X : spaces) out.reports.push_back(classify(f, alpha, X, cfg, thr));
    for (const auto& rep : out.reports) {
        CrossSpaceComparison::RatioSummary rs;
        rs.space = rep.space;
        rs.max_ratio = 0.0;
        rs.min_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rep.small.points.size(); ++i) {
            double base = out.baseline.small.points[i].second;
            double val = rep.small.points[i].second;
            if (base <= 0.0 && val <= 0.0) continue;
            double r = base > 0.0 ? val / base : std::numeric_limits<double>::infinity();
            rs.max_ratio = std::max(rs.max_ratio, r);
            rs.min_ratio = std::min(rs.min_ratio, r);
        }
        if (!std::isfinite(rs.min_ratio)) rs.min_ratio = 0.0;  // all-zero curves
        out.small_ratios.push_back(rs);
    }
    out.flags_agree = true;
    for (const auto& rep : out.reports)
        if (!(rep.flags == out.reports.front().flags)) out.flags_agree = false;
    return out;
}

}  // namespace campanato
