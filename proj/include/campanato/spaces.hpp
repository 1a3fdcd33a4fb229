#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "campanato/grid_function.hpp"
#include "campanato/parallel.hpp"
#include "campanato/polynomial.hpp"

namespace campanato {

// ---------------------------------------------------------------------------
// SpaceSpec: one tag per concrete ball Banach function space backend.
// ---------------------------------------------------------------------------

struct LpSpace {
    double p;
};
struct LinfSpace {};
struct WeightedLpSpace {
    double p;
    GridFunction weight;
};
struct VariableLpSpace {
    GridFunction exponent;  // values in (1, inf)
};
struct MixedNormSpace {
    std::array<double, 2> p;  // inner axis first
};
struct MorreySpace {
    double p, q;  // 1 < q <= p < inf
};
struct LorentzSpace {
    double p, q;  // p, q in (1, inf)
};
struct HerzSpace {
    double alpha;
    double p, q;
    bool homogeneous = true;
};

using SpaceSpec = std::variant<LpSpace, LinfSpace, WeightedLpSpace, VariableLpSpace,
                               MixedNormSpace, MorreySpace, LorentzSpace, HerzSpace>;

inline double conjugate_exponent(double p) { return p / (p - 1.0); }

namespace detail {
inline std::string trim_num(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}
}  // namespace detail

inline std::string space_name(const SpaceSpec& X) {
    using detail::trim_num;
    struct V {
        std::string operator()(const LpSpace& s) const { return "L" + trim_num(s.p); }
        std::string operator()(const LinfSpace&) const { return "Linf"; }
        std::string operator()(const WeightedLpSpace& s) const {
            return "L" + trim_num(s.p) + "_w";
        }
        std::string operator()(const VariableLpSpace&) const { return "Lp(.)"; }
        std::string operator()(const MixedNormSpace& s) const {
            return "L(" + trim_num(s.p[0]) + "," + trim_num(s.p[1]) + ")";
        }
        std::string operator()(const MorreySpace& s) const {
            return "Morrey(" + trim_num(s.p) + "," + trim_num(s.q) + ")";
        }
        std::string operator()(const LorentzSpace& s) const {
            return "Lorentz(" + trim_num(s.p) + "," + trim_num(s.q) + ")";
        }
        std::string operator()(const HerzSpace& s) const {
            return std::string(s.homogeneous ? "Herz(" : "herz_inhom(") + trim_num(s.alpha) +
                   "," + trim_num(s.p) + "," + trim_num(s.q) + ")";
        }
    };
    return std::visit(V{}, X);
}

namespace detail {

// Flattened view of f·1_support: per cell its value, clipped measure and center.
struct SupportView {
    std::vector<double> value, weight;
    std::vector<std::array<double, 2>> center;
    double total_measure = 0.0;
};

inline SupportView support_view(const GridFunction& f, const Cube& S) {
    if (S.dim != f.dim()) throw std::invalid_argument("norm: dimension mismatch");
    SupportView sv;
    for_each_cell(f, S, [&](double v, double w, std::array<double, 2> p) {
        if (w <= 0.0) return;
        if (!std::isfinite(v)) throw std::runtime_error("non-finite integrand");
        sv.value.push_back(v);
        sv.weight.push_back(w);
        sv.center.push_back(p);
        sv.total_measure += w;
    });
    return sv;
}

inline double lp_norm(const SupportView& sv, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < sv.value.size(); ++i)
        s += sv.weight[i] * std::pow(std::abs(sv.value[i]), p);
    return std::pow(s, 1.0 / p);
}

// Mean of f* over (0,t) on the discrete measure space: the sup-over-sets
// average sup_{|E|>=t} (1/|E|)∫_E|f|. `groups` holds (value, measure) sorted
// by decreasing value with ties merged.
struct Rearrangement {
    std::vector<std::pair<double, double>> groups;
    double positive_measure = 0.0;  // measure of {f != 0}
    double mass = 0.0;              // ∫|f|
};

inline Rearrangement rearrange(const SupportView& sv) {
    std::vector<std::pair<double, double>> cells;
    cells.reserve(sv.value.size());
    for (std::size_t i = 0; i < sv.value.size(); ++i) {
        double a = std::abs(sv.value[i]);
        if (a > 0.0) cells.emplace_back(a, sv.weight[i]);
    }
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    Rearrangement r;
    for (const auto& [v, w] : cells) {
        if (!r.groups.empty() && r.groups.back().first == v)
            r.groups.back().second += w;
        else
            r.groups.emplace_back(v, w);
        r.positive_measure += w;
        r.mass += v * w;
    }
    return r;
}

inline double double_star(const Rearrangement& r, double t) {
    if (t <= 0.0 || r.groups.empty()) return r.groups.empty() ? 0.0 : r.groups.front().first;
    double cumM = 0.0, cumS = 0.0;
    for (const auto& [v, w] : r.groups) {
        if (t <= cumM + w) return (cumS + v * (t - cumM)) / t;
        cumM += w;
        cumS += v * w;
    }
    return cumS / t;  // all mass counted
}

}  // namespace detail

/// f**(t) for f·1_support on the sampled measure space. Exposed for the
/// exhaustive subset cross-check.
inline double rearrangement_average(const GridFunction& f, const Cube& support, double t) {
    return detail::double_star(detail::rearrange(detail::support_view(f, support)), t);
}

namespace detail {

inline double lorentz_norm(const SupportView& sv, double p, double q) {
    Rearrangement r = rearrange(sv);
    if (r.groups.empty()) return 0.0;
    // head: f** is constant v1 on (0, M1)
    double v1 = r.groups.front().first;
    double M1 = r.groups.front().second;
    double total = std::pow(v1, q) * std::pow(M1, q / p) * (p / q);
    // middle pieces: f**(t) = v_k + C_k/t on [M_{k-1}, M_k)
    double cumM = M1, cumS = v1 * M1;
    for (std::size_t k = 1; k < r.groups.size(); ++k) {
        auto [v, w] = r.groups[k];
        double C = cumS - v * cumM;
        double a = cumM, b = cumM + w;
        // Simpson on t^{q/p-1} (v + C/t)^q, panels scaled to piece length
        auto g = [&](double t) { return std::pow(t, q / p - 1.0) * std::pow(v + C / t, q); };
        int panels = 8;
        double hseg = (b - a) / panels, acc = 0.0;
        for (int i = 0; i < panels; ++i) {
            double x0 = a + i * hseg;
            acc += hseg / 6.0 * (g(x0) + 4.0 * g(x0 + 0.5 * hseg) + g(x0 + hseg));
        }
        total += acc;
        cumM = b;
        cumS += v * w;
    }
    // analytic tail: f**(t) = mass/t for t >= positive_measure
    total += std::pow(r.mass, q) * std::pow(r.positive_measure, q / p - q) *
             (conjugate_exponent(p) / q);
    return std::pow(total, 1.0 / q);
}

inline double morrey_norm(const SupportView& sv, double p, double q, const Cube& S,
                          double min_cell, int dim) {
    if (sv.value.empty()) return 0.0;
    // sampled ball family: centers on every 8th support cell, dyadic radii
    // from the cell size to the support diameter
    std::vector<std::array<double, 2>> centers;
    for (std::size_t i = 0; i < sv.center.size(); i += 8) centers.push_back(sv.center[i]);
    if (centers.empty()) throw std::runtime_error("empty sampled ball family");
    std::vector<double> radii;
    for (double r = min_cell; r <= S.diameter() * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);
    if (radii.empty()) radii.push_back(S.diameter());

    double best = 0.0;
    std::vector<double> per_center(centers.size(), 0.0);
    parallel_for(static_cast<std::int64_t>(centers.size()), [&](std::int64_t ci) {
        const auto& c = centers[static_cast<std::size_t>(ci)];
        double local = 0.0;
        for (double r : radii) {
            double s = 0.0;
            double r2 = r * r;
            for (std::size_t i = 0; i < sv.value.size(); ++i) {
                double dx = sv.center[i][0] - c[0];
                double dy = dim == 2 ? sv.center[i][1] - c[1] : 0.0;
                if (dx * dx + dy * dy < r2)
                    s += sv.weight[i] * std::pow(std::abs(sv.value[i]), q);
            }
            double volB = dim == 1 ? 2.0 * r : std::numbers::pi * r * r;
            local = std::max(local, std::pow(volB, 1.0 / p - 1.0 / q) * std::pow(s, 1.0 / q));
        }
        per_center[static_cast<std::size_t>(ci)] = local;
    });
    for (double v : per_center) best = std::max(best, v);
    return best;
}

inline double herz_norm(const SupportView& sv, const HerzSpace& hz, double min_cell, int dim) {
    double nd = static_cast<double>(dim);
    if (!(hz.alpha > -nd * (1.0 - 1.0 / hz.q)) || !(hz.alpha < nd / hz.q))
        throw std::invalid_argument("herz: alpha outside (-n(1-1/q), n/q)");
    // dyadic annuli 2^{k-1} <= |x| < 2^k; annuli thinner than a cell are
    // merged into the smallest resolvable one
    int k_merge = static_cast<int>(std::ceil(std::log2(std::max(min_cell, 1e-300)))) + 1;
    auto bin_of = [&](const std::array<double, 2>& c) {
        double r = dim == 1 ? std::abs(c[0]) : std::hypot(c[0], c[1]);
        int k = r > 0.0 ? static_cast<int>(std::floor(std::log2(r))) + 1
                        : std::numeric_limits<int>::min();
        return std::max(k, k_merge);
    };
    std::map<int, double> qsum;  // k -> ∫_{annulus} |f|^q
    for (std::size_t i = 0; i < sv.value.size(); ++i)
        qsum[bin_of(sv.center[i])] += sv.weight[i] * std::pow(std::abs(sv.value[i]), hz.q);

    double ball_q = 0.0;  // |x| < 1 portion, used by the non-homogeneous form
    double total = 0.0;
    for (const auto& [k, s] : qsum) {
        if (!hz.homogeneous && k <= 0) {
            ball_q += s;
            continue;
        }
        double term = std::pow(2.0, k * hz.alpha) * std::pow(s, 1.0 / hz.q);
        total += std::pow(term, hz.p);
    }
    if (!hz.homogeneous) total += std::pow(std::pow(ball_q, 1.0 / hz.q), hz.p);
    return std::pow(total, 1.0 / hz.p);
}

inline double variable_lp_norm(const SupportView& sv, const VariableLpSpace& X) {
    std::vector<double> pex(sv.value.size());
    double fmax = 0.0;
    for (std::size_t i = 0; i < sv.value.size(); ++i) {
        pex[i] = X.exponent.eval(sv.center[i]);
        if (!(pex[i] > 1.0) || !std::isfinite(pex[i]))
            throw std::invalid_argument("variable exponent must take values in (1, inf)");
        fmax = std::max(fmax, std::abs(sv.value[i]));
    }
    if (fmax == 0.0) return 0.0;
    auto modular = [&](double lam) {
        double s = 0.0;
        for (std::size_t i = 0; i < sv.value.size(); ++i)
            s += sv.weight[i] * std::pow(std::abs(sv.value[i]) / lam, pex[i]);
        return s;
    };
    // bracket, then extend geometrically if the initial guess is too tight
    double hi = std::max(modular(1.0) * (1.0 + fmax), 1e-12);
    for (int i = 0; i < 400 && modular(hi) > 1.0; ++i) hi *= 2.0;
    double lo = std::min(1e-12, hi / 2.0);
    for (int i = 0; i < 400 && modular(lo) <= 1.0 && lo > 1e-290; ++i) lo *= 0.5;
    double mlo = modular(lo);
    if (!std::isfinite(mlo)) throw std::runtime_error("variable Lp: modular non-finite");
    if (modular(hi) > 1.0) throw std::runtime_error("variable Lp: bisection fails to bracket");
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (modular(mid) <= 1.0 ? hi : lo) = mid;
    }
    return hi;  // smallest bracketed lambda with modular <= 1
}

inline double mixed_norm(const GridFunction& f, const Cube& S, const MixedNormSpace& X) {
    if (f.dim() == 1) {
        SupportView sv = support_view(f, S);
        return lp_norm(sv, X.p[0]);
    }
    AxisWindow wx = axis_window(f, 0, S.lo(0), S.hi(0));
    AxisWindow wy = axis_window(f, 1, S.lo(1), S.hi(1));
    if (wx.empty() || wy.empty()) return 0.0;
    double outer = 0.0;
    for (int j = wy.first; j <= wy.last; ++j) {
        double inner = 0.0;
        for (int i = wx.first; i <= wx.last; ++i) {
            double v = f.at(i, j);
            if (!std::isfinite(v)) throw std::runtime_error("non-finite integrand");
            inner += wx.weights[i - wx.first] * std::pow(std::abs(v), X.p[0]);
        }
        outer += wy.weights[j - wy.first] * std::pow(inner, X.p[1] / X.p[0]);
    }
    return std::pow(outer, 1.0 / X.p[1]);
}

}  // namespace detail

inline void validate_space(const SpaceSpec& X, int dim) {
    if (const auto* lp = std::get_if<LpSpace>(&X)) {
        if (!(lp->p >= 1.0) || !std::isfinite(lp->p))
            throw std::invalid_argument("Lp: p must lie in [1, inf)");
    } else if (const auto* w = std::get_if<WeightedLpSpace>(&X)) {
        if (!(w->p >= 1.0) || !std::isfinite(w->p))
            throw std::invalid_argument("weighted Lp: p must lie in [1, inf)");
        for (double v : w->weight.values())
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("weighted Lp: weight samples must be positive");
    } else if (const auto* m = std::get_if<MixedNormSpace>(&X)) {
        for (int ax = 0; ax < dim; ++ax)
            if (!(m->p[ax] >= 1.0) || !std::isfinite(m->p[ax]))
                throw std::invalid_argument("mixed norm: exponents must lie in [1, inf)");
    } else if (const auto* mo = std::get_if<MorreySpace>(&X)) {
        if (!(mo->q > 1.0) || !(mo->q <= mo->p) || !std::isfinite(mo->p))
            throw std::invalid_argument("Morrey: need 1 < q <= p < inf");
    } else if (const auto* lo = std::get_if<LorentzSpace>(&X)) {
        if (!(lo->p > 1.0) || !(lo->q > 1.0) || !std::isfinite(lo->p) || !std::isfinite(lo->q))
            throw std::invalid_argument("Lorentz: need p, q in (1, inf)");
    } else if (const auto* hz = std::get_if<HerzSpace>(&X)) {
        double nd = static_cast<double>(dim);
        if (!(hz->p >= 1.0) || !(hz->q >= 1.0))
            throw std::invalid_argument("Herz: need p, q in [1, inf)");
        if (!(hz->alpha > -nd * (1.0 - 1.0 / hz->q)) || !(hz->alpha < nd / hz->q))
            throw std::invalid_argument("herz: alpha outside (-n(1-1/q), n/q)");
    }
}

/// ‖f·1_support‖_X. The support cube should be lattice-aligned when
/// indicator exactness matters (reverse-Hölder style tests).
inline double norm(const SpaceSpec& X, const GridFunction& f, const Cube& support) {
    validate_space(X, f.dim());
    if (std::holds_alternative<MixedNormSpace>(X))
        return detail::mixed_norm(f, support, std::get<MixedNormSpace>(X));

    detail::SupportView sv = detail::support_view(f, support);
    if (const auto* lp = std::get_if<LpSpace>(&X)) return detail::lp_norm(sv, lp->p);
    if (std::get_if<LinfSpace>(&X)) {
        double m = 0.0;
        for (double v : sv.value) m = std::max(m, std::abs(v));
        return m;
    }
    if (const auto* w = std::get_if<WeightedLpSpace>(&X)) {
        double s = 0.0;
        for (std::size_t i = 0; i < sv.value.size(); ++i)
            s += sv.weight[i] * w->weight.eval(sv.center[i]) *
                 std::pow(std::abs(sv.value[i]), w->p);
        return std::pow(s, 1.0 / w->p);
    }
    if (const auto* v = std::get_if<VariableLpSpace>(&X))
        return detail::variable_lp_norm(sv, *v);
    if (const auto* mo = std::get_if<MorreySpace>(&X))
        return detail::morrey_norm(sv, mo->p, mo->q, support, f.max_cell(), f.dim());
    if (const auto* lo = std::get_if<LorentzSpace>(&X))
        return detail::lorentz_norm(sv, lo->p, lo->q);
    return detail::herz_norm(sv, std::get<HerzSpace>(X), f.max_cell(), f.dim());
}

/// The associate (Köthe dual) where the backend models it:
/// Lp -> Lp', weighted Lp -> (p', w^{1-p'}), mixed -> componentwise
/// conjugates, Herz -> (-alpha, p', q'). Everything else is out of scope.
inline SpaceSpec associate(const SpaceSpec& X) {
    if (const auto* lp = std::get_if<LpSpace>(&X)) {
        if (lp->p <= 1.0) throw std::runtime_error("associate not modeled");
        return LpSpace{conjugate_exponent(lp->p)};
    }
    if (const auto* w = std::get_if<WeightedLpSpace>(&X)) {
        if (w->p <= 1.0) throw std::runtime_error("associate not modeled");
        double pp = conjugate_exponent(w->p);
        GridFunction wv = w->weight;
        std::vector<double> nv(wv.values().size());
        for (std::size_t i = 0; i < nv.size(); ++i)
            nv[i] = std::pow(wv.values()[i], 1.0 - pp);
        return WeightedLpSpace{pp, GridFunction(wv.box(), {wv.samples(0), wv.samples(1)},
                                                std::move(nv), wv.mode())};
    }
    if (const auto* m = std::get_if<MixedNormSpace>(&X)) {
        if (m->p[0] <= 1.0 || m->p[1] <= 1.0) throw std::runtime_error("associate not modeled");
        return MixedNormSpace{{conjugate_exponent(m->p[0]), conjugate_exponent(m->p[1])}};
    }
    if (const auto* hz = std::get_if<HerzSpace>(&X)) {
        if (hz->p <= 1.0 || hz->q <= 1.0) throw std::runtime_error("associate not modeled");
        return HerzSpace{-hz->alpha, conjugate_exponent(hz->p), conjugate_exponent(hz->q),
                         hz->homogeneous};
    }
    throw std::runtime_error("associate not modeled");
}

/// Pointwise max over the given radii of centered ball averages of |f|.
/// Ball averages use the sampled measure, so constants are reproduced
/// exactly wherever the ball stays inside the box.
inline GridFunction maximal(const GridFunction& f, std::span<const double> radii) {
    if (radii.empty()) throw std::invalid_argument("maximal: radii must be non-empty");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::invalid_argument("maximal: radii must be ascending");
    const int nx = f.samples(0), ny = f.dim() == 2 ? f.samples(1) : 1;
    std::vector<double> out(static_cast<std::size_t>(nx) * ny, 0.0);
    const double hx = f.cell(0), hy = f.dim() == 2 ? f.cell(1) : 1.0;
    parallel_for(static_cast<std::int64_t>(nx) * ny, [&](std::int64_t idx) {
        int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
        double best = 0.0;
        for (double r : radii) {
            int kx = static_cast<int>(std::ceil(r / hx));
            double mass = 0.0, meas = 0.0;
            if (f.dim() == 1) {
                for (int di = -kx; di <= kx; ++di) {
                    int ii = i + di;
                    if (ii < 0 || ii >= nx) continue;
                    if (std::abs(di * hx) < r) {
                        mass += std::abs(f.at(ii)) * hx;
                        meas += hx;
                    }
                }
            } else {
                int ky = static_cast<int>(std::ceil(r / hy));
                for (int dj = -ky; dj <= ky; ++dj) {
                    int jj = j + dj;
                    if (jj < 0 || jj >= ny) continue;
                    for (int di = -kx; di <= kx; ++di) {
                        int ii = i + di;
                        if (ii < 0 || ii >= nx) continue;
                        double dx = di * hx, dy = dj * hy;
                        if (dx * dx + dy * dy < r * r) {
                            mass += std::abs(f.at(ii, jj)) * hx * hy;
                            meas += hx * hy;
                        }
                    }
                }
            }
            if (meas > 0.0) best = std::max(best, mass / meas);
        }
        out[static_cast<std::size_t>(idx)] = best;
    });
    return GridFunction(f.box(), {nx, ny}, std::move(out), f.mode());
}

/// Muckenhoupt product max over the given cube family:
/// (⨍_Q w)(⨍_Q w^{1/(1-p)})^{p-1}. Cubes stand in for balls.
inline double ap_constant(const GridFunction& w, double p, std::span<const Cube> cubes) {
    if (!(p > 1.0)) throw std::invalid_argument("ap_constant: p must exceed 1");
    double best = 0.0;
    for (const Cube& Q : cubes) {
        double a1 = 0.0, a2 = 0.0;
        detail::for_each_cell(w, Q, [&](double v, double wt, std::array<double, 2>) {
            if (wt <= 0.0) return;
            if (!(v > 0.0)) throw std::runtime_error("nonpositive weight sample");
            a1 += wt * v;
            a2 += wt * std::pow(v, 1.0 / (1.0 - p));
        });
        a1 /= Q.volume();
        a2 /= Q.volume();
        best = std::max(best, a1 * std::pow(a2, p - 1.0));
    }
    return best;
}

}  // namespace campanato
