#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "campanato/grid_function.hpp"
#include "campanato/oscillation.hpp"
#include "campanato/parallel.hpp"
#include "campanato/spaces.hpp"
#include "campanato/vanishing.hpp"

namespace campanato {

struct KernelConfig {
    enum class DiagonalRule { omit_cell, symmetric_average };
    double alpha = 0.5;  // strictly inside (0, n)
    DiagonalRule rule = DiagonalRule::omit_cell;
    double truncation_radius = std::numeric_limits<double>::infinity();
};

namespace detail {

inline void check_kernel_alpha(double alpha, int dim) {
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(dim)))
        throw std::invalid_argument("kernel: alpha must lie strictly inside (0, n)");
}

// ∫ over [a,b] of |x-y|^{alpha-1} dy, exact (1-D). Finite for any x since
// alpha > 0; the singular antiderivative telescopes across cells.
inline double cell_kernel_1d(double x, double a, double b, double alpha) {
    auto F = [&](double t) { return std::copysign(std::pow(std::abs(t), alpha), t) / alpha; };
    return F(b - x) - F(a - x);
}

// ∫ over the square cell of side h centered at the query point of
// |z|^{alpha-2} dz = h^alpha * c(alpha); c from the polar reduction
// 4/alpha * 2^{-alpha} ∫_0^{pi/4} cos(t)^{-alpha} dt.
inline double square_cell_constant(double alpha) {
    int panels = 2048;
    double h = (std::numbers::pi / 4.0) / panels, acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        double t0 = i * h;
        auto g = [&](double t) { return std::pow(std::cos(t), -alpha); };
        acc += h / 6.0 * (g(t0) + 4.0 * g(t0 + 0.5 * h) + g(t0 + h));
    }
    return 4.0 / alpha * std::pow(2.0, -alpha) * acc;
}

struct KernelContext {
    const GridFunction& f;
    KernelConfig cfg;
    double sq_const = 0.0;  // 2-D diagonal constant, precomputed once

    KernelContext(const GridFunction& fn, const KernelConfig& c) : f(fn), cfg(c) {
        check_kernel_alpha(cfg.alpha, f.dim());
        if (f.dim() == 2) sq_const = square_cell_constant(cfg.alpha);
    }

    // Kernel sum Σ_j factor(y_j) K(x, cell_j). In 1-D the kernel is
    // integrated exactly over each cell; in 2-D the midpoint value is used
    // off the diagonal. A cell holding x in its open interior follows the
    // diagonal rule.
    template <class Factor>
    double apply_at(const std::array<double, 2>& x, Factor&& factor) const {
        double acc = 0.0;
        const double alpha = cfg.alpha;
        const double trunc = cfg.truncation_radius;
        if (f.dim() == 1) {
            double h = f.cell(0);
            for (int i = 0; i < f.samples(0); ++i) {
                double v = f.at(i);
                if (v == 0.0) continue;
                double yc = f.node(0, i);
                if (std::abs(x[0] - yc) > trunc) continue;
                double a = yc - 0.5 * h, b = yc + 0.5 * h;
                bool diagonal = x[0] > a && x[0] < b;
                if (diagonal && cfg.rule == KernelConfig::DiagonalRule::omit_cell) continue;
                acc += factor(std::array<double, 2>{yc, 0.0}, v) *
                       cell_kernel_1d(x[0], a, b, alpha);
            }
            return acc;
        }
        double hx = f.cell(0), hy = f.cell(1);
        double cell_area = hx * hy;
        for (int j = 0; j < f.samples(1); ++j)
            for (int i = 0; i < f.samples(0); ++i) {
                double v = f.at(i, j);
                if (v == 0.0) continue;
                std::array<double, 2> y = f.node_point(i, j);
                double dx = x[0] - y[0], dy = x[1] - y[1];
                double dist = std::hypot(dx, dy);
                if (dist > trunc) continue;
                bool diagonal = std::abs(dx) < 0.5 * hx && std::abs(dy) < 0.5 * hy;
                if (diagonal) {
                    if (cfg.rule == KernelConfig::DiagonalRule::omit_cell) continue;
                    acc += factor(y, v) * std::pow(std::min(hx, hy), alpha) * sq_const;
                    continue;
                }
                acc += factor(y, v) * std::pow(dist, alpha - 2.0) * cell_area;
            }
        return acc;
    }
};

}  // namespace detail

/// Analytic bound on the kernel mass of one cell: ‖f‖_inf ∫_cell |z|^{alpha-n} dz.
/// This is the worst-case difference between the two diagonal rules.
inline double omitted_cell_mass_bound(const GridFunction& f, const KernelConfig& cfg) {
    detail::check_kernel_alpha(cfg.alpha, f.dim());
    double h = f.max_cell();
    double cellint = f.dim() == 1
                         ? 2.0 * std::pow(0.5 * h, cfg.alpha) / cfg.alpha
                         : std::pow(h, cfg.alpha) * detail::square_cell_constant(cfg.alpha);
    return f.max_abs() * cellint;
}

/// I_alpha f at one query point: ∫ f(y) |x-y|^{alpha-n} dy over the sampled cells.
inline double frac_integral_at(const GridFunction& f, const KernelConfig& cfg,
                               const std::array<double, 2>& x) {
    detail::KernelContext ctx(f, cfg);
    return ctx.apply_at(x, [](const std::array<double, 2>&, double v) { return v; });
}

/// I_alpha f sampled on f's own lattice.
inline GridFunction frac_integral(const GridFunction& f, const KernelConfig& cfg) {
    detail::KernelContext ctx(f, cfg);
    const int nx = f.samples(0), ny = f.dim() == 2 ? f.samples(1) : 1;
    std::vector<double> out(static_cast<std::size_t>(nx) * ny);
    parallel_for(static_cast<std::int64_t>(nx) * ny, [&](std::int64_t idx) {
        int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
        out[static_cast<std::size_t>(idx)] = ctx.apply_at(
            f.node_point(i, j), [](const std::array<double, 2>&, double v) { return v; });
    });
    return GridFunction(f.box(), {nx, ny}, std::move(out), f.mode());
}

/// [b, I_alpha] f at one query point: ∫ (b(x)-b(y)) |x-y|^{alpha-n} f(y) dy.
inline double commutator_apply_at(const GridFunction& b, const GridFunction& f,
                                  const KernelConfig& cfg, const std::array<double, 2>& x) {
    detail::KernelContext ctx(f, cfg);
    double bx = b.eval(x);
    return ctx.apply_at(
        x, [&](const std::array<double, 2>& y, double v) { return (bx - b.eval(y)) * v; });
}

/// [b, I_alpha] f on f's lattice.
inline GridFunction commutator_apply(const GridFunction& b, const GridFunction& f,
                                     const KernelConfig& cfg) {
    detail::KernelContext ctx(f, cfg);
    const int nx = f.samples(0), ny = f.dim() == 2 ? f.samples(1) : 1;
    std::vector<double> out(static_cast<std::size_t>(nx) * ny);
    parallel_for(static_cast<std::int64_t>(nx) * ny, [&](std::int64_t idx) {
        int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
        std::array<double, 2> x = f.node_point(i, j);
        double bx = b.eval(x);
        out[static_cast<std::size_t>(idx)] = ctx.apply_at(
            x, [&](const std::array<double, 2>& y, double v) { return (bx - b.eval(y)) * v; });
    });
    return GridFunction(f.box(), {nx, ny}, std::move(out), f.mode());
}

// ---------------------------------------------------------------------------
// Boundedness probes
// ---------------------------------------------------------------------------

enum class BoundTarget { bmo, lip, morrey };

struct BoundProbeReport {
    std::vector<double> ratios;  // one per input f
    double max_ratio = 0.0;
    double b_seminorm = 0.0;
    std::string family;
    double gamma = 0.0;      // lip target exponent when applicable
    double s = 0.0, t = 0.0; // morrey target exponents when applicable
};

/// Empirical operator bound: target-seminorm([b, I_alpha] f) divided by
/// ‖b‖_{Lip_beta} ‖f‖_{Morrey(p,q)}, maximized over the supplied functions.
/// Parameter relations of the chosen case are enforced up to 1e-12.
inline BoundProbeReport bound_probe(const GridFunction& b,
                                    const std::vector<GridFunction>& f_set, double alpha,
                                    double beta, double p, double q, BoundTarget target) {
    if (f_set.empty()) throw std::invalid_argument("bound_probe: empty function set");
    const int n = b.dim();
    const double nd = static_cast<double>(n);
    detail::check_kernel_alpha(alpha, n);
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument("bound_probe: beta must lie in (0,1)");
    if (!(q > 1.0) || !(q <= p))
        throw std::invalid_argument("bound_probe: need 1 < q <= p");

    BoundProbeReport rep;
    if (target == BoundTarget::bmo) {
        if (std::abs(nd / p - (alpha + beta)) > 1e-12)
            throw std::runtime_error("parameter relation violated: n/p != alpha+beta");
    } else if (target == BoundTarget::lip) {
        rep.gamma = alpha + beta - nd / p;
        if (!(rep.gamma > 0.0) || !(rep.gamma < 1.0))
            throw std::runtime_error(
                "parameter relation violated: alpha+beta-n/p outside (0,1)");
    } else {
        if (!(alpha + beta < nd / p))
            throw std::runtime_error("parameter relation violated: alpha+beta >= n/p");
        rep.s = 1.0 / (1.0 / p - alpha / nd);
        rep.t = rep.s * q / p;
        if (!(rep.t > 1.0) || !(rep.t <= rep.s) || !std::isfinite(rep.s))
            throw std::runtime_error("parameter relation violated: need 1 < t <= s < inf");
    }

    KernelConfig cfg{alpha, KernelConfig::DiagonalRule::omit_cell,
                     std::numeric_limits<double>::infinity()};
    rep.b_seminorm = lip_modulus(b, beta, b.box().diameter(), b.box());
    for (const GridFunction& f : f_set) {
        GridFunction g = commutator_apply(b, f, cfg);
        double tgt = 0.0;
        if (target == BoundTarget::bmo) {
            DecayCurve c = small_cube_curve(g, 0.0, LpSpace{1.0}, {g.box().edge}, g.box());
            tgt = c.max_value();
            rep.family = c.family;
        } else if (target == BoundTarget::lip) {
            tgt = lip_modulus(g, rep.gamma, g.box().diameter(), g.box());
            rep.family = "lattice pairs up to the box diameter";
        } else {
            tgt = norm(MorreySpace{rep.s, rep.t}, g, g.box());
            rep.family = "Morrey ball family over the box";
        }
        double denom = rep.b_seminorm * norm(MorreySpace{p, q}, f, f.box());
        rep.ratios.push_back(denom > 0.0 ? tgt / denom : 0.0);
        rep.max_ratio = std::max(rep.max_ratio, rep.ratios.back());
    }
    return rep;
}

struct TailDecayReport {
    DecayCurve curve;                  // R -> sup_{|x| >= R} |[b,I_alpha]f(x)|
    std::optional<double> fitted_slope;  // absent when the curve touches zero
    double reference_slope = 0.0;        // -(n/p - alpha)
};

/// Tail of the commutator outside growing balls, with the log-log slope fit.
inline TailDecayReport tail_decay_probe(const GridFunction& b, const GridFunction& f,
                                        double alpha, double p,
                                        const std::vector<double>& radii) {
    detail::require_strictly_monotone(radii, /*ascending=*/true, "tail_decay_probe");
    const double nd = static_cast<double>(f.dim());
    if (!(nd / p - alpha > 0.0))
        throw std::invalid_argument("tail_decay_probe: need n/p - alpha > 0");
    double rmin = radii.front();
    for (int i = 0; i < b.samples(0); ++i)
        for (int j = 0; j < (b.dim() == 2 ? b.samples(1) : 1); ++j) {
            std::array<double, 2> c = b.node_point(i, j);
            double r = b.dim() == 1 ? std::abs(c[0]) : std::hypot(c[0], c[1]);
            if (r >= 0.5 * rmin && b.at(i, j) != 0.0)
                throw std::runtime_error("tail_decay_probe: support condition violated");
        }

    KernelConfig cfg{alpha, KernelConfig::DiagonalRule::omit_cell,
                     std::numeric_limits<double>::infinity()};
    GridFunction g = commutator_apply(b, f, cfg);
    TailDecayReport rep;
    rep.reference_slope = -(nd / p - alpha);
    rep.curve.axis = CurveAxis::shift_distance;
    {
        std::ostringstream os;
        os << "sup over lattice |x| >= R inside " << f.box().describe();
        rep.curve.family = os.str();
    }
    for (double R : radii) {
        double sup = 0.0;
        for (int j = 0; j < (g.dim() == 2 ? g.samples(1) : 1); ++j)
            for (int i = 0; i < g.samples(0); ++i) {
                std::array<double, 2> c = g.node_point(i, j);
                double r = g.dim() == 1 ? std::abs(c[0]) : std::hypot(c[0], c[1]);
                if (r >= R) sup = std::max(sup, std::abs(g.at(i, j)));
            }
        rep.curve.points.emplace_back(R, sup);
    }
    bool positive = true;
    for (const auto& [R, v] : rep.curve.points) positive = positive && v > 0.0;
    if (positive) {
        // least squares on (log R, log value)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double m = static_cast<double>(rep.curve.points.size());
        for (const auto& [R, v] : rep.curve.points) {
            double lx = std::log(R), ly = std::log(v);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        rep.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return rep;
}

struct ConvolutionRangeReport {
    DecayCurve curve;          // small-cube curve of phi * f
    double sup_osc_conv = 0.0; // sampled sup over the shared family
    double sup_osc_f = 0.0;
    double phi_l1 = 0.0;
    bool bound_holds = false;  // sup_conv <= ||phi||_1 sup_f (1 + tol)
};

/// Discrete convolution (phi * f) on f's grid; f counts as zero outside its box.
inline GridFunction convolve(const GridFunction& phi, const GridFunction& f) {
    if (phi.dim() != f.dim()) throw std::invalid_argument("convolve: dimension mismatch");
    const int nx = f.samples(0), ny = f.dim() == 2 ? f.samples(1) : 1;
    const double hx = f.cell(0), hy = f.dim() == 2 ? f.cell(1) : 1.0;
    double rad = 0.5 * phi.box().edge * std::sqrt(static_cast<double>(phi.dim()));
    int kx = static_cast<int>(std::ceil(rad / hx)) + 1;
    int ky = f.dim() == 2 ? static_cast<int>(std::ceil(rad / hy)) + 1 : 0;
    std::vector<double> out(static_cast<std::size_t>(nx) * ny, 0.0);
    parallel_for(static_cast<std::int64_t>(nx) * ny, [&](std::int64_t idx) {
        int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
        double acc = 0.0;
        for (int dj = -ky; dj <= ky; ++dj) {
            int jj = j + dj;
            if (f.dim() == 2 && (jj < 0 || jj >= ny)) continue;
            for (int di = -kx; di <= kx; ++di) {
                int ii = i + di;
                if (ii < 0 || ii >= nx) continue;
                std::array<double, 2> z{di * hx, f.dim() == 2 ? dj * hy : 0.0};
                double pw = phi.eval({z[0], z[1]});
                if (pw == 0.0) continue;
                acc += pw * f.at(ii, jj);
            }
        }
        out[static_cast<std::size_t>(idx)] = acc * hx * (f.dim() == 2 ? hy : 1.0);
    });
    return GridFunction(f.box(), {nx, ny}, std::move(out), f.mode());
}

/// Small-cube curve of phi * f next to the analogous curve of f on the same
/// family, together with the L1-contraction check of the oscillation sup.
inline ConvolutionRangeReport convolution_range_probe(const GridFunction& phi,
                                                      const GridFunction& f, double alpha,
                                                      const std::vector<double>& scales,
                                                      const Cube& domain,
                                                      double tol = 0.01) {
    ConvolutionRangeReport rep;
    GridFunction conv = convolve(phi, f);
    rep.curve = small_cube_curve(conv, alpha, LpSpace{1.0}, scales, domain);
    DecayCurve base = small_cube_curve(f, alpha, LpSpace{1.0}, scales, domain);
    rep.sup_osc_conv = rep.curve.max_value();
    rep.sup_osc_f = base.max_value();
    std::vector<double> absphi(phi.values().size());
    for (std::size_t i = 0; i < absphi.size(); ++i) absphi[i] = std::abs(phi.values()[i]);
    GridFunction av(phi.box(), {phi.samples(0), phi.samples(1)}, std::move(absphi));
    rep.phi_l1 = integrate(av, phi.box());
    rep.bound_holds = rep.sup_osc_conv <= rep.phi_l1 * rep.sup_osc_f * (1.0 + tol);
    return rep;
}

}  // namespace campanato
