#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "campanato/grid_function.hpp"
#include "campanato/parallel.hpp"
#include "campanato/polynomial.hpp"
#include "campanato/spaces.hpp"

namespace campanato {

namespace detail {

inline void require_resolvable(const GridFunction& f, const Cube& Q) {
    for (int ax = 0; ax < f.dim(); ++ax)
        if (Q.edge < 4.0 * f.cell(ax) * (1.0 - 1e-12))
            throw std::runtime_error("cube under-resolved");
}

inline int floor_alpha(double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("alpha must lie in [0,1]");
    return alpha >= 1.0 ? 1 : 0;
}

// Residual f - P on f's grid, written only on the cells that meet Q.
inline GridFunction residual_grid(const GridFunction& f, const Cube& Q, const Polynomial& P) {
    std::vector<double> v(f.values().size(), 0.0);
    AxisWindow wx = axis_window(f, 0, Q.lo(0), Q.hi(0));
    if (!wx.empty()) {
        if (f.dim() == 1) {
            for (int i = wx.first; i <= wx.last; ++i)
                v[f.index(i)] = f.at(i) - P.eval(f.node_point(i));
        } else {
            AxisWindow wy = axis_window(f, 1, Q.lo(1), Q.hi(1));
            for (int j = wy.first; j <= wy.last; ++j)
                for (int i = wx.first; i <= wx.last; ++i)
                    v[f.index(i, j)] = f.at(i, j) - P.eval(f.node_point(i, j));
        }
    }
    return GridFunction(f.box(), {f.samples(0), f.samples(1)}, std::move(v), f.mode());
}

}  // namespace detail

/// O_alpha(f;Q) = |Q|^{-alpha/n} ⨍_Q |f - P_Q^{floor(alpha)}(f)|.
inline double osc(const GridFunction& f, const Cube& Q, double alpha) {
    detail::require_resolvable(f, Q);
    int s = detail::floor_alpha(alpha);
    Polynomial P = minimal_polynomial(f, Q, s);
    double acc = 0.0;
    detail::for_each_cell(f, Q, [&](double v, double w, std::array<double, 2> p) {
        acc += w * std::abs(v - P.eval(p));
    });
    double n = static_cast<double>(f.dim());
    return std::pow(Q.volume(), -alpha / n) * acc / Q.volume();
}

/// O_{alpha,X}(f;Q) = |Q|^{-alpha/n} ‖(f - P_Q^{floor(alpha)}(f)) 1_Q‖_X / ‖1_Q‖_X.
inline double osc_x(const GridFunction& f, const Cube& Q, double alpha, const SpaceSpec& X) {
    detail::require_resolvable(f, Q);
    int s = detail::floor_alpha(alpha);
    Polynomial P = minimal_polynomial(f, Q, s);
    GridFunction resid = detail::residual_grid(f, Q, P);
    GridFunction ones = constant_function(f.box(), {f.samples(0), f.samples(1)}, 1.0);
    double denom = norm(X, ones, Q);
    if (!(denom > 0.0)) throw std::runtime_error("indicator norm vanished");
    double n = static_cast<double>(f.dim());
    return std::pow(Q.volume(), -alpha / n) * norm(X, resid, Q) / denom;
}

/// The mean-based form at alpha = 1: |Q|^{-1/n} ‖(f - <f>_Q) 1_Q‖_X / ‖1_Q‖_X.
inline double osc_tilde1(const GridFunction& f, const Cube& Q, const SpaceSpec& X) {
    detail::require_resolvable(f, Q);
    Polynomial P = Polynomial::constant(Q, average(f, Q));
    GridFunction resid = detail::residual_grid(f, Q, P);
    GridFunction ones = constant_function(f.box(), {f.samples(0), f.samples(1)}, 1.0);
    double denom = norm(X, ones, Q);
    if (!(denom > 0.0)) throw std::runtime_error("indicator norm vanished");
    double n = static_cast<double>(f.dim());
    return std::pow(Q.volume(), -1.0 / n) * norm(X, resid, Q) / denom;
}

namespace detail {

struct LatticeOffsets {
    std::vector<std::array<int, 2>> steps;
    std::vector<double> length;
};

// Lattice offsets y with 0 < |y| <= a. half_only keeps one of {y,-y}.
inline LatticeOffsets lattice_offsets(const GridFunction& f, double a, bool half_only) {
    LatticeOffsets out;
    double hx = f.cell(0);
    double tol = 1.0 + 1e-12;
    if (f.dim() == 1) {
        int kmax = static_cast<int>(std::floor(a * tol / hx));
        for (int k = 1; k <= kmax; ++k) {
            out.steps.push_back({k, 0});
            out.length.push_back(k * hx);
            if (!half_only) {
                out.steps.push_back({-k, 0});
                out.length.push_back(k * hx);
            }
        }
        return out;
    }
    double hy = f.cell(1);
    int kx = static_cast<int>(std::floor(a * tol / hx));
    int ky = static_cast<int>(std::floor(a * tol / hy));
    for (int j = -ky; j <= ky; ++j)
        for (int i = -kx; i <= kx; ++i) {
            if (i == 0 && j == 0) continue;
            if (half_only && (j < 0 || (j == 0 && i < 0))) continue;
            double len = std::hypot(i * hx, j * hy);
            if (len <= a * tol) {
                out.steps.push_back({i, j});
                out.length.push_back(len);
            }
        }
    return out;
}

struct IndexBox {
    int i0, i1, j0, j1;  // inclusive; empty when i1 < i0
    bool empty() const { return i1 < i0 || j1 < j0; }
};

inline IndexBox lattice_in(const GridFunction& f, const Cube& D) {
    IndexBox b{0, -1, 0, 0};
    double hx = f.cell(0);
    b.i0 = std::max(0, static_cast<int>(std::ceil((D.lo(0) - f.box().lo(0)) / hx - 0.5 - 1e-9)));
    b.i1 = std::min(f.samples(0) - 1,
                    static_cast<int>(std::floor((D.hi(0) - f.box().lo(0)) / hx - 0.5 + 1e-9)));
    if (f.dim() == 2) {
        double hy = f.cell(1);
        b.j0 = std::max(0,
                        static_cast<int>(std::ceil((D.lo(1) - f.box().lo(1)) / hy - 0.5 - 1e-9)));
        b.j1 = std::min(f.samples(1) - 1,
                        static_cast<int>(std::floor((D.hi(1) - f.box().lo(1)) / hy - 0.5 + 1e-9)));
    } else {
        b.j0 = 0;
        b.j1 = 0;
    }
    return b;
}

}  // namespace detail

/// A measured modulus value: which quotient, at which scale, over which
/// domain. The value is a sampled sup, so it is nonnegative and monotone
/// nondecreasing in the scale.
struct Modulus {
    enum class Kind { lip_quotient, second_diff };
    Kind kind = Kind::second_diff;
    double alpha = 1.0;  // quotient exponent (lip_quotient only)
    double scale = 0.0;
    double value = 0.0;
    Cube domain;
};

/// sup over lattice x in D and lattice offsets 0 < |y| <= a (x±y inside the
/// box) of |f(x+y) + f(x-y) - 2 f(x)| / |y|.
inline double second_diff_modulus(const GridFunction& f, double a, const Cube& D) {
    if (!(a >= f.max_cell() * (1.0 - 1e-12)))
        throw std::invalid_argument("second_diff_modulus: a below cell size");
    detail::LatticeOffsets offs = detail::lattice_offsets(f, a, /*half_only=*/true);
    detail::IndexBox ib = detail::lattice_in(f, D);
    if (ib.empty() || offs.steps.empty())
        throw std::runtime_error("second_diff_modulus: no admissible pair");
    const int nx = f.samples(0), ny = f.dim() == 2 ? f.samples(1) : 1;
    const std::int64_t rows = ib.j1 - ib.j0 + 1;
    double sup = parallel_max(rows, [&](std::int64_t rj) {
        int j = ib.j0 + static_cast<int>(rj);
        double best = -1.0;
        for (int i = ib.i0; i <= ib.i1; ++i) {
            double fx = f.at(i, j);
            for (std::size_t m = 0; m < offs.steps.size(); ++m) {
                int ip = i + offs.steps[m][0], im = i - offs.steps[m][0];
                int jp = j + offs.steps[m][1], jm = j - offs.steps[m][1];
                if (ip < 0 || ip >= nx || im < 0 || im >= nx) continue;
                if (jp < 0 || jp >= ny || jm < 0 || jm >= ny) continue;
                double d2 = std::abs(f.at(ip, jp) + f.at(im, jm) - 2.0 * fx);
                best = std::max(best, d2 / offs.length[m]);
            }
        }
        return best;
    });
    if (sup < 0.0) throw std::runtime_error("second_diff_modulus: no admissible pair");
    return sup;
}

/// sup over lattice pairs x != y in D with |x-y| <= a of |f(x)-f(y)| / |x-y|^alpha.
inline double lip_modulus(const GridFunction& f, double alpha, double a, const Cube& D) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("lip_modulus: alpha must lie in (0,1]");
    if (!(a >= f.max_cell() * (1.0 - 1e-12)))
        throw std::invalid_argument("lip_modulus: a below cell size");
    detail::LatticeOffsets offs = detail::lattice_offsets(f, a, /*half_only=*/true);
    detail::IndexBox ib = detail::lattice_in(f, D);
    if (ib.empty() || offs.steps.empty())
        throw std::runtime_error("lip_modulus: no admissible pair");
    std::vector<double> denom(offs.length.size());
    for (std::size_t m = 0; m < offs.length.size(); ++m)
        denom[m] = std::pow(offs.length[m], alpha);
    const std::int64_t rows = ib.j1 - ib.j0 + 1;
    double sup = parallel_max(rows, [&](std::int64_t rj) {
        int j = ib.j0 + static_cast<int>(rj);
        double best = -1.0;
        for (int i = ib.i0; i <= ib.i1; ++i) {
            double fx = f.at(i, j);
            for (std::size_t m = 0; m < offs.steps.size(); ++m) {
                int ip = i + offs.steps[m][0];
                int jp = j + offs.steps[m][1];
                if (ip < ib.i0 || ip > ib.i1 || jp < ib.j0 || jp > ib.j1) continue;
                best = std::max(best, std::abs(f.at(ip, jp) - fx) / denom[m]);
            }
        }
        return best;
    });
    if (sup < 0.0) throw std::runtime_error("lip_modulus: no admissible pair");
    return sup;
}

inline Modulus measure_second_diff(const GridFunction& f, double a, const Cube& D) {
    return Modulus{Modulus::Kind::second_diff, 1.0, a, second_diff_modulus(f, a, D), D};
}

inline Modulus measure_lip(const GridFunction& f, double alpha, double a, const Cube& D) {
    return Modulus{Modulus::Kind::lip_quotient, alpha, a, lip_modulus(f, alpha, a, D), D};
}

namespace detail {

// Discrete quartic-bump kernel weights at radius r centered at x, normalized
// to unit discrete mass. Lattice-symmetric around lattice points, so affine
// functions are reproduced exactly at interior nodes.
struct MollifyKernel {
    std::vector<std::array<int, 2>> cells;
    std::vector<double> w;
};

inline double point_mollify(const GridFunction& f, double r,
                            const std::array<double, 2>& x) {
    const int nx = f.samples(0), ny = f.dim() == 2 ? f.samples(1) : 1;
    double hx = f.cell(0), hy = f.dim() == 2 ? f.cell(1) : 1.0;
    int I = static_cast<int>(std::floor((x[0] - f.box().lo(0)) / hx));
    int kx = static_cast<int>(std::ceil(r / hx)) + 1;
    double acc = 0.0, wt = 0.0;
    if (f.dim() == 1) {
        for (int di = -kx; di <= kx; ++di) {
            int i = I + di;
            double xc = f.node(0, i);  // formula works outside range too
            double u = (x[0] - xc) / r;
            if (std::abs(u) >= 1.0) continue;
            double q = 1.0 - u * u;
            double w = q * q * q * q;
            wt += w;
            if (i >= 0 && i < nx) acc += w * f.at(i);
        }
    } else {
        int J = static_cast<int>(std::floor((x[1] - f.box().lo(1)) / hy));
        int ky = static_cast<int>(std::ceil(r / hy)) + 1;
        for (int dj = -ky; dj <= ky; ++dj)
            for (int di = -kx; di <= kx; ++di) {
                int i = I + di, j = J + dj;
                double xc = f.box().lo(0) + (i + 0.5) * hx;
                double yc = f.box().lo(1) + (j + 0.5) * hy;
                double u = std::hypot(x[0] - xc, x[1] - yc) / r;
                if (u >= 1.0) continue;
                double q = 1.0 - u * u;
                double w = q * q * q * q;
                wt += w;
                if (i >= 0 && i < nx && j >= 0 && j < ny) acc += w * f.at(i, j);
            }
    }
    if (wt <= 0.0) throw std::runtime_error("mollify: empty kernel");
    return acc / wt;
}

}  // namespace detail

/// f * phi_r with the normalized quartic bump, discretely renormalized so
/// the kernel has exact unit mass on the lattice. Values outside the box
/// count as zero (compact-support convention); output on the same grid.
inline GridFunction mollify(const GridFunction& f, double r) {
    if (!(r >= 2.0 * f.max_cell()))
        throw std::invalid_argument("mollify: radius below resolution");
    const int nx = f.samples(0), ny = f.dim() == 2 ? f.samples(1) : 1;
    std::vector<double> out(static_cast<std::size_t>(nx) * ny);
    parallel_for(static_cast<std::int64_t>(nx) * ny, [&](std::int64_t idx) {
        int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
        out[static_cast<std::size_t>(idx)] =
            detail::point_mollify(f, r, f.node_point(i, j));
    });
    return GridFunction(f.box(), {nx, ny}, std::move(out), f.mode());
}

/// Pointwise mollification (f * phi_r)(x) without building the whole grid.
inline double mollify_at(const GridFunction& f, double r, const std::array<double, 2>& x) {
    if (!(r >= 2.0 * f.max_cell()))
        throw std::invalid_argument("mollify: radius below resolution");
    return detail::point_mollify(f, r, x);
}

/// u0 + u1 + u2 split of f at (x, t): u0 = f*phi_t, u1 = -t ∂_t u0,
/// u2 = ∫ s ∂²_s u0 ds over the resolvable range [s_min, t]. The
/// unresolvable head below s_min is bounded through the alpha=1 oscillation
/// at the matching scale and reported, not computed.
struct UDecomposition {
    double u0 = 0.0, u1 = 0.0, u2 = 0.0;
    double s_min = 0.0;
    double head_bound = 0.0;
    double residual_bound = 0.0;
    double sum() const { return u0 + u1 + u2; }
};

inline UDecomposition u_decompose(const GridFunction& f, const std::array<double, 2>& x,
                                  double t) {
    double hmax = f.max_cell();
    if (!(t >= 4.0 * hmax)) throw std::invalid_argument("u_decompose: t below resolution");
    double reach = t * (1.0 + 1.0 / 16.0);
    for (int ax = 0; ax < f.dim(); ++ax)
        if (x[ax] - reach < f.box().lo(ax) || x[ax] + reach > f.box().hi(ax))
            throw std::runtime_error("u_decompose: stencil exceeds box");

    auto u = [&](double s) { return detail::point_mollify(f, s, x); };
    UDecomposition d;
    d.u0 = u(t);
    double ht = t / 16.0;
    d.u1 = -t * (u(t + ht) - u(t - ht)) / (2.0 * ht);

    d.s_min = 4.0 * hmax;
    auto d2u = [&](double s) {
        double hs = s / 16.0;
        return (u(s + hs) - 2.0 * u(s) + u(s - hs)) / (hs * hs);
    };
    auto integrate_u2 = [&](int panels) {
        double hseg = (t - d.s_min) / panels, acc = 0.0;
        for (int i = 0; i < panels; ++i) {
            double s = d.s_min + (i + 0.5) * hseg;
            acc += hseg * s * d2u(s);
        }
        return acc;
    };
    double coarse = integrate_u2(64);
    double fine = integrate_u2(128);
    d.u2 = fine;

    // head ∫_0^{s_min} s ∂²_s u0 ds, bounded via |∂²_s u0| ≲ s^{-1} O_1
    Cube head_cube{x, 2.0 * d.s_min, f.dim()};
    d.head_bound = d.s_min * osc(f, head_cube, 1.0);
    d.residual_bound =
        d.head_bound + std::abs(fine - coarse) + 1e-9 * (1.0 + std::abs(d.u0));
    return d;
}

/// Degree-1 Taylor polynomial of f * phi_r at center(Q), r = edge/2, with
/// the measured sup residual against the second-difference modulus.
struct TaylorP1 {
    Polynomial p1;
    double residual_sup = 0.0;
    double modulus = 0.0;
    double ratio = 0.0;  // residual_sup / (r * modulus)
};

inline TaylorP1 taylor_p1(const GridFunction& f, const Cube& Q) {
    double r = 0.5 * Q.edge;
    double h = f.max_cell();
    // Q inflated by the mollification radius (plus the FD step) must fit.
    double reach = 2.0 * r + 2.0 * h;
    for (int ax = 0; ax < f.dim(); ++ax)
        if (Q.center[ax] - reach < f.box().lo(ax) || Q.center[ax] + reach > f.box().hi(ax))
            throw std::runtime_error("taylor_p1: margin violated");
    std::array<double, 2> c = Q.center;
    double psi_c = detail::point_mollify(f, r, c);
    std::vector<double> coeffs{psi_c};
    for (int ax = 0; ax < f.dim(); ++ax) {
        std::array<double, 2> pp = c, pm = c;
        pp[ax] += h;
        pm[ax] -= h;
        coeffs.push_back(
            (detail::point_mollify(f, r, pp) - detail::point_mollify(f, r, pm)) / (2.0 * h));
    }
    TaylorP1 out{Polynomial(Q, 1, std::move(coeffs)), 0.0, 0.0, 0.0};
    detail::IndexBox ib = detail::lattice_in(f, Q);
    for (int j = ib.j0; j <= ib.j1; ++j)
        for (int i = ib.i0; i <= ib.i1; ++i)
            out.residual_sup = std::max(
                out.residual_sup, std::abs(f.at(i, j) - out.p1.eval(f.node_point(i, j))));
    out.modulus = second_diff_modulus(f, r, Q);
    out.ratio = out.modulus > 0.0 ? out.residual_sup / (r * out.modulus)
                                  : (out.residual_sup > 0.0 ? std::numeric_limits<double>::infinity()
                                                            : 0.0);
    return out;
}

}  // namespace campanato
