#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "campanato/cube.hpp"

namespace campanato {

enum class EvalMode { nearest, multilinear };

/// A real-valued function sampled at the cell centers of a uniform lattice
/// over a bounding cube. Samples live at x_i = lo + (i + 1/2) h per axis.
/// By convention the function is identically zero outside its box.
class GridFunction {
  public:
    GridFunction(Cube box, std::array<int, 2> samples, std::vector<double> values,
                 EvalMode mode = EvalMode::multilinear)
        : box_(box), samples_(samples), values_(std::move(values)), mode_(mode) {
        if (box_.dim == 1) samples_[1] = 1;
        if (samples_[0] < 1 || samples_[1] < 1)
            throw std::invalid_argument("GridFunction: samples_per_axis must be positive");
        std::size_t expect = static_cast<std::size_t>(samples_[0]) * samples_[1];
        if (values_.size() != expect)
            throw std::invalid_argument("GridFunction: value count does not match grid");
    }

    const Cube& box() const { return box_; }
    int dim() const { return box_.dim; }
    int samples(int ax) const { return samples_[ax]; }
    EvalMode mode() const { return mode_; }
    const std::vector<double>& values() const { return values_; }

    /// Cell extent along an axis.
    double cell(int ax) const { return box_.edge / samples_[ax]; }
    double max_cell() const {
        double c = cell(0);
        if (dim() == 2) c = std::max(c, cell(1));
        return c;
    }

    /// Coordinate of the i-th cell center along an axis.
    double node(int ax, int i) const { return box_.lo(ax) + (i + 0.5) * cell(ax); }

    std::size_t index(int ix, int iy = 0) const {
        return static_cast<std::size_t>(iy) * samples_[0] + ix;
    }
    double at(int ix, int iy = 0) const { return values_[index(ix, iy)]; }

    std::array<double, 2> node_point(int ix, int iy = 0) const {
        return {node(0, ix), dim() == 2 ? node(1, iy) : 0.0};
    }

    double eval(const std::array<double, 2>& p) const {
        if (!box_.contains(p)) return 0.0;
        if (mode_ == EvalMode::nearest) {
            int ix = nearest_index(0, p[0]);
            int iy = dim() == 2 ? nearest_index(1, p[1]) : 0;
            return at(ix, iy);
        }
        if (dim() == 1) {
            auto [i0, t] = lerp_index(0, p[0]);
            return (1.0 - t) * at(i0) + t * at(std::min(i0 + 1, samples_[0] - 1));
        }
        auto [i0, tx] = lerp_index(0, p[0]);
        auto [j0, ty] = lerp_index(1, p[1]);
        int i1 = std::min(i0 + 1, samples_[0] - 1);
        int j1 = std::min(j0 + 1, samples_[1] - 1);
        double v00 = at(i0, j0), v10 = at(i1, j0), v01 = at(i0, j1), v11 = at(i1, j1);
        return (1 - ty) * ((1 - tx) * v00 + tx * v10) + ty * ((1 - tx) * v01 + tx * v11);
    }

    double eval(double x) const { return eval(std::array<double, 2>{x, 0.0}); }

    GridFunction translated(const std::array<double, 2>& z) const {
        return GridFunction(box_.translated(z), samples_, values_, mode_);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

  private:
    int nearest_index(int ax, double x) const {
        double u = (x - box_.lo(ax)) / cell(ax) - 0.5;
        int i = static_cast<int>(std::lround(u));
        return std::clamp(i, 0, samples_[ax] - 1);
    }
    // Index of the lower cell center and interpolation weight; clamps to the
    // first/last center so boundary-margin queries extend constantly. Queries
    // within rounding slop of a node snap to it, keeping node evaluation
    // exact on non-dyadic boxes.
    std::pair<int, double> lerp_index(int ax, double x) const {
        double u = (x - box_.lo(ax)) / cell(ax) - 0.5;
        double r = std::round(u);
        if (std::abs(u - r) < 1e-9) u = r;
        if (u <= 0.0) return {0, 0.0};
        if (u >= samples_[ax] - 1) return {samples_[ax] - 1, 0.0};
        int i = static_cast<int>(std::floor(u));
        return {i, u - i};
    }

    Cube box_;
    std::array<int, 2> samples_;
    std::vector<double> values_;
    EvalMode mode_;
};

/// Sample an analytic function at cell centers.
inline GridFunction sample_function(const std::function<double(std::array<double, 2>)>& fn,
                                    const Cube& box, std::array<int, 2> samples,
                                    EvalMode mode = EvalMode::multilinear) {
    std::array<int, 2> s = samples;
    if (box.dim == 1) s[1] = 1;
    std::vector<double> v(static_cast<std::size_t>(s[0]) * s[1]);
    double h0 = box.edge / s[0];
    double h1 = box.dim == 2 ? box.edge / s[1] : 0.0;
    for (int j = 0; j < s[1]; ++j)
        for (int i = 0; i < s[0]; ++i) {
            std::array<double, 2> p{box.lo(0) + (i + 0.5) * h0,
                                    box.dim == 2 ? box.lo(1) + (j + 0.5) * h1 : 0.0};
            v[static_cast<std::size_t>(j) * s[0] + i] = fn(p);
        }
    return GridFunction(box, s, std::move(v), mode);
}

/// Indicator of a sub-cube, sampled on the given grid (nearest evaluation).
inline GridFunction indicator_function(const Cube& box, std::array<int, 2> samples,
                                       const Cube& set) {
    return sample_function([&](std::array<double, 2> p) { return set.contains(p) ? 1.0 : 0.0; },
                           box, samples, EvalMode::nearest);
}

inline GridFunction constant_function(const Cube& box, std::array<int, 2> samples, double c) {
    std::array<int, 2> s = samples;
    if (box.dim == 1) s[1] = 1;
    return GridFunction(box, s,
                        std::vector<double>(static_cast<std::size_t>(s[0]) * s[1], c));
}

// ---------------------------------------------------------------------------
// Quadrature: composite midpoint on the function's lattice, with cells
// clipped to the target cube by partial-volume weighting. Exact on
// indicators of lattice-aligned cubes.
// ---------------------------------------------------------------------------

struct AxisWindow {
    int first = 0, last = -1;        // inclusive index range with positive weight
    std::vector<double> weights;     // measure of cell ∩ [qa,qb], index-aligned to first
    bool empty() const { return last < first; }
};

inline AxisWindow axis_window(const GridFunction& f, int ax, double qa, double qb) {
    AxisWindow w;
    double h = f.cell(ax), lo = f.box().lo(ax);
    int n = f.samples(ax);
    double a = std::max(qa, lo), b = std::min(qb, f.box().hi(ax));
    if (b <= a) return w;
    int i0 = std::clamp(static_cast<int>(std::floor((a - lo) / h)), 0, n - 1);
    int i1 = std::clamp(static_cast<int>(std::ceil((b - lo) / h)) - 1, 0, n - 1);
    w.first = i0;
    w.last = i1;
    w.weights.resize(i1 - i0 + 1);
    for (int i = i0; i <= i1; ++i) {
        double ca = lo + i * h, cb = ca + h;
        w.weights[i - i0] = std::max(0.0, std::min(cb, b) - std::max(ca, a));
    }
    while (w.last >= w.first && w.weights[w.last - w.first] <= 0.0) --w.last;
    while (w.last >= w.first && w.weights.front() <= 0.0) {
        w.weights.erase(w.weights.begin());
        ++w.first;
    }
    return w;
}

/// ∫_Q f(x) dx by composite midpoint with partial-volume cell clipping.
/// Throws if a sample inside Q is non-finite.
inline double integrate(const GridFunction& f, const Cube& Q) {
    if (Q.dim != f.dim()) throw std::invalid_argument("integrate: dimension mismatch");
    AxisWindow wx = axis_window(f, 0, Q.lo(0), Q.hi(0));
    if (wx.empty()) return 0.0;
    if (f.dim() == 1) {
        double s = 0.0;
        for (int i = wx.first; i <= wx.last; ++i) {
            double v = f.at(i);
            if (!std::isfinite(v)) throw std::runtime_error("non-finite integrand");
            s += v * wx.weights[i - wx.first];
        }
        return s;
    }
    AxisWindow wy = axis_window(f, 1, Q.lo(1), Q.hi(1));
    if (wy.empty()) return 0.0;
    double s = 0.0;
    for (int j = wy.first; j <= wy.last; ++j) {
        double row = 0.0;
        for (int i = wx.first; i <= wx.last; ++i) {
            double v = f.at(i, j);
            if (!std::isfinite(v)) throw std::runtime_error("non-finite integrand");
            row += v * wx.weights[i - wx.first];
        }
        s += row * wy.weights[j - wy.first];
    }
    return s;
}

/// ⨍_Q f = integrate(f, Q) / |Q|.
inline double average(const GridFunction& f, const Cube& Q) {
    return integrate(f, Q) / Q.volume();
}

/// Samplewise binary combination on a shared grid.
inline GridFunction combine(const GridFunction& f, const GridFunction& g,
                            const std::function<double(double, double)>& op) {
    if (f.dim() != g.dim() || f.samples(0) != g.samples(0) || f.samples(1) != g.samples(1))
        throw std::invalid_argument("combine: grids do not match");
    std::vector<double> v(f.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(f.values()[i], g.values()[i]);
    return GridFunction(f.box(), {f.samples(0), f.samples(1)}, std::move(v), f.mode());
}

inline GridFunction abs_product(const GridFunction& f, const GridFunction& g) {
    return combine(f, g, [](double a, double b) { return std::abs(a * b); });
}

}  // namespace campanato
