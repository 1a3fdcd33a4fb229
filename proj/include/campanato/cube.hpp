#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace campanato {

/// Axis-aligned cube in R^n (n = 1 or 2) given by center and edge length.
/// Instances are immutable values; translation preserves the edge bitwise.
struct Cube {
    std::array<double, 2> center{0.0, 0.0};
    double edge = 1.0;
    int dim = 1;

    Cube() = default;
    Cube(double c, double e) : center{c, 0.0}, edge(e), dim(1) { check(); }
    Cube(std::array<double, 2> c, double e, int n) : center(c), edge(e), dim(n) { check(); }

    double lo(int ax) const { return center[ax] - 0.5 * edge; }
    double hi(int ax) const { return center[ax] + 0.5 * edge; }

    double volume() const { return dim == 1 ? edge : edge * edge; }

    /// Euclidean diameter.
    double diameter() const { return edge * std::sqrt(static_cast<double>(dim)); }

    bool contains(const std::array<double, 2>& p) const {
        for (int ax = 0; ax < dim; ++ax)
            if (p[ax] < lo(ax) || p[ax] > hi(ax)) return false;
        return true;
    }

    bool contains(const Cube& q) const {
        if (q.dim != dim) return false;
        for (int ax = 0; ax < dim; ++ax)
            if (q.lo(ax) < lo(ax) - 1e-12 * edge || q.hi(ax) > hi(ax) + 1e-12 * edge)
                return false;
        return true;
    }

    Cube translated(const std::array<double, 2>& z) const {
        Cube q = *this;
        for (int ax = 0; ax < dim; ++ax) q.center[ax] += z[ax];
        return q;  // edge and dim copied bitwise
    }

    std::string describe() const {
        std::string s = "[" + std::to_string(lo(0)) + "," + std::to_string(hi(0)) + "]";
        if (dim == 2) s += "x[" + std::to_string(lo(1)) + "," + std::to_string(hi(1)) + "]";
        return s;
    }

  private:
    void check() const {
        if (!(edge > 0.0)) throw std::invalid_argument("Cube: edge must be positive");
        if (dim != 1 && dim != 2) throw std::invalid_argument("Cube: dim must be 1 or 2");
        if (!std::isfinite(center[0]) || !std::isfinite(center[1]) || !std::isfinite(edge))
            throw std::invalid_argument("Cube: non-finite geometry");
    }
};

}  // namespace campanato
