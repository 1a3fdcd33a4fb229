#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "campanato/grid_function.hpp"

namespace campanato {

/// Polynomial of degree <= s (s in {0,1}) in the cube-centered monomial
/// basis (x - center(Q))^gamma. Evaluation is exact.
class Polynomial {
  public:
    Polynomial(Cube anchor, int degree, std::vector<double> coeffs)
        : anchor_(anchor), degree_(degree), coeffs_(std::move(coeffs)) {
        if (degree_ != 0 && degree_ != 1)
            throw std::invalid_argument("Polynomial: degree must be 0 or 1");
        std::size_t expect = degree_ == 0 ? 1 : 1 + anchor_.dim;
        if (coeffs_.size() != expect)
            throw std::invalid_argument("Polynomial: coefficient count mismatch");
    }

    static Polynomial constant(const Cube& anchor, double c) {
        return Polynomial(anchor, 0, {c});
    }

    const Cube& anchor() const { return anchor_; }
    int degree() const { return degree_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double eval(const std::array<double, 2>& p) const {
        double v = coeffs_[0];
        if (degree_ == 1)
            for (int ax = 0; ax < anchor_.dim; ++ax)
                v += coeffs_[1 + ax] * (p[ax] - anchor_.center[ax]);
        return v;
    }
    double eval(double x) const { return eval({x, 0.0}); }

  private:
    Cube anchor_;
    int degree_;
    std::vector<double> coeffs_;
};

namespace detail {

// Gaussian elimination with partial pivoting on a tiny system.
// Throws when the pivot collapses, which happens exactly when the cube
// holds fewer distinct quadrature nodes than basis functions.
inline std::vector<double> solve_small(std::vector<std::vector<double>> A,
                                       std::vector<double> b) {
    const int m = static_cast<int>(b.size());
    double scale = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) scale = std::max(scale, std::abs(A[i][j]));
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) <= 1e-13 * scale)
            throw std::runtime_error("cube under-resolved");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < m; ++r) {
            double f = A[r][col] / A[col][col];
            for (int j = col; j < m; ++j) A[r][j] -= f * A[col][j];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m);
    for (int i = m - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < m; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

template <class Body>
inline void for_each_cell(const GridFunction& f, const Cube& Q, Body&& body) {
    AxisWindow wx = axis_window(f, 0, Q.lo(0), Q.hi(0));
    if (wx.empty()) return;
    if (f.dim() == 1) {
        for (int i = wx.first; i <= wx.last; ++i)
            body(f.at(i), wx.weights[i - wx.first], f.node_point(i));
        return;
    }
    AxisWindow wy = axis_window(f, 1, Q.lo(1), Q.hi(1));
    for (int j = wy.first; j <= wy.last; ++j)
        for (int i = wx.first; i <= wx.last; ++i)
            body(f.at(i, j), wx.weights[i - wx.first] * wy.weights[j - wy.first],
                 f.node_point(i, j));
}

}  // namespace detail

/// Minimal polynomial P_Q^s(f): the unique degree-<=s polynomial whose
/// monomial moments over Q match those of f. Solved from the Gram system
/// in the scaled cube-centered basis ((x-c)/edge)^gamma for conditioning.
inline Polynomial minimal_polynomial(const GridFunction& f, const Cube& Q, int s) {
    if (s != 0 && s != 1) throw std::invalid_argument("minimal_polynomial: s must be 0 or 1");
    if (Q.dim != f.dim())
        throw std::invalid_argument("minimal_polynomial: dimension mismatch");
    const int n = f.dim();
    const int m = s == 0 ? 1 : 1 + n;

    auto basis = [&](const std::array<double, 2>& p, int k) {
        if (k == 0) return 1.0;
        return (p[k - 1] - Q.center[k - 1]) / Q.edge;
    };

    std::vector<std::vector<double>> G(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    bool any = false;
    detail::for_each_cell(f, Q, [&](double v, double w, std::array<double, 2> p) {
        if (!std::isfinite(v)) throw std::runtime_error("non-finite integrand");
        any = true;
        double phi[3];
        for (int k = 0; k < m; ++k) phi[k] = basis(p, k);
        for (int a = 0; a < m; ++a) {
            rhs[a] += w * v * phi[a];
            for (int b = a; b < m; ++b) G[a][b] += w * phi[a] * phi[b];
        }
    });
    if (!any) throw std::runtime_error("cube under-resolved");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < a; ++b) G[a][b] = G[b][a];

    std::vector<double> alpha = detail::solve_small(std::move(G), std::move(rhs));
    std::vector<double> coeffs(m);
    coeffs[0] = alpha[0];
    for (int ax = 0; ax < n && s == 1; ++ax) coeffs[1 + ax] = alpha[1 + ax] / Q.edge;
    return Polynomial(Q, s, std::move(coeffs));
}

/// Largest relative moment residual |∫_Q (f-P) x^gamma| / (|Q| ⨍_Q |f|)
/// over |gamma| <= s, in the cube-centered monomials.
inline double moment_residual(const GridFunction& f, const Polynomial& P, const Cube& Q,
                              int s) {
    const int n = f.dim();
    const int m = s == 0 ? 1 : 1 + n;
    double res[3] = {0, 0, 0};
    double absmass = 0.0;
    detail::for_each_cell(f, Q, [&](double v, double w, std::array<double, 2> p) {
        double d = v - P.eval(p);
        res[0] += w * d;
        for (int ax = 0; ax < n && s == 1; ++ax)
            res[1 + ax] += w * d * (p[ax] - Q.center[ax]) / Q.edge;
        absmass += w * std::abs(v);
    });
    if (absmass == 0.0) absmass = 1.0;
    double worst = 0.0;
    for (int k = 0; k < m; ++k) worst = std::max(worst, std::abs(res[k]) / absmass);
    return worst;
}

/// sup_{lattice x in Q} |P_Q^s(f)(x)| / ⨍_Q |f| — the empirical constant of
/// the uniform projection bound. Errors when the average of |f| vanishes
/// while the projection does not.
inline double projection_bound_ratio(const GridFunction& f, const Cube& Q, int s) {
    Polynomial P = minimal_polynomial(f, Q, s);
    double absavg = 0.0, sup = 0.0;
    detail::for_each_cell(f, Q, [&](double v, double w, std::array<double, 2> p) {
        absavg += w * std::abs(v);
        if (w > 0.0) sup = std::max(sup, std::abs(P.eval(p)));
    });
    absavg /= Q.volume();
    if (absavg == 0.0) {
        if (sup > 1e-14) throw std::runtime_error("projection bound violated: P != 0 on null f");
        return 0.0;
    }
    return sup / absavg;
}

}  // namespace campanato
