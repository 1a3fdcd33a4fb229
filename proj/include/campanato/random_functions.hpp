#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "campanato/grid_function.hpp"

namespace campanato {

/// Seeded generator with a platform-stable uniform double mapping.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive range
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 eng_;
};

/// Random trigonometric polynomial: smooth, analytically integrable, and
/// deterministic for a fixed seed. 2-D draws separable mode products.
inline GridFunction random_trig_poly(Rng& rng, const Cube& box, std::array<int, 2> samples,
                                     int modes = 5, double amplitude = 1.0) {
    struct Mode {
        int kx, ky;
        double a, phase_x, phase_y;
    };
    std::vector<Mode> ms;
    for (int k = 1; k <= modes; ++k)
        ms.push_back({k, rng.uniform_int(1, modes), rng.uniform(-amplitude, amplitude),
                      rng.uniform(0.0, 2.0 * std::numbers::pi),
                      rng.uniform(0.0, 2.0 * std::numbers::pi)});
    double offset = rng.uniform(-amplitude, amplitude);
    double L = box.edge;
    std::array<double, 2> c = box.center;
    int dim = box.dim;
    return sample_function(
        [=](std::array<double, 2> p) {
            double s = offset;
            for (const Mode& m : ms) {
                double ux = std::cos(std::numbers::pi * m.kx * (p[0] - c[0]) / L + m.phase_x);
                double uy = dim == 2 ? std::cos(std::numbers::pi * m.ky * (p[1] - c[1]) / L +
                                                m.phase_y)
                                     : 1.0;
                s += m.a * ux * uy;
            }
            return s;
        },
        box, samples);
}

inline GridFunction random_trig_poly(std::uint64_t seed, const Cube& box,
                                     std::array<int, 2> samples, int modes = 5,
                                     double amplitude = 1.0) {
    Rng rng(seed);
    return random_trig_poly(rng, box, samples, modes, amplitude);
}

/// Random sub-cube of the domain with edge at least min_edge.
inline Cube random_cube(Rng& rng, const Cube& domain, double min_edge) {
    double edge = rng.uniform(min_edge, domain.edge);
    std::array<double, 2> ctr{0.0, 0.0};
    for (int ax = 0; ax < domain.dim; ++ax)
        ctr[ax] = rng.uniform(domain.lo(ax) + 0.5 * edge, domain.hi(ax) - 0.5 * edge);
    return Cube{ctr, edge, domain.dim};
}

}  // namespace campanato
