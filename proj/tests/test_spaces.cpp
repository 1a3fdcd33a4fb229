#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "campanato/catalog.hpp"
#include "campanato/random_functions.hpp"
#include "campanato/spaces.hpp"

using namespace campanato;

namespace {

Cube seg(double a, double b) { return Cube{{0.5 * (a + b), 0.0}, b - a, 1}; }

// Exhaustive sup over whole-cell subsets E with |E| >= t of (1/|E|)∫_E |f|.
double subset_oracle(const std::vector<double>& vals, const std::vector<double>& meas,
                     double t) {
    const int n = static_cast<int>(vals.size());
    double best = 0.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        double m = 0.0, s = 0.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                m += meas[i];
                s += std::abs(vals[i]) * meas[i];
            }
        if (m >= t - 1e-15) best = std::max(best, s / m);
    }
    return best;
}

}  // namespace

TEST_CASE("norm: Lp basics") {
    Cube b{{0.0, 0.0}, 4.0, 1};
    auto ind = indicator_function(b, {4096, 1}, seg(0.0, 1.0));
    CHECK(norm(LpSpace{2.0}, ind, b) == Catch::Approx(1.0).margin(1e-12));
    CHECK(norm(LpSpace{1.0}, ind, seg(0.0, 0.5)) == Catch::Approx(0.5).margin(1e-12));
    CHECK(norm(LinfSpace{}, ind, b) == 1.0);
    CHECK_THROWS_AS(norm(LpSpace{0.5}, ind, b), std::invalid_argument);
}

TEST_CASE("norm: mixed norm collapses to Lp when exponents agree") {
    Cube b2{{0.0, 0.0}, 2.0, 2};
    Rng rng(7321u);
    auto f = random_trig_poly(rng, b2, {128, 128});
    Cube s{{0.1, -0.2}, 1.25, 2};
    for (double p : {1.0, 2.0, 3.0}) {
        double mixed = norm(MixedNormSpace{{p, p}}, f, s);
        double lp = norm(LpSpace{p}, f, s);
        CHECK(mixed == Catch::Approx(lp).epsilon(1e-8));
    }
    // definitional sanity in an asymmetric case: iterated by hand
    double m = norm(MixedNormSpace{{3.0, 1.5}}, f, s);
    CHECK(std::isfinite(m));
    CHECK(m > 0.0);
}

TEST_CASE("norm: constant-exponent variable Lp equals Lp") {
    Cube b{{0.0, 0.0}, 4.0, 1};
    Rng rng(991u);
    auto f = random_trig_poly(rng, b, {2048, 1});
    Cube s = seg(-1.5, 1.0);
    for (double p : {1.5, 2.0, 4.0}) {
        auto pexp = constant_function(b, {2048, 1}, p);
        double vl = norm(VariableLpSpace{pexp}, f, s);
        double lp = norm(LpSpace{p}, f, s);
        CHECK(vl == Catch::Approx(lp).epsilon(1e-8));
    }
    // non-constant exponent: finite, positive and lattice-monotone
    auto ramp = sample_function(
        [](std::array<double, 2> p) { return 2.0 + 0.5 * p[0] / 4.0; }, b, {2048, 1});
    double v = norm(VariableLpSpace{ramp}, f, s);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
}

TEST_CASE("norm: Lorentz L{2,2} of a unit indicator is sqrt(2)") {
    Cube b{{0.0, 0.0}, 4.0, 1};
    auto ind = indicator_function(b, {4096, 1}, seg(0.0, 1.0));
    CHECK(norm(LorentzSpace{2.0, 2.0}, ind, b) ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-3));
}

TEST_CASE("norm: Lorentz rearrangement average matches the exhaustive subset oracle") {
    // 12-cell discrete support; compare f**(t) at subset-measurable t
    Cube b{{0.0, 0.0}, 1.2, 1};
    std::vector<double> vals{3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0, 5.0, 8.0};
    GridFunction f(b, {12, 1}, vals);
    std::vector<double> meas(12, 0.1);
    for (int k = 1; k <= 12; ++k) {
        double t = 0.1 * k;
        double ours = rearrangement_average(f, b, t);
        double oracle = subset_oracle(vals, meas, t);
        CHECK(ours == Catch::Approx(oracle).margin(1e-10));
    }
}

TEST_CASE("norm: Herz annuli and parameter ranges") {
    Cube b{{0.0, 0.0}, 4.0, 1};
    auto ind = indicator_function(b, {4096, 1}, seg(-1.0, 1.0));
    double v = norm(HerzSpace{0.1, 2.0, 2.0, true}, ind, b);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    double vn = norm(HerzSpace{0.1, 2.0, 2.0, false}, ind, b);
    CHECK(std::isfinite(vn));
    // alpha outside (-n(1-1/q), n/q) rejected
    CHECK_THROWS_AS(norm(HerzSpace{0.9, 2.0, 2.0, true}, ind, b), std::invalid_argument);
}

TEST_CASE("norm: weighted Lp agrees with a direct weighted quadrature") {
    Cube b{{0.0, 0.0}, 2.0, 1};
    auto f = catalog("bump", {}, b, {2048, 1});
    auto w = catalog("power_weight", {0.5}, b, {2048, 1});
    Cube s = seg(-1.0, 1.0);
    auto weighted = combine(f, w, [](double a, double c) { return a * a * c; });
    double direct = std::sqrt(integrate(weighted, s));
    CHECK(norm(WeightedLpSpace{2.0, w}, f, s) == Catch::Approx(direct).epsilon(1e-10));
}

TEST_CASE("lattice property: |g| <= |f| implies norm(g) <= norm(f)") {
    Cube b{{0.0, 0.0}, 2.0, 1};
    Rng rng(314159u);
    auto w = catalog("power_weight", {0.5}, b, {1024, 1});
    auto pexp = sample_function(
        [](std::array<double, 2> p) { return 2.0 + 0.4 * std::sin(3.0 * p[0]); }, b,
        {1024, 1});
    std::vector<SpaceSpec> spaces{LpSpace{1.5},
                                  LinfSpace{},
                                  WeightedLpSpace{2.0, w},
                                  VariableLpSpace{pexp},
                                  MorreySpace{3.0, 2.0},
                                  LorentzSpace{2.0, 3.0},
                                  HerzSpace{0.1, 2.0, 2.0, true}};
    Cube s = seg(-0.75, 0.875);
    for (int trial = 0; trial < 8; ++trial) {
        auto f = random_trig_poly(rng, b, {1024, 1});
        std::vector<double> gv(f.values().size());
        Rng mask(1000u + trial);
        for (std::size_t i = 0; i < gv.size(); ++i)
            gv[i] = f.values()[i] * mask.uniform(0.0, 1.0);
        GridFunction g(b, {1024, 1}, gv);
        for (const auto& X : spaces)
            CHECK(norm(X, g, s) <= norm(X, f, s) * (1.0 + 1e-9));
    }
}

TEST_CASE("indicator norms are finite and positive for every backend") {
    Cube b{{0.0, 0.0}, 2.0, 1};
    auto ones = constant_function(b, {1024, 1}, 1.0);
    auto w = catalog("power_weight", {0.5}, b, {1024, 1});
    auto pexp = constant_function(b, {1024, 1}, 2.5);
    Cube q = seg(-0.5, 0.25);
    std::vector<SpaceSpec> spaces{LpSpace{1.0},
                                  LpSpace{2.0},
                                  LinfSpace{},
                                  WeightedLpSpace{2.0, w},
                                  VariableLpSpace{pexp},
                                  MorreySpace{3.0, 2.0},
                                  LorentzSpace{2.0, 2.0},
                                  HerzSpace{0.1, 2.0, 2.0, true},
                                  HerzSpace{0.1, 2.0, 2.0, false}};
    for (const auto& X : spaces) {
        double v = norm(X, ones, q);
        INFO(space_name(X));
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
}

TEST_CASE("associate: modeled pairings and the unmodeled cases") {
    CHECK(std::get<LpSpace>(associate(LpSpace{2.0})).p == Catch::Approx(2.0));
    CHECK(std::get<LpSpace>(associate(LpSpace{3.0})).p == Catch::Approx(1.5));

    Cube b{{0.0, 0.0}, 2.0, 1};
    auto w = catalog("power_weight", {0.5}, b, {512, 1});
    auto aw = std::get<WeightedLpSpace>(associate(WeightedLpSpace{2.0, w}));
    CHECK(aw.p == Catch::Approx(2.0));
    // w^{1-p'} = w^{-1} at p = 2
    for (int i : {0, 100, 400})
        CHECK(aw.weight.at(i) == Catch::Approx(1.0 / w.at(i)).epsilon(1e-12));

    auto am = std::get<MixedNormSpace>(associate(MixedNormSpace{{3.0, 1.5}}));
    CHECK(am.p[0] == Catch::Approx(1.5));
    CHECK(am.p[1] == Catch::Approx(3.0));

    auto ah = std::get<HerzSpace>(associate(HerzSpace{0.1, 2.0, 2.0, true}));
    CHECK(ah.alpha == Catch::Approx(-0.1));
    CHECK(ah.p == Catch::Approx(2.0));
    CHECK(ah.q == Catch::Approx(2.0));

    CHECK_THROWS_WITH(associate(MorreySpace{3.0, 2.0}), "associate not modeled");
    CHECK_THROWS_WITH(associate(LorentzSpace{2.0, 2.0}), "associate not modeled");
    CHECK_THROWS_WITH(associate(LpSpace{1.0}), "associate not modeled");
    CHECK_THROWS_WITH(associate(LinfSpace{}), "associate not modeled");
}

TEST_CASE("Hoelder: ∫|fg| <= ||f||_X ||g||_X' for the paired backends") {
    Cube b{{0.0, 0.0}, 2.0, 1};
    auto w = catalog("power_weight", {0.5}, b, {1024, 1});
    std::vector<SpaceSpec> spaces{LpSpace{1.5}, WeightedLpSpace{2.0, w},
                                  HerzSpace{0.1, 2.0, 2.0, true}};
    Cube s = seg(-1.0, 1.0);
    Rng rng(2718u);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_trig_poly(rng, b, {1024, 1});
        auto g = random_trig_poly(rng, b, {1024, 1});
        double pairing = integrate(abs_product(f, g), s);
        for (const auto& X : spaces) {
            INFO(space_name(X));
            CHECK(pairing <= norm(X, f, s) * norm(associate(X), g, s) * 1.01);
        }
    }
    // 2-D mixed-norm pairing
    Cube b2{{0.0, 0.0}, 2.0, 2};
    Cube s2{{0.0, 0.0}, 2.0, 2};
    Rng rng2(577u);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_trig_poly(rng2, b2, {128, 128});
        auto g = random_trig_poly(rng2, b2, {128, 128});
        double pairing = integrate(abs_product(f, g), s2);
        SpaceSpec X = MixedNormSpace{{3.0, 1.5}};
        CHECK(pairing <= norm(X, f, s2) * norm(associate(X), g, s2) * 1.01);
    }
}

TEST_CASE("reverse Hoelder: ||1_Q||_X ||1_Q||_X' <= C |Q| with one C across scales") {
    Cube b{{0.0, 0.0}, 2.0, 1};
    auto ones = constant_function(b, {4096, 1}, 1.0);
    auto w = catalog("power_weight", {0.5}, b, {4096, 1});
    std::vector<SpaceSpec> spaces{LpSpace{1.5}, WeightedLpSpace{2.0, w},
                                  HerzSpace{0.1, 2.0, 2.0, true}};
    for (const auto& X : spaces) {
        SpaceSpec Xp = associate(X);
        double C = 0.0;
        for (int k = 1; k <= 4; ++k) {
            double edge = 2.0 / std::pow(2.0, k);
            for (double c0 : {-0.5, 0.0, 0.5}) {
                Cube q{{c0, 0.0}, edge, 1};
                double prod = norm(X, ones, q) * norm(Xp, ones, q) / q.volume();
                CHECK(std::isfinite(prod));
                C = std::max(C, prod);
            }
        }
        INFO(space_name(X));
        CHECK(C <= 4.0);  // a single modest constant per space
    }
}

TEST_CASE("constant growth: norms of 1_{[-R,R]} blow up through the sampled range") {
    Cube b{{0.0, 0.0}, 16.0, 1};
    auto ones = constant_function(b, {4096, 1}, 1.0);
    auto w = catalog("power_weight", {0.5}, b, {4096, 1});
    auto pexp = constant_function(b, {4096, 1}, 2.0);
    std::vector<SpaceSpec> spaces{LpSpace{1.5},
                                  WeightedLpSpace{2.0, w},
                                  VariableLpSpace{pexp},
                                  MorreySpace{3.0, 2.0},
                                  LorentzSpace{2.0, 2.0},
                                  HerzSpace{0.1, 2.0, 2.0, true},
                                  MixedNormSpace{{2.0, 2.0}}};
    for (const auto& X : spaces) {
        double prev = 0.0;
        INFO(space_name(X));
        for (double R : {1.0, 2.0, 4.0, 8.0}) {
            double v = norm(X, ones, seg(-R, R));
            CHECK(v > prev * (1.0 + 1e-9));
            prev = v;
        }
    }
}

TEST_CASE("Morrey{p,p} collapses to global Lp on compact support") {
    Cube b{{0.0, 0.0}, 4.0, 1};
    auto f = catalog("bump", {}, b, {4096, 1});
    for (double p : {2.0, 3.0}) {
        double mp = norm(MorreySpace{p, p}, f, b);
        double lp = norm(LpSpace{p}, f, b);
        CHECK(mp == Catch::Approx(lp).epsilon(0.02));
        CHECK(mp <= lp * (1.0 + 1e-9));  // sampled sup cannot exceed the full norm
    }
}

TEST_CASE("maximal: constants, indicator value at distance, and radii monotonicity") {
    Cube b{{0.0, 0.0}, 8.0, 1};
    auto c = constant_function(b, {2048, 1}, 1.5);
    std::vector<double> radii{0.25, 0.5, 1.0, 2.0};
    auto mc = maximal(c, radii);
    for (int i = 600; i < 1400; i += 100) CHECK(mc.at(i) == Catch::Approx(1.5).margin(1e-12));

    auto ind = indicator_function(b, {2048, 1}, seg(0.0, 1.0));
    std::vector<double> wide{0.0078125, 0.5, 1.0, 2.0, 4.0};
    auto mi = maximal(ind, wide);
    // hand oracle: best ball at x=2 covers [0,1] with radius 2 -> 1/4
    CHECK(mi.eval(2.0) == Catch::Approx(0.25).margin(5e-3));

    // supersets of radii never lower the value; smallest-radius average is dominated
    auto msub = maximal(ind, std::vector<double>{0.5, 1.0});
    for (int i = 0; i < 2048; i += 64) {
        CHECK(mi.at(i) >= msub.at(i) - 1e-12);
    }
    CHECK_THROWS_AS(maximal(ind, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(maximal(ind, std::vector<double>{1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("ap_constant: constants give 1, power weight is stable under refinement") {
    Cube b{{0.0, 0.0}, 2.0, 1};
    std::vector<Cube> family;
    for (int k = 2; k <= 9; ++k) {
        double edge = 2.0 / std::pow(2.0, k);
        for (double t : {-0.7, -0.2, 0.0, 0.3, 0.8})
            family.push_back(Cube{{t * (1.0 - 0.5 * edge), 0.0}, edge, 1});
    }
    for (double c : {1.0, 3.7}) {
        auto w = constant_function(b, {2048, 1}, c);
        CHECK(ap_constant(w, 2.0, family) == Catch::Approx(1.0).margin(1e-10));
    }
    auto w1 = catalog("power_weight", {0.5}, b, {4096, 1});
    auto w2 = catalog("power_weight", {0.5}, b, {8192, 1});
    double a1 = ap_constant(w1, 2.0, family);
    double a2 = ap_constant(w2, 2.0, family);
    CHECK(a1 == Catch::Approx(a2).epsilon(0.05));
    // analytic oracle over the same cube family: antiderivatives of |x|^{±1/2}
    auto F = [](double x) { return 2.0 / 3.0 * std::copysign(std::pow(std::abs(x), 1.5), x); };
    auto G = [](double x) { return 2.0 * std::copysign(std::sqrt(std::abs(x)), x); };
    double oracle = 0.0;
    for (const Cube& q : family) {
        double a = q.lo(0), bb = q.hi(0);
        oracle = std::max(oracle, (F(bb) - F(a)) / (bb - a) * (G(bb) - G(a)) / (bb - a));
    }
    CHECK(a1 == Catch::Approx(oracle).epsilon(0.05));

    auto bad = constant_function(b, {64, 1}, -1.0);
    CHECK_THROWS_WITH(ap_constant(bad, 2.0, family), "nonpositive weight sample");
    CHECK_THROWS_AS(ap_constant(w1, 1.0, family), std::invalid_argument);
}
