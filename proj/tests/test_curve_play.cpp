#include <doctest.h>

#include "gen.hpp"
#include "hystrd/errors.hpp"
#include "hystrd/play.hpp"

#include <cmath>

using namespace hystrd;

TEST_CASE("curve families") {
    const CurveSpec sp = SignedPower{1.2, 0.5, -0.1};
    CHECK(sp(4.0) == doctest::Approx(2.3));
    CHECK(sp(-4.0) == doctest::Approx(-2.5));
    CHECK(sp(0.0) == doctest::Approx(-0.1));

    const CurveSpec af = Affine{2.0, 1.0};
    CHECK(af(3.0) == 7.0);

    const CurveSpec hy = Hyperbolic{0.35, 0.4};
    CHECK(hy(0.35) == 0.0);
    CHECK(hy(0.375) == doctest::Approx(1.0));
    CHECK(std::isinf(hy(0.4)));
    CHECK(std::isinf(hy(0.9)));
    CHECK_THROWS_AS(CurveSpec(Hyperbolic{0.5, 0.4}), InvalidArgument);

    const CurveSpec cl = CurveSpec::clamped(0.0, 0.3, hy);
    CHECK(cl(0.1) == 0.0);
    CHECK(cl(0.39) == 0.3);
    CHECK(cl(5.0) == 0.3);
    CHECK(cl(0.36) == doctest::Approx(0.25));

    const CurveSpec tab = Tabulated{{0.0, 1.0, 2.0}, {0.0, 2.0, 2.5}};
    CHECK(tab(-1.0) == 0.0);
    CHECK(tab(0.5) == doctest::Approx(1.0));
    CHECK(tab(1.5) == doctest::Approx(2.25));
    CHECK(tab(9.0) == 2.5);
    CHECK_THROWS_AS(CurveSpec(Tabulated{{0.0, 0.0}, {1.0, 2.0}}), InvalidArgument);
    CHECK_THROWS_AS(CurveSpec(Tabulated{{0.0, 1.0}, {2.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(CurveSpec(Tabulated{{}, {}}), InvalidArgument);

    CHECK(sampled_lipschitz(Affine{3.0, 0.0}, -1.0, 1.0) == doctest::Approx(3.0));
    CHECK(!sp.describe().empty());
    CHECK(cl == CurveSpec::clamped(0.0, 0.3, Hyperbolic{0.35, 0.4}));
    CHECK(!(cl == CurveSpec::clamped(0.0, 0.31, Hyperbolic{0.35, 0.4})));
}

TEST_CASE("init_play clamps into the band") {
    const PlayBounds band{Affine{0.0, 1.0}, Affine{0.0, 0.0}};
    CHECK(init_play(band, 0.4, 0.0).R == 0.4);
    CHECK(init_play(band, 3.0, 0.0).R == 1.0);
    CHECK(init_play(band, -3.0, 0.0).R == 0.0);

    const PlayBounds dich{SignedPower{1.2, 0.5, 0.1}, SignedPower{1.2, 0.5, -0.1}};
    const double R = init_play(dich, 0.0, 1.77).R;
    CHECK(R >= 1.48);
    CHECK(R <= 1.51);

    const PlayBounds inverted{Affine{0.0, 0.0}, Affine{0.0, 1.0}};
    CHECK_THROWS_AS(init_play(inverted, 0.5, 0.0), InvalidBounds);
    CHECK(init_play_unchecked(inverted, 0.5, 0.0).R == 0.0);
    CHECK_THROWS_AS(validate_bounds(inverted, -1.0, 1.0), InvalidBounds);
    CHECK_NOTHROW(validate_bounds(dich, 0.0, 5.0));
}

TEST_CASE("exact play examples") {
    const PlayBounds band{Affine{0.0, 1.0}, Affine{0.0, 0.0}};
    PlayState s = init_play(band, 0.5, 0.0);
    for (double w : {3.0, -2.0, 10.0, 0.1}) {
        s = exact_play_step(s, w);
        CHECK(s.R == 0.5);
    }
    CHECK(s.w_min == -2.0);
    CHECK(s.w_max == 10.0);

    const PlayBounds lines{Affine{1.0, 1.0}, Affine{1.0, 0.0}};
    PlayState t = init_play(lines, 0.0, 0.0);
    for (int i = 1; i <= 20; ++i) {
        const double w = 0.1 * i;
        t = exact_play_step(t, w);
        CHECK(t.R == doctest::Approx(w));
    }
    const PlayState held = exact_play_step(t, t.w);
    CHECK(held.R == t.R);
}

TEST_CASE("regularised play right-hand side") {
    const PlayBounds band{Affine{1.0, 1.0}, Affine{1.0, 0.0}};
    PlayState s = init_play(band, 0.5, 0.0);
    CHECK(regularized_play_rhs(s, 0.0, 1e-4) == 0.0);
    s.R = -0.01;
    CHECK(regularized_play_rhs(s, 0.0, 1e-4) == doctest::Approx(100.0));
    s.R = 1.02;
    CHECK(regularized_play_rhs(s, 0.0, 1e-2) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(regularized_play_rhs(s, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(regularized_play_step(s, 0.0, 1e-4, 1e-3), InvalidArgument);
}

TEST_CASE("vi residual") {
    const PlayBounds band{Affine{1.0, 1.0}, Affine{1.0, 0.0}};
    std::vector<double> t, R, w;
    PlayState s = init_play(band, 0.3, 0.0);
    gen::Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const double wi = i == 0 ? 0.0 : w.back() + rng.uniform(-0.05, 0.05);
        if (i) s = exact_play_step(s, wi);
        t.push_back(0.01 * i);
        R.push_back(s.R);
        w.push_back(wi);
    }
    CHECK(vi_residual(t, R, w, band) <= 1e-12);

    // constant R inside a moving band
    std::vector<double> Rc(200, 0.5), wc(200);
    for (int i = 0; i < 200; ++i) wc[i] = 0.2 * std::sin(0.05 * i);
    CHECK(vi_residual(t, Rc, wc, band) == 0.0);

    // R pushed up while sitting on the upper curve: 0.1 * width / dt
    const std::vector<double> tt{0.0, 0.5}, RR{1.0, 1.1}, ww{0.0, 0.1};
    CHECK(vi_residual(tt, RR, ww, band) == doctest::Approx(0.1 * 1.0 / 0.5));

    CHECK_THROWS_AS(vi_residual(tt, RR, std::vector<double>{0.0}, band), DimensionError);
}

TEST_CASE("property: band confinement and monotone-segment formula") {
    gen::Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pair = gen::curve_pair(rng);
        const PlayBounds b{pair.upper, pair.lower};
        const auto brk = gen::monotone_breakpoints(rng, rng.integer(1, 8), -2.0, 2.0);
        PlayState s = init_play(b, rng.uniform(-3, 3), brk.front());
        double R_closed = s.R;
        const auto path = gen::subdivide(brk, 7);
        for (std::size_t i = 1; i < path.size(); ++i) {
            s = exact_play_step(s, path[i]);
            CHECK(s.R <= b.upper(path[i]));
            CHECK(s.R >= b.lower(path[i]));
            if (i % 7 == 0) {
                const double we = path[i];
                R_closed = std::min(b.upper(we), std::max(b.lower(we), R_closed));
                CHECK(std::abs(s.R - R_closed) <= 1e-14);
            }
        }
    }
}

TEST_CASE("property: Lipschitz stability") {
    gen::Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.uniform(0.1, 2.0);
        const PlayBounds b{Affine{a, 1.0}, Affine{a, 0.0}};
        const auto path = gen::subdivide(gen::monotone_breakpoints(rng, 5, -2.0, 2.0), 5);
        std::vector<double> path2 = path;
        for (double& w : path2) w += rng.uniform(-0.05, 0.05);
        const double R1 = rng.uniform(-1, 2), R2 = rng.uniform(-1, 2);
        PlayState s1 = init_play(b, R1, path.front());
        PlayState s2 = init_play(b, R2, path2.front());
        double dw = std::abs(path.front() - path2.front());
        const double d0 = std::abs(s1.R - s2.R);
        for (std::size_t i = 1; i < path.size(); ++i) {
            s1 = exact_play_step(s1, path[i]);
            s2 = exact_play_step(s2, path2[i]);
            dw = std::max(dw, std::abs(path[i] - path2[i]));
            CHECK(std::abs(s1.R - s2.R) <= std::max(d0, a * dw) + 1e-12);
        }
    }
}
