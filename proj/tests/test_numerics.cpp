#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "quadpat/kernels.hpp"
#include "quadpat/numerics.hpp"

using namespace quadpat;

TEST_CASE("gauss-legendre integrates polynomials and oscillations") {
    // exact for degree <= 2n-1
    const double v = integrate_gl([](double x) { return x * x * x * x * x; }, 0.0, 1.0, 1, 8);
    CHECK(std::abs(v - 1.0 / 6.0) < 1e-14);
    const double osc = integrate_gl([](double x) { return std::cos(20.0 * x); }, 0.0, 1.0, 8, 16);
    CHECK(std::abs(osc - std::sin(20.0) / 20.0) < 1e-12);
}

TEST_CASE("hurwitz zeta against classical values") {
    CHECK(std::abs(hurwitz_zeta(2.0, 1.0) - M_PI * M_PI / 6.0) < 1e-12);
    CHECK(std::abs(hurwitz_zeta(2.0, 0.5) - M_PI * M_PI / 2.0) < 1e-12);
    CHECK(std::abs(hurwitz_zeta(2.5, 1.0) - 1.3414872572509171) < 1e-12);
    // shift identity zeta(s, a) = a^-s + zeta(s, a+1)
    const double s = 2.2, a = 0.37;
    CHECK(std::abs(hurwitz_zeta(s, a) - (std::pow(a, -s) + hurwitz_zeta(s, a + 1.0))) < 1e-12);
}

TEST_CASE("riesz constant: rho_{1/2} = 1 and endpoint stability") {
    CHECK(std::abs(riesz_constant(0.5) - 1.0) < 1e-13);
    CHECK(riesz_constant(1e-6) > 0.0);
    CHECK(riesz_constant(1e-6) < 1e-4);
    CHECK(riesz_constant(0.999) > 100.0);
}

TEST_CASE("segment abs integral matches quadrature") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int it = 0; it < 200; ++it) {
        const cplx z0(u(rng), u(rng)), z1(u(rng), u(rng));
        const double h = 0.01 + std::abs(u(rng));
        const double ref = integrate_gl(
            [&](double t) { return std::abs(z0 + (z1 - z0) * (t / h)); }, 0.0, h, 64, 16);
        CHECK(std::abs(segment_abs_integral(z0, z1, h) - ref) < 1e-9 * (1.0 + ref));
    }
    // crossing through the origin
    const double v = segment_abs_integral(cplx(-1, 0), cplx(1, 0), 2.0);
    CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("fft: convolution against the direct sum") {
    std::vector<cplx> a{1, 2, 3, 4, 0, 0, 0, 0}, b{0.5, -1, 2, 0, 0, 0, 0, 0};
    auto fa = a, fb = b;
    fft_pow2(fa);
    fft_pow2(fb);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);
    for (std::size_t c = 0; c < 8; ++c) {
        cplx direct = 0.0;
        for (std::size_t i = 0; i <= c && i < 4; ++i)
            if (c - i < 3) direct += a[i] * b[c - i];
        CHECK(std::abs(fa[c] - direct) < 1e-12);
    }
}

TEST_CASE("smooth step: symmetry and range") {
    for (double x : {0.1, 0.25, 0.5, 0.77})
        CHECK(std::abs(smooth_step(x) + smooth_step(1 - x) - 1.0) < 1e-15);
    CHECK(smooth_step(-1.0) == 0.0);
    CHECK(smooth_step(2.0) == 1.0);
    CHECK(smooth_step(0.6) > smooth_step(0.4));
}

// ---------------------------------------------------------------------------
// Fixed kernels
// ---------------------------------------------------------------------------

TEST_CASE("mollifier: normalizer, plateau, mass") {
    // independent quadrature of the raw bump
    const double z = 2.0 * integrate_gl([](double x) { return MollifierPhi::raw(x); }, 0.0, 1.0, 256, 16);
    CHECK(std::abs(z - 0.4439938161680794) < 1e-12);
    CHECK(std::abs(MollifierPhi::normalizer() - z) < 1e-11);

    CHECK(std::abs(MollifierPhi::value(0.5) - 0.5936955167320140) < 1e-9);
    for (double x = -0.5; x <= 0.5; x += 1.0 / 64) CHECK(MollifierPhi::value(x) >= 0.5);
    CHECK(MollifierPhi::value(1.0) == 0.0);
    CHECK(MollifierPhi::value(-0.3) == MollifierPhi::value(0.3));

    CHECK(MollifierPhi::cumulative(-1.0) == 0.0);
    CHECK(MollifierPhi::cumulative(1.0) == 1.0);
    CHECK(std::abs(MollifierPhi::cumulative(0.0) - 0.5) < 1e-15);
    for (double x : {-0.73, -0.2, 0.11, 0.468, 0.9}) {
        const double direct =
            integrate_gl([](double y) { return MollifierPhi::value(y); }, -1.0, x, 200, 16);
        CHECK(std::abs(MollifierPhi::cumulative(x) - direct) < 1e-11);
    }
}

TEST_CASE("mollifier transform: value at 0, evenness, decay constants") {
    CHECK(std::abs(MollifierPhi::transform(0.0) - 1.0) < 1e-12);
    CHECK(std::abs(MollifierPhi::transform(3.7) - MollifierPhi::transform(-3.7)) < 1e-14);
    // derivative of the transform vanishes at 0 (even real kernel)
    const double d = (MollifierPhi::transform(1e-4) - MollifierPhi::transform(-1e-4)) / 2e-4;
    CHECK(std::abs(d) < 1e-9);
    CHECK(MollifierPhi::sup_deriv1() > 1.79);
    CHECK(MollifierPhi::sup_deriv2() > 17.4);
    CHECK(MollifierPhi::quadratic_bound() > 3.1);
    CHECK(MollifierPhi::quintic_decay() > 8.7);
    for (double xi : {0.05, 0.2, 0.5}) {
        CHECK(std::abs(MollifierPhi::transform(xi) - 1.0) <=
              MollifierPhi::quadratic_bound() * xi * xi + 1e-12);
    }
    for (double xi : {0.3, 1.7, 5.55, 11.0, 24.9}) {
        CHECK(std::abs(MollifierPhi::transform_cached(xi) - MollifierPhi::transform(xi)) < 1e-8);
    }
}

TEST_CASE("window tau: plateau, support, L1 norm 9/4") {
    CHECK(WindowTau::value(1.0) == 1.0);
    CHECK(WindowTau::value(1.5) == 1.0);
    CHECK(WindowTau::value(2.0) == 1.0);
    CHECK(WindowTau::value(0.5) == 0.0);
    CHECK(WindowTau::value(4.0) == 0.0);
    CHECK(WindowTau::value(0.75) > 0.0);
    CHECK(WindowTau::value(0.75) < 1.0);
    CHECK(std::abs(WindowTau::l1_norm() - 2.25) < 1e-12);
    // tau_l support: [2^{-l-1}, 2^{-l+2}]
    CHECK(WindowTau::scaled(1.0 / 32.0, 5) == 1.0);
    CHECK(WindowTau::scaled(1.0 / 64.0 - 1e-9, 5) == 0.0);
    CHECK(WindowTau::scaled(1.0 / 8.0 + 1e-9, 5) == 0.0);
}

TEST_CASE("weight varphi: mass 1, sup 2, transform magnitude") {
    CHECK(std::abs(integrate_gl([](double x) { return WeightVarphi::value(x); }, 0.0, 1.0, 256, 16) -
                   1.0) < 1e-10);
    CHECK(WeightVarphi::value(0.5) == 2.0);
    for (double x = 0.0; x <= 1.0; x += 1.0 / 128) CHECK(WeightVarphi::value(x) <= 2.0);
    CHECK(WeightVarphi::value(0.0) == 0.0);
    CHECK(WeightVarphi::value(1.0) == 0.0);
    CHECK(std::abs(WeightVarphi::cumulative(0.5) - 0.5) < 1e-15);
    CHECK(std::abs(WeightVarphi::cumulative(1.0) - 1.0) < 1e-15);
    CHECK(std::abs(WeightVarphi::cumulative(0.3) + WeightVarphi::cumulative(0.7) - 1.0) < 1e-14);

    for (double xi : {0.0, 0.8, 2.3, 7.1}) {
        const cplx direct = integrate_gl_c(
            [&](double x) {
                const double ph = -2.0 * M_PI * x * xi;
                return cplx(WeightVarphi::value(x) * std::cos(ph),
                            WeightVarphi::value(x) * std::sin(ph));
            },
            0.0, 1.0, 64, 16);
        CHECK(std::abs(std::abs(direct) - WeightVarphi::transform_abs(xi)) < 1e-10);
        CHECK(std::abs(WeightVarphi::transform(xi) - direct) < 1e-10);
    }
    CHECK(WeightVarphi::quintic_decay() > 60.0);
}

TEST_CASE("regression slope") {
    std::vector<double> x{0, 1, 2, 3, 4}, y;
    for (double v : x) y.push_back(3.0 - 0.7 * v);
    CHECK(std::abs(regression_slope(x, y) + 0.7) < 1e-12);
}
