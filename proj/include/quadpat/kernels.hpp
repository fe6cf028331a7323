#pragma once

// The three fixed smooth functions of the pipeline:
//
//   MollifierPhi  -- even bump exp(-1/(1-x^2)) on (-1,1), normalized to mass 1;
//                    phi(x) >= 1/2 on |x| <= 1/2.  Convolution kernel phi_eps.
//   WindowTau     -- smooth window, 1 on [1,2], supported in [1/2, 4].
//   WeightVarphi  -- smooth symmetric tent on (0,1), integral 1, sup-norm 2;
//                    the per-child weight of the spectral-gap construction.
//
// Each exposes value / cumulative / Fourier transform plus a few measured
// decay constants used by quadrature error budgets.  Cumulatives come from
// a dense table with Hermite interpolation (exact derivative at the nodes),
// symmetrized so total masses are exact.

#include <cmath>
#include <vector>

#include "quadpat/numerics.hpp"
#include "quadpat/sampled.hpp"

namespace quadpat {

namespace detail {

// Cumulative table of f over [a, b]: per-step Gauss panels, then a prefix sum.
struct CumTable {
    double a, b, h;
    std::vector<double> cum;   // cum[k] = int_a^{a+k h} f
    std::vector<double> deriv; // f at nodes (Hermite slope)

    template <class F>
    static CumTable build(F&& f, double a, double b, int steps) {
        CumTable t;
        t.a = a;
        t.b = b;
        t.h = (b - a) / steps;
        t.cum.resize(steps + 1);
        t.deriv.resize(steps + 1);
        t.cum[0] = 0.0;
        long double acc = 0.0L;
        for (int k = 0; k < steps; ++k) {
            acc += integrate_gl(f, a + k * t.h, a + (k + 1) * t.h, 1, 12);
            t.cum[k + 1] = (double)acc;
        }
        for (int k = 0; k <= steps; ++k) t.deriv[k] = f(a + k * t.h);
        return t;
    }

    void scale(double s) {
        for (auto& c : cum) c *= s;
        for (auto& d : deriv) d *= s;
    }

    // Cubic Hermite between table nodes.
    double eval(double x) const {
        if (x <= a) return 0.0;
        if (x >= b) return cum.back();
        const double t = (x - a) / h;
        std::size_t k = (std::size_t)t;
        if (k >= cum.size() - 1) k = cum.size() - 2;
        const double u = t - (double)k;
        const double y0 = cum[k], y1 = cum[k + 1];
        const double d0 = deriv[k] * h, d1 = deriv[k + 1] * h;
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * d0 +
               (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * d1;
    }
};

inline double scan_sup(const std::function<double(double)>& f, double a, double b, int n) {
    double m = 0.0;
    for (int i = 0; i <= n; ++i) m = std::max(m, std::abs(f(a + (b - a) * i / n)));
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// MollifierPhi
// ---------------------------------------------------------------------------

class MollifierPhi {
public:
    // raw bump, unnormalized
    static double raw(double x) {
        const double d = 1.0 - x * x;
        return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
    }

    // int_{-1}^{1} raw = 0.4439938161680787 (re-derived by quadrature in tests)
    static double normalizer() { return tables().normalizer; }

    static double value(double x) { return raw(x) / tables().normalizer; }

    static double deriv(double x) {
        const double d = 1.0 - x * x;
        if (d <= 0.0) return 0.0;
        return value(x) * (-2.0 * x / (d * d));
    }

    // int_{-1}^{x} phi;  cumulative(1) == 1 exactly by construction.
    static double cumulative(double x) {
        if (x <= -1.0) return 0.0;
        if (x >= 1.0) return 1.0;
        const auto& t = tables();
        return x < 0.0 ? 0.5 - t.half.eval(-x) : 0.5 + t.half.eval(x);
    }

    // phihat(xi) = int phi(x) e^{-2 pi i x xi} dx, real and even.
    static double transform(double xi) {
        xi = std::abs(xi);
        const int panels = std::max(6, (int)std::ceil(xi / 2.5));
        return 2.0 * integrate_gl([&](double x) { return value(x) * std::cos(2.0 * M_PI * x * xi); },
                                  0.0, 1.0, panels, 24);
    }

    // dense-table interpolation of the transform for hot loops; beyond the
    // table |phihat| < c5/40^5 ~ 1e-9 and the cached value is 0 (the floor is
    // accounted for in the weighted-integral tail bounds)
    static double transform_cached(double xi) {
        xi = std::abs(xi);
        static const std::vector<double>& table = transform_table();
        constexpr double step = 1.0 / 256.0, span = 40.0;
        if (xi >= span - 2.0 * step) return 0.0;
        const double t = xi / step;
        const std::size_t k = std::max<std::size_t>(1, std::min((std::size_t)t, table.size() - 3));
        const double u = t - (double)k;
        // 4-point Lagrange around k
        const double ym = table[k - 1], y0 = table[k], y1 = table[k + 1], y2 = table[k + 2];
        return ym * (-u * (u - 1.0) * (u - 2.0) / 6.0) + y0 * ((u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0) +
               y1 * (-(u + 1.0) * u * (u - 2.0) / 2.0) + y2 * ((u + 1.0) * u * (u - 1.0) / 6.0);
    }

    // measured/derived constants
    static double sup_deriv1() { return tables().d1; }            // sup |phi'|
    static double sup_deriv2() { return tables().d2; }            // sup |phi''|
    static double quadratic_bound() { return tables().c2; }       // |phihat(xi)-1| <= c2 xi^2
    static double quintic_decay() { return tables().c5; }         // |xi|^5 |phihat| <= c5

private:
    static const std::vector<double>& transform_table() {
        static const std::vector<double> t = [] {
            constexpr double step = 1.0 / 256.0, span = 40.0;
            std::vector<double> v((std::size_t)(span / step) + 4);
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = transform((double)k * step);
            return v;
        }();
        return t;
    }

    struct Tables {
        detail::CumTable half;  // int_0^x phi on [0,1]
        double normalizer, d1, d2, c2, c5;
    };

    // the builder only uses raw() and the local normalizer, never the public
    // accessors (those would re-enter this initializer)
    static const Tables& tables() {
        static const Tables t = [] {
            Tables tb;
            auto rawcum = detail::CumTable::build([](double x) { return raw(x); }, 0.0, 1.0, 1 << 14);
            tb.normalizer = 2.0 * rawcum.cum.back();
            rawcum.scale(0.5 / rawcum.cum.back());  // cumulative(1) - cumulative(0) == 1/2 exactly
            tb.half = std::move(rawcum);
            const double z = tb.normalizer;
            auto val = [z](double x) { return raw(x) / z; };
            auto drv = [val](double x) {
                const double d = 1.0 - x * x;
                return d > 0.0 ? val(x) * (-2.0 * x / (d * d)) : 0.0;
            };
            auto tf = [val](double xi) {
                const int panels = std::max(6, (int)std::ceil(std::abs(xi) / 2.5));
                return 2.0 * integrate_gl(
                                 [&](double x) { return val(x) * std::cos(2.0 * M_PI * x * xi); },
                                 0.0, 1.0, panels, 24);
            };
            tb.d1 = 1.05 * detail::scan_sup(drv, 0.0, 1.0, 4000);
            tb.d2 = 1.10 * detail::scan_sup(
                               [&](double x) {
                                   const double e = 1e-5;
                                   return (val(x + e) - 2 * val(x) + val(x - e)) / (e * e);
                               },
                               0.0, 0.995, 4000);
            tb.c2 = 2.0 * M_PI * M_PI *
                    2.0 * integrate_gl([&](double x) { return x * x * val(x); }, 0.0, 1.0, 8, 24);
            double c5 = 0.0;
            for (double xi = 0.25; xi <= 60.0; xi += 0.25)
                c5 = std::max(c5, std::pow(xi, 5) * std::abs(tf(xi)));
            tb.c5 = 1.2 * c5;
            return tb;
        }();
        return t;
    }
};

// Rescaled kernel phi_eps(x) = eps^-1 phi(x/eps).
inline double mollifier_eps(double x, double eps) { return MollifierPhi::value(x / eps) / eps; }

// ---------------------------------------------------------------------------
// WindowTau: 1 on [1,2], smooth ramps on [1/2,1] and [2,4].
// ---------------------------------------------------------------------------

class WindowTau {
public:
    static double value(double x) {
        if (x <= 0.5 || x >= 4.0) return 0.0;
        if (x < 1.0) return smooth_step(2.0 * x - 1.0);
        if (x <= 2.0) return 1.0;
        return smooth_step((4.0 - x) / 2.0);
    }

    // tau_l(x) = tau(2^l x), supported on [2^{-l-1}, 2^{-l+2}]
    static double scaled(double x, int l) { return value(std::ldexp(x, l)); }

    // ||tau||_L1 = 9/4 (ramps integrate to 1/4 and 1 by smooth_step symmetry)
    static double l1_norm() {
        static const double v = integrate_gl([](double x) { return value(x); }, 0.5, 4.0, 64, 16);
        return v;
    }

    static SampledFunction profile(std::size_t nodes = 1793) {
        return SampledFunction::sample([](double x) { return value(x); }, 0.5, 4.0, nodes);
    }
};

// ---------------------------------------------------------------------------
// WeightVarphi: symmetric C-infinity tent, spt (0,1), integral 1, sup 2.
// ---------------------------------------------------------------------------

class WeightVarphi {
public:
    static double value(double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return x <= 0.5 ? 2.0 * smooth_step(2.0 * x) : 2.0 * smooth_step(2.0 * (1.0 - x));
    }

    // int_0^x varphi;  symmetry gives cumulative(1-x) = 1 - cumulative(x) exactly.
    static double cumulative(double x) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        const auto& t = half();
        return x <= 0.5 ? t.eval(x) : 1.0 - t.eval(1.0 - x);
    }

    // varphihat(xi) = e^{-pi i xi} R(xi) with R real even; returns R.
    static double transform_symmetric(double xi) {
        xi = std::abs(xi);
        const int panels = std::max(6, (int)std::ceil(xi / 4.0));
        return 2.0 * integrate_gl(
                   [&](double u) { return value(0.5 + u) * std::cos(2.0 * M_PI * u * xi); },
                   0.0, 0.5, panels, 24);
    }

    static cplx transform(double xi) {
        const double r = transform_symmetric(xi);
        return cplx(std::cos(M_PI * xi), -std::sin(M_PI * xi)) * r;
    }

    static double transform_abs(double xi) { return std::abs(transform_symmetric(xi)); }

    static double quintic_decay() {
        static const double c5 = [] {
            double c = 0.0;
            for (double xi = 0.25; xi <= 50.0; xi += 0.25)
                c = std::max(c, std::pow(xi, 5) * transform_abs(xi));
            return 1.2 * c;
        }();
        return c5;
    }

    static SampledFunction profile(std::size_t nodes = 1025) {
        return SampledFunction::sample([](double x) { return value(x); }, 0.0, 1.0, nodes);
    }

private:
    static const detail::CumTable& half() {
        static const detail::CumTable t = [] {
            auto tb = detail::CumTable::build([](double x) { return value(x); }, 0.0, 0.5, 1 << 13);
            tb.scale(0.5 / tb.cum.back());  // pins cumulative(1/2) = 1/2, total mass exactly 1
            return tb;
        }();
        return t;
    }
};

}  // namespace quadpat
