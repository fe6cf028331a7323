#pragma once

// Shared numerical kernels: Gauss-Legendre rules, composite quadrature,
// Hurwitz zeta, the 1-D Riesz constant rho_s, a radix-2 FFT, and the exact
// integral of |linear complex segment| used by the spectral-gap quadrature.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadpat {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorKind { parameter, precondition, resolution, accuracy, not_found, divergence };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

inline double pow2(int e) { return std::ldexp(1.0, e); }

// C-infinity step: 0 on (-inf,0], 1 on [1,inf), strictly increasing between.
// S(u) + S(1-u) = 1 identically.
inline double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double g = std::exp(-1.0 / u);
    const double h = std::exp(-1.0 / (1.0 - u));
    return g / (g + h);
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature
// ---------------------------------------------------------------------------

struct GaussRule {
    std::vector<double> node;    // on (-1, 1)
    std::vector<double> weight;
};

// Nodes by Newton iteration on P_n; deterministic, cached per order.
inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule r;
    r.node.resize(n);
    r.weight.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.node[n - 1 - i] = x;
        r.weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

template <class F>
double integrate_gl(F&& f, double a, double b, int panels, int order = 16) {
    const GaussRule& r = gauss_legendre(order);
    const double h = (b - a) / panels;
    long double acc = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        long double s = 0.0L;
        for (int k = 0; k < order; ++k) s += r.weight[k] * f(c + 0.5 * h * r.node[k]);
        acc += s * (0.5 * h);
    }
    return static_cast<double>(acc);
}

template <class F>
cplx integrate_gl_c(F&& f, double a, double b, int panels, int order = 16) {
    const GaussRule& r = gauss_legendre(order);
    const double h = (b - a) / panels;
    std::complex<long double> acc = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        std::complex<long double> s = 0.0L;
        for (int k = 0; k < order; ++k) {
            cplx v = f(c + 0.5 * h * r.node[k]);
            s += std::complex<long double>(v.real(), v.imag()) * (long double)r.weight[k];
        }
        acc += s * (long double)(0.5 * h);
    }
    return cplx((double)acc.real(), (double)acc.imag());
}

// Panel count for integrands carrying a phase with derivative up to |dphase|;
// keeps a handful of panels per oscillation.
inline int oscillatory_panels(double a, double b, double max_abs_dphase, int base = 8) {
    double osc = (b - a) * (1.0 + max_abs_dphase) / (2.0 * M_PI);
    return base + static_cast<int>(std::ceil(4.0 * osc));
}

// ---------------------------------------------------------------------------
// Hurwitz zeta, zeta(s, a) = sum_{k>=0} (a+k)^-s, for s > 1, a > 0.
// Euler-Maclaurin with three correction terms.
// ---------------------------------------------------------------------------

inline double hurwitz_zeta(double s, double a) {
    if (s <= 1.0) fail(ErrorKind::parameter, "hurwitz_zeta requires s > 1");
    if (a <= 0.0) fail(ErrorKind::parameter, "hurwitz_zeta requires a > 0");
    const int K = 18;
    long double sum = 0.0L;
    for (int k = 0; k < K; ++k) sum += std::pow((long double)(a + k), (long double)-s);
    const long double t = a + K;
    const long double ts = std::pow(t, (long double)-s);
    sum += t * ts / (s - 1.0);             // integral tail
    sum += 0.5L * ts;                      // trapezoid correction
    sum += s * ts / t / 12.0L;             // B_2
    sum -= s * (s + 1) * (s + 2) * ts / (t * t * t) / 720.0L;  // B_4
    sum += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * ts / (t * t * t * t * t) / 30240.0L;  // B_6
    return static_cast<double>(sum);
}

// ---------------------------------------------------------------------------
// rho_s = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2), the constant in the 1-D
// identity I_s(mu) = rho_s * int |muhat|^2 |xi|^{s-1} dxi.  Written with the
// poles at s=0 and s=1 factored so both endpoints are approached stably.
// ---------------------------------------------------------------------------

inline double riesz_constant(double s) {
    if (s <= 0.0 || s >= 1.0) fail(ErrorKind::parameter, "riesz_constant requires 0 < s < 1");
    // Gamma((1-s)/2) = Gamma((3-s)/2) / ((1-s)/2),  Gamma(s/2) = Gamma(1+s/2)/(s/2)
    const double lg = std::lgamma((3.0 - s) / 2.0) - std::lgamma(1.0 + s / 2.0);
    return std::pow(M_PI, s - 0.5) * (s / (1.0 - s)) * std::exp(lg);
}

// ---------------------------------------------------------------------------
// Exact integral of the modulus of a complex linear segment:
//   int_0^h | z0 + (z1 - z0) * (t/h) | dt
// Used to integrate |muhat| through its piecewise-linear interpolant.
// ---------------------------------------------------------------------------

inline double segment_abs_integral(cplx z0, cplx z1, double h) {
    if (h <= 0.0) return 0.0;
    const cplx d = (z1 - z0) / h;
    const double A = std::norm(d);
    const double C = std::norm(z0);
    if (A * h * h < 1e-30 * (C + 1e-300)) return std::abs(z0) * h;
    const double B = z0.real() * d.real() + z0.imag() * d.imag();
    const double disc = C - B * B / A;  // >= 0 up to roundoff
    const double sA = std::sqrt(A);
    auto F = [&](double t) {
        const double rt = std::sqrt(std::max(0.0, A * t * t + 2.0 * B * t + C));
        double v = 0.5 * (t + B / A) * rt;
        if (disc > 0.0) v += 0.5 * (disc / sA) * std::asinh((A * t + B) / (sA * std::sqrt(disc)));
        return v;
    };
    const double tv = -B / A;  // vertex of the quadratic under the root
    if (disc <= 1e-18 * C && tv > 0.0 && tv < h) {
        // segment passes (numerically) through the origin: split at the vertex
        return 0.5 * sA * (tv * tv + (h - tv) * (h - tv));
    }
    return F(h) - F(0.0);
}

// ---------------------------------------------------------------------------
// Radix-2 FFT, forward = exp(-2 pi i jk / n).  n must be a power of two.
// ---------------------------------------------------------------------------

inline void fft_pow2(std::vector<cplx>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) fail(ErrorKind::parameter, "fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / (double)len * (inverse ? 1.0 : -1.0);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= (double)n;
}

// Least-squares slope of y against x.
inline double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::parameter, "regression needs >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= x.size();
    my /= y.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

}  // namespace quadpat
