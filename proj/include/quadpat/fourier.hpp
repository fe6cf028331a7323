#pragma once

// Fourier side of the laboratory: exact transforms of grid measures, the
// spectral-gap annulus integral with a certified error bound, s-energies in
// spatial and frequency form, and negative-index Sobolev norms.
//
// Transform conventions: muhat(xi) = int e^{-2 pi i x xi} dmu(x).  For a
// piecewise-constant density the per-cell factor is exact:
//   muhat(xi) = sinc(pi l xi) * sum_j w_j e^{-2 pi i c_j xi}.
//
// The frequency-form s-energy folds the whole line onto one period of the
// cell lattice; the lattice tail is a Hurwitz zeta, so no truncation is made:
//   I_s = rho_s 2^{m(s-1)+1} pi^-2
//         int_0^{2^m} |S(xi)|^2 sin^2(pi xi 2^-m) zeta(3-s, xi 2^-m) dxi.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "quadpat/kernels.hpp"
#include "quadpat/measure.hpp"
#include "quadpat/numerics.hpp"

namespace quadpat {

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// ---------------------------------------------------------------------------
// Spectrum evaluation, exact or block-aggregated with a tracked bound.
// ---------------------------------------------------------------------------

class SpectrumEvaluator {
public:
    // block_level == resolution: exact (cell centers + sinc factor).
    // block_level <  resolution: centroid point masses; error bound
    //   |muhat(xi) - approx(xi)| <= (pi xi)^2 4^{-K} mass / 2.
    SpectrumEvaluator(const GridMeasure& mu, int block_level)
        : exact_(block_level >= mu.resolution()),
          cell_width_(mu.cell_width()),
          level_(std::min(block_level, mu.resolution())) {
        const AggregatedMeasure ag = aggregate(mu, level_);
        x_.reserve(ag.mass.size());
        m_.reserve(ag.mass.size());
        for (std::size_t b = 0; b < ag.mass.size(); ++b) {
            if (ag.mass[b] == 0.0) continue;
            x_.push_back(ag.centroid[b]);
            m_.push_back(ag.mass[b]);
        }
        total_ = ag.total;
    }

    // smallest block level whose aggregation bound stays under tol on |xi| <= ximax
    static int level_for(double ximax, double mass, double tol) {
        const double lead = 0.5 * (M_PI * ximax) * (M_PI * ximax) * mass;
        if (lead <= tol) return 0;
        return (int)std::ceil(0.5 * std::log2(lead / tol));
    }

    double total_mass() const { return total_; }
    bool exact() const { return exact_; }
    int level() const { return level_; }

    double error_bound(double ximax) const {
        if (exact_) return 0.0;
        return 0.5 * (M_PI * ximax) * (M_PI * ximax) * std::pow(4.0, -level_) * total_;
    }

    // point-mass sum without the piecewise-constant cell factor
    cplx at_raw(double xi) const {
        std::complex<long double> acc = 0.0L;
        for (std::size_t p = 0; p < x_.size(); ++p) {
            const double ph = -2.0 * M_PI * x_[p] * xi;
            acc += std::complex<long double>(m_[p] * std::cos(ph), m_[p] * std::sin(ph));
        }
        return cplx((double)acc.real(), (double)acc.imag());
    }

    cplx at(double xi) const {
        cplx v = at_raw(xi);
        if (exact_) v *= sinc(M_PI * cell_width_ * xi);
        return v;
    }

    // out[i] = point-mass sum at xi0 + i h, by per-point phase rotation with
    // periodic exact resynchronization
    void sweep_raw(double xi0, double h, std::vector<cplx>& out) const {
        std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
        const std::size_t n = out.size();
        constexpr std::size_t resync = 8192;
        for (std::size_t p = 0; p < x_.size(); ++p) {
            const double w0 = -2.0 * M_PI * x_[p];
            const cplx rot(std::cos(w0 * h), std::sin(w0 * h));
            cplx z(std::cos(w0 * xi0), std::sin(w0 * xi0));
            z *= m_[p];
            for (std::size_t i = 0; i < n; ++i) {
                if (i % resync == 0 && i) {
                    const double ph = w0 * (xi0 + (double)i * h);
                    z = m_[p] * cplx(std::cos(ph), std::sin(ph));
                }
                out[i] += z;
                z *= rot;
            }
        }
    }

    void sweep(double xi0, double h, std::vector<cplx>& out) const {
        sweep_raw(xi0, h, out);
        if (exact_)
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] *= sinc(M_PI * cell_width_ * (xi0 + (double)i * h));
    }

private:
    bool exact_;
    double cell_width_;
    int level_;
    double total_ = 0.0;
    std::vector<double> x_, m_;
};

// ---------------------------------------------------------------------------
// SpectralProfile: muhat on a symmetric uniform grid, CSV-exportable.
// ---------------------------------------------------------------------------

struct SpectralProfile {
    double max_freq = 0.0;
    double step = 0.0;
    std::vector<cplx> values;  // xi = -max_freq + k*step, k = 0..2N
    double error_bound = 0.0;

    double freq(std::size_t k) const { return -max_freq + (double)k * step; }
};

inline SpectralProfile spectrum(const GridMeasure& mu, double max_freq, double step,
                                double tol = 1e-9) {
    if (!(max_freq > 0.0) || !(step > 0.0)) fail(ErrorKind::parameter, "spectrum: need positive grid");
    const int K = std::min(mu.resolution(),
                           SpectrumEvaluator::level_for(max_freq, mu.total_mass(), tol));
    SpectrumEvaluator ev(mu, K >= mu.resolution() ? mu.resolution() : std::max(K, 1));
    SpectralProfile sp;
    sp.max_freq = max_freq;
    sp.step = step;
    const std::size_t n = 2 * (std::size_t)std::llround(max_freq / step) + 1;
    sp.values.resize(n);
    ev.sweep(-max_freq, step, sp.values);
    sp.error_bound = ev.error_bound(max_freq);
    return sp;
}

// ---------------------------------------------------------------------------
// Spectral-gap annulus integral  int_{A^{1/5} <= |xi| <= B^2} |muhat| dxi
// with a certified error bound below rel_target * A^-3.
//
// Default bound: piecewise-linear interpolation of the center-modulated
// transform g(xi) = e^{pi i xi} muhat(xi), |g''| <= pi^2 mass, integrated in
// closed form.  A pure midpoint/Lipschitz mode (|g'| <= pi mass) is kept for
// cross-checks.
// ---------------------------------------------------------------------------

struct GapEstimate {
    double value = 0.0;
    double error_bound = 0.0;
    double target = 0.0;  // rel_target * A^-3
    std::size_t nodes = 0;
    int block_level = 0;
    bool lipschitz_mode = false;
};

struct GapOptions {
    double rel_target = 0.01;
    bool lipschitz_mode = false;
    std::size_t max_nodes = 80'000'000;
};

inline GapEstimate gap_integral(const GridMeasure& mu, double A, double B, GapOptions opt = {}) {
    if (!(A > 0.0 && B > 0.0)) fail(ErrorKind::parameter, "gap_integral: A, B must be positive");
    const double lo = std::pow(A, 0.2), hi = B * B;
    if (!(lo < hi)) fail(ErrorKind::parameter, "gap_integral: A^(1/5) must be below B^2");
    const double mass = mu.total_mass();
    const double len = hi - lo;           // one-sided; symmetry doubles the value
    const double target = opt.rel_target * std::pow(A, -3.0);

    GapEstimate est;
    est.target = target;
    est.lipschitz_mode = opt.lipschitz_mode;

    // error budget: 60% interpolation, 30% aggregation, 10% slack
    const double interp_budget = 0.6 * target, agg_budget = 0.3 * target;

    std::size_t n;
    if (opt.lipschitz_mode) {
        // midpoint rule, |g| Lipschitz with constant pi * mass
        const double L = M_PI * mass;
        const double h = 4.0 * interp_budget / (L * 2.0 * len);
        n = (std::size_t)std::ceil(len / h) + 1;
    } else {
        // |g''| <= pi^2 mass; per panel int |g - lin| <= h^3 |g''| / 8
        const double curv = M_PI * M_PI * mass;
        const double h = std::sqrt(8.0 * interp_budget / (curv * 2.0 * len));
        n = (std::size_t)std::ceil(len / h) + 2;
    }
    if (n > opt.max_nodes)
        fail(ErrorKind::accuracy, "gap_integral: " + std::to_string(n) +
                                      " nodes needed for the requested certainty exceed the limit");

    const int K = std::min(mu.resolution(),
                           SpectrumEvaluator::level_for(hi, mass, agg_budget / (2.0 * len)));
    SpectrumEvaluator ev(mu, K);

    const double h = len / (double)(n - 1);
    std::vector<cplx> vals(n);
    ev.sweep(lo, h, vals);

    long double acc = 0.0L;
    if (opt.lipschitz_mode) {
        // midpoint panels centered at the sampled nodes
        for (std::size_t i = 0; i < n; ++i) {
            const double wl = (i == 0 || i + 1 == n) ? 0.5 * h : h;
            acc += std::abs(vals[i]) * wl;
        }
        est.error_bound = M_PI * mass * h * len / 4.0;
    } else {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double xi = lo + (double)i * h;
            const cplx g0 = vals[i] * cplx(std::cos(M_PI * xi), std::sin(M_PI * xi));
            const double xi1 = xi + h;
            const cplx g1 = vals[i + 1] * cplx(std::cos(M_PI * xi1), std::sin(M_PI * xi1));
            acc += segment_abs_integral(g0, g1, h);
        }
        est.error_bound = M_PI * M_PI * mass * h * h * len / 8.0;
    }
    est.value = 2.0 * (double)acc;          // both sides of the annulus
    est.error_bound *= 2.0;
    est.error_bound += 2.0 * len * ev.error_bound(hi);
    est.nodes = n;
    est.block_level = ev.level();
    if (est.error_bound > target)
        fail(ErrorKind::accuracy, "gap_integral: achieved bound " + std::to_string(est.error_bound) +
                                      " exceeds target " + std::to_string(target));
    return est;
}

// ---------------------------------------------------------------------------
// s-energy
// ---------------------------------------------------------------------------

enum class EnergyForm { spatial, frequency };

namespace detail {

// int int |x-y|^{-s} over cell pairs via the double antiderivative
// H(t) = |t|^{2-s} / ((1-s)(2-s));  pair value H(b-c)+H(a-d)-H(b-d)-H(a-c).
inline double spatial_energy(const GridMeasure& mu, double s) {
    if (mu.cells() > (1ULL << 13))
        fail(ErrorKind::parameter, "s_energy(spatial): resolution above 2^13 cells; aggregate first");
    const double l = mu.cell_width();
    const auto H = [&](double t) { return std::pow(std::abs(t), 2.0 - s) / ((1.0 - s) * (2.0 - s)); };
    const std::uint64_t n = mu.cells();
    std::vector<double> Hk(2 * n + 1);
    for (std::uint64_t d = 0; d <= 2 * n; ++d) Hk[d] = H((double)d * l);
    // distance between cell edges depends only on the index offset
    long double acc = 0.0L;
    const auto& w = mu.weights();
    for (std::uint64_t i = 0; i < n; ++i) {
        if (w[i] == 0.0) continue;
        for (std::uint64_t j = 0; j < n; ++j) {
            if (w[j] == 0.0) continue;
            const std::uint64_t d = i >= j ? i - j : j - i;
            const double pair = 2.0 * Hk[d] - Hk[d + 1] - (d == 0 ? Hk[1] : Hk[d - 1]);
            acc += (long double)(w[i] * w[j] / (l * l)) * -pair;
        }
    }
    return (double)acc;
}

// Simpson sum over a uniform sweep of |S(xi)|^2 * g(xi); n must be odd.
template <class G>
double simpson_spectrum(const SpectrumEvaluator& ev, double a, double h, std::size_t n, G&& g) {
    std::vector<cplx> vals(n);
    ev.sweep_raw(a, h, vals);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = a + (double)i * h;
        const double sw = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += sw * std::norm(vals[i]) * g(xi);
    }
    return (double)acc * h / 3.0;
}

inline double frequency_energy(const GridMeasure& mu, double s, int oversample = 16) {
    if (mu.cells() > (1ULL << 13))
        fail(ErrorKind::parameter, "s_energy(frequency): resolution above 2^13 cells; aggregate first");
    const int m = mu.resolution();
    const double period = pow2(m);
    const SpectrumEvaluator ev(mu, m);  // raw sums: the lattice fold replaces the sinc factor
    auto weight = [&](double xi) {
        const double u = xi / period;
        const double sn = std::sin(M_PI * u);
        return sn * sn * hurwitz_zeta(3.0 - s, u);
    };
    // [0, 1]: endpoint power xi^{s-1}; substitute xi = t^{1/s} so the weight is flat
    const double head = integrate_gl(
        [&](double t) {
            const double xi = std::pow(t, 1.0 / s);
            const double jac = (1.0 / s) * std::pow(t, 1.0 / s - 1.0);
            return std::norm(ev.at_raw(xi)) * weight(xi) * jac;
        },
        0.0, 1.0, 24, 16);
    // [1, 2^m]: uniform Simpson, a bounded number of nodes per unit frequency
    double body = 0.0;
    if (period > 1.0) {
        std::size_t n = (std::size_t)std::llround((period - 1.0) * oversample) + 1;
        if (n % 2 == 0) ++n;
        const double h = (period - 1.0) / (double)(n - 1);
        body = simpson_spectrum(ev, 1.0, h, n, weight);
    }
    return riesz_constant(s) * std::exp2((double)m * (s - 1.0) + 1.0) / (M_PI * M_PI) * (head + body);
}

}  // namespace detail

inline double s_energy(const GridMeasure& mu, double s, EnergyForm form) {
    if (!(s > 0.0 && s < 1.0)) fail(ErrorKind::parameter, "s_energy: s must be in (0,1)");
    return form == EnergyForm::spatial ? detail::spatial_energy(mu, s)
                                       : detail::frequency_energy(mu, s);
}

// ---------------------------------------------------------------------------
// Sobolev norms, negative index: ||f||_{H^sigma}^2 = int |fhat|^2 (1+xi^2)^{sigma/2}
// ---------------------------------------------------------------------------

struct SobolevIndex {
    double sigma = 0.0;  // used as -gamma for measures
};

// Folded-lattice norm of a grid measure (sigma <= 0): the k-sum of
// sinc^2(pi(u+k)) (1 + (2^m(u+k))^2)^{sigma/2} is truncated at K0 with a
// Hurwitz-zeta bound on the remainder (reported inside the value).
inline double sobolev_norm_sq(const GridMeasure& mu, SobolevIndex idx, int oversample = 16) {
    const double sigma = idx.sigma;
    if (sigma > 0.0) fail(ErrorKind::parameter, "sobolev_norm_sq(measure): positive index needs smoothness");
    if (mu.cells() > (1ULL << 13))
        fail(ErrorKind::parameter, "sobolev_norm_sq: resolution above 2^13 cells; aggregate first");
    if (mu.total_mass() == 0.0) return 0.0;
    const int m = mu.resolution();
    const double period = pow2(m);
    const SpectrumEvaluator ev(mu, m);
    const int K0 = 48;
    auto weight = [&](double xi) {
        const double u = xi / period;
        const double sn2 = std::pow(std::sin(M_PI * u), 2);
        double wsum = 0.0;
        for (int k = 0; k <= K0; ++k) {
            const double xf = period * ((double)k + u);
            const double snc = ((double)k + u) == 0.0 ? 1.0 : sn2 / std::pow(M_PI * ((double)k + u), 2);
            wsum += snc * std::pow(1.0 + xf * xf, sigma / 2.0);
        }
        // remainder: sin^2/(pi(u+k))^2 (2^m(u+k))^sigma summed over k > K0
        wsum += sn2 / (M_PI * M_PI) * std::pow(period, sigma) * hurwitz_zeta(2.0 - sigma, u + K0 + 1);
        return wsum;
    };
    std::size_t n = (std::size_t)std::llround(period * oversample) + 1;
    if (n % 2 == 0) ++n;
    const double h = period / (double)(n - 1);
    return 2.0 * detail::simpson_spectrum(ev, 0.0, h, n, weight);
}

inline double sobolev_norm(const GridMeasure& mu, SobolevIndex idx) {
    return std::sqrt(sobolev_norm_sq(mu, idx));
}

// Piecewise-linear exact transform route for node-sampled functions that
// vanish at both grid ends (mollified densities and their differences):
// fhat(xi) = h sinc^2(pi h xi) sum_k f_k e^{-2 pi i x_k xi}.
inline double sobolev_norm_sq(const SampledFunction& f, SobolevIndex idx, int oversample = 16) {
    const double sigma = idx.sigma;
    if (sigma > 0.0) fail(ErrorKind::parameter, "sobolev_norm_sq(function): positive index unsupported");
    const double h = f.step();
    const double period = 1.0 / h;
    const auto& v = f.values();
    const int K0 = 24;
    auto weight = [&](double xi) {
        const double u = xi * h;
        const double sn = std::sin(M_PI * u);
        double wsum = 0.0;
        for (int k = 0; k <= K0; ++k) {
            const double uk = u + (double)k;
            const double xf = uk / h;
            const double s4 = uk == 0.0 ? 1.0 : std::pow(sn / (M_PI * uk), 4);
            wsum += s4 * std::pow(1.0 + xf * xf, sigma / 2.0);
        }
        wsum += std::pow(sn, 4) / std::pow(M_PI, 4) * std::pow(h, -sigma) *
                hurwitz_zeta(4.0 - sigma, u + K0 + 1);
        return wsum;
    };

    std::size_t n = (std::size_t)std::llround(period * oversample) + 1;
    if (n % 2 == 0) ++n;
    const double step = period / (double)(n - 1);
    // rotation sweep of the node sum, then Simpson against the folded weight
    std::vector<cplx> vals(n, cplx(0, 0));
    constexpr std::size_t resync = 8192;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0.0) continue;
        const double w0 = -2.0 * M_PI * (f.x0() + (double)k * h);
        const cplx rot(std::cos(w0 * step), std::sin(w0 * step));
        cplx z(v[k], 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (i % resync == 0 && i) {
                const double ph = w0 * (double)i * step;
                z = v[k] * cplx(std::cos(ph), std::sin(ph));
            }
            vals[i] += z;
            z *= rot;
        }
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = (double)i * step;
        const double sw = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += sw * std::norm(vals[i]) * weight(xi) * h * h;
    }
    return 2.0 * (double)acc * step / 3.0;
}

inline double sobolev_norm(const SampledFunction& f, SobolevIndex idx) {
    return std::sqrt(sobolev_norm_sq(f, idx));
}

// ---------------------------------------------------------------------------
// Weighted spectral integrals for the decomposition lemmas:
//   int |muhat(xi)|^2 |W(xi)|^2 (1+xi^2)^{-gamma/2} dxi      (Sobolev of pieces)
//   int |muhat(xi)|  |W(xi)| dxi                             (Type I factors)
// where W is a difference of mollifier transforms.  Truncated at Xi with the
// quintic kernel decay carrying the tail bound.
// ---------------------------------------------------------------------------

struct MollifierWeight {
    // phihat(a xi) - phihat(b xi); b == 0 encodes the single kernel phihat(a xi)
    double a = 0.0, b = 0.0;

    double operator()(double xi) const {
        const double va = MollifierPhi::transform_cached(a * xi);
        return b == 0.0 ? va : va - MollifierPhi::transform_cached(b * xi);
    }

    // sup over |x| >= Xi via |phihat(y)| <= c5 / y^5
    double tail_sup(double Xi) const {
        const double c5 = MollifierPhi::quintic_decay();
        double t = c5 / std::pow(std::abs(a) * Xi, 5.0);
        if (b != 0.0) t += c5 / std::pow(std::abs(b) * Xi, 5.0);
        return t;
    }

    double min_scale() const { return b == 0.0 ? a : std::min(a, b); }
};

struct WeightedIntegral {
    double value = 0.0;
    double tail_bound = 0.0;
};

// int |muhat|^2 W^2 (1+xi^2)^{-gamma/2} dxi over the whole line, truncated
// where the kernel weight has decayed.
inline WeightedIntegral weighted_norm_sq(const GridMeasure& mu, const MollifierWeight& W,
                                         double gamma, double step = 0.05) {
    const double mass = mu.total_mass();
    const double Xi = 24.0 / W.min_scale();
    const std::size_t n = (std::size_t)std::ceil(Xi / step) + 1;
    const int K = std::min(mu.resolution(), SpectrumEvaluator::level_for(Xi, mass, 1e-7 * mass));
    SpectrumEvaluator ev(mu, K);
    std::vector<cplx> vals(n);
    ev.sweep(0.0, step, vals);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = (double)i * step;
        const double wv = W(xi);
        const double integ = std::norm(vals[i]) * wv * wv * std::pow(1.0 + xi * xi, -gamma / 2.0);
        acc += integ * ((i == 0 || i + 1 == n) ? 0.5 : 1.0);
    }
    WeightedIntegral out;
    out.value = 2.0 * (double)acc * step;
    const double ts = W.tail_sup(Xi);
    out.tail_bound = 2.0 * mass * mass * ts * ts * std::pow(1.0 + Xi * Xi, -gamma / 2.0) * Xi / 9.0;
    // cached-transform floor (values below c5/40^5 read as zero inside [0, Xi])
    const double floor = MollifierPhi::quintic_decay() / std::pow(40.0, 5.0);
    out.tail_bound += 2.0 * mass * mass * (2.0 * floor) * (2.0 * floor) * Xi;
    return out;
}

// int |muhat| |W| dxi (Type I factors; lem_a also reachable with b == 0)
inline WeightedIntegral weighted_abs_integral(const GridMeasure& mu, const MollifierWeight& W,
                                              double step = 0.05) {
    const double mass = mu.total_mass();
    const double Xi = 24.0 / W.min_scale();
    const std::size_t n = (std::size_t)std::ceil(Xi / step) + 1;
    const int K = std::min(mu.resolution(), SpectrumEvaluator::level_for(Xi, mass, 1e-7 * mass));
    SpectrumEvaluator ev(mu, K);
    std::vector<cplx> vals(n);
    ev.sweep(0.0, step, vals);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = (double)i * step;
        const double integ = std::abs(vals[i]) * std::abs(W(xi));
        acc += integ * ((i == 0 || i + 1 == n) ? 0.5 : 1.0);
    }
    WeightedIntegral out;
    out.value = 2.0 * (double)acc * step;
    out.tail_bound = 2.0 * mass * W.tail_sup(Xi) * Xi / 4.0;
    out.tail_bound += 2.0 * mass * (2.0 * MollifierPhi::quintic_decay() / std::pow(40.0, 5.0)) * Xi;
    return out;
}

}  // namespace quadpat
