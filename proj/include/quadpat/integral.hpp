#pragma once

// The configuration integral
//
//     int int mu_eps(x+t) mu_eps(x+P_{p,q}(t)) tau_l(t) dt dmu(x)
//
// its nine-term decomposition through mu_eps = mu_low + mu_mid + mu_high
// (mollification scales A^-1, B^-1, eps) with the Table-1 ledger, the
// main-term lower bound, positivity certificates, the two-frequency identity,
// and the empirical trilinear (Sobolev-improving) probe.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadpat/fourier.hpp"
#include "quadpat/kernels.hpp"
#include "quadpat/measure.hpp"
#include "quadpat/patterns.hpp"

namespace quadpat {

// ---------------------------------------------------------------------------
// Shared quadrature rule over the t-window (deterministic from its inputs,
// so independent evaluation paths land on identical nodes).
// ---------------------------------------------------------------------------

struct ConfigRule {
    double t_lo = 0.0, t_hi = 0.0;
    int panels = 16;
    int order = 8;

    static ConfigRule standard(const QuadraticPattern& pat, double feature_scale, int refine = 0) {
        ConfigRule r;
        r.t_lo = pat.window_lo();
        r.t_hi = pat.window_hi();
        const double scale = std::max(feature_scale, 1e-9);
        r.panels = std::max(12, (int)std::ceil((r.t_hi - r.t_lo) / (scale / 3.0)));
        r.panels = std::min(r.panels << refine, 1 << 20);
        return r;
    }

    template <class F>
    double integrate(F&& f) const {
        return integrate_gl(f, t_lo, t_hi, panels, order);
    }
};

// ---------------------------------------------------------------------------
// Direct configuration integral
// ---------------------------------------------------------------------------

struct IntegralEstimate {
    double value = 0.0;
    double refine_delta = 0.0;  // |value - refined value| from one step-halving
    double eval_error = 0.0;    // mollification lattice bounds
};

namespace detail {

// outer sum over mu's cells at an aggregation level, inner rule on t
template <class Inner>
double outer_config_sum(const GridMeasure& mu, int outer_level, Inner&& inner) {
    const AggregatedMeasure ag = aggregate(mu, std::min(outer_level, mu.resolution()));
    long double acc = 0.0L;
    for (std::size_t b = 0; b < ag.mass.size(); ++b) {
        if (ag.mass[b] == 0.0) continue;
        acc += (long double)(ag.mass[b] * inner(ag.centroid[b]));
    }
    return (double)acc;
}

}  // namespace detail

inline IntegralEstimate config_integral(const GridMeasure& mu, double eps,
                                        const QuadraticPattern& pat, int outer_level = 16) {
    pat.validate();
    if (!(eps > 0.0)) fail(ErrorKind::parameter, "config_integral: eps must be positive");
    const MollifyResult mr = mollify_with_report(mu, eps, mollify_grid_level(mu, eps));
    const auto& f = mr.density;

    auto value_at = [&](const ConfigRule& rule, int level) {
        auto inner = [&](double x) {
            return rule.integrate([&](double t) {
                return f(x + t) * f(x + pat.eval(t)) * WindowTau::scaled(t, pat.l);
            });
        };
        return detail::outer_config_sum(mu, level, inner);
    };

    const ConfigRule rule = ConfigRule::standard(pat, std::min(eps, pow2(-pat.l)));
    const ConfigRule fine = ConfigRule::standard(pat, std::min(eps, pow2(-pat.l)), 1);
    IntegralEstimate est;
    est.value = value_at(rule, outer_level);
    est.refine_delta = std::abs(value_at(fine, std::min(outer_level + 1, mu.resolution())) - est.value);
    est.eval_error = mr.aggregation_bound + mr.interp_bound;
    if (est.refine_delta > 0.02 * std::max(std::abs(est.value), 1e-12))
        fail(ErrorKind::accuracy, "config_integral: quadrature not converged (delta " +
                                      std::to_string(est.refine_delta) + " vs value " +
                                      std::to_string(est.value) + ")");
    return est;
}

// ---------------------------------------------------------------------------
// Main (low,low) term with its Lemma-3.2 style lower bound
// ---------------------------------------------------------------------------

struct MainTermCheck {
    double measured = 0.0;
    double lower_bound = 0.0;        // 2^-10 c^2 / A with c = 1/20
    double dc_mass = 0.0;            // regular-core mass at c = 1/20
    bool window_matched = false;     // (4A)^-1 == 2^{1-l}
    bool pattern_small = false;      // |p| (4A)^-1 + |q| <= 1
    bool dc_small = false;           // dc_mass <= 1/2
    bool applicable() const { return window_matched && pattern_small && dc_small; }
};

inline MainTermCheck main_term_check(const GridMeasure& mu, const QuadraticPattern& pat, double A,
                                     int outer_level = 16) {
    pat.validate();
    constexpr double c = 1.0 / 20.0;
    MainTermCheck out;
    out.window_matched = (0.25 / A) == std::ldexp(1.0, 1 - pat.l);
    out.pattern_small = std::abs(pat.p) * 0.25 / A + std::abs(pat.q) <= 1.0;
    out.dc_mass = regular_core(mu, c).dc_mass;
    out.dc_small = out.dc_mass <= 0.5 + 1e-12;
    out.lower_bound = std::pow(2.0, -10.0) * c * c / A;

    const MollifyResult mr = mollify_with_report(mu, 1.0 / A, mollify_grid_level(mu, 1.0 / A));
    const auto& f = mr.density;
    const ConfigRule rule = ConfigRule::standard(pat, std::min(1.0 / A, pow2(-pat.l)));
    out.measured = detail::outer_config_sum(mu, outer_level, [&](double x) {
        return rule.integrate([&](double t) {
            return f(x + t) * f(x + pat.eval(t)) * WindowTau::scaled(t, pat.l);
        });
    });
    return out;
}

// ---------------------------------------------------------------------------
// Nine-term decomposition and the Table-1 ledger
// ---------------------------------------------------------------------------

struct TermEntry {
    int row = 0, col = 0;            // 0 = low (A^-1), 1 = mid, 2 = high
    double value = 0.0;              // measured term
    std::string bound_kind;          // "main-lower" | "type1" | "type2"
    double bound_measured = 0.0;     // bound with measured norm factors
    double bound_asymptotic = 0.0;   // bare Table-1 exponent form (implicit constant)
    double ratio_measured = 0.0;     // |value| / bound_measured (main: bound / value)
};

struct DecomposeOptions {
    double kappa = 1.0;          // 2^{kappa l} growth allowed to the trilinear constant
    double c_sobolev = 1.0;      // C_{gamma, p0, q0}, not numeric in the source material
    int outer_level = 16;
    int refine = 0;
};

struct DecompositionReport {
    double A = 0.0, B = 0.0, eps = 0.0, s = 0.0, gamma = 0.0;
    QuadraticPattern pattern;
    DecomposeOptions options;

    std::array<TermEntry, 9> terms{};
    double nine_sum = 0.0;
    double total_direct = 0.0;       // same rule applied to mu_eps * mu_eps
    double identity_rel_err = 0.0;

    double energy_s = 0.0;           // I_s(mu)
    double energy_1mg = 0.0;         // I_{1-gamma}(mu)
    double big_c = 0.0;              // max of the two (Table-1's bold C)
    double norm_mu = 0.0;            // ||mu||_{H^-gamma}
    double norm_low = 0.0, norm_mid = 0.0, norm_high = 0.0;
    double typeI_factor_low = 0.0;   // int |muhat| |phihat(xi/A)|
    double typeI_factor_mid = 0.0;   // int |muhat| |phihat(xi/B) - phihat(xi/A)|
    MainTermCheck main;

    const TermEntry& term(int row, int col) const { return terms[(std::size_t)(3 * row + col)]; }
};

inline DecompositionReport decompose(const GridMeasure& mu, double eps, double A, double B,
                                     const QuadraticPattern& pat, double s, double gamma,
                                     DecomposeOptions opt = {}) {
    pat.validate();
    if (!(eps > 0.0 && eps < 1.0 / B && 1.0 / B < 1.0 / A && 1.0 / A < 1.0))
        fail(ErrorKind::parameter, "decompose: need eps < B^-1 < A^-1 < 1");
    if (!(s > 0.0 && s < 1.0) || !(gamma > 0.0 && gamma < 1.0))
        fail(ErrorKind::parameter, "decompose: s and gamma must lie in (0,1)");
    if (mu.cells() > (1ULL << 13))
        fail(ErrorKind::parameter, "decompose: ledger norms need resolution <= 2^13 cells");

    DecompositionReport rep;
    rep.A = A;
    rep.B = B;
    rep.eps = eps;
    rep.s = s;
    rep.gamma = gamma;
    rep.pattern = pat;
    rep.options = opt;

    // one shared evaluation grid so the three-scale split telescopes exactly
    const int grid = mollify_grid_level(mu, eps);
    const MollifyResult low = mollify_with_report(mu, 1.0 / A, grid);
    const MollifyResult mid = mollify_with_report(mu, 1.0 / B, grid);
    const MollifyResult high = mollify_with_report(mu, eps, grid);

    // pieces evaluated pointwise so the three-way split telescopes exactly
    auto pieces_at = [&](double x, double out[3]) {
        const double fa = low.density(x);
        const double fb = mid.density(x);
        const double fe = high.density(x);
        out[0] = fa;
        out[1] = fb - fa;
        out[2] = fe - fb;
    };

    const ConfigRule rule =
        ConfigRule::standard(pat, std::min(eps, pow2(-pat.l)), opt.refine);

    std::array<long double, 9> acc{};
    long double acc_total = 0.0L;
    const AggregatedMeasure ag = aggregate(mu, std::min(opt.outer_level, mu.resolution()));
    const GaussRule& gr = gauss_legendre(rule.order);
    const double hpanel = (rule.t_hi - rule.t_lo) / rule.panels;
    for (std::size_t bblock = 0; bblock < ag.mass.size(); ++bblock) {
        if (ag.mass[bblock] == 0.0) continue;
        const double x = ag.centroid[bblock];
        std::array<long double, 9> inner{};
        long double inner_total = 0.0L;
        for (int pnl = 0; pnl < rule.panels; ++pnl) {
            const double c0 = rule.t_lo + (pnl + 0.5) * hpanel;
            for (int n = 0; n < rule.order; ++n) {
                const double t = c0 + 0.5 * hpanel * gr.node[n];
                const double wt = 0.5 * hpanel * gr.weight[n] * WindowTau::scaled(t, pat.l);
                if (wt == 0.0) continue;
                double u[3], v[3];
                pieces_at(x + t, u);
                pieces_at(x + pat.eval(t), v);
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) inner[(std::size_t)(3 * a + b)] += wt * u[a] * v[b];
                inner_total += wt * (u[0] + u[1] + u[2]) * (v[0] + v[1] + v[2]);
            }
        }
        for (int i = 0; i < 9; ++i) acc[(std::size_t)i] += (long double)ag.mass[bblock] * inner[(std::size_t)i];
        acc_total += (long double)ag.mass[bblock] * inner_total;
    }

    long double nine = 0.0L;
    for (int i = 0; i < 9; ++i) nine += acc[(std::size_t)i];
    rep.nine_sum = (double)nine;
    rep.total_direct = (double)acc_total;
    rep.identity_rel_err =
        std::abs(rep.nine_sum - rep.total_direct) / std::max(std::abs(rep.total_direct), 1e-300);

    // measured energies and norms
    rep.energy_s = s_energy(mu, s, EnergyForm::spatial);
    rep.energy_1mg = s_energy(mu, 1.0 - gamma, EnergyForm::spatial);
    rep.big_c = std::max(rep.energy_s, rep.energy_1mg);
    rep.norm_mu = sobolev_norm(mu, {-gamma});
    const auto nlow = weighted_norm_sq(mu, {1.0 / A, 0.0}, gamma);
    const auto nmid = weighted_norm_sq(mu, {1.0 / B, 1.0 / A}, gamma);
    const auto nhigh = weighted_norm_sq(mu, {eps, 1.0 / B}, gamma);
    rep.norm_low = std::sqrt(nlow.value + nlow.tail_bound);
    rep.norm_mid = std::sqrt(nmid.value + nmid.tail_bound);
    rep.norm_high = std::sqrt(nhigh.value + nhigh.tail_bound);
    const auto f_low = weighted_abs_integral(mu, {1.0 / A, 0.0});
    const auto f_mid = weighted_abs_integral(mu, {1.0 / B, 1.0 / A});
    rep.typeI_factor_low = f_low.value + f_low.tail_bound;
    rep.typeI_factor_mid = f_mid.value + f_mid.tail_bound;

    rep.main = main_term_check(mu, pat, A, opt.outer_level);
    rep.main.measured = (double)acc[0];  // identical integrand; reuse the shared rule value

    const double mass = mu.total_mass();
    const double tl = pow2(-pat.l);
    const double tau1 = WindowTau::l1_norm();
    const double two_kl = std::exp2(opt.kappa * (double)pat.l);
    const double bpow10 = std::pow(B, (1.0 - s - gamma) / 10.0);
    const double norms[3] = {rep.norm_low, rep.norm_mid, rep.norm_high};

    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            TermEntry& e = rep.terms[(std::size_t)(3 * a + b)];
            e.row = a;
            e.col = b;
            e.value = (double)acc[(std::size_t)(3 * a + b)];
            const bool high_term = (a == 2 || b == 2);
            if (a == 0 && b == 0) {
                e.bound_kind = "main-lower";
                e.bound_measured = rep.main.applicable() ? rep.main.lower_bound : 0.0;
                e.bound_asymptotic = 1.0 / A;
                e.ratio_measured = e.value > 0.0 ? e.bound_measured / e.value : 0.0;
            } else if (!high_term) {
                e.bound_kind = "type1";
                const double fac_row = a == 0 ? rep.typeI_factor_low : rep.typeI_factor_mid;
                const double fac_col = b == 0 ? rep.typeI_factor_low : rep.typeI_factor_mid;
                e.bound_measured = tl * tau1 * mass * fac_row * fac_col;
                const double apow = (a == 1 && b == 1) ? std::pow(A, -14.0 / 5.0) : std::pow(A, -2.0 / 5.0);
                e.bound_asymptotic = tl * apow;
                e.ratio_measured = std::abs(e.value) / e.bound_measured;
            } else {
                e.bound_kind = "type2";
                e.bound_measured = opt.c_sobolev * two_kl * norms[a] * norms[b] * rep.norm_mu;
                auto table_norm = [&](int idx) {
                    if (idx == 2) return std::sqrt(rep.big_c) * bpow10;
                    return idx == 1 ? std::pow(A, -1.5) : std::sqrt(rep.big_c);
                };
                e.bound_asymptotic = two_kl * table_norm(a) * table_norm(b) * std::sqrt(rep.big_c);
                e.ratio_measured = std::abs(e.value) / e.bound_measured;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Positivity certificate: measured main term minus measured remainders, over
// a shrinking eps schedule (finite stand-in for liminf as eps -> 0).
// ---------------------------------------------------------------------------

enum class Verdict { positive, inconclusive };

struct Certificate {
    Verdict verdict = Verdict::inconclusive;
    std::vector<double> eps_schedule;
    std::vector<double> margins;         // main - sum |remainders| per eps
    std::vector<double> config_values;   // nine-term sums per eps
    double final_margin = 0.0;
    bool stable = false;
    bool degenerate_t = false;           // main term vanished at integrand support level
};

inline Certificate positivity_certificate(const GridMeasure& mu, double A, double B,
                                          const QuadraticPattern& pat, double s, double gamma,
                                          std::vector<double> eps_schedule = {},
                                          DecomposeOptions opt = {}) {
    if (eps_schedule.empty())
        eps_schedule = {1.0 / (2.0 * B), 1.0 / (4.0 * B), 1.0 / (8.0 * B)};
    Certificate cert;
    cert.eps_schedule = eps_schedule;
    for (double eps : eps_schedule) {
        const DecompositionReport rep = decompose(mu, eps, A, B, pat, s, gamma, opt);
        double rem = 0.0;
        for (int i = 1; i < 9; ++i) rem += std::abs(rep.terms[(std::size_t)i].value);
        const double margin = rep.term(0, 0).value - rem;
        cert.margins.push_back(margin);
        cert.config_values.push_back(rep.nine_sum);
        if (rep.term(0, 0).value < 1e-12 * std::max(1.0, mu.total_mass() * mu.total_mass()))
            cert.degenerate_t = true;
    }
    cert.final_margin = cert.margins.back();
    bool all_pos = true;
    for (double mgn : cert.margins) all_pos = all_pos && mgn > 0.0;
    const std::size_t n = cert.margins.size();
    cert.stable = n < 2 || (all_pos && cert.margins[n - 1] > 0.5 * cert.margins[n - 2] &&
                            cert.margins[n - 1] < 2.0 * cert.margins[n - 2]);
    cert.verdict = (all_pos && cert.stable && !cert.degenerate_t) ? Verdict::positive
                                                                  : Verdict::inconclusive;
    return cert;
}

// ---------------------------------------------------------------------------
// Frequency-side configuration integral (two-frequency identity):
//   2^-l int int hhat(xi+eta) conj(fhat)(xi) conj(ghat)(eta)
//         int e^{-2 pi i (2^-l t xi + P(2^-l t) eta)} tau(t) dt  dxi deta
// truncated to |xi|,|eta| <= max_freq on a step grid; the t-integral is a
// composite Gauss rule sized by the phase derivative, and the (xi,eta) sum
// collapses to one linear convolution per t-node.
// ---------------------------------------------------------------------------

struct FrequencyIntegralResult {
    cplx value{0.0, 0.0};
    double grid_delta = 0.0;   // change under one step-doubling of the xi grid
    double trule_delta = 0.0;  // change under one refinement of the t rule
};

namespace detail {

// exact transform of a node-sampled piecewise-linear function vanishing at
// its grid ends: fhat(xi) = h sinc^2(pi h xi) sum_k f_k e^{-2 pi i x_k xi}
inline std::vector<cplx> pl_transform_grid(const SampledFunction& f, double xi0, double step,
                                           std::size_t n) {
    std::vector<cplx> out(n, cplx(0, 0));
    const double h = f.step();
    const auto& v = f.values();
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0.0) continue;
        const double xk = f.x0() + (double)k * h;
        const double w0 = -2.0 * M_PI * xk;
        const cplx rot(std::cos(w0 * step), std::sin(w0 * step));
        cplx z(std::cos(w0 * xi0), std::sin(w0 * xi0));
        z *= v[k];
        for (std::size_t i = 0; i < n; ++i) {
            out[i] += z;
            z *= rot;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = xi0 + (double)i * step;
        const double sc = sinc(M_PI * h * xi);
        out[i] *= h * sc * sc;
    }
    return out;
}

inline cplx frequency_pass(const std::vector<cplx>& fh, const std::vector<cplx>& gh,
                           const std::vector<cplx>& hh, const QuadraticPattern& pat,
                           double xi0, double step, int t_panels) {
    const std::size_t n = fh.size();
    std::size_t nfft = 1;
    while (nfft < 2 * n) nfft <<= 1;
    const GaussRule& gr = gauss_legendre(8);
    const double hp = 3.5 / t_panels;  // t in [1/2, 4]
    std::complex<long double> total = 0.0L;
    std::vector<cplx> fa(nfft), fb(nfft);
    for (int pnl = 0; pnl < t_panels; ++pnl) {
        const double c0 = 0.5 + (pnl + 0.5) * hp;
        for (int nd = 0; nd < 8; ++nd) {
            const double t = c0 + 0.5 * hp * gr.node[nd];
            const double wt = 0.5 * hp * gr.weight[nd] * WindowTau::value(t);
            if (wt == 0.0) continue;
            const double a = std::ldexp(t, -pat.l);
            const double bsh = pat.eval(a);
            std::fill(fa.begin(), fa.end(), cplx(0, 0));
            std::fill(fb.begin(), fb.end(), cplx(0, 0));
            for (std::size_t i = 0; i < n; ++i) {
                const double xi = xi0 + (double)i * step;
                const cplx ea(std::cos(2.0 * M_PI * a * xi), -std::sin(2.0 * M_PI * a * xi));
                const cplx eb(std::cos(2.0 * M_PI * bsh * xi), -std::sin(2.0 * M_PI * bsh * xi));
                fa[i] = std::conj(fh[i]) * ea;
                fb[i] = std::conj(gh[i]) * eb;
            }
            fft_pow2(fa);
            fft_pow2(fb);
            for (std::size_t i = 0; i < nfft; ++i) fa[i] *= fb[i];
            fft_pow2(fa, true);
            // index c in [0, 2n-2] corresponds to zeta = 2*xi0 + c*step
            std::complex<long double> sum = 0.0L;
            for (std::size_t c = 0; c + 1 < 2 * n; ++c) sum += (std::complex<long double>)(hh[c] * fa[c]);
            total += (long double)wt * sum;
        }
    }
    total *= (long double)(step * step) * (long double)pow2(-pat.l);
    return cplx((double)total.real(), (double)total.imag());
}

}  // namespace detail

inline FrequencyIntegralResult config_integral_frequency(const SampledFunction& f,
                                                         const SampledFunction& g,
                                                         const GridMeasure& mu,
                                                         const QuadraticPattern& pat,
                                                         double max_freq, double step,
                                                         bool error_probe = true) {
    pat.validate();
    if (!(max_freq > 0.0 && step > 0.0 && step < max_freq))
        fail(ErrorKind::parameter, "config_integral_frequency: bad grid");

    auto run = [&](double Xi, double dxi, int extra_panels) {
        const std::size_t n = 2 * (std::size_t)std::llround(Xi / dxi) + 1;
        const double xi0 = -(double)((n - 1) / 2) * dxi;
        const auto fh = detail::pl_transform_grid(f, xi0, dxi, n);
        const auto gh = detail::pl_transform_grid(g, xi0, dxi, n);
        SpectrumEvaluator ev(mu, mu.resolution());
        std::vector<cplx> hh(2 * n - 1);
        ev.sweep(2.0 * xi0, dxi, hh);
        const double dphase = 2.0 * M_PI * Xi * pow2(-pat.l) *
                              (1.0 + std::abs(pat.q) + 8.0 * std::abs(pat.p) * pow2(-pat.l));
        const int panels = oscillatory_panels(0.5, 4.0, dphase) + extra_panels;
        return detail::frequency_pass(fh, gh, hh, pat, xi0, dxi, panels);
    };

    FrequencyIntegralResult out;
    out.value = run(max_freq, step, 0);
    if (error_probe) {
        out.grid_delta = std::abs(run(max_freq, step * 0.5, 0) - out.value);
        out.trule_delta = std::abs(run(max_freq, step, 32) - out.value);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trilinear form |int int f(x+t) g(x+P(t)) h(x) tau_l dt dx| and its ratio to
// the product of H^-gamma norms; a sweep over l feeds the empirical exponent.
// ---------------------------------------------------------------------------

struct TrilinearResult {
    double value = 0.0;
    double norm_product = 0.0;
    double ratio = 0.0;
};

inline TrilinearResult trilinear_estimate(const SampledFunction& f, const SampledFunction& g,
                                          const SampledFunction& h, const QuadraticPattern& pat,
                                          double gamma) {
    pat.validate();
    const ConfigRule rule = ConfigRule::standard(pat, std::max(pow2(-pat.l) / 8.0, h.step()));
    const double hx = h.step();
    long double acc = 0.0L;
    for (std::size_t k = 0; k < h.nodes(); ++k) {
        if (h.values()[k] == 0.0) continue;
        const double x = h.x0() + (double)k * hx;
        const double inner = rule.integrate(
            [&](double t) { return f(x + t) * g(x + pat.eval(t)) * WindowTau::scaled(t, pat.l); });
        const double wq = (k == 0 || k + 1 == h.nodes()) ? 0.5 : 1.0;
        acc += (long double)(wq * h.values()[k] * inner);
    }
    TrilinearResult out;
    out.value = (double)acc * hx;
    out.norm_product = sobolev_norm(f, {-gamma}) * sobolev_norm(g, {-gamma}) *
                       sobolev_norm(h, {-gamma});
    out.ratio = out.norm_product > 0.0 ? std::abs(out.value) / out.norm_product : 0.0;
    return out;
}

struct KappaSweep {
    std::vector<int> scales;
    std::vector<double> ratios;
    double kappa_hat = 0.0;  // slope of log2(ratio) against l
};

inline KappaSweep trilinear_sweep(const SampledFunction& f, const SampledFunction& g,
                                  const SampledFunction& h, double p, double q,
                                  const std::vector<int>& scales, double gamma) {
    KappaSweep sw;
    sw.scales = scales;
    std::vector<double> xs, ys;
    for (int l : scales) {
        const TrilinearResult r = trilinear_estimate(f, g, h, {p, q, l}, gamma);
        sw.ratios.push_back(r.ratio);
        if (r.ratio > 0.0) {
            xs.push_back((double)l);
            ys.push_back(std::log2(r.ratio));
        }
    }
    if (xs.size() >= 2) sw.kappa_hat = regression_slope(xs, ys);
    return sw;
}

}  // namespace quadpat
