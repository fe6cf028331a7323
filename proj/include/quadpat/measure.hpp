#pragma once

// Grid measures on [0,1] and the constructive measure theory of the pipeline:
//
//   frostman             bottom-up capped-tree measure; mass equals the dyadic
//                        content and nu(B(x,r)) <= 4 r^beta for r >= 2^-m.
//   spectral_gap_measure per level-T child, a Frostman measure normalized to
//                        w(Q) = int_Q varphi; total mass exactly 1.
//   mollify              mu * phi_eps as a sampled density (exact cumulative
//                        differences; fine grids are block-aggregated with a
//                        tracked error bound before convolving).
//   ball_mass            exact mass of [x-r, x+r] with partial cells prorated.
//   regular_core         mu-mass of D_c = {x : exists dyadic r, mu(B(x,r)) <= c r}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadpat/dyadic.hpp"
#include "quadpat/kernels.hpp"
#include "quadpat/numerics.hpp"
#include "quadpat/sampled.hpp"

namespace quadpat {

class GridMeasure {
public:
    GridMeasure() : resolution_(0), w_(1, 0.0) {}
    GridMeasure(int resolution, std::vector<double> weights)
        : resolution_(resolution), w_(std::move(weights)) {
        if (resolution < 0 || resolution > 30 || w_.size() != (1ULL << resolution))
            fail(ErrorKind::parameter, "GridMeasure: weight count must be 2^resolution");
        for (double x : w_)
            if (!(x >= 0.0)) fail(ErrorKind::parameter, "GridMeasure: negative weight");
    }

    static GridMeasure lebesgue(int resolution) {
        return GridMeasure(resolution,
                           std::vector<double>(1ULL << resolution, pow2(-resolution)));
    }

    int resolution() const { return resolution_; }
    std::uint64_t cells() const { return w_.size(); }
    double cell_width() const { return pow2(-resolution_); }
    double cell_left(std::uint64_t k) const { return (double)k * cell_width(); }
    double cell_center(std::uint64_t k) const { return ((double)k + 0.5) * cell_width(); }
    const std::vector<double>& weights() const { return w_; }
    std::vector<double>& weights() { return w_; }

    double total_mass() const {
        long double s = 0.0L;
        for (double x : w_) s += x;
        return (double)s;
    }

    void scale(double f) {
        for (auto& x : w_) x *= f;
    }

    GridMeasure normalized() const {
        GridMeasure r = *this;
        const double m = total_mass();
        if (m <= 0.0) fail(ErrorKind::parameter, "normalized: zero measure");
        r.scale(1.0 / m);
        return r;
    }

private:
    int resolution_;
    std::vector<double> w_;
};

// ---------------------------------------------------------------------------
// Prefix masses: exact window masses with partial cells prorated.
// ---------------------------------------------------------------------------

class PrefixMass {
public:
    explicit PrefixMass(const GridMeasure& mu) : m_(mu.resolution()), p_(mu.cells() + 1, 0.0) {
        long double acc = 0.0L;
        for (std::uint64_t k = 0; k < mu.cells(); ++k) {
            acc += mu.weights()[k];
            p_[k + 1] = (double)acc;
        }
    }

    // mass of [0, x]; piecewise linear between cell edges
    double upto(double x) const {
        const double t = std::ldexp(std::clamp(x, 0.0, 1.0), m_);
        const double fl = std::floor(t);
        std::uint64_t k = (std::uint64_t)fl;
        if (k >= p_.size() - 1) return p_.back();
        return p_[k] + (p_[k + 1] - p_[k]) * (t - fl);
    }

    double window(double lo, double hi) const { return lo >= hi ? 0.0 : upto(hi) - upto(lo); }
    double total() const { return p_.back(); }

private:
    int m_;
    std::vector<double> p_;
};

inline double ball_mass(const GridMeasure& mu, double x, double r) {
    if (!(r > 0.0)) fail(ErrorKind::parameter, "ball_mass: r must be positive");
    const double lo = x - r, hi = x + r;
    const double l = mu.cell_width();
    const std::uint64_t k0 = (std::uint64_t)std::clamp(std::floor(lo / l), 0.0, (double)(mu.cells() - 1));
    const std::uint64_t k1 = (std::uint64_t)std::clamp(std::ceil(hi / l), 1.0, (double)mu.cells());
    long double acc = 0.0L;
    for (std::uint64_t k = k0; k < k1; ++k) {
        const double a = std::max(lo, mu.cell_left(k));
        const double b = std::min(hi, mu.cell_left(k) + l);
        if (b > a) acc += mu.weights()[k] * ((b - a) / l);
    }
    return (double)acc;
}

// ---------------------------------------------------------------------------
// Constructive Frostman measure: leaf mass l^beta on kept cells, then every
// node whose subtree mass exceeds l(node)^beta is scaled down to the cap.
// Total mass equals the dyadic content exactly; nu(B(x,r)) <= 4 r^beta.
// ---------------------------------------------------------------------------

namespace detail {

inline double frostman_build(const DyadicSet& set, std::vector<double>& w,
                             const std::vector<double>& pw, int j, std::uint64_t k) {
    const int m = set.resolution();
    const std::uint64_t width = 1ULL << (m - j);
    const std::uint64_t lo = k * width;
    const std::uint64_t n = set.count_range(lo, lo + width);
    if (n == 0) return 0.0;
    if (j == m) {
        w[lo] = pw[m];
        return pw[m];
    }
    if (n == width) {  // full subtree caps at every level: uniform pw[j]
        const double each = pw[j] / (double)width;
        for (std::uint64_t i = lo; i < lo + width; ++i) w[i] = each;
        return pw[j];
    }
    const double s = frostman_build(set, w, pw, j + 1, 2 * k) +
                     frostman_build(set, w, pw, j + 1, 2 * k + 1);
    if (s > pw[j]) {
        const double f = pw[j] / s;
        for (std::uint64_t i = lo; i < lo + width; ++i) w[i] *= f;
        return pw[j];
    }
    return s;
}

}  // namespace detail

inline GridMeasure frostman(const DyadicSet& set, double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorKind::parameter, "frostman: beta must be in (0,1]");
    if (set.empty()) fail(ErrorKind::precondition, "frostman: empty set");
    const int m = set.resolution();
    std::vector<double> pw(m + 1);
    for (int j = 0; j <= m; ++j) pw[j] = std::pow(2.0, -beta * j);
    std::vector<double> w(set.cell_total(), 0.0);
    detail::frostman_build(set, w, pw, 0, 0);
    return GridMeasure(m, std::move(w));
}

// Largest observed nu(B(x,r)) / r^beta over cell centers and dyadic radii.
inline double max_ball_ratio(const GridMeasure& mu, double beta) {
    const PrefixMass pm(mu);
    const int m = mu.resolution();
    double worst = 0.0;
    for (std::uint64_t k = 0; k < mu.cells(); ++k) {
        const double x = mu.cell_center(k);
        for (int e = 0; e <= m; ++e) {
            const double r = pow2(-e);
            worst = std::max(worst, pm.window(x - r, x + r) / std::pow(r, beta));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Regular core: mass of D_c = {x | mu(B(x,r)) <= c r for some dyadic r} and
// the complement grid (the cells where every dyadic ball is c-thick).
// ---------------------------------------------------------------------------

struct RegularCoreResult {
    double dc_mass = 0.0;    // mu(D_c)
    DyadicSet core;          // complement cells, one bit per cell
};

inline RegularCoreResult regular_core(const GridMeasure& mu, double c) {
    if (!(c > 0.0)) fail(ErrorKind::parameter, "regular_core: c must be positive");
    const PrefixMass pm(mu);
    const int m = mu.resolution();
    RegularCoreResult out;
    out.core = DyadicSet(m);
    long double dc = 0.0L;
    for (std::uint64_t k = 0; k < mu.cells(); ++k) {
        const double x = mu.cell_center(k);
        bool thin = false;
        for (int e = m; e >= 0 && !thin; --e) {
            const double r = pow2(-e);
            if (pm.window(x - r, x + r) <= c * r) thin = true;
        }
        if (thin)
            dc += mu.weights()[k];
        else
            out.core.set_cell(k, true);
    }
    out.dc_mass = (double)dc;
    return out;
}

// ---------------------------------------------------------------------------
// Block aggregation: level-K masses and centroids (matches moments 0 and 1;
// the quadratic moment bound carries the aggregation error budgets).
// ---------------------------------------------------------------------------

struct AggregatedMeasure {
    int level = 0;
    std::vector<double> mass;
    std::vector<double> centroid;
    double total = 0.0;
};

inline AggregatedMeasure aggregate(const GridMeasure& mu, int level) {
    if (level < 0 || level > mu.resolution()) fail(ErrorKind::parameter, "aggregate: bad level");
    AggregatedMeasure a;
    a.level = level;
    const std::uint64_t blocks = 1ULL << level;
    const std::uint64_t per = mu.cells() >> level;
    a.mass.assign(blocks, 0.0);
    a.centroid.assign(blocks, 0.0);
    long double tot = 0.0L;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        long double ms = 0.0L, mx = 0.0L;
        for (std::uint64_t i = b * per; i < (b + 1) * per; ++i) {
            ms += mu.weights()[i];
            mx += mu.weights()[i] * mu.cell_center(i);
        }
        a.mass[b] = (double)ms;
        a.centroid[b] = ms > 0.0L ? (double)(mx / ms) : ((double)b + 0.5) * pow2(-level);
        tot += ms;
    }
    a.total = (double)tot;
    return a;
}

// ---------------------------------------------------------------------------
// Mollification mu_eps = mu * phi_eps on a uniform output grid.
//
// The measure is first aggregated to the coarsest block level whose
// second-moment error bound  (1/8)||phi''|| eps^-3 4^-K mass  stays under
// tol_rel * eps^-1 * mass, then the blocked measure is convolved exactly via
// cumulative differences of phi (FFT over the block lattice).
// ---------------------------------------------------------------------------

struct MollifyResult {
    SampledFunction density;         // exact-at-nodes density on the output grid
    double aggregation_bound = 0.0;  // sup-norm error vs the unaggregated measure
    double interp_bound = 0.0;       // linear-interpolation bound between output nodes
    int measure_level = 0;           // representation level of the measure
};

namespace detail {

// linear convolution out[t] = sum_j a[j] k[t - j + k_center]; direct for small
// products, FFT otherwise
inline std::vector<double> linear_conv(const std::vector<double>& a, const std::vector<double>& k,
                                       std::size_t out_len, std::int64_t k_center) {
    std::vector<double> out(out_len, 0.0);
    if ((double)a.size() * (double)k.size() <= 1.0e7) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0.0) continue;
            for (std::size_t d = 0; d < k.size(); ++d) {
                const std::int64_t t = (std::int64_t)j + (std::int64_t)d - k_center;
                if (t >= 0 && (std::size_t)t < out_len) out[(std::size_t)t] += a[j] * k[d];
            }
        }
        return out;
    }
    std::size_t n = 1;
    while (n < a.size() + k.size()) n <<= 1;
    std::vector<cplx> fa(n, 0.0), fk(n, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) fa[j] = a[j];
    for (std::size_t d = 0; d < k.size(); ++d) fk[d] = k[d];
    fft_pow2(fa);
    fft_pow2(fk);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fk[i];
    fft_pow2(fa, true);
    for (std::size_t t = 0; t < out_len; ++t) {
        const std::int64_t src = (std::int64_t)t + k_center;
        if (src >= 0 && (std::size_t)src < n) out[t] = fa[(std::size_t)src].real();
    }
    return out;
}

}  // namespace detail

// mu * phi_eps evaluated exactly at the nodes of the 2^-out_resolution grid
// over [-pad, 1+pad].  The measure is represented at level
// La = min(resolution, out_resolution): exact per-cell cumulative differences
// when La == resolution, else block masses plus first moments (dipole
// correction) with the tracked second-moment bound
// (1/8) ||phi''|| eps^-3 4^-La mass.
inline MollifyResult mollify_with_report(const GridMeasure& mu, double eps, int out_resolution) {
    if (!(eps > 0.0)) fail(ErrorKind::parameter, "mollify: eps must be positive");
    if (out_resolution < 1 || out_resolution > 24)
        fail(ErrorKind::parameter, "mollify: out_resolution in [1,24]");
    const int m = mu.resolution();
    const double mass = mu.total_mass();
    const double d2 = MollifierPhi::sup_deriv2();
    const int La = std::min(m, out_resolution);

    const double h = pow2(-out_resolution);
    const double lA = pow2(-La);
    const std::int64_t stride = (std::int64_t)1 << (out_resolution - La);
    const std::int64_t pad = (std::int64_t)std::ceil((eps + lA) / h) + 2;
    const std::size_t nx = (std::size_t)((1LL << out_resolution) + 2 * pad + 1);
    const std::size_t klen = 2 * (std::size_t)pad + 1;

    // sources on the dense lattice: index j*stride carries cell/block j
    std::vector<double> vals;
    MollifyResult r;
    r.measure_level = La;
    if (La == m) {
        std::vector<double> src(nx, 0.0);
        for (std::uint64_t j = 0; j < mu.cells(); ++j) src[(std::size_t)((std::int64_t)j * stride)] = mu.weights()[j];
        std::vector<double> kern(klen);
        for (std::size_t d = 0; d < klen; ++d) {
            const double xd = (double)((std::int64_t)d - pad) * h;  // x - (cell left edge)
            kern[d] = (MollifierPhi::cumulative(xd / eps) - MollifierPhi::cumulative((xd - lA) / eps)) / lA;
        }
        vals = detail::linear_conv(src, kern, nx, 0);
        r.aggregation_bound = 0.0;
    } else {
        const AggregatedMeasure ag = aggregate(mu, La);
        std::vector<double> src(nx, 0.0), dip(nx, 0.0);
        for (std::uint64_t b = 0; b < ag.mass.size(); ++b) {
            const std::size_t slot = (std::size_t)((std::int64_t)b * stride);
            src[slot] = ag.mass[b];
            dip[slot] = ag.mass[b] * (ag.centroid[b] - ((double)b + 0.5) * lA);
        }
        std::vector<double> k0(klen), k1(klen);
        for (std::size_t d = 0; d < klen; ++d) {
            const double xd = (double)((std::int64_t)d - pad) * h - 0.5 * lA;  // x - (block center)
            k0[d] = mollifier_eps(xd, eps);
            k1[d] = MollifierPhi::deriv(xd / eps) / (eps * eps);
        }
        // int phi_eps(x-y) dmu_b ~= m_b phi_eps(x-C_b) - phi_eps'(x-C_b) m_b (centroid-C_b)
        vals = detail::linear_conv(src, k0, nx, 0);
        const std::vector<double> corr = detail::linear_conv(dip, k1, nx, 0);
        for (std::size_t t = 0; t < nx; ++t) vals[t] -= corr[t];
        r.aggregation_bound = d2 / (8.0 * eps * eps * eps) * mass * lA * lA / 4.0;
    }

    // mu_eps >= 0: clamping convolution roundoff to zero only improves the values
    for (auto& v : vals) v = std::max(v, 0.0);
    r.interp_bound = d2 / (8.0 * eps * eps * eps) * mass * h * h;
    r.density = SampledFunction((double)(-pad) * h, ((double)(1LL << out_resolution) + (double)pad) * h,
                                std::move(vals));
    return r;
}

// default evaluation grid for a kernel scale: resolve the kernel and the cells
inline int mollify_grid_level(const GridMeasure& mu, double eps) {
    const int from_kernel = (int)std::ceil(std::log2(1.0 / eps)) + 4;
    return std::clamp(std::max({12, std::min(mu.resolution(), 18), from_kernel}), 12, 20);
}

inline SampledFunction mollify(const GridMeasure& mu, double eps, int out_resolution) {
    return mollify_with_report(mu, eps, out_resolution).density;
}

// ---------------------------------------------------------------------------
// Spectral-gap measure (per-child Frostman pieces weighted by varphi)
// ---------------------------------------------------------------------------

enum class GapPrecondition { strict, per_child };

struct SpectralGapOptions {
    std::optional<int> level_override;     // force T (voids the A,B chain guarantee)
    GapPrecondition precondition = GapPrecondition::strict;
    int resolution_slack = 1;              // require set resolution >= T + slack
};

struct ConstructionReport {
    double A = 0.0, B = 0.0, beta = 0.0;
    int T = 0;
    double log2_delta = 0.0;               // delta = 2^{-3T-3}
    double beta_min = 0.0;                 // smallest beta closing the dense-children claim
    bool level_overridden = false;
    std::string precondition_mode;
    double content = 0.0;                  // measured H^beta(E)
    double min_child_content_ratio = 0.0;  // min content(E cap Q) / (l(Q)^beta / 2) over weighted children
    double total_mass = 0.0;
    double max_child_mass = 0.0;           // vs bound 2^{1-T}
    std::vector<double> child_mass;
    double lipschitz_coeff = 0.0;          // |muhat - varphihat|(xi) <= coeff * |xi|
    std::optional<double> gap_integral;    // filled by the caller (fourier layer)
    std::optional<double> gap_error_bound;
};

// Smallest beta with 1 - 2^{-3T-3} > 2^{T(1-beta)} - 2^{-T beta - 1}.
inline double spectral_gap_beta_min(int T) {
    auto f = [&](double beta) {
        return 1.0 - std::exp2(-3.0 * T - 3.0) -
               (std::exp2((double)T * (1.0 - beta)) - std::exp2(-(double)T * beta - 1.0));
    };
    double lo = 0.0, hi = 1.0;  // f increasing, f(1) > 0
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

inline int spectral_gap_level(double A, double B) {
    // minimal T with 2^{3-T} B^4 <= 2^{-1} A^{-3}
    const double rhs = 0.5 * std::pow(A, -3.0);
    int T = 1;
    while (std::ldexp(std::pow(B, 4.0), 3 - T) > rhs) {
        if (++T > 200) fail(ErrorKind::parameter, "spectral_gap_level: A,B out of range");
    }
    return T;
}

inline std::pair<GridMeasure, ConstructionReport> spectral_gap_measure(
    const DyadicSet& set, double A, double B, double beta, SpectralGapOptions opts = {}) {
    if (!(A > 0.0 && A < B)) fail(ErrorKind::parameter, "spectral_gap_measure: need 0 < A < B");
    if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorKind::parameter, "spectral_gap_measure: beta in (0,1]");

    ConstructionReport rep;
    rep.A = A;
    rep.B = B;
    rep.beta = beta;
    rep.level_overridden = opts.level_override.has_value();
    rep.T = opts.level_override.value_or(spectral_gap_level(A, B));
    if (rep.T < 1) fail(ErrorKind::parameter, "spectral_gap_measure: T must be >= 1");
    rep.log2_delta = -(3.0 * rep.T + 3.0);
    rep.beta_min = spectral_gap_beta_min(rep.T);
    rep.precondition_mode = opts.precondition == GapPrecondition::strict ? "strict" : "per_child";

    const int m = set.resolution();
    const int T = rep.T;
    if (m < T + opts.resolution_slack)
        fail(ErrorKind::resolution,
             "spectral_gap_measure: set resolution " + std::to_string(m) + " below T + slack = " +
                 std::to_string(T + opts.resolution_slack));

    const double delta = std::exp2(rep.log2_delta);
    rep.content = content_upper(set, beta);
    if (opts.precondition == GapPrecondition::strict) {
        if (beta < rep.beta_min)
            fail(ErrorKind::precondition,
                 "spectral_gap_measure: beta " + std::to_string(beta) +
                     " below the dense-children threshold beta_min = " + std::to_string(rep.beta_min));
        if (!(rep.content >= 1.0 - delta - 1e-9))
            fail(ErrorKind::precondition,
                 "spectral_gap_measure: content " + std::to_string(rep.content) +
                     " below 1 - delta (deficit " + std::to_string(1.0 - delta - rep.content) + ")");
    }

    // per-child contents and varphi weights
    const double lT = pow2(-T);
    const double half_cap = 0.5 * std::pow(lT, beta);
    const std::uint64_t children = 1ULL << T;
    rep.child_mass.resize(children);
    double min_ratio = std::numeric_limits<double>::infinity();

    std::vector<double> w(set.cell_total(), 0.0);
    std::vector<double> pw(m + 1);
    for (int j = 0; j <= m; ++j) pw[j] = std::pow(2.0, -beta * j);

    long double total = 0.0L;
    for (std::uint64_t k = 0; k < children; ++k) {
        const double wq = WeightVarphi::cumulative((double)(k + 1) * lT) -
                          WeightVarphi::cumulative((double)k * lT);
        rep.child_mass[k] = wq;
        if (wq <= 0.0) continue;  // varphi vanishes to machine zero near the edges
        const double child_content = detail::content_dp(set, detail::ContentEngineDouble(beta, m), T, k);
        min_ratio = std::min(min_ratio, child_content / half_cap);
        if (child_content <= 0.0)
            fail(ErrorKind::precondition,
                 "spectral_gap_measure: weighted child " + std::to_string(k) +
                     " misses the set (content 0, weight " + std::to_string(wq) + ")");
        // Frostman piece on the child subtree, normalized to mass w(Q)
        const double piece = detail::frostman_build(set, w, pw, T, k);
        const double f = wq / piece;
        const std::uint64_t width = 1ULL << (m - T);
        for (std::uint64_t i = k * width; i < (k + 1) * width; ++i) w[i] *= f;
        total += wq;
        rep.max_child_mass = std::max(rep.max_child_mass, wq);
    }
    rep.min_child_content_ratio = min_ratio;
    if (opts.precondition == GapPrecondition::per_child && !(min_ratio >= 1.0 - 1e-9))
        fail(ErrorKind::precondition,
             "spectral_gap_measure: a weighted child has content below l(Q)^beta / 2 (worst ratio " +
                 std::to_string(min_ratio) + ")");

    rep.total_mass = (double)total;
    rep.lipschitz_coeff = 2.0 * M_PI * std::ldexp(2.0, -T);  // 2^{1-T} D, D = 2 pi

    return {GridMeasure(m, std::move(w)), rep};
}

}  // namespace quadpat
