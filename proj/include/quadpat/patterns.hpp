#pragma once

// Ground truth for three-point quadratic patterns {x, x+t, x+P_{p,q}(t)}:
// exhaustive grid search, configuration sets Delta_q, and the translation
// defect |E \ intersect_j (E - f_j(t))| behind the positive-measure argument.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "quadpat/dyadic.hpp"
#include "quadpat/numerics.hpp"

namespace quadpat {

struct QuadraticPattern {
    double p = 1.0;  // leading coefficient, nonzero
    double q = 0.0;  // linear coefficient
    int l = 0;       // scale index; t ranges over spt tau_l = [2^{-l-1}, 2^{-l+2}]

    double eval(double t) const { return p * t * t + q * t; }
    double window_lo() const { return std::ldexp(1.0, -l - 1); }
    double window_hi() const { return std::ldexp(1.0, -l + 2); }

    void validate() const {
        if (p == 0.0) fail(ErrorKind::parameter, "QuadraticPattern: p must be nonzero");
        if (l < 0) fail(ErrorKind::parameter, "QuadraticPattern: l must be nonnegative");
    }
};

struct PatternWitness {
    double x = 0.0;
    double t = 0.0;
    std::array<double, 3> points{};  // {x, x+t, x+P(t)}
    bool distinct = false;
};

// Exhaustive scan: x over cell grid points and centers, t over multiples of
// 2^-m inside the window.  First witness in (cell, x-kind, t) order; each
// witness is re-verified by closed-cell membership before returning.
inline std::optional<PatternWitness> search_pattern(const DyadicSet& set,
                                                    const QuadraticPattern& pat,
                                                    bool require_distinct = false) {
    pat.validate();
    const int m = set.resolution();
    const double l = pow2(-m);
    const std::int64_t j0 = (std::int64_t)std::ceil(pat.window_lo() / l - 1e-12);
    const std::int64_t j1 = (std::int64_t)std::floor(pat.window_hi() / l + 1e-12);

    auto try_witness = [&](double x, double t) -> std::optional<PatternWitness> {
        if (t == 0.0) return std::nullopt;
        const double y = x + t, z = x + pat.eval(t);
        if (!set.contains_point(x) || !set.contains_point(y) || !set.contains_point(z))
            return std::nullopt;
        PatternWitness w;
        w.x = x;
        w.t = t;
        w.points = {x, y, z};
        w.distinct = (x != y) && (x != z) && (y != z);
        if (require_distinct && !w.distinct) return std::nullopt;
        return w;
    };

    for (std::uint64_t k = 0; k < set.cell_total(); ++k) {
        if (!set.cell(k)) continue;
        const double xs[2] = {(double)k * l, ((double)k + 0.5) * l};
        for (double x : xs)
            for (std::int64_t j = std::max<std::int64_t>(j0, 1); j <= j1; ++j)
                if (auto w = try_witness(x, (double)j * l)) return w;
    }
    if (set.cell(set.cell_total() - 1))  // right endpoint of [0,1]
        for (std::int64_t j = std::max<std::int64_t>(j0, 1); j <= j1; ++j)
            if (auto w = try_witness(1.0, (double)j * l)) return w;
    return std::nullopt;
}

// Delta_q(E) = { ((z-x) - q(y-x)) / (y-x)^2 : x,y,z in E, x != y, x != z },
// deduplicated within 1e-12.  allow_z_equal_y mirrors the printed definition,
// which does not exclude z = y.
inline std::vector<double> configuration_set(const std::vector<double>& points, double q,
                                             bool allow_z_equal_y = true) {
    if (points.size() < 2) fail(ErrorKind::parameter, "configuration_set: need at least 2 points");
    std::vector<double> vals;
    for (double x : points)
        for (double y : points) {
            if (x == y) continue;
            for (double z : points) {
                if (z == x) continue;
                if (!allow_z_equal_y && z == y) continue;
                vals.push_back(((z - x) - q * (y - x)) / ((y - x) * (y - x)));
            }
        }
    std::sort(vals.begin(), vals.end());
    std::vector<double> out;
    for (double v : vals)
        if (out.empty() || std::abs(v - out.back()) > 1e-12) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Translation defect on the grid: |E \ intersect_j (E - f_j(t))|, computed
// exactly on the interval-run representation of E.
// ---------------------------------------------------------------------------

namespace detail {

using Runs = std::vector<std::pair<double, double>>;  // disjoint, sorted

inline Runs runs_of(const DyadicSet& set) {
    Runs r;
    const double l = pow2(-set.resolution());
    std::uint64_t k = 0;
    while (k < set.cell_total()) {
        if (!set.cell(k)) {
            ++k;
            continue;
        }
        std::uint64_t e = k;
        while (e + 1 < set.cell_total() && set.cell(e + 1)) ++e;
        r.emplace_back((double)k * l, (double)(e + 1) * l);
        k = e + 1;
    }
    return r;
}

inline Runs intersect_runs(const Runs& a, const Runs& b) {
    Runs out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].first, b[j].first);
        const double hi = std::min(a[i].second, b[j].second);
        if (hi > lo) out.emplace_back(lo, hi);
        (a[i].second < b[j].second ? i : j)++;
    }
    return out;
}

inline double runs_measure(const Runs& r) {
    long double s = 0.0L;
    for (auto& [a, b] : r) s += b - a;
    return (double)s;
}

}  // namespace detail

inline double translation_defect(const DyadicSet& set, double t,
                                 const std::vector<std::function<double(double)>>& shifts) {
    detail::Runs base = detail::runs_of(set);
    detail::Runs acc = base;
    for (const auto& f : shifts) {
        const double s = f(t);
        detail::Runs shifted;
        shifted.reserve(base.size());
        for (auto& [a, b] : base) shifted.emplace_back(a - s, b - s);
        acc = detail::intersect_runs(acc, shifted);
    }
    return detail::runs_measure(base) - detail::runs_measure(acc);
}

// the pattern's own shift family {t, P(t)}
inline std::vector<std::function<double(double)>> pattern_shifts(const QuadraticPattern& pat) {
    return {[](double t) { return t; }, [pat](double t) { return pat.eval(t); }};
}

}  // namespace quadpat
