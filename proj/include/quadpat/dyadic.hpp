#pragma once

// Dyadic interval arithmetic on [0,1]: the interval tree D, exact dyadic
// Hausdorff content by min/plus dynamic programming over the tree, dense-cube
// selection, and the rescaling maps T_Q.
//
// Content semantics: H^beta(S) = inf over covers of S by dyadic subintervals
// of [0,1] of sum l(Q_i)^beta.  On the tree this is
//
//     value(node) = 0                              node misses S
//     value(leaf) = l(leaf)^beta                   kept leaf at resolution m
//     value(node) = min(l(node)^beta, value(left) + value(right))
//
// computed exactly.  Two engines: an exact one over Z[sqrt 2] scaled by a
// power of two (beta = 1 and beta = 1/2, where every DP value lives in that
// ring), and a double engine with a 1e-12 comparison slack for other beta.

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadpat/numerics.hpp"

namespace quadpat {

struct DyadicInterval {
    int level = 0;        // j >= 0
    std::uint64_t index = 0;  // k in [0, 2^j)

    double length() const { return pow2(-level); }
    double left() const { return (double)index * pow2(-level); }
    double right() const { return (double)(index + 1) * pow2(-level); }

    DyadicInterval child(int side) const { return {level + 1, 2 * index + (std::uint64_t)side}; }
    DyadicInterval parent() const { return {level - 1, index / 2}; }

    bool operator==(const DyadicInterval&) const = default;
};

class DyadicSet {
public:
    DyadicSet() : resolution_(0), bits_(1, 0) {}
    explicit DyadicSet(int resolution)
        : resolution_(check_res(resolution)), bits_(word_count(resolution), 0) {}

    static DyadicSet full(int resolution) {
        DyadicSet s(resolution);
        for (auto& w : s.bits_) w = ~0ULL;
        s.trim();
        return s;
    }
    static DyadicSet empty_set(int resolution) { return DyadicSet(resolution); }

    int resolution() const { return resolution_; }
    std::uint64_t cell_total() const { return 1ULL << resolution_; }

    bool cell(std::uint64_t k) const { return (bits_[k >> 6] >> (k & 63)) & 1ULL; }
    void set_cell(std::uint64_t k, bool on) {
        const std::uint64_t mask = 1ULL << (k & 63);
        if (on)
            bits_[k >> 6] |= mask;
        else
            bits_[k >> 6] &= ~mask;
    }

    std::uint64_t cell_count() const {
        std::uint64_t n = 0;
        for (auto w : bits_) n += (std::uint64_t)std::popcount(w);
        return n;
    }
    bool empty() const { return cell_count() == 0; }
    double measure() const { return (double)cell_count() * pow2(-resolution_); }

    // closed-cell membership of real points: endpoints belong to both neighbors
    bool contains_point(double x) const {
        if (x < 0.0 || x > 1.0) return false;
        const double t = std::ldexp(x, resolution_);
        double fl = std::floor(t);
        std::uint64_t k = (std::uint64_t)fl;
        if (k >= cell_total()) k = cell_total() - 1;
        if (cell(k)) return true;
        if (t == fl && k > 0 && cell(k - 1)) return true;
        return false;
    }

    DyadicSet set_union(const DyadicSet& o) const { return combine(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
    DyadicSet set_intersect(const DyadicSet& o) const { return combine(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
    DyadicSet set_complement() const {
        DyadicSet r(resolution_);
        for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = ~bits_[i];
        r.trim();
        return r;
    }

    // number of kept cells among [k0, k1)
    std::uint64_t count_range(std::uint64_t k0, std::uint64_t k1) const {
        std::uint64_t n = 0;
        while (k0 < k1 && (k0 & 63)) n += cell(k0++);
        while (k0 + 64 <= k1) {
            n += (std::uint64_t)std::popcount(bits_[k0 >> 6]);
            k0 += 64;
        }
        while (k0 < k1) n += cell(k0++);
        return n;
    }

    const std::vector<std::uint64_t>& words() const { return bits_; }
    std::vector<std::uint64_t>& words() { return bits_; }

    bool operator==(const DyadicSet&) const = default;

private:
    static int check_res(int m) {
        if (m < 0 || m > 30) fail(ErrorKind::parameter, "DyadicSet: resolution must be in [0, 30]");
        return m;
    }
    static std::size_t word_count(int m) { return ((1ULL << m) + 63) >> 6; }

    void trim() {
        const int rem = (int)(cell_total() & 63);
        if (rem) bits_.back() &= (1ULL << rem) - 1;
    }

    template <class Op>
    DyadicSet combine(const DyadicSet& o, Op op) const {
        if (o.resolution_ != resolution_) fail(ErrorKind::parameter, "DyadicSet: resolution mismatch");
        DyadicSet r(resolution_);
        for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = op(bits_[i], o.bits_[i]);
        return r;
    }

    int resolution_;
    std::vector<std::uint64_t> bits_;
};

// ---------------------------------------------------------------------------
// Content engines
// ---------------------------------------------------------------------------

namespace detail {

// Exact ring value (a + b sqrt2) * 2^{-shift}, shift fixed per computation.
struct Zr2 {
    std::int64_t a = 0, b = 0;

    Zr2 operator+(Zr2 o) const { return {a + o.a, b + o.b}; }

    // sign of (a + b sqrt2), exact
    static int sign(std::int64_t a, std::int64_t b) {
        if (a >= 0 && b >= 0) return (a || b) ? 1 : 0;
        if (a <= 0 && b <= 0) return (a || b) ? -1 : 0;
        // opposite signs: compare a^2 vs 2 b^2
        const __int128 aa = (__int128)a * a;
        const __int128 bb = (__int128)2 * b * b;
        const int big = aa > bb ? 1 : (aa < bb ? -1 : 0);
        return a > 0 ? big : -big;  // |a| vs |b|sqrt2 decides, sign of a orients
    }

    bool operator<(Zr2 o) const { return sign(a - o.a, b - o.b) < 0; }

    double to_double(int shift) const { return ((double)a + (double)b * std::sqrt(2.0)) * pow2(-shift); }
};

// beta = p/q with q in {1,2}; level-j value 2^{-j p/q} as Zr2 at scale 2^{-shift}
struct ContentEngineExact {
    using value_type = Zr2;
    int q, shift;

    ContentEngineExact(int q_, int max_level) : q(q_), shift((max_level + q - 1) / q) {}

    Zr2 level_value(int j) const {
        if (q == 1 || j % 2 == 0) return {std::int64_t(1) << (shift - j / q), 0};
        // odd level with q=2: 2^{-j/2} = sqrt2 * 2^{-(j+1)/2}
        return {0, std::int64_t(1) << (shift - (j + 1) / 2)};
    }

    static Zr2 vmin(Zr2 x, Zr2 y) { return y < x ? y : x; }
    double finish(Zr2 v) const { return v.to_double(shift); }
};

struct ContentEngineDouble {
    using value_type = double;
    std::vector<double> pw;  // 2^{-j beta}

    ContentEngineDouble(double beta, int max_level) : pw(max_level + 1) {
        for (int j = 0; j <= max_level; ++j) pw[j] = std::pow(2.0, -beta * j);
    }

    double level_value(int j) const { return pw[j]; }
    static double vmin(double x, double y) { return std::min(x, y); }
    double finish(double v) const { return v; }
};

// Recursive min/plus DP over the subtree of (j, k).  Full and empty subtrees
// short-circuit: a full subtree's value is its own cap, an empty one is 0.
template <class Engine>
typename Engine::value_type content_dp(const DyadicSet& s, const Engine& eng, int j, std::uint64_t k) {
    const int m = s.resolution();
    const std::uint64_t width = 1ULL << (m - j);
    const std::uint64_t n = s.count_range(k * width, (k + 1) * width);
    if (n == 0) return typename Engine::value_type{};
    if (n == width || j == m) return eng.level_value(j);
    auto lhs = content_dp(s, eng, j + 1, 2 * k);
    auto rhs = content_dp(s, eng, j + 1, 2 * k + 1);
    return Engine::vmin(eng.level_value(j), lhs + rhs);
}

inline bool is_exact_beta(double beta) { return beta == 1.0 || beta == 0.5; }

}  // namespace detail

// Exact infimum over dyadic covers of S by intervals inside [0,1].
// Result for the subtree below Q when Q is given (covers of S cap Q).
inline double content_upper(const DyadicSet& set, double beta,
                            DyadicInterval root = {0, 0}) {
    if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorKind::parameter, "content_upper: beta must be in (0,1]");
    if (root.level > set.resolution()) fail(ErrorKind::parameter, "content_upper: root finer than resolution");
    const int m = set.resolution();
    if (detail::is_exact_beta(beta)) {
        detail::ContentEngineExact eng(beta == 1.0 ? 1 : 2, m);
        return eng.finish(detail::content_dp(set, eng, root.level, root.index));
    }
    detail::ContentEngineDouble eng(beta, m);
    return eng.finish(detail::content_dp(set, eng, root.level, root.index));
}

// DP values of every node at one level, one pass (used for per-child checks).
inline std::vector<double> level_contents(const DyadicSet& set, double beta, int level) {
    if (level < 0 || level > set.resolution()) fail(ErrorKind::parameter, "level_contents: bad level");
    std::vector<double> out(1ULL << level);
    for (std::uint64_t k = 0; k < out.size(); ++k) out[k] = content_upper(set, beta, {level, k});
    return out;
}

// Coarsest dyadic Q with content(S cap Q) >= (1 - delta) l(Q)^beta; ties by
// smallest index.  Existence for nonempty S is structural: every kept leaf
// satisfies the inequality with equality, so the scan terminates.
inline DyadicInterval find_dense_cube(const DyadicSet& set, double beta, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::parameter, "find_dense_cube: delta must be in (0,1)");
    if (set.empty()) fail(ErrorKind::not_found, "find_dense_cube: empty set");
    const double slack = 1e-12;
    for (int j = 0; j <= set.resolution(); ++j) {
        const double target = (1.0 - delta) * std::pow(2.0, -beta * j);
        for (std::uint64_t k = 0; k < (1ULL << j); ++k) {
            DyadicInterval q{j, k};
            if (content_upper(set, beta, q) >= target - slack) return q;
        }
    }
    fail(ErrorKind::not_found, "find_dense_cube: scan exhausted (unreachable for nonempty sets)");
}

// Image of S cap Q under T_Q(y) = 2^j (y - x_Q), at resolution m - j.
inline DyadicSet rescale(const DyadicSet& set, DyadicInterval q) {
    if (q.level > set.resolution())
        fail(ErrorKind::parameter, "rescale: Q.level exceeds set resolution");
    const int out_m = set.resolution() - q.level;
    DyadicSet out(out_m);
    const std::uint64_t base = q.index << out_m;
    for (std::uint64_t k = 0; k < (1ULL << out_m); ++k)
        if (set.cell(base + k)) out.set_cell(k, true);
    return out;
}

}  // namespace quadpat
