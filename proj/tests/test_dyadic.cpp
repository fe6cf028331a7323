#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "quadpat/dyadic.hpp"
#include "quadpat/setgen.hpp"

using namespace quadpat;

namespace {

// Independent oracle: minimum cover cost over ALL subsets of dyadic intervals
// of level <= m (exponential enumeration; resolutions <= 3 only).
double brute_force_content(const DyadicSet& set, double beta) {
    const int m = set.resolution();
    struct Node {
        int level;
        std::uint64_t index;
    };
    std::vector<Node> nodes;
    for (int j = 0; j <= m; ++j)
        for (std::uint64_t k = 0; k < (1ULL << j); ++k) nodes.push_back({j, k});
    REQUIRE(nodes.size() <= 16);

    double best = 1e300;
    for (std::uint64_t mask = 0; mask < (1ULL << nodes.size()); ++mask) {
        double cost = 0.0;
        std::vector<bool> covered(set.cell_total(), false);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!(mask >> i & 1)) continue;
            cost += std::pow(2.0, -beta * nodes[i].level);
            const std::uint64_t width = 1ULL << (m - nodes[i].level);
            for (std::uint64_t c = nodes[i].index * width; c < (nodes[i].index + 1) * width; ++c)
                covered[c] = true;
        }
        bool ok = true;
        for (std::uint64_t c = 0; c < set.cell_total(); ++c)
            if (set.cell(c) && !covered[c]) ok = false;
        if (ok) best = std::min(best, cost);
    }
    return set.empty() ? 0.0 : best;
}

// Self-similar recursion for the quarter-Cantor content at beta = 1/2:
// v_n = min(1, 2 min(2^{-1/2}, v_{n-1}/2)), v_0 = 1.
double quarter_cantor_recursion(int depth) {
    double v = 1.0;
    for (int n = 1; n <= depth; ++n) v = std::min(1.0, 2.0 * std::min(std::pow(2.0, -0.5), v / 2.0));
    return v;
}

}  // namespace

TEST_CASE("dyadic interval geometry") {
    DyadicInterval q{3, 5};
    CHECK(q.length() == 0.125);
    CHECK(q.left() == 0.625);
    CHECK(q.right() == 0.75);
    CHECK(q.child(0).index == 10);
    CHECK(q.child(1).index == 11);
    CHECK(q.child(0).parent() == q);
    // children tile the parent
    CHECK(q.child(0).right() == q.child(1).left());
}

TEST_CASE("content: full and empty sets") {
    for (double beta : {0.3, 0.5, 0.77, 1.0}) {
        CHECK(content_upper(DyadicSet::full(6), beta) == 1.0);
        CHECK(content_upper(DyadicSet::empty_set(6), beta) == 0.0);
    }
    CHECK_THROWS_AS(content_upper(DyadicSet::full(3), 0.0), Error);
    CHECK_THROWS_AS(content_upper(DyadicSet::full(3), 1.5), Error);
}

TEST_CASE("content equals the exhaustive cover oracle at resolution <= 3") {
    for (double beta : {0.4, 0.5, 0.8, 1.0}) {
        for (std::uint64_t bits = 0; bits < 256; bits += 7) {
            DyadicSet s(3);
            for (int c = 0; c < 8; ++c)
                if (bits >> c & 1) s.set_cell((std::uint64_t)c, true);
            const double dp = content_upper(s, beta);
            const double oracle = brute_force_content(s, beta);
            CHECK(std::abs(dp - oracle) < 1e-12);
        }
    }
}

TEST_CASE("quarter-Cantor content at beta 1/2 is exactly 1") {
    for (int depth : {1, 2, 4, 6}) {
        CHECK(quarter_cantor_recursion(depth) == 1.0);
        const DyadicSet s = cantor(quarter_cantor(depth));
        CHECK(content_upper(s, 0.5) == 1.0);  // exact Z[sqrt2] engine
    }
    // beta above the similarity dimension: content decays with depth
    const double c6 = content_upper(cantor(quarter_cantor(6)), 0.8);
    const double c3 = content_upper(cantor(quarter_cantor(3)), 0.8);
    CHECK(c6 < c3);
    CHECK(c3 < 1.0);
}

TEST_CASE("scaling law: content(rescale(S,Q)) l(Q)^beta = content(S cap Q)") {
    const DyadicSet s = percolation(0.55, 9, 1234);
    for (double beta : {0.5, 0.7, 1.0}) {
        for (DyadicInterval q : {DyadicInterval{1, 0}, DyadicInterval{2, 3}, DyadicInterval{3, 5}}) {
            const double inner = content_upper(s, beta, q);
            const double scaled = content_upper(rescale(s, q), beta) * std::pow(q.length(), beta);
            CHECK(std::abs(inner - scaled) < 1e-12);
        }
    }
}

TEST_CASE("subadditivity and the interval lower bound") {
    const DyadicSet a = percolation(0.4, 8, 5), b = percolation(0.3, 8, 6);
    for (double beta : {0.5, 0.8}) {
        CHECK(content_upper(a.set_union(b), beta) <=
              content_upper(a, beta) + content_upper(b, beta) + 1e-12);
    }
    // a set containing the full dyadic interval [1/4, 1/2]
    DyadicSet s(6);
    for (std::uint64_t c = 16; c < 32; ++c) s.set_cell(c, true);
    s.set_cell(60, true);
    for (double beta : {0.5, 0.9})
        CHECK(content_upper(s, beta) >= std::pow(0.25, beta) - 1e-12);
}

TEST_CASE("find_dense_cube: trivial and pinned cases") {
    // full set: the root qualifies at once
    CHECK(find_dense_cube(DyadicSet::full(8), 0.7, 0.1) == DyadicInterval{0, 0});

    // E = [0, 2^-3] at resolution 8: the coarsest dense cube is E itself
    DyadicSet s(8);
    for (std::uint64_t c = 0; c < 32; ++c) s.set_cell(c, true);
    CHECK(find_dense_cube(s, 0.9, 0.1) == DyadicInterval{3, 0});

    CHECK_THROWS_AS(find_dense_cube(DyadicSet::empty_set(5), 0.8, 0.1), Error);
}

TEST_CASE("find_dense_cube: percolation result re-verified by the content DP") {
    const DyadicSet s = percolation(0.8, 6, 99);
    const double beta = 0.8, delta = 0.2;
    const DyadicInterval q = find_dense_cube(s, beta, delta);
    CHECK(content_upper(s, beta, q) >= (1.0 - delta) * std::pow(q.length(), beta) - 1e-12);
    // coarsest: no strictly coarser dyadic interval qualifies
    for (int j = 0; j < q.level; ++j)
        for (std::uint64_t k = 0; k < (1ULL << j); ++k)
            CHECK(content_upper(s, beta, {j, k}) <
                  (1.0 - delta) * std::pow(2.0, -beta * j) - 1e-12 + 2e-12);
}

TEST_CASE("rescale: identity, halves, self-similarity") {
    const DyadicSet f = DyadicSet::full(7);
    CHECK(rescale(f, {1, 0}) == DyadicSet::full(6));
    const DyadicSet s = percolation(0.5, 7, 31);
    CHECK(rescale(s, {0, 0}) == s);

    // quarter-Cantor depth n rescaled by its level-2 left kept child -> depth n-1
    const DyadicSet c3 = cantor(quarter_cantor(3));
    CHECK(rescale(c3, {2, 0}) == cantor(quarter_cantor(2)));
    CHECK(rescale(c3, {2, 3}) == cantor(quarter_cantor(2)));

    CHECK_THROWS_AS(rescale(DyadicSet::full(3), DyadicInterval{4, 0}), Error);
}

TEST_CASE("closed-cell membership") {
    DyadicSet s(3);
    s.set_cell(2, true);  // [1/4, 3/8]
    CHECK(s.contains_point(0.25));   // shared endpoint belongs to the kept cell
    CHECK(s.contains_point(0.375));
    CHECK(s.contains_point(0.3));
    CHECK(!s.contains_point(0.2));
    CHECK(!s.contains_point(0.5));
    CHECK(!s.contains_point(-0.1));
    CHECK(!s.contains_point(1.1));
}

TEST_CASE("set algebra closure and measure") {
    const DyadicSet a = percolation(0.5, 8, 1), b = percolation(0.5, 8, 2);
    CHECK(a.set_union(b).cell_count() + a.set_intersect(b).cell_count() ==
          a.cell_count() + b.cell_count());
    CHECK(a.set_complement().cell_count() == a.cell_total() - a.cell_count());
    CHECK(a.measure() >= 0.0);
    CHECK(a.measure() <= 1.0);
}
