#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "quadpat/patterns.hpp"
#include "quadpat/setgen.hpp"

using namespace quadpat;

namespace {

// Independent pair-loop oracle: t values come from kept-cell position pairs
// instead of a t sweep.  Agrees with search_pattern on existence.
bool naive_pattern_exists(const DyadicSet& set, const QuadraticPattern& pat) {
    const int m = set.resolution();
    const double l = pow2(-m);
    std::vector<double> xs;
    for (std::uint64_t k = 0; k < set.cell_total(); ++k) {
        if (!set.cell(k)) continue;
        xs.push_back((double)k * l);
        xs.push_back(((double)k + 0.5) * l);
        xs.push_back((double)(k + 1) * l);
    }
    for (double x : xs)
        for (double y : xs) {
            const double t = y - x;
            if (t < pat.window_lo() - 1e-15 || t > pat.window_hi() + 1e-15) continue;
            // same-kind positions only (half-offsets are off the scan grid)
            const double steps = t / l;
            if (std::abs(steps - std::llround(steps)) > 1e-9) continue;
            if (t <= 0.0) continue;
            if (set.contains_point(x) && set.contains_point(y) &&
                set.contains_point(x + pat.eval(t)))
                return true;
        }
    return false;
}

}  // namespace

TEST_CASE("search_pattern: full set always contains the pattern") {
    const auto w = search_pattern(DyadicSet::full(8), {1.0, 0.0, 2});
    REQUIRE(w.has_value());
    CHECK(w->t >= pow2(-3));
    CHECK(w->t <= pow2(0));
    CHECK(w->points[1] == w->x + w->t);
    // all three points verified inside [0,1]
    for (double p : w->points) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("search_pattern: the t = 1 coincidence needs require_distinct = false") {
    DyadicSet s(6);
    s.set_cell(0, true);
    s.set_cell(63, true);
    const QuadraticPattern pat{1.0, 0.0, 0};  // window [1/2, 4] contains t = 1
    const auto loose = search_pattern(s, pat, false);
    REQUIRE(loose.has_value());
    CHECK(loose->x == 0.0);
    CHECK(loose->t == 1.0);
    CHECK(loose->points[1] == 1.0);
    CHECK(loose->points[2] == 1.0);
    CHECK(!loose->distinct);
    CHECK(!search_pattern(s, pat, true).has_value());
}

TEST_CASE("search_pattern vs the naive pair-loop oracle") {
    int found = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const DyadicSet s = percolation(0.35 + 0.05 * (double)(seed % 5), 8, 1000 + seed);
        for (int lscale : {1, 3}) {
            const QuadraticPattern pat{1.0, 0.0, lscale};
            const bool scan = search_pattern(s, pat).has_value();
            const bool naive = naive_pattern_exists(s, pat);
            CHECK(scan == naive);
            found += scan;
        }
    }
    CHECK(found > 0);  // the comparison exercised both outcomes
}

TEST_CASE("search_pattern witnesses are grid-verified") {
    const DyadicSet s = cantor(quarter_cantor(5));
    const QuadraticPattern pat{1.0, 0.0, 1};
    if (auto w = search_pattern(s, pat)) {
        CHECK(s.contains_point(w->points[0]));
        CHECK(s.contains_point(w->points[1]));
        CHECK(s.contains_point(w->points[2]));
        CHECK(w->t != 0.0);
    }
}

TEST_CASE("configuration set: two and three point examples") {
    const auto v2 = configuration_set({0.0, 1.0}, 0.0);
    REQUIRE(v2.size() == 2);
    CHECK(v2[0] == -1.0);
    CHECK(v2[1] == 1.0);

    const auto v3 = configuration_set({0.0, 1.0, 2.0}, 0.0);
    CHECK(std::count_if(v3.begin(), v3.end(), [](double a) { return a == 2.0; }) == 1);
    CHECK(!configuration_set({0.3, 0.9}, 0.5).empty());
    CHECK_THROWS_AS(configuration_set({0.5}, 0.0), Error);
}

TEST_CASE("configuration set: matches full enumeration with de-dup") {
    const std::vector<double> pts{0.0, 0.13, 0.5, 0.52, 0.9, 1.0};
    const double q = 0.25;
    std::vector<double> expect;
    for (double x : pts)
        for (double y : pts)
            for (double z : pts) {
                if (x == y || x == z) continue;
                expect.push_back(((z - x) - q * (y - x)) / ((y - x) * (y - x)));
            }
    std::sort(expect.begin(), expect.end());
    std::vector<double> dedup;
    for (double v : expect)
        if (dedup.empty() || std::abs(v - dedup.back()) > 1e-12) dedup.push_back(v);

    const auto got = configuration_set(pts, q);
    REQUIRE(got.size() == dedup.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - dedup[i]) < 1e-12);

    // z = y exclusion shrinks the set
    CHECK(configuration_set(pts, q, false).size() <= got.size());
}

TEST_CASE("configuration set: scaling covariance") {
    // value(ax, ay, az; 0) = value(x, y, z; 0) / a
    auto value = [](double x, double y, double z, double q) {
        return ((z - x) - q * (y - x)) / ((y - x) * (y - x));
    };
    const double a = 3.7;
    for (auto [x, y, z] : {std::tuple{0.1, 0.4, 0.9}, {0.8, 0.2, 0.5}}) {
        CHECK(std::abs(value(a * x, a * y, a * z, 0.0) - value(x, y, z, 0.0) / a) < 1e-12);
    }
}

TEST_CASE("translation defect: zero shift, interval loss bound") {
    const DyadicSet full = DyadicSet::full(10);
    const QuadraticPattern pat{1.0, 0.0, 0};
    CHECK(translation_defect(full, 0.0, pattern_shifts(pat)) == 0.0);
    for (double t : {0.01, 0.05, 0.2}) {
        const double d = translation_defect(full, t, pattern_shifts(pat));
        CHECK(d <= t + t * t + 1e-12);
        CHECK(d >= 0.0);
    }
}

TEST_CASE("translation defect: decays along a dyadic t-sequence") {
    // coarse-structured set at fine resolution: runs much wider than cells
    DyadicSet s(12);
    for (std::uint64_t k = 0; k < 1024; ++k) s.set_cell(k, true);          // [0, 1/4]
    for (std::uint64_t k = 2048; k < 3072; ++k) s.set_cell(k, true);       // [1/2, 3/4]
    const QuadraticPattern pat{1.0, 0.0, 0};
    double prev = 1e9;
    for (int k = 3; k <= 12; ++k) {
        const double d = translation_defect(s, pow2(-k), pattern_shifts(pat));
        CHECK(d <= prev + 1e-12);
        prev = d;
    }
    CHECK(prev <= 0.02 * s.measure());
    // sub-grid shifts keep shrinking the defect toward zero
    CHECK(translation_defect(s, pow2(-16), pattern_shifts(pat)) < prev);
}
