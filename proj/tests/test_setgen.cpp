#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "quadpat/setgen.hpp"

using namespace quadpat;

TEST_CASE("cantor: pinned small cases") {
    // pattern {0,3} of b=2, depth 1 -> [0, 1/4] u [3/4, 1]
    const DyadicSet s = cantor({2, {0, 3}, 1});
    CHECK(s.resolution() == 2);
    CHECK(s.cell(0));
    CHECK(!s.cell(1));
    CHECK(!s.cell(2));
    CHECK(s.cell(3));

    // full pattern -> full set at any depth
    CHECK(cantor({2, {0, 1, 2, 3}, 3}) == DyadicSet::full(6));

    // cell count (#pattern)^n
    CHECK(cantor(quarter_cantor(5)).cell_count() == 32);
    CHECK(cantor({2, {0, 2, 3}, 4}).cell_count() == 81);

    CHECK_THROWS_AS(cantor({2, {}, 3}), Error);
    CHECK_THROWS_AS(cantor({2, {4}, 1}), Error);
}

TEST_CASE("cantor: exact self-similarity under kept-child rescaling") {
    const CantorSpec spec{3, {0, 2, 7}, 3};
    const DyadicSet s = cantor(spec);
    for (int k : spec.keep) {
        CHECK(rescale(s, {3, (std::uint64_t)k}) == cantor({3, {0, 2, 7}, 2}));
    }
    CHECK(std::abs(spec.similarity_dimension() - std::log2(3.0) / 3.0) < 1e-15);
}

TEST_CASE("percolation: degenerate probabilities") {
    CHECK(percolation(1.0, 8, 7) == DyadicSet::full(8));
    CHECK(percolation(0.0, 8, 7) == DyadicSet::empty_set(8));
}

TEST_CASE("percolation: binomial statistics at p=0.7, depth 10, seed 42") {
    const DyadicSet s = percolation(0.7, 10, 42);
    const double n = 1024.0, p = 0.7;
    const double sigma = std::sqrt(n * p * (1.0 - p));
    CHECK(std::abs((double)s.cell_count() - n * p) <= 3.0 * sigma);
}

TEST_CASE("percolation: bit-for-bit reproducibility") {
    const DyadicSet a = percolation(0.6, 12, 777);
    const DyadicSet b = percolation(0.6, 12, 777);
    CHECK(a == b);
    CHECK(!(a == percolation(0.6, 12, 778)));

    // keep rule is the documented splitmix64 formula
    const std::uint64_t i = 137;
    const std::uint64_t u = splitmix64(777 + (i + 1) * 0x9E3779B97F4A7C15ULL);
    const bool kept = (u >> 11) < (std::uint64_t)std::llround(0.6 * 9007199254740992.0);
    CHECK(a.cell(i) == kept);
}

TEST_CASE("splitmix64 reference outputs") {
    // finalizer applied to the golden seed sequence (seed 1234567, three steps)
    std::uint64_t state = 1234567;
    auto next = [&]() { return splitmix64(state += 0x9E3779B97F4A7C15ULL); };
    const std::uint64_t a = next(), b = next(), c = next();
    CHECK(a == 6457827717110365317ULL);
    CHECK(b == 3203168211198807973ULL);
    CHECK(c == 9817491932198370423ULL);
}
