#pragma once

// Benchmark set generators: iterated keep-pattern (Cantor-type) sets with
// known similarity dimension, and seeded fractal percolation samples.
//
// Percolation keep rule, fixed for cross-implementation parity: cell i at
// depth n is kept iff
//
//     finalize(seed + (i + 1) * 0x9E3779B97F4A7C15) >> 11  <  round(p * 2^53)
//
// where finalize is the splitmix64 output mix.  Bit-for-bit reproducible
// from (p, depth, seed).

#include <cstdint>
#include <vector>

#include "quadpat/dyadic.hpp"

namespace quadpat {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

struct CantorSpec {
    int branch_bits = 2;               // b: children per step = 2^b
    std::vector<int> keep;             // indices in [0, 2^b)
    int depth = 1;                     // n iterations

    int resolution() const { return branch_bits * depth; }
    double similarity_dimension() const {
        return std::log2((double)keep.size()) / (double)branch_bits;
    }
};

// Quarter-Cantor convenience: pattern {0, 3} of b = 2, dimension 1/2.
inline CantorSpec quarter_cantor(int depth) { return {2, {0, 3}, depth}; }

inline DyadicSet cantor(const CantorSpec& spec) {
    if (spec.keep.empty()) fail(ErrorKind::parameter, "cantor: empty keep-pattern");
    if (spec.depth < 0) fail(ErrorKind::parameter, "cantor: negative depth");
    if (spec.branch_bits < 1 || spec.branch_bits > 8) fail(ErrorKind::parameter, "cantor: branch_bits in [1,8]");
    for (int k : spec.keep)
        if (k < 0 || k >= (1 << spec.branch_bits)) fail(ErrorKind::parameter, "cantor: keep index out of range");

    std::vector<std::uint64_t> prefixes{0};
    for (int it = 0; it < spec.depth; ++it) {
        std::vector<std::uint64_t> next;
        next.reserve(prefixes.size() * spec.keep.size());
        for (std::uint64_t p : prefixes)
            for (int k : spec.keep) next.push_back((p << spec.branch_bits) | (std::uint64_t)k);
        prefixes = std::move(next);
    }
    DyadicSet s(spec.resolution());
    for (std::uint64_t c : prefixes) s.set_cell(c, true);
    return s;
}

inline DyadicSet percolation(double p, int depth, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::parameter, "percolation: p must be in [0,1]");
    DyadicSet s(depth);
    if (p == 0.0) return s;
    const std::uint64_t threshold = (std::uint64_t)std::llround(p * 9007199254740992.0);  // p * 2^53
    for (std::uint64_t i = 0; i < s.cell_total(); ++i) {
        const std::uint64_t u = splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15ULL);
        if (p == 1.0 || (u >> 11) < threshold) s.set_cell(i, true);
    }
    return s;
}

}  // namespace quadpat
