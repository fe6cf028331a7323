#pragma once

// Serialization: dyadic sets and grid measures as JSON, spectra and ledgers
// as CSV, report bundles with a stable content hash.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadpat/dyadic.hpp"
#include "quadpat/fourier.hpp"
#include "quadpat/integral.hpp"
#include "quadpat/measure.hpp"
#include "quadpat/patterns.hpp"

namespace quadpat {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// DyadicSet <-> JSON {resolution, hex-encoded cell mask}; run-length text
// ---------------------------------------------------------------------------

inline std::string cells_hex(const DyadicSet& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    const std::uint64_t nibbles = (s.cell_total() + 3) / 4;
    out.reserve(nibbles);
    for (std::uint64_t n = 0; n < nibbles; ++n) {
        unsigned v = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const std::uint64_t c = 4 * n + b;
            if (c < s.cell_total() && s.cell(c)) v |= 1u << b;
        }
        out.push_back(digits[v]);
    }
    return out;
}

inline ordered_json to_json(const DyadicSet& s) {
    return ordered_json{{"resolution", s.resolution()}, {"cells_hex", cells_hex(s)}};
}

inline DyadicSet dyadic_set_from_json(const ordered_json& j) {
    DyadicSet s(j.at("resolution").get<int>());
    const std::string hex = j.at("cells_hex").get<std::string>();
    for (std::uint64_t n = 0; n < hex.size(); ++n) {
        const char c = hex[n];
        const unsigned v = (unsigned)(c <= '9' ? c - '0' : c - 'a' + 10);
        for (unsigned b = 0; b < 4; ++b) {
            const std::uint64_t cell = 4 * n + b;
            if ((v >> b & 1u) && cell < s.cell_total()) s.set_cell(cell, true);
        }
    }
    return s;
}

// human-readable run-length form: "m=8: [12,20) [64,80) ..."
inline std::string run_length_text(const DyadicSet& s) {
    std::ostringstream os;
    os << "m=" << s.resolution() << ":";
    std::uint64_t k = 0;
    while (k < s.cell_total()) {
        if (!s.cell(k)) {
            ++k;
            continue;
        }
        std::uint64_t e = k;
        while (e + 1 < s.cell_total() && s.cell(e + 1)) ++e;
        os << " [" << k << "," << e + 1 << ")";
        k = e + 1;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// GridMeasure and reports
// ---------------------------------------------------------------------------

inline ordered_json to_json(const GridMeasure& mu) {
    return ordered_json{{"resolution", mu.resolution()}, {"weights", mu.weights()}};
}

inline GridMeasure grid_measure_from_json(const ordered_json& j) {
    return GridMeasure(j.at("resolution").get<int>(), j.at("weights").get<std::vector<double>>());
}

inline ordered_json to_json(const ConstructionReport& r) {
    ordered_json j{{"A", r.A},
                   {"B", r.B},
                   {"beta", r.beta},
                   {"T", r.T},
                   {"log2_delta", r.log2_delta},
                   {"delta", std::exp2(r.log2_delta)},
                   {"beta_min", r.beta_min},
                   {"level_overridden", r.level_overridden},
                   {"precondition_mode", r.precondition_mode},
                   {"content", r.content},
                   {"min_child_content_ratio", r.min_child_content_ratio},
                   {"total_mass", r.total_mass},
                   {"max_child_mass", r.max_child_mass},
                   {"lipschitz_coeff", r.lipschitz_coeff},
                   {"child_masses", r.child_mass}};
    if (r.gap_integral) j["gap_integral"] = *r.gap_integral;
    if (r.gap_error_bound) j["gap_error_bound"] = *r.gap_error_bound;
    return j;
}

inline ordered_json to_json(const MainTermCheck& m) {
    return ordered_json{{"measured", m.measured},       {"lower_bound", m.lower_bound},
                        {"dc_mass", m.dc_mass},         {"window_matched", m.window_matched},
                        {"pattern_small", m.pattern_small}, {"dc_small", m.dc_small},
                        {"applicable", m.applicable()}};
}

inline ordered_json to_json(const QuadraticPattern& p) {
    return ordered_json{{"p", p.p}, {"q", p.q}, {"l", p.l}};
}

inline ordered_json to_json(const DecompositionReport& r) {
    static const char* names[3] = {"low", "mid", "high"};
    ordered_json terms = ordered_json::array();
    for (const TermEntry& e : r.terms) {
        terms.push_back(ordered_json{{"row", names[e.row]},
                                     {"col", names[e.col]},
                                     {"value", e.value},
                                     {"bound_kind", e.bound_kind},
                                     {"bound_measured", e.bound_measured},
                                     {"bound_asymptotic", e.bound_asymptotic},
                                     {"ratio_measured", e.ratio_measured}});
    }
    return ordered_json{{"A", r.A},
                        {"B", r.B},
                        {"eps", r.eps},
                        {"s", r.s},
                        {"gamma", r.gamma},
                        {"kappa", r.options.kappa},
                        {"c_sobolev", r.options.c_sobolev},
                        {"pattern", to_json(r.pattern)},
                        {"terms", terms},
                        {"nine_sum", r.nine_sum},
                        {"total_direct", r.total_direct},
                        {"identity_rel_err", r.identity_rel_err},
                        {"energy_s", r.energy_s},
                        {"energy_1mg", r.energy_1mg},
                        {"big_c", r.big_c},
                        {"norm_mu", r.norm_mu},
                        {"norm_low", r.norm_low},
                        {"norm_mid", r.norm_mid},
                        {"norm_high", r.norm_high},
                        {"typeI_factor_low", r.typeI_factor_low},
                        {"typeI_factor_mid", r.typeI_factor_mid},
                        {"main", to_json(r.main)}};
}

// Table-1 layout: 3x3 grid of measured values against their bounds
inline std::string ledger_csv(const DecompositionReport& r) {
    static const char* names[3] = {"low", "mid", "high"};
    std::ostringstream os;
    os << "row,col,value,bound_kind,bound_measured,bound_asymptotic,ratio_measured\n";
    os << std::setprecision(17);
    for (const TermEntry& e : r.terms) {
        os << names[e.row] << "," << names[e.col] << "," << e.value << "," << e.bound_kind << ","
           << e.bound_measured << "," << e.bound_asymptotic << "," << e.ratio_measured << "\n";
    }
    return os.str();
}

inline ordered_json to_json(const Certificate& c) {
    return ordered_json{{"verdict", c.verdict == Verdict::positive ? "POSITIVE" : "INCONCLUSIVE"},
                        {"eps_schedule", c.eps_schedule},
                        {"margins", c.margins},
                        {"config_values", c.config_values},
                        {"final_margin", c.final_margin},
                        {"stable", c.stable},
                        {"degenerate_t", c.degenerate_t}};
}

inline ordered_json to_json(const PatternWitness& w) {
    return ordered_json{{"x", w.x}, {"t", w.t}, {"points", w.points}, {"distinct", w.distinct}};
}

inline std::string spectrum_csv(const SpectralProfile& sp) {
    std::ostringstream os;
    os << "xi,re,im,abs\n" << std::setprecision(17);
    for (std::size_t k = 0; k < sp.values.size(); ++k) {
        os << sp.freq(k) << "," << sp.values[k].real() << "," << sp.values[k].imag() << ","
           << std::abs(sp.values[k]) << "\n";
    }
    return os.str();
}

inline std::string values_csv(const std::string& header, const std::vector<double>& v) {
    std::ostringstream os;
    os << header << "\n" << std::setprecision(17);
    for (double x : v) os << x << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Bundle files and the stability hash
// ---------------------------------------------------------------------------

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrorKind::parameter, "cannot open for writing: " + path.string());
    os << bytes;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(ErrorKind::parameter, "cannot open for reading: " + path.string());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

inline std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace quadpat
