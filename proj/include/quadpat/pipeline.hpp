#pragma once

// Orchestration: reproducible pipelines from set generation through the
// spectral-gap construction, decomposition ledger and certificate, down to
// the brute-force witness; plus one-axis parameter sweeps.
//
// Stage order mirrors the reduction: dense cube -> rescale -> measure ->
// decompose -> certificate -> witness.  Every stage failure is reported with
// the stage name and the violated precondition.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "quadpat/integral.hpp"
#include "quadpat/io.hpp"
#include "quadpat/patterns.hpp"
#include "quadpat/setgen.hpp"

namespace quadpat {

struct SetSpec {
    std::string kind = "full";  // full | cantor | percolation
    int depth = 10;             // full/percolation resolution; cantor iterations
    int branch_bits = 2;
    std::vector<int> keep{0, 3};
    double p = 0.9;
    std::uint64_t seed = 1;

    DyadicSet build() const {
        if (kind == "full") return DyadicSet::full(depth);
        if (kind == "cantor") return cantor({branch_bits, keep, depth});
        if (kind == "percolation") return percolation(p, depth, seed);
        fail(ErrorKind::parameter, "SetSpec: unknown kind '" + kind + "'");
    }
};

struct RunConfig {
    SetSpec set;
    double A = 4.0, B = 8.0;
    std::optional<int> level_override;  // (T, delta) override of the A,B chain
    std::string precondition = "strict";
    double beta = 0.95, s = 0.9, gamma = 0.05;
    QuadraticPattern pattern{1.0, 0.0, 5};
    std::vector<double> eps_schedule;  // empty: B^-1 / {2,4,8}
    double kappa = 1.0, c_sobolev = 1.0;
    std::optional<double> dense_cube_delta;  // enables the dense-cube stage
    bool compute_gap = true;
    bool require_distinct = false;
    std::string output_dir;

    void validate() const {
        pattern.validate();
        if (!(0.0 < A && A < B)) fail(ErrorKind::parameter, "config: need 0 < A < B");
        if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorKind::parameter, "config: beta in (0,1]");
        if (!(s > 0.0 && s < 1.0 && gamma > 0.0 && gamma < 1.0))
            fail(ErrorKind::parameter, "config: s, gamma in (0,1)");
        if (!(s > 1.0 - gamma))
            fail(ErrorKind::parameter, "config: the high-term bound needs s > 1 - gamma");
        for (double e : eps_schedule)
            if (!(e > 0.0 && e < 1.0 / B))
                fail(ErrorKind::parameter, "config: every eps must satisfy eps < B^-1");
    }
};

inline RunConfig config_from_json(const ordered_json& j) {
    RunConfig c;
    if (j.contains("set")) {
        const auto& js = j.at("set");
        c.set.kind = js.value("kind", c.set.kind);
        c.set.depth = js.value("depth", c.set.depth);
        c.set.branch_bits = js.value("branch_bits", c.set.branch_bits);
        if (js.contains("keep")) c.set.keep = js.at("keep").get<std::vector<int>>();
        c.set.p = js.value("p", c.set.p);
        c.set.seed = js.value("seed", c.set.seed);
    }
    c.A = j.value("A", c.A);
    c.B = j.value("B", c.B);
    if (j.contains("T_override")) c.level_override = j.at("T_override").get<int>();
    c.precondition = j.value("precondition", c.precondition);
    c.beta = j.value("beta", c.beta);
    c.s = j.value("s", c.s);
    c.gamma = j.value("gamma", c.gamma);
    if (j.contains("pattern")) {
        const auto& jp = j.at("pattern");
        c.pattern.p = jp.value("p", c.pattern.p);
        c.pattern.q = jp.value("q", c.pattern.q);
        c.pattern.l = jp.value("l", c.pattern.l);
    }
    if (j.contains("eps_schedule")) c.eps_schedule = j.at("eps_schedule").get<std::vector<double>>();
    c.kappa = j.value("kappa", c.kappa);
    c.c_sobolev = j.value("c_sobolev", c.c_sobolev);
    if (j.contains("dense_cube_delta")) c.dense_cube_delta = j.at("dense_cube_delta").get<double>();
    c.compute_gap = j.value("compute_gap", c.compute_gap);
    c.require_distinct = j.value("require_distinct", c.require_distinct);
    c.output_dir = j.value("output_dir", c.output_dir);
    return c;
}

inline ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["set"] = ordered_json{{"kind", c.set.kind},     {"depth", c.set.depth},
                            {"branch_bits", c.set.branch_bits}, {"keep", c.set.keep},
                            {"p", c.set.p},           {"seed", c.set.seed}};
    j["A"] = c.A;
    j["B"] = c.B;
    if (c.level_override) j["T_override"] = *c.level_override;
    j["precondition"] = c.precondition;
    j["beta"] = c.beta;
    j["s"] = c.s;
    j["gamma"] = c.gamma;
    j["pattern"] = to_json(c.pattern);
    j["eps_schedule"] = c.eps_schedule.empty()
                            ? std::vector<double>{0.5 / c.B, 0.25 / c.B, 0.125 / c.B}
                            : c.eps_schedule;
    j["kappa"] = c.kappa;
    j["c_sobolev"] = c.c_sobolev;
    if (c.dense_cube_delta) j["dense_cube_delta"] = *c.dense_cube_delta;
    j["compute_gap"] = c.compute_gap;
    j["require_distinct"] = c.require_distinct;
    return j;
}

struct ReportBundle {
    RunConfig config;
    DyadicSet set;                   // after the optional dense-cube rescaling
    std::optional<DyadicInterval> dense_cube;
    ConstructionReport construction;
    GridMeasure measure;
    SpectralProfile profile;
    std::vector<DecompositionReport> decompositions;  // one per eps
    Certificate certificate;
    std::optional<PatternWitness> witness;
    std::uint64_t bundle_hash = 0;
};

namespace detail {

[[noreturn]] inline void stage_fail(const std::string& stage, const Error& e) {
    throw Error(e.kind(), "stage '" + stage + "': " + e.what());
}

}  // namespace detail

inline ReportBundle run_pipeline(const RunConfig& config) {
    config.validate();
    ReportBundle out;
    out.config = config;

    DyadicSet set = config.set.build();
    if (config.dense_cube_delta) {
        try {
            const DyadicInterval q = find_dense_cube(set, config.beta, *config.dense_cube_delta);
            out.dense_cube = q;
            set = rescale(set, q);
        } catch (const Error& e) {
            detail::stage_fail("find_dense_cube", e);
        }
    }
    out.set = set;

    SpectralGapOptions opts;
    opts.level_override = config.level_override;
    opts.precondition = config.precondition == "per_child" ? GapPrecondition::per_child
                                                           : GapPrecondition::strict;
    try {
        auto [mu, rep] = spectral_gap_measure(set, config.A, config.B, config.beta, opts);
        out.measure = std::move(mu);
        out.construction = std::move(rep);
    } catch (const Error& e) {
        detail::stage_fail("spectral_gap_measure", e);
    }

    if (config.compute_gap) {
        try {
            const GapEstimate g = gap_integral(out.measure, config.A, config.B);
            out.construction.gap_integral = g.value;
            out.construction.gap_error_bound = g.error_bound;
        } catch (const Error& e) {
            detail::stage_fail("gap_integral", e);
        }
    }

    try {
        out.profile = spectrum(out.measure, std::max(config.B * config.B + 2.0, 8.0), 0.0625);
    } catch (const Error& e) {
        detail::stage_fail("spectrum", e);
    }

    DecomposeOptions dopt;
    dopt.kappa = config.kappa;
    dopt.c_sobolev = config.c_sobolev;
    std::vector<double> schedule = config.eps_schedule;
    if (schedule.empty()) schedule = {0.5 / config.B, 0.25 / config.B, 0.125 / config.B};
    try {
        for (double eps : schedule)
            out.decompositions.push_back(decompose(out.measure, eps, config.A, config.B,
                                                   config.pattern, config.s, config.gamma, dopt));
        out.certificate = positivity_certificate(out.measure, config.A, config.B, config.pattern,
                                                 config.s, config.gamma, schedule, dopt);
    } catch (const Error& e) {
        detail::stage_fail("decompose", e);
    }

    try {
        out.witness = search_pattern(out.set, config.pattern, config.require_distinct);
    } catch (const Error& e) {
        detail::stage_fail("search_pattern", e);
    }

    // bundle files and stability hash
    const ordered_json cfg = to_json(config);
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("config.json", cfg.dump(2) + "\n");
    files.emplace_back("set.json", to_json(out.set).dump(2) + "\n");
    files.emplace_back("construction.json", to_json(out.construction).dump(2) + "\n");
    files.emplace_back("spectrum.csv", spectrum_csv(out.profile));
    for (std::size_t i = 0; i < out.decompositions.size(); ++i) {
        files.emplace_back("decomposition_" + std::to_string(i) + ".json",
                           to_json(out.decompositions[i]).dump(2) + "\n");
        files.emplace_back("ledger_" + std::to_string(i) + ".csv", ledger_csv(out.decompositions[i]));
    }
    files.emplace_back("certificate.json", to_json(out.certificate).dump(2) + "\n");
    files.emplace_back("witness.json",
                       (out.witness ? to_json(*out.witness) : ordered_json{{"found", false}}).dump(2) +
                           "\n");

    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [name, bytes] : files) {
        h = fnv1a(name, h);
        h = fnv1a(bytes, h);
    }
    out.bundle_hash = h;

    if (!config.output_dir.empty()) {
        const std::filesystem::path dir(config.output_dir);
        for (const auto& [name, bytes] : files) write_file(dir / name, bytes);
        ordered_json summary{{"bundle_hash", h},
                             {"verdict", out.certificate.verdict == Verdict::positive
                                             ? "POSITIVE"
                                             : "INCONCLUSIVE"},
                             {"witness_found", out.witness.has_value()}};
        write_file(dir / "summary.json", summary.dump(2) + "\n");
    }
    return out;
}

// ---------------------------------------------------------------------------
// One-axis sweeps
// ---------------------------------------------------------------------------

struct SweepRow {
    double value = 0.0;
    std::string verdict;
    double final_margin = 0.0;
    double main_term = 0.0;
    double remainder_sum = 0.0;
    bool witness_found = false;
    double trilinear_ratio = 0.0;
};

inline RunConfig apply_axis(RunConfig c, const std::string& axis, double v) {
    if (axis == "l")
        c.pattern.l = (int)std::llround(v);
    else if (axis == "p")
        c.pattern.p = v;
    else if (axis == "q")
        c.pattern.q = v;
    else if (axis == "beta")
        c.beta = v;
    else if (axis == "A")
        c.A = v;
    else if (axis == "eps")
        c.eps_schedule = {v};
    else if (axis == "seed")
        c.set.seed = (std::uint64_t)std::llround(v);
    else
        fail(ErrorKind::parameter, "sweep: unknown axis '" + axis + "'");
    return c;
}

inline std::vector<SweepRow> sweep(const RunConfig& base, const std::string& axis,
                                   const std::vector<double>& values) {
    std::vector<SweepRow> rows;
    for (double v : values) {
        const RunConfig c = apply_axis(base, axis, v);
        ReportBundle b = run_pipeline(c);
        SweepRow row;
        row.value = v;
        row.verdict = b.certificate.verdict == Verdict::positive ? "POSITIVE" : "INCONCLUSIVE";
        row.final_margin = b.certificate.final_margin;
        row.main_term = b.decompositions.back().term(0, 0).value;
        double rem = 0.0;
        for (int i = 1; i < 9; ++i) rem += std::abs(b.decompositions.back().terms[(std::size_t)i].value);
        row.remainder_sum = rem;
        row.witness_found = b.witness.has_value();
        const double eps = to_json(c)["eps_schedule"].back().get<double>();
        const SampledFunction f = mollify(b.measure, eps, mollify_grid_level(b.measure, eps));
        row.trilinear_ratio = trilinear_estimate(f, f, f, c.pattern, c.gamma).ratio;
        rows.push_back(row);
    }
    return rows;
}

inline std::string sweep_csv(const std::string& axis, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << axis << ",verdict,final_margin,main_term,remainder_sum,witness_found,trilinear_ratio\n";
    os << std::setprecision(17);
    for (const SweepRow& r : rows) {
        os << r.value << "," << r.verdict << "," << r.final_margin << "," << r.main_term << ","
           << r.remainder_sum << "," << (r.witness_found ? 1 : 0) << "," << r.trilinear_ratio << "\n";
    }
    return os.str();
}

}  // namespace quadpat
