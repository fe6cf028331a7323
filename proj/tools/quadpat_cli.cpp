// quadpat: pipelines over fractal subsets of [0,1] -- set generation, dyadic
// content, spectral-gap measures, spectra, the nine-term decomposition
// ledger, positivity certificates, and brute-force pattern search.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadpat/io.hpp"
#include "quadpat/pipeline.hpp"

using namespace quadpat;

namespace {

RunConfig load_config(const std::string& path) {
    if (path.empty()) return RunConfig{};
    return config_from_json(ordered_json::parse(read_file(path)));
}

DyadicSet load_set(const std::string& path) {
    return dyadic_set_from_json(ordered_json::parse(read_file(path)));
}

void emit(const ordered_json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_file(out, j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadpat: quadratic-pattern laboratory on fractal subsets of [0,1]"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "emit a benchmark set as dyadic JSON");
    std::string g_kind = "percolation", g_out;
    int g_depth = 10, g_bits = 2;
    double g_p = 0.9;
    std::uint64_t g_seed = 1;
    std::vector<int> g_keep{0, 3};
    bool g_text = false;
    gen->add_option("--kind", g_kind, "full | cantor | percolation");
    gen->add_option("--depth", g_depth, "resolution (cantor: iterations)");
    gen->add_option("--p", g_p, "percolation keep probability");
    gen->add_option("--seed", g_seed, "percolation seed");
    gen->add_option("--branch-bits", g_bits, "cantor branching bits");
    gen->add_option("--keep", g_keep, "cantor keep pattern")->delimiter(',');
    gen->add_option("--out", g_out, "output file (default stdout)");
    gen->add_flag("--text", g_text, "also print the run-length form");

    // ---- content -----------------------------------------------------------
    auto* cont = app.add_subcommand("content", "dyadic Hausdorff content and dense cubes");
    std::string c_set;
    double c_beta = 0.5;
    double c_delta = -1.0;
    cont->add_option("--set", c_set, "set JSON file")->required();
    cont->add_option("--beta", c_beta, "content exponent");
    cont->add_option("--dense-delta", c_delta, "also locate the coarsest (1-delta)-dense cube");

    // ---- measure -----------------------------------------------------------
    auto* meas = app.add_subcommand("measure", "spectral-gap measure construction");
    std::string m_config, m_out_measure, m_out_report;
    meas->add_option("--config", m_config, "RunConfig JSON");
    meas->add_option("--out-measure", m_out_measure, "measure JSON output");
    meas->add_option("--out-report", m_out_report, "construction report output");

    // ---- spectrum ----------------------------------------------------------
    auto* spcv = app.add_subcommand("spectrum", "Fourier transform of a grid measure");
    std::string s_measure, s_out;
    double s_max = 32.0, s_step = 0.125;
    spcv->add_option("--measure", s_measure, "measure JSON file")->required();
    spcv->add_option("--max-freq", s_max, "symmetric frequency bound");
    spcv->add_option("--step", s_step, "frequency step");
    spcv->add_option("--out", s_out, "CSV output (default stdout)");

    // ---- decompose ---------------------------------------------------------
    auto* dec = app.add_subcommand("decompose", "nine-term ledger at one epsilon");
    std::string d_config, d_out;
    double d_eps = 0.0;
    dec->add_option("--config", d_config, "RunConfig JSON")->required();
    dec->add_option("--eps", d_eps, "mollification scale (default: B^-1/8)");
    dec->add_option("--out", d_out, "output directory");

    // ---- certify -----------------------------------------------------------
    auto* cert = app.add_subcommand("certify", "full pipeline: measure, ledger, certificate, witness");
    std::string f_config, f_out;
    cert->add_option("--config", f_config, "RunConfig JSON")->required();
    cert->add_option("--out", f_out, "bundle output directory (overrides config)");

    // ---- search ------------------------------------------------------------
    auto* sea = app.add_subcommand("search", "brute-force pattern witness");
    std::string w_set;
    double w_p = 1.0, w_q = 0.0;
    int w_l = 5;
    bool w_distinct = false;
    sea->add_option("--set", w_set, "set JSON file")->required();
    sea->add_option("--p", w_p, "quadratic coefficient");
    sea->add_option("--q", w_q, "linear coefficient");
    sea->add_option("--l", w_l, "scale index");
    sea->add_flag("--distinct", w_distinct, "require three distinct points");

    // ---- sweep -------------------------------------------------------------
    auto* sw = app.add_subcommand("sweep", "one-axis parameter sweep");
    std::string x_config, x_axis = "l", x_out;
    std::vector<double> x_values;
    sw->add_option("--config", x_config, "RunConfig JSON")->required();
    sw->add_option("--axis", x_axis, "l | p | q | beta | A | eps | seed");
    sw->add_option("--values", x_values, "swept values")->delimiter(',');
    sw->add_option("--out", x_out, "CSV output (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            SetSpec spec_out;
            spec_out.kind = g_kind;
            spec_out.depth = g_depth;
            spec_out.branch_bits = g_bits;
            spec_out.keep = g_keep;
            spec_out.p = g_p;
            spec_out.seed = g_seed;
            const DyadicSet s = spec_out.build();
            emit(to_json(s), g_out);
            if (g_text) std::cout << run_length_text(s) << "\n";
        } else if (*cont) {
            const DyadicSet s = load_set(c_set);
            ordered_json j{{"beta", c_beta}, {"content", content_upper(s, c_beta)}};
            if (c_delta > 0.0) {
                const DyadicInterval q = find_dense_cube(s, c_beta, c_delta);
                j["dense_cube"] =
                    ordered_json{{"level", q.level},
                                 {"index", q.index},
                                 {"content_within", content_upper(s, c_beta, q)},
                                 {"target", (1.0 - c_delta) * std::pow(q.length(), c_beta)}};
            }
            std::cout << j.dump(2) << "\n";
        } else if (*meas) {
            const RunConfig c = load_config(m_config);
            c.validate();
            SpectralGapOptions opts;
            opts.level_override = c.level_override;
            opts.precondition =
                c.precondition == "per_child" ? GapPrecondition::per_child : GapPrecondition::strict;
            auto [mu, rep] = spectral_gap_measure(c.set.build(), c.A, c.B, c.beta, opts);
            if (c.compute_gap) {
                const GapEstimate g = gap_integral(mu, c.A, c.B);
                rep.gap_integral = g.value;
                rep.gap_error_bound = g.error_bound;
            }
            if (!m_out_measure.empty()) write_file(m_out_measure, to_json(mu).dump() + "\n");
            emit(to_json(rep), m_out_report);
        } else if (*spcv) {
            const GridMeasure mu = grid_measure_from_json(ordered_json::parse(read_file(s_measure)));
            const SpectralProfile sp = spectrum(mu, s_max, s_step);
            if (s_out.empty())
                std::cout << spectrum_csv(sp);
            else
                write_file(s_out, spectrum_csv(sp));
        } else if (*dec) {
            const RunConfig c = load_config(d_config);
            c.validate();
            SpectralGapOptions opts;
            opts.level_override = c.level_override;
            opts.precondition =
                c.precondition == "per_child" ? GapPrecondition::per_child : GapPrecondition::strict;
            auto [mu, rep] = spectral_gap_measure(c.set.build(), c.A, c.B, c.beta, opts);
            const double eps = d_eps > 0.0 ? d_eps : 0.125 / c.B;
            DecomposeOptions dopt;
            dopt.kappa = c.kappa;
            dopt.c_sobolev = c.c_sobolev;
            const DecompositionReport r = decompose(mu, eps, c.A, c.B, c.pattern, c.s, c.gamma, dopt);
            if (d_out.empty()) {
                std::cout << to_json(r).dump(2) << "\n" << ledger_csv(r);
            } else {
                write_file(std::filesystem::path(d_out) / "decomposition.json",
                           to_json(r).dump(2) + "\n");
                write_file(std::filesystem::path(d_out) / "ledger.csv", ledger_csv(r));
            }
        } else if (*cert) {
            RunConfig c = load_config(f_config);
            if (!f_out.empty()) c.output_dir = f_out;
            const ReportBundle b = run_pipeline(c);
            ordered_json j{{"bundle_hash", b.bundle_hash},
                           {"verdict", b.certificate.verdict == Verdict::positive ? "POSITIVE"
                                                                                  : "INCONCLUSIVE"},
                           {"final_margin", b.certificate.final_margin},
                           {"witness_found", b.witness.has_value()}};
            if (b.witness) j["witness"] = to_json(*b.witness);
            if (b.construction.gap_integral) j["gap_integral"] = *b.construction.gap_integral;
            std::cout << j.dump(2) << "\n";
        } else if (*sea) {
            const DyadicSet s = load_set(w_set);
            const auto w = search_pattern(s, {w_p, w_q, w_l}, w_distinct);
            std::cout << (w ? to_json(*w) : ordered_json{{"found", false}}).dump(2) << "\n";
        } else if (*sw) {
            const RunConfig c = load_config(x_config);
            const auto rows = x_values.empty() ? std::vector<SweepRow>{} : sweep(c, x_axis, x_values);
            if (x_out.empty())
                std::cout << sweep_csv(x_axis, rows);
            else
                write_file(x_out, sweep_csv(x_axis, rows));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
