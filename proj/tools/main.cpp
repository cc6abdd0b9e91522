#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "cli_common.hpp"
#include "notchwave/design_config.hpp"
#include "notchwave/design_qcqp.hpp"

using namespace notchwave;

int main(int argc, char** argv) {
    CLI::App app{"notchwave: noise-like waveforms with controllable spectral notches"};
    app.require_subcommand(1);

    std::string config_path, out_path, diagnostics_path;
    auto* design = app.add_subcommand("design", "synthesize a notched waveform");
    design->add_option("--config", config_path, "design config JSON")->required();
    design->add_option("--out", out_path, "output waveform file (NWF1)")->required();
    design->add_option("--diagnostics", diagnostics_path,
                       "per-window diagnostics CSV (qcqp)");

    cli::AnalyzeOptions an;
    auto* analyze = app.add_subcommand("analyze", "PSD / ACF / notch-depth reports");
    analyze->add_option("--input", an.input, "waveform file")->required();
    analyze->add_option("--out-prefix", an.out_prefix, "output file prefix");
    analyze->add_option("--segment-len", an.segment_len, "Welch segment length");
    analyze->add_option("--overlap", an.overlap, "Welch overlap fraction");
    analyze->add_option("--max-lag", an.max_lag, "ACF lag cap (0 = full)");
    analyze->add_option("--guard", an.guard_bins, "notch edge guard bins");
    analyze->add_flag("--spectrogram", an.emit_spectrogram, "also emit a spectrogram");
    analyze->add_option("--spectrogram-segment", an.spectrogram_segment,
                        "spectrogram segment length");

    cli::QuantizeOptions qo;
    auto* quant = app.add_subcommand("quantize", "DAC quantization error reports");
    quant->add_option("--input", qo.input, "waveform file")->required();
    quant->add_option("--bits", qo.bits, "bit depths, e.g. --bits 8 10 12")
        ->required()
        ->expected(-1);
    quant->add_option("--report", qo.report_path, "error statistics CSV");
    quant->add_option("--hist-prefix", qo.hist_prefix, "histogram CSV prefix");
    quant->add_option("--depth", qo.depth_path, "notch depth vs bits CSV");
    quant->add_option("--guard", qo.guard_bins, "notch edge guard bins");

    std::string scenario_path, out_dir = ".";
    int trials_override = 0, threads = 0;
    auto* sim = app.add_subcommand("simulate", "jammer/comm/radar coexistence study");
    sim->add_option("--scenario", scenario_path, "scenario config JSON");
    sim->add_option("--out-dir", out_dir, "output directory");
    sim->add_option("--trials", trials_override, "override snapshot count");
    sim->add_option("--threads", threads, "worker threads");

    std::string which, repro_dir = ".";
    int repro_trials = 0, repro_threads = 0;
    auto* repro = app.add_subcommand("repro", "canned desk-scale studies");
    repro
        ->add_option("--which", which,
                     "fig2|fig4|fig5|fig6|table1|table2|table3|fig11")
        ->required();
    repro->add_option("--out-dir", repro_dir, "output directory");
    repro->add_option("--trials", repro_trials, "snapshot count for table3");
    repro->add_option("--threads", repro_threads, "worker threads for table3");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed())
            return cli::run_design(config_path, out_path, diagnostics_path);
        if (analyze->parsed()) return cli::run_analyze(an);
        if (quant->parsed()) return cli::run_quantize(qo);
        if (sim->parsed())
            return cli::run_simulate(scenario_path, out_dir, trials_override, threads);
        if (repro->parsed())
            return cli::run_repro(which, repro_dir, repro_trials, repro_threads);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "{\"error\":\"config\",\"detail\":\"%s\"}\n", e.what());
        return 2;
    } catch (const InfeasibleConstraint& e) {
        std::fprintf(stderr, "{\"error\":\"infeasible\",\"detail\":\"%s\"}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "{\"error\":\"runtime\",\"detail\":\"%s\"}\n", e.what());
        return 1;
    }
    return 0;
}
