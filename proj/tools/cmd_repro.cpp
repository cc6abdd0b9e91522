#include <filesystem>

#include "cli_common.hpp"
#include "notchwave/coexistence.hpp"
#include "notchwave/design_projection.hpp"
#include "notchwave/quantizer.hpp"

namespace notchwave::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kFs = 20e6;
constexpr std::uint64_t kSeed = 1;

std::vector<StopBand> three_band_plan(double depth_db) {
    const double e = std::pow(10.0, -depth_db / 10.0);
    return {StopBand::from_hz(-4e6, -2e6, kFs, e),
            StopBand::from_hz(4e6, 5e6, kFs, e),
            StopBand::from_hz(8e6, 9e6, kFs, e)};
}

ComplexSequence qcqp_design(std::size_t n, std::size_t block, std::size_t overlap,
                            const std::vector<StopBand>& bands,
                            const ComplexSequence& reference) {
    QcqpDesignSpec spec;
    spec.n_total = n;
    spec.block_len = block;
    spec.overlap = overlap;
    spec.bands = bands;
    spec.reference = reference;
    return design_blockwise(spec).waveform;
}

int repro_fig2(const std::string& dir) {
    const std::size_t n = 10000;
    const auto bands = three_band_plan(60.0);
    const ComplexSequence ref = generate_reference(n, kSeed);
    const ComplexSequence proj = project_notch(ref, bands);
    const ComplexSequence q1000 = qcqp_design(n, 1000, 500, bands, ref);
    const ComplexSequence q5000 = qcqp_design(n, 5000, 2500, bands, ref);

    WelchParams wp;
    wp.normalization = PsdNormalization::kExternalMean;
    PsdEstimate ref_abs = welch_psd(ref, {.normalization = PsdNormalization::kOwnMean});
    wp.external_mean = ref_abs.reference_mean;

    std::vector<std::pair<std::string, PsdEstimate>> curves = {
        {"ref", welch_psd(ref, wp)},
        {"proj", welch_psd(proj, wp)},
        {"qcqp_1000", welch_psd(q1000, wp)},
        {"qcqp_5000", welch_psd(q5000, wp)}};
    write_psd_csv(dir + "/fig2_psd.csv", curves, kFs);

    std::vector<std::pair<std::string, std::vector<BandDepth>>> depths;
    for (std::size_t i = 1; i < curves.size(); ++i)
        depths.emplace_back(curves[i].first, notch_depth(curves[i].second, bands, 5));
    write_depth_csv(dir + "/fig2_depth.csv", depths, kFs);

    for (const auto& [name, d] : depths)
        for (const BandDepth& bd : d)
            std::printf("%-10s band[%g,%g) mean=%.1f dB min=%.1f dB\n", name.c_str(),
                        bd.band.f_lo, bd.band.f_hi, bd.depth_mean_db, bd.depth_min_db);
    return 0;
}

int repro_fig4(const std::string& dir) {
    const std::size_t n = 10000;
    const auto bands = three_band_plan(60.0);
    const ComplexSequence ref = generate_reference(n, kSeed);
    const std::vector<std::pair<std::string, ComplexSequence>> wfs = {
        {"ref", ref},
        {"proj", project_notch(ref, bands)},
        {"qcqp_1000", qcqp_design(n, 1000, 500, bands, ref)},
        {"qcqp_5000", qcqp_design(n, 5000, 2500, bands, ref)}};

    std::vector<std::pair<std::string, AcfResult>> acfs;
    CsvWriter psll(dir + "/fig4_psll.csv");
    psll.row({"curve", "pslr_db_full", "pslr_db_lag20", "pslr_db_segment200"});
    for (const auto& [name, wf] : wfs) {
        acfs.emplace_back(name, autocorrelation(wf, 100));
        const double full = autocorrelation(wf).pslr_db;
        const double zoom = autocorrelation(wf, 20).pslr_db;
        const ComplexSequence seg(wf.begin() + 4000, wf.begin() + 4200);
        const double seg_psll = autocorrelation(seg, 20).pslr_db;
        psll.row({name, fmt_num(full, 6), fmt_num(zoom, 6), fmt_num(seg_psll, 6)});
        std::printf("%-10s PSLL(full)=%.2f dB  PSLL(lag<=20)=%.2f dB\n", name.c_str(),
                    full, zoom);
    }
    write_acf_csv(dir + "/fig4_acf.csv", acfs);
    return 0;
}

int repro_fig5(const std::string& dir) {
    const std::size_t n = 10000;
    const ComplexSequence ref = generate_reference(n, kSeed);
    std::vector<std::pair<std::string, AcfResult>> acfs = {
        {"ref", autocorrelation(ref, 100)}};
    CsvWriter psll(dir + "/fig5_psll.csv");
    psll.row({"depth_db", "pslr_db_lag20"});
    for (double depth : {5.0, 10.0, 20.0, 30.0, 60.0}) {
        const auto bands = three_band_plan(depth);
        const ComplexSequence wf = qcqp_design(n, 1000, 500, bands, ref);
        const std::string name = "depth_" + std::to_string(static_cast<int>(depth));
        acfs.emplace_back(name, autocorrelation(wf, 100));
        const double z = autocorrelation(wf, 20).pslr_db;
        psll.row({fmt_num(depth, 4), fmt_num(z, 6)});
        std::printf("depth %2.0f dB: PSLL(lag<=20) = %.2f dB\n", depth, z);
    }
    write_acf_csv(dir + "/fig5_acf.csv", acfs);
    return 0;
}

int repro_fig6(const std::string& dir) {
    const std::size_t n = 100000;
    const auto bands = three_band_plan(60.0);
    const ComplexSequence proj = project_notch(generate_reference(n, kSeed), bands);
    const ComplexSequence fs_wave = full_scale_normalize(proj).first;

    std::vector<std::pair<std::string, PsdEstimate>> curves = {
        {"unquantized", welch_psd(fs_wave)}};
    CsvWriter depth(dir + "/fig6_depth.csv");
    depth.row({"bits", "mean_depth_db", "min_depth_db"});
    for (int b : {8, 10, 12, 14, 16}) {
        const auto nd = notch_degradation(fs_wave, bands, {b}, {}, 5).front();
        curves.emplace_back("b" + std::to_string(b), welch_psd(quantize(fs_wave, b)));
        depth.row({std::to_string(b), fmt_num(nd.mean_depth_db, 6),
                   fmt_num(nd.min_depth_db, 6)});
        std::printf("b=%2d: notch depth mean %.1f dB\n", b, nd.mean_depth_db);
    }
    write_psd_csv(dir + "/fig6_psd.csv", curves, kFs);
    return 0;
}

int repro_table1(const std::string& dir) {
    const std::size_t n = 100000;
    const auto bands = three_band_plan(60.0);
    const ComplexSequence proj = project_notch(generate_reference(n, kSeed), bands);
    const ComplexSequence fs_wave = full_scale_normalize(proj).first;
    CsvWriter csv(dir + "/table1_energy_diff.csv");
    csv.row({"bits", "energy_diff", "theory_2N_var"});
    for (int b : {8, 10, 12, 14, 16}) {
        const QuantizationReport rep = quantization_report(fs_wave, b);
        const double theory = 2.0 * static_cast<double>(n) * rep.theory_variance;
        csv.row({std::to_string(b), fmt_num(rep.energy_diff, 8), fmt_num(theory, 8)});
        std::printf("b=%2d: ||c - c_q||^2 = %.6g (2N*var = %.6g)\n", b,
                    rep.energy_diff, theory);
    }
    return 0;
}

int repro_table2(const std::string& dir) {
    const std::size_t n = 100000;
    const auto bands = three_band_plan(60.0);
    const ComplexSequence proj = project_notch(generate_reference(n, kSeed), bands);
    const ComplexSequence fs_wave = full_scale_normalize(proj).first;
    CsvWriter csv(dir + "/table2_variance.csv");
    csv.row({"bits", "estimated_variance", "theory_variance"});
    for (int b : {8, 10, 12, 14, 16}) {
        const QuantizationReport rep = quantization_report(fs_wave, b);
        csv.row({std::to_string(b), fmt_num(rep.est_variance_re, 5),
                 fmt_num(rep.theory_variance, 5)});
        std::printf("b=%2d: est %.4e  theory %.4e\n", b, rep.est_variance_re,
                    rep.theory_variance);
    }
    return 0;
}

int repro_fig11(const std::string& dir) {
    const std::size_t n = 1000;
    const std::vector<StopBand> bands = {
        StopBand::from_hz(-8e6, -4e6, kFs, std::pow(10.0, -8.0)),
        StopBand::from_hz(4e6, 6e6, kFs, std::pow(10.0, -1.0))};
    const ComplexSequence ref = generate_reference(n, kSeed);
    const ComplexSequence one_block = qcqp_design(n, 1000, 0, bands, ref);
    const ComplexSequence ten_blocks = qcqp_design(n, 100, 0, bands, ref);

    WelchParams wp;
    wp.segment_len = 250;
    std::vector<std::pair<std::string, PsdEstimate>> curves = {
        {"L1", welch_psd(one_block, wp)}, {"L10", welch_psd(ten_blocks, wp)}};
    write_psd_csv(dir + "/fig11_psd.csv", curves, kFs);
    std::vector<std::pair<std::string, std::vector<BandDepth>>> depths;
    for (const auto& [name, psd] : curves)
        depths.emplace_back(name, notch_depth(psd, bands, 4));
    write_depth_csv(dir + "/fig11_depth.csv", depths, kFs);
    for (const auto& [name, d] : depths)
        std::printf("%-4s deep-band min depth = %.1f dB\n", name.c_str(),
                    d.front().depth_min_db);
    return 0;
}

int repro_table3(const std::string& dir, int trials, int threads) {
    ScenarioConfig cfg;
    if (trials > 0) cfg.trials = trials;
    if (threads > 0) cfg.threads = threads;
    return run_simulate("", dir, cfg.trials, cfg.threads);
}

}  // namespace

int run_repro(const std::string& which, const std::string& out_dir, int trials,
              int threads) {
    fs::create_directories(out_dir);
    if (which == "fig2") return repro_fig2(out_dir);
    if (which == "fig4") return repro_fig4(out_dir);
    if (which == "fig5") return repro_fig5(out_dir);
    if (which == "fig6") return repro_fig6(out_dir);
    if (which == "table1") return repro_table1(out_dir);
    if (which == "table2") return repro_table2(out_dir);
    if (which == "table3") return repro_table3(out_dir, trials, threads);
    if (which == "fig11") return repro_fig11(out_dir);
    throw ConfigError("unknown repro target: " + which);
}

}  // namespace notchwave::cli
