#include "cli_common.hpp"
#include "notchwave/quantizer.hpp"
#include "notchwave/waveform_io.hpp"

namespace notchwave::cli {

int run_quantize(const QuantizeOptions& opt) {
    if (opt.bits.empty()) throw ConfigError("quantize: no bit depths given");
    const WaveformFile wf = read_waveform(opt.input);
    ComplexSequence c = wf.samples;
    if (!wf.full_scale) c = full_scale_normalize(c).first;

    CsvWriter csv(opt.report_path);
    csv.row({"bits", "step", "energy_diff", "est_var_re", "est_var_im", "theory_var"});
    for (int b : opt.bits) {
        const QuantizationReport rep = quantization_report(c, b);
        csv.row({std::to_string(rep.bits), fmt_num(rep.step, 12),
                 fmt_num(rep.energy_diff, 8), fmt_num(rep.est_variance_re, 8),
                 fmt_num(rep.est_variance_im, 8), fmt_num(rep.theory_variance, 5)});
        if (!opt.hist_prefix.empty()) {
            CsvWriter hist(opt.hist_prefix + "_" + std::to_string(b) + ".csv");
            hist.row({"bin_lo", "bin_hi", "count"});
            for (std::size_t i = 0; i < rep.hist_counts.size(); ++i)
                hist.row({fmt_num(rep.hist_edges[i], 8), fmt_num(rep.hist_edges[i + 1], 8),
                          std::to_string(rep.hist_counts[i])});
        }
    }

    if (!opt.depth_path.empty()) {
        const std::vector<StopBand> bands =
            bands_from_metadata(wf.metadata_json, wf.sample_rate);
        if (bands.empty())
            throw ConfigError("quantize: --depth needs band metadata in the waveform");
        const auto table = notch_degradation(c, bands, opt.bits, {}, opt.guard_bins);
        CsvWriter depth(opt.depth_path);
        depth.row({"bits", "band_lo_norm", "band_hi_norm", "depth_mean_db",
                   "depth_min_db"});
        for (const NotchDegradation& nd : table)
            for (const BandDepth& d : nd.per_band)
                depth.row({std::to_string(nd.bits), fmt_num(d.band.f_lo, 8),
                           fmt_num(d.band.f_hi, 8), fmt_num(d.depth_mean_db, 8),
                           fmt_num(d.depth_min_db, 8)});
    }
    return 0;
}

}  // namespace notchwave::cli
