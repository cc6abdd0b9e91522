#include "cli_common.hpp"
#include "notchwave/waveform_io.hpp"

namespace notchwave::cli {

void write_psd_csv(const std::string& path,
                   const std::vector<std::pair<std::string, PsdEstimate>>& curves,
                   double sample_rate) {
    if (curves.empty()) throw std::runtime_error("write_psd_csv: no curves");
    CsvWriter csv(path);
    std::vector<std::string> head = {"freq_hz", "freq_norm"};
    for (const auto& [name, psd] : curves) head.push_back(name + "_db");
    csv.row(head);
    const PsdEstimate& first = curves.front().second;
    const std::vector<double> hz = first.freq_hz(sample_rate);
    for (std::size_t k = 0; k < first.freq_norm.size(); ++k) {
        std::vector<std::string> r = {fmt_num(hz[k]), fmt_num(first.freq_norm[k])};
        for (const auto& [name, psd] : curves) r.push_back(fmt_num(psd.power_db[k], 8));
        csv.row(r);
    }
}

void write_acf_csv(const std::string& path,
                   const std::vector<std::pair<std::string, AcfResult>>& curves) {
    if (curves.empty()) throw std::runtime_error("write_acf_csv: no curves");
    CsvWriter csv(path);
    std::vector<std::string> head = {"lag"};
    for (const auto& [name, acf] : curves) head.push_back(name + "_db");
    csv.row(head);
    const std::size_t n = curves.front().second.lags.size();
    for (std::size_t l = 0; l < n; ++l) {
        std::vector<std::string> r = {std::to_string(curves.front().second.lags[l])};
        for (const auto& [name, acf] : curves)
            r.push_back(fmt_num(acf.magnitude_db[l], 8));
        csv.row(r);
    }
}

void write_depth_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<BandDepth>>>& rows,
    double sample_rate) {
    CsvWriter csv(path);
    csv.row({"curve", "band_lo_hz", "band_hi_hz", "depth_mean_db", "depth_min_db",
             "edge_lo_db", "edge_hi_db"});
    auto to_hz = [&](double f_norm) {
        double f = f_norm * sample_rate;
        if (f > sample_rate / 2) f -= sample_rate;
        return f;
    };
    for (const auto& [name, depths] : rows)
        for (const BandDepth& d : depths)
            csv.row({name, fmt_num(to_hz(d.band.f_lo)), fmt_num(to_hz(d.band.f_hi)),
                     fmt_num(d.depth_mean_db, 8), fmt_num(d.depth_min_db, 8),
                     fmt_num(d.edge_lo_db, 8), fmt_num(d.edge_hi_db, 8)});
}

int run_analyze(const AnalyzeOptions& opt) {
    const WaveformFile wf = read_waveform(opt.input);

    WelchParams wp;
    wp.segment_len = opt.segment_len;
    wp.overlap_fraction = opt.overlap;
    const PsdEstimate psd = welch_psd(wf.samples, wp);
    write_psd_csv(opt.out_prefix + "_psd.csv", {{"psd", psd}}, wf.sample_rate);

    const AcfResult acf = autocorrelation(
        wf.samples,
        opt.max_lag ? std::optional<std::size_t>(opt.max_lag) : std::nullopt);
    write_acf_csv(opt.out_prefix + "_acf.csv", {{"acf", acf}});
    std::printf("pslr_db=%s\n", fmt_num(acf.pslr_db, 6).c_str());

    const std::vector<StopBand> bands =
        bands_from_metadata(wf.metadata_json, wf.sample_rate);
    if (!bands.empty()) {
        write_depth_csv(opt.out_prefix + "_depth.csv",
                        {{"input", notch_depth(psd, bands, opt.guard_bins)}},
                        wf.sample_rate);
    }

    if (opt.emit_spectrogram) {
        const Spectrogram sg = spectrogram(wf.samples, opt.spectrogram_segment);
        CsvWriter csv(opt.out_prefix + "_spectrogram.csv");
        std::vector<std::string> head = {"segment_start"};
        for (std::size_t k = 0; k < sg.n_bins; ++k)
            head.push_back("f" + fmt_num(sg.freq_norm[k], 6));
        csv.row(head);
        for (std::size_t s = 0; s < sg.n_segments; ++s) {
            std::vector<std::string> r = {fmt_num(sg.segment_start[s])};
            for (std::size_t k = 0; k < sg.n_bins; ++k)
                r.push_back(fmt_num(sg.power_db[s][k], 6));
            csv.row(r);
        }
    }
    return 0;
}

}  // namespace notchwave::cli
