#include <json.hpp>

#include "cli_common.hpp"
#include "notchwave/design_projection.hpp"
#include "notchwave/waveform_io.hpp"

namespace notchwave::cli {

using nlohmann::json;

DesignOutput design_from_config(const DesignConfig& cfg) {
    DesignOutput out;
    const std::vector<StopBand> bands = cfg.stop_bands();

    json meta;
    meta["method"] = cfg.method;
    meta["sample_rate_hz"] = cfg.sample_rate;
    meta["num_samples"] = cfg.num_samples;
    meta["seed"] = cfg.seed;
    json jb = json::array();
    for (const auto& b : cfg.bands) {
        json e;
        e["f_lo_hz"] = b.lo_hz;
        e["f_hi_hz"] = b.hi_hz;
        if (b.depth_db)
            e["depth_db"] = *b.depth_db;
        else
            e["depth_db"] = nullptr;
        jb.push_back(e);
    }
    meta["bands"] = jb;

    if (cfg.method == "proj") {
        out.waveform = project_notch(generate_reference(cfg.num_samples, cfg.seed), bands);
    } else {
        QcqpDesignSpec spec;
        spec.n_total = cfg.num_samples;
        spec.block_len = cfg.block_len;
        spec.overlap = cfg.overlap;
        spec.bands = bands;
        spec.seed = cfg.seed;
        spec.solver = cfg.solver;
        BlockwiseResult res = design_blockwise(spec);
        out.waveform = std::move(res.waveform);
        out.windows = std::move(res.windows);

        meta["blocks"] = {{"block_len", cfg.block_len}, {"overlap", cfg.overlap}};
        meta["solver"] = {{"feasibility_tol", cfg.solver.feasibility_tol},
                          {"optimality_tol", cfg.solver.optimality_tol},
                          {"max_iters", cfg.solver.max_iters}};
        int max_iter = 0;
        double min_slack = 0.0;
        bool first = true;
        for (const WindowDiagnostics& w : out.windows) {
            max_iter = std::max(max_iter, w.iterations);
            for (double s : w.band_slacks_rel) {
                if (first || s < min_slack) min_slack = s;
                first = false;
            }
        }
        meta["diagnostics"] = {{"windows", out.windows.size()},
                               {"max_iterations", max_iter},
                               {"min_band_slack_rel", min_slack},
                               {"all_converged", res.all_converged}};
    }
    out.metadata_json = meta.dump();
    return out;
}

void write_window_diagnostics_csv(const std::string& path,
                                  const std::vector<WindowDiagnostics>& windows) {
    CsvWriter csv(path);
    std::size_t n_bands = windows.empty() ? 0 : windows.front().band_slacks_rel.size();
    std::vector<std::string> head = {"window",    "start",     "window_len",
                                     "free_len",  "iterations", "converged",
                                     "objective", "ball_slack_rel"};
    for (std::size_t k = 0; k < n_bands; ++k)
        head.push_back("band" + std::to_string(k) + "_slack_rel");
    csv.row(head);
    for (const WindowDiagnostics& w : windows) {
        std::vector<std::string> r = {
            std::to_string(w.index),      std::to_string(w.start),
            std::to_string(w.window_len), std::to_string(w.free_len),
            std::to_string(w.iterations), w.converged ? "1" : "0",
            fmt_num(w.objective, 12),     fmt_num(w.ball_slack_rel, 12)};
        for (double s : w.band_slacks_rel) r.push_back(fmt_num(s, 12));
        csv.row(r);
    }
}

int run_design(const std::string& config_path, const std::string& out_path,
               const std::string& diagnostics_path) {
    const DesignConfig cfg = load_design_config(config_path);
    DesignOutput res = design_from_config(cfg);

    WaveformFile wf;
    wf.samples = std::move(res.waveform);
    wf.sample_rate = cfg.sample_rate;
    wf.full_scale = false;
    wf.metadata_json = res.metadata_json;
    write_waveform(out_path, wf);

    if (!diagnostics_path.empty() && !res.windows.empty())
        write_window_diagnostics_csv(diagnostics_path, res.windows);
    std::printf("wrote %s (%zu samples)\n", out_path.c_str(), wf.samples.size());
    return 0;
}

std::vector<StopBand> bands_from_metadata(const std::string& metadata_json,
                                          double sample_rate) {
    std::vector<StopBand> bands;
    if (metadata_json.empty()) return bands;
    json meta = json::parse(metadata_json, nullptr, false);
    if (meta.is_discarded() || !meta.contains("bands")) return bands;
    for (const json& b : meta["bands"]) {
        const double lo = b.at("f_lo_hz").get<double>();
        const double hi = b.at("f_hi_hz").get<double>();
        double e = 0.0;
        if (b.contains("depth_db") && !b["depth_db"].is_null())
            e = std::pow(10.0, -b["depth_db"].get<double>() / 10.0);
        bands.push_back(StopBand::from_hz(lo, hi, sample_rate, e));
    }
    return bands;
}

}  // namespace notchwave::cli
