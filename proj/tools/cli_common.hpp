#pragma once

#include <string>
#include <utility>
#include <vector>

#include "notchwave/analysis.hpp"
#include "notchwave/csv.hpp"
#include "notchwave/design_config.hpp"
#include "notchwave/design_qcqp.hpp"
#include "notchwave/types.hpp"

namespace notchwave::cli {

struct DesignOutput {
    ComplexSequence waveform;
    std::string metadata_json;
    std::vector<WindowDiagnostics> windows;  // qcqp only
};

DesignOutput design_from_config(const DesignConfig& cfg);

void write_psd_csv(const std::string& path,
                   const std::vector<std::pair<std::string, PsdEstimate>>& curves,
                   double sample_rate);
void write_acf_csv(const std::string& path,
                   const std::vector<std::pair<std::string, AcfResult>>& curves);
void write_depth_csv(const std::string& path,
                     const std::vector<std::pair<std::string, std::vector<BandDepth>>>&
                         rows,
                     double sample_rate);
void write_window_diagnostics_csv(const std::string& path,
                                  const std::vector<WindowDiagnostics>& windows);

// bands recorded in a waveform's metadata sidecar, if any
std::vector<StopBand> bands_from_metadata(const std::string& metadata_json,
                                          double sample_rate);

int run_design(const std::string& config_path, const std::string& out_path,
               const std::string& diagnostics_path);

struct AnalyzeOptions {
    std::string input;
    std::string out_prefix = "analysis";
    std::size_t segment_len = 1000;
    double overlap = 0.5;
    std::size_t max_lag = 0;  // 0: full
    std::size_t guard_bins = 2;
    bool emit_spectrogram = false;
    std::size_t spectrogram_segment = 200;
};
int run_analyze(const AnalyzeOptions& opt);

struct QuantizeOptions {
    std::string input;
    std::vector<int> bits;
    std::string report_path = "quantization.csv";
    std::string hist_prefix;  // empty: skip histograms
    std::string depth_path;   // empty: skip the notch table
    std::size_t guard_bins = 2;
};
int run_quantize(const QuantizeOptions& opt);

int run_simulate(const std::string& scenario_path, const std::string& out_dir,
                 int trials_override, int threads_override);

int run_repro(const std::string& which, const std::string& out_dir, int trials,
              int threads);

}  // namespace notchwave::cli
