#pragma once

#include <cstddef>
#include <vector>

#include "notchwave/analysis.hpp"
#include "notchwave/spectral.hpp"
#include "notchwave/types.hpp"

namespace notchwave {

// Mid-rise uniform quantizer on [-1, 1]: 2^bits levels at
// -1 + step/2 + k*step with step = 2/2^bits, applied to real and imaginary
// parts independently. Inputs must be pre-scaled into [-1, 1] (see
// full_scale_normalize); overload never occurs by construction and every
// per-part error lies in [-step/2, step/2].
ComplexSequence quantize(const ComplexSequence& c, int bits);

double quantizer_step(int bits);

// Scales c so the largest |Re| or |Im| over all samples equals 1. Returns
// the scaled sequence and the factor that undoes the scaling.
std::pair<ComplexSequence, double> full_scale_normalize(const ComplexSequence& c);

struct QuantizationReport {
    int bits = 0;
    double step = 0.0;            // 2 / 2^bits
    double energy_diff = 0.0;     // ||c - c_q||^2
    double est_variance_re = 0.0;
    double est_variance_im = 0.0;
    double theory_variance = 0.0;  // step^2 / 12
    std::vector<double> hist_edges;   // real-part error histogram
    std::vector<std::size_t> hist_counts;
};

QuantizationReport quantization_report(const ComplexSequence& c, int bits,
                                       std::size_t hist_bins = 51);

struct NotchDegradation {
    int bits = 0;
    std::vector<BandDepth> per_band;
    double mean_depth_db = 0.0;
    double min_depth_db = 0.0;
};

// Quantizes a notched waveform at each bit depth and meters the surviving
// Welch-PSD notch per band.
std::vector<NotchDegradation> notch_degradation(
    const ComplexSequence& c, const std::vector<StopBand>& bands,
    const std::vector<int>& bits_list, const WelchParams& welch = {},
    std::size_t guard_bins = 2);

}  // namespace notchwave
