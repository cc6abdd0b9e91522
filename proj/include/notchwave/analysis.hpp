#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "notchwave/spectral.hpp"
#include "notchwave/types.hpp"

namespace notchwave {

// Measurement suite: Welch PSD, spectrogram, autocorrelation and notch-depth
// metering. Deep notches (60-110 dB) are only measurable under a window
// whose leakage floor sits below them, so the default taper is the 4-term
// Blackman-Harris (-92 dB peak sidelobe).

std::vector<double> blackman_harris4(std::size_t len);

enum class PsdNormalization {
    kAbsolute,      // raw linear power per bin
    kOwnMean,       // relative to this estimate's mean level
    kExternalMean,  // relative to a caller-provided mean level
};

struct WelchParams {
    std::size_t segment_len = 1000;
    double overlap_fraction = 0.5;  // in [0, 1)
    PsdNormalization normalization = PsdNormalization::kOwnMean;
    double external_mean = 0.0;  // used with kExternalMean
};

struct PsdEstimate {
    std::vector<double> freq_norm;  // bin k at k/segment_len, axis [0,1)
    std::vector<double> power_linear;
    std::vector<double> power_db;  // relative to reference_mean
    double reference_mean = 0.0;   // linear level the dB column is relative to
    std::size_t n_segments = 0;

    // axis in Hz, wrapped to (-fs/2, fs/2]
    std::vector<double> freq_hz(double sample_rate) const;
};

PsdEstimate welch_psd(const ComplexSequence& c, const WelchParams& params = {});

struct Spectrogram {
    std::size_t n_bins = 0;
    std::size_t n_segments = 0;
    std::vector<double> freq_norm;
    std::vector<double> segment_start;        // in samples
    std::vector<std::vector<double>> power_db;  // [segment][bin], max-normalized
};

Spectrogram spectrogram(const ComplexSequence& c, std::size_t segment_len = 200,
                        double overlap_fraction = 0.5);

struct AcfResult {
    std::vector<std::size_t> lags;     // 0..max_lag; |r(-l)| = |r(l)|
    std::vector<double> magnitude_db;  // normalized to lag 0
    double pslr_db = 0.0;              // peak sidelobe level over stored lags
};

// Aperiodic autocorrelation r(l) = sum_i c(i+l) c*(i), normalized to r(0).
// The peak sidelobe level excludes the mainlobe (|l| < mainlobe_exclusion).
AcfResult autocorrelation(const ComplexSequence& c,
                          std::optional<std::size_t> max_lag = std::nullopt,
                          std::size_t mainlobe_exclusion = 2);

struct BandDepth {
    StopBand band;
    double depth_mean_db = 0.0;  // passband mean minus mean in-band level
    double depth_min_db = 0.0;   // passband mean minus loudest in-band bin
    double edge_lo_db = 0.0;     // level at the first guarded in-band bin
    double edge_hi_db = 0.0;     // level at the last guarded in-band bin
};

// Depth of each band's notch in a PSD estimate, in dB below the passband
// mean. guard_bins at each band edge are excluded from the in-band
// statistics (they sit on the analysis window's transition skirt).
std::vector<BandDepth> notch_depth(const PsdEstimate& psd,
                                   const std::vector<StopBand>& bands,
                                   std::size_t guard_bins = 2);

}  // namespace notchwave
