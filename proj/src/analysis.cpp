#include "notchwave/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "notchwave/fft.hpp"

namespace notchwave {

std::vector<double> blackman_harris4(std::size_t len) {
    if (len == 0) throw std::invalid_argument("blackman_harris4: empty window");
    // minimum 4-term coefficients, symmetric form
    constexpr double a0 = 0.35875, a1 = 0.48829, a2 = 0.14128, a3 = 0.01168;
    std::vector<double> w(len);
    if (len == 1) {
        w[0] = 1.0;
        return w;
    }
    const double d = static_cast<double>(len - 1);
    for (std::size_t i = 0; i < len; ++i) {
        const double x = kTwoPi * static_cast<double>(i) / d;
        w[i] = a0 - a1 * std::cos(x) + a2 * std::cos(2 * x) - a3 * std::cos(3 * x);
    }
    return w;
}

std::vector<double> PsdEstimate::freq_hz(double sample_rate) const {
    std::vector<double> out(freq_norm.size());
    for (std::size_t i = 0; i < freq_norm.size(); ++i) {
        double f = freq_norm[i] * sample_rate;
        if (f > sample_rate / 2) f -= sample_rate;
        out[i] = f;
    }
    return out;
}

PsdEstimate welch_psd(const ComplexSequence& c, const WelchParams& params) {
    validate_sequence(c, "welch_psd");
    const std::size_t L = params.segment_len;
    if (L == 0 || L > c.size())
        throw std::invalid_argument("welch_psd: segment longer than signal");
    if (!(params.overlap_fraction >= 0.0 && params.overlap_fraction < 1.0))
        throw std::invalid_argument("welch_psd: overlap must be in [0,1)");

    const auto step = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::lround(static_cast<double>(L) * (1.0 - params.overlap_fraction))));
    const std::size_t n_segments = (c.size() - L) / step + 1;

    const std::vector<double> w = blackman_harris4(L);
    double wsum2 = 0.0;
    for (double v : w) wsum2 += v * v;

    std::vector<double> acc(L, 0.0);
    ComplexSequence seg(L);
    for (std::size_t s = 0; s < n_segments; ++s) {
        const std::size_t off = s * step;
        for (std::size_t i = 0; i < L; ++i) seg[i] = c[off + i] * w[i];
        ComplexSequence spec = fft_backward(seg);
        for (std::size_t k = 0; k < L; ++k) acc[k] += std::norm(spec[k]);
    }
    const double scale = 1.0 / (static_cast<double>(n_segments) * wsum2);

    PsdEstimate out;
    out.n_segments = n_segments;
    out.freq_norm.resize(L);
    out.power_linear.resize(L);
    double mean = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        out.freq_norm[k] = static_cast<double>(k) / static_cast<double>(L);
        out.power_linear[k] = acc[k] * scale;
        mean += out.power_linear[k];
    }
    mean /= static_cast<double>(L);

    switch (params.normalization) {
        case PsdNormalization::kAbsolute:
            out.reference_mean = 1.0;
            break;
        case PsdNormalization::kOwnMean:
            out.reference_mean = mean;
            break;
        case PsdNormalization::kExternalMean:
            if (!(params.external_mean > 0.0))
                throw std::invalid_argument("welch_psd: external mean must be > 0");
            out.reference_mean = params.external_mean;
            break;
    }
    out.power_db.resize(L);
    for (std::size_t k = 0; k < L; ++k) {
        const double rel = out.power_linear[k] / out.reference_mean;
        out.power_db[k] = rel > 0.0 ? db10(rel) : -400.0;
    }
    return out;
}

Spectrogram spectrogram(const ComplexSequence& c, std::size_t segment_len,
                        double overlap_fraction) {
    validate_sequence(c, "spectrogram");
    const std::size_t L = segment_len;
    if (L == 0 || L > c.size())
        throw std::invalid_argument("spectrogram: segment longer than signal");
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
        throw std::invalid_argument("spectrogram: overlap must be in [0,1)");
    const auto step = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::lround(static_cast<double>(L) * (1.0 - overlap_fraction))));
    const std::size_t n_segments = (c.size() - L) / step + 1;
    const std::vector<double> w = blackman_harris4(L);

    Spectrogram sg;
    sg.n_bins = L;
    sg.n_segments = n_segments;
    sg.freq_norm.resize(L);
    for (std::size_t k = 0; k < L; ++k)
        sg.freq_norm[k] = static_cast<double>(k) / static_cast<double>(L);

    std::vector<std::vector<double>> lin(n_segments, std::vector<double>(L));
    double peak = 0.0;
    ComplexSequence seg(L);
    for (std::size_t s = 0; s < n_segments; ++s) {
        const std::size_t off = s * step;
        sg.segment_start.push_back(static_cast<double>(off));
        for (std::size_t i = 0; i < L; ++i) seg[i] = c[off + i] * w[i];
        ComplexSequence spec = fft_backward(seg);
        for (std::size_t k = 0; k < L; ++k) {
            lin[s][k] = std::norm(spec[k]);
            peak = std::max(peak, lin[s][k]);
        }
    }
    if (peak <= 0.0)
        throw std::invalid_argument("spectrogram: all-zero input, nothing to normalize");
    sg.power_db.resize(n_segments, std::vector<double>(L));
    for (std::size_t s = 0; s < n_segments; ++s)
        for (std::size_t k = 0; k < L; ++k)
            sg.power_db[s][k] = lin[s][k] > 0.0 ? db10(lin[s][k] / peak) : -400.0;
    return sg;
}

AcfResult autocorrelation(const ComplexSequence& c,
                          std::optional<std::size_t> max_lag,
                          std::size_t mainlobe_exclusion) {
    validate_sequence(c, "autocorrelation");
    const std::size_t n = c.size();
    if (n < 2) throw std::invalid_argument("autocorrelation: need at least 2 samples");
    std::size_t L = max_lag.value_or(n - 1);
    L = std::min(L, n - 1);

    std::size_t m = 1;
    while (m < n + L + 1) m <<= 1;
    ComplexSequence pad(m, cplx(0.0, 0.0));
    std::copy(c.begin(), c.end(), pad.begin());
    ComplexSequence spec = fft_forward(pad);
    for (cplx& v : spec) v = cplx(std::norm(v), 0.0);
    ComplexSequence corr = fft_backward(spec);  // r(l) * m

    AcfResult out;
    out.lags.resize(L + 1);
    out.magnitude_db.resize(L + 1);
    const double r0 = std::abs(corr[0]);
    if (r0 <= 0.0) throw std::invalid_argument("autocorrelation: zero-energy input");
    double peak_side = 0.0;
    for (std::size_t l = 0; l <= L; ++l) {
        out.lags[l] = l;
        const double mag = std::abs(corr[l]) / r0;
        out.magnitude_db[l] = mag > 0.0 ? db20(mag) : -400.0;
        if (l >= mainlobe_exclusion) peak_side = std::max(peak_side, mag);
    }
    out.pslr_db = peak_side > 0.0 ? db20(peak_side) : -400.0;
    return out;
}

std::vector<BandDepth> notch_depth(const PsdEstimate& psd,
                                   const std::vector<StopBand>& bands,
                                   std::size_t guard_bins) {
    const std::size_t L = psd.power_linear.size();
    if (L == 0) throw std::invalid_argument("notch_depth: empty PSD");
    FrequencyGrid grid(L);

    // passband = bins outside every band widened by the guard
    std::vector<bool> excluded(L, false);
    for (const StopBand& b : bands) {
        auto idx = band_grid_indices(b, grid);
        const std::size_t lo = idx.front() >= guard_bins ? idx.front() - guard_bins : 0;
        const std::size_t hi = std::min(L - 1, idx.back() + guard_bins);
        for (std::size_t k = lo; k <= hi; ++k) excluded[k] = true;
    }
    double pass_sum = 0.0;
    std::size_t pass_n = 0;
    for (std::size_t k = 0; k < L; ++k)
        if (!excluded[k]) {
            pass_sum += psd.power_linear[k];
            ++pass_n;
        }
    if (pass_n == 0) throw std::invalid_argument("notch_depth: no passband bins left");
    const double pass_mean = pass_sum / static_cast<double>(pass_n);

    std::vector<BandDepth> out;
    out.reserve(bands.size());
    for (const StopBand& b : bands) {
        auto idx = band_grid_indices(b, grid);
        if (idx.size() <= 2 * guard_bins)
            throw std::invalid_argument("notch_depth: band narrower than the guard");
        const std::size_t lo = idx.front() + guard_bins;
        const std::size_t hi = idx.back() - guard_bins;
        double sum = 0.0, worst = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) {
            sum += psd.power_linear[k];
            worst = std::max(worst, psd.power_linear[k]);
        }
        const double mean_level = sum / static_cast<double>(hi - lo + 1);
        BandDepth d;
        d.band = b;
        d.depth_mean_db = -db10(mean_level / pass_mean);
        d.depth_min_db = -db10(worst / pass_mean);
        d.edge_lo_db = db10(psd.power_linear[lo] / pass_mean);
        d.edge_hi_db = db10(psd.power_linear[hi] / pass_mean);
        out.push_back(d);
    }
    return out;
}

}  // namespace notchwave
