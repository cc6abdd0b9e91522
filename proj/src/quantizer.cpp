#include "notchwave/quantizer.hpp"

#include <algorithm>
#include <cmath>

namespace notchwave {

double quantizer_step(int bits) {
    if (bits < 1 || bits > 30)
        throw std::invalid_argument("quantizer: bits must be in [1, 30]");
    return 2.0 / static_cast<double>(1u << bits);
}

namespace {

double quantize_part(double x, double step, double n_levels) {
    // nearest mid-rise level -1 + step/2 + k*step, k = 0 .. 2^b - 1
    double k = std::floor((x + 1.0) / step);
    k = std::clamp(k, 0.0, n_levels - 1.0);
    return -1.0 + step * (k + 0.5);
}

}  // namespace

ComplexSequence quantize(const ComplexSequence& c, int bits) {
    validate_sequence(c, "quantize");
    const double step = quantizer_step(bits);
    const double n_levels = std::pow(2.0, bits);
    ComplexSequence out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double re = c[i].real();
        const double im = c[i].imag();
        if (std::abs(re) > 1.0 || std::abs(im) > 1.0)
            throw std::invalid_argument(
                "quantize: sample part outside [-1,1]; run full_scale_normalize first");
        out[i] = cplx(quantize_part(re, step, n_levels),
                      quantize_part(im, step, n_levels));
    }
    return out;
}

std::pair<ComplexSequence, double> full_scale_normalize(const ComplexSequence& c) {
    validate_sequence(c, "full_scale_normalize");
    double peak = 0.0;
    for (const cplx& v : c)
        peak = std::max({peak, std::abs(v.real()), std::abs(v.imag())});
    if (peak <= 0.0)
        throw std::invalid_argument("full_scale_normalize: all-zero input");
    ComplexSequence out(c.size());
    const double s = 1.0 / peak;
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * s;
    return {std::move(out), peak};
}

QuantizationReport quantization_report(const ComplexSequence& c, int bits,
                                       std::size_t hist_bins) {
    const ComplexSequence q = quantize(c, bits);
    QuantizationReport rep;
    rep.bits = bits;
    rep.step = quantizer_step(bits);
    rep.theory_variance = rep.step * rep.step / 12.0;

    const auto n = static_cast<double>(c.size());
    double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, sq_im = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double er = c[i].real() - q[i].real();
        const double ei = c[i].imag() - q[i].imag();
        sum_re += er;
        sum_im += ei;
        sq_re += er * er;
        sq_im += ei * ei;
    }
    rep.energy_diff = sq_re + sq_im;
    rep.est_variance_re = sq_re / n - (sum_re / n) * (sum_re / n);
    rep.est_variance_im = sq_im / n - (sum_im / n) * (sum_im / n);

    if (hist_bins > 0) {
        rep.hist_edges.resize(hist_bins + 1);
        rep.hist_counts.assign(hist_bins, 0);
        const double lo = -rep.step / 2, hi = rep.step / 2;
        for (std::size_t b = 0; b <= hist_bins; ++b)
            rep.hist_edges[b] =
                lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(hist_bins);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double er = c[i].real() - q[i].real();
            auto b = static_cast<long>(std::floor((er - lo) / (hi - lo) *
                                                  static_cast<double>(hist_bins)));
            b = std::clamp<long>(b, 0, static_cast<long>(hist_bins) - 1);
            ++rep.hist_counts[static_cast<std::size_t>(b)];
        }
    }
    return rep;
}

std::vector<NotchDegradation> notch_degradation(
    const ComplexSequence& c, const std::vector<StopBand>& bands,
    const std::vector<int>& bits_list, const WelchParams& welch,
    std::size_t guard_bins) {
    std::vector<NotchDegradation> out;
    out.reserve(bits_list.size());
    for (int b : bits_list) {
        const ComplexSequence q = quantize(c, b);
        PsdEstimate psd = welch_psd(q, welch);
        NotchDegradation nd;
        nd.bits = b;
        nd.per_band = notch_depth(psd, bands, guard_bins);
        double mean = 0.0;
        double mn = nd.per_band.empty() ? 0.0 : nd.per_band.front().depth_mean_db;
        for (const BandDepth& d : nd.per_band) {
            mean += d.depth_mean_db;
            mn = std::min(mn, d.depth_mean_db);
        }
        nd.mean_depth_db =
            nd.per_band.empty() ? 0.0 : mean / static_cast<double>(nd.per_band.size());
        nd.min_depth_db = mn;
        out.push_back(std::move(nd));
    }
    return out;
}

}  // namespace notchwave
