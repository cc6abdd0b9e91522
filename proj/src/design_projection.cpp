#include "notchwave/design_projection.hpp"

#include "notchwave/fft.hpp"
#include "notchwave/rng.hpp"

namespace notchwave {

ComplexSequence generate_reference(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("generate_reference: n must be >= 1");
    Rng rng(seed);
    ComplexSequence c(n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = kTwoPi * rng.uniform();
        c[i] = cplx(s * std::cos(ph), s * std::sin(ph));
    }
    return c;
}

ComplexSequence project_notch(const ComplexSequence& reference,
                              const std::vector<StopBand>& bands) {
    validate_sequence(reference, "project_notch");
    if (bands.empty()) return reference;
    FrequencyGrid grid(reference.size());
    ensure_disjoint_on_grid(bands, grid);

    ComplexSequence coef = spectrum_analysis(reference);
    for (const StopBand& b : bands)
        for (std::size_t k : band_grid_indices(b, grid)) coef[k] = cplx(0.0, 0.0);
    return spectrum_synthesis(coef);
}

ComplexSequence project_notch(const ProjectionRequest& req) {
    return project_notch(req.reference, req.bands);
}

}  // namespace notchwave
