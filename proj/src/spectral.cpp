#include "notchwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "notchwave/fft.hpp"

namespace notchwave {

namespace {
// tolerance for closed-interval membership on the grid, relative to spacing
constexpr double kSnapEps = 1e-9;
}  // namespace

StopBand::StopBand(double lo, double hi, double e_max)
    : f_lo(lo), f_hi(hi), max_energy(e_max) {
    if (!(lo >= 0.0 && lo < 1.0))
        throw std::invalid_argument("StopBand: f_lo must be in [0,1)");
    if (!(hi > 0.0 && hi <= 1.0))
        throw std::invalid_argument("StopBand: f_hi must be in (0,1]");
    if (!(lo < hi)) throw std::invalid_argument("StopBand: requires f_lo < f_hi");
    if (std::isnan(e_max) || e_max < 0.0)
        throw std::invalid_argument("StopBand: max_energy must be >= 0");
}

StopBand StopBand::from_depth_db(double lo, double hi, double depth_db) {
    return StopBand(lo, hi, std::pow(10.0, -depth_db / 10.0));
}

StopBand StopBand::from_hz(double lo_hz, double hi_hz, double sample_rate,
                           double e_max) {
    if (sample_rate <= 0.0)
        throw std::invalid_argument("StopBand: sample_rate must be > 0");
    if (lo_hz >= hi_hz)
        throw std::invalid_argument("StopBand: requires lo_hz < hi_hz");
    if (lo_hz < -sample_rate / 2 || hi_hz > sample_rate / 2)
        throw std::invalid_argument("StopBand: band outside [-fs/2, fs/2]");
    auto wrap = [&](double f) {
        double x = std::fmod(f / sample_rate, 1.0);
        return x < 0.0 ? x + 1.0 : x;
    };
    double lo = wrap(lo_hz);
    double hi = wrap(hi_hz);
    if (hi == 0.0) hi = 1.0;
    if (lo >= hi)
        throw std::invalid_argument(
            "StopBand: band crosses DC after wrapping; split it in two");
    return StopBand(lo, hi, e_max);
}

std::vector<std::size_t> band_grid_indices(const StopBand& band,
                                           const FrequencyGrid& grid) {
    const double n = static_cast<double>(grid.n_points);
    const auto lo = static_cast<std::size_t>(
        std::max(0.0, std::ceil(band.f_lo * n - kSnapEps)));
    const auto hi_raw = std::floor(band.f_hi * n + kSnapEps);
    if (hi_raw < static_cast<double>(lo))
        throw std::invalid_argument("band_grid_indices: no grid point inside band");
    std::size_t hi = static_cast<std::size_t>(hi_raw);
    if (hi >= grid.n_points) hi = grid.n_points - 1;
    if (hi < lo)
        throw std::invalid_argument("band_grid_indices: no grid point inside band");
    std::vector<std::size_t> idx(hi - lo + 1);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = lo + i;
    return idx;
}

ComplexSequence steering_vector(double f, std::size_t n) {
    if (n == 0) throw std::invalid_argument("steering_vector: n must be >= 1");
    if (!(f >= 0.0 && f < 1.0))
        throw std::invalid_argument("steering_vector: f must be in [0,1)");
    ComplexSequence p(n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t m = 0; m < n; ++m) {
        const double ph = -kTwoPi * f * static_cast<double>(m);
        p[m] = cplx(s * std::cos(ph), s * std::sin(ph));
    }
    return p;
}

BandOperator::BandOperator(const StopBand& band, std::size_t n)
    : band_(band), n_(n), bins_(band_grid_indices(band, FrequencyGrid(n))) {}

ComplexSequence BandOperator::band_coefficients(const ComplexSequence& c) const {
    if (c.size() != n_)
        throw std::invalid_argument("BandOperator: sequence length mismatch");
    ComplexSequence coef = spectrum_analysis(c);
    ComplexSequence out(bins_.size());
    for (std::size_t i = 0; i < bins_.size(); ++i) out[i] = coef[bins_[i]];
    return out;
}

ComplexSequence BandOperator::from_band_coefficients(const ComplexSequence& w) const {
    if (w.size() != bins_.size())
        throw std::invalid_argument("BandOperator: coefficient count mismatch");
    ComplexSequence spec(n_, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < bins_.size(); ++i) spec[bins_[i]] = w[i];
    return spectrum_synthesis(spec);
}

double BandOperator::band_energy(const ComplexSequence& c) const {
    return energy(band_coefficients(c)) / width_norm();
}

std::vector<ComplexSequence> BandOperator::materialize_columns() const {
    std::vector<ComplexSequence> cols;
    cols.reserve(bins_.size());
    FrequencyGrid grid(n_);
    for (std::size_t b : bins_) cols.push_back(steering_vector(grid.freq(b), n_));
    return cols;
}

double band_energy(const ComplexSequence& c, const BandOperator& op) {
    return op.band_energy(c);
}

ConstraintReport check_constraints(const ComplexSequence& c,
                                   const std::vector<StopBand>& bands,
                                   const FrequencyGrid& grid,
                                   double tolerance) {
    if (c.size() != grid.n_points)
        throw std::invalid_argument("check_constraints: length mismatch");
    ComplexSequence coef = spectrum_analysis(c);
    ConstraintReport rep;
    rep.bands.reserve(bands.size());
    for (const StopBand& b : bands) {
        double e = 0.0;
        for (std::size_t k : band_grid_indices(b, grid)) e += std::norm(coef[k]);
        e /= b.width();
        BandFeasibility bf;
        bf.band = b;
        bf.band_energy = e;
        bf.limit = b.max_energy;
        bf.slack = b.max_energy - e;
        if (bf.slack < -(tolerance + tolerance * std::abs(b.max_energy)))
            rep.feasible = false;
        rep.bands.push_back(bf);
    }
    return rep;
}

void ensure_disjoint_on_grid(const std::vector<StopBand>& bands,
                             const FrequencyGrid& grid) {
    std::set<std::size_t> seen;
    for (const StopBand& b : bands)
        for (std::size_t k : band_grid_indices(b, grid))
            if (!seen.insert(k).second)
                throw std::invalid_argument(
                    "stop bands overlap after grid snapping");
}

}  // namespace notchwave
