#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "notchwave/types.hpp"

namespace notchwave {

// Frequency-domain primitives.
//
// The normalized frequency axis is [0, 1) with grid spacing 1/n tied to the
// sequence length; bin k sits at f = k/n. Frequencies given in Hz relative
// to the band center map to the axis as f_norm = (f_hz / fs) mod 1, so a
// band quoted as [-4, -2] MHz at fs = 20 MHz lands on [0.8, 0.9].

struct FrequencyGrid {
    std::size_t n_points = 0;

    explicit FrequencyGrid(std::size_t n) : n_points(n) {
        if (n == 0) throw std::invalid_argument("FrequencyGrid: n must be >= 1");
    }
    double spacing() const { return 1.0 / static_cast<double>(n_points); }
    double freq(std::size_t bin) const {
        return static_cast<double>(bin) / static_cast<double>(n_points);
    }
};

// One protected emitter: a normalized frequency interval plus the tolerable
// average interference energy inside it. max_energy may be +inf (band is
// declared but unconstrained) or 0 (full null requested).
struct StopBand {
    double f_lo = 0.0;
    double f_hi = 1.0;
    double max_energy = std::numeric_limits<double>::infinity();

    StopBand() = default;  // the whole axis, unconstrained
    StopBand(double lo, double hi,
             double e_max = std::numeric_limits<double>::infinity());

    // depth in dB below a unit-energy flat-spectrum reference level:
    // E = 10^(-depth/10)
    static StopBand from_depth_db(double lo, double hi, double depth_db);
    static StopBand from_hz(double lo_hz, double hi_hz, double sample_rate,
                            double e_max = std::numeric_limits<double>::infinity());

    double width() const { return f_hi - f_lo; }
};

// Grid bins whose frequencies fall inside [f_lo, f_hi] (closed interval,
// snapped to the grid). Throws if the band is narrower than the spacing and
// captures no bin.
std::vector<std::size_t> band_grid_indices(const StopBand& band,
                                           const FrequencyGrid& grid);

// Unit-norm steering vector, element m = exp(-j 2 pi f m) / sqrt(n).
ComplexSequence steering_vector(double f, std::size_t n);

// The interference-energy operator of one band on an n-point grid. Its
// quadratic form is evaluated through spectral coefficients, never through
// an n-by-n matrix:
//
//   form(c) = ||coef restricted to band bins||^2 / (f_hi - f_lo)
class BandOperator {
public:
    BandOperator(const StopBand& band, std::size_t n);

    const StopBand& band() const { return band_; }
    std::size_t length() const { return n_; }
    const std::vector<std::size_t>& bins() const { return bins_; }
    std::size_t n_cols() const { return bins_.size(); }
    double width_norm() const { return band_.width(); }

    // spectral coefficients of c on this band's bins (Q^H c)
    ComplexSequence band_coefficients(const ComplexSequence& c) const;
    // time-domain signal with the given coefficients on the band bins (Q w)
    ComplexSequence from_band_coefficients(const ComplexSequence& w) const;

    // c^H R c
    double band_energy(const ComplexSequence& c) const;

    // dense steering columns, for small-n oracle checks
    std::vector<ComplexSequence> materialize_columns() const;

private:
    StopBand band_;
    std::size_t n_;
    std::vector<std::size_t> bins_;
};

double band_energy(const ComplexSequence& c, const BandOperator& op);

struct BandFeasibility {
    StopBand band;
    double band_energy = 0.0;
    double limit = 0.0;
    double slack = 0.0;  // limit - band_energy
};

struct ConstraintReport {
    std::vector<BandFeasibility> bands;
    bool feasible = true;
};

// Per-band energies versus their limits. feasible iff every band satisfies
// band_energy <= limit + tolerance (absolute or relative to the limit).
ConstraintReport check_constraints(const ComplexSequence& c,
                                   const std::vector<StopBand>& bands,
                                   const FrequencyGrid& grid,
                                   double tolerance = 1e-12);

// Bands must not share grid bins after snapping; several operations require
// this (projection designers, constraint bookkeeping).
void ensure_disjoint_on_grid(const std::vector<StopBand>& bands,
                             const FrequencyGrid& grid);

}  // namespace notchwave
