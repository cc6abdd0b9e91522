#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace notchwave {

using cplx = std::complex<double>;
using ComplexSequence = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double energy(const ComplexSequence& c) {
    double e = 0.0;
    for (const cplx& v : c) e += std::norm(v);
    return e;
}

inline double db10(double x) { return 10.0 * std::log10(x); }
inline double db20(double x) { return 20.0 * std::log10(x); }

inline bool all_finite(const ComplexSequence& c) {
    for (const cplx& v : c)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

// Sequences are nonempty and free of NaN/Inf; callers that construct
// waveforms from external input go through this.
inline void validate_sequence(const ComplexSequence& c, const char* what) {
    if (c.empty())
        throw std::invalid_argument(std::string(what) + ": empty sequence");
    if (!all_finite(c))
        throw std::invalid_argument(std::string(what) + ": non-finite sample");
}

}  // namespace notchwave
