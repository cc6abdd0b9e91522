#include <doctest.h>

#include "notchwave/analysis.hpp"
#include "notchwave/design_projection.hpp"
#include "notchwave/fft.hpp"
#include "notchwave/rng.hpp"
#include "oracles.hpp"

using namespace notchwave;

TEST_CASE("reference generation") {
    SUBCASE("unit energy and constant modulus") {
        const std::size_t n = 100000;
        const ComplexSequence c = generate_reference(n, 42);
        CHECK(energy(c) == doctest::Approx(1.0).epsilon(1e-12));
        const double want = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t i = 0; i < 100; ++i)
            CHECK(std::abs(c[i * 997]) == doctest::Approx(want).epsilon(1e-12));
    }
    SUBCASE("deterministic for a fixed seed") {
        const ComplexSequence a = generate_reference(4096, 7);
        const ComplexSequence b = generate_reference(4096, 7);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
        const ComplexSequence c = generate_reference(4096, 8);
        CHECK(a[0] != c[0]);
    }
    SUBCASE("flat spectrum under the Welch settings") {
        const ComplexSequence c = generate_reference(100000, 2);
        const PsdEstimate psd = welch_psd(c);
        for (double v : psd.power_db) CHECK(std::abs(v) < 3.0);
    }
    SUBCASE("rejects n = 0") { CHECK_THROWS(generate_reference(0, 1)); }
}

TEST_CASE("projection notching") {
    SUBCASE("empty band set returns the reference unchanged") {
        const ComplexSequence c0 = generate_reference(256, 1);
        const ComplexSequence c = project_notch(c0, {});
        for (std::size_t i = 0; i < c0.size(); ++i) CHECK(c[i] == c0[i]);
    }
    SUBCASE("single-bin notch equals the dense transform oracle") {
        const std::size_t n = 8;
        const ComplexSequence c0 = generate_reference(n, 3);
        const std::vector<StopBand> bands = {StopBand(0.25, 0.26)};  // bin 2 only
        REQUIRE(band_grid_indices(bands[0], FrequencyGrid(n)).size() == 1);
        const ComplexSequence got = project_notch(c0, bands);
        const ComplexSequence want = oracles::dense_notch(c0, bands);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);
    }
    SUBCASE("matches the per-frequency subtraction loop") {
        const std::size_t n = 64;
        const ComplexSequence c0 = generate_reference(n, 4);
        const std::vector<StopBand> bands = {StopBand(0.125, 0.25),
                                             StopBand(0.5, 0.625)};
        const ComplexSequence got = project_notch(c0, bands);
        const ComplexSequence want = oracles::loop_notch(c0, bands);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);
    }
    SUBCASE("idempotent") {
        const ComplexSequence c0 = generate_reference(1024, 5);
        const std::vector<StopBand> bands = {StopBand(0.1, 0.2), StopBand(0.7, 0.75)};
        const ComplexSequence once = project_notch(c0, bands);
        const ComplexSequence twice = project_notch(once, bands);
        for (std::size_t i = 0; i < once.size(); ++i)
            CHECK(std::abs(once[i] - twice[i]) < 1e-12);
    }
    SUBCASE("zero response on every stop-band grid frequency") {
        const std::size_t n = 512;
        const ComplexSequence c0 = generate_reference(n, 6);
        const std::vector<StopBand> bands = {StopBand(0.2, 0.3)};
        const ComplexSequence c = project_notch(c0, bands);
        FrequencyGrid grid(n);
        for (std::size_t k : band_grid_indices(bands[0], grid)) {
            const ComplexSequence p = steering_vector(grid.freq(k), n);
            cplx dot(0, 0);
            for (std::size_t m = 0; m < n; ++m) dot += std::conj(c[m]) * p[m];
            CHECK(std::abs(dot) < 1e-10);
        }
    }
    SUBCASE("energy splits between output and removed component") {
        const std::size_t n = 4096;
        const ComplexSequence c0 = generate_reference(n, 7);
        const std::vector<StopBand> bands = {StopBand(0.1, 0.25), StopBand(0.6, 0.65)};
        const ComplexSequence c = project_notch(c0, bands);
        double removed = 0.0;
        FrequencyGrid grid(n);
        const ComplexSequence coef = spectrum_analysis(c0);
        for (const StopBand& b : bands)
            for (std::size_t k : band_grid_indices(b, grid))
                removed += std::norm(coef[k]);
        CHECK(energy(c) + removed == doctest::Approx(energy(c0)).epsilon(1e-10));
        CHECK(energy(c) <= energy(c0));
    }
    SUBCASE("preserves Gaussian shape statistics") {
        const std::size_t n = 100000;
        Rng rng(2024);
        ComplexSequence c0(n);
        const double s = std::sqrt(0.5 / static_cast<double>(n));
        for (auto& v : c0) v = s * rng.cnormal() * std::sqrt(2.0);
        const std::vector<StopBand> bands = {StopBand(0.8, 0.9), StopBand(0.2, 0.25),
                                             StopBand(0.4, 0.45)};
        const ComplexSequence c = project_notch(c0, bands);
        double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
        for (const cplx& v : c) m1 += v.real();
        m1 /= static_cast<double>(n);
        for (const cplx& v : c) {
            const double d = v.real() - m1;
            m2 += d * d;
            m3 += d * d * d;
            m4 += d * d * d * d;
        }
        m2 /= static_cast<double>(n);
        m3 /= static_cast<double>(n);
        m4 /= static_cast<double>(n);
        const double skew = m3 / std::pow(m2, 1.5);
        const double kurt = m4 / (m2 * m2);
        // 99% two-sided bounds for Gaussian samples of this size
        CHECK(std::abs(skew) < 2.576 * std::sqrt(6.0 / static_cast<double>(n)));
        CHECK(std::abs(kurt - 3.0) < 2.576 * std::sqrt(24.0 / static_cast<double>(n)));
    }
    SUBCASE("band without a grid point fails") {
        const ComplexSequence c0 = generate_reference(8, 1);
        CHECK_THROWS(project_notch(c0, {StopBand(0.1, 0.101)}));
    }
}
