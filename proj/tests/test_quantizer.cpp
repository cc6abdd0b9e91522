#include <doctest.h>

#include "notchwave/design_projection.hpp"
#include "notchwave/quantizer.hpp"
#include "notchwave/rng.hpp"

using namespace notchwave;

namespace {

ComplexSequence vee_scenario_waveform(std::size_t n, std::uint64_t seed) {
    const std::vector<StopBand> bands = {StopBand(0.8, 0.9), StopBand(0.2, 0.25),
                                         StopBand(0.4, 0.45)};
    return full_scale_normalize(project_notch(generate_reference(n, seed), bands))
        .first;
}

}  // namespace

TEST_CASE("quantizer mapping") {
    SUBCASE("one bit maps every part to +-0.5") {
        ComplexSequence c = {cplx(0.3, -0.8), cplx(-0.01, 0.99), cplx(1.0, -1.0)};
        const ComplexSequence q = quantize(c, 1);
        for (const cplx& v : q) {
            CHECK(std::abs(std::abs(v.real()) - 0.5) < 1e-15);
            CHECK(std::abs(std::abs(v.imag()) - 0.5) < 1e-15);
        }
    }
    SUBCASE("levels are fixed points") {
        const double step = quantizer_step(6);
        for (int k : {0, 1, 13, 62, 63}) {
            const double level = -1.0 + step * (k + 0.5);
            const ComplexSequence q = quantize({cplx(level, level)}, 6);
            CHECK(q[0].real() == doctest::Approx(level).epsilon(1e-15));
        }
    }
    SUBCASE("parts outside [-1,1] are rejected") {
        CHECK_THROWS(quantize({cplx(1.01, 0)}, 8));
        CHECK_THROWS(quantize({cplx(0, -1.5)}, 8));
    }
    SUBCASE("error bound holds for every sample and bit depth") {
        Rng rng(77);
        ComplexSequence c(20000);
        for (auto& v : c) v = cplx(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
        for (int b : {1, 2, 3, 5, 8, 12, 16}) {
            const double half = quantizer_step(b) / 2;
            const ComplexSequence q = quantize(c, b);
            for (std::size_t i = 0; i < c.size(); ++i) {
                CHECK(std::abs(c[i].real() - q[i].real()) <= half + 1e-15);
                CHECK(std::abs(c[i].imag() - q[i].imag()) <= half + 1e-15);
            }
        }
    }
}

TEST_CASE("full-scale normalization") {
    SUBCASE("peak part becomes one") {
        const ComplexSequence c = generate_reference(4096, 3);
        const auto [scaled, factor] = full_scale_normalize(c);
        double peak = 0.0;
        for (const cplx& v : scaled)
            peak = std::max({peak, std::abs(v.real()), std::abs(v.imag())});
        CHECK(peak == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(factor > 0);
    }
    SUBCASE("already full scale") {
        ComplexSequence c = {cplx(1.0, 0.2), cplx(-0.4, 0.1)};
        const auto [scaled, factor] = full_scale_normalize(c);
        CHECK(factor == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("round trip") {
        const ComplexSequence c = generate_reference(1000, 4);
        const auto [scaled, factor] = full_scale_normalize(c);
        for (std::size_t i = 0; i < c.size(); ++i)
            CHECK(std::abs(scaled[i] * factor - c[i]) <= 1e-15 * std::abs(c[i]));
    }
    SUBCASE("zero input rejected") {
        CHECK_THROWS(full_scale_normalize(ComplexSequence(4, cplx(0, 0))));
    }
}

TEST_CASE("quantization statistics") {
    const std::size_t n = 100000;
    const ComplexSequence c = vee_scenario_waveform(n, 11);

    SUBCASE("theory column is exact") {
        const double want[5] = {5.0863e-06, 3.1789e-07, 1.9868e-08, 1.2418e-09,
                                7.7610e-11};
        const int bits[5] = {8, 10, 12, 14, 16};
        for (int i = 0; i < 5; ++i) {
            const QuantizationReport rep = quantization_report(c, bits[i], 0);
            CHECK(rep.theory_variance == doctest::Approx(want[i]).epsilon(5e-5));
            CHECK(rep.step == 2.0 / std::pow(2.0, bits[i]));
        }
    }
    SUBCASE("estimated variance tracks theory within a few percent") {
        for (int b : {8, 10, 12, 14, 16}) {
            const QuantizationReport rep = quantization_report(c, b, 0);
            CHECK(std::abs(rep.est_variance_re - rep.theory_variance) <
                  0.05 * rep.theory_variance);
            CHECK(std::abs(rep.est_variance_im - rep.theory_variance) <
                  0.05 * rep.theory_variance);
        }
    }
    SUBCASE("energy difference follows the 2N variance law") {
        const QuantizationReport rep = quantization_report(c, 8, 0);
        const double want = 2.0 * static_cast<double>(n) * rep.theory_variance;
        CHECK(rep.energy_diff == doctest::Approx(want).epsilon(0.10));
    }
    SUBCASE("energy identity between code paths") {
        const QuantizationReport rep = quantization_report(c, 10, 0);
        const ComplexSequence q = quantize(c, 10);
        double direct = 0.0;
        for (std::size_t i = 0; i < n; ++i) direct += std::norm(c[i] - q[i]);
        CHECK(rep.energy_diff == doctest::Approx(direct).epsilon(1e-12));
    }
    SUBCASE("real-part error is uniform (chi-square at the 1% level)") {
        const std::size_t bins = 20;
        const QuantizationReport rep = quantization_report(c, 8, bins);
        const double expected = static_cast<double>(n) / bins;
        double chi2 = 0.0;
        for (std::size_t i = 0; i < bins; ++i) {
            const double d = static_cast<double>(rep.hist_counts[i]) - expected;
            chi2 += d * d / expected;
        }
        CHECK(chi2 < 36.191);  // chi-square 0.99 quantile, 19 dof
    }
}

TEST_CASE("notch degradation versus bit depth") {
    const std::size_t n = 20000;
    const std::vector<StopBand> bands = {StopBand(0.8, 0.9), StopBand(0.2, 0.25),
                                         StopBand(0.4, 0.45)};
    const ComplexSequence c = vee_scenario_waveform(n, 12);
    const auto table = notch_degradation(c, bands, {8, 10, 12, 14, 16}, {}, 5);
    REQUIRE(table.size() == 5);
    for (std::size_t i = 1; i < table.size(); ++i)
        CHECK(table[i].mean_depth_db > table[i - 1].mean_depth_db);
    CHECK(table.front().mean_depth_db > 30.0);
    CHECK(table.front().mean_depth_db < 55.0);
}
