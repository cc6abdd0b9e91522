#include <doctest.h>

#include <numeric>

#include "notchwave/coexistence.hpp"
#include "notchwave/design_projection.hpp"
#include "notchwave/fft.hpp"
#include "notchwave/rng.hpp"

using namespace notchwave;

namespace {

std::vector<int> random_bits(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> bits(n);
    for (int& b : bits) b = static_cast<int>(rng.next_u64() & 1u);
    return bits;
}

}  // namespace

TEST_CASE("root-raised-cosine taps") {
    const auto h = rrc_taps(50, 0.25, 12);
    CHECK(h.size() == 601);
    double e = 0;
    for (double v : h) e += v * v;
    CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < h.size(); ++i)
        CHECK(h[i] == doctest::Approx(h[h.size() - 1 - i]).epsilon(1e-12));
}

TEST_CASE("dqpsk modulation") {
    CommParams p;
    const double fs = 20e6;

    SUBCASE("all-zero bits advance the phase by pi/4 per symbol") {
        CommParams small = p;
        small.payload_bits = 40;
        std::vector<int> bits(40, 0);
        const ComplexSequence burst = dqpsk_modulate(bits, small, fs);
        const DqpskDemodResult dem = dqpsk_demodulate(burst, small, fs);
        REQUIRE(dem.sync_ok);
        for (std::size_t i = 0; i < 20 && i < dem.transitions.size(); ++i)
            CHECK(dem.transitions[i] == doctest::Approx(kPi / 4).epsilon(1e-6));
    }
    SUBCASE("loopback with no channel is error free") {
        const std::vector<int> bits = random_bits(368, 31);
        const ComplexSequence burst = dqpsk_modulate(bits, p, fs);
        const DqpskDemodResult dem = dqpsk_demodulate(burst, p, fs);
        REQUIRE(dem.sync_ok);
        REQUIRE(dem.bits.size() == bits.size());
        int errors = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] != dem.bits[i]) ++errors;
        CHECK(errors == 0);
    }
    SUBCASE("odd bit count is rejected") {
        CHECK_THROWS(dqpsk_modulate(std::vector<int>(7, 0), p, fs));
    }
    SUBCASE("occupied bandwidth stays within the RF budget") {
        const std::vector<int> bits = random_bits(368, 32);
        const ComplexSequence burst = dqpsk_modulate(bits, p, fs);
        // 99.9% of the energy within (1+rolloff)*symbol_rate around the carrier
        const ComplexSequence spec = spectrum_analysis(burst);
        const double total = energy(spec);
        const double lo = (p.carrier_offset_hz - 0.55 * (1 + p.rolloff) * p.symbol_rate) / fs;
        const double hi = (p.carrier_offset_hz + 0.55 * (1 + p.rolloff) * p.symbol_rate) / fs;
        double inside = 0.0;
        const std::size_t n = spec.size();
        for (std::size_t k = 0; k < n; ++k) {
            const double f = static_cast<double>(k) / static_cast<double>(n);
            if (f >= lo && f <= hi) inside += std::norm(spec[k]);
        }
        CHECK(inside / total > 0.999);
    }
    SUBCASE("bandwidth above the RF budget is rejected") {
        CommParams wide = p;
        wide.symbol_rate = 450e3;  // (1+0.25)*450k > 500k
        CHECK_THROWS(dqpsk_modulate(std::vector<int>(8, 0), wide, fs));
    }
}

TEST_CASE("chirp pulse") {
    const double fs = 20e6, bw = 2e6, T = 50e-6, off = 2e6;
    const ComplexSequence s = chirp_pulse(bw, T, fs, off);
    REQUIRE(s.size() == 1000);
    CHECK(energy(s) == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("instantaneous frequency sweeps linearly across the band") {
        // discrete phase difference -> frequency, sign per this code base
        for (std::size_t n : {10ul, 300ul, 700ul, 990ul}) {
            const double dphi =
                std::arg(s[n] * std::conj(s[n - 1]));  // = -2 pi f / fs
            const double f_inst = -dphi * fs / kTwoPi;
            const double t = (static_cast<double>(n) - 0.5) / fs;
            const double want = off - bw / 2 + bw * t / T;
            CHECK(f_inst == doctest::Approx(want).epsilon(0.02));
        }
    }
    SUBCASE("matched filter compresses to the true delay") {
        const std::size_t n = 4000, delay = 1234;
        ComplexSequence rx(n, cplx(0, 0));
        for (std::size_t i = 0; i < s.size(); ++i) rx[delay + i] = s[i];
        std::size_t peak = 0;
        double best = -1.0;
        std::vector<double> mag(n - s.size());
        for (std::size_t h = 0; h + s.size() <= n; ++h) {
            cplx acc(0, 0);
            for (std::size_t i = 0; i < s.size(); ++i)
                acc += rx[h + i] * std::conj(s[i]);
            mag[h] = std::abs(acc);
            if (mag[h] > best) {
                best = mag[h];
                peak = h;
            }
        }
        CHECK(peak == delay);
        // mainlobe width ~ fs/bw = 10 samples: -3 dB points within +-10
        const double half = best / std::sqrt(2.0);
        std::size_t left = peak;
        while (left > 0 && mag[left] > half) --left;
        std::size_t right = peak;
        while (right + 1 < mag.size() && mag[right] > half) ++right;
        CHECK(right - left <= 12);
    }
    SUBCASE("time-bandwidth gain over an in-band-filtered sample") {
        // SNR gain of the matched filter vs a single sample observed through
        // an ideal filter of the chirp bandwidth: 10 log10(T*B)
        Rng rng(5);
        const double sigma2 = 1.0;
        double noise_out = 0.0;
        const int trials = 4000;
        for (int t = 0; t < trials; ++t) {
            cplx acc(0, 0);
            for (std::size_t i = 0; i < s.size(); ++i)
                acc += std::sqrt(sigma2) * rng.cnormal() * std::conj(s[i]);
            noise_out += std::norm(acc);
        }
        noise_out /= trials;  // ~ sigma2 * ||s||^2 = sigma2
        const double peak_power = 1.0;  // |sum s conj(s)|^2 = ||s||^4 = 1
        const double snr_out = peak_power / noise_out;
        const double snr_in_band =
            (1.0 / static_cast<double>(s.size())) / (sigma2 * bw / fs);
        const double gain_db = db10(snr_out / snr_in_band);
        CHECK(gain_db == doctest::Approx(db10(T * bw)).epsilon(0.05));
    }
}

TEST_CASE("sinr estimator") {
    SUBCASE("degenerate no-target input stays finite") {
        Rng rng(6);
        ComplexSequence a(512), b(512);
        for (auto& v : a) v = rng.cnormal();
        for (auto& v : b) v = rng.cnormal();
        const double sinr = estimate_sinr(a, b);
        CHECK(std::isfinite(sinr));
        CHECK(sinr > 0.0);   // peak over mean of the same law
        CHECK(sinr < 20.0);  // but not a detection-grade peak
    }
    SUBCASE("empty noise window is rejected") {
        CHECK_THROWS(estimate_sinr(ComplexSequence(8, cplx(1, 0)), {}));
    }
}

TEST_CASE("scenario end to end (reduced size)") {
    ScenarioConfig cfg;
    cfg.trials = 2;
    cfg.capture_s = 0.004;
    cfg.integration_counts = {1, 4};
    cfg.jam_len = 20000;
    cfg.threads = 2;
    cfg.seed = 91;

    const CoexistenceReport rep = run_scenario(cfg);
    REQUIRE(rep.jammers.size() == 5);
    const auto& none = rep.jammers[0];
    const auto& barrage = rep.jammers[1];

    CHECK(none.error_rate_pct == doctest::Approx(0.0));
    CHECK(barrage.error_rate_pct > 30.0);
    CHECK(barrage.error_rate_pct < 70.0);
    for (std::size_t i = 2; i < 5; ++i)
        CHECK(rep.jammers[i].error_rate_pct == doctest::Approx(0.0));

    // barrage knocks the radar down by roughly the jammer-to-noise ratio
    const double drop = barrage.sinr_db.at(1) - none.sinr_db.at(1);
    CHECK(drop < -50.0);
    CHECK(drop > -65.0);

    // integration gain ~ 10 log10(4) for every jammer type
    for (const JammerOutcome& j : rep.jammers) {
        const double gain = j.sinr_db.at(4) - j.sinr_db.at(1);
        CHECK(gain == doctest::Approx(db10(4.0)).epsilon(0.35));
    }

    // the designed jammers look like the barrage to the radar
    for (std::size_t i = 2; i < 5; ++i)
        for (int m : {1, 4})
            CHECK(std::abs(rep.jammers[i].sinr_db.at(m) - barrage.sinr_db.at(m)) <
                  1.5);
}

TEST_CASE("scenario determinism and continuity in jammer power") {
    ScenarioConfig cfg;
    cfg.trials = 1;
    cfg.capture_s = 0.002;
    cfg.integration_counts = {1};
    cfg.jam_len = 8000;
    cfg.seed = 17;

    const CoexistenceReport a = run_scenario(cfg);
    const CoexistenceReport b = run_scenario(cfg);
    for (std::size_t i = 0; i < a.jammers.size(); ++i) {
        CHECK(a.jammers[i].error_rate_pct == b.jammers[i].error_rate_pct);
        CHECK(a.jammers[i].sinr_db.at(1) == b.jammers[i].sinr_db.at(1));
    }

    // jammer power -> 0 converges to the no-jammer figure
    ScenarioConfig weak = cfg;
    weak.jammer_jnr_db = -300.0;
    const CoexistenceReport w = run_scenario(weak);
    CHECK(std::abs(w.jammers[1].sinr_db.at(1) - w.jammers[0].sinr_db.at(1)) < 0.7);
}

TEST_CASE("superposed energy is the sum of component energies") {
    const double fs = 20e6;
    const std::size_t n = 60000;
    Rng rng(44);
    ComplexSequence noise(n);
    for (auto& v : noise) v = rng.cnormal();

    ComplexSequence jam(n);
    const ComplexSequence wf = generate_reference(10000, 3);
    for (std::size_t i = 0; i < n; ++i) jam[i] = 2.0 * wf[i % wf.size()] * 100.0;

    CommParams cp;
    const ComplexSequence burst = dqpsk_modulate(random_bits(368, 9), cp, fs, 3.0);
    ComplexSequence comm(n, cplx(0, 0));
    std::copy(burst.begin(), burst.end(), comm.begin() + 5000);

    const ComplexSequence pulse = chirp_pulse(2e6, 50e-6, fs, 2e6);
    ComplexSequence radar(n, cplx(0, 0));
    for (std::size_t base : {0ul, 10000ul, 20000ul, 30000ul, 40000ul})
        for (std::size_t i = 0; i < pulse.size(); ++i)
            radar[base + 100 + i] += 12.0 * pulse[i];

    ComplexSequence sum(n);
    for (std::size_t i = 0; i < n; ++i)
        sum[i] = noise[i] + jam[i] + comm[i] + radar[i];
    const double parts = energy(noise) + energy(jam) + energy(comm) + energy(radar);
    CHECK(energy(sum) == doctest::Approx(parts).epsilon(0.02));
}

TEST_CASE("scenario validation") {
    ScenarioConfig cfg;
    cfg.comm.carrier_offset_hz = 6.0e6;  // outside every stop band
    CHECK_THROWS(cfg.validate());
}
