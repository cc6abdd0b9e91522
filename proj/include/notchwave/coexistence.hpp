#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "notchwave/analysis.hpp"
#include "notchwave/spectral.hpp"
#include "notchwave/types.hpp"

namespace notchwave {

// Software stand-in for a wired coexistence testbed: a pi/4-DQPSK link and
// a pulsed chirp radar share a 20 MHz complex-baseband capture with the
// jamming waveform and thermal noise. Communication health is scored by the
// decoded bit error rate, radar health by the SINR of the matched-filtered,
// coherently integrated pulse train.

struct CommParams {
    double symbol_rate = 400e3;
    double rolloff = 0.25;
    double rf_bandwidth_hz = 500e3;  // occupied (1+rolloff)*symbol_rate must fit
    double carrier_offset_hz = 8.5e6;
    int payload_bits = 368;
    int preamble_symbols = 16;
    int rrc_span_symbols = 12;
};

struct RadarParams {
    double bandwidth_hz = 2e6;
    double pulse_width_s = 50e-6;
    double pri_s = 500e-6;
    double carrier_offset_hz = 2e6;
};

struct ScenarioConfig {
    double sample_rate = 20e6;
    double capture_s = 0.03;
    int trials = 50;
    std::uint64_t seed = 20250801;
    int threads = 1;

    double noise_power = 1.0;     // complex AWGN variance per sample
    double jammer_jnr_db = 57.5;  // barrage per-sample power over noise
    double radar_snr_db = 12.13;  // chirp per-sample power over noise
    double comm_esn0_db = 40.0;   // symbol energy over noise after matched filter

    CommParams comm;
    RadarParams radar;
    std::vector<int> integration_counts{1, 20, 30};

    std::size_t jam_len = 100000;
    std::vector<StopBand> bands;  // empty: the three-band default below
    double qcqp_depth_db = 60.0;
    std::uint64_t design_seed = 1;

    void validate() const;
    std::vector<StopBand> effective_bands() const;
};

// root-raised-cosine taps, unit energy, odd length sps*span+1
std::vector<double> rrc_taps(int sps, double rolloff, int span_symbols);

// Differential encoding with transitions {+pi/4, +3pi/4, -pi/4, -3pi/4} for
// bit pairs {00, 01, 10, 11}; RRC pulse shaping; complex carrier shift. The
// first preamble_symbols symbols carry a fixed sync pattern, then the
// payload bits follow pairwise.
ComplexSequence dqpsk_modulate(const std::vector<int>& payload_bits,
                               const CommParams& p, double sample_rate,
                               double symbol_amplitude = 1.0);

struct DqpskDemodResult {
    std::vector<int> bits;
    std::vector<double> transitions;  // decided payload phase steps (radians)
    std::vector<std::pair<double, double>> scatter;  // (cos, sin) per transition
    bool sync_ok = false;
    double sync_metric = 0.0;
};

// Matched filter, symbol timing by peak energy over the polyphase offsets,
// preamble correlation for frame alignment, nearest-transition decisions.
DqpskDemodResult dqpsk_demodulate(const ComplexSequence& rx, const CommParams& p,
                                  double sample_rate);

// Unit-energy linear FM pulse sweeping bandwidth_hz centered on offset_hz.
ComplexSequence chirp_pulse(double bandwidth_hz, double pulse_width_s,
                            double sample_rate, double offset_hz);

// SINR = max_h |y_r(h)|^2 / ((1/H) sum_h |y_j(h)|^2), inputs already
// matched-filtered and coherently integrated.
double estimate_sinr(const ComplexSequence& y_radar, const ComplexSequence& y_jam);

struct JammerOutcome {
    std::string name;
    double error_rate_pct = 0.0;
    std::map<int, double> sinr_db;  // keyed by pulse count M
    std::vector<std::pair<double, double>> scatter;  // from the first snapshot
    PsdEstimate rx_psd;                              // from the first snapshot
    int failed_snapshots = 0;
};

struct CoexistenceReport {
    std::vector<JammerOutcome> jammers;  // none, reference, proj, qcqp-5000, qcqp-1000
};

CoexistenceReport run_scenario(const ScenarioConfig& cfg);

}  // namespace notchwave
