#include "notchwave/coexistence.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "notchwave/design_projection.hpp"
#include "notchwave/design_qcqp.hpp"
#include "notchwave/fft.hpp"
#include "notchwave/rng.hpp"

namespace notchwave {
namespace {

// fixed preamble transition pattern (indices into the transition alphabet)
constexpr int kPreamblePattern[] = {0, 2, 3, 1, 0, 1, 3, 2, 2, 0, 1, 3, 0, 3, 1, 2};

constexpr double kTransitionAlphabet[4] = {kPi / 4, 3 * kPi / 4, -kPi / 4,
                                           -3 * kPi / 4};

int transition_index_for_bits(int b1, int b0) {
    // 00 -> +pi/4, 01 -> +3pi/4, 10 -> -pi/4, 11 -> -3pi/4
    return b1 * 2 + b0;
}

double wrap_pi(double x) {
    while (x > kPi) x -= kTwoPi;
    while (x <= -kPi) x += kTwoPi;
    return x;
}

int sps_of(const CommParams& p, double fs) {
    const double r = fs / p.symbol_rate;
    const auto sps = static_cast<int>(std::lround(r));
    if (sps < 2 || std::abs(r - sps) > 1e-9)
        throw std::invalid_argument(
            "comm: sample_rate must be an integer multiple of symbol_rate");
    return sps;
}

std::vector<int> preamble_transitions(const CommParams& p) {
    std::vector<int> idx;
    for (int i = 0; i + 1 < p.preamble_symbols; ++i)
        idx.push_back(kPreamblePattern[i % 16]);
    return idx;
}

// channel-select lowpass: windowed sinc under a 4-term Blackman-Harris
// taper, unit DC gain. Stopband rejection beyond -90 dB, needed because the
// truncated root-raised-cosine alone leaves ~-40 dB skirts and the barrage
// interferer sits ~57 dB above the signal floor out of band.
std::vector<double> lowpass_taps(double cutoff_norm, std::size_t n_taps) {
    std::vector<double> h(n_taps);
    const auto mid = static_cast<double>(n_taps - 1) / 2.0;
    constexpr double a0 = 0.35875, a1 = 0.48829, a2 = 0.14128, a3 = 0.01168;
    double sum = 0.0;
    for (std::size_t i = 0; i < n_taps; ++i) {
        const double t = static_cast<double>(i) - mid;
        const double x = 2.0 * cutoff_norm * t;
        const double sinc = std::abs(x) < 1e-12 ? 1.0 : std::sin(kPi * x) / (kPi * x);
        const double ph = kTwoPi * static_cast<double>(i) /
                          static_cast<double>(n_taps - 1);
        const double w =
            a0 - a1 * std::cos(ph) + a2 * std::cos(2 * ph) - a3 * std::cos(3 * ph);
        h[i] = 2.0 * cutoff_norm * sinc * w;
        sum += h[i];
    }
    for (double& v : h) v /= sum;
    return h;
}

ComplexSequence convolve_same(const ComplexSequence& x, const std::vector<double>& h) {
    ComplexSequence y(x.size(), cplx(0.0, 0.0));
    const std::size_t half = h.size() / 2;
    for (std::size_t n = 0; n < x.size(); ++n) {
        cplx acc(0.0, 0.0);
        const std::size_t i0 = n >= half ? 0 : half - n;
        const std::size_t i1 = std::min(h.size(), x.size() + half - n);
        for (std::size_t i = i0; i < i1; ++i) acc += x[n + i - half] * h[i];
        y[n] = acc;
    }
    return y;
}

}  // namespace

void ScenarioConfig::validate() const {
    if (sample_rate <= 0 || capture_s <= 0 || trials < 1)
        throw std::invalid_argument("scenario: bad sample_rate/capture/trials");
    if (noise_power <= 0) throw std::invalid_argument("scenario: noise_power <= 0");
    const double occ = (1.0 + comm.rolloff) * comm.symbol_rate;
    if (occ > comm.rf_bandwidth_hz * (1.0 + 1e-9))
        throw std::invalid_argument("comm: (1+rolloff)*symbol_rate exceeds RF bandwidth");
    if (comm.payload_bits % 2 != 0)
        throw std::invalid_argument("comm: payload_bits must be even");
    if (radar.bandwidth_hz > sample_rate)
        throw std::invalid_argument("radar: bandwidth exceeds sample rate");
    const double pri_samp = radar.pri_s * sample_rate;
    if (std::abs(pri_samp - std::lround(pri_samp)) > 1e-6)
        throw std::invalid_argument("radar: PRI must be an integer number of samples");

    // the communication band must sit inside a declared stop band, otherwise
    // the notched jammers would wipe the link the report is scoring
    const auto bands_eff = effective_bands();
    auto wrap = [&](double f_hz) {
        double x = std::fmod(f_hz / sample_rate, 1.0);
        return x < 0 ? x + 1.0 : x;
    };
    const double lo = wrap(comm.carrier_offset_hz - occ / 2);
    const double hi = wrap(comm.carrier_offset_hz + occ / 2);
    bool covered = false;
    for (const StopBand& b : bands_eff)
        if (lo >= b.f_lo - 1e-12 && hi <= b.f_hi + 1e-12 && lo < hi) covered = true;
    if (!covered)
        throw std::invalid_argument(
            "scenario: comm band is not inside any declared stop band");
}

std::vector<StopBand> ScenarioConfig::effective_bands() const {
    if (!bands.empty()) return bands;
    const double e = std::pow(10.0, -qcqp_depth_db / 10.0);
    return {
        StopBand::from_hz(-4e6, -2e6, sample_rate, e),
        StopBand::from_hz(4e6, 5e6, sample_rate, e),
        StopBand::from_hz(8e6, 9e6, sample_rate, e),
    };
}

std::vector<double> rrc_taps(int sps, double rolloff, int span_symbols) {
    if (sps < 1 || span_symbols < 1)
        throw std::invalid_argument("rrc_taps: bad sps/span");
    if (!(rolloff > 0.0 && rolloff <= 1.0))
        throw std::invalid_argument("rrc_taps: rolloff must be in (0,1]");
    const int half = sps * span_symbols / 2;
    std::vector<double> h(2 * half + 1);
    for (int i = -half; i <= half; ++i) {
        const double t = static_cast<double>(i) / sps;  // in symbol periods
        double v;
        const double denom = 1.0 - std::pow(4.0 * rolloff * t, 2.0);
        if (std::abs(t) < 1e-12) {
            v = 1.0 - rolloff + 4.0 * rolloff / kPi;
        } else if (std::abs(denom) < 1e-9) {
            const double a = rolloff;
            v = a / std::sqrt(2.0) *
                ((1 + 2 / kPi) * std::sin(kPi / (4 * a)) +
                 (1 - 2 / kPi) * std::cos(kPi / (4 * a)));
        } else {
            v = (std::sin(kPi * t * (1 - rolloff)) +
                 4 * rolloff * t * std::cos(kPi * t * (1 + rolloff))) /
                (kPi * t * denom);
        }
        h[static_cast<std::size_t>(i + half)] = v;
    }
    double e = 0.0;
    for (double v : h) e += v * v;
    const double s = 1.0 / std::sqrt(e);
    for (double& v : h) v *= s;
    return h;
}

ComplexSequence dqpsk_modulate(const std::vector<int>& payload_bits,
                               const CommParams& p, double sample_rate,
                               double symbol_amplitude) {
    if (payload_bits.size() % 2 != 0)
        throw std::invalid_argument("dqpsk_modulate: odd bit count");
    const double occ = (1.0 + p.rolloff) * p.symbol_rate;
    if (occ > p.rf_bandwidth_hz * (1.0 + 1e-9))
        throw std::invalid_argument("dqpsk_modulate: occupied bandwidth exceeds RF budget");
    const int sps = sps_of(p, sample_rate);

    std::vector<int> trans = preamble_transitions(p);
    for (std::size_t i = 0; i + 1 < payload_bits.size(); i += 2)
        trans.push_back(
            transition_index_for_bits(payload_bits[i], payload_bits[i + 1]));

    // differential phase
    std::vector<cplx> symbols;
    symbols.reserve(trans.size() + 1);
    double theta = 0.0;
    symbols.emplace_back(std::cos(theta), std::sin(theta));
    for (int idx : trans) {
        theta = wrap_pi(theta + kTransitionAlphabet[idx]);
        symbols.emplace_back(std::cos(theta), std::sin(theta));
    }

    const std::vector<double> h = rrc_taps(sps, p.rolloff, p.rrc_span_symbols);
    const std::size_t n_out = symbols.size() * static_cast<std::size_t>(sps) + h.size();
    ComplexSequence out(n_out, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        const cplx a = symbols[k] * symbol_amplitude;
        const std::size_t base = k * static_cast<std::size_t>(sps);
        for (std::size_t i = 0; i < h.size(); ++i) out[base + i] += a * h[i];
    }
    // carrier shift; frequency f maps to exp(-j 2 pi f/fs n) in this code base
    const double fn = p.carrier_offset_hz / sample_rate;
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] *= std::polar(1.0, -kTwoPi * fn * static_cast<double>(n));
    return out;
}

static DqpskDemodResult dqpskdemod_impl(const ComplexSequence& rx,
                                        const CommParams& p, double sample_rate) {
    const int sps = sps_of(p, sample_rate);
    const std::vector<double> h = rrc_taps(sps, p.rolloff, p.rrc_span_symbols);

    // mix down, band-select, matched-filter
    ComplexSequence y(rx.size());
    const double fn = p.carrier_offset_hz / sample_rate;
    for (std::size_t n = 0; n < rx.size(); ++n)
        y[n] = rx[n] * std::polar(1.0, kTwoPi * fn * static_cast<double>(n));
    const double cutoff = 0.7 * (1.0 + p.rolloff) * p.symbol_rate / sample_rate;
    y = convolve_same(y, lowpass_taps(cutoff, 801));
    const ComplexSequence mf = convolve_same(y, h);

    // symbol timing: polyphase offset with the most energy on the symbol grid
    int best_tau = 0;
    double best_energy = -1.0;
    for (int tau = 0; tau < sps; ++tau) {
        double e = 0.0;
        for (std::size_t k = static_cast<std::size_t>(tau); k < mf.size();
             k += static_cast<std::size_t>(sps))
            e += std::norm(mf[k]);
        if (e > best_energy) {
            best_energy = e;
            best_tau = tau;
        }
    }
    std::vector<cplx> sym;
    for (std::size_t k = static_cast<std::size_t>(best_tau); k < mf.size();
         k += static_cast<std::size_t>(sps))
        sym.push_back(mf[k]);

    DqpskDemodResult res;
    const int n_payload_sym = p.payload_bits / 2;
    const std::vector<int> pre = preamble_transitions(p);
    const int n_needed = static_cast<int>(pre.size()) + n_payload_sym + 1;
    if (static_cast<int>(sym.size()) < n_needed + 1) {
        res.sync_ok = false;
        return res;
    }

    std::vector<cplx> d(sym.size() - 1);
    for (std::size_t k = 0; k + 1 < sym.size(); ++k)
        d[k] = sym[k + 1] * std::conj(sym[k]);

    // frame alignment: correlate the known preamble transition phasors
    int best_s = -1;
    double best_metric = -1.0;
    const int s_max = static_cast<int>(d.size()) - (n_needed - 1);
    for (int s = 0; s <= s_max; ++s) {
        cplx acc(0.0, 0.0);
        double pwr = 0.0;
        for (std::size_t i = 0; i < pre.size(); ++i) {
            const cplx dm = d[static_cast<std::size_t>(s) + i];
            const double m = std::abs(dm);
            if (m > 0.0) acc += dm / m * std::polar(1.0, -kTransitionAlphabet[pre[i]]);
            pwr += 1.0;
        }
        const double metric = std::abs(acc) / pwr;
        if (metric > best_metric) {
            best_metric = metric;
            best_s = s;
        }
    }
    res.sync_metric = best_metric;
    res.sync_ok = best_metric > 0.55;

    const auto payload_start =
        static_cast<std::size_t>(best_s) + pre.size();
    for (int k = 0; k < n_payload_sym; ++k) {
        const cplx dm = d[payload_start + static_cast<std::size_t>(k)];
        const double th = std::atan2(dm.imag(), dm.real());
        res.transitions.push_back(th);
        res.scatter.emplace_back(std::cos(th), std::sin(th));
        // nearest transition = quadrant of the phase step
        const int idx = static_cast<int>(std::floor(th / (kPi / 2))) & 3;
        int bits1, bits0;
        switch (idx) {
            case 0: bits1 = 0; bits0 = 0; break;   // [0, pi/2)
            case 1: bits1 = 0; bits0 = 1; break;   // [pi/2, pi)
            case 3: bits1 = 1; bits0 = 0; break;   // [-pi/2, 0)
            default: bits1 = 1; bits0 = 1; break;  // [-pi, -pi/2)
        }
        res.bits.push_back(bits1);
        res.bits.push_back(bits0);
    }
    return res;
}

DqpskDemodResult dqpsk_demodulate(const ComplexSequence& rx, const CommParams& p,
                                  double sample_rate) {
    validate_sequence(rx, "dqpsk_demodulate");
    return dqpskdemod_impl(rx, p, sample_rate);
}

ComplexSequence chirp_pulse(double bandwidth_hz, double pulse_width_s,
                            double sample_rate, double offset_hz) {
    if (bandwidth_hz <= 0 || bandwidth_hz > sample_rate)
        throw std::invalid_argument("chirp_pulse: bandwidth out of range");
    if (pulse_width_s <= 0) throw std::invalid_argument("chirp_pulse: bad width");
    const auto np = static_cast<std::size_t>(std::lround(pulse_width_s * sample_rate));
    if (np < 2) throw std::invalid_argument("chirp_pulse: pulse too short");
    ComplexSequence s(np);
    const double amp = 1.0 / std::sqrt(static_cast<double>(np));
    const double f0 = offset_hz - bandwidth_hz / 2;
    const double rate = bandwidth_hz / pulse_width_s;
    for (std::size_t n = 0; n < np; ++n) {
        const double t = static_cast<double>(n) / sample_rate;
        const double phase = kTwoPi * (f0 * t + 0.5 * rate * t * t);
        s[n] = std::polar(amp, -phase);
    }
    return s;
}

double estimate_sinr(const ComplexSequence& y_radar, const ComplexSequence& y_jam) {
    if (y_jam.empty())
        throw std::invalid_argument("estimate_sinr: empty noise window");
    validate_sequence(y_radar, "estimate_sinr");
    double peak = 0.0;
    for (const cplx& v : y_radar) peak = std::max(peak, std::norm(v));
    double denom = 0.0;
    for (const cplx& v : y_jam) denom += std::norm(v);
    denom /= static_cast<double>(y_jam.size());
    if (denom <= 0.0) throw std::invalid_argument("estimate_sinr: zero denominator");
    return db10(peak / denom);
}

namespace {

// loop the designed waveform with a fresh circular shift per repeat; the
// shifts stand in for the free-running offset between the jammer clock and
// the radar PRI grid and keep repeats uncorrelated under integration
void add_looped_jammer(ComplexSequence& stream, const ComplexSequence& wf,
                       double gain, Rng& rng) {
    if (wf.empty()) return;
    std::size_t pos = 0;
    while (pos < stream.size()) {
        const std::size_t shift = rng.next_u64() % wf.size();
        const std::size_t chunk = std::min(wf.size(), stream.size() - pos);
        for (std::size_t i = 0; i < chunk; ++i)
            stream[pos + i] += gain * wf[(shift + i) % wf.size()];
        pos += chunk;
    }
}

struct TrialResult {
    double error_pct = 0.0;
    bool sync_failed = false;
    std::map<int, double> sinr_db;
    std::vector<std::pair<double, double>> scatter;
};

struct TrialContext {
    const ScenarioConfig* cfg;
    const ComplexSequence* jam_wf;  // nullptr for the no-jammer row
    double jam_gain = 0.0;
    double comm_amp = 0.0;
    double radar_amp = 0.0;
    std::size_t n_samples = 0;
    std::size_t pri = 0;
    std::size_t np = 0;
    int max_pulses = 0;
    ComplexSequence pulse;          // unit energy
    ComplexSequence pulse_spec;     // FFT over one PRI, conjugated
};

void matched_filter_pri(const TrialContext& tc, const ComplexSequence& stream,
                        std::size_t pulse_index, ComplexSequence& out) {
    ComplexSequence seg(stream.begin() + static_cast<long>(pulse_index * tc.pri),
                        stream.begin() + static_cast<long>((pulse_index + 1) * tc.pri));
    ComplexSequence spec = fft_forward(seg);
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= tc.pulse_spec[k];
    ComplexSequence corr = fft_backward(spec);
    const double scale = 1.0 / static_cast<double>(tc.pri);
    const std::size_t h_len = tc.pri - tc.np + 1;
    out.resize(h_len);
    for (std::size_t h = 0; h < h_len; ++h) out[h] = corr[h] * scale;
}

TrialResult run_trial(const TrialContext& tc, std::uint64_t type_label, int trial) {
    const ScenarioConfig& cfg = *tc.cfg;
    TrialResult res;

    auto stream_rng = [&](std::uint64_t role) {
        return Rng(Rng::derive(cfg.seed, type_label * 1000003ull +
                                             static_cast<std::uint64_t>(trial) * 17ull +
                                             role));
    };

    auto fill_noise = [](ComplexSequence& v, Rng& r, double power) {
        const double s = std::sqrt(power);
        for (cplx& x : v) x = s * r.cnormal();
    };

    // capture with everything active: scores the communication link
    ComplexSequence rx(tc.n_samples, cplx(0.0, 0.0));
    {
        Rng nr = stream_rng(1);
        fill_noise(rx, nr, cfg.noise_power);
        if (tc.jam_wf) {
            Rng jr = stream_rng(2);
            add_looped_jammer(rx, *tc.jam_wf, tc.jam_gain, jr);
        }
    }

    // radar pulse train at a per-trial delay
    Rng dr = stream_rng(3);
    const std::size_t delay = dr.next_u64() % (tc.pri - tc.np);
    auto add_radar = [&](ComplexSequence& v) {
        for (int m = 0; m < tc.max_pulses; ++m) {
            const std::size_t base = static_cast<std::size_t>(m) * tc.pri + delay;
            for (std::size_t i = 0; i < tc.np; ++i)
                v[base + i] += tc.radar_amp * tc.pulse[i];
        }
    };
    add_radar(rx);

    // one communication burst at a random position
    Rng br = stream_rng(4);
    std::vector<int> tx_bits(static_cast<std::size_t>(cfg.comm.payload_bits));
    for (int& b : tx_bits) b = static_cast<int>(br.next_u64() & 1u);
    ComplexSequence burst = dqpsk_modulate(tx_bits, cfg.comm, cfg.sample_rate,
                                           tc.comm_amp);
    const std::size_t margin = 400;
    if (burst.size() + 2 * margin >= tc.n_samples)
        throw std::invalid_argument("scenario: capture too short for the burst");
    const std::size_t span = tc.n_samples - burst.size() - 2 * margin;
    const std::size_t s0 = margin + br.next_u64() % span;
    for (std::size_t i = 0; i < burst.size(); ++i) rx[s0 + i] += burst[i];

    // the SINR is measured from two dedicated captures: the probing signal
    // in thermal noise (numerator) and the interference alone (denominator)
    ComplexSequence rx_radar(tc.n_samples, cplx(0.0, 0.0));
    {
        Rng nr = stream_rng(5);
        fill_noise(rx_radar, nr, cfg.noise_power);
        add_radar(rx_radar);
    }
    ComplexSequence rx_jam(tc.n_samples, cplx(0.0, 0.0));
    {
        Rng nr = stream_rng(6);
        fill_noise(rx_jam, nr, cfg.noise_power);
        if (tc.jam_wf) {
            Rng jr = stream_rng(7);
            add_looped_jammer(rx_jam, *tc.jam_wf, tc.jam_gain, jr);
        }
    }

    // communication scoring on a window around the burst
    {
        const std::size_t w0 = s0 - margin;
        const std::size_t w1 = std::min(tc.n_samples, s0 + burst.size() + margin);
        ComplexSequence window(rx.begin() + static_cast<long>(w0),
                               rx.begin() + static_cast<long>(w1));
        DqpskDemodResult dem = dqpsk_demodulate(window, cfg.comm, cfg.sample_rate);
        if (!dem.sync_ok || dem.bits.size() != tx_bits.size()) {
            res.error_pct = 50.0;  // lost snapshot scores as coin flips
            res.sync_failed = true;
        } else {
            int errors = 0;
            for (std::size_t i = 0; i < tx_bits.size(); ++i)
                if (dem.bits[i] != tx_bits[i]) ++errors;
            res.error_pct =
                100.0 * static_cast<double>(errors) / static_cast<double>(tx_bits.size());
        }
        res.scatter = std::move(dem.scatter);
    }

    // radar scoring: per-PRI matched filter, prefix sums over pulse counts
    {
        const std::size_t h_len = tc.pri - tc.np + 1;
        ComplexSequence acc_r(h_len, cplx(0, 0)), acc_j(h_len, cplx(0, 0));
        ComplexSequence mf;
        int next = 0;
        std::vector<int> wanted = cfg.integration_counts;
        std::sort(wanted.begin(), wanted.end());
        for (int m = 0; m < tc.max_pulses && next < static_cast<int>(wanted.size());
             ++m) {
            matched_filter_pri(tc, rx_radar, static_cast<std::size_t>(m), mf);
            for (std::size_t h = 0; h < h_len; ++h) acc_r[h] += mf[h];
            matched_filter_pri(tc, rx_jam, static_cast<std::size_t>(m), mf);
            for (std::size_t h = 0; h < h_len; ++h) acc_j[h] += mf[h];
            while (next < static_cast<int>(wanted.size()) && wanted[next] == m + 1) {
                res.sinr_db[wanted[next]] = estimate_sinr(acc_r, acc_j);
                ++next;
            }
        }
    }
    return res;
}

}  // namespace

CoexistenceReport run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const std::vector<StopBand> bands = cfg.effective_bands();

    const ComplexSequence reference =
        generate_reference(cfg.jam_len, cfg.design_seed);
    const ComplexSequence proj = project_notch(reference, bands);

    auto qcqp = [&](std::size_t block) {
        QcqpDesignSpec spec;
        spec.n_total = cfg.jam_len;
        spec.block_len = block;
        spec.overlap = block / 2;
        spec.bands = bands;
        spec.reference = reference;
        return design_blockwise(spec).waveform;
    };
    const ComplexSequence qcqp5000 = qcqp(5000);
    const ComplexSequence qcqp1000 = qcqp(1000);

    struct JamType {
        const char* name;
        const ComplexSequence* wf;
    };
    const JamType types[] = {
        {"none", nullptr},         {"reference", &reference}, {"proj", &proj},
        {"qcqp-5000", &qcqp5000},  {"qcqp-1000", &qcqp1000},
    };

    TrialContext tc;
    tc.cfg = &cfg;
    tc.n_samples = static_cast<std::size_t>(std::lround(cfg.capture_s * cfg.sample_rate));
    tc.pri = static_cast<std::size_t>(std::lround(cfg.radar.pri_s * cfg.sample_rate));
    tc.pulse = chirp_pulse(cfg.radar.bandwidth_hz, cfg.radar.pulse_width_s,
                           cfg.sample_rate, cfg.radar.carrier_offset_hz);
    tc.np = tc.pulse.size();
    if (tc.pri <= tc.np)
        throw std::invalid_argument("radar: PRI must exceed the pulse width");
    int max_m = 1;
    for (int m : cfg.integration_counts) max_m = std::max(max_m, m);
    tc.max_pulses = max_m;
    if (tc.n_samples < static_cast<std::size_t>(max_m) * tc.pri)
        throw std::invalid_argument("scenario: capture too short for the pulse counts");
    {
        ComplexSequence pad(tc.pri, cplx(0.0, 0.0));
        std::copy(tc.pulse.begin(), tc.pulse.end(), pad.begin());
        tc.pulse_spec = fft_forward(pad);
        for (cplx& v : tc.pulse_spec) v = std::conj(v);
    }
    // calibration: per-sample powers relative to the noise floor
    const double jnr = std::pow(10.0, cfg.jammer_jnr_db / 10.0);
    tc.jam_gain = std::sqrt(jnr * cfg.noise_power *
                            static_cast<double>(cfg.jam_len));  // unit-energy source
    tc.comm_amp = std::sqrt(std::pow(10.0, cfg.comm_esn0_db / 10.0) * cfg.noise_power);
    tc.radar_amp = std::sqrt(std::pow(10.0, cfg.radar_snr_db / 10.0) *
                             cfg.noise_power * static_cast<double>(tc.np));

    CoexistenceReport report;
    for (std::size_t t = 0; t < 5; ++t) {
        const JamType& jt = types[t];
        TrialContext tci = tc;
        tci.jam_wf = jt.wf;

        std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
        const int n_threads = std::max(1, cfg.threads);
        auto worker = [&](int first, int step) {
            for (int trial = first; trial < cfg.trials; trial += step)
                results[static_cast<std::size_t>(trial)] =
                    run_trial(tci, t + 1, trial);
        };
        if (n_threads == 1) {
            worker(0, 1);
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < n_threads; ++i)
                pool.emplace_back(worker, i, n_threads);
            for (auto& th : pool) th.join();
        }

        JammerOutcome out;
        out.name = jt.name;
        double err = 0.0;
        std::map<int, double> sinr_sum;
        for (const TrialResult& r : results) {
            err += r.error_pct;
            if (r.sync_failed) ++out.failed_snapshots;
            for (const auto& [m, v] : r.sinr_db) sinr_sum[m] += v;
        }
        out.error_rate_pct = err / cfg.trials;
        for (const auto& [m, v] : sinr_sum) out.sinr_db[m] = v / cfg.trials;
        out.scatter = results.front().scatter;

        // PSD summary from a fresh single capture (deterministic)
        {
            ComplexSequence snap(tc.n_samples, cplx(0.0, 0.0));
            Rng nr(Rng::derive(cfg.seed, 777 + t));
            const double s = std::sqrt(cfg.noise_power);
            for (cplx& v : snap) v = s * nr.cnormal();
            if (jt.wf) {
                Rng jr(Rng::derive(cfg.seed, 888 + t));
                add_looped_jammer(snap, *jt.wf, tc.jam_gain, jr);
            }
            WelchParams wp;
            wp.normalization = PsdNormalization::kAbsolute;
            out.rx_psd = welch_psd(snap, wp);
        }
        report.jammers.push_back(std::move(out));
    }
    return report;
}

}  // namespace notchwave
