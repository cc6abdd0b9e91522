#include "notchwave/design_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace notchwave {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double need_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
    if (!obj[key].is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
    return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return obj[key].get<double>();
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<DesignConfig::BandSpec> parse_bands(const json& arr,
                                                const std::string& where) {
    if (!arr.is_array() || arr.empty())
        throw ConfigError(where + ": 'bands' must be a nonempty array");
    std::vector<DesignConfig::BandSpec> out;
    for (const json& jb : arr) {
        reject_unknown(jb, {"f_lo_hz", "f_hi_hz", "depth_db"}, where + ".bands[]");
        DesignConfig::BandSpec b;
        b.lo_hz = need_number(jb, "f_lo_hz", where);
        b.hi_hz = need_number(jb, "f_hi_hz", where);
        if (jb.contains("depth_db") && !jb["depth_db"].is_null())
            b.depth_db = jb["depth_db"].get<double>();
        if (!(b.lo_hz < b.hi_hz))
            throw ConfigError(where + ": band requires f_lo_hz < f_hi_hz");
        out.push_back(b);
    }
    return out;
}

std::vector<StopBand> to_stop_bands(const std::vector<DesignConfig::BandSpec>& bands,
                                    double fs) {
    std::vector<StopBand> out;
    out.reserve(bands.size());
    for (const auto& b : bands) {
        const double e =
            b.depth_db ? std::pow(10.0, -*b.depth_db / 10.0) : 0.0;
        out.push_back(StopBand::from_hz(b.lo_hz, b.hi_hz, fs, e));
    }
    return out;
}

}  // namespace

std::vector<StopBand> DesignConfig::stop_bands() const {
    return to_stop_bands(bands, sample_rate);
}

DesignConfig parse_design_config(const std::string& json_text) {
    const json j = parse_json(json_text);
    reject_unknown(j,
                   {"sample_rate_hz", "num_samples", "duration_s", "method",
                    "blocks", "bands", "seed", "solver"},
                   "design config");
    DesignConfig cfg;
    cfg.sample_rate = need_number(j, "sample_rate_hz", "design config");
    if (cfg.sample_rate <= 0) throw ConfigError("design config: sample_rate_hz <= 0");

    if (j.contains("num_samples") == j.contains("duration_s"))
        throw ConfigError("design config: give exactly one of num_samples/duration_s");
    if (j.contains("num_samples")) {
        const double n = j["num_samples"].get<double>();
        if (n < 1 || n != std::floor(n))
            throw ConfigError("design config: num_samples must be a positive integer");
        cfg.num_samples = static_cast<std::size_t>(n);
    } else {
        const double d = j["duration_s"].get<double>();
        if (d <= 0) throw ConfigError("design config: duration_s <= 0");
        cfg.num_samples = static_cast<std::size_t>(std::lround(d * cfg.sample_rate));
    }

    if (!j.contains("method") || !j["method"].is_string())
        throw ConfigError("design config: missing 'method'");
    cfg.method = j["method"].get<std::string>();
    if (cfg.method != "proj" && cfg.method != "qcqp")
        throw ConfigError("design config: method must be 'proj' or 'qcqp'");

    if (j.contains("blocks")) {
        const json& jb = j["blocks"];
        reject_unknown(jb, {"block_len", "overlap"}, "design config.blocks");
        cfg.block_len =
            static_cast<std::size_t>(need_number(jb, "block_len", "blocks"));
        cfg.overlap = static_cast<std::size_t>(opt_number(jb, "overlap", 0.0));
        if (cfg.block_len < 1) throw ConfigError("blocks: block_len must be >= 1");
        if (cfg.overlap > cfg.block_len / 2)
            throw ConfigError("blocks: overlap must be <= block_len/2");
    } else if (cfg.method == "qcqp") {
        throw ConfigError("design config: qcqp needs a 'blocks' object");
    }

    if (!j.contains("bands")) throw ConfigError("design config: missing 'bands'");
    cfg.bands = parse_bands(j["bands"], "design config");

    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("solver")) {
        const json& js = j["solver"];
        reject_unknown(js, {"feasibility_tol", "optimality_tol", "max_iters"},
                       "design config.solver");
        cfg.solver.feasibility_tol =
            opt_number(js, "feasibility_tol", cfg.solver.feasibility_tol);
        cfg.solver.optimality_tol =
            opt_number(js, "optimality_tol", cfg.solver.optimality_tol);
        cfg.solver.max_iters =
            static_cast<int>(opt_number(js, "max_iters", cfg.solver.max_iters));
        cfg.solver.validate();
    }
    // conversion validates band placement against [-fs/2, fs/2]
    (void)cfg.stop_bands();
    return cfg;
}

DesignConfig load_design_config(const std::string& path) {
    return parse_design_config(slurp(path));
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
    const json j = parse_json(json_text);
    reject_unknown(j,
                   {"sample_rate_hz", "capture_s", "trials", "seed", "threads",
                    "noise_power", "jammer_jnr_db", "radar_snr_db", "comm_esn0_db",
                    "comm", "radar", "integration_counts", "jammer", "bands"},
                   "scenario");
    ScenarioConfig cfg;
    cfg.sample_rate = opt_number(j, "sample_rate_hz", cfg.sample_rate);
    cfg.capture_s = opt_number(j, "capture_s", cfg.capture_s);
    cfg.trials = static_cast<int>(opt_number(j, "trials", cfg.trials));
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.threads = static_cast<int>(opt_number(j, "threads", cfg.threads));
    cfg.noise_power = opt_number(j, "noise_power", cfg.noise_power);
    cfg.jammer_jnr_db = opt_number(j, "jammer_jnr_db", cfg.jammer_jnr_db);
    cfg.radar_snr_db = opt_number(j, "radar_snr_db", cfg.radar_snr_db);
    cfg.comm_esn0_db = opt_number(j, "comm_esn0_db", cfg.comm_esn0_db);

    if (j.contains("comm")) {
        const json& jc = j["comm"];
        reject_unknown(jc,
                       {"symbol_rate_hz", "rolloff", "rf_bandwidth_hz",
                        "carrier_offset_hz", "payload_bits", "preamble_symbols"},
                       "scenario.comm");
        cfg.comm.symbol_rate = opt_number(jc, "symbol_rate_hz", cfg.comm.symbol_rate);
        cfg.comm.rolloff = opt_number(jc, "rolloff", cfg.comm.rolloff);
        cfg.comm.rf_bandwidth_hz =
            opt_number(jc, "rf_bandwidth_hz", cfg.comm.rf_bandwidth_hz);
        cfg.comm.carrier_offset_hz =
            opt_number(jc, "carrier_offset_hz", cfg.comm.carrier_offset_hz);
        cfg.comm.payload_bits =
            static_cast<int>(opt_number(jc, "payload_bits", cfg.comm.payload_bits));
        cfg.comm.preamble_symbols = static_cast<int>(
            opt_number(jc, "preamble_symbols", cfg.comm.preamble_symbols));
    }
    if (j.contains("radar")) {
        const json& jr = j["radar"];
        reject_unknown(jr,
                       {"bandwidth_hz", "pulse_width_s", "pri_s", "carrier_offset_hz"},
                       "scenario.radar");
        cfg.radar.bandwidth_hz = opt_number(jr, "bandwidth_hz", cfg.radar.bandwidth_hz);
        cfg.radar.pulse_width_s =
            opt_number(jr, "pulse_width_s", cfg.radar.pulse_width_s);
        cfg.radar.pri_s = opt_number(jr, "pri_s", cfg.radar.pri_s);
        cfg.radar.carrier_offset_hz =
            opt_number(jr, "carrier_offset_hz", cfg.radar.carrier_offset_hz);
    }
    if (j.contains("integration_counts")) {
        if (!j["integration_counts"].is_array())
            throw ConfigError("scenario: integration_counts must be an array");
        cfg.integration_counts.clear();
        for (const json& v : j["integration_counts"])
            cfg.integration_counts.push_back(v.get<int>());
        if (cfg.integration_counts.empty())
            throw ConfigError("scenario: integration_counts is empty");
    }
    if (j.contains("jammer")) {
        const json& jj = j["jammer"];
        reject_unknown(jj, {"num_samples", "qcqp_depth_db", "design_seed"},
                       "scenario.jammer");
        cfg.jam_len =
            static_cast<std::size_t>(opt_number(jj, "num_samples", cfg.jam_len));
        cfg.qcqp_depth_db = opt_number(jj, "qcqp_depth_db", cfg.qcqp_depth_db);
        if (jj.contains("design_seed"))
            cfg.design_seed = jj["design_seed"].get<std::uint64_t>();
    }
    if (j.contains("bands")) {
        auto specs = parse_bands(j["bands"], "scenario");
        const double e = std::pow(10.0, -cfg.qcqp_depth_db / 10.0);
        cfg.bands.clear();
        for (const auto& b : specs) {
            const double eb = b.depth_db ? std::pow(10.0, -*b.depth_db / 10.0) : e;
            cfg.bands.push_back(StopBand::from_hz(b.lo_hz, b.hi_hz, cfg.sample_rate, eb));
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    return parse_scenario_config(slurp(path));
}

}  // namespace notchwave
