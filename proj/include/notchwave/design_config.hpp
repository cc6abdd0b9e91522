#pragma once

#include <optional>
#include <string>
#include <vector>

#include "notchwave/coexistence.hpp"
#include "notchwave/design_qcqp.hpp"
#include "notchwave/spectral.hpp"

namespace notchwave {

// JSON design request. Bands are quoted in Hz relative to the band center,
// mirroring how emitter lists arrive; depth_db may be null to request a
// full null on that band. Unknown keys are rejected at every level.
struct DesignConfig {
    double sample_rate = 0.0;
    std::size_t num_samples = 0;
    std::string method;  // "proj" or "qcqp"
    std::size_t block_len = 1000;
    std::size_t overlap = 500;
    struct BandSpec {
        double lo_hz = 0.0;
        double hi_hz = 0.0;
        std::optional<double> depth_db;  // null -> zero tolerable energy
    };
    std::vector<BandSpec> bands;
    std::uint64_t seed = 1;
    SolverConfig solver;

    std::vector<StopBand> stop_bands() const;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

DesignConfig parse_design_config(const std::string& json_text);
DesignConfig load_design_config(const std::string& path);

ScenarioConfig parse_scenario_config(const std::string& json_text);
ScenarioConfig load_scenario_config(const std::string& path);

}  // namespace notchwave
