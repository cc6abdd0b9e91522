#include <filesystem>

#include "cli_common.hpp"
#include "notchwave/coexistence.hpp"

namespace notchwave::cli {

namespace {

void write_report(const CoexistenceReport& rep, const std::string& out_dir,
                  double sample_rate) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    // Table-shaped summary: one metric per row, one jammer type per column
    {
        CsvWriter csv(out_dir + "/coexistence_table.csv");
        std::vector<std::string> head = {"metric"};
        for (const JammerOutcome& j : rep.jammers) head.push_back(j.name);
        csv.row(head);
        std::vector<std::string> row = {"error_rate_pct"};
        for (const JammerOutcome& j : rep.jammers)
            row.push_back(fmt_num(j.error_rate_pct, 6));
        csv.row(row);
        if (!rep.jammers.empty())
            for (const auto& [m, v] : rep.jammers.front().sinr_db) {
                std::vector<std::string> r = {"sinr_db_m" + std::to_string(m)};
                for (const JammerOutcome& j : rep.jammers)
                    r.push_back(fmt_num(j.sinr_db.at(m), 6));
                csv.row(r);
            }
    }

    for (const JammerOutcome& j : rep.jammers) {
        {
            CsvWriter csv(out_dir + "/scatter_" + j.name + ".csv");
            csv.row({"a_i", "a_q"});
            for (const auto& [ai, aq] : j.scatter)
                csv.row({fmt_num(ai, 8), fmt_num(aq, 8)});
        }
        write_psd_csv(out_dir + "/psd_" + j.name + ".csv", {{"rx", j.rx_psd}},
                      sample_rate);
    }
}

}  // namespace

int run_simulate(const std::string& scenario_path, const std::string& out_dir,
                 int trials_override, int threads_override) {
    ScenarioConfig cfg;
    if (!scenario_path.empty()) cfg = load_scenario_config(scenario_path);
    if (trials_override > 0) cfg.trials = trials_override;
    if (threads_override > 0) cfg.threads = threads_override;
    cfg.validate();

    const CoexistenceReport rep = run_scenario(cfg);
    write_report(rep, out_dir, cfg.sample_rate);

    for (const JammerOutcome& j : rep.jammers) {
        std::printf("%-10s error_rate=%6.2f%%", j.name.c_str(), j.error_rate_pct);
        for (const auto& [m, v] : j.sinr_db) std::printf("  sinr(M=%d)=%7.2f dB", m, v);
        std::printf("\n");
    }
    return 0;
}

}  // namespace notchwave::cli
