// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "agp/cli.hpp"

namespace {

// Accepts "2..14" (every even value in the range), "2,4,6" or "8".
std::vector<int> parse_r_list(const std::string& text) {
    std::vector<int> out;
    const auto range_at = text.find("..");
    if (range_at != std::string::npos) {
        const int lo = std::stoi(text.substr(0, range_at));
        const int hi = std::stoi(text.substr(range_at + 2));
        for (int r = lo + (lo % 2); r <= hi; r += 2) out.push_back(r);
        return out;
    }
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

int write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open " << path << "\n";
        return 1;
    }
    f << text;
    return f ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-pair register simulation and geminal 2-RDM analysis"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Condensation reports over r and sectors");
    std::string r_text = "2..14";
    std::string sectors_text = "ensemble";
    std::string mode_text = "exact";
    std::string format_text = "csv";
    std::string out_path;
    std::string noise_preset;
    long shots = 8192;
    std::uint64_t seed = 0;
    int threads = 1;
    double p1 = -1.0, p2 = -1.0, readout01 = -1.0, readout10 = -1.0;
    sweep->add_option("--r", r_text, "Qubit counts: '2..14', '2,4,8' or one value");
    sweep->add_option("--sectors", sectors_text,
                      "'ensemble', 'all' (every even N) or an explicit list '0,2,4'");
    sweep->add_option("--mode", mode_text, "'exact' or 'shots'");
    sweep->add_option("--shots", shots, "Shot count for shots mode");
    sweep->add_option("--seed", seed, "Sampling seed");
    sweep->add_option("--threads", threads, "Worker threads (0 = hardware)");
    sweep->add_option("--noise-p1", p1, "Depolarizing probability per 1-qubit gate");
    sweep->add_option("--noise-p2", p2, "Depolarizing probability per 2-qubit gate");
    sweep->add_option("--noise-readout01", readout01, "P(read 0 as 1)");
    sweep->add_option("--noise-readout10", readout10, "P(read 1 as 0)");
    sweep->add_option("--noise-preset", noise_preset,
                      "'device-like' sets p1=0.002 p2=0.02 readout=0.03");
    sweep->add_option("--format", format_text, "'csv' or 'json'");
    sweep->add_option("--out", out_path, "Output path (default stdout)");

    // export
    auto* exp = app.add_subcommand("export", "Write OpenQASM 2.0 circuit files");
    int export_r = 2;
    std::string what = "prep";
    std::string export_dir = ".";
    exp->add_option("--r", export_r, "Qubit count")->required();
    exp->add_option("--what", what, "'prep' or 'settings'");
    exp->add_option("--out", export_dir, "Output directory");

    // verify
    auto* verify = app.add_subcommand("verify", "Run the oracle cross-check suite");
    int r_max = 12;
    verify->add_option("--r-max", r_max, "Largest register in the checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) {
            agp::RunConfig config;
            config.r_list = parse_r_list(r_text);
            if (sectors_text == "ensemble") {
                config.sectors = agp::RunConfig::Sectors::Ensemble;
            } else if (sectors_text == "all") {
                config.sectors = agp::RunConfig::Sectors::AllEvenN;
            } else {
                config.sectors = agp::RunConfig::Sectors::Explicit;
                config.sector_list = parse_r_list(sectors_text);
            }
            if (mode_text == "exact") {
                config.mode = agp::RunConfig::Mode::Exact;
            } else if (mode_text == "shots") {
                config.mode = agp::RunConfig::Mode::Shots;
            } else {
                std::cerr << "error: mode must be 'exact' or 'shots'\n";
                return 2;
            }
            config.shots = shots;
            config.seed = seed;
            config.threads = threads;
            if (format_text == "csv") {
                config.format = agp::RunConfig::Format::Csv;
            } else if (format_text == "json") {
                config.format = agp::RunConfig::Format::Json;
            } else {
                std::cerr << "error: format must be 'csv' or 'json'\n";
                return 2;
            }
            config.out_path = out_path;
            agp::NoiseModel noise;
            bool any_noise = false;
            if (noise_preset == "device-like") {
                noise = agp::NoiseModel{0.002, 0.02, 0.03, 0.03};
                any_noise = true;
            } else if (!noise_preset.empty()) {
                std::cerr << "error: unknown noise preset\n";
                return 2;
            }
            const std::pair<double, double*> overrides[] = {
                {p1, &noise.p1},
                {p2, &noise.p2},
                {readout01, &noise.readout01},
                {readout10, &noise.readout10}};
            for (const auto& [value, field] : overrides) {
                if (value >= 0.0) {
                    *field = value;
                    any_noise = true;
                }
            }
            if (any_noise) config.noise = noise;

            const agp::SweepResult result = agp::cmd_sweep(config);
            if (result.warnings > 0) {
                std::cerr << "warning: " << result.warnings
                          << " sector row(s) unavailable (zero weight)\n";
            }
            const std::string text = config.format == agp::RunConfig::Format::Csv
                                         ? agp::render_csv(result)
                                         : agp::render_json(result);
            return write_output(text, out_path);
        }

        if (exp->parsed()) {
            if (export_r < 2 || export_r % 2 != 0) {
                std::cerr << "error: --r must be even and >= 2\n";
                return 2;
            }
            const auto files = agp::cmd_export(export_r, what, export_dir);
            for (const auto& f : files) std::cout << f << "\n";
            return 0;
        }

        if (verify->parsed()) {
            const agp::VerifyReport report =
                agp::run_verification(agp::VerifyOptions{r_max});
            for (const auto& check : report.checks) {
                std::cout << (check.pass ? "PASS  " : "FAIL  ") << check.name << " ("
                          << check.detail << ")\n";
            }
            if (!report.all_pass()) {
                for (const auto& check : report.checks) {
                    if (!check.pass) {
                        std::cout << "first failing identity: " << check.name << "\n";
                        break;
                    }
                }
                return 1;
            }
            std::cout << "all checks passed\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
