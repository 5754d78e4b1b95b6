// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agp/pairing.hpp"
#include "agp/rdm.hpp"
#include "agp/statevector.hpp"

namespace agp {

struct RunConfig {
    enum class Mode { Exact, Shots };
    enum class Sectors { Ensemble, AllEvenN, Explicit };
    enum class Format { Csv, Json };

    std::vector<int> r_list;
    Mode mode = Mode::Exact;
    long shots = 8192;
    std::optional<NoiseModel> noise;
    std::uint64_t seed = 0;
    Sectors sectors = Sectors::Ensemble;
    std::vector<int> sector_list;
    Format format = Format::Csv;
    std::string out_path;  ///< empty means stdout
    int threads = 1;       ///< 0 picks the hardware count

    void validate() const;
};

struct SweepResult {
    std::vector<CondensationReport> rows;
    int warnings = 0;
};

/// One row per (r, sector): prepare, measure (exact or sampled tomography),
/// diagonalize, verdict. Zero-weight sectors come back flagged unavailable.
/// Row seeds derive as seed + row index, so results are independent of the
/// parallel schedule.
SweepResult cmd_sweep(const RunConfig& config);

std::string render_csv(const SweepResult& result);
std::string render_json(const SweepResult& result);

/// Writes .qasm files for the preparation circuit ("prep") or every
/// measurement-setting rotation with the preparation prepended ("settings").
/// Returns the written file names in order.
std::vector<std::string> cmd_export(int num_qubits, const std::string& what,
                                    const std::string& out_dir);

struct VerifyOptions {
    int r_max = 12;
};

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

/// Oracle cross-check suite: operator equalities, expansion fidelity, trace
/// laws, closed-form versus brute force, sector decomposition and the
/// orbital-embedding spectrum relation.
VerifyReport run_verification(const VerifyOptions& options);

/// Sampled histograms for every planned setting, preparation included in the
/// sampled circuit so gate noise also affects it. Setting seeds derive
/// deterministically from the given seed.
std::vector<Histogram> collect_histograms(int num_qubits, long shots,
                                          const std::optional<NoiseModel>& noise,
                                          std::uint64_t seed);

/// Estimate every geminal entry from per-setting histograms (ensemble when
/// sector is empty, post-selected otherwise) and assemble the matrix.
GeminalMatrix geminal_from_histograms(int num_qubits,
                                      const std::vector<MeasurementSetting>& settings,
                                      const std::vector<Histogram>& histograms,
                                      std::optional<int> sector);

}  // namespace agp
