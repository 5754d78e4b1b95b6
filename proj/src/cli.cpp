// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include "agp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "agp/oracle.hpp"
#include "agp/qasm.hpp"

namespace agp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<std::optional<int>> sectors_for(const RunConfig& config, int r) {
    std::vector<std::optional<int>> out;
    switch (config.sectors) {
        case RunConfig::Sectors::Ensemble:
            out.push_back(std::nullopt);
            break;
        case RunConfig::Sectors::AllEvenN:
            for (int n = 0; n <= r; n += 2) out.push_back(n);
            break;
        case RunConfig::Sectors::Explicit:
            for (int n : config.sector_list) out.push_back(n);
            break;
    }
    return out;
}

CondensationReport unavailable_row(int r, std::optional<int> sector) {
    CondensationReport row;
    row.num_qubits = r;
    row.sector = sector;
    row.unavailable = true;
    return row;
}

CondensationReport empty_register_row(int r, std::optional<int> sector) {
    // r = 0 has no pairs; report lambda 0 rather than erroring.
    CondensationReport row;
    row.num_qubits = r;
    row.sector = sector;
    row.lambda = 0.0;
    row.condensed = false;
    if (sector) row.bound = 0.0;
    return row;
}

CondensationReport exact_row(int r, std::optional<int> sector) {
    if (sector && *sector > r) return unavailable_row(r, sector);
    if (r == 0) {
        if (sector && *sector != 0) return unavailable_row(r, sector);
        return empty_register_row(r, sector);
    }
    StateVector state = prepare_agp(r);
    if (sector) {
        Projection projected = project_particle_number(state, *sector);
        if (projected.weight <= 0.0) return unavailable_row(r, sector);
        state = std::move(projected.state);
    }
    return condensation_verdict(r, sector, assemble_exact(state));
}

CondensationReport shots_row(int r, std::optional<int> sector, const RunConfig& config,
                             std::uint64_t row_seed) {
    if (sector && *sector > r) return unavailable_row(r, sector);
    if (r == 0) {
        if (sector && *sector != 0) return unavailable_row(r, sector);
        return empty_register_row(r, sector);
    }
    const auto settings = plan_settings(r);
    const auto histograms = collect_histograms(r, config.shots, config.noise, row_seed);
    try {
        GeminalMatrix k = geminal_from_histograms(r, settings, histograms, sector);
        return condensation_verdict(r, sector, k);
    } catch (const SectorUnavailableError&) {
        return unavailable_row(r, sector);
    }
}

}  // namespace

void RunConfig::validate() const {
    if (r_list.empty()) throw std::invalid_argument("sweep: empty r list");
    for (int r : r_list) {
        if (r < 0 || r % 2 != 0) {
            throw std::invalid_argument("sweep: r values must be even and >= 0");
        }
        if (r > max_qubits()) throw std::length_error("sweep: r exceeds capacity");
    }
    if (mode == Mode::Shots && shots < 1) {
        throw std::invalid_argument("sweep: shots mode requires shots >= 1");
    }
    if (sectors == Sectors::Explicit) {
        for (int n : sector_list) {
            if (n < 0) throw std::invalid_argument("sweep: negative sector");
        }
    }
    if (noise) noise->validate();
    if (threads < 0) throw std::invalid_argument("sweep: negative thread count");
}

std::vector<Histogram> collect_histograms(int num_qubits, long shots,
                                          const std::optional<NoiseModel>& noise,
                                          std::uint64_t seed) {
    const auto settings = plan_settings(num_qubits);
    const Circuit prep = agp_prep_circuit(num_qubits);
    const StateVector vacuum = new_zero_state(num_qubits);
    std::vector<Histogram> out;
    out.reserve(settings.size());
    const std::uint64_t stream = splitmix64(seed);
    for (std::size_t i = 0; i < settings.size(); ++i) {
        Circuit full = prep;
        full.extend(settings[i].rotation);
        out.push_back(sample_shots(vacuum, full, shots, noise,
                                   splitmix64(stream + i)));
    }
    return out;
}

GeminalMatrix geminal_from_histograms(int num_qubits,
                                      const std::vector<MeasurementSetting>& settings,
                                      const std::vector<Histogram>& histograms,
                                      std::optional<int> sector) {
    if (settings.size() != histograms.size()) {
        throw std::invalid_argument("geminal_from_histograms: size mismatch");
    }
    const int m = num_qubits / 2;
    std::map<std::pair<int, int>, EstimatedEntry> merged;
    for (std::size_t i = 0; i < settings.size(); ++i) {
        const MeasurementSetting& s = settings[i];
        if (s.is_diagonal()) {
            for (int p = 1; p <= m; ++p) {
                const EntryEstimate est = estimate_entry(histograms[i], s, sector, p);
                EstimatedEntry e;
                e.p = e.q = p;
                e.value = est.value;
                e.se_re = est.se_re;
                e.empty_sector = est.empty_sector;
                merged[{p, p}] = e;
            }
        } else {
            const EntryEstimate est = estimate_entry(histograms[i], s, sector);
            auto& e = merged[{s.pair_p, s.pair_q}];
            e.p = s.pair_p;
            e.q = s.pair_q;
            e.value += est.value;
            e.empty_sector = e.empty_sector || est.empty_sector;
            if (s.component == Component::Real) e.se_re = est.se_re;
            else e.se_im = est.se_im;
        }
    }
    std::vector<EstimatedEntry> entries;
    entries.reserve(merged.size());
    for (auto& [key, e] : merged) {
        (void)key;
        entries.push_back(e);
    }
    return assemble_from_shots(m, entries);
}

SweepResult cmd_sweep(const RunConfig& config) {
    config.validate();

    struct RowSpec {
        int r;
        std::optional<int> sector;
    };
    std::vector<RowSpec> specs;
    for (int r : config.r_list) {
        for (const auto& sector : sectors_for(config, r)) {
            specs.push_back(RowSpec{r, sector});
        }
    }

    std::vector<CondensationReport> rows(specs.size());
    auto run_row = [&](std::size_t idx) {
        const RowSpec& spec = specs[idx];
        if (config.mode == RunConfig::Mode::Exact) {
            rows[idx] = exact_row(spec.r, spec.sector);
        } else {
            rows[idx] = shots_row(spec.r, spec.sector, config, config.seed + idx);
        }
    };

    int threads = config.threads;
    if (threads == 0) threads = int(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, int(specs.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) run_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t idx = next.fetch_add(1);
                    if (idx >= specs.size()) return;
                    run_row(idx);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    SweepResult result;
    result.rows = std::move(rows);
    for (const auto& row : result.rows) {
        if (row.unavailable) ++result.warnings;
    }
    return result;
}

std::string render_csv(const SweepResult& result) {
    std::ostringstream os;
    os << CondensationReport::csv_header() << "\n";
    for (const auto& row : result.rows) os << row.csv_row() << "\n";
    return os.str();
}

std::string render_json(const SweepResult& result) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (i) os << ",";
        os << "\n  " << result.rows[i].to_json();
    }
    os << "\n]\n";
    return os.str();
}

std::vector<std::string> cmd_export(int num_qubits, const std::string& what,
                                    const std::string& out_dir) {
    if (num_qubits < 2 || num_qubits % 2 != 0) {
        throw std::invalid_argument("export: r must be even and >= 2");
    }
    if (what != "prep" && what != "settings") {
        throw std::invalid_argument("export: what must be 'prep' or 'settings'");
    }
    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::vector<int> all_qubits(num_qubits);
    for (int q = 1; q <= num_qubits; ++q) all_qubits[q - 1] = q;
    const Circuit prep = agp_prep_circuit(num_qubits);

    auto write_file = [&](const std::string& name, const std::string& text) {
        const std::filesystem::path path = dir / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw std::runtime_error("export: cannot open " + path.string());
        }
        f << text;
        if (!f) {
            throw std::runtime_error("export: write failed for " + path.string());
        }
    };

    std::vector<std::string> written;
    if (what == "prep") {
        const std::string name = "agp_r" + std::to_string(num_qubits) + "_prep.qasm";
        write_file(name, export_circuit_text(prep, all_qubits));
        written.push_back(name);
        return written;
    }
    for (const MeasurementSetting& s : plan_settings(num_qubits)) {
        Circuit full = prep;
        full.extend(s.rotation);
        const std::string name =
            "agp_r" + std::to_string(num_qubits) + "_" + s.label() + ".qasm";
        write_file(name, export_circuit_text(full, all_qubits));
        written.push_back(name);
    }
    return written;
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass; });
}

namespace {

std::string fmt_err(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void add_check(VerifyReport& report, const std::string& name, double err,
               double tol) {
    report.checks.push_back(VerifyCheck{
        name, err <= tol, "max deviation " + fmt_err(err) + " (tol " + fmt_err(tol) + ")"});
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    VerifyReport report;
    const int r_ops = std::min(8, options.r_max);
    const int r_brute = std::min(12, options.r_max);

    // Jordan-Wigner string versus bare pair creation: equal up to a global
    // factor of -1 on every adjacent pair.
    {
        double err = 0.0;
        for (int r = 2; r <= r_ops; r += 2) {
            for (int p = 1; p <= r / 2; ++p) {
                const auto with = dense_pauli_sum(jw_pair_creation(PairIndex(p), r, true), r);
                const auto without =
                    dense_pauli_sum(jw_pair_creation(PairIndex(p), r, false), r);
                err = std::max(err, (with + without).cwiseAbs().maxCoeff());
            }
        }
        add_check(report, "jw-pair-operator-equality", err, 1e-10);
    }

    // Hopper expansions against dense fermionic operators.
    {
        double err = 0.0;
        bool ok = true;
        for (int r = 4; r <= r_ops; r += 2) {
            const int m = r / 2;
            for (int p = 1; p <= m; ++p) {
                for (int q = p + 1; q <= m; ++q) {
                    for (Component comp : {Component::Real, Component::Imag}) {
                        const auto expansion = pauli_expansion_pair_hopper(
                            PairIndex(p), PairIndex(q), comp, r);
                        ok = ok && expansion_matches_dense(expansion, PairIndex(p),
                                                           PairIndex(q), comp, r, 1e-10);
                    }
                }
            }
        }
        report.checks.push_back(VerifyCheck{"pair-hopper-expansion-fidelity", ok,
                                            ok ? "all pair-pairs match dense operators"
                                               : "dense mismatch"});
        (void)err;
    }

    // Diagonal projector expansion against dense n n.
    {
        double err = 0.0;
        for (int r = 2; r <= r_ops; r += 2) {
            for (int p = 1; p <= r / 2; ++p) {
                const Eigen::MatrixXcd na = dense_ladder(2 * p - 1, true, r) *
                                            dense_ladder(2 * p - 1, false, r);
                const Eigen::MatrixXcd nb =
                    dense_ladder(2 * p, true, r) * dense_ladder(2 * p, false, r);
                const auto got =
                    dense_pauli_sum(diagonal_pair_occupation(PairIndex(p), r), r);
                err = std::max(err, (got - na * nb).cwiseAbs().maxCoeff());
            }
        }
        add_check(report, "pair-occupation-expansion", err, 1e-10);
    }

    // Trace law N(N-1) on projected states.
    {
        double err = 0.0;
        for (int r = 2; r <= r_brute; r += 2) {
            const StateVector agp = prepare_agp(r);
            for (int n = 0; n <= r; n += 2) {
                const Projection proj = project_particle_number(agp, n);
                if (proj.weight <= 0.0) continue;
                const TwoRDM rdm = brute_force_2rdm(proj.state);
                err = std::max(err,
                               std::abs(rdm.ordered_pair_trace() - double(n) * (n - 1)));
            }
        }
        add_check(report, "projected-trace-law", err, 1e-10);
    }

    // Antisymmetry and Hermiticity of the brute-force 2-RDM.
    {
        double err = 0.0;
        for (int r : {4, 6}) {
            if (r > r_brute) continue;
            const TwoRDM rdm = brute_force_2rdm(prepare_agp(r));
            const auto& d = rdm.entries();
            err = std::max(err, (d - d.adjoint()).cwiseAbs().maxCoeff());
            for (int p = 1; p <= r; ++p) {
                for (int q = 1; q <= r; ++q) {
                    if (p == q) continue;
                    const int row = TwoRDM::pair_row(p, q, r);
                    const int swapped = TwoRDM::pair_row(q, p, r);
                    err = std::max(err,
                                   (d.row(row) + d.row(swapped)).cwiseAbs().maxCoeff());
                }
            }
        }
        add_check(report, "two-rdm-antisymmetry", err, 1e-12);
    }

    // Closed forms against brute-force eigenvalues.
    {
        double err = 0.0;
        for (int r = 2; r <= r_brute; r += 2) {
            const StateVector agp = prepare_agp(r);
            const GeminalMatrix ens = geminal_block_of(brute_force_2rdm(agp));
            err = std::max(err, std::abs(largest_eigenvalue(ens.entries()).value -
                                         closed_form_lambda(std::nullopt, r)));
            for (int n = 2; n <= r; n += 2) {
                const Projection proj = project_particle_number(agp, n);
                const GeminalMatrix k = geminal_block_of(brute_force_2rdm(proj.state));
                err = std::max(err, std::abs(largest_eigenvalue(k.entries()).value -
                                             closed_form_lambda(n, r)));
            }
        }
        add_check(report, "closed-form-vs-brute-force", err, 1e-10);
    }

    // Cross-module gate: fermionic geminal block equals the qubit-operator
    // assembly, on Bell-pair states and on generic states.
    {
        double err = 0.0;
        for (int r = 2; r <= r_ops; r += 2) {
            const StateVector agp = prepare_agp(r);
            err = std::max(err, (geminal_block_of(brute_force_2rdm(agp)).entries() -
                                 assemble_exact(agp).entries())
                                    .cwiseAbs()
                                    .maxCoeff());
        }
        {
            const int r = 6;
            StateVector state = prepare_agp(r);
            Circuit extra(r);
            extra.append(Gate::s(2));
            extra.append(Gate::h(3));
            extra.append(Gate::cnot(2, 5));
            extra.append(Gate::s(5));
            extra.append(Gate::cnot(1, 4));
            state.apply(extra);
            err = std::max(err, (geminal_block_of(brute_force_2rdm(state)).entries() -
                                 assemble_exact(state).entries())
                                    .cwiseAbs()
                                    .maxCoeff());
        }
        add_check(report, "fermionic-vs-qubit-geminal-block", err, 1e-12);
    }

    // Sector decomposition of the ensemble matrix.
    {
        double err = 0.0;
        for (int r = 2; r <= std::min(14, options.r_max); r += 2) {
            const StateVector agp = prepare_agp(r);
            Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(r / 2, r / 2);
            for (int n = 0; n <= r; n += 2) {
                const Projection proj = project_particle_number(agp, n);
                if (proj.weight <= 0.0) continue;
                acc += proj.weight * assemble_exact(proj.state).entries();
            }
            err = std::max(err,
                           (acc - assemble_exact(agp).entries()).cwiseAbs().maxCoeff());
        }
        add_check(report, "sector-decomposition", err, 1e-12);
    }

    // Orbital embedding doubles the spectrum; the ordered-pair 2-RDM
    // restricted to the paired-geminal rows shows the same factor.
    {
        double err = 0.0;
        for (int r = 2; r <= std::min(14, options.r_max); r += 2) {
            const GeminalMatrix k = assemble_exact(prepare_agp(r));
            const double lk = largest_eigenvalue(k.entries()).value;
            const double lg = largest_eigenvalue(embed_orbital_block(k)).value;
            err = std::max(err, std::abs(lg - 2.0 * lk));
        }
        for (int r = 2; r <= r_ops; r += 2) {
            const StateVector agp = prepare_agp(r);
            const TwoRDM rdm = brute_force_2rdm(agp);
            const int m = r / 2;
            Eigen::MatrixXcd restricted(2 * m, 2 * m);
            std::vector<int> rows;
            for (int p = 1; p <= m; ++p) {
                rows.push_back(TwoRDM::pair_row(2 * p - 1, 2 * p, r));
                rows.push_back(TwoRDM::pair_row(2 * p, 2 * p - 1, r));
            }
            for (std::size_t i = 0; i < rows.size(); ++i) {
                for (std::size_t j = 0; j < rows.size(); ++j) {
                    restricted(i, j) = rdm.entries()(rows[i], rows[j]);
                }
            }
            const double ltop = largest_eigenvalue(restricted).value;
            const double lk =
                largest_eigenvalue(geminal_block_of(rdm).entries()).value;
            err = std::max(err, std::abs(ltop - 2.0 * lk));
        }
        add_check(report, "orbital-embedding-factor-2", err, 1e-10);
    }

    return report;
}

}  // namespace agp
