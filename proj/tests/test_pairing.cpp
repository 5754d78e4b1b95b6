// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "agp/cli.hpp"
#include "agp/oracle.hpp"
#include "agp/pairing.hpp"
#include "agp/qasm.hpp"
#include "agp/rdm.hpp"

using namespace agp;
using Letter = PauliString::Letter;

namespace {

constexpr double kTol = 1e-12;

cplx coefficient_of(const PauliSum& sum, const PauliString& target) {
    for (const auto& [c, str] : sum) {
        if (str.same_letters(target)) return c * str.phase();
    }
    return 0.0;
}

std::vector<Histogram> exact_histograms(const StateVector& state,
                                        const std::vector<MeasurementSetting>& settings) {
    std::vector<Histogram> out;
    out.reserve(settings.size());
    for (const auto& s : settings) {
        out.push_back(exact_outcome_probabilities(state, s.rotation));
    }
    return out;
}

StateVector all_ones_state(int r) {
    StateVector s = new_zero_state(r);
    for (int q = 1; q <= r; ++q) s.apply(Gate::x(q));
    return s;
}

}  // namespace

TEST_CASE("bare pair creation expands into four strings") {
    const PauliSum ops = jw_pair_creation(PairIndex(1), 2, false);
    REQUIRE(ops.size() == 4);
    CHECK(std::abs(coefficient_of(ops, PauliString::from_letters(
                                           2, {{1, Letter::X}, {2, Letter::X}})) -
                   cplx(0.25, 0.0)) < kTol);
    CHECK(std::abs(coefficient_of(ops, PauliString::from_letters(
                                           2, {{1, Letter::Y}, {2, Letter::X}})) -
                   cplx(0.0, -0.25)) < kTol);
    CHECK(std::abs(coefficient_of(ops, PauliString::from_letters(
                                           2, {{1, Letter::X}, {2, Letter::Y}})) -
                   cplx(0.0, -0.25)) < kTol);
    CHECK(std::abs(coefficient_of(ops, PauliString::from_letters(
                                           2, {{1, Letter::Y}, {2, Letter::Y}})) -
                   cplx(-0.25, 0.0)) < kTol);
}

TEST_CASE("string and bare pair creation differ by a global sign") {
    // The Jordan-Wigner string of a+_{2p} crosses qubit 2p-1, so the full
    // image is -1 times the bare two-qubit raising product for every pair.
    for (int r : {2, 4, 6, 8}) {
        for (int p = 1; p <= r / 2; ++p) {
            const auto with = dense_pauli_sum(jw_pair_creation(PairIndex(p), r, true), r);
            const auto without =
                dense_pauli_sum(jw_pair_creation(PairIndex(p), r, false), r);
            CHECK((with + without).cwiseAbs().maxCoeff() < kTol);
        }
    }
}

TEST_CASE("both pair creation images act on the vacuum as a pair filler") {
    const int r = 4;
    for (bool with_strings : {false, true}) {
        const auto ops = jw_pair_creation(PairIndex(2), r, with_strings);
        const auto dense = dense_pauli_sum(ops, r);
        Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(16);
        vac(0) = 1.0;
        const Eigen::VectorXcd out = dense * vac;
        // Pair 2 doubly occupied is basis index 0b1100.
        CHECK(std::abs(std::abs(out(12)) - 1.0) < kTol);
        CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("hopper expansion structure") {
    const auto real = pauli_expansion_pair_hopper(PairIndex(1), PairIndex(2),
                                                  Component::Real, 4);
    REQUIRE(real.size() == 8);
    double abs_sum = 0.0;
    for (const auto& [c, str] : real) {
        CHECK(std::abs(std::abs(c) - 0.125) < kTol);
        abs_sum += std::abs(c);
        const auto letters = str.letters();
        REQUIRE(letters.size() == 4);
        int y_count = 0;
        for (const auto& [q, l] : letters) {
            CHECK(l != Letter::Z);
            if (l == Letter::Y) ++y_count;
        }
        CHECK(y_count % 2 == 0);
    }
    CHECK(abs_sum == doctest::Approx(1.0).epsilon(1e-12));

    const auto xxxx = PauliString::from_letters(
        4, {{1, Letter::X}, {2, Letter::X}, {3, Letter::X}, {4, Letter::X}});
    bool found = false;
    for (const auto& [c, str] : real) {
        if (str.same_letters(xxxx)) {
            found = true;
            CHECK(c == doctest::Approx(0.125).epsilon(1e-12));
        }
    }
    CHECK(found);

    const auto imag = pauli_expansion_pair_hopper(PairIndex(1), PairIndex(2),
                                                  Component::Imag, 4);
    REQUIRE(imag.size() == 8);
    for (const auto& [c, str] : imag) {
        CHECK(std::abs(std::abs(c) - 0.125) < kTol);
        int y_count = 0;
        for (const auto& [q, l] : str.letters()) {
            if (l == Letter::Y) ++y_count;
        }
        CHECK(y_count % 2 == 1);
    }

    CHECK_THROWS_AS(
        pauli_expansion_pair_hopper(PairIndex(2), PairIndex(2), Component::Real, 4),
        std::invalid_argument);
}

TEST_CASE("hopper expansions match the dense fermionic operators") {
    for (int r : {4, 6}) {
        const int m = r / 2;
        for (int p = 1; p <= m; ++p) {
            for (int q = p + 1; q <= m; ++q) {
                for (Component comp : {Component::Real, Component::Imag}) {
                    const auto expansion =
                        pauli_expansion_pair_hopper(PairIndex(p), PairIndex(q), comp, r);
                    CHECK(expansion_matches_dense(expansion, PairIndex(p), PairIndex(q),
                                                  comp, r, kTol));
                }
            }
        }
    }
}

TEST_CASE("real hopper expectation on the ensemble state") {
    const StateVector agp = prepare_agp(4);
    cplx acc = 0.0;
    for (const auto& [c, str] :
         pauli_expansion_pair_hopper(PairIndex(1), PairIndex(2), Component::Real, 4)) {
        acc += c * expectation(agp, str);
    }
    CHECK(acc.real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(acc.imag()) < kTol);
}

TEST_CASE("diagonal pair occupation") {
    const auto ops = diagonal_pair_occupation(PairIndex(1), 4);
    REQUIRE(ops.size() == 4);
    for (const auto& [c, str] : ops) CHECK(std::abs(std::abs(c) - 0.25) < kTol);

    auto value = [&](const StateVector& s, int pair) {
        cplx acc = 0.0;
        for (const auto& [c, str] : diagonal_pair_occupation(PairIndex(pair), 4)) {
            acc += c * expectation(s, str);
        }
        return acc.real();
    };
    CHECK(value(new_zero_state(4), 1) == doctest::Approx(0.0));
    CHECK(value(prepare_agp(4), 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(value(prepare_agp(4), 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(value(all_ones_state(4), 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("setting plan counts") {
    CHECK(plan_settings(2).size() == 1);
    CHECK(plan_settings(4).size() == 3);
    CHECK(plan_settings(14).size() == 43);
    CHECK_THROWS_AS(plan_settings(3), std::invalid_argument);
}

TEST_CASE("decode contract") {
    for (const auto& setting : plan_settings(6)) {
        for (int nib = 0; nib < 16; ++nib) {
            const DecodeEntry& d = setting.decode[nib];
            CHECK(d.local_particles >= 0);
            CHECK(d.local_particles <= 4);
            if (d.eigenvalue != 0) CHECK(d.local_particles == 2);
        }
        for (const Gate& g : setting.rotation.gates) {
            CHECK((g.kind == Gate::Kind::H || g.kind == Gate::Kind::X ||
                   g.kind == Gate::Kind::Z || g.kind == Gate::Kind::S ||
                   g.kind == Gate::Kind::Cnot || g.kind == Gate::Kind::Ch));
        }
    }
}

TEST_CASE("rotation maps the aligned basis to decode classes") {
    // Pre-rotation aligned states of pairs (1, 2) in a 4-qubit register:
    // vacuum, hopper eigenvectors, both pairs full. Each must land on one
    // computational outcome whose decode matches the pre-rotation content.
    const auto settings = plan_settings(4);
    const MeasurementSetting& real = settings[1];
    REQUIRE(real.pair_p == 1);
    REQUIRE(real.component == Component::Real);

    auto rotated_single_outcome = [&](const StateVector& s,
                                      const MeasurementSetting& setting) {
        StateVector rotated = s;
        rotated.apply(setting.rotation);
        std::uint64_t found = 0;
        int nonzero = 0;
        for (std::uint64_t b = 0; b < rotated.dim(); ++b) {
            if (std::abs(rotated.amplitude(b)) > 1e-9) {
                ++nonzero;
                found = b;
            }
        }
        REQUIRE(nonzero == 1);
        return found;
    };

    const double inv = 1.0 / std::numbers::sqrt2;

    StateVector vplus = new_zero_state(4);
    vplus.set_amplitude(0, 0.0);
    vplus.set_amplitude(3, inv);
    vplus.set_amplitude(12, inv);
    const std::uint64_t o_plus = rotated_single_outcome(vplus, real);
    CHECK(real.decode[o_plus].eigenvalue == 1);
    CHECK(real.decode[o_plus].local_particles == 2);

    StateVector vminus = new_zero_state(4);
    vminus.set_amplitude(0, 0.0);
    vminus.set_amplitude(3, inv);
    vminus.set_amplitude(12, -inv);
    const std::uint64_t o_minus = rotated_single_outcome(vminus, real);
    CHECK(real.decode[o_minus].eigenvalue == -1);
    CHECK(real.decode[o_minus].local_particles == 2);

    const std::uint64_t o_empty =
        rotated_single_outcome(new_zero_state(4), real);
    CHECK(real.decode[o_empty].eigenvalue == 0);
    CHECK(real.decode[o_empty].local_particles == 0);

    const std::uint64_t o_full = rotated_single_outcome(all_ones_state(4), real);
    CHECK(real.decode[o_full].eigenvalue == 0);
    CHECK(real.decode[o_full].local_particles == 4);

    // Imaginary component: eigenvectors carry the phase i.
    const MeasurementSetting& imag = settings[2];
    REQUIRE(imag.component == Component::Imag);
    StateVector wplus = new_zero_state(4);
    wplus.set_amplitude(0, 0.0);
    wplus.set_amplitude(3, inv);
    wplus.set_amplitude(12, cplx(0.0, inv));
    const std::uint64_t o_wplus = rotated_single_outcome(wplus, imag);
    CHECK(imag.decode[o_wplus].eigenvalue == 1);
}

TEST_CASE("entry estimation on exact Bell-pair probabilities") {
    const StateVector agp = prepare_agp(4);
    const auto settings = plan_settings(4);
    const auto hists = exact_histograms(agp, settings);

    // No filter: K_12 = 1/4 + 0i.
    const EntryEstimate real = estimate_entry(hists[1], settings[1]);
    const EntryEstimate imag = estimate_entry(hists[2], settings[2]);
    CHECK(real.value.real() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(imag.value.imag()) < kTol);

    // Two-particle sector: K_12 = 1/2.
    const EntryEstimate filtered = estimate_entry(hists[1], settings[1], 2);
    CHECK(filtered.value.real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(filtered.retained == doctest::Approx(0.5).epsilon(1e-12));

    // Odd filters retain nothing on a paired state.
    const EntryEstimate odd = estimate_entry(hists[1], settings[1], 3);
    CHECK(odd.empty_sector);
    const EntryEstimate odd_diag = estimate_entry(hists[0], settings[0], 3, 1);
    CHECK(odd_diag.empty_sector);
}

TEST_CASE("estimator consistency with exact expectations") {
    for (int r : {2, 4, 6}) {
        const StateVector agp = prepare_agp(r);
        const auto settings = plan_settings(r);
        const auto hists = exact_histograms(agp, settings);
        const GeminalMatrix from_hist =
            geminal_from_histograms(r, settings, hists, std::nullopt);
        const GeminalMatrix exact = assemble_exact(agp);
        CHECK((from_hist.entries() - exact.entries()).cwiseAbs().maxCoeff() < kTol);
    }
}

TEST_CASE("post-selection equivalence against projected expectations") {
    for (int r : {4, 6, 8}) {
        const StateVector agp = prepare_agp(r);
        const auto settings = plan_settings(r);
        const auto hists = exact_histograms(agp, settings);
        for (int n = 0; n <= r; n += 2) {
            const Projection proj = project_particle_number(agp, n);
            REQUIRE(proj.weight > 0.0);
            const GeminalMatrix from_hist =
                geminal_from_histograms(r, settings, hists, n);
            const GeminalMatrix exact = assemble_exact(proj.state);
            CHECK((from_hist.entries() - exact.entries()).cwiseAbs().maxCoeff() < kTol);
        }
    }
}

TEST_CASE("openqasm export of the Bell preparation") {
    const Circuit prep = agp_prep_circuit(2);
    const std::string text = export_circuit_text(prep, {1, 2});
    CHECK(text ==
          "OPENQASM 2.0;\n"
          "include \"qelib1.inc\";\n"
          "qreg q[2];\n"
          "creg c[2];\n"
          "h q[0];\n"
          "cx q[0],q[1];\n"
          "measure q[0] -> c[0];\n"
          "measure q[1] -> c[1];\n");
    CHECK(text == export_circuit_text(prep, {1, 2}));
}

TEST_CASE("openqasm export corner cases") {
    const std::string empty = export_circuit_text(Circuit(1), {1});
    CHECK(empty ==
          "OPENQASM 2.0;\n"
          "include \"qelib1.inc\";\n"
          "qreg q[1];\n"
          "creg c[1];\n"
          "measure q[0] -> c[0];\n");

    const Circuit prep14 = agp_prep_circuit(14);
    const std::string text = export_circuit_text(prep14, {});
    int gate_lines = 0;
    for (std::size_t at = text.find('\n'); at != std::string::npos;
         at = text.find('\n', at + 1)) {
        const std::size_t start = at + 1;
        if (text.compare(start, 2, "h ") == 0 || text.compare(start, 3, "cx ") == 0) {
            ++gate_lines;
        }
    }
    CHECK(gate_lines == 14);

    Circuit dense(2);
    dense.append(Gate::unitary1(1, {cplx(0.0), cplx(1.0), cplx(1.0), cplx(0.0)}));
    CHECK_THROWS_AS(export_circuit_text(dense, {1}), std::invalid_argument);

    Circuit rot(4);
    rot.append(Gate::ch(1, 3));
    CHECK(export_circuit_text(rot, {1}).find("ch q[0],q[2];\n") != std::string::npos);
}
