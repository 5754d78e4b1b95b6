// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "agp/cli.hpp"
#include "agp/rdm.hpp"

using namespace agp;

namespace {

constexpr double kTol = 1e-12;

StateVector all_ones_state(int r) {
    StateVector s = new_zero_state(r);
    for (int q = 1; q <= r; ++q) s.apply(Gate::x(q));
    return s;
}

double sector_lambda_exact(int r, int n) {
    const Projection proj = project_particle_number(prepare_agp(r), n);
    REQUIRE(proj.weight > 0.0);
    return largest_eigenvalue(assemble_exact(proj.state).entries()).value;
}

}  // namespace

TEST_CASE("exact assembly on reference states") {
    const GeminalMatrix agp4 = assemble_exact(prepare_agp(4));
    REQUIRE(agp4.pair_count() == 2);
    CHECK(std::abs(agp4.entries()(0, 0) - cplx(0.5)) < kTol);
    CHECK(std::abs(agp4.entries()(1, 1) - cplx(0.5)) < kTol);
    CHECK(std::abs(agp4.entries()(0, 1) - cplx(0.25)) < kTol);
    CHECK(std::abs(agp4.entries()(1, 0) - cplx(0.25)) < kTol);

    const GeminalMatrix vac = assemble_exact(new_zero_state(4));
    CHECK(vac.entries().cwiseAbs().maxCoeff() < kTol);

    const GeminalMatrix ones = assemble_exact(all_ones_state(4));
    CHECK((ones.entries() - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
          kTol);

    CHECK_THROWS_AS(assemble_exact(new_zero_state(3)), std::invalid_argument);
}

TEST_CASE("exact assembly is Hermitian with the stated traces") {
    for (int r : {6, 10}) {
        const StateVector agp = prepare_agp(r);
        const GeminalMatrix k = assemble_exact(agp);
        CHECK((k.entries() - k.entries().adjoint()).cwiseAbs().maxCoeff() < kTol);
        CHECK(std::abs(k.entries().trace().real() - r / 4.0) < kTol);
        for (int n = 2; n <= r; n += 2) {
            const Projection proj = project_particle_number(agp, n);
            const GeminalMatrix kn = assemble_exact(proj.state);
            CHECK(std::abs(kn.entries().trace().real() - n / 2.0) < kTol);
        }
    }
}

TEST_CASE("sector decomposition of the ensemble matrix") {
    const int r = 6;
    const StateVector agp = prepare_agp(r);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(r / 2, r / 2);
    for (int n = 0; n <= r; n += 2) {
        const Projection proj = project_particle_number(agp, n);
        acc += proj.weight * assemble_exact(proj.state).entries();
    }
    CHECK((acc - assemble_exact(agp).entries()).cwiseAbs().maxCoeff() < kTol);
}

TEST_CASE("assembly from estimated entries") {
    std::vector<EstimatedEntry> entries;
    entries.push_back({1, 1, cplx(0.5, 0.0), 0.01, 0.0, false});
    entries.push_back({2, 2, cplx(0.5, 0.0), 0.01, 0.0, false});
    entries.push_back({1, 2, cplx(0.25, 0.03), 0.02, 0.02, false});
    const GeminalMatrix k = assemble_from_shots(2, entries);
    CHECK(std::abs(k.entries()(1, 0) - std::conj(k.entries()(0, 1))) < kTol);
    CHECK(k.has_errors());
    CHECK(k.stderr_re()(0, 1) == 0.02);

    std::vector<EstimatedEntry> missing = {entries[0], entries[1]};
    CHECK_THROWS_AS(assemble_from_shots(2, missing), std::invalid_argument);

    std::vector<EstimatedEntry> empty = entries;
    empty[2].empty_sector = true;
    CHECK_THROWS_AS(assemble_from_shots(2, empty), SectorUnavailableError);
}

TEST_CASE("shot assembly matches exact assembly statistically") {
    const int r = 6;
    const long shots = 100000;
    const GeminalMatrix exact = assemble_exact(prepare_agp(r));
    const auto settings = plan_settings(r);
    const auto hists = collect_histograms(r, shots, std::nullopt, 21);
    const GeminalMatrix est = geminal_from_histograms(r, settings, hists, std::nullopt);
    for (int p = 0; p < 3; ++p) {
        for (int q = p; q < 3; ++q) {
            const cplx diff = est.entries()(p, q) - exact.entries()(p, q);
            if (p == q) {
                CHECK(std::abs(diff.real()) < 5.0 * est.stderr_re()(p, q));
            } else {
                CHECK(std::abs(diff.real()) < 5.0 * est.stderr_re()(p, q));
                CHECK(std::abs(diff.imag()) < 5.0 * est.stderr_im()(p, q));
            }
        }
    }
}

TEST_CASE("readout confusion biases occupations toward one half") {
    const int r = 4;
    NoiseModel noise;
    noise.readout01 = 0.05;
    noise.readout10 = 0.05;
    const long shots = 200000;
    const auto settings = plan_settings(r);

    // Fully occupied register: exact diagonal entries are 1; confusion
    // pulls the both-bits-read-1 frequency down to (1 - 0.05)^2.
    const Histogram full = sample_shots(all_ones_state(r), settings[0].rotation,
                                        shots, noise, 3);
    const EntryEstimate full_est = estimate_entry(full, settings[0], std::nullopt, 1);
    const double expect_full = 0.95 * 0.95;
    CHECK(full_est.value.real() < 1.0 - 5.0 * full_est.se_re);
    CHECK(std::abs(full_est.value.real() - expect_full) < 5.0 * full_est.se_re);

    // Vacuum: exact diagonal entries are 0, confusion lifts them to 0.05^2.
    const Histogram vac = sample_shots(new_zero_state(r), settings[0].rotation,
                                       shots, noise, 4);
    const EntryEstimate vac_est = estimate_entry(vac, settings[0], std::nullopt, 1);
    const double expect_vac = 0.05 * 0.05;
    CHECK(vac_est.value.real() > 0.0);
    CHECK(std::abs(vac_est.value.real() - expect_vac) < 5.0 * vac_est.se_re);

    // Bell pairs: the off-diagonal coherence shrinks in magnitude.
    const auto hists = collect_histograms(r, shots, noise, 5);
    const GeminalMatrix est = geminal_from_histograms(r, settings, hists, std::nullopt);
    CHECK(std::abs(est.entries()(0, 1)) < 0.22);
}

TEST_CASE("orbital block embedding") {
    const GeminalMatrix identity(Eigen::MatrixXcd::Identity(2, 2));
    const Eigen::MatrixXcd g = embed_orbital_block(identity);
    REQUIRE(g.rows() == 4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g);
    CHECK(solver.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(solver.eigenvalues()(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(solver.eigenvalues()(2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(solver.eigenvalues()(3) == doctest::Approx(2.0).epsilon(1e-12));

    const GeminalMatrix agp4 = assemble_exact(prepare_agp(4));
    CHECK(largest_eigenvalue(embed_orbital_block(agp4)).value ==
          doctest::Approx(1.5).epsilon(1e-10));

    const GeminalMatrix zero(Eigen::MatrixXcd::Zero(2, 2));
    CHECK(embed_orbital_block(zero).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigenvalue doubling of the embedding") {
    for (int r = 2; r <= 14; r += 2) {
        const GeminalMatrix k = assemble_exact(prepare_agp(r));
        const double lk = largest_eigenvalue(k.entries()).value;
        const double lg = largest_eigenvalue(embed_orbital_block(k)).value;
        CHECK(std::abs(lg - 2.0 * lk) < 1e-10);
    }
}

TEST_CASE("largest eigenvalue") {
    CHECK(largest_eigenvalue(Eigen::MatrixXcd::Identity(5, 5)).value ==
          doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXcd half(2, 2);
    half << 0.5, 0.5, 0.5, 0.5;
    CHECK(largest_eigenvalue(half).value == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXcd k(2, 2);
    k << 0.5, 0.25, 0.25, 0.5;
    const EigenResult res = largest_eigenvalue(k);
    CHECK(res.value == doctest::Approx(0.75).epsilon(1e-12));
    const double inv = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(res.vector(0) - cplx(inv)) < 1e-10);
    CHECK(std::abs(res.vector(1) - cplx(inv)) < 1e-10);

    Eigen::MatrixXcd bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(largest_eigenvalue(bad), std::invalid_argument);
}

TEST_CASE("finite-rank pairing bound") {
    CHECK(yang_coleman_bound(2, 4) == doctest::Approx(2.0));
    CHECK(yang_coleman_bound(2, 14) == doctest::Approx(2.0));
    CHECK(yang_coleman_bound(8, 14) == doctest::Approx(32.0 / 7.0).epsilon(1e-12));
    CHECK(yang_coleman_bound(14, 14) == doctest::Approx(2.0));
    CHECK_THROWS_AS(yang_coleman_bound(3, 14), std::invalid_argument);
    CHECK_THROWS_AS(yang_coleman_bound(0, 14), std::invalid_argument);
    CHECK_THROWS_AS(yang_coleman_bound(16, 14), std::invalid_argument);
}

TEST_CASE("bound saturation on ideal substates") {
    for (int r = 2; r <= 14; r += 2) {
        for (int n = 2; n <= r; n += 2) {
            const double lambda = sector_lambda_exact(r, n);
            const double bound = yang_coleman_bound(n, r);
            CHECK(std::abs(2.0 * lambda - bound) < 1e-10);
        }
    }
}

TEST_CASE("closed forms for ideal states") {
    for (int r = 2; r <= 14; r += 2) {
        const int m = r / 2;
        const double ens = largest_eigenvalue(assemble_exact(prepare_agp(r)).entries()).value;
        CHECK(std::abs(ens - (0.5 + (m - 1) / 4.0)) < 1e-10);
        for (int n = 2; n <= r; n += 2) {
            const double lambda = sector_lambda_exact(r, n);
            CHECK(std::abs(lambda - double(n / 2) * (m - n / 2 + 1) / m) < 1e-10);
        }
    }
}

TEST_CASE("sector peak sits at half filling") {
    for (int r : {6, 8, 10, 12, 14}) {
        double best = -1.0;
        std::vector<int> argmax;
        for (int n = 2; n <= r; n += 2) {
            const double lambda = sector_lambda_exact(r, n);
            if (lambda > best + 1e-12) {
                best = lambda;
                argmax = {n};
            } else if (std::abs(lambda - best) <= 1e-12) {
                argmax.push_back(n);
            }
        }
        const int center = (r + 2) / 2;
        if (center % 2 == 0) {
            CHECK(argmax == std::vector<int>{center});
        } else {
            CHECK(argmax == std::vector<int>{center - 1, center + 1});
        }
    }
}

TEST_CASE("condensation verdicts") {
    const CondensationReport ens14 =
        condensation_verdict(14, std::nullopt, assemble_exact(prepare_agp(14)));
    CHECK(ens14.lambda == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(ens14.condensed);
    CHECK(!ens14.bound.has_value());

    const CondensationReport ens6 =
        condensation_verdict(6, std::nullopt, assemble_exact(prepare_agp(6)));
    CHECK(ens6.lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(!ens6.condensed);

    const Projection proj = project_particle_number(prepare_agp(8), 2);
    const CondensationReport n2 =
        condensation_verdict(8, 2, assemble_exact(proj.state));
    CHECK(n2.lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(!n2.condensed);
    CHECK(n2.bound == doctest::Approx(2.0));
}

TEST_CASE("lambda standard error propagation") {
    Eigen::MatrixXcd k(2, 2);
    k << 0.5, 0.25, 0.25, 0.5;
    Eigen::MatrixXd se_re(2, 2), se_im(2, 2);
    se_re << 0.01, 0.02, 0.02, 0.01;
    se_im << 0.0, 0.03, 0.03, 0.0;
    const GeminalMatrix gm(k, se_re, se_im);
    const EigenResult top = largest_eigenvalue(k);
    // v = (1,1)/sqrt2: var = |v1|^4 s11^2 + |v2|^4 s22^2 + 4 Re(v1* v2)^2 s12^2
    const double want =
        std::sqrt(0.25 * 1e-4 + 0.25 * 1e-4 + 4.0 * 0.25 * 4e-4);
    CHECK(propagate_lambda_stderr(gm, top.vector) ==
          doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("matrix and report serialization") {
    Eigen::MatrixXcd k(2, 2);
    k << cplx(0.5, 0.0), cplx(0.25, -0.125), cplx(0.25, 0.125), cplx(0.5, 0.0);
    const GeminalMatrix gm(k);
    const std::string csv = gm.to_csv();
    CHECK(csv.find("0.5+0j") != std::string::npos);
    CHECK(csv.find("0.25-0.125j") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

    CondensationReport report;
    report.num_qubits = 14;
    report.sector = 8;
    report.lambda = 16.0 / 7.0;
    report.bound = 32.0 / 7.0;
    report.condensed = true;
    CHECK(CondensationReport::csv_header() == "r,sector,lambda_D,bound,condensed,stderr");
    CHECK(report.csv_row() == "14,8,2.28571428571,4.57142857143,true,");
    CHECK(report.to_json().find("\"lambda_D\"") != std::string::npos);

    CondensationReport ens;
    ens.num_qubits = 6;
    ens.lambda = 1.0;
    CHECK(ens.csv_row() == "6,ENSEMBLE,1,,false,");
}
