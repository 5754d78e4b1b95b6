// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include "agp/rdm.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace agp {

namespace {

constexpr double kHermitianTol = 1e-8;
// Guard around the lambda = 1 boundary so that states sitting exactly on it
// (N = 2 and N = r substates) classify as not condensed under roundoff.
constexpr double kCondensedGuard = 1e-9;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_cell(cplx v) {
    char buf[96];
    const double im = v.imag();
    std::snprintf(buf, sizeof(buf), "%.17g%c%.17gj", v.real(),
                  std::signbit(im) ? '-' : '+', std::abs(im));
    return buf;
}

}  // namespace

GeminalMatrix::GeminalMatrix(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("GeminalMatrix: matrix must be square");
    }
}

GeminalMatrix::GeminalMatrix(Eigen::MatrixXcd entries, Eigen::MatrixXd stderr_re,
                             Eigen::MatrixXd stderr_im)
    : GeminalMatrix(std::move(entries)) {
    if (stderr_re.rows() != entries_.rows() || stderr_im.rows() != entries_.rows() ||
        stderr_re.cols() != entries_.cols() || stderr_im.cols() != entries_.cols()) {
        throw std::invalid_argument("GeminalMatrix: stderr shape mismatch");
    }
    se_re_ = std::move(stderr_re);
    se_im_ = std::move(stderr_im);
    has_errors_ = true;
}

std::string GeminalMatrix::to_csv() const {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
        for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
            if (j) os << ",";
            os << fmt_cell(entries_(i, j));
        }
        os << "\n";
    }
    return os.str();
}

GeminalMatrix assemble_exact(const StateVector& state) {
    const int r = state.num_qubits();
    if (r < 2 || r % 2 != 0) {
        throw std::invalid_argument("assemble_exact: state must have even r >= 2");
    }
    const int m = r / 2;
    Eigen::MatrixXcd k(m, m);
    for (int p = 1; p <= m; ++p) {
        cplx diag = 0.0;
        for (const auto& [c, str] : diagonal_pair_occupation(PairIndex(p), r)) {
            diag += c * expectation(state, str);
        }
        k(p - 1, p - 1) = diag.real();
        for (int q = p + 1; q <= m; ++q) {
            cplx re = 0.0, im = 0.0;
            for (const auto& [c, str] : pauli_expansion_pair_hopper(
                     PairIndex(p), PairIndex(q), Component::Real, r)) {
                re += c * expectation(state, str);
            }
            for (const auto& [c, str] : pauli_expansion_pair_hopper(
                     PairIndex(p), PairIndex(q), Component::Imag, r)) {
                im += c * expectation(state, str);
            }
            const cplx entry(re.real() / 2.0, im.real() / 2.0);
            k(p - 1, q - 1) = entry;
            k(q - 1, p - 1) = std::conj(entry);
        }
    }
    return GeminalMatrix(std::move(k));
}

GeminalMatrix assemble_from_shots(int pair_count,
                                  const std::vector<EstimatedEntry>& entries) {
    if (pair_count < 1) {
        throw std::invalid_argument("assemble_from_shots: need at least one pair");
    }
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(pair_count, pair_count);
    Eigen::MatrixXd se_re = Eigen::MatrixXd::Zero(pair_count, pair_count);
    Eigen::MatrixXd se_im = Eigen::MatrixXd::Zero(pair_count, pair_count);
    std::map<std::pair<int, int>, bool> seen;

    for (const EstimatedEntry& e : entries) {
        if (e.p < 1 || e.q < 1 || e.p > pair_count || e.q > pair_count || e.p > e.q) {
            throw std::invalid_argument("assemble_from_shots: bad entry index");
        }
        if (e.empty_sector) {
            throw SectorUnavailableError("assemble_from_shots: entry (" +
                                         std::to_string(e.p) + "," +
                                         std::to_string(e.q) +
                                         ") has no retained shots");
        }
        seen[{e.p, e.q}] = true;
        if (e.p == e.q) {
            k(e.p - 1, e.p - 1) = e.value.real();
            se_re(e.p - 1, e.p - 1) = e.se_re;
        } else {
            k(e.p - 1, e.q - 1) = e.value;
            k(e.q - 1, e.p - 1) = std::conj(e.value);
            se_re(e.p - 1, e.q - 1) = se_re(e.q - 1, e.p - 1) = e.se_re;
            se_im(e.p - 1, e.q - 1) = se_im(e.q - 1, e.p - 1) = e.se_im;
        }
    }
    for (int p = 1; p <= pair_count; ++p) {
        for (int q = p; q <= pair_count; ++q) {
            if (!seen.count({p, q})) {
                throw std::invalid_argument("assemble_from_shots: missing entry (" +
                                            std::to_string(p) + "," +
                                            std::to_string(q) + ")");
            }
        }
    }
    k = ((k + k.adjoint()) / 2.0).eval();
    return GeminalMatrix(std::move(k), std::move(se_re), std::move(se_im));
}

Eigen::MatrixXcd embed_orbital_block(const GeminalMatrix& k) {
    const int m = k.pair_count();
    Eigen::MatrixXcd g(2 * m, 2 * m);
    for (int u = 0; u < 2 * m; ++u) {
        for (int v = 0; v < 2 * m; ++v) {
            g(u, v) = k.entries()(u / 2, v / 2);
        }
    }
    return g;
}

EigenResult largest_eigenvalue(const Eigen::MatrixXcd& matrix) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
        throw std::invalid_argument("largest_eigenvalue: matrix must be square");
    }
    const double herm_defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > kHermitianTol) {
        throw std::invalid_argument("largest_eigenvalue: matrix is not Hermitian");
    }
    const Eigen::MatrixXcd sym = (matrix + matrix.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("largest_eigenvalue: eigensolver failed");
    }
    const Eigen::Index last = matrix.rows() - 1;
    EigenResult out;
    out.value = solver.eigenvalues()(last);
    out.vector = solver.eigenvectors().col(last);
    for (Eigen::Index i = 0; i < out.vector.size(); ++i) {
        const double mag = std::abs(out.vector(i));
        if (mag > 1e-12) {
            out.vector *= std::conj(out.vector(i)) / mag;
            break;
        }
    }
    return out;
}

double yang_coleman_bound(int particles, int orbitals) {
    if (orbitals < 2 || orbitals % 2 != 0) {
        throw std::invalid_argument("yang_coleman_bound: orbitals must be even >= 2");
    }
    if (particles % 2 != 0 || particles < 2 || particles > orbitals) {
        throw std::invalid_argument("yang_coleman_bound: need even N with 2 <= N <= r");
    }
    return particles * (1.0 - double(particles - 2) / double(orbitals));
}

double propagate_lambda_stderr(const GeminalMatrix& k, const Eigen::VectorXcd& v) {
    if (!k.has_errors()) return 0.0;
    const int m = k.pair_count();
    double var = 0.0;
    for (int p = 0; p < m; ++p) {
        const double w = std::norm(v(p));
        var += w * w * k.stderr_re()(p, p) * k.stderr_re()(p, p);
        for (int q = p + 1; q < m; ++q) {
            const cplx overlap = std::conj(v(p)) * v(q);
            const double re = overlap.real();
            const double im = overlap.imag();
            var += 4.0 * (re * re * k.stderr_re()(p, q) * k.stderr_re()(p, q) +
                          im * im * k.stderr_im()(p, q) * k.stderr_im()(p, q));
        }
    }
    return std::sqrt(var);
}

std::string CondensationReport::csv_row() const {
    std::ostringstream os;
    os << num_qubits << ",";
    os << (sector ? std::to_string(*sector) : std::string("ENSEMBLE")) << ",";
    if (!unavailable) {
        os << fmt_double(lambda) << ",";
        os << (bound ? fmt_double(*bound) : std::string()) << ",";
        os << (condensed ? "true" : "false") << ",";
        os << (lambda_stderr ? fmt_double(*lambda_stderr) : std::string());
    } else {
        os << ",,,";
    }
    return os.str();
}

std::string CondensationReport::to_json() const {
    nlohmann::ordered_json j;
    j["r"] = num_qubits;
    if (sector) j["sector"] = *sector;
    else j["sector"] = "ENSEMBLE";
    if (unavailable) {
        j["lambda_D"] = nullptr;
        j["bound"] = nullptr;
        j["condensed"] = nullptr;
        j["stderr"] = nullptr;
    } else {
        j["lambda_D"] = lambda;
        if (bound) j["bound"] = *bound;
        else j["bound"] = nullptr;
        j["condensed"] = condensed;
        if (lambda_stderr) j["stderr"] = *lambda_stderr;
        else j["stderr"] = nullptr;
    }
    return j.dump();
}

CondensationReport condensation_verdict(int num_qubits, std::optional<int> sector,
                                        const GeminalMatrix& k) {
    CondensationReport report;
    report.num_qubits = num_qubits;
    report.sector = sector;
    if (k.pair_count() == 0) {
        report.lambda = 0.0;
        report.condensed = false;
        if (sector) report.bound = 0.0;
        return report;
    }
    EigenResult top = largest_eigenvalue(k.entries());
    report.lambda = top.value;
    report.eigvec = std::move(top.vector);
    report.condensed = report.lambda > 1.0 + kCondensedGuard;
    if (sector) {
        report.bound = (*sector >= 2) ? yang_coleman_bound(*sector, num_qubits) : 0.0;
    }
    if (k.has_errors()) {
        report.lambda_stderr = propagate_lambda_stderr(k, report.eigvec);
    }
    return report;
}

}  // namespace agp
