// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "agp/pairing.hpp"
#include "agp/statevector.hpp"

namespace agp {

/// m x m Hermitian matrix of pair-transfer expectations,
/// K[p][q] = <P+_p P_q> with m = r/2, optionally carrying per-entry
/// standard errors from shot estimation.
class GeminalMatrix {
  public:
    explicit GeminalMatrix(Eigen::MatrixXcd entries);
    GeminalMatrix(Eigen::MatrixXcd entries, Eigen::MatrixXd stderr_re,
                  Eigen::MatrixXd stderr_im);

    int pair_count() const { return int(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    bool has_errors() const { return has_errors_; }
    const Eigen::MatrixXd& stderr_re() const { return se_re_; }
    const Eigen::MatrixXd& stderr_im() const { return se_im_; }

    /// Row-major CSV with "re+imj" cells.
    std::string to_csv() const;

  private:
    Eigen::MatrixXcd entries_;
    Eigen::MatrixXd se_re_;
    Eigen::MatrixXd se_im_;
    bool has_errors_ = false;
};

/// K from exact expectations of the pair operators on the state.
GeminalMatrix assemble_exact(const StateVector& state);

/// One measured entry of the geminal matrix (p == q for diagonal entries).
struct EstimatedEntry {
    int p = 0;
    int q = 0;
    cplx value{0.0, 0.0};
    double se_re = 0.0;
    double se_im = 0.0;
    bool empty_sector = false;
};

/// Raised when a requested particle-number sector retained no shots.
struct SectorUnavailableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Assemble from shot estimates; requires every diagonal and p < q entry.
/// Throws if an entry is missing or was flagged empty (sector unavailable).
GeminalMatrix assemble_from_shots(int pair_count,
                                  const std::vector<EstimatedEntry>& entries);

/// r x r orbital-block embedding G[u][v] = K[pair(u)][pair(v)] with
/// pair(u) = ceil(u/2). Its spectrum is {2 lambda_i(K)} plus m zeros.
Eigen::MatrixXcd embed_orbital_block(const GeminalMatrix& k);

struct EigenResult {
    double value = 0.0;
    Eigen::VectorXcd vector;
};

/// Maximum eigenvalue and eigenvector of a Hermitian matrix (tolerance
/// 1e-8 on Hermiticity). The eigenvector phase is fixed by making its
/// first component of non-negligible magnitude real positive.
EigenResult largest_eigenvalue(const Eigen::MatrixXcd& matrix);

/// Finite-rank pairing bound N (1 - (N-2)/r) on the orbital-block
/// eigenvalue, i.e. on 2 lambda(K). Requires even N with 2 <= N <= r.
double yang_coleman_bound(int particles, int orbitals);

/// First-order error propagation of per-entry standard errors through the
/// top eigenvalue (v+ dK v with the Hermitian pairing of entries).
double propagate_lambda_stderr(const GeminalMatrix& k, const Eigen::VectorXcd& v);

struct CondensationReport {
    int num_qubits = 0;
    std::optional<int> sector;  ///< particle count, or nullopt for ensemble
    double lambda = 0.0;
    Eigen::VectorXcd eigvec;
    std::optional<double> bound;
    bool condensed = false;
    std::optional<double> lambda_stderr;
    bool unavailable = false;  ///< zero-weight sector; numeric fields unset

    static std::string csv_header() { return "r,sector,lambda_D,bound,condensed,stderr"; }
    std::string csv_row() const;
    std::string to_json() const;  ///< object with r, sector, lambda_D, bound,
                                  ///< condensed, stderr
};

/// Build the report for a computed geminal matrix. The sector bound is the
/// finite-rank pairing bound; ensemble rows record no bound.
CondensationReport condensation_verdict(int num_qubits, std::optional<int> sector,
                                        const GeminalMatrix& k);

}  // namespace agp
