// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "agp/pairing.hpp"
#include "agp/rdm.hpp"
#include "agp/statevector.hpp"

namespace agp {

/// Full two-particle reduced density matrix over ordered orbital pairs,
/// D[(p,q)][(s,t)] = <a+_p a+_q a_t a_s>, computed with full Jordan-Wigner
/// strings. Ground truth for every shortcut in the pairing and rdm modules.
class TwoRDM {
  public:
    TwoRDM(int num_orbitals, Eigen::MatrixXcd entries);

    int num_orbitals() const { return num_orbitals_; }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    /// Row index of the ordered pair (p, q), p != q, 1-based orbitals.
    static int pair_row(int p, int q, int num_orbitals);

    double ordered_pair_trace() const;
    std::string to_csv() const;

  private:
    int num_orbitals_ = 0;
    Eigen::MatrixXcd entries_;
};

/// Every ordered-pair entry by direct ladder-operator application (capacity
/// capped at 14 orbitals; cost grows as r^4 2^r).
TwoRDM brute_force_2rdm(const StateVector& state);

/// K[p][q] = D[(2p-1,2p)][(2q-1,2q)]; must match assemble_exact on the same
/// state, confirming that qubit-operator and fermionic evaluations coincide
/// for adjacent pairing.
GeminalMatrix geminal_block_of(const TwoRDM& rdm);

/// Combinatorial eigenvalues of the geminal matrix for ideal Bell-pair
/// states: sector N -> n(m-n+1)/m with n = N/2, ensemble -> 1/2 + (m-1)/4.
double closed_form_lambda(std::optional<int> sector_particles, int num_qubits);

/// In-place ladder operator with full Jordan-Wigner sign string.
void apply_ladder(std::vector<cplx>& amplitudes, int orbital, bool dagger);

/// Dense 2^r x 2^r matrices for validation (r small).
Eigen::MatrixXcd dense_pauli_sum(const PauliSum& ops, int num_qubits);
Eigen::MatrixXcd dense_pauli_sum(const std::vector<std::pair<double, PauliString>>& ops,
                                 int num_qubits);
Eigen::MatrixXcd dense_ladder(int orbital, bool dagger, int num_qubits);

/// True when the hopper expansion equals the dense operator rebuilt from
/// Jordan-Wigner ladder matrices, entrywise within tol.
bool expansion_matches_dense(const std::vector<std::pair<double, PauliString>>& expansion,
                             PairIndex p, PairIndex q, Component component,
                             int num_qubits, double tol);

}  // namespace agp
