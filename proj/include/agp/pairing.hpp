// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "agp/pauli.hpp"
#include "agp/statevector.hpp"

namespace agp {

/// Pair index p >= 1; its orbitals are the adjacent qubits (2p-1, 2p).
struct PairIndex {
    int p;

    explicit PairIndex(int pair) : p(pair) {
        if (pair < 1) throw std::invalid_argument("PairIndex: must be >= 1");
    }
    int first_orbital() const { return 2 * p - 1; }
    int second_orbital() const { return 2 * p; }
};

struct LadderOp {
    int orbital = 0;     ///< 1-based
    bool dagger = false;  ///< creation when true
};

/// Ordered product of ladder operators; factors()[0] is the leftmost factor
/// (applied last).
class FermionOp {
  public:
    explicit FermionOp(std::vector<LadderOp> factors);

    /// a+_{2p} a+_{2p-1}
    static FermionOp pair_creation(PairIndex pair);
    /// a_{2p-1} a_{2p}
    static FermionOp pair_annihilation(PairIndex pair);

    const std::vector<LadderOp>& factors() const { return factors_; }

    /// Qubit image of the product. with_strings expands the full
    /// Jordan-Wigner Z strings; otherwise each ladder operator maps to a
    /// bare sigma+/sigma- on its qubit.
    PauliSum jordan_wigner(int num_qubits, bool with_strings) const;

  private:
    std::vector<LadderOp> factors_;
};

/// Qubit image of the adjacent-pair creation operator. The with_strings and
/// bare results are equal as operators up to a global factor of -1.
PauliSum jw_pair_creation(PairIndex pair, int num_qubits, bool with_strings);

enum class Component { Real, Imag };

/// Pauli expansion of the pair-transfer observable between pairs p and q:
/// Real  -> P+_p P_q + P+_q P_p          (8 strings, even Y count, +-1/8)
/// Imag  -> i (P+_q P_p - P+_p P_q)      (8 strings, odd Y count, +-1/8)
std::vector<std::pair<double, PauliString>> pauli_expansion_pair_hopper(
    PairIndex p, PairIndex q, Component component, int num_qubits);

/// Expansion of the doubly-occupied-pair projector
/// n_{2p-1} n_{2p} = (1 - Z_{2p-1})(1 - Z_{2p}) / 4.
std::vector<std::pair<double, PauliString>> diagonal_pair_occupation(
    PairIndex pair, int num_qubits);

struct DecodeEntry {
    int eigenvalue = 0;       ///< -1, 0 or +1
    int local_particles = 0;  ///< pre-rotation particle number of the 4 qubits
};

/// Basis-rotation circuit plus outcome decode for one matrix-entry component.
///
/// The decode table is indexed by the 4-bit local outcome
/// bit(2p-1) | bit(2p) << 1 | bit(2q-1) << 2 | bit(2q) << 3.
struct MeasurementSetting {
    int num_qubits = 0;
    int pair_p = 0;  ///< 0 for the diagonal setting
    int pair_q = 0;
    Component component = Component::Real;
    Circuit rotation;
    std::array<DecodeEntry, 16> decode{};

    bool is_diagonal() const { return pair_p == 0; }
    std::array<int, 4> involved_qubits() const;
    std::string label() const;
};

/// One diagonal setting plus a (real, imag) pair per pair-pair p < q.
std::vector<MeasurementSetting> plan_settings(int num_qubits);

struct EntryEstimate {
    cplx value{0.0, 0.0};
    double se_re = 0.0;
    double se_im = 0.0;
    double retained = 0.0;
    bool empty_sector = false;
};

/// Estimate one geminal-matrix entry component from a histogram collected
/// under the setting's rotation with every qubit measured.
///
/// Without n_filter the estimate is (n+ - n-) / (2 shots). With n_filter,
/// shots are retained when decoded local particle number plus the popcount
/// of the non-involved bits equals the filter, and frequencies are
/// renormalized over the retained shots. For the diagonal setting,
/// diagonal_pair selects the pair whose occupation is estimated.
EntryEstimate estimate_entry(const Histogram& histogram,
                             const MeasurementSetting& setting,
                             std::optional<int> n_filter = std::nullopt,
                             int diagonal_pair = 0);

}  // namespace agp
