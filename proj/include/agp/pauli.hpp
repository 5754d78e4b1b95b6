// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace agp {

using cplx = std::complex<double>;

/// Signed tensor product of single-qubit Pauli letters.
///
/// Qubit indices are 1-based in the API; qubit k occupies bit k-1 of a
/// basis index. The phase is restricted to {+1, -1, +i, -i} and stored as a
/// power of i. Letters are kept in symplectic form: a qubit with an X bit
/// only carries X, Z bit only carries Z, both bits carry Y.
class PauliString {
  public:
    enum class Letter : std::uint8_t { X, Y, Z };

    /// Identity string with phase +1.
    explicit PauliString(int num_qubits);

    static PauliString from_letters(int num_qubits,
                                    const std::map<int, Letter>& letters,
                                    cplx phase = cplx(1.0, 0.0));
    static PauliString x(int qubit, int num_qubits);
    static PauliString y(int qubit, int num_qubits);
    static PauliString z(int qubit, int num_qubits);

    int num_qubits() const { return num_qubits_; }
    cplx phase() const;
    int phase_power() const { return ipow_; }
    bool identity_letters() const { return x_mask_ == 0 && z_mask_ == 0; }
    bool hermitian() const { return ipow_ % 2 == 0; }
    std::map<int, Letter> letters() const;

    /// Bits where X or Y acts (the basis-flipping positions).
    std::uint64_t x_mask() const { return x_mask_; }
    /// Bits where Z or Y acts (the sign-carrying positions).
    std::uint64_t z_mask() const { return z_mask_; }

    PauliString operator*(const PauliString& rhs) const;
    bool operator==(const PauliString& rhs) const;
    bool same_letters(const PauliString& rhs) const;
    PauliString with_phase(cplx phase) const;

    std::string to_string() const;

  private:
    int num_qubits_ = 0;
    int ipow_ = 0;
    std::uint64_t x_mask_ = 0;
    std::uint64_t z_mask_ = 0;
};

using WeightedPauli = std::pair<cplx, PauliString>;
using PauliSum = std::vector<WeightedPauli>;

/// Product of two weighted sums. Like terms are merged and string phases are
/// folded into the coefficients, so every returned string has phase +1.
PauliSum multiply(const PauliSum& lhs, const PauliSum& rhs);

/// Merge like terms, fold phases into coefficients, drop negligible terms.
PauliSum simplified(const PauliSum& ops);

PauliSum scaled(const PauliSum& ops, cplx factor);
PauliSum added(const PauliSum& lhs, const PauliSum& rhs);

cplx phase_from_power(int ipow);
/// Inverse of phase_from_power; throws unless phase is in {1, -1, i, -i}.
int phase_power_from(cplx phase);

}  // namespace agp
