// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "agp/pauli.hpp"

namespace agp {

/// Dense-simulation capacity cap. Defaults to 24 qubits; the environment
/// variable AGP_MAX_QUBITS overrides it.
int max_qubits();

/// One gate of a circuit. Targets are 1-based qubit indices; for the
/// two-qubit kinds q1 is the control and q2 the target.
struct Gate {
    enum class Kind { H, X, Z, S, Cnot, Ch, Unitary1, Unitary2 };

    Kind kind = Kind::H;
    int q1 = 0;
    int q2 = 0;
    /// Dense kinds only: row-major 2x2 or 4x4 unitary. For Unitary2 the
    /// matrix index of a basis state is bit(q1) | bit(q2) << 1.
    std::vector<cplx> matrix;

    static Gate h(int qubit);
    static Gate x(int qubit);
    static Gate z(int qubit);
    static Gate s(int qubit);
    static Gate cnot(int control, int target);
    static Gate ch(int control, int target);
    /// Validates unitarity to 1e-12.
    static Gate unitary1(int qubit, const std::array<cplx, 4>& u);
    static Gate unitary2(int q1, int q2, const std::array<cplx, 16>& u);

    int arity() const;
};

/// Ordered gate list over a fixed-width register.
struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int num_qubits);

    /// Appends after validating that targets are distinct and in [1, r].
    Circuit& append(Gate gate);
    Circuit& extend(const Circuit& other);
};

/// Monte-Carlo depolarizing insertion plus independent readout confusion.
struct NoiseModel {
    double p1 = 0.0;         ///< depolarizing probability per 1-qubit gate
    double p2 = 0.0;         ///< depolarizing probability per 2-qubit gate
    double readout01 = 0.0;  ///< probability of reading 0 as 1
    double readout10 = 0.0;  ///< probability of reading 1 as 0

    void validate() const;
    bool has_gate_noise() const { return p1 > 0.0 || p2 > 0.0; }
    bool has_readout_noise() const { return readout01 > 0.0 || readout10 > 0.0; }
};

/// Dense complex amplitude array over an r-qubit register.
///
/// Little-endian basis convention: qubit k (1-based) is bit k-1 of the basis
/// index, and bit value 1 means the orbital is occupied.
class StateVector {
  public:
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    cplx amplitude(std::uint64_t basis_index) const;
    void set_amplitude(std::uint64_t basis_index, cplx value);

    double norm() const;

    void apply(const Gate& gate);
    void apply(const Circuit& circuit);

    /// X, Y or Z on one qubit (letter codes 1, 2, 3). Used by the noise
    /// insertion path.
    void apply_pauli(int qubit, int letter);

  private:
    int num_qubits_ = 0;
    std::vector<cplx> amps_;
};

/// |0...0> on r qubits.
StateVector new_zero_state(int num_qubits);

/// Bell-pair preparation circuit: H(2j-1) then CNOT(2j-1 -> 2j) per pair j.
Circuit agp_prep_circuit(int num_qubits);

/// Product of (|00> + |11>)/sqrt(2) over adjacent qubit pairs, built by
/// applying agp_prep_circuit to the vacuum.
StateVector prepare_agp(int num_qubits);

/// <state| op |state>.
cplx expectation(const StateVector& state, const PauliString& op);
cplx expectation(const StateVector& state, const PauliSum& op);

struct Projection {
    StateVector state;
    double weight = 0.0;  ///< squared norm before renormalization; 0 means
                          ///< the state field must not be used
};

/// Restrict to basis states with popcount == particles and renormalize.
Projection project_particle_number(const StateVector& state, int particles);

/// Outcome bitstring -> weight. Sampling fills counts; the exact variant
/// fills probabilities.
using Histogram = std::map<std::uint64_t, double>;

/// |amplitude|^2 of state after rotation, exact zeros omitted.
Histogram exact_outcome_probabilities(const StateVector& state,
                                      const Circuit& rotation);

/// Applies rotation (with Monte-Carlo depolarizing insertions when noise is
/// given), samples computational-basis outcomes, then applies readout
/// confusion per bit. Deterministic for a fixed seed.
Histogram sample_shots(const StateVector& state, const Circuit& rotation,
                       long shots, const std::optional<NoiseModel>& noise,
                       std::uint64_t seed);

}  // namespace agp
