// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include "agp/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace agp {

namespace {

constexpr double kUnitaryTol = 1e-12;

void check_unitary(const std::vector<cplx>& m, int dim) {
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < dim; ++k) {
                acc += std::conj(m[k * dim + i]) * m[k * dim + j];
            }
            const cplx want = (i == j) ? cplx(1.0) : cplx(0.0);
            if (std::abs(acc - want) > kUnitaryTol) {
                throw std::invalid_argument("Gate: matrix is not unitary");
            }
        }
    }
}

}  // namespace

int max_qubits() {
    if (const char* env = std::getenv("AGP_MAX_QUBITS")) {
        const int v = std::atoi(env);
        if (v > 0) return std::min(v, 30);
    }
    return 24;
}

Gate Gate::h(int qubit) { return Gate{Kind::H, qubit, 0, {}}; }
Gate Gate::x(int qubit) { return Gate{Kind::X, qubit, 0, {}}; }
Gate Gate::z(int qubit) { return Gate{Kind::Z, qubit, 0, {}}; }
Gate Gate::s(int qubit) { return Gate{Kind::S, qubit, 0, {}}; }
Gate Gate::cnot(int control, int target) {
    return Gate{Kind::Cnot, control, target, {}};
}
Gate Gate::ch(int control, int target) {
    return Gate{Kind::Ch, control, target, {}};
}

Gate Gate::unitary1(int qubit, const std::array<cplx, 4>& u) {
    std::vector<cplx> m(u.begin(), u.end());
    check_unitary(m, 2);
    return Gate{Kind::Unitary1, qubit, 0, std::move(m)};
}

Gate Gate::unitary2(int q1, int q2, const std::array<cplx, 16>& u) {
    std::vector<cplx> m(u.begin(), u.end());
    check_unitary(m, 4);
    return Gate{Kind::Unitary2, q1, q2, std::move(m)};
}

int Gate::arity() const {
    switch (kind) {
        case Kind::Cnot:
        case Kind::Ch:
        case Kind::Unitary2:
            return 2;
        default:
            return 1;
    }
}

Circuit::Circuit(int n) : num_qubits(n) {
    if (n < 0) throw std::invalid_argument("Circuit: negative qubit count");
}

Circuit& Circuit::append(Gate gate) {
    if (gate.q1 < 1 || gate.q1 > num_qubits) {
        throw std::out_of_range("Circuit: gate target out of range");
    }
    if (gate.arity() == 2) {
        if (gate.q2 < 1 || gate.q2 > num_qubits) {
            throw std::out_of_range("Circuit: gate target out of range");
        }
        if (gate.q1 == gate.q2) {
            throw std::invalid_argument("Circuit: gate targets must be distinct");
        }
    }
    gates.push_back(std::move(gate));
    return *this;
}

Circuit& Circuit::extend(const Circuit& other) {
    if (other.num_qubits > num_qubits) {
        throw std::invalid_argument("Circuit: extend source is wider");
    }
    for (const Gate& g : other.gates) append(g);
    return *this;
}

void NoiseModel::validate() const {
    for (double p : {p1, p2, readout01, readout10}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("NoiseModel: probabilities must be in [0,1]");
        }
    }
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > max_qubits()) {
        throw std::length_error("StateVector: qubit count exceeds capacity (cap " +
                                std::to_string(max_qubits()) + ")");
    }
    amps_.assign(std::size_t(1) << num_qubits, cplx(0.0));
    amps_[0] = 1.0;
}

cplx StateVector::amplitude(std::uint64_t basis_index) const {
    if (basis_index >= amps_.size()) {
        throw std::out_of_range("StateVector: basis index out of range");
    }
    return amps_[basis_index];
}

void StateVector::set_amplitude(std::uint64_t basis_index, cplx value) {
    if (basis_index >= amps_.size()) {
        throw std::out_of_range("StateVector: basis index out of range");
    }
    amps_[basis_index] = value;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const cplx& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

void StateVector::apply(const Gate& gate) {
    if (gate.q1 < 1 || gate.q1 > num_qubits_ ||
        (gate.arity() == 2 && (gate.q2 < 1 || gate.q2 > num_qubits_))) {
        throw std::out_of_range("StateVector: gate target out of range");
    }
    const std::size_t dim = amps_.size();
    const std::uint64_t m1 = std::uint64_t(1) << (gate.q1 - 1);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    switch (gate.kind) {
        case Gate::Kind::H: {
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (b & m1) continue;
                const cplx a0 = amps_[b];
                const cplx a1 = amps_[b | m1];
                amps_[b] = (a0 + a1) * inv_sqrt2;
                amps_[b | m1] = (a0 - a1) * inv_sqrt2;
            }
            break;
        }
        case Gate::Kind::X: {
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (b & m1) continue;
                std::swap(amps_[b], amps_[b | m1]);
            }
            break;
        }
        case Gate::Kind::Z: {
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (b & m1) amps_[b] = -amps_[b];
            }
            break;
        }
        case Gate::Kind::S: {
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (b & m1) amps_[b] *= cplx(0.0, 1.0);
            }
            break;
        }
        case Gate::Kind::Cnot: {
            const std::uint64_t mt = std::uint64_t(1) << (gate.q2 - 1);
            for (std::uint64_t b = 0; b < dim; ++b) {
                if ((b & m1) && !(b & mt)) std::swap(amps_[b], amps_[b | mt]);
            }
            break;
        }
        case Gate::Kind::Ch: {
            const std::uint64_t mt = std::uint64_t(1) << (gate.q2 - 1);
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (!(b & m1) || (b & mt)) continue;
                const cplx a0 = amps_[b];
                const cplx a1 = amps_[b | mt];
                amps_[b] = (a0 + a1) * inv_sqrt2;
                amps_[b | mt] = (a0 - a1) * inv_sqrt2;
            }
            break;
        }
        case Gate::Kind::Unitary1: {
            const auto& u = gate.matrix;
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (b & m1) continue;
                const cplx a0 = amps_[b];
                const cplx a1 = amps_[b | m1];
                amps_[b] = u[0] * a0 + u[1] * a1;
                amps_[b | m1] = u[2] * a0 + u[3] * a1;
            }
            break;
        }
        case Gate::Kind::Unitary2: {
            const auto& u = gate.matrix;
            const std::uint64_t m2 = std::uint64_t(1) << (gate.q2 - 1);
            for (std::uint64_t b = 0; b < dim; ++b) {
                if ((b & m1) || (b & m2)) continue;
                const std::uint64_t i0 = b;
                const std::uint64_t i1 = b | m1;
                const std::uint64_t i2 = b | m2;
                const std::uint64_t i3 = b | m1 | m2;
                const cplx a0 = amps_[i0], a1 = amps_[i1], a2 = amps_[i2], a3 = amps_[i3];
                amps_[i0] = u[0] * a0 + u[1] * a1 + u[2] * a2 + u[3] * a3;
                amps_[i1] = u[4] * a0 + u[5] * a1 + u[6] * a2 + u[7] * a3;
                amps_[i2] = u[8] * a0 + u[9] * a1 + u[10] * a2 + u[11] * a3;
                amps_[i3] = u[12] * a0 + u[13] * a1 + u[14] * a2 + u[15] * a3;
            }
            break;
        }
    }
}

void StateVector::apply(const Circuit& circuit) {
    if (circuit.num_qubits > num_qubits_) {
        throw std::invalid_argument("StateVector: circuit wider than register");
    }
    for (const Gate& g : circuit.gates) apply(g);
}

void StateVector::apply_pauli(int qubit, int letter) {
    const std::uint64_t m = std::uint64_t(1) << (qubit - 1);
    const std::size_t dim = amps_.size();
    switch (letter) {
        case 1:  // X
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (!(b & m)) std::swap(amps_[b], amps_[b | m]);
            }
            break;
        case 2:  // Y
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (b & m) continue;
                const cplx a0 = amps_[b];
                const cplx a1 = amps_[b | m];
                amps_[b] = cplx(0.0, -1.0) * a1;
                amps_[b | m] = cplx(0.0, 1.0) * a0;
            }
            break;
        case 3:  // Z
            for (std::uint64_t b = 0; b < dim; ++b) {
                if (b & m) amps_[b] = -amps_[b];
            }
            break;
        default:
            throw std::invalid_argument("apply_pauli: letter must be 1..3");
    }
}

StateVector new_zero_state(int num_qubits) { return StateVector(num_qubits); }

Circuit agp_prep_circuit(int num_qubits) {
    if (num_qubits < 0 || num_qubits % 2 != 0) {
        throw std::invalid_argument("agp_prep_circuit: qubit count must be even");
    }
    Circuit c(num_qubits);
    for (int p = 1; p <= num_qubits / 2; ++p) {
        c.append(Gate::h(2 * p - 1));
        c.append(Gate::cnot(2 * p - 1, 2 * p));
    }
    return c;
}

StateVector prepare_agp(int num_qubits) {
    StateVector state = new_zero_state(num_qubits);
    state.apply(agp_prep_circuit(num_qubits));
    return state;
}

cplx expectation(const StateVector& state, const PauliString& op) {
    if (op.num_qubits() > state.num_qubits()) {
        throw std::invalid_argument("expectation: operator wider than state");
    }
    const std::uint64_t flip = op.x_mask();
    const std::uint64_t y_mask = op.x_mask() & op.z_mask();
    const std::uint64_t z_only = op.z_mask() & ~op.x_mask();
    const int base = op.phase_power();
    const auto amps = state.amplitudes();

    cplx acc = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const cplx& ab = amps[b];
        if (ab == cplx(0.0)) continue;
        const int y1 = std::popcount(b & y_mask);
        const int y0 = std::popcount(y_mask) - y1;
        const int z1 = std::popcount(b & z_only);
        const int ipow = (base + y0 + 3 * y1 + 2 * z1) % 4;
        acc += std::conj(amps[b ^ flip]) * phase_from_power(ipow) * ab;
    }
    return acc;
}

cplx expectation(const StateVector& state, const PauliSum& op) {
    cplx acc = 0.0;
    for (const auto& [coeff, str] : op) acc += coeff * expectation(state, str);
    return acc;
}

Projection project_particle_number(const StateVector& state, int particles) {
    if (particles < 0 || particles > state.num_qubits()) {
        throw std::invalid_argument("project_particle_number: count out of range");
    }
    StateVector out(state.num_qubits());
    out.set_amplitude(0, 0.0);
    double weight = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if (std::popcount(b) == particles) {
            out.set_amplitude(b, amps[b]);
            weight += std::norm(amps[b]);
        }
    }
    if (weight > 0.0) {
        const double scale = 1.0 / std::sqrt(weight);
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            if (std::popcount(b) == particles) {
                out.set_amplitude(b, out.amplitude(b) * scale);
            }
        }
    }
    return Projection{std::move(out), weight};
}

Histogram exact_outcome_probabilities(const StateVector& state,
                                      const Circuit& rotation) {
    StateVector rotated = state;
    rotated.apply(rotation);
    Histogram hist;
    const auto amps = rotated.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const double p = std::norm(amps[b]);
        if (p > 0.0) hist[b] = p;
    }
    return hist;
}

namespace {

// One depolarizing insertion: a non-identity Pauli after a given gate.
// For two-qubit gates the code enumerates the 15 non-identity letter pairs
// as code = la + 4*lb (letters 0..3 = I,X,Y,Z), skipping 0.
struct Insertion {
    int gate_index;
    int code;
    auto operator<=>(const Insertion&) const = default;
};

using Pattern = std::vector<Insertion>;

void apply_insertion(StateVector& state, const Circuit& circuit,
                     const Insertion& ins) {
    const Gate& g = circuit.gates[ins.gate_index];
    if (g.arity() == 1) {
        state.apply_pauli(g.q1, ins.code);
    } else {
        const int la = ins.code % 4;
        const int lb = ins.code / 4;
        if (la) state.apply_pauli(g.q1, la);
        if (lb) state.apply_pauli(g.q2, lb);
    }
}

std::vector<double> outcome_probabilities(const StateVector& state) {
    const auto amps = state.amplitudes();
    std::vector<double> probs(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]);
    return probs;
}

std::uint64_t draw_outcome(const std::vector<double>& cdf, double total,
                           std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, total);
    const double u = uni(rng);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
    return idx;
}

std::uint64_t apply_readout(std::uint64_t outcome, int num_qubits,
                            const NoiseModel& noise, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < num_qubits; ++k) {
        const std::uint64_t bit = std::uint64_t(1) << k;
        const double p = (outcome & bit) ? noise.readout10 : noise.readout01;
        if (uni(rng) < p) outcome ^= bit;
    }
    return outcome;
}

}  // namespace

Histogram sample_shots(const StateVector& state, const Circuit& rotation,
                       long shots, const std::optional<NoiseModel>& noise,
                       std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_shots: shots must be >= 1");
    if (noise) noise->validate();

    std::mt19937_64 rng(seed);
    Histogram hist;
    const bool gate_noise = noise && noise->has_gate_noise();
    const bool readout = noise && noise->has_readout_noise();

    auto sample_from = [&](const StateVector& rotated, long count) {
        const std::vector<double> probs = outcome_probabilities(rotated);
        std::vector<double> cdf(probs.size());
        std::partial_sum(probs.begin(), probs.end(), cdf.begin());
        const double total = cdf.back();
        for (long s = 0; s < count; ++s) {
            std::uint64_t o = draw_outcome(cdf, total, rng);
            if (readout) o = apply_readout(o, state.num_qubits(), *noise, rng);
            hist[o] += 1.0;
        }
    };

    if (!gate_noise) {
        StateVector rotated = state;
        rotated.apply(rotation);
        sample_from(rotated, shots);
        return hist;
    }

    // Draw the insertion pattern of every shot, then simulate each distinct
    // pattern once. Pattern keys are ordered, which fixes the simulation
    // order and keeps the whole procedure deterministic for a fixed seed.
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::map<Pattern, long> patterns;
    for (long s = 0; s < shots; ++s) {
        Pattern pat;
        for (std::size_t g = 0; g < rotation.gates.size(); ++g) {
            const int arity = rotation.gates[g].arity();
            const double p = (arity == 1) ? noise->p1 : noise->p2;
            if (p <= 0.0) continue;
            if (uni(rng) < p) {
                const int ncodes = (arity == 1) ? 3 : 15;
                std::uniform_int_distribution<int> pick(1, ncodes);
                pat.push_back(Insertion{int(g), pick(rng)});
            }
        }
        patterns[std::move(pat)] += 1;
    }

    // Prefix cache: clean state after the first k gates. Patterns replay
    // from the prefix of their first insertion.
    std::vector<StateVector> prefixes;
    const bool cache_prefixes =
        (std::size_t(1) << state.num_qubits()) * (rotation.gates.size() + 1) <=
        (std::size_t(1) << 22);
    if (cache_prefixes) {
        prefixes.reserve(rotation.gates.size() + 1);
        prefixes.push_back(state);
        for (const Gate& g : rotation.gates) {
            prefixes.push_back(prefixes.back());
            prefixes.back().apply(g);
        }
    }

    for (const auto& [pattern, count] : patterns) {
        StateVector rotated(0);
        std::size_t next_gate = 0;
        if (pattern.empty()) {
            rotated = cache_prefixes ? prefixes.back() : state;
            if (!cache_prefixes) rotated.apply(rotation);
            next_gate = rotation.gates.size();
        } else if (cache_prefixes) {
            const std::size_t first = pattern.front().gate_index;
            rotated = prefixes[first + 1];
            next_gate = first + 1;
        } else {
            rotated = state;
        }
        std::size_t ins_at = 0;
        if (cache_prefixes && !pattern.empty()) {
            // First insertion is applied directly on the cached prefix.
            apply_insertion(rotated, rotation, pattern.front());
            ins_at = 1;
        }
        for (std::size_t g = next_gate; g < rotation.gates.size(); ++g) {
            rotated.apply(rotation.gates[g]);
            while (ins_at < pattern.size() &&
                   pattern[ins_at].gate_index == int(g)) {
                apply_insertion(rotated, rotation, pattern[ins_at]);
                ++ins_at;
            }
        }
        sample_from(rotated, count);
    }
    return hist;
}

}  // namespace agp
