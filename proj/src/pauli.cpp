// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include "agp/pauli.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace agp {

namespace {

constexpr double kPhaseTol = 1e-12;

// Letter codes in symplectic form: 0 = I, 1 = X, 2 = Y, 3 = Z.
int letter_code(bool x, bool z) {
    if (x && z) return 2;
    if (x) return 1;
    if (z) return 3;
    return 0;
}

// Phase power (of i) picked up composing letter a then b (a*b as operators).
int compose_phase(int a, int b) {
    if (a == 0 || b == 0 || a == b) return 0;
    // Cyclic products XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    const bool cyclic = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
    return cyclic ? 1 : 3;
}

}  // namespace

PauliString::PauliString(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > 63) {
        throw std::invalid_argument("PauliString: qubit count out of range");
    }
}

PauliString PauliString::from_letters(int num_qubits,
                                      const std::map<int, Letter>& letters,
                                      cplx phase) {
    PauliString p(num_qubits);
    p.ipow_ = phase_power_from(phase);
    for (const auto& [qubit, letter] : letters) {
        if (qubit < 1 || qubit > num_qubits) {
            throw std::out_of_range("PauliString: qubit index out of range");
        }
        const std::uint64_t bit = std::uint64_t(1) << (qubit - 1);
        if (letter == Letter::X || letter == Letter::Y) p.x_mask_ |= bit;
        if (letter == Letter::Z || letter == Letter::Y) p.z_mask_ |= bit;
    }
    return p;
}

PauliString PauliString::x(int qubit, int num_qubits) {
    return from_letters(num_qubits, {{qubit, Letter::X}});
}

PauliString PauliString::y(int qubit, int num_qubits) {
    return from_letters(num_qubits, {{qubit, Letter::Y}});
}

PauliString PauliString::z(int qubit, int num_qubits) {
    return from_letters(num_qubits, {{qubit, Letter::Z}});
}

cplx PauliString::phase() const { return phase_from_power(ipow_); }

std::map<int, PauliString::Letter> PauliString::letters() const {
    std::map<int, Letter> out;
    for (int q = 1; q <= num_qubits_; ++q) {
        const std::uint64_t bit = std::uint64_t(1) << (q - 1);
        const bool x = x_mask_ & bit;
        const bool z = z_mask_ & bit;
        if (x && z) out[q] = Letter::Y;
        else if (x) out[q] = Letter::X;
        else if (z) out[q] = Letter::Z;
    }
    return out;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
    if (num_qubits_ != rhs.num_qubits_) {
        throw std::invalid_argument("PauliString: qubit count mismatch");
    }
    PauliString out(num_qubits_);
    out.ipow_ = (ipow_ + rhs.ipow_) % 4;
    std::uint64_t active = (x_mask_ | z_mask_) & (rhs.x_mask_ | rhs.z_mask_);
    while (active) {
        const std::uint64_t bit = active & (~active + 1);
        active ^= bit;
        const int a = letter_code(x_mask_ & bit, z_mask_ & bit);
        const int b = letter_code(rhs.x_mask_ & bit, rhs.z_mask_ & bit);
        out.ipow_ = (out.ipow_ + compose_phase(a, b)) % 4;
    }
    out.x_mask_ = x_mask_ ^ rhs.x_mask_;
    out.z_mask_ = z_mask_ ^ rhs.z_mask_;
    return out;
}

bool PauliString::operator==(const PauliString& rhs) const {
    return num_qubits_ == rhs.num_qubits_ && ipow_ == rhs.ipow_ &&
           x_mask_ == rhs.x_mask_ && z_mask_ == rhs.z_mask_;
}

bool PauliString::same_letters(const PauliString& rhs) const {
    return num_qubits_ == rhs.num_qubits_ && x_mask_ == rhs.x_mask_ &&
           z_mask_ == rhs.z_mask_;
}

PauliString PauliString::with_phase(cplx phase) const {
    PauliString out = *this;
    out.ipow_ = phase_power_from(phase);
    return out;
}

std::string PauliString::to_string() const {
    static const char* prefix[] = {"+", "+i*", "-", "-i*"};
    std::ostringstream os;
    os << prefix[ipow_];
    if (identity_letters()) {
        os << "I";
        return os.str();
    }
    bool first = true;
    for (const auto& [q, letter] : letters()) {
        if (!first) os << " ";
        first = false;
        os << (letter == Letter::X ? "X" : letter == Letter::Y ? "Y" : "Z") << q;
    }
    return os.str();
}

cplx phase_from_power(int ipow) {
    switch (((ipow % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

int phase_power_from(cplx phase) {
    for (int k = 0; k < 4; ++k) {
        if (std::abs(phase - phase_from_power(k)) < kPhaseTol) return k;
    }
    throw std::invalid_argument("PauliString: phase must be one of {1, -1, i, -i}");
}

PauliSum simplified(const PauliSum& ops) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, WeightedPauli> merged;
    for (const auto& [coeff, str] : ops) {
        const cplx c = coeff * str.phase();
        const auto key = std::make_pair(str.x_mask(), str.z_mask());
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, WeightedPauli{c, str.with_phase(1.0)});
        } else {
            it->second.first += c;
        }
    }
    PauliSum out;
    out.reserve(merged.size());
    for (auto& [key, term] : merged) {
        (void)key;
        if (std::abs(term.first) > 1e-15) out.push_back(std::move(term));
    }
    return out;
}

PauliSum multiply(const PauliSum& lhs, const PauliSum& rhs) {
    PauliSum out;
    out.reserve(lhs.size() * rhs.size());
    for (const auto& [ca, pa] : lhs) {
        for (const auto& [cb, pb] : rhs) {
            out.emplace_back(ca * cb, pa * pb);
        }
    }
    return simplified(out);
}

PauliSum scaled(const PauliSum& ops, cplx factor) {
    PauliSum out = ops;
    for (auto& term : out) term.first *= factor;
    return out;
}

PauliSum added(const PauliSum& lhs, const PauliSum& rhs) {
    PauliSum out = lhs;
    out.insert(out.end(), rhs.begin(), rhs.end());
    return simplified(out);
}

}  // namespace agp
