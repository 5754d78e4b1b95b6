// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include "agp/pairing.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace agp {

namespace {

void check_pair_range(PairIndex pair, int num_qubits) {
    if (pair.second_orbital() > num_qubits) {
        throw std::out_of_range("pair index exceeds register width");
    }
}

// sigma+ = (X - iY)/2 creates |1> from |0>; sigma- is the adjoint.
PauliSum ladder_sigma(int qubit, bool dagger, int num_qubits) {
    const cplx y_coeff = dagger ? cplx(0.0, -0.5) : cplx(0.0, 0.5);
    return PauliSum{{cplx(0.5), PauliString::x(qubit, num_qubits)},
                    {y_coeff, PauliString::y(qubit, num_qubits)}};
}

PauliString jw_z_string(int below_qubit, int num_qubits) {
    std::map<int, PauliString::Letter> letters;
    for (int k = 1; k < below_qubit; ++k) letters[k] = PauliString::Letter::Z;
    return PauliString::from_letters(num_qubits, letters);
}

// Decode table for the pair-hopper rotation, indexed by the local outcome
// nibble. Eigenvalue +-1 outcomes sit in the local two-particle block; the
// remaining assignments follow the pullback of each outcome through the
// rotation (indefinite noise-only outcomes get a fixed convention).
constexpr std::array<DecodeEntry, 16> kHopperDecode = {{
    {0, 0}, {+1, 2}, {0, 1}, {0, 1},
    {0, 4}, {-1, 2}, {0, 3}, {0, 1},
    {0, 1}, {0, 3}, {0, 2}, {0, 2},
    {0, 3}, {0, 3}, {0, 2}, {0, 2},
}};

}  // namespace

FermionOp::FermionOp(std::vector<LadderOp> factors) : factors_(std::move(factors)) {
    for (const LadderOp& f : factors_) {
        if (f.orbital < 1) throw std::invalid_argument("FermionOp: bad orbital");
    }
}

FermionOp FermionOp::pair_creation(PairIndex pair) {
    return FermionOp({{pair.second_orbital(), true}, {pair.first_orbital(), true}});
}

FermionOp FermionOp::pair_annihilation(PairIndex pair) {
    return FermionOp({{pair.first_orbital(), false}, {pair.second_orbital(), false}});
}

PauliSum FermionOp::jordan_wigner(int num_qubits, bool with_strings) const {
    PauliSum acc{{cplx(1.0), PauliString(num_qubits)}};
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
        if (it->orbital > num_qubits) {
            throw std::out_of_range("FermionOp: orbital exceeds register width");
        }
        PauliSum term = ladder_sigma(it->orbital, it->dagger, num_qubits);
        if (with_strings) {
            const PauliSum string{{cplx(1.0), jw_z_string(it->orbital, num_qubits)}};
            term = multiply(string, term);
        }
        acc = multiply(term, acc);
    }
    return acc;
}

PauliSum jw_pair_creation(PairIndex pair, int num_qubits, bool with_strings) {
    check_pair_range(pair, num_qubits);
    return FermionOp::pair_creation(pair).jordan_wigner(num_qubits, with_strings);
}

std::vector<std::pair<double, PauliString>> pauli_expansion_pair_hopper(
    PairIndex p, PairIndex q, Component component, int num_qubits) {
    if (p.p == q.p) {
        throw std::invalid_argument(
            "pauli_expansion_pair_hopper: pairs must differ (use "
            "diagonal_pair_occupation for the diagonal)");
    }
    check_pair_range(p, num_qubits);
    check_pair_range(q, num_qubits);

    const PauliSum create_p = jw_pair_creation(p, num_qubits, false);
    const PauliSum create_q = jw_pair_creation(q, num_qubits, false);
    const PauliSum destroy_p =
        FermionOp::pair_annihilation(p).jordan_wigner(num_qubits, false);
    const PauliSum destroy_q =
        FermionOp::pair_annihilation(q).jordan_wigner(num_qubits, false);

    const PauliSum pq = multiply(create_p, destroy_q);
    const PauliSum qp = multiply(create_q, destroy_p);
    PauliSum sum;
    if (component == Component::Real) {
        sum = added(pq, qp);
    } else {
        sum = scaled(added(qp, scaled(pq, -1.0)), cplx(0.0, 1.0));
    }

    std::vector<std::pair<double, PauliString>> out;
    out.reserve(sum.size());
    for (const auto& [coeff, str] : sum) {
        if (std::abs(coeff.imag()) > 1e-14) {
            throw std::logic_error("pair hopper expansion has complex coefficient");
        }
        out.emplace_back(coeff.real(), str);
    }
    return out;
}

std::vector<std::pair<double, PauliString>> diagonal_pair_occupation(
    PairIndex pair, int num_qubits) {
    check_pair_range(pair, num_qubits);
    const int a = pair.first_orbital();
    const int b = pair.second_orbital();
    using L = PauliString::Letter;
    return {{0.25, PauliString(num_qubits)},
            {-0.25, PauliString::z(a, num_qubits)},
            {-0.25, PauliString::z(b, num_qubits)},
            {0.25, PauliString::from_letters(num_qubits, {{a, L::Z}, {b, L::Z}})}};
}

std::array<int, 4> MeasurementSetting::involved_qubits() const {
    if (is_diagonal()) return {0, 0, 0, 0};
    return {2 * pair_p - 1, 2 * pair_p, 2 * pair_q - 1, 2 * pair_q};
}

std::string MeasurementSetting::label() const {
    if (is_diagonal()) return "diagonal";
    return "pair" + std::to_string(pair_p) + "_" + std::to_string(pair_q) +
           (component == Component::Real ? "_re" : "_im");
}

std::vector<MeasurementSetting> plan_settings(int num_qubits) {
    if (num_qubits < 2 || num_qubits % 2 != 0) {
        throw std::invalid_argument("plan_settings: qubit count must be even and >= 2");
    }
    std::vector<MeasurementSetting> out;

    MeasurementSetting diag;
    diag.num_qubits = num_qubits;
    diag.rotation = Circuit(num_qubits);
    for (int nib = 0; nib < 16; ++nib) {
        diag.decode[nib] = DecodeEntry{0, std::popcount(unsigned(nib))};
    }
    out.push_back(std::move(diag));

    const int m = num_qubits / 2;
    for (int p = 1; p <= m; ++p) {
        for (int q = p + 1; q <= m; ++q) {
            const int a = 2 * p - 1;
            const int b = 2 * p;
            const int c = 2 * q - 1;
            const int d = 2 * q;
            for (Component comp : {Component::Real, Component::Imag}) {
                MeasurementSetting s;
                s.num_qubits = num_qubits;
                s.pair_p = p;
                s.pair_q = q;
                s.component = comp;
                s.decode = kHopperDecode;
                s.rotation = Circuit(num_qubits);
                if (comp == Component::Imag) {
                    // Z then S on qubit c applies S-dagger, turning the
                    // imaginary-component eigenvectors into the real ones.
                    s.rotation.append(Gate::z(c));
                    s.rotation.append(Gate::s(c));
                }
                s.rotation.append(Gate::cnot(a, b));
                s.rotation.append(Gate::cnot(c, d));
                s.rotation.append(Gate::cnot(c, a));
                s.rotation.append(Gate::ch(a, c));
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

EntryEstimate estimate_entry(const Histogram& histogram,
                             const MeasurementSetting& setting,
                             std::optional<int> n_filter, int diagonal_pair) {
    EntryEstimate est;

    if (setting.is_diagonal()) {
        if (diagonal_pair < 1 || 2 * diagonal_pair > setting.num_qubits) {
            throw std::invalid_argument("estimate_entry: diagonal pair out of range");
        }
        const std::uint64_t mask =
            (std::uint64_t(1) << (2 * diagonal_pair - 2)) |
            (std::uint64_t(1) << (2 * diagonal_pair - 1));
        double retained = 0.0;
        double occupied = 0.0;
        for (const auto& [outcome, w] : histogram) {
            if (n_filter && std::popcount(outcome) != *n_filter) continue;
            retained += w;
            if ((outcome & mask) == mask) occupied += w;
        }
        if (retained <= 0.0) {
            est.empty_sector = true;
            return est;
        }
        const double f = occupied / retained;
        est.value = f;
        est.se_re = std::sqrt(std::max(f * (1.0 - f), 0.0) / retained);
        est.retained = retained;
        return est;
    }

    const auto involved = setting.involved_qubits();
    std::uint64_t involved_mask = 0;
    for (int q : involved) involved_mask |= std::uint64_t(1) << (q - 1);

    double retained = 0.0, plus = 0.0, minus = 0.0;
    for (const auto& [outcome, w] : histogram) {
        int nibble = 0;
        for (int k = 0; k < 4; ++k) {
            if (outcome & (std::uint64_t(1) << (involved[k] - 1))) nibble |= 1 << k;
        }
        const DecodeEntry& d = setting.decode[nibble];
        if (n_filter) {
            const int rest = std::popcount(outcome & ~involved_mask);
            if (d.local_particles + rest != *n_filter) continue;
        }
        retained += w;
        if (d.eigenvalue > 0) plus += w;
        else if (d.eigenvalue < 0) minus += w;
    }
    if (retained <= 0.0) {
        est.empty_sector = true;
        return est;
    }
    const double fp = plus / retained;
    const double fm = minus / retained;
    const double value = (fp - fm) / 2.0;
    const double var = std::max(fp + fm - (fp - fm) * (fp - fm), 0.0) / retained;
    const double se = std::sqrt(var) / 2.0;
    if (setting.component == Component::Real) {
        est.value = cplx(value, 0.0);
        est.se_re = se;
    } else {
        est.value = cplx(0.0, value);
        est.se_im = se;
    }
    est.retained = retained;
    return est;
}

}  // namespace agp
