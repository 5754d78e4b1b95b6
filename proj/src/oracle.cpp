// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include "agp/oracle.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace agp {

namespace {

constexpr int kOracleCapacity = 14;

std::vector<cplx> amplitudes_of(const StateVector& state) {
    const auto span = state.amplitudes();
    return std::vector<cplx>(span.begin(), span.end());
}

cplx inner(const std::vector<cplx>& lhs, const std::vector<cplx>& rhs) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) acc += std::conj(lhs[i]) * rhs[i];
    return acc;
}

}  // namespace

TwoRDM::TwoRDM(int num_orbitals, Eigen::MatrixXcd entries)
    : num_orbitals_(num_orbitals), entries_(std::move(entries)) {
    const int dim = num_orbitals * (num_orbitals - 1);
    if (entries_.rows() != dim || entries_.cols() != dim) {
        throw std::invalid_argument("TwoRDM: entry matrix has wrong shape");
    }
}

int TwoRDM::pair_row(int p, int q, int num_orbitals) {
    if (p < 1 || q < 1 || p > num_orbitals || q > num_orbitals || p == q) {
        throw std::out_of_range("TwoRDM: bad ordered pair");
    }
    return (p - 1) * (num_orbitals - 1) + (q - 1) - (q > p ? 1 : 0);
}

double TwoRDM::ordered_pair_trace() const {
    return entries_.trace().real();
}

std::string TwoRDM::to_csv() const {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
        for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
            if (j) os << ",";
            const cplx v = entries_(i, j);
            os << v.real() << (std::signbit(v.imag()) ? "-" : "+")
               << std::abs(v.imag()) << "j";
        }
        os << "\n";
    }
    return os.str();
}

void apply_ladder(std::vector<cplx>& amplitudes, int orbital, bool dagger) {
    const std::uint64_t bit = std::uint64_t(1) << (orbital - 1);
    const std::uint64_t below = bit - 1;
    // Every index is either a source (moved to index ^ bit, then zeroed) or
    // a destination (annihilated amplitude overwritten by its source), so a
    // single in-place pass over sources covers the whole vector.
    for (std::uint64_t b = 0; b < amplitudes.size(); ++b) {
        const bool occupied = b & bit;
        if (occupied == dagger) continue;
        const double sign = (std::popcount(b & below) % 2) ? -1.0 : 1.0;
        amplitudes[b ^ bit] = sign * amplitudes[b];
        amplitudes[b] = 0.0;
    }
}

TwoRDM brute_force_2rdm(const StateVector& state) {
    const int r = state.num_qubits();
    if (r > kOracleCapacity) {
        throw std::length_error("brute_force_2rdm: capacity is 14 orbitals");
    }
    if (r < 2) {
        throw std::invalid_argument("brute_force_2rdm: need at least 2 orbitals");
    }
    const int dim = r * (r - 1);

    // Cache a_v a_u |psi> for every ordered pair (u, v); entry (row, col)
    // is then a single inner product.
    std::vector<std::vector<cplx>> cache(dim);
    for (int u = 1; u <= r; ++u) {
        for (int v = 1; v <= r; ++v) {
            if (u == v) continue;
            std::vector<cplx> vec = amplitudes_of(state);
            apply_ladder(vec, u, false);
            apply_ladder(vec, v, false);
            cache[TwoRDM::pair_row(u, v, r)] = std::move(vec);
        }
    }

    Eigen::MatrixXcd d(dim, dim);
    for (int p = 1; p <= r; ++p) {
        for (int q = 1; q <= r; ++q) {
            if (p == q) continue;
            const int row = TwoRDM::pair_row(p, q, r);
            // <psi| a+_p a+_q a_t a_s |psi> = <a_q a_p psi | a_t a_s psi>.
            const auto& bra = cache[TwoRDM::pair_row(p, q, r)];
            for (int s = 1; s <= r; ++s) {
                for (int t = 1; t <= r; ++t) {
                    if (s == t) continue;
                    const int col = TwoRDM::pair_row(s, t, r);
                    d(row, col) = inner(bra, cache[col]);
                }
            }
        }
    }
    return TwoRDM(r, std::move(d));
}

GeminalMatrix geminal_block_of(const TwoRDM& rdm) {
    const int r = rdm.num_orbitals();
    if (r % 2 != 0) {
        throw std::invalid_argument("geminal_block_of: odd orbital count");
    }
    const int m = r / 2;
    Eigen::MatrixXcd k(m, m);
    for (int p = 1; p <= m; ++p) {
        for (int q = 1; q <= m; ++q) {
            k(p - 1, q - 1) = rdm.entries()(TwoRDM::pair_row(2 * p - 1, 2 * p, r),
                                            TwoRDM::pair_row(2 * q - 1, 2 * q, r));
        }
    }
    return GeminalMatrix(std::move(k));
}

double closed_form_lambda(std::optional<int> sector_particles, int num_qubits) {
    if (num_qubits < 0 || num_qubits % 2 != 0) {
        throw std::invalid_argument("closed_form_lambda: qubit count must be even");
    }
    const int m = num_qubits / 2;
    if (!sector_particles) {
        if (m == 0) return 0.0;
        return 0.5 + (m - 1) / 4.0;
    }
    const int particles = *sector_particles;
    if (particles < 0 || particles > num_qubits || particles % 2 != 0) {
        throw std::invalid_argument("closed_form_lambda: bad sector");
    }
    if (m == 0) return 0.0;
    const int n = particles / 2;
    return double(n) * double(m - n + 1) / double(m);
}

namespace {

Eigen::MatrixXcd dense_pauli(const PauliString& str, int num_qubits) {
    const std::size_t dim = std::size_t(1) << num_qubits;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    const std::uint64_t flip = str.x_mask();
    const std::uint64_t y_mask = str.x_mask() & str.z_mask();
    const std::uint64_t z_only = str.z_mask() & ~str.x_mask();
    for (std::uint64_t b = 0; b < dim; ++b) {
        const int y1 = std::popcount(b & y_mask);
        const int y0 = std::popcount(y_mask) - y1;
        const int z1 = std::popcount(b & z_only);
        const int ipow = (str.phase_power() + y0 + 3 * y1 + 2 * z1) % 4;
        out(b ^ flip, b) = phase_from_power(ipow);
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd dense_pauli_sum(const PauliSum& ops, int num_qubits) {
    const std::size_t dim = std::size_t(1) << num_qubits;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [coeff, str] : ops) out += coeff * dense_pauli(str, num_qubits);
    return out;
}

Eigen::MatrixXcd dense_pauli_sum(
    const std::vector<std::pair<double, PauliString>>& ops, int num_qubits) {
    PauliSum sum;
    sum.reserve(ops.size());
    for (const auto& [c, s] : ops) sum.emplace_back(cplx(c), s);
    return dense_pauli_sum(sum, num_qubits);
}

Eigen::MatrixXcd dense_ladder(int orbital, bool dagger, int num_qubits) {
    const std::size_t dim = std::size_t(1) << num_qubits;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    const std::uint64_t bit = std::uint64_t(1) << (orbital - 1);
    const std::uint64_t below = bit - 1;
    for (std::uint64_t b = 0; b < dim; ++b) {
        const bool occupied = b & bit;
        if (dagger == occupied) continue;
        const double sign = (std::popcount(b & below) % 2) ? -1.0 : 1.0;
        out(b ^ bit, b) = sign;
    }
    return out;
}

bool expansion_matches_dense(
    const std::vector<std::pair<double, PauliString>>& expansion, PairIndex p,
    PairIndex q, Component component, int num_qubits, double tol) {
    const Eigen::MatrixXcd create_p =
        dense_ladder(2 * p.p, true, num_qubits) * dense_ladder(2 * p.p - 1, true, num_qubits);
    const Eigen::MatrixXcd create_q =
        dense_ladder(2 * q.p, true, num_qubits) * dense_ladder(2 * q.p - 1, true, num_qubits);
    const Eigen::MatrixXcd pq = create_p * create_q.adjoint();
    const Eigen::MatrixXcd qp = create_q * create_p.adjoint();
    Eigen::MatrixXcd want;
    if (component == Component::Real) {
        want = pq + qp;
    } else {
        want = cplx(0.0, 1.0) * (qp - pq);
    }
    const Eigen::MatrixXcd got = dense_pauli_sum(expansion, num_qubits);
    return (got - want).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace agp
