// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "agp/statevector.hpp"

namespace agp {

/// OpenQASM 2.0 text for a circuit: header, one qubit register, one
/// classical register, gate lines in order, then one measure line per
/// entry of measured_qubits (1-based). Byte-stable for fixed input.
/// Dense-matrix gate kinds are not exportable and raise an error.
std::string export_circuit_text(const Circuit& circuit,
                                const std::vector<int>& measured_qubits);

}  // namespace agp
