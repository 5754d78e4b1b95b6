// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include "agp/qasm.hpp"

#include <sstream>
#include <stdexcept>

namespace agp {

std::string export_circuit_text(const Circuit& circuit,
                                const std::vector<int>& measured_qubits) {
    for (int q : measured_qubits) {
        if (q < 1 || q > circuit.num_qubits) {
            throw std::out_of_range("export_circuit_text: measured qubit out of range");
        }
    }
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    os << "qreg q[" << circuit.num_qubits << "];\n";
    os << "creg c[" << measured_qubits.size() << "];\n";
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case Gate::Kind::H:
                os << "h q[" << g.q1 - 1 << "];\n";
                break;
            case Gate::Kind::X:
                os << "x q[" << g.q1 - 1 << "];\n";
                break;
            case Gate::Kind::Z:
                os << "z q[" << g.q1 - 1 << "];\n";
                break;
            case Gate::Kind::S:
                os << "s q[" << g.q1 - 1 << "];\n";
                break;
            case Gate::Kind::Cnot:
                os << "cx q[" << g.q1 - 1 << "],q[" << g.q2 - 1 << "];\n";
                break;
            case Gate::Kind::Ch:
                os << "ch q[" << g.q1 - 1 << "],q[" << g.q2 - 1 << "];\n";
                break;
            default:
                throw std::invalid_argument(
                    "export_circuit_text: dense-matrix gates have no OpenQASM form");
        }
    }
    for (std::size_t i = 0; i < measured_qubits.size(); ++i) {
        os << "measure q[" << measured_qubits[i] - 1 << "] -> c[" << i << "];\n";
    }
    return os.str();
}

}  // namespace agp
