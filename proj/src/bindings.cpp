// Copyright (c) 2026 agpsim developers
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agp/cli.hpp"
#include "agp/oracle.hpp"
#include "agp/pairing.hpp"
#include "agp/qasm.hpp"
#include "agp/rdm.hpp"
#include "agp/statevector.hpp"

namespace py = pybind11;
using namespace agp;

namespace {

PauliString pauli_from_dict(int num_qubits, const std::map<int, std::string>& letters,
                            cplx phase) {
    std::map<int, PauliString::Letter> parsed;
    for (const auto& [qubit, name] : letters) {
        if (name == "X") parsed[qubit] = PauliString::Letter::X;
        else if (name == "Y") parsed[qubit] = PauliString::Letter::Y;
        else if (name == "Z") parsed[qubit] = PauliString::Letter::Z;
        else throw std::invalid_argument("letter must be 'X', 'Y' or 'Z'");
    }
    return PauliString::from_letters(num_qubits, parsed, phase);
}

py::dict report_to_dict(const CondensationReport& report) {
    py::dict d;
    d["r"] = report.num_qubits;
    if (report.sector) d["sector"] = *report.sector;
    else d["sector"] = "ENSEMBLE";
    if (report.unavailable) {
        d["lambda_D"] = py::none();
        d["bound"] = py::none();
        d["condensed"] = py::none();
        d["stderr"] = py::none();
        return d;
    }
    d["lambda_D"] = report.lambda;
    if (report.bound) d["bound"] = *report.bound;
    else d["bound"] = py::none();
    d["condensed"] = report.condensed;
    if (report.lambda_stderr) d["stderr"] = *report.lambda_stderr;
    else d["stderr"] = py::none();
    return d;
}

std::optional<NoiseModel> noise_from_args(py::object noise) {
    if (noise.is_none()) return std::nullopt;
    const py::dict d = noise.cast<py::dict>();
    NoiseModel model;
    if (d.contains("p1")) model.p1 = d["p1"].cast<double>();
    if (d.contains("p2")) model.p2 = d["p2"].cast<double>();
    if (d.contains("readout01")) model.readout01 = d["readout01"].cast<double>();
    if (d.contains("readout10")) model.readout10 = d["readout10"].cast<double>();
    model.validate();
    return model;
}

}  // namespace

PYBIND11_MODULE(agpsim, m) {
    m.doc() = "Bell-pair register simulation and geminal 2-RDM analysis";

    py::class_<PauliString>(m, "PauliString")
        .def(py::init<int>(), py::arg("num_qubits"))
        .def_static("from_letters", &pauli_from_dict, py::arg("num_qubits"),
                    py::arg("letters"), py::arg("phase") = cplx(1.0, 0.0),
                    "Build from {qubit: 'X'|'Y'|'Z'} with a phase in {1,-1,1j,-1j}.")
        .def_property_readonly("num_qubits", &PauliString::num_qubits)
        .def_property_readonly("phase", &PauliString::phase)
        .def("hermitian", &PauliString::hermitian)
        .def("__mul__", &PauliString::operator*)
        .def("__eq__", &PauliString::operator==)
        .def("__repr__", &PauliString::to_string);

    py::class_<Gate>(m, "Gate")
        .def_static("h", &Gate::h, py::arg("qubit"))
        .def_static("x", &Gate::x, py::arg("qubit"))
        .def_static("z", &Gate::z, py::arg("qubit"))
        .def_static("s", &Gate::s, py::arg("qubit"))
        .def_static("cnot", &Gate::cnot, py::arg("control"), py::arg("target"))
        .def_static("ch", &Gate::ch, py::arg("control"), py::arg("target"))
        .def_static("unitary1",
                    [](int qubit, const std::array<cplx, 4>& u) {
                        return Gate::unitary1(qubit, u);
                    })
        .def_static("unitary2",
                    [](int q1, int q2, const std::array<cplx, 16>& u) {
                        return Gate::unitary2(q1, q2, u);
                    });

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<int>(), py::arg("num_qubits"))
        .def_readonly("num_qubits", &Circuit::num_qubits)
        .def("append", &Circuit::append)
        .def("extend", &Circuit::extend)
        .def("__len__", [](const Circuit& c) { return c.gates.size(); });

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int>(), py::arg("num_qubits"))
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def("amplitudes",
             [](const StateVector& s) {
                 const auto span = s.amplitudes();
                 Eigen::VectorXcd v(span.size());
                 for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = span[i];
                 return v;
             },
             "Dense amplitude vector (little-endian basis indices).")
        .def("amplitude", &StateVector::amplitude)
        .def("norm", &StateVector::norm)
        .def("apply", py::overload_cast<const Gate&>(&StateVector::apply))
        .def("apply", py::overload_cast<const Circuit&>(&StateVector::apply))
        .def("copy", [](const StateVector& s) { return StateVector(s); });

    m.def("max_qubits", &max_qubits);
    m.def("new_zero_state", &new_zero_state, py::arg("num_qubits"));
    m.def("agp_prep_circuit", &agp_prep_circuit, py::arg("num_qubits"));
    m.def("prepare_agp", &prepare_agp, py::arg("num_qubits"));
    m.def("expectation",
          py::overload_cast<const StateVector&, const PauliString&>(&expectation),
          py::arg("state"), py::arg("op"));
    m.def("project_particle_number",
          [](const StateVector& s, int n) {
              Projection p = project_particle_number(s, n);
              return py::make_tuple(std::move(p.state), p.weight);
          },
          py::arg("state"), py::arg("particles"),
          "Returns (state, weight); a zero weight flags an empty sector.");
    m.def("exact_outcome_probabilities", &exact_outcome_probabilities,
          py::arg("state"), py::arg("rotation"));
    m.def("sample_shots",
          [](const StateVector& s, const Circuit& rotation, long shots,
             py::object noise, std::uint64_t seed) {
              return sample_shots(s, rotation, shots, noise_from_args(noise), seed);
          },
          py::arg("state"), py::arg("rotation"), py::arg("shots"),
          py::arg("noise") = py::none(), py::arg("seed") = 0);

    py::class_<PairIndex>(m, "PairIndex")
        .def(py::init<int>(), py::arg("pair"))
        .def_readonly("p", &PairIndex::p)
        .def("first_orbital", &PairIndex::first_orbital)
        .def("second_orbital", &PairIndex::second_orbital);

    py::enum_<Component>(m, "Component")
        .value("REAL", Component::Real)
        .value("IMAG", Component::Imag);

    m.def("jw_pair_creation",
          [](int pair, int num_qubits, bool with_strings) {
              return jw_pair_creation(PairIndex(pair), num_qubits, with_strings);
          },
          py::arg("pair"), py::arg("num_qubits"), py::arg("with_strings"));
    m.def("pauli_expansion_pair_hopper",
          [](int p, int q, Component c, int num_qubits) {
              return pauli_expansion_pair_hopper(PairIndex(p), PairIndex(q), c,
                                                 num_qubits);
          },
          py::arg("p"), py::arg("q"), py::arg("component"), py::arg("num_qubits"));
    m.def("diagonal_pair_occupation",
          [](int pair, int num_qubits) {
              return diagonal_pair_occupation(PairIndex(pair), num_qubits);
          },
          py::arg("pair"), py::arg("num_qubits"));

    py::class_<MeasurementSetting>(m, "MeasurementSetting")
        .def_readonly("num_qubits", &MeasurementSetting::num_qubits)
        .def_readonly("pair_p", &MeasurementSetting::pair_p)
        .def_readonly("pair_q", &MeasurementSetting::pair_q)
        .def_readonly("component", &MeasurementSetting::component)
        .def_readonly("rotation", &MeasurementSetting::rotation)
        .def("is_diagonal", &MeasurementSetting::is_diagonal)
        .def("label", &MeasurementSetting::label)
        .def("decode_table", [](const MeasurementSetting& s) {
            std::vector<std::pair<int, int>> out;
            for (const auto& d : s.decode) {
                out.emplace_back(d.eigenvalue, d.local_particles);
            }
            return out;
        });

    m.def("plan_settings", &plan_settings, py::arg("num_qubits"));
    m.def("estimate_entry",
          [](const Histogram& hist, const MeasurementSetting& setting,
             py::object n_filter, int diagonal_pair) {
              std::optional<int> filter;
              if (!n_filter.is_none()) filter = n_filter.cast<int>();
              const EntryEstimate est =
                  estimate_entry(hist, setting, filter, diagonal_pair);
              py::dict d;
              d["value"] = est.value;
              d["se_re"] = est.se_re;
              d["se_im"] = est.se_im;
              d["retained"] = est.retained;
              d["empty_sector"] = est.empty_sector;
              return d;
          },
          py::arg("histogram"), py::arg("setting"), py::arg("n_filter") = py::none(),
          py::arg("diagonal_pair") = 0);

    py::class_<GeminalMatrix>(m, "GeminalMatrix")
        .def(py::init<Eigen::MatrixXcd>())
        .def_property_readonly("pair_count", &GeminalMatrix::pair_count)
        .def("entries", &GeminalMatrix::entries)
        .def("has_errors", &GeminalMatrix::has_errors)
        .def("stderr_re", &GeminalMatrix::stderr_re)
        .def("stderr_im", &GeminalMatrix::stderr_im)
        .def("to_csv", &GeminalMatrix::to_csv);

    m.def("assemble_exact", &assemble_exact, py::arg("state"));
    m.def("embed_orbital_block", &embed_orbital_block, py::arg("k"));
    m.def("largest_eigenvalue",
          [](const Eigen::MatrixXcd& matrix) {
              const EigenResult res = largest_eigenvalue(matrix);
              return py::make_tuple(res.value, res.vector);
          },
          py::arg("matrix"));
    m.def("yang_coleman_bound", &yang_coleman_bound, py::arg("particles"),
          py::arg("orbitals"));
    m.def("condensation_verdict",
          [](int r, py::object sector, const GeminalMatrix& k) {
              std::optional<int> sec;
              if (!sector.is_none()) sec = sector.cast<int>();
              return report_to_dict(condensation_verdict(r, sec, k));
          },
          py::arg("num_qubits"), py::arg("sector"), py::arg("k"));

    py::class_<TwoRDM>(m, "TwoRDM")
        .def_property_readonly("num_orbitals", &TwoRDM::num_orbitals)
        .def("entries", &TwoRDM::entries)
        .def("ordered_pair_trace", &TwoRDM::ordered_pair_trace)
        .def_static("pair_row", &TwoRDM::pair_row)
        .def("to_csv", &TwoRDM::to_csv);

    m.def("brute_force_2rdm", &brute_force_2rdm, py::arg("state"));
    m.def("geminal_block_of", &geminal_block_of, py::arg("rdm"));
    m.def("closed_form_lambda",
          [](py::object sector, int num_qubits) {
              std::optional<int> sec;
              if (!sector.is_none()) sec = sector.cast<int>();
              return closed_form_lambda(sec, num_qubits);
          },
          py::arg("sector"), py::arg("num_qubits"));

    m.def("export_circuit_text", &export_circuit_text, py::arg("circuit"),
          py::arg("measured_qubits"));

    m.def("collect_histograms",
          [](int num_qubits, long shots, py::object noise, std::uint64_t seed) {
              return collect_histograms(num_qubits, shots, noise_from_args(noise),
                                        seed);
          },
          py::arg("num_qubits"), py::arg("shots"), py::arg("noise") = py::none(),
          py::arg("seed") = 0);
    m.def("geminal_from_histograms",
          [](int num_qubits, const std::vector<MeasurementSetting>& settings,
             const std::vector<Histogram>& histograms, py::object sector) {
              std::optional<int> sec;
              if (!sector.is_none()) sec = sector.cast<int>();
              return geminal_from_histograms(num_qubits, settings, histograms, sec);
          },
          py::arg("num_qubits"), py::arg("settings"), py::arg("histograms"),
          py::arg("sector") = py::none());

    m.def("sweep",
          [](const std::vector<int>& r_list, const std::string& sectors,
             const std::string& mode, long shots, py::object noise,
             std::uint64_t seed, int threads) {
              RunConfig config;
              config.r_list = r_list;
              if (sectors == "ensemble") {
                  config.sectors = RunConfig::Sectors::Ensemble;
              } else if (sectors == "all") {
                  config.sectors = RunConfig::Sectors::AllEvenN;
              } else {
                  throw std::invalid_argument("sectors must be 'ensemble' or 'all'");
              }
              config.mode = (mode == "shots") ? RunConfig::Mode::Shots
                                              : RunConfig::Mode::Exact;
              config.shots = shots;
              config.noise = noise_from_args(noise);
              config.seed = seed;
              config.threads = threads;
              const SweepResult result = cmd_sweep(config);
              py::list rows;
              for (const auto& row : result.rows) rows.append(report_to_dict(row));
              return rows;
          },
          py::arg("r_list"), py::arg("sectors") = "ensemble",
          py::arg("mode") = "exact", py::arg("shots") = 8192,
          py::arg("noise") = py::none(), py::arg("seed") = 0, py::arg("threads") = 1);

    m.def("run_verification", [](int r_max) {
        const VerifyReport report = run_verification(VerifyOptions{r_max});
        py::list checks;
        for (const auto& c : report.checks) {
            py::dict d;
            d["name"] = c.name;
            d["pass"] = c.pass;
            d["detail"] = c.detail;
            checks.append(d);
        }
        return checks;
    }, py::arg("r_max") = 12);
}
