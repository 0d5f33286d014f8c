#include "qmpc/vqe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qmpc/pipeline.hpp"

namespace qmpc {

namespace {

bool qubitwise_commute(const std::string& a, const std::string& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 'I' && b[i] != 'I' && a[i] != b[i]) return false;
    }
    return true;
}

void check_pauli(const std::string& s) {
    for (char c : s) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw std::invalid_argument("invalid pauli letter in '" + s + "'");
    }
}

/// Shared letter of the group at each position ('I' when all terms are I).
std::string joint_letters(const std::vector<PauliTerm>& group) {
    if (group.empty()) throw std::invalid_argument("empty pauli group");
    std::string joint(group.front().pauli.size(), 'I');
    for (const PauliTerm& term : group) {
        for (size_t i = 0; i < joint.size(); ++i) {
            if (term.pauli[i] == 'I') continue;
            if (joint[i] == 'I')
                joint[i] = term.pauli[i];
            else if (joint[i] != term.pauli[i])
                throw std::invalid_argument("group is not qubit-wise commuting");
        }
    }
    return joint;
}

}  // namespace

PauliHamiltonian parse_hamiltonian(const std::string& text) {
    PauliHamiltonian h;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string pauli;
        if (!(ls >> pauli)) continue;
        double coeff;
        if (!(ls >> coeff)) throw std::invalid_argument("missing coefficient for term " + pauli);
        check_pauli(pauli);
        if (h.terms.empty()) {
            h.n = static_cast<int>(pauli.size());
        } else if (static_cast<int>(pauli.size()) != h.n) {
            throw std::invalid_argument("pauli strings differ in length");
        }
        auto it = std::find_if(h.terms.begin(), h.terms.end(),
                               [&](const PauliTerm& t) { return t.pauli == pauli; });
        if (it != h.terms.end())
            it->coeff += coeff;
        else
            h.terms.push_back({pauli, coeff});
    }
    if (h.terms.empty()) throw std::invalid_argument("hamiltonian has no terms");
    return h;
}

PauliHamiltonian load_hamiltonian(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hamiltonian(buf.str());
}

std::vector<std::vector<PauliTerm>> qwc_group(const PauliHamiltonian& h) {
    std::vector<std::vector<PauliTerm>> groups;
    for (const PauliTerm& term : h.terms) {
        bool placed = false;
        for (auto& group : groups) {
            bool fits = true;
            for (const PauliTerm& member : group) {
                if (!qubitwise_commute(term.pauli, member.pauli)) {
                    fits = false;
                    break;
                }
            }
            if (fits) {
                group.push_back(term);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({term});
    }
    return groups;
}

Circuit measurement_circuit(const std::vector<PauliTerm>& group, const Circuit& ansatz) {
    std::string joint = joint_letters(group);
    if (static_cast<int>(joint.size()) != ansatz.num_qubits)
        throw std::invalid_argument("group width does not match ansatz");
    Circuit circ = ansatz;
    bool any = false;
    for (size_t q = 0; q < joint.size(); ++q) {
        switch (joint[q]) {
            case 'I':
                continue;
            case 'X':
                circ.gates.push_back({GateKind::H, {static_cast<int>(q)}, {}});
                break;
            case 'Y':
                circ.gates.push_back({GateKind::Sdg, {static_cast<int>(q)}, {}});
                circ.gates.push_back({GateKind::H, {static_cast<int>(q)}, {}});
                break;
            default:
                break;  // Z measures directly
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("all-identity group needs no measurement circuit");
    for (size_t q = 0; q < joint.size(); ++q) {
        if (joint[q] == 'I') continue;
        circ.gates.push_back({GateKind::Measure, {static_cast<int>(q)}, {}});
        circ.measured_qubits.push_back(static_cast<int>(q));
    }
    return circ;
}

int ansatz_parameter_count(const AnsatzSpec& spec) { return 2 * spec.n * (spec.reps + 1); }

namespace {

Circuit build_ansatz_impl(const AnsatzSpec& spec, std::span<const double> thetas) {
    if (spec.n < 1 || spec.reps < 1) throw std::invalid_argument("invalid ansatz spec");
    for (const auto& [a, b] : spec.entangler) {
        if (a < 0 || b < 0 || a >= spec.n || b >= spec.n || a == b)
            throw std::invalid_argument("invalid entangler pair");
    }
    Circuit circ;
    circ.name = "ansatz";
    circ.num_qubits = spec.n;
    size_t next = 0;
    auto rotation_layer = [&] {
        for (int q = 0; q < spec.n; ++q) {
            circ.gates.push_back({GateKind::Ry, {q}, {thetas[next++]}});
            circ.gates.push_back({GateKind::Rz, {q}, {thetas[next++]}});
        }
    };
    for (int r = 0; r < spec.reps; ++r) {
        rotation_layer();
        for (const auto& [a, b] : spec.entangler) circ.gates.push_back({GateKind::Cx, {a, b}, {}});
    }
    rotation_layer();
    return circ;
}

}  // namespace

Circuit build_ansatz(const AnsatzSpec& spec, double theta) {
    std::vector<double> thetas(ansatz_parameter_count(spec), theta);
    return build_ansatz_impl(spec, thetas);
}

Circuit build_ansatz(const AnsatzSpec& spec, std::span<const double> thetas) {
    if (static_cast<int>(thetas.size()) != ansatz_parameter_count(spec))
        throw std::invalid_argument("expected " + std::to_string(ansatz_parameter_count(spec)) +
                                    " parameters");
    return build_ansatz_impl(spec, thetas);
}

namespace {

/// Z/I pattern of a term over the measured bits of its group circuit.
std::string measured_pattern(const PauliTerm& term, const std::string& joint) {
    std::string pattern;
    for (size_t i = 0; i < joint.size(); ++i) {
        if (joint[i] == 'I') continue;
        pattern.push_back(term.pauli[i] == 'I' ? 'I' : 'Z');
    }
    return pattern;
}

bool all_identity(const PauliTerm& term) {
    return term.pauli.find_first_not_of('I') == std::string::npos;
}

}  // namespace

SweepResult energy_sweep(const PauliHamiltonian& h, const AnsatzSpec& spec,
                         std::span<const double> thetas, ExecMode mode, const DeviceModel& d,
                         const NoiseSpec& noise, double sigma, double threshold) {
    if (spec.n != h.n) throw std::invalid_argument("ansatz width does not match hamiltonian");
    auto groups = qwc_group(h);
    std::vector<int> measured_groups;  // indices of groups that need a circuit
    double identity_energy = 0.0;
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        bool measurable = false;
        for (const PauliTerm& t : groups[gi]) {
            if (all_identity(t))
                identity_energy += t.coeff;
            else
                measurable = true;
        }
        if (measurable) measured_groups.push_back(static_cast<int>(gi));
    }

    std::vector<Circuit> circuits;
    for (size_t ti = 0; ti < thetas.size(); ++ti) {
        Circuit ansatz = build_ansatz(spec, thetas[ti]);
        for (int gi : measured_groups) {
            Circuit mc = measurement_circuit(groups[gi], ansatz);
            mc.name = "vqe_t" + std::to_string(ti) + "_g" + std::to_string(gi);
            circuits.push_back(std::move(mc));
        }
    }

    SweepResult result;
    result.thetas.assign(thetas.begin(), thetas.end());
    result.circuits = static_cast<int>(circuits.size());
    result.groups = static_cast<int>(groups.size());

    std::vector<Distribution> dists(circuits.size());
    if (mode == ExecMode::Parallel) {
        PipelineResult run = run_pipeline(circuits, d, sigma, threshold, noise);
        dists = std::move(run.distributions);
        result.batches = static_cast<int>(run.plan.batches.size());
        result.throughput = mean_throughput(run.plan, d);
    } else {
        for (size_t i = 0; i < circuits.size(); ++i) {
            PipelineResult run =
                run_pipeline({circuits[i]}, d, sigma, std::numeric_limits<double>::infinity(), noise);
            dists[i] = std::move(run.distributions[0]);
        }
        result.batches = static_cast<int>(circuits.size());
        result.throughput =
            circuits.empty() ? 0.0 : hardware_throughput(spec.n, d.num_qubits());
    }

    for (size_t ti = 0; ti < thetas.size(); ++ti) {
        double energy = identity_energy;
        for (size_t k = 0; k < measured_groups.size(); ++k) {
            const auto& group = groups[measured_groups[k]];
            std::string joint = joint_letters(group);
            const Distribution& dist = dists[ti * measured_groups.size() + k];
            for (const PauliTerm& term : group) {
                if (all_identity(term)) continue;
                energy += term.coeff * expectation(dist, measured_pattern(term, joint));
            }
        }
        result.energies.push_back(energy);
        if (ti == 0 || energy < result.min_energy) {
            result.min_energy = energy;
            result.min_theta = thetas[ti];
        }
    }
    return result;
}

double exact_ground_energy(const PauliHamiltonian& h) {
    if (h.n > 12) throw std::invalid_argument("hamiltonian too wide for dense eigensolver");
    using Mat = Eigen::MatrixXcd;
    const std::complex<double> i(0.0, 1.0);
    const long dim = 1L << h.n;
    Mat total = Mat::Zero(dim, dim);
    // Pauli letters are monomial matrices, so each term contributes one
    // entry per column: |b> -> phase * |b ^ flip>. String position q acts on
    // index bit q, matching the simulator's basis convention.
    for (const PauliTerm& term : h.terms) {
        long flip = 0;
        for (int q = 0; q < h.n; ++q) {
            char c = term.pauli[q];
            if (c == 'X' || c == 'Y') flip |= 1L << q;
        }
        for (long idx = 0; idx < dim; ++idx) {
            std::complex<double> phase = 1.0;
            for (int q = 0; q < h.n; ++q) {
                bool bit = (idx >> q) & 1;
                switch (term.pauli[q]) {
                    case 'Y':
                        phase *= bit ? -i : i;
                        break;
                    case 'Z':
                        if (bit) phase = -phase;
                        break;
                    default:
                        break;
                }
            }
            total(idx ^ flip, idx) += term.coeff * phase;
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(total);
    return solver.eigenvalues().minCoeff();
}

nlohmann::json sweep_to_json(const SweepResult& sweep) {
    nlohmann::json j;
    j["thetas"] = sweep.thetas;
    j["energies"] = sweep.energies;
    j["min_energy"] = sweep.min_energy;
    j["min_theta"] = sweep.min_theta;
    j["circuits"] = sweep.circuits;
    j["groups"] = sweep.groups;
    j["batches"] = sweep.batches;
    j["throughput"] = sweep.throughput;
    return j;
}

}  // namespace qmpc
