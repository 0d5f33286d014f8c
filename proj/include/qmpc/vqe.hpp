#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmpc/circuit.hpp"
#include "qmpc/device.hpp"
#include "qmpc/simulator.hpp"
#include "qmpc/zne.hpp"

namespace qmpc {

struct PauliTerm {
    std::string pauli;  // over {I,X,Y,Z}, one char per qubit
    double coeff = 0.0;

    bool operator==(const PauliTerm&) const = default;
};

struct PauliHamiltonian {
    int n = 0;
    std::vector<PauliTerm> terms;  // unique pauli strings, coefficients pre-summed
};

/// Reads lines of "<pauli-string> <coefficient>"; '#' starts a comment.
/// Duplicate strings are summed.
PauliHamiltonian parse_hamiltonian(const std::string& text);
PauliHamiltonian load_hamiltonian(const std::filesystem::path& path);

/// Greedy qubit-wise-commuting grouping: terms join the first group whose
/// every member matches them position by position (equal Paulis or an I).
std::vector<std::vector<PauliTerm>> qwc_group(const PauliHamiltonian& h);

/// Appends the group's shared basis rotations (H for X, Sdg+H for Y) to the
/// ansatz and measures every qubit that is non-identity somewhere in the
/// group. Throws for non-QWC groups or the all-identity group.
Circuit measurement_circuit(const std::vector<PauliTerm>& group, const Circuit& ansatz);

/// Hardware-efficient ansatz: alternating Ry(theta) Rz(theta) layers and cx
/// entanglers, with a final rotation layer after the last entangler, so
/// n=2, reps=2 has 12 rotations and 2 cx.
struct AnsatzSpec {
    int n = 2;
    int reps = 2;
    std::vector<std::pair<int, int>> entangler = {{0, 1}};
};

Circuit build_ansatz(const AnsatzSpec& spec, double theta);
Circuit build_ansatz(const AnsatzSpec& spec, std::span<const double> thetas);

/// Rotation-parameter count of the ansatz: 2 * n * (reps + 1).
int ansatz_parameter_count(const AnsatzSpec& spec);

struct SweepResult {
    std::vector<double> thetas;
    std::vector<double> energies;
    double min_energy = 0.0;
    double min_theta = 0.0;
    int circuits = 0;  // measurement circuits executed
    int groups = 0;
    int batches = 0;
    double throughput = 0.0;
};

/// Sweeps a shared scalar parameter: per theta one measurement circuit per
/// group; parallel mode pushes all theta x group circuits through the
/// partitioner as one workload. Energy = sum of coeff * term expectation.
SweepResult energy_sweep(const PauliHamiltonian& h, const AnsatzSpec& spec,
                         std::span<const double> thetas, ExecMode mode, const DeviceModel& d,
                         const NoiseSpec& noise, double sigma, double threshold);

/// Minimum eigenvalue of the dense Hamiltonian matrix (n <= 12).
double exact_ground_energy(const PauliHamiltonian& h);

nlohmann::json sweep_to_json(const SweepResult& sweep);

}  // namespace qmpc
