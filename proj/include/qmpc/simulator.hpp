#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmpc/circuit.hpp"
#include "qmpc/device.hpp"
#include "qmpc/schedule.hpp"

namespace qmpc {

/// Noise knobs for simulate_noisy; gate/readout rates come from the device
/// calibration, kappa scales the CNOT error of gates caught in a crosstalk
/// event (the execution-side analog of the partitioner's sigma).
struct NoiseSpec {
    double kappa = 4.0;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 0;
};

/// Sampled counts keyed by bitstring; bit i of a key is the outcome of the
/// i-th entry of the circuit's measured-qubit list.
struct Distribution {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;

    std::map<std::string, double> probabilities() const;
};

/// Exact statevector sampling (no noise), deterministic in `seed`. Circuits
/// without measure gates are read out on every qubit in index order.
/// Throws for widths above 24.
Distribution simulate_ideal(const Circuit& circ, std::uint64_t shots, std::uint64_t seed);

/// Exact output probabilities over the measured bits (no sampling).
std::map<std::string, double> ideal_distribution(const Circuit& circ);

/// Exact expectation of an I/Z observable over the measured bits.
double ideal_expectation(const Circuit& circ, const std::string& observable);

/// Per-member noisy sampling of a merged batch: each shot walks the member's
/// schedule, follows every gate with a probabilistic uniform Pauli error
/// (e1q / e2q, the latter scaled by kappa inside crosstalk events), and flips
/// measured bits with their readout error. Members are simulated
/// independently; per-shot RNG streams are derived from (seed, shot,
/// partition), so results are reproducible and, at kappa = 1, independent of
/// batch composition.
std::vector<Distribution> simulate_noisy(const CompositeJob& job, const DeviceModel& d,
                                         const NoiseSpec& spec);

/// Expectation of a tensor observable given as a string over {I, Z} with one
/// character per measured bit: sum of p(b) * (-1)^(parity of b on non-I
/// positions).
double expectation(const Distribution& dist, const std::string& observable);
double expectation(const std::map<std::string, double>& probs, const std::string& observable);

nlohmann::json distribution_to_json(const Distribution& dist, const std::string& circuit,
                                    std::uint64_t seed);

}  // namespace qmpc
