#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmpc {

enum class GateKind {
    Id,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    U3,
    Cx,
    Swap,
    Measure,
    Barrier,
};

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

/// Number of qubit operands, or -1 for barrier (variable).
int gate_arity(GateKind kind);
/// Number of angle parameters (0 except rx/ry/rz = 1, u3 = 3).
int gate_param_count(GateKind kind);

struct Gate {
    GateKind kind{GateKind::Id};
    std::vector<int> qubits;
    std::vector<double> params;

    bool is_two_qubit() const { return kind == GateKind::Cx || kind == GateKind::Swap; }
    bool is_unitary() const { return kind != GateKind::Measure && kind != GateKind::Barrier; }

    bool operator==(const Gate&) const = default;
};

/// A circuit over logical qubits. Gates are kept in program order and
/// include measure/barrier entries; `measured_qubits` lists measurement
/// targets in the order they appear (this order defines the bit order of
/// sampled result keys).
struct Circuit {
    std::string name;
    int num_qubits = 0;
    std::vector<Gate> gates;
    std::vector<int> measured_qubits;

    /// Throws std::invalid_argument when a structural invariant is broken:
    /// arity/param mismatches, duplicate operands, out-of-range indices,
    /// gates after a qubit's measurement, or duplicate measurements.
    void validate() const;

    int gate_count() const { return static_cast<int>(gates.size()); }
};

/// Structural equality ignoring the name.
bool structurally_equal(const Circuit& a, const Circuit& b);

struct GateCounts {
    int one_qubit = 0;
    int two_qubit = 0;
};

/// Counts unitary gates only; cx and swap count as two-qubit (a swap counts
/// once here, not as its 3-cx decomposition).
GateCounts gate_counts(const Circuit& c);

/// Inverse of a unitary gate. Throws std::invalid_argument for measure/barrier.
Gate inverse_gate(const Gate& g);

/// Weighted interaction graph: (a,b) with a<b -> number of cx acting on that
/// logical pair.
std::map<std::pair<int, int>, int> interaction_graph(const Circuit& c);

/// Replaces every swap by its 3-cx expansion; other gates untouched.
Circuit decompose_swaps(const Circuit& c);

}  // namespace qmpc
