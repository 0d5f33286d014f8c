#pragma once

#include <vector>

#include "qmpc/circuit.hpp"
#include "qmpc/device.hpp"
#include "qmpc/partition.hpp"

namespace qmpc {

/// Injective map logical qubit index -> physical qubit id.
struct Layout {
    std::vector<int> log_to_phys;

    int operator[](int logical) const { return log_to_phys[logical]; }
    int width() const { return static_cast<int>(log_to_phys.size()); }
    bool operator==(const Layout&) const = default;
};

/// Noise-aware initial placement: logical qubits ranked by interaction
/// degree, partition qubits by internal connectivity (ties by mean incident
/// CNOT error, then id). For widths up to 6 the rank assignment is refined
/// by exhaustively picking the degree-consistent layout with the fewest
/// routed swaps.
Layout initial_layout(const Circuit& circ, const PartitionCandidate& part, const DeviceModel& d);

/// Routes the circuit onto the partition: every cx in the result joins
/// coupled physical qubits, swaps move operands along cheapest paths
/// (3 * e2q per hop) inside the partition, and measurements are re-emitted
/// at the end on each logical qubit's final physical home. When `final_out`
/// is given it receives the end-of-circuit logical->physical map.
Circuit route(const Circuit& circ, const Layout& layout, const PartitionCandidate& part,
              const DeviceModel& d, Layout* final_out = nullptr);

struct CompiledCircuit {
    Circuit physical;
    Layout initial;
    Layout final_perm;
};

CompiledCircuit compile_program(const Circuit& circ, const Allocation& alloc, const DeviceModel& d);

/// Swap gates inserted by route() for the given layout (routing cost probe).
int routed_swap_count(const Circuit& circ, const Layout& layout, const PartitionCandidate& part,
                      const DeviceModel& d);

}  // namespace qmpc
