#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmpc/circuit.hpp"
#include "qmpc/device.hpp"

namespace qmpc {

/// Raised when a circuit cannot be placed (too wide, no connected region
/// left, or an unroutable partition).
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Connected set of physical qubits with its internal coupling edges and the
/// subset of them flagged as crosstalk-affected by already-running programs.
struct PartitionCandidate {
    std::vector<int> qubits;            // sorted
    std::vector<Edge> internal_edges;   // sorted
    std::vector<Edge> crosstalk_edges;  // sorted subset of internal_edges
};

struct Allocation {
    std::string circuit_name;
    PartitionCandidate partition;
    double efs = 0.0;
};

/// Result of batching circuits for simultaneous execution: each batch holds
/// pairwise-disjoint allocations; `circuit_index` refers to the input list.
struct BatchPlan {
    struct Entry {
        int circuit_index = 0;
        Allocation alloc;
    };
    std::vector<std::vector<Entry>> batches;
    double sigma = 4.0;
    double threshold = 0.0;  // +inf means "no fidelity constraint"
};

/// Connected partition candidates of exactly `size` unallocated qubits, one
/// grown greedily from each unallocated seed (cheapest neighbor first, by
/// mean connecting CNOT error + readout), deduplicated, in seed order.
/// Throws InfeasibleError when no unallocated connected region is large
/// enough.
std::vector<PartitionCandidate> candidates(const DeviceModel& d, const std::set<int>& allocated,
                                           int size);

/// Internal edges of the candidate that form a one-hop pair with at least
/// one coupling edge lying fully inside the allocated qubit set.
std::vector<Edge> crosstalk_edges(const PartitionCandidate& c, const std::set<int>& allocated,
                                  const DeviceModel& d);

/// Estimated fidelity score (lower is better):
///   avg2q_cross * n2q + avg1q * n1q + sum of readout errors,
/// where avg2q_cross is the mean internal CNOT error with flagged edges
/// scaled by sigma. Throws when the circuit has two-qubit gates but the
/// candidate has no internal edges.
double efs(const PartitionCandidate& c, const Circuit& circ, const DeviceModel& d, double sigma);

/// Best candidate of the circuit's width by EFS; ties by lexicographically
/// smallest qubit set.
Allocation select_partition(const Circuit& circ, const DeviceModel& d,
                            const std::set<int>& allocated, double sigma);

/// Sequentially allocates circuits (widest first) into batches. A circuit
/// joins the current batch when its best parallel EFS degrades by at most
/// `threshold` relative to its best EFS on the empty device; otherwise it is
/// deferred to a later batch.
BatchPlan allocate_batch(const std::vector<Circuit>& circuits, const DeviceModel& d, double sigma,
                         double threshold);

nlohmann::json plan_to_json(const BatchPlan& plan, const std::vector<Circuit>& circuits,
                            const DeviceModel& d);

}  // namespace qmpc
