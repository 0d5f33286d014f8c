#pragma once

#include <vector>

#include "json.hpp"
#include "qmpc/circuit.hpp"
#include "qmpc/device.hpp"
#include "qmpc/partition.hpp"

namespace qmpc {

/// Time slices of unit-duration gates; within a slice gates act on disjoint
/// qubits. Slice 0 runs first.
struct Schedule {
    std::vector<std::vector<Gate>> slices;
    int depth() const { return static_cast<int>(slices.size()); }
};

/// As-late-as-possible schedule: every gate sits in the latest slice its
/// successors allow, all measurements land aligned in the final slice, and
/// barriers fence their qubits.
Schedule alap_schedule(const Circuit& circ);

struct CrosstalkEvent {
    int slice = 0;
    Edge e1;
    Edge e2;

    bool operator==(const CrosstalkEvent&) const = default;
};

struct CompositeMember {
    Allocation alloc;
    Circuit circuit;    // swap-decomposed physical circuit
    Schedule schedule;  // the member's own ALAP schedule
    int offset = 0;     // idle slices before the member starts
};

/// One batch merged for simultaneous execution. Member schedules are
/// end-aligned (shorter circuits idle at the start) and crosstalk_events
/// lists every composite slice where cx gates from different members sit on
/// one-hop-paired coupling edges.
struct CompositeJob {
    std::vector<CompositeMember> members;
    Schedule merged;
    std::vector<CrosstalkEvent> events;
};

CompositeJob merge(const std::vector<std::pair<Allocation, Circuit>>& batch, const DeviceModel& d);

int composite_depth(const CompositeJob& job);

nlohmann::json job_to_json(const CompositeJob& job);

}  // namespace qmpc
