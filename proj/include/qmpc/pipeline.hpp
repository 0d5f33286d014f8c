#pragma once

#include <vector>

#include "qmpc/mapper.hpp"
#include "qmpc/partition.hpp"
#include "qmpc/schedule.hpp"
#include "qmpc/simulator.hpp"

namespace qmpc {

/// Full compile-and-execute pass: partition into batches, map and route each
/// allocation, merge every batch, and sample it on the noisy simulator.
/// `distributions[i]` belongs to `circuits[i]`.
struct PipelineResult {
    BatchPlan plan;
    std::vector<CompiledCircuit> compiled;     // by input circuit index
    std::vector<CompositeJob> jobs;            // one per batch
    std::vector<Distribution> distributions;   // by input circuit index
};

PipelineResult run_pipeline(const std::vector<Circuit>& circuits, const DeviceModel& d,
                            double sigma, double threshold, const NoiseSpec& spec);

/// Mean per-batch hardware throughput of a plan.
double mean_throughput(const BatchPlan& plan, const DeviceModel& d);

}  // namespace qmpc
