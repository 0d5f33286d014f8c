#include "qmpc/pipeline.hpp"

namespace qmpc {

PipelineResult run_pipeline(const std::vector<Circuit>& circuits, const DeviceModel& d,
                            double sigma, double threshold, const NoiseSpec& spec) {
    PipelineResult result;
    result.plan = allocate_batch(circuits, d, sigma, threshold);
    result.compiled.resize(circuits.size());
    result.distributions.resize(circuits.size());
    for (const auto& batch : result.plan.batches) {
        std::vector<std::pair<Allocation, Circuit>> members;
        std::vector<int> indices;
        for (const auto& entry : batch) {
            CompiledCircuit compiled = compile_program(circuits[entry.circuit_index], entry.alloc, d);
            members.push_back({entry.alloc, compiled.physical});
            indices.push_back(entry.circuit_index);
            result.compiled[entry.circuit_index] = std::move(compiled);
        }
        CompositeJob job = merge(members, d);
        auto dists = simulate_noisy(job, d, spec);
        for (size_t i = 0; i < indices.size(); ++i)
            result.distributions[indices[i]] = std::move(dists[i]);
        result.jobs.push_back(std::move(job));
    }
    return result;
}

double mean_throughput(const BatchPlan& plan, const DeviceModel& d) {
    if (plan.batches.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& batch : plan.batches) {
        int used = 0;
        for (const auto& entry : batch) used += static_cast<int>(entry.alloc.partition.qubits.size());
        sum += hardware_throughput(used, d.num_qubits());
    }
    return sum / plan.batches.size();
}

}  // namespace qmpc
