#include "qmpc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmpc {

namespace {

constexpr double kRelativeEps = 1e-12;

std::vector<Edge> internal_edges_of(const std::vector<int>& qubits, const DeviceModel& d) {
    std::set<int> in(qubits.begin(), qubits.end());
    std::vector<Edge> edges;
    for (const auto& e : d.edges()) {
        if (in.count(e.a) && in.count(e.b)) edges.push_back({e.a, e.b});
    }
    return edges;
}

}  // namespace

std::vector<PartitionCandidate> candidates(const DeviceModel& d, const std::set<int>& allocated,
                                           int size) {
    if (size < 1) throw std::invalid_argument("partition size must be >= 1");
    const int n = d.num_qubits();
    std::vector<std::vector<int>> grown;
    for (int seed = 0; seed < n; ++seed) {
        if (allocated.count(seed)) continue;
        std::set<int> part{seed};
        while (static_cast<int>(part.size()) < size) {
            int best = -1;
            double best_cost = std::numeric_limits<double>::infinity();
            for (int q : part) {
                for (int nb : d.neighbors(q)) {
                    if (part.count(nb) || allocated.count(nb)) continue;
                    double sum = 0.0;
                    int links = 0;
                    for (int p : part) {
                        if (d.has_edge(nb, p)) {
                            sum += d.edge_error(nb, p);
                            ++links;
                        }
                    }
                    double cost = sum / links + d.readout(nb);
                    if (cost < best_cost || (cost == best_cost && nb < best)) {
                        best = nb;
                        best_cost = cost;
                    }
                }
            }
            if (best < 0) break;  // region exhausted
            part.insert(best);
        }
        if (static_cast<int>(part.size()) == size)
            grown.emplace_back(part.begin(), part.end());
    }
    std::vector<PartitionCandidate> result;
    for (auto& qubits : grown) {
        bool dup = false;
        for (const auto& c : result) {
            if (c.qubits == qubits) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        PartitionCandidate cand;
        cand.internal_edges = internal_edges_of(qubits, d);
        cand.qubits = std::move(qubits);
        result.push_back(std::move(cand));
    }
    if (result.empty())
        throw InfeasibleError("no connected region of " + std::to_string(size) +
                              " unallocated qubits on " + d.name());
    return result;
}

std::vector<Edge> crosstalk_edges(const PartitionCandidate& c, const std::set<int>& allocated,
                                  const DeviceModel& d) {
    std::vector<Edge> busy;
    for (const auto& e : d.edges()) {
        if (allocated.count(e.a) && allocated.count(e.b)) busy.push_back({e.a, e.b});
    }
    std::vector<Edge> flagged;
    for (const Edge& e : c.internal_edges) {
        bool hit = false;
        for (const Edge& b : busy) {
            if (e.first == b.first || e.first == b.second || e.second == b.first ||
                e.second == b.second)
                continue;  // one-hop pairs are vertex-disjoint
            int dmin = std::min({d.distance(e.first, b.first), d.distance(e.first, b.second),
                                 d.distance(e.second, b.first), d.distance(e.second, b.second)});
            if (dmin == 1) {
                hit = true;
                break;
            }
        }
        if (hit) flagged.push_back(e);
    }
    return flagged;
}

double efs(const PartitionCandidate& c, const Circuit& circ, const DeviceModel& d, double sigma) {
    if (sigma < 1.0) throw std::invalid_argument("sigma must be >= 1");
    if (static_cast<int>(c.qubits.size()) < circ.num_qubits)
        throw std::invalid_argument("partition smaller than circuit width");
    auto [n1q, n2q] = gate_counts(circ);
    double avg2q = 0.0;
    if (!c.internal_edges.empty()) {
        std::set<Edge> flagged(c.crosstalk_edges.begin(), c.crosstalk_edges.end());
        double sum = 0.0;
        for (const Edge& e : c.internal_edges) {
            double err = d.edge_error(e.first, e.second);
            sum += flagged.count(e) ? err * sigma : err;
        }
        avg2q = sum / c.internal_edges.size();
    } else if (n2q > 0) {
        throw InfeasibleError("candidate has no internal edges for a circuit with two-qubit gates");
    }
    double sum1q = 0.0;
    double sum_readout = 0.0;
    for (int q : c.qubits) {
        sum1q += d.e1q(q);
        sum_readout += d.readout(q);
    }
    double avg1q = sum1q / c.qubits.size();
    return avg2q * n2q + avg1q * n1q + sum_readout;
}

Allocation select_partition(const Circuit& circ, const DeviceModel& d,
                            const std::set<int>& allocated, double sigma) {
    auto cands = candidates(d, allocated, circ.num_qubits);
    bool found = false;
    Allocation best;
    for (auto& cand : cands) {
        cand.crosstalk_edges = crosstalk_edges(cand, allocated, d);
        double score;
        try {
            score = efs(cand, circ, d, sigma);
        } catch (const InfeasibleError&) {
            continue;
        }
        if (!found || score < best.efs ||
            (score == best.efs && cand.qubits < best.partition.qubits)) {
            best = {circ.name, cand, score};
            found = true;
        }
    }
    if (!found) throw InfeasibleError("no feasible partition for circuit '" + circ.name + "'");
    return best;
}

BatchPlan allocate_batch(const std::vector<Circuit>& circuits, const DeviceModel& d, double sigma,
                         double threshold) {
    if (threshold < 0.0) throw std::invalid_argument("threshold must be >= 0");
    for (const Circuit& c : circuits) {
        if (c.num_qubits > d.num_qubits())
            throw InfeasibleError("circuit '" + c.name + "' is wider than device " + d.name());
    }
    std::vector<int> order(circuits.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Circuit& ca = circuits[a];
        const Circuit& cb = circuits[b];
        if (ca.num_qubits != cb.num_qubits) return ca.num_qubits > cb.num_qubits;
        int cxa = gate_counts(ca).two_qubit;
        int cxb = gate_counts(cb).two_qubit;
        if (cxa != cxb) return cxa > cxb;
        if (ca.name != cb.name) return ca.name < cb.name;
        return a < b;
    });

    // Best score each circuit can get alone; reused across batches.
    std::vector<double> efs_ind(circuits.size());
    for (int idx : order) efs_ind[idx] = select_partition(circuits[idx], d, {}, sigma).efs;

    BatchPlan plan;
    plan.sigma = sigma;
    plan.threshold = threshold;
    std::vector<int> pending = order;
    while (!pending.empty()) {
        std::vector<BatchPlan::Entry> batch;
        std::set<int> allocated;
        std::vector<int> deferred;
        for (int idx : pending) {
            Allocation alloc;
            try {
                alloc = select_partition(circuits[idx], d, allocated, sigma);
            } catch (const InfeasibleError&) {
                deferred.push_back(idx);
                continue;
            }
            double rel = (alloc.efs - efs_ind[idx]) / std::max(efs_ind[idx], kRelativeEps);
            if (rel <= threshold) {
                allocated.insert(alloc.partition.qubits.begin(), alloc.partition.qubits.end());
                batch.push_back({idx, std::move(alloc)});
            } else {
                deferred.push_back(idx);
            }
        }
        if (batch.empty())
            throw InfeasibleError("batching made no progress");  // unreachable: first circuit always fits
        plan.batches.push_back(std::move(batch));
        pending = std::move(deferred);
    }
    return plan;
}

nlohmann::json plan_to_json(const BatchPlan& plan, const std::vector<Circuit>& circuits,
                            const DeviceModel& d) {
    nlohmann::json j;
    j["device"] = d.name();
    j["sigma"] = plan.sigma;
    if (std::isinf(plan.threshold))
        j["threshold"] = "none";
    else
        j["threshold"] = plan.threshold;
    j["batches"] = nlohmann::json::array();
    j["throughput"] = nlohmann::json::array();
    for (const auto& batch : plan.batches) {
        nlohmann::json jb = nlohmann::json::array();
        int used = 0;
        for (const auto& entry : batch) {
            nlohmann::json je;
            je["circuit"] = circuits[entry.circuit_index].name;
            je["index"] = entry.circuit_index;
            je["qubits"] = entry.alloc.partition.qubits;
            je["efs"] = entry.alloc.efs;
            nlohmann::json flagged = nlohmann::json::array();
            for (const Edge& e : entry.alloc.partition.crosstalk_edges)
                flagged.push_back({e.first, e.second});
            je["crosstalk_edges"] = flagged;
            used += static_cast<int>(entry.alloc.partition.qubits.size());
            jb.push_back(std::move(je));
        }
        j["batches"].push_back(std::move(jb));
        j["throughput"].push_back(hardware_throughput(used, d.num_qubits()));
    }
    return j;
}

}  // namespace qmpc
