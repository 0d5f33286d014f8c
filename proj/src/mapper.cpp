#include "qmpc/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace qmpc {

namespace {

void check_layout(const Circuit& circ, const Layout& layout, const PartitionCandidate& part) {
    if (layout.width() != circ.num_qubits)
        throw std::invalid_argument("layout width does not match circuit");
    std::set<int> part_set(part.qubits.begin(), part.qubits.end());
    std::set<int> image;
    for (int p : layout.log_to_phys) {
        if (!part_set.count(p)) throw std::invalid_argument("layout maps outside the partition");
        if (!image.insert(p).second) throw std::invalid_argument("layout is not injective");
    }
}

// Cheapest path between two partition qubits, hop cost 3 * e2q (one swap).
// Returns the vertex sequence src..dst; throws when the partition-induced
// subgraph does not connect them.
std::vector<int> cheapest_path(int src, int dst, const std::set<int>& part_set,
                               const DeviceModel& d) {
    std::vector<double> dist(d.num_qubits(), std::numeric_limits<double>::infinity());
    std::vector<int> parent(d.num_qubits(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0.0;
    heap.push({0.0, src});
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) continue;
        if (u == dst) break;
        for (int v : d.neighbors(u)) {
            if (!part_set.count(v)) continue;
            double nd = du + 3.0 * d.edge_error(u, v);
            if (nd < dist[v]) {
                dist[v] = nd;
                parent[v] = u;
                heap.push({nd, v});
            } else if (nd == dist[v] && u < parent[v]) {
                parent[v] = u;
            }
        }
    }
    if (std::isinf(dist[dst]))
        throw InfeasibleError("partition does not connect qubits " + std::to_string(src) + " and " +
                              std::to_string(dst));
    std::vector<int> path;
    for (int v = dst; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

Circuit route(const Circuit& circ, const Layout& layout, const PartitionCandidate& part,
              const DeviceModel& d, Layout* final_out) {
    check_layout(circ, layout, part);
    std::set<int> part_set(part.qubits.begin(), part.qubits.end());
    std::vector<int> phys_of_log = layout.log_to_phys;
    std::vector<int> log_at_phys(d.num_qubits(), -1);
    for (size_t l = 0; l < phys_of_log.size(); ++l) log_at_phys[phys_of_log[l]] = static_cast<int>(l);

    Circuit out;
    out.name = circ.name;
    out.num_qubits = d.num_qubits();
    std::vector<int> measure_order;

    auto apply_swap = [&](int pa, int pb) {
        out.gates.push_back({GateKind::Swap, {pa, pb}, {}});
        int la = log_at_phys[pa];
        int lb = log_at_phys[pb];
        log_at_phys[pa] = lb;
        log_at_phys[pb] = la;
        if (la >= 0) phys_of_log[la] = pb;
        if (lb >= 0) phys_of_log[lb] = pa;
    };

    for (const Gate& g : circ.gates) {
        if (g.kind == GateKind::Measure) {
            measure_order.push_back(g.qubits[0]);
            continue;
        }
        if (g.kind == GateKind::Barrier) {
            Gate mapped = g;
            for (int& q : mapped.qubits) q = phys_of_log[q];
            std::sort(mapped.qubits.begin(), mapped.qubits.end());
            out.gates.push_back(std::move(mapped));
            continue;
        }
        if (!g.is_two_qubit()) {
            out.gates.push_back({g.kind, {phys_of_log[g.qubits[0]]}, g.params});
            continue;
        }
        int pa = phys_of_log[g.qubits[0]];
        int pb = phys_of_log[g.qubits[1]];
        if (!d.has_edge(pa, pb)) {
            auto path = cheapest_path(pa, pb, part_set, d);
            for (size_t i = 0; i + 2 < path.size(); ++i) apply_swap(path[i], path[i + 1]);
            pa = phys_of_log[g.qubits[0]];
        }
        out.gates.push_back({g.kind, {pa, phys_of_log[g.qubits[1]]}, g.params});
    }
    for (int lq : measure_order) {
        int pq = phys_of_log[lq];
        out.gates.push_back({GateKind::Measure, {pq}, {}});
        out.measured_qubits.push_back(pq);
    }
    if (final_out) final_out->log_to_phys = phys_of_log;
    return out;
}

int routed_swap_count(const Circuit& circ, const Layout& layout, const PartitionCandidate& part,
                      const DeviceModel& d) {
    Circuit routed = route(circ, layout, part, d);
    int swaps = 0;
    for (const Gate& g : routed.gates) {
        if (g.kind == GateKind::Swap) ++swaps;
    }
    return swaps;
}

Layout initial_layout(const Circuit& circ, const PartitionCandidate& part, const DeviceModel& d) {
    const int width = circ.num_qubits;
    const int size = static_cast<int>(part.qubits.size());
    if (size < width) throw InfeasibleError("partition too small for circuit '" + circ.name + "'");

    auto graph = interaction_graph(circ);
    std::vector<int> weight(width, 0);
    for (const auto& [edge, w] : graph) {
        weight[edge.first] += w;
        weight[edge.second] += w;
    }
    std::vector<int> logical(width);
    for (int l = 0; l < width; ++l) logical[l] = l;
    std::sort(logical.begin(), logical.end(), [&](int a, int b) {
        if (weight[a] != weight[b]) return weight[a] > weight[b];
        return a < b;
    });

    std::vector<int> internal_deg(d.num_qubits(), 0);
    std::vector<double> mean_e2q(d.num_qubits(), 0.0);
    for (const Edge& e : part.internal_edges) {
        ++internal_deg[e.first];
        ++internal_deg[e.second];
        mean_e2q[e.first] += d.edge_error(e.first, e.second);
        mean_e2q[e.second] += d.edge_error(e.first, e.second);
    }
    for (int q : part.qubits) {
        if (internal_deg[q] > 0) mean_e2q[q] /= internal_deg[q];
    }
    std::vector<int> physical = part.qubits;
    std::sort(physical.begin(), physical.end(), [&](int a, int b) {
        if (internal_deg[a] != internal_deg[b]) return internal_deg[a] > internal_deg[b];
        if (mean_e2q[a] != mean_e2q[b]) return mean_e2q[a] < mean_e2q[b];
        return a < b;
    });

    Layout base;
    base.log_to_phys.assign(width, -1);
    for (int i = 0; i < width; ++i) base.log_to_phys[logical[i]] = physical[i];

    // Small circuits: search all placements that keep the busiest logical
    // qubit on the best-connected physical qubit and take the one routing
    // with the fewest swaps.
    if (width <= 6 && size == width && !graph.empty()) {
        std::vector<int> rest;
        for (int q : physical) {
            if (q != physical[0]) rest.push_back(q);
        }
        std::sort(rest.begin(), rest.end());
        std::vector<int> slots;  // logicals other than the busiest, in id order
        for (int l = 0; l < width; ++l) {
            if (l != logical[0]) slots.push_back(l);
        }
        Layout best = base;
        int best_swaps = routed_swap_count(circ, base, part, d);
        do {
            Layout cand;
            cand.log_to_phys.assign(width, -1);
            cand.log_to_phys[logical[0]] = physical[0];
            for (size_t i = 0; i < slots.size(); ++i) cand.log_to_phys[slots[i]] = rest[i];
            int swaps = routed_swap_count(circ, cand, part, d);
            if (swaps < best_swaps ||
                (swaps == best_swaps && cand.log_to_phys < best.log_to_phys)) {
                best_swaps = swaps;
                best = cand;
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
        return best;
    }
    return base;
}

CompiledCircuit compile_program(const Circuit& circ, const Allocation& alloc, const DeviceModel& d) {
    CompiledCircuit result;
    result.initial = initial_layout(circ, alloc.partition, d);
    result.physical = route(circ, result.initial, alloc.partition, d, &result.final_perm);
    return result;
}

}  // namespace qmpc
