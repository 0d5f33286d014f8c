#include "qmpc/schedule.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qmpc {

Schedule alap_schedule(const Circuit& circ) {
    // Reverse pass: a gate's level counts slices between it and the end.
    std::vector<int> rlevel(circ.gates.size(), 0);
    std::vector<int> frontier(circ.num_qubits, 0);
    int depth = 0;
    for (int i = static_cast<int>(circ.gates.size()) - 1; i >= 0; --i) {
        const Gate& g = circ.gates[i];
        int level = 1;
        for (int q : g.qubits) level = std::max(level, frontier[q] + 1);
        rlevel[i] = level;
        for (int q : g.qubits) frontier[q] = level;
        depth = std::max(depth, level);
    }
    Schedule sched;
    sched.slices.assign(depth, {});
    for (size_t i = 0; i < circ.gates.size(); ++i)
        sched.slices[depth - rlevel[i]].push_back(circ.gates[i]);
    return sched;
}

CompositeJob merge(const std::vector<std::pair<Allocation, Circuit>>& batch, const DeviceModel& d) {
    CompositeJob job;
    std::set<int> used;
    for (const auto& [alloc, circ] : batch) {
        for (int q : alloc.partition.qubits) {
            if (!used.insert(q).second)
                throw std::invalid_argument("allocations overlap on qubit " + std::to_string(q));
        }
        CompositeMember member;
        member.alloc = alloc;
        member.circuit = decompose_swaps(circ);
        member.schedule = alap_schedule(member.circuit);
        job.members.push_back(std::move(member));
    }
    int depth = 0;
    for (const auto& m : job.members) depth = std::max(depth, m.schedule.depth());
    job.merged.slices.assign(depth, {});
    for (auto& m : job.members) {
        m.offset = depth - m.schedule.depth();
        for (int s = 0; s < m.schedule.depth(); ++s) {
            for (const Gate& g : m.schedule.slices[s])
                job.merged.slices[m.offset + s].push_back(g);
        }
    }

    std::set<std::pair<Edge, Edge>> one_hop;
    for (const auto& p : one_hop_pairs(d)) one_hop.insert(p);
    for (int s = 0; s < depth; ++s) {
        std::vector<std::pair<size_t, Edge>> active;  // (member, cx edge)
        for (size_t mi = 0; mi < job.members.size(); ++mi) {
            const auto& m = job.members[mi];
            int local = s - m.offset;
            if (local < 0 || local >= m.schedule.depth()) continue;
            for (const Gate& g : m.schedule.slices[local]) {
                if (g.kind == GateKind::Cx) active.push_back({mi, make_edge(g.qubits[0], g.qubits[1])});
            }
        }
        for (size_t i = 0; i < active.size(); ++i) {
            for (size_t j = i + 1; j < active.size(); ++j) {
                if (active[i].first == active[j].first) continue;
                Edge a = std::min(active[i].second, active[j].second);
                Edge b = std::max(active[i].second, active[j].second);
                if (one_hop.count({a, b})) job.events.push_back({s, a, b});
            }
        }
    }
    std::sort(job.events.begin(), job.events.end(), [](const auto& x, const auto& y) {
        return std::tie(x.slice, x.e1, x.e2) < std::tie(y.slice, y.e1, y.e2);
    });
    job.events.erase(std::unique(job.events.begin(), job.events.end()), job.events.end());
    return job;
}

int composite_depth(const CompositeJob& job) { return job.merged.depth(); }

nlohmann::json job_to_json(const CompositeJob& job) {
    nlohmann::json j;
    j["members"] = nlohmann::json::array();
    for (const auto& m : job.members) {
        nlohmann::json jm;
        jm["circuit"] = m.circuit.name;
        jm["qubits"] = m.alloc.partition.qubits;
        jm["offset"] = m.offset;
        jm["depth"] = m.schedule.depth();
        j["members"].push_back(std::move(jm));
    }
    j["slices"] = nlohmann::json::array();
    for (const auto& slice : job.merged.slices) {
        nlohmann::json js = nlohmann::json::array();
        for (const Gate& g : slice) {
            nlohmann::json jg;
            jg["gate"] = std::string(gate_name(g.kind));
            jg["qubits"] = g.qubits;
            if (!g.params.empty()) jg["params"] = g.params;
            js.push_back(std::move(jg));
        }
        j["slices"].push_back(std::move(js));
    }
    j["crosstalk_events"] = nlohmann::json::array();
    for (const auto& ev : job.events) {
        j["crosstalk_events"].push_back(
            {ev.slice, {ev.e1.first, ev.e1.second}, {ev.e2.first, ev.e2.second}});
    }
    return j;
}

}  // namespace qmpc
