#include "qmpc/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace qmpc {

namespace {

struct GateInfo {
    GateKind kind;
    std::string_view name;
    int arity;
    int params;
};

constexpr std::array<GateInfo, 17> kGateTable{{
    {GateKind::Id, "id", 1, 0},
    {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},
    {GateKind::Z, "z", 1, 0},
    {GateKind::H, "h", 1, 0},
    {GateKind::S, "s", 1, 0},
    {GateKind::Sdg, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},
    {GateKind::Tdg, "tdg", 1, 0},
    {GateKind::Rx, "rx", 1, 1},
    {GateKind::Ry, "ry", 1, 1},
    {GateKind::Rz, "rz", 1, 1},
    {GateKind::U3, "u3", 1, 3},
    {GateKind::Cx, "cx", 2, 0},
    {GateKind::Swap, "swap", 2, 0},
    {GateKind::Measure, "measure", 1, 0},
    {GateKind::Barrier, "barrier", -1, 0},
}};

const GateInfo& info(GateKind kind) {
    for (const auto& gi : kGateTable) {
        if (gi.kind == kind) return gi;
    }
    throw std::logic_error("unknown gate kind");
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
    for (const auto& gi : kGateTable) {
        if (gi.name == name) return gi.kind;
    }
    return std::nullopt;
}

int gate_arity(GateKind kind) { return info(kind).arity; }

int gate_param_count(GateKind kind) { return info(kind).params; }

void Circuit::validate() const {
    if (num_qubits < 1) throw std::invalid_argument("circuit must have at least one qubit");
    std::vector<int> measured_at(num_qubits, -1);
    for (size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        const GateInfo& gi = info(g.kind);
        if (gi.arity >= 0 && static_cast<int>(g.qubits.size()) != gi.arity)
            throw std::invalid_argument(std::string(gi.name) + ": wrong operand count");
        if (g.kind == GateKind::Barrier && g.qubits.empty())
            throw std::invalid_argument("barrier needs at least one qubit");
        if (static_cast<int>(g.params.size()) != gi.params)
            throw std::invalid_argument(std::string(gi.name) + ": wrong parameter count");
        std::set<int> seen;
        for (int q : g.qubits) {
            if (q < 0 || q >= num_qubits) throw std::invalid_argument("qubit index out of range");
            if (!seen.insert(q).second)
                throw std::invalid_argument(std::string(gi.name) + ": duplicate qubit operand");
            if (g.kind != GateKind::Barrier && measured_at[q] >= 0)
                throw std::invalid_argument("gate after measurement on qubit " + std::to_string(q));
        }
        if (g.kind == GateKind::Measure) {
            if (measured_at[g.qubits[0]] >= 0)
                throw std::invalid_argument("qubit measured twice");
            measured_at[g.qubits[0]] = static_cast<int>(i);
        }
    }
    std::vector<int> expected;
    for (const Gate& g : gates) {
        if (g.kind == GateKind::Measure) expected.push_back(g.qubits[0]);
    }
    if (expected != measured_qubits)
        throw std::invalid_argument("measured_qubits inconsistent with measure gates");
}

bool structurally_equal(const Circuit& a, const Circuit& b) {
    return a.num_qubits == b.num_qubits && a.gates == b.gates &&
           a.measured_qubits == b.measured_qubits;
}

GateCounts gate_counts(const Circuit& c) {
    GateCounts counts;
    for (const Gate& g : c.gates) {
        if (!g.is_unitary()) continue;
        if (g.is_two_qubit())
            ++counts.two_qubit;
        else
            ++counts.one_qubit;
    }
    return counts;
}

Gate inverse_gate(const Gate& g) {
    Gate inv = g;
    switch (g.kind) {
        case GateKind::Id:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::Cx:
        case GateKind::Swap:
            return inv;
        case GateKind::S:
            inv.kind = GateKind::Sdg;
            return inv;
        case GateKind::Sdg:
            inv.kind = GateKind::S;
            return inv;
        case GateKind::T:
            inv.kind = GateKind::Tdg;
            return inv;
        case GateKind::Tdg:
            inv.kind = GateKind::T;
            return inv;
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
            inv.params[0] = -g.params[0];
            return inv;
        case GateKind::U3:
            // u3(theta, phi, lambda)^dagger = u3(-theta, -lambda, -phi)
            inv.params = {-g.params[0], -g.params[2], -g.params[1]};
            return inv;
        case GateKind::Measure:
        case GateKind::Barrier:
            break;
    }
    throw std::invalid_argument("gate has no inverse");
}

std::map<std::pair<int, int>, int> interaction_graph(const Circuit& c) {
    std::map<std::pair<int, int>, int> graph;
    for (const Gate& g : c.gates) {
        if (g.kind != GateKind::Cx) continue;
        int a = std::min(g.qubits[0], g.qubits[1]);
        int b = std::max(g.qubits[0], g.qubits[1]);
        ++graph[{a, b}];
    }
    return graph;
}

Circuit decompose_swaps(const Circuit& c) {
    Circuit out;
    out.name = c.name;
    out.num_qubits = c.num_qubits;
    out.measured_qubits = c.measured_qubits;
    for (const Gate& g : c.gates) {
        if (g.kind != GateKind::Swap) {
            out.gates.push_back(g);
            continue;
        }
        int a = g.qubits[0];
        int b = g.qubits[1];
        out.gates.push_back({GateKind::Cx, {a, b}, {}});
        out.gates.push_back({GateKind::Cx, {b, a}, {}});
        out.gates.push_back({GateKind::Cx, {a, b}, {}});
    }
    return out;
}

}  // namespace qmpc
