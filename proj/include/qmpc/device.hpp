#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qmpc {

/// Undirected coupling-graph edge, normalized so first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct QubitCal {
    int id = 0;
    double e1q = 0.0;
    double readout = 0.0;
};

struct EdgeCal {
    int a = 0;
    int b = 0;
    double e2q = 0.0;
};

/// Coupling graph plus calibration snapshot. Immutable after construction;
/// all-pairs distances are precomputed, so shared concurrent reads are safe.
class DeviceModel {
  public:
    DeviceModel(std::string name, std::vector<QubitCal> qubits, std::vector<EdgeCal> edges);

    const std::string& name() const { return name_; }
    int num_qubits() const { return static_cast<int>(qubits_.size()); }
    const std::vector<QubitCal>& qubits() const { return qubits_; }
    const std::vector<EdgeCal>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int q) const { return adjacency_[q]; }

    bool has_edge(int a, int b) const;
    /// CNOT error of an existing edge; throws if (a,b) is not coupled.
    double edge_error(int a, int b) const;
    double e1q(int q) const { return qubits_[q].e1q; }
    double readout(int q) const { return qubits_[q].readout; }
    /// BFS hop distance between physical qubits.
    int distance(int a, int b) const { return dist_[a][b]; }

  private:
    std::string name_;
    std::vector<QubitCal> qubits_;
    std::vector<EdgeCal> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<int>> dist_;
};

DeviceModel device_from_json(const nlohmann::json& j);
DeviceModel load_device(const std::filesystem::path& path);
nlohmann::json device_to_json(const DeviceModel& d);

/// All unordered pairs of vertex-disjoint edges whose closest endpoints are
/// exactly one hop apart, canonically sorted.
std::vector<std::pair<Edge, Edge>> one_hop_pairs(const DeviceModel& d);

/// used/total as a fraction. Throws on total == 0 or used out of range.
double hardware_throughput(int used, int total);

struct SrbCost {
    int pairs = 0;
    int groups = 0;
    long jobs = 0;
};

/// Job-count model for simultaneous randomized benchmarking: one-hop pairs
/// are packed into groups by greedy largest-degree-first coloring of their
/// conflict graph (two pairs conflict when any of their four edges share a
/// qubit or sit within one hop), and each group costs 3 jobs per seed.
SrbCost srb_cost_estimate(const DeviceModel& d, int seeds);

/// Bundled device models: "melbourne-15", "toronto-27", "manhattan-65".
DeviceModel builtin_topology(std::string_view name);
std::vector<std::string> builtin_topology_names();

}  // namespace qmpc
