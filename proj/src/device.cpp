#include "qmpc/device.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <stdexcept>

namespace qmpc {

namespace {

constexpr int kUnreachable = 1 << 29;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Deterministic unit value in [0,1) for one calibration entry.
double cal_noise(std::string_view device, std::uint64_t salt, std::uint64_t id) {
    std::uint64_t h = splitmix64(fnv1a(device) ^ splitmix64(salt * 0x100000001b3ULL + id));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

DeviceModel::DeviceModel(std::string name, std::vector<QubitCal> qubits, std::vector<EdgeCal> edges)
    : name_(std::move(name)), qubits_(std::move(qubits)), edges_(std::move(edges)) {
    std::sort(qubits_.begin(), qubits_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    const int n = static_cast<int>(qubits_.size());
    if (n == 0) throw std::invalid_argument("device has no qubits");
    for (int i = 0; i < n; ++i) {
        if (qubits_[i].id != i) throw std::invalid_argument("qubit ids must be 0..n-1 without gaps");
        if (qubits_[i].e1q < 0.0 || qubits_[i].e1q > 1.0 || qubits_[i].readout < 0.0 ||
            qubits_[i].readout > 1.0)
            throw std::invalid_argument("qubit error probability out of [0,1]");
    }
    for (auto& e : edges_) {
        if (e.a == e.b) throw std::invalid_argument("self-loop edge");
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
            throw std::invalid_argument("edge references unknown qubit");
        if (e.e2q < 0.0 || e.e2q > 1.0) throw std::invalid_argument("edge error probability out of [0,1]");
        if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const auto& x, const auto& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b)
            throw std::invalid_argument("duplicate edge");
    }
    adjacency_.assign(n, {});
    for (const auto& e : edges_) {
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

    dist_.assign(n, std::vector<int>(n, kUnreachable));
    for (int s = 0; s < n; ++s) {
        std::deque<int> queue{s};
        dist_[s][s] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adjacency_[u]) {
                if (dist_[s][v] > dist_[s][u] + 1) {
                    dist_[s][v] = dist_[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    if (n > 1) {
        for (int q = 0; q < n; ++q) {
            if (dist_[0][q] >= kUnreachable) throw std::invalid_argument("coupling graph is disconnected");
        }
    }
}

bool DeviceModel::has_edge(int a, int b) const {
    auto [lo, hi] = std::minmax(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), EdgeCal{lo, hi, 0.0},
                              [](const auto& x, const auto& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
}

double DeviceModel::edge_error(int a, int b) const {
    auto [lo, hi] = std::minmax(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), EdgeCal{lo, hi, 0.0},
                               [](const auto& x, const auto& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    if (it == edges_.end() || it->a != lo || it->b != hi)
        throw std::invalid_argument("no coupling between qubits " + std::to_string(a) + "," + std::to_string(b));
    return it->e2q;
}

DeviceModel device_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("qubits") || !j.contains("edges"))
        throw std::invalid_argument("device json needs name/qubits/edges");
    std::vector<QubitCal> qubits;
    for (const auto& q : j.at("qubits"))
        qubits.push_back({q.at("id").get<int>(), q.at("e1q").get<double>(), q.at("readout").get<double>()});
    std::vector<EdgeCal> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at("a").get<int>(), e.at("b").get<int>(), e.at("e2q").get<double>()});
    return DeviceModel(j.at("name").get<std::string>(), std::move(qubits), std::move(edges));
}

DeviceModel load_device(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
    return device_from_json(j);
}

nlohmann::json device_to_json(const DeviceModel& d) {
    nlohmann::json j;
    j["name"] = d.name();
    j["qubits"] = nlohmann::json::array();
    for (const auto& q : d.qubits())
        j["qubits"].push_back({{"id", q.id}, {"e1q", q.e1q}, {"readout", q.readout}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : d.edges()) j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"e2q", e.e2q}});
    return j;
}

std::vector<std::pair<Edge, Edge>> one_hop_pairs(const DeviceModel& d) {
    std::vector<Edge> edges;
    for (const auto& e : d.edges()) edges.push_back({e.a, e.b});
    std::vector<std::pair<Edge, Edge>> pairs;
    for (size_t i = 0; i < edges.size(); ++i) {
        for (size_t j = i + 1; j < edges.size(); ++j) {
            const Edge& e1 = edges[i];
            const Edge& e2 = edges[j];
            if (e1.first == e2.first || e1.first == e2.second || e1.second == e2.first ||
                e1.second == e2.second)
                continue;
            int dmin = std::min({d.distance(e1.first, e2.first), d.distance(e1.first, e2.second),
                                 d.distance(e1.second, e2.first), d.distance(e1.second, e2.second)});
            if (dmin == 1) pairs.push_back({e1, e2});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

double hardware_throughput(int used, int total) {
    if (total <= 0) throw std::invalid_argument("total qubit count must be positive");
    if (used < 0 || used > total) throw std::invalid_argument("used qubits out of range");
    return static_cast<double>(used) / static_cast<double>(total);
}

namespace {

// Minimum hop distance between two edges; 0 when they share a qubit.
int edge_distance(const DeviceModel& d, const Edge& e1, const Edge& e2) {
    if (e1.first == e2.first || e1.first == e2.second || e1.second == e2.first ||
        e1.second == e2.second)
        return 0;
    return std::min({d.distance(e1.first, e2.first), d.distance(e1.first, e2.second),
                     d.distance(e1.second, e2.first), d.distance(e1.second, e2.second)});
}

}  // namespace

SrbCost srb_cost_estimate(const DeviceModel& d, int seeds) {
    if (seeds < 1) throw std::invalid_argument("seeds must be >= 1");
    auto pairs = one_hop_pairs(d);
    const int m = static_cast<int>(pairs.size());
    std::vector<std::set<int>> conflict(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            bool clash = false;
            for (const Edge& a : {pairs[i].first, pairs[i].second}) {
                for (const Edge& b : {pairs[j].first, pairs[j].second}) {
                    if (edge_distance(d, a, b) <= 1) clash = true;
                }
            }
            if (clash) {
                conflict[i].insert(j);
                conflict[j].insert(i);
            }
        }
    }
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (conflict[a].size() != conflict[b].size()) return conflict[a].size() > conflict[b].size();
        return a < b;
    });
    std::vector<int> color(m, -1);
    int groups = 0;
    for (int v : order) {
        std::set<int> used;
        for (int u : conflict[v]) {
            if (color[u] >= 0) used.insert(color[u]);
        }
        int c = 0;
        while (used.count(c)) ++c;
        color[v] = c;
        groups = std::max(groups, c + 1);
    }
    SrbCost cost;
    cost.pairs = m;
    cost.groups = groups;
    cost.jobs = 3L * groups * seeds;
    return cost;
}

namespace {

struct Topology {
    std::string_view name;
    int num_qubits;
    std::vector<Edge> edges;
};

std::vector<Edge> path_edges(int from, int to) {
    std::vector<Edge> edges;
    for (int i = from; i < to; ++i) edges.push_back({i, i + 1});
    return edges;
}

Topology melbourne_topology() {
    // 2x8 ladder with one corner missing: rows 0..6 and 7..14 plus rungs.
    std::vector<Edge> edges = path_edges(0, 6);
    auto bottom = path_edges(7, 14);
    edges.insert(edges.end(), bottom.begin(), bottom.end());
    for (Edge e : {Edge{0, 14}, Edge{1, 13}, Edge{2, 12}, Edge{3, 11}, Edge{4, 10}, Edge{5, 9}, Edge{6, 8}})
        edges.push_back(e);
    return {"melbourne-15", 15, std::move(edges)};
}

Topology toronto_topology() {
    return {"toronto-27",
            27,
            {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
             {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
             {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
             {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}}};
}

Topology manhattan_topology() {
    std::vector<Edge> edges = path_edges(0, 9);
    for (Edge e : {Edge{0, 10}, Edge{4, 11}, Edge{8, 12}, Edge{10, 13}, Edge{11, 17}, Edge{12, 21}})
        edges.push_back(e);
    auto row1 = path_edges(13, 23);
    edges.insert(edges.end(), row1.begin(), row1.end());
    for (Edge e : {Edge{15, 24}, Edge{19, 25}, Edge{23, 26}, Edge{24, 29}, Edge{25, 33}, Edge{26, 37}})
        edges.push_back(e);
    auto row2 = path_edges(27, 37);
    edges.insert(edges.end(), row2.begin(), row2.end());
    for (Edge e : {Edge{27, 38}, Edge{31, 39}, Edge{35, 40}, Edge{38, 41}, Edge{39, 45}, Edge{40, 49}})
        edges.push_back(e);
    auto row3 = path_edges(41, 51);
    edges.insert(edges.end(), row3.begin(), row3.end());
    for (Edge e : {Edge{43, 52}, Edge{47, 53}, Edge{51, 54}, Edge{52, 56}, Edge{53, 60}, Edge{54, 64}})
        edges.push_back(e);
    auto row4 = path_edges(55, 64);
    edges.insert(edges.end(), row4.begin(), row4.end());
    return {"manhattan-65", 65, std::move(edges)};
}

// Representative calibration: CNOT error ~1e-2, one-qubit error ~1e-3,
// readout ~2e-2. Values combine a mild quality gradient across qubit ids
// (low ids are better, as on real devices where good regions cluster) with
// deterministic per-entry jitter so every region scores uniquely.
DeviceModel with_calibration(const Topology& topo) {
    const double denom = topo.num_qubits > 1 ? topo.num_qubits - 1 : 1;
    std::vector<QubitCal> qubits;
    for (int q = 0; q < topo.num_qubits; ++q) {
        double grad = q / denom;
        double u1 = cal_noise(topo.name, 1, q);
        double u2 = cal_noise(topo.name, 2, q);
        qubits.push_back({q, 0.0008 + 0.0002 * u1 + 0.0006 * grad, 0.014 + 0.004 * u2 + 0.010 * grad});
    }
    std::vector<EdgeCal> edges;
    for (const Edge& e : topo.edges) {
        double grad = 0.5 * (e.first + e.second) / denom;
        double u = cal_noise(topo.name, 3, static_cast<std::uint64_t>(e.first) * 1000 + e.second);
        edges.push_back({e.first, e.second, 0.007 + 0.002 * u + 0.006 * grad});
    }
    return DeviceModel(std::string(topo.name), std::move(qubits), std::move(edges));
}

}  // namespace

DeviceModel builtin_topology(std::string_view name) {
    if (name == "melbourne-15") return with_calibration(melbourne_topology());
    if (name == "toronto-27") return with_calibration(toronto_topology());
    if (name == "manhattan-65") return with_calibration(manhattan_topology());
    throw std::invalid_argument("unknown builtin device '" + std::string(name) + "'");
}

std::vector<std::string> builtin_topology_names() {
    return {"melbourne-15", "toronto-27", "manhattan-65"};
}

}  // namespace qmpc
