#include "qmpc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <random>
#include <stdexcept>

namespace qmpc {

namespace {

using cdbl = std::complex<double>;

constexpr int kMaxWidth = 24;
constexpr std::uint64_t kMeasureSalt = 0x6d656173ULL;
constexpr std::uint64_t kNoiseSalt = 0x6e6f6973ULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

// Small deterministic RNG; draws do not depend on platform library details.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::uint64_t integer(std::uint64_t bound) { return eng_() % bound; }

  private:
    std::mt19937_64 eng_;
};

struct Mat2 {
    cdbl u00, u01, u10, u11;
};

Mat2 gate_matrix(const Gate& g) {
    const cdbl i(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::Id:
            return {1, 0, 0, 1};
        case GateKind::X:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, -i, i, 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        case GateKind::H:
            return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case GateKind::S:
            return {1, 0, 0, i};
        case GateKind::Sdg:
            return {1, 0, 0, -i};
        case GateKind::T:
            return {1, 0, 0, std::exp(i * (M_PI / 4.0))};
        case GateKind::Tdg:
            return {1, 0, 0, std::exp(-i * (M_PI / 4.0))};
        case GateKind::Rx: {
            double h = g.params[0] / 2.0;
            return {std::cos(h), -i * std::sin(h), -i * std::sin(h), std::cos(h)};
        }
        case GateKind::Ry: {
            double h = g.params[0] / 2.0;
            return {std::cos(h), -std::sin(h), std::sin(h), std::cos(h)};
        }
        case GateKind::Rz: {
            double h = g.params[0] / 2.0;
            return {std::exp(-i * h), 0, 0, std::exp(i * h)};
        }
        case GateKind::U3: {
            double t = g.params[0];
            double phi = g.params[1];
            double lam = g.params[2];
            return {std::cos(t / 2.0), -std::exp(i * lam) * std::sin(t / 2.0),
                    std::exp(i * phi) * std::sin(t / 2.0),
                    std::exp(i * (phi + lam)) * std::cos(t / 2.0)};
        }
        default:
            throw std::logic_error("no matrix for this gate");
    }
}

class StateVector {
  public:
    explicit StateVector(int n) : n_(n), amp_(std::size_t{1} << n, cdbl{}) { amp_[0] = 1.0; }

    void reset() {
        std::fill(amp_.begin(), amp_.end(), cdbl{});
        amp_[0] = 1.0;
    }

    void apply_1q(int q, const Mat2& m) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t idx = 0; idx < amp_.size(); ++idx) {
            if (idx & bit) continue;
            cdbl a = amp_[idx];
            cdbl b = amp_[idx | bit];
            amp_[idx] = m.u00 * a + m.u01 * b;
            amp_[idx | bit] = m.u10 * a + m.u11 * b;
        }
    }

    void apply_cx(int control, int target) {
        const std::size_t cbit = std::size_t{1} << control;
        const std::size_t tbit = std::size_t{1} << target;
        for (std::size_t idx = 0; idx < amp_.size(); ++idx) {
            if ((idx & cbit) && !(idx & tbit)) std::swap(amp_[idx], amp_[idx | tbit]);
        }
    }

    void apply_swap(int a, int b) {
        const std::size_t abit = std::size_t{1} << a;
        const std::size_t bbit = std::size_t{1} << b;
        for (std::size_t idx = 0; idx < amp_.size(); ++idx) {
            if ((idx & abit) && !(idx & bbit)) std::swap(amp_[idx], amp_[(idx & ~abit) | bbit]);
        }
    }

    // which: 0 = X, 1 = Y, 2 = Z
    void apply_pauli(int q, int which) {
        const cdbl i(0.0, 1.0);
        switch (which) {
            case 0:
                apply_1q(q, {0, 1, 1, 0});
                break;
            case 1:
                apply_1q(q, {0, -i, i, 0});
                break;
            default:
                apply_1q(q, {1, 0, 0, -1});
                break;
        }
    }

    void apply_unitary(const Gate& g) {
        if (g.kind == GateKind::Cx) {
            apply_cx(g.qubits[0], g.qubits[1]);
        } else if (g.kind == GateKind::Swap) {
            apply_swap(g.qubits[0], g.qubits[1]);
        } else {
            apply_1q(g.qubits[0], gate_matrix(g));
        }
    }

    /// Probability of each pattern of the given bits (key bit i = qubit
    /// bits[i]), as a sorted map.
    std::map<std::string, double> marginal(const std::vector<int>& bits) const {
        std::map<std::string, double> probs;
        std::string key(bits.size(), '0');
        for (std::size_t idx = 0; idx < amp_.size(); ++idx) {
            double p = std::norm(amp_[idx]);
            for (std::size_t i = 0; i < bits.size(); ++i)
                key[i] = (idx >> bits[i]) & 1 ? '1' : '0';
            probs[key] += p;
        }
        return probs;
    }

  private:
    int n_;
    std::vector<cdbl> amp_;
};

struct CumulativeSampler {
    std::vector<std::string> keys;
    std::vector<double> cum;

    explicit CumulativeSampler(const std::map<std::string, double>& probs) {
        double acc = 0.0;
        for (const auto& [key, p] : probs) {
            acc += p;
            keys.push_back(key);
            cum.push_back(acc);
        }
    }

    const std::string& draw(double u) const {
        double target = u * cum.back();
        auto it = std::lower_bound(cum.begin(), cum.end(), target);
        if (it == cum.end()) --it;
        return keys[it - cum.begin()];
    }
};

std::vector<int> measured_or_all(const Circuit& circ) {
    if (!circ.measured_qubits.empty()) return circ.measured_qubits;
    std::vector<int> all(circ.num_qubits);
    for (int q = 0; q < circ.num_qubits; ++q) all[q] = q;
    return all;
}

std::map<std::string, double> exact_marginal(const Circuit& circ) {
    if (circ.num_qubits > kMaxWidth)
        throw std::invalid_argument("circuit too wide to simulate (max 24 qubits)");
    StateVector state(circ.num_qubits);
    for (const Gate& g : circ.gates) {
        if (g.is_unitary()) state.apply_unitary(g);
    }
    return state.marginal(measured_or_all(circ));
}

}  // namespace

std::map<std::string, double> Distribution::probabilities() const {
    std::map<std::string, double> probs;
    for (const auto& [key, count] : counts)
        probs[key] = static_cast<double>(count) / static_cast<double>(shots);
    return probs;
}

std::map<std::string, double> ideal_distribution(const Circuit& circ) { return exact_marginal(circ); }

double ideal_expectation(const Circuit& circ, const std::string& observable) {
    return expectation(exact_marginal(circ), observable);
}

Distribution simulate_ideal(const Circuit& circ, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    CumulativeSampler sampler(exact_marginal(circ));
    Distribution dist;
    dist.shots = shots;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        Prng rng(mix(mix(seed, shot), kMeasureSalt));
        ++dist.counts[sampler.draw(rng.uniform())];
    }
    return dist;
}

namespace {

struct LocalOp {
    Gate gate;    // qubits already translated to local indices
    double rate;  // error probability after kappa scaling
};

struct MemberSim {
    std::vector<LocalOp> ops;
    std::vector<int> measured_local;
    std::vector<double> readout;
    std::uint64_t noise_key = 0;
    int width = 0;
};

MemberSim prepare_member(const CompositeMember& member, const CompositeJob& job,
                         const DeviceModel& d, const NoiseSpec& spec, bool& clamped) {
    const auto& qubits = member.alloc.partition.qubits;
    if (static_cast<int>(qubits.size()) > kMaxWidth)
        throw std::invalid_argument("partition too wide to simulate (max 24 qubits)");
    std::map<int, int> local;
    for (size_t i = 0; i < qubits.size(); ++i) local[qubits[i]] = static_cast<int>(i);

    std::set<std::pair<int, Edge>> hot;  // (composite slice, member cx edge) in an event
    std::set<int> own(qubits.begin(), qubits.end());
    for (const auto& ev : job.events) {
        for (const Edge& e : {ev.e1, ev.e2}) {
            if (own.count(e.first) && own.count(e.second)) hot.insert({ev.slice, e});
        }
    }

    MemberSim sim;
    sim.width = static_cast<int>(qubits.size());
    sim.noise_key = static_cast<std::uint64_t>(qubits.front());
    for (int s = 0; s < member.schedule.depth(); ++s) {
        for (const Gate& g : member.schedule.slices[s]) {
            if (g.kind == GateKind::Barrier || g.kind == GateKind::Measure) continue;
            LocalOp op;
            op.gate = g;
            for (int& q : op.gate.qubits) q = local.at(q);
            if (g.kind == GateKind::Cx) {
                double rate = d.edge_error(g.qubits[0], g.qubits[1]);
                if (hot.count({s + member.offset, make_edge(g.qubits[0], g.qubits[1])}))
                    rate *= spec.kappa;
                if (rate > 1.0) {
                    rate = 1.0;
                    clamped = true;
                }
                op.rate = rate;
            } else {
                op.rate = d.e1q(g.qubits[0]);
            }
            sim.ops.push_back(std::move(op));
        }
    }
    for (int pq : member.circuit.measured_qubits) {
        sim.measured_local.push_back(local.at(pq));
        sim.readout.push_back(d.readout(pq));
    }
    return sim;
}

}  // namespace

std::vector<Distribution> simulate_noisy(const CompositeJob& job, const DeviceModel& d,
                                         const NoiseSpec& spec) {
    if (spec.kappa < 1.0) throw std::invalid_argument("kappa must be >= 1");
    if (spec.shots < 1) throw std::invalid_argument("shots must be >= 1");
    bool clamped = false;
    std::vector<Distribution> results;
    for (const auto& member : job.members) {
        MemberSim sim = prepare_member(member, job, d, spec, clamped);
        Distribution dist;
        dist.shots = spec.shots;
        StateVector state(sim.width);
        std::string key(sim.measured_local.size(), '0');
        for (std::uint64_t shot = 0; shot < spec.shots; ++shot) {
            Prng noise(mix(mix(mix(spec.seed, shot), kNoiseSalt), sim.noise_key));
            Prng meas(mix(mix(spec.seed, shot), kMeasureSalt));
            state.reset();
            for (const LocalOp& op : sim.ops) {
                state.apply_unitary(op.gate);
                if (noise.uniform() < op.rate) {
                    if (op.gate.qubits.size() == 2) {
                        int r = static_cast<int>(noise.integer(15)) + 1;
                        if (r / 4 != 0) state.apply_pauli(op.gate.qubits[0], r / 4 - 1);
                        if (r % 4 != 0) state.apply_pauli(op.gate.qubits[1], r % 4 - 1);
                    } else {
                        state.apply_pauli(op.gate.qubits[0], static_cast<int>(noise.integer(3)));
                    }
                }
            }
            CumulativeSampler sampler(state.marginal(sim.measured_local));
            key = sampler.draw(meas.uniform());
            for (size_t i = 0; i < sim.readout.size(); ++i) {
                if (meas.uniform() < sim.readout[i]) key[i] = key[i] == '0' ? '1' : '0';
            }
            ++dist.counts[key];
        }
        results.push_back(std::move(dist));
    }
    if (clamped)
        std::cerr << "warning: crosstalk-scaled error probability clamped to 1\n";
    return results;
}

double expectation(const std::map<std::string, double>& probs, const std::string& observable) {
    for (char c : observable) {
        if (c != 'I' && c != 'Z')
            throw std::invalid_argument("observable must be a string over {I, Z}");
    }
    double value = 0.0;
    for (const auto& [key, p] : probs) {
        if (observable.size() != key.size())
            throw std::invalid_argument("observable length does not match measured width");
        int parity = 0;
        for (size_t i = 0; i < key.size(); ++i) {
            if (observable[i] == 'Z' && key[i] == '1') parity ^= 1;
        }
        value += parity ? -p : p;
    }
    return value;
}

double expectation(const Distribution& dist, const std::string& observable) {
    return expectation(dist.probabilities(), observable);
}

nlohmann::json distribution_to_json(const Distribution& dist, const std::string& circuit,
                                    std::uint64_t seed) {
    nlohmann::json j;
    j["circuit"] = circuit;
    j["shots"] = dist.shots;
    j["seed"] = seed;
    j["counts"] = nlohmann::json::object();
    for (const auto& [key, count] : dist.counts) j["counts"][key] = count;
    return j;
}

}  // namespace qmpc
