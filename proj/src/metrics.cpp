#include "qmpc/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmpc {

namespace {

void check_normalized(const std::map<std::string, double>& p) {
    double sum = 0.0;
    for (const auto& [key, v] : p) {
        if (v < 0.0) throw std::invalid_argument("negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("distribution is not normalized");
}

double prob_of(const std::map<std::string, double>& p, const std::string& key) {
    auto it = p.find(key);
    return it == p.end() ? 0.0 : it->second;
}

}  // namespace

double pst(const Distribution& dist, const std::string& expected) {
    if (dist.shots == 0) throw std::invalid_argument("empty distribution");
    for (const auto& [key, count] : dist.counts) {
        if (key.size() != expected.size())
            throw std::invalid_argument("expected bitstring width does not match results");
    }
    auto it = dist.counts.find(expected);
    if (it == dist.counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(dist.shots);
}

double kl(const std::map<std::string, double>& p, const std::map<std::string, double>& q) {
    check_normalized(p);
    check_normalized(q);
    double sum = 0.0;
    for (const auto& [key, px] : p) {
        if (px == 0.0) continue;
        double qx = prob_of(q, key);
        if (qx == 0.0) return std::numeric_limits<double>::infinity();
        sum += px * std::log2(px / qx);
    }
    return sum;
}

double jsd(const std::map<std::string, double>& p, const std::map<std::string, double>& q) {
    check_normalized(p);
    check_normalized(q);
    auto half_kl = [](const std::map<std::string, double>& a,
                      const std::map<std::string, double>& b) {
        double sum = 0.0;
        for (const auto& [key, ax] : a) {
            if (ax == 0.0) continue;
            double mx = 0.5 * (ax + prob_of(b, key));
            sum += ax * std::log2(ax / mx);
        }
        return 0.5 * sum;
    };
    return half_kl(p, q) + half_kl(q, p);
}

}  // namespace qmpc
