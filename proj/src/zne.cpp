#include "qmpc/zne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "qmpc/pipeline.hpp"

namespace qmpc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int foldable_count(const Circuit& c) {
    int n = 0;
    for (const Gate& g : c.gates) {
        if (g.is_unitary()) ++n;
    }
    return n;
}

void fold_at(Circuit& c, size_t pos) {
    Gate g = c.gates[pos];
    Gate inv = inverse_gate(g);
    c.gates.insert(c.gates.begin() + pos + 1, {inv, g});
}

// Fold every unitary gate once, in place.
void global_fold(Circuit& c) {
    std::vector<Gate> out;
    out.reserve(c.gates.size() * 3);
    for (const Gate& g : c.gates) {
        out.push_back(g);
        if (g.is_unitary()) {
            out.push_back(inverse_gate(g));
            out.push_back(g);
        }
    }
    c.gates = std::move(out);
}

}  // namespace

Circuit fold_random(const Circuit& circ, double factor, std::uint64_t seed) {
    if (factor < 1.0) throw std::invalid_argument("scale factor must be >= 1");
    const int n = foldable_count(circ);
    if (n == 0) throw std::invalid_argument("circuit has no foldable gates");
    Circuit folded = circ;
    if (factor == 1.0) return folded;
    const long target = std::lround(factor * n);
    if (factor >= 3.0) global_fold(folded);
    std::mt19937_64 rng(seed);
    while (foldable_count(folded) < target) {
        std::vector<size_t> foldable;
        for (size_t i = 0; i < folded.gates.size(); ++i) {
            if (folded.gates[i].is_unitary()) foldable.push_back(i);
        }
        fold_at(folded, foldable[rng() % foldable.size()]);
    }
    return folded;
}

double extrapolate(std::span<const std::pair<double, double>> points, ExtrapolationMethod method,
                   int poly_order) {
    const int m = static_cast<int>(points.size());
    if (m < 2) throw std::invalid_argument("extrapolation needs at least 2 points");
    std::set<double> factors;
    for (const auto& [x, y] : points) {
        if (!factors.insert(x).second) throw std::invalid_argument("duplicate scale factor");
    }
    if (method == ExtrapolationMethod::Richardson) {
        // Lagrange interpolation evaluated at 0.
        double value = 0.0;
        for (int i = 0; i < m; ++i) {
            double term = points[i].second;
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                term *= -points[j].first / (points[i].first - points[j].first);
            }
            value += term;
        }
        return value;
    }
    int order = method == ExtrapolationMethod::Linear ? 1 : poly_order;
    if (order < 1 || order >= m)
        throw std::invalid_argument("polynomial order must be in [1, points)");
    // Least squares via normal equations on the Vandermonde matrix.
    const int k = order + 1;
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (const auto& [x, y] : points) {
        std::vector<double> pow(2 * k - 1, 1.0);
        for (int i = 1; i < 2 * k - 1; ++i) pow[i] = pow[i - 1] * x;
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) a[r][c] += pow[r + c];
            a[r][k] += pow[r] * y;
        }
    }
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        if (a[col][col] == 0.0) throw std::invalid_argument("singular extrapolation system");
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (int c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return a[0][k] / a[0][0];  // constant coefficient = value at 0
}

ZneReport zne_run(const Circuit& circ, const std::string& observable,
                  std::vector<double> scale_factors, const DeviceModel& d, const NoiseSpec& spec,
                  ExecMode mode, double sigma, double threshold) {
    std::sort(scale_factors.begin(), scale_factors.end());
    if (scale_factors.empty() || scale_factors.front() != 1.0)
        throw std::invalid_argument("scale factors must include 1");

    std::vector<Circuit> folded;
    for (size_t i = 0; i < scale_factors.size(); ++i) {
        Circuit f = fold_random(circ, scale_factors[i], splitmix64(spec.seed ^ (i + 1)));
        f.name = circ.name + "_x" + std::to_string(scale_factors[i]).substr(0, 4);
        folded.push_back(std::move(f));
    }

    ZneReport report;
    report.scale_factors = scale_factors;
    if (mode == ExecMode::Parallel) {
        PipelineResult run = run_pipeline(folded, d, sigma, threshold, spec);
        for (size_t i = 0; i < folded.size(); ++i)
            report.points.push_back({scale_factors[i], expectation(run.distributions[i], observable)});
        report.batches = static_cast<int>(run.plan.batches.size());
        report.throughput = mean_throughput(run.plan, d);
    } else {
        for (size_t i = 0; i < folded.size(); ++i) {
            PipelineResult run =
                run_pipeline({folded[i]}, d, sigma, std::numeric_limits<double>::infinity(), spec);
            report.points.push_back({scale_factors[i], expectation(run.distributions[0], observable)});
        }
        report.batches = static_cast<int>(folded.size());
        report.throughput = hardware_throughput(circ.num_qubits, d.num_qubits());
    }

    report.unmitigated = report.points.front().second;
    report.linear = extrapolate(report.points, ExtrapolationMethod::Linear);
    report.polynomial = extrapolate(report.points, ExtrapolationMethod::Polynomial,
                                    std::min<int>(2, static_cast<int>(report.points.size()) - 1));
    report.richardson = extrapolate(report.points, ExtrapolationMethod::Richardson);
    report.ideal = ideal_expectation(circ, observable);
    report.abs_error_unmitigated = std::abs(report.unmitigated - report.ideal);
    report.abs_error_linear = std::abs(report.linear - report.ideal);
    report.abs_error_polynomial = std::abs(report.polynomial - report.ideal);
    report.abs_error_richardson = std::abs(report.richardson - report.ideal);
    return report;
}

nlohmann::json zne_report_to_json(const ZneReport& report, const std::string& circuit) {
    nlohmann::json j;
    j["circuit"] = circuit;
    j["scale_factors"] = report.scale_factors;
    j["points"] = nlohmann::json::array();
    for (const auto& [x, y] : report.points) j["points"].push_back({x, y});
    j["unmitigated"] = report.unmitigated;
    j["linear"] = report.linear;
    j["polynomial"] = report.polynomial;
    j["richardson"] = report.richardson;
    j["ideal"] = report.ideal;
    j["abs_errors"] = {{"unmitigated", report.abs_error_unmitigated},
                       {"linear", report.abs_error_linear},
                       {"polynomial", report.abs_error_polynomial},
                       {"richardson", report.abs_error_richardson}};
    j["batches"] = report.batches;
    j["throughput"] = report.throughput;
    return j;
}

}  // namespace qmpc
