#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qmpc/circuit.hpp"
#include "qmpc/device.hpp"
#include "qmpc/simulator.hpp"

namespace qmpc {

/// Random gate folding: single gates G are replaced by G G' G until the gate
/// count reaches round(factor * n). Factor 3 folds every gate exactly once
/// before random picks resume; factor 1 returns the circuit unchanged.
/// Folding never touches measure/barrier and preserves the unitary exactly.
Circuit fold_random(const Circuit& circ, double factor, std::uint64_t seed);

enum class ExtrapolationMethod { Linear, Polynomial, Richardson };

/// Zero-noise estimate from (scale factor, expectation) samples: least-squares
/// line or degree-`poly_order` polynomial evaluated at 0, or the Richardson
/// (full interpolating polynomial) value at 0. Needs >= 2 points with
/// distinct factors; poly_order must stay below the point count.
double extrapolate(std::span<const std::pair<double, double>> points, ExtrapolationMethod method,
                   int poly_order = 2);

enum class ExecMode { Parallel, Serial };

struct ZneReport {
    std::vector<double> scale_factors;
    std::vector<std::pair<double, double>> points;  // (factor, expectation)
    double unmitigated = 0.0;                       // factor-1 expectation
    double linear = 0.0;
    double polynomial = 0.0;
    double richardson = 0.0;
    double ideal = 0.0;  // exact noiseless expectation
    double abs_error_unmitigated = 0.0;
    double abs_error_linear = 0.0;
    double abs_error_polynomial = 0.0;
    double abs_error_richardson = 0.0;
    int batches = 0;
    double throughput = 0.0;  // mean per-batch hardware throughput
};

/// Runs the digital ZNE protocol for one circuit: fold at every scale factor,
/// execute the folded set (all together through the partitioner in parallel
/// mode, or one at a time on its best partition in serial mode), and report
/// all extrapolations next to the unmitigated and ideal values.
ZneReport zne_run(const Circuit& circ, const std::string& observable,
                  std::vector<double> scale_factors, const DeviceModel& d, const NoiseSpec& spec,
                  ExecMode mode, double sigma, double threshold);

nlohmann::json zne_report_to_json(const ZneReport& report, const std::string& circuit);

}  // namespace qmpc
