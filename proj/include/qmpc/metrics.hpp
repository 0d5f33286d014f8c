#pragma once

#include <map>
#include <string>

#include "qmpc/simulator.hpp"

namespace qmpc {

/// Probability of a successful trial: fraction of shots equal to the
/// expected bitstring. Throws on width mismatch.
double pst(const Distribution& dist, const std::string& expected);

/// Kullback-Leibler divergence in bits over the support of p. Terms with
/// p(x) = 0 contribute nothing; q(x) = 0 with p(x) > 0 yields +infinity.
/// Inputs must be normalized to 1 (1e-9 slack).
double kl(const std::map<std::string, double>& p, const std::map<std::string, double>& q);

/// Jensen-Shannon divergence in bits (base-2 logs), bounded to [0,1] and
/// finite for all normalized inputs.
double jsd(const std::map<std::string, double>& p, const std::map<std::string, double>& q);

}  // namespace qmpc
