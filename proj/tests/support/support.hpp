#pragma once

// Shared helpers for the unit and acceptance tests: reference data, KS
// tests and an exact-arithmetic oracle for the atom-split functionals.

#include "bis/pbox.hpp"

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace bis::test {

// Fifteen lognormal(0, 1) draws used throughout the worked example.
inline const std::vector<double> kSampleData = {
    1.435, 0.276, 3.603, 0.211, 2.996,
    7.289, 0.426, 0.124, 1.523, 4.603,
    1.696, 0.620, 0.338, 6.351, 1.026,
};

struct KsResult {
    double statistic;
    double p_value;
};

// Survival function of the Kolmogorov distribution.
double kolmogorov_sf(double lambda);

// Asymptotic p-values with Stephens' small-sample correction.
KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Reference values of the truncated mean and CVaR obtained by integrating
// the quantile function in exact rational arithmetic.  nullopt means the
// result mixes -inf and +inf.
std::optional<double> oracle_truncated_mean(std::span<const double> supports,
                                            std::span<const double> weights, double p);
std::optional<double> oracle_cvar(std::span<const double> supports,
                                  std::span<const double> weights, double p);

// A step distribution with at most five atoms and a level p, drawn either
// on a dyadic grid (exact arithmetic, p may sit on an atom boundary) or with
// generic doubles.  Either end may carry an infinite support.
struct StepInstance {
    std::vector<double> supports;
    std::vector<double> weights;
    double p;
};
StepInstance random_step_instance(std::mt19937_64& gen);

// Two finite step distributions on integer supports with weights k/1024,
// so every sum the functionals form is exact.  `dominating` is obtained by
// moving atoms of `dominated` to the right, hence its CDF is never above.
struct DominancePair {
    WeightedStepCdf dominated;
    WeightedStepCdf dominating;
};
DominancePair random_dominance_pair(std::mt19937_64& gen);

} // namespace bis::test
