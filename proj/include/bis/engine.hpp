#pragma once

// Bayesian interval sampling: draw realisations of the imprecise posterior,
// collect the parameter bounds of each, and turn their empirical
// distributions into a credible interval.

#include "bis/dirichlet.hpp"
#include "bis/estimators.hpp"
#include "bis/pbox.hpp"
#include "bis/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bis {

// Prior weight of the vacuous bounding processes.  Fixed at one; this is
// what makes the posterior bounds touch at every observation.
inline constexpr double kPriorWeight = 1.0;

struct BisConfig {
    Functional functional = Functional::median();
    double credibility = 0.9;
    std::size_t n_resample = 1000;
    std::uint64_t seed = 0;
    // Worker threads for the resampling loop.  Results do not depend on it.
    std::size_t threads = 1;

    // Throws unless 0 < credibility < 1 and n_resample >= 1.
    void validate() const;
};

struct QSamples {
    std::vector<ExtendedReal> q_min;
    std::vector<ExtendedReal> q_max;
    // Set when n_resample < default_n_resample(credibility).
    bool low_tail_resolution = false;

    std::size_t size() const noexcept { return q_min.size(); }
};

struct BetaParams {
    double a;
    double b;

    BetaParams(double a, double b);
    friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

// ceil(100 / (1 - c)): about 100 samples in each tail.
std::size_t default_n_resample(double credibility);

// One draw of the random p-box: a shared weight vector placed on the right
// endpoints (lower CDF) and left endpoints (upper CDF) of each cell.
struct ImpreciseRealization {
    WeightVector weights;
    ProbabilityBox box;
};

ImpreciseRealization sample_realization(std::span<const ExtendedReal> points,
                                        const DirichletParams& params, Rng& rng);

// Runs the resampler for one functional.  Realisation i uses substream
// (cfg.seed, i), so the output is independent of cfg.threads.
QSamples bis_run(std::span<const double> data, const BoundingInterval& interval,
                 const BisConfig& cfg);

// Same realisations evaluated under several functionals at once; element j
// of the result matches bis_run with cfg.functional = functionals[j].
std::vector<QSamples> bis_run(std::span<const double> data, const BoundingInterval& interval,
                              std::span<const Functional> functionals, const BisConfig& cfg);

// [F_{Q^min}^{-1}((1-c)/2), F_{Q^max}^{-1}((1+c)/2)] with plain ECDFs and the
// inf-convention inverse.  Throws Empty on no samples.
IntervalEstimate interval_estimate(const QSamples& qs, double credibility);

// Smallest sample whose ECDF value reaches p.  `sorted` must be ascending.
ExtendedReal empirical_inverse(std::span<const ExtendedReal> sorted, double p);

// The probability box of the parameter as step breakpoints:
// (value, F_lower = ECDF of q_max, F_upper = ECDF of q_min).
struct QBoxRow {
    ExtendedReal value;
    double f_lower;
    double f_upper;
};
std::vector<QBoxRow> q_probability_box(const QSamples& qs);

// Beta laws of the lower and upper random CDF values at a point x that is
// not an observation.  Throws OutOfBounds or AtObservation.
std::pair<BetaParams, BetaParams> point_condition_betas(std::span<const double> data,
                                                        const BoundingInterval& interval,
                                                        double x);

// Precise contraction of the posterior: atoms at (x_L, x(1..N), x_R) with
// Dirichlet parameters (1/2, 1, ..., 1, 1/2).
struct ProjectionParams {
    std::vector<ExtendedReal> points;
    DirichletParams params;
};
ProjectionParams probabilistic_projection_params(std::span<const double> data,
                                                 const BoundingInterval& interval);

WeightedStepCdf sample_projection(const ProjectionParams& proj, Rng& rng);

} // namespace bis
