#pragma once

// Reference interval methods, synthetic data generators and the coverage
// harness used to compare them against interval sampling.

#include "bis/estimators.hpp"
#include "bis/pbox.hpp"
#include "bis/random.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bis {

// x̄ ± t_{(1+c)/2, N-1} s / sqrt(N).  Throws TooFewSamples for N < 2.
IntervalEstimate student_t_interval(std::span<const double> data, double credibility);

// Percentile bootstrap: resample N values with replacement.
IntervalEstimate bootstrap_interval(std::span<const double> data, const Functional& f,
                                    double credibility, std::size_t n_resample, Rng& rng);

// Dir[1, ..., 1] weights on the observed values themselves.
IntervalEstimate bayesian_bootstrap_interval(std::span<const double> data, const Functional& f,
                                             double credibility, std::size_t n_resample,
                                             Rng& rng);

class Generator {
public:
    // lognormal(mu, sigma) restricted to [lo, hi] by rejection.
    static Generator truncated_lognormal(double mu, double sigma, double lo, double hi);
    // With probability atom_prob emit `atom`, otherwise draw from base.
    static Generator extreme_mixture(Generator base, double atom, double atom_prob);

    double draw(Rng& rng) const;
    std::string describe() const;

private:
    struct Lognormal {
        double mu, sigma, lo, hi;
    };
    struct Mixture {
        std::shared_ptr<const Generator> base;
        double atom, atom_prob;
    };

    explicit Generator(std::variant<Lognormal, Mixture> spec) : spec_(std::move(spec)) {}

    std::variant<Lognormal, Mixture> spec_;
};

std::vector<double> generate(const Generator& gen, std::size_t n, Rng& rng);

enum class Method { StudentT, Bootstrap, BayesianBootstrap, Bis };

std::string_view method_name(Method m) noexcept;
Method parse_method(std::string_view name);

struct CoverageReport {
    Method method;
    double credibility;
    std::size_t n_trials;
    double hit_rate;
    // Medians across trials of the interval endpoints.
    double median_lo;
    double median_hi;
};

struct CoverageSetup {
    Generator generator;
    double true_q;
    Functional functional = Functional::mean();
    std::size_t n_sample = 50;
    double credibility = 0.95;
    std::size_t n_trials = 1000;
    std::size_t n_resample = 2000;
    BoundingInterval interval{0.0, 50.0};
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

// Trial t draws its data from substream (seed, 2t) and its method randomness
// from (seed, 2t + 1), so every method sees the same datasets.
CoverageReport coverage_experiment(const CoverageSetup& setup, Method method);

// Truncated lognormal(0, 1) on [0, 50], 50 samples, 95%, mean.
CoverageSetup preset_truncated_lognormal();
// As above with a 1% atom at 50.
CoverageSetup preset_extreme_events();

// Analytic mean of lognormal(mu, sigma) restricted to [lo, hi].
double truncated_lognormal_mean(double mu, double sigma, double lo, double hi);

} // namespace bis
