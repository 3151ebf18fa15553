#include "bis/baselines.hpp"

#include "bis/dirichlet.hpp"
#include "bis/engine.hpp"
#include "bis/error.hpp"
#include "bis/parallel.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bis {

namespace {

void check_credibility(double c) {
    if (!(c > 0.0 && c < 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "credibility must lie in (0, 1)");
    }
}

IntervalEstimate percentile_interval(std::vector<double> replicates, double credibility) {
    std::sort(replicates.begin(), replicates.end());
    return IntervalEstimate(empirical_inverse(replicates, (1.0 - credibility) / 2.0),
                            empirical_inverse(replicates, (1.0 + credibility) / 2.0), credibility);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

IntervalEstimate student_t_interval(std::span<const double> data, double credibility) {
    check_credibility(credibility);
    if (data.size() < 2) {
        throw Error(ErrorKind::TooFewSamples, "Student-t interval needs at least 2 observations");
    }
    const auto n = static_cast<double>(data.size());
    const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : data) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const boost::math::students_t dist(n - 1.0);
    const double t = boost::math::quantile(dist, (1.0 + credibility) / 2.0);
    const double half = t * sd / std::sqrt(n);
    return IntervalEstimate(mean - half, mean + half, credibility);
}

IntervalEstimate bootstrap_interval(std::span<const double> data, const Functional& f,
                                    double credibility, std::size_t n_resample, Rng& rng) {
    check_credibility(credibility);
    if (data.empty()) throw Error(ErrorKind::Empty, "bootstrap needs at least one observation");
    if (n_resample == 0) throw Error(ErrorKind::InvalidArgument, "n_resample must be at least 1");
    const std::size_t n = data.size();
    const std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<double> resample(n);
    std::vector<double> replicates(n_resample);
    for (double& r : replicates) {
        for (double& x : resample) x = data[rng.below(n)];
        std::sort(resample.begin(), resample.end());
        r = f(WeightedStepCdf(resample, weights));
    }
    return percentile_interval(std::move(replicates), credibility);
}

IntervalEstimate bayesian_bootstrap_interval(std::span<const double> data, const Functional& f,
                                             double credibility, std::size_t n_resample,
                                             Rng& rng) {
    check_credibility(credibility);
    if (data.empty()) {
        throw Error(ErrorKind::Empty, "Bayesian bootstrap needs at least one observation");
    }
    if (n_resample == 0) throw Error(ErrorKind::InvalidArgument, "n_resample must be at least 1");
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> w(sorted.size());
    std::vector<double> replicates(n_resample);
    for (double& r : replicates) {
        sample_uniform_simplex(std::span(w), rng);
        r = f(WeightedStepCdf(sorted, w));
    }
    return percentile_interval(std::move(replicates), credibility);
}

Generator Generator::truncated_lognormal(double mu, double sigma, double lo, double hi) {
    if (!std::isfinite(mu) || !(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::InvalidArgument, "lognormal needs finite mu and sigma > 0");
    }
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi) || hi <= 0.0) {
        throw Error(ErrorKind::BadInterval, "truncation range must satisfy lo < hi, hi > 0");
    }
    return Generator(Lognormal{mu, sigma, lo, hi});
}

Generator Generator::extreme_mixture(Generator base, double atom, double atom_prob) {
    if (!(atom_prob >= 0.0 && atom_prob <= 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "atom probability must lie in [0, 1]");
    }
    if (!std::isfinite(atom)) throw Error(ErrorKind::NonFinite, "atom must be finite");
    return Generator(Mixture{std::make_shared<const Generator>(std::move(base)), atom, atom_prob});
}

double Generator::draw(Rng& rng) const {
    if (const auto* ln = std::get_if<Lognormal>(&spec_)) {
        for (;;) {
            const double x = std::exp(ln->mu + ln->sigma * sample_normal(rng));
            if (ln->lo <= x && x <= ln->hi) return x;
        }
    }
    const auto& mix = std::get<Mixture>(spec_);
    if (rng.uniform() < mix.atom_prob) return mix.atom;
    return mix.base->draw(rng);
}

std::string Generator::describe() const {
    std::ostringstream out;
    if (const auto* ln = std::get_if<Lognormal>(&spec_)) {
        out << "truncated_lognormal(" << ln->mu << "," << ln->sigma << "," << ln->lo << ","
            << ln->hi << ")";
    } else {
        const auto& mix = std::get<Mixture>(spec_);
        out << "extreme_mixture(" << mix.base->describe() << "," << mix.atom << ","
            << mix.atom_prob << ")";
    }
    return out.str();
}

std::vector<double> generate(const Generator& gen, std::size_t n, Rng& rng) {
    std::vector<double> out(n);
    for (double& x : out) x = gen.draw(rng);
    return out;
}

std::string_view method_name(Method m) noexcept {
    switch (m) {
    case Method::StudentT: return "student_t";
    case Method::Bootstrap: return "bootstrap";
    case Method::BayesianBootstrap: return "bayesian_bootstrap";
    case Method::Bis: return "bis";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::StudentT, Method::Bootstrap, Method::BayesianBootstrap, Method::Bis}) {
        if (name == method_name(m)) return m;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

CoverageReport coverage_experiment(const CoverageSetup& setup, Method method) {
    check_credibility(setup.credibility);
    if (setup.n_trials == 0) throw Error(ErrorKind::InvalidArgument, "n_trials must be >= 1");
    if (setup.n_sample == 0) throw Error(ErrorKind::InvalidArgument, "n_sample must be >= 1");

    std::vector<ExtendedReal> lo(setup.n_trials);
    std::vector<ExtendedReal> hi(setup.n_trials);
    std::vector<char> hit(setup.n_trials);

    parallel_for(setup.n_trials, setup.threads, [&](std::size_t t) {
        Rng data_rng = Rng::substream(setup.seed, 2 * t);
        const std::vector<double> data = generate(setup.generator, setup.n_sample, data_rng);
        const std::uint64_t method_seed = substream_seed(setup.seed, 2 * t + 1);
        Rng method_rng(method_seed);

        const IntervalEstimate est = [&] {
            switch (method) {
            case Method::StudentT: return student_t_interval(data, setup.credibility);
            case Method::Bootstrap:
                return bootstrap_interval(data, setup.functional, setup.credibility,
                                          setup.n_resample, method_rng);
            case Method::BayesianBootstrap:
                return bayesian_bootstrap_interval(data, setup.functional, setup.credibility,
                                                   setup.n_resample, method_rng);
            case Method::Bis:
                break;
            }
            BisConfig cfg;
            cfg.functional = setup.functional;
            cfg.credibility = setup.credibility;
            cfg.n_resample = setup.n_resample;
            cfg.seed = method_seed;
            return interval_estimate(bis_run(data, setup.interval, cfg), setup.credibility);
        }();
        lo[t] = est.lo;
        hi[t] = est.hi;
        hit[t] = est.contains(setup.true_q) ? 1 : 0;
    });

    const auto hits = static_cast<double>(std::count(hit.begin(), hit.end(), 1));
    std::sort(lo.begin(), lo.end());
    std::sort(hi.begin(), hi.end());
    return CoverageReport{method,
                          setup.credibility,
                          setup.n_trials,
                          hits / static_cast<double>(setup.n_trials),
                          empirical_inverse(lo, 0.5),
                          empirical_inverse(hi, 0.5)};
}

double truncated_lognormal_mean(double mu, double sigma, double lo, double hi) {
    const double log_lo = lo > 0.0 ? std::log(lo) : -kInf;
    const double log_hi = std::log(hi);
    const double s2 = sigma * sigma;
    const double mass = normal_cdf((log_hi - mu) / sigma) - normal_cdf((log_lo - mu) / sigma);
    const double partial = normal_cdf((log_hi - mu - s2) / sigma) -
                           normal_cdf((log_lo - mu - s2) / sigma);
    return std::exp(mu + 0.5 * s2) * partial / mass;
}

CoverageSetup preset_truncated_lognormal() {
    return CoverageSetup{Generator::truncated_lognormal(0.0, 1.0, 0.0, 50.0),
                         truncated_lognormal_mean(0.0, 1.0, 0.0, 50.0)};
}

CoverageSetup preset_extreme_events() {
    const double base_mean = truncated_lognormal_mean(0.0, 1.0, 0.0, 50.0);
    return CoverageSetup{
        Generator::extreme_mixture(Generator::truncated_lognormal(0.0, 1.0, 0.0, 50.0), 50.0, 0.01),
        0.99 * base_mean + 0.01 * 50.0};
}

} // namespace bis
