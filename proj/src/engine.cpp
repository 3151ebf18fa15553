#include "bis/engine.hpp"

#include "bis/error.hpp"
#include "bis/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bis {

void BisConfig::validate() const {
    if (!(credibility > 0.0 && credibility < 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "credibility must lie in (0, 1)");
    }
    if (n_resample == 0) {
        throw Error(ErrorKind::InvalidArgument, "n_resample must be at least 1");
    }
}

BetaParams::BetaParams(double a_, double b_) : a(a_), b(b_) {
    if (!(a >= 0.0) || !(b >= 0.0) || !(a + b > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "beta parameters must be >= 0 with a + b > 0");
    }
}

std::size_t default_n_resample(double credibility) {
    if (!(credibility > 0.0 && credibility < 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "credibility must lie in (0, 1)");
    }
    const double raw = 100.0 / (1.0 - credibility);
    // 1 - 0.9 is not exactly 0.1; snap values within rounding of an integer.
    const double nearest = std::round(raw);
    if (std::abs(raw - nearest) <= 1e-9 * nearest) return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(raw));
}

ImpreciseRealization sample_realization(std::span<const ExtendedReal> points,
                                        const DirichletParams& params, Rng& rng) {
    if (params.size() + 1 != points.size()) {
        throw Error(ErrorKind::InvalidArgument, "need exactly one more point than parameters");
    }
    WeightVector w = sample_dirichlet(params, rng);
    WeightedStepCdf lower(points.subspan(1), w);
    WeightedStepCdf upper(points.first(w.size()), w);
    return {std::move(w), ProbabilityBox(std::move(lower), std::move(upper))};
}

std::vector<QSamples> bis_run(std::span<const double> data, const BoundingInterval& interval,
                              std::span<const Functional> functionals, const BisConfig& cfg) {
    cfg.validate();
    const ExtendedOrderStats stats = make_extended_order_stats(data, interval);
    const MergedPoints merged = merge_duplicates(stats);
    const std::span<const ExtendedReal> points(merged.points);
    const std::size_t n_cells = merged.params.size();
    const std::size_t n = cfg.n_resample;

    std::vector<QSamples> out(functionals.size());
    for (auto& qs : out) {
        qs.q_min.assign(n, 0.0);
        qs.q_max.assign(n, 0.0);
        qs.low_tail_resolution = n < default_n_resample(cfg.credibility);
    }

    parallel_for(n, cfg.threads, [&](std::size_t i) {
        Rng rng = Rng::substream(cfg.seed, i);
        WeightVector w(n_cells);
        sample_dirichlet(merged.params, std::span(w), rng);
        const WeightedStepCdf lower(points.subspan(1), w);
        const WeightedStepCdf upper(points.first(n_cells), w);
        for (std::size_t j = 0; j < functionals.size(); ++j) {
            const ExtendedReal q_max = functionals[j](lower);
            out[j].q_max[i] = q_max;
            out[j].q_min[i] = std::min(functionals[j](upper), q_max);
        }
    });
    return out;
}

QSamples bis_run(std::span<const double> data, const BoundingInterval& interval,
                 const BisConfig& cfg) {
    auto runs = bis_run(data, interval, std::span(&cfg.functional, 1), cfg);
    return std::move(runs.front());
}

ExtendedReal empirical_inverse(std::span<const ExtendedReal> sorted, double p) {
    if (sorted.empty()) throw Error(ErrorKind::Empty, "no samples to invert");
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "quantile level must lie in (0, 1]");
    }
    const auto n = static_cast<double>(sorted.size());
    // smallest k with (k + 1) / n >= p, evaluated exactly as the ECDF is
    auto k = static_cast<std::size_t>(std::max(0.0, std::ceil(p * n) - 1.0));
    k = std::min(k, sorted.size() - 1);
    while (k > 0 && static_cast<double>(k) / n >= p) --k;
    while (k + 1 < sorted.size() && static_cast<double>(k + 1) / n < p) ++k;
    return sorted[k];
}

IntervalEstimate interval_estimate(const QSamples& qs, double credibility) {
    if (qs.q_min.empty() || qs.q_max.empty()) {
        throw Error(ErrorKind::Empty, "no parameter samples");
    }
    if (!(credibility > 0.0 && credibility < 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "credibility must lie in (0, 1)");
    }
    std::vector<ExtendedReal> lo_sorted = qs.q_min;
    std::vector<ExtendedReal> hi_sorted = qs.q_max;
    std::sort(lo_sorted.begin(), lo_sorted.end());
    std::sort(hi_sorted.begin(), hi_sorted.end());
    const ExtendedReal lo = empirical_inverse(lo_sorted, (1.0 - credibility) / 2.0);
    const ExtendedReal hi = empirical_inverse(hi_sorted, (1.0 + credibility) / 2.0);
    return IntervalEstimate(lo, hi, credibility);
}

std::vector<QBoxRow> q_probability_box(const QSamples& qs) {
    std::vector<ExtendedReal> lo_sorted = qs.q_min;
    std::vector<ExtendedReal> hi_sorted = qs.q_max;
    std::sort(lo_sorted.begin(), lo_sorted.end());
    std::sort(hi_sorted.begin(), hi_sorted.end());
    std::vector<ExtendedReal> values;
    values.reserve(lo_sorted.size() + hi_sorted.size());
    std::merge(lo_sorted.begin(), lo_sorted.end(), hi_sorted.begin(), hi_sorted.end(),
               std::back_inserter(values));
    values.erase(std::unique(values.begin(), values.end()), values.end());

    const auto n_lo = static_cast<double>(lo_sorted.size());
    const auto n_hi = static_cast<double>(hi_sorted.size());
    std::vector<QBoxRow> rows;
    rows.reserve(values.size());
    auto it_lo = lo_sorted.begin();
    auto it_hi = hi_sorted.begin();
    for (ExtendedReal v : values) {
        while (it_lo != lo_sorted.end() && *it_lo <= v) ++it_lo;
        while (it_hi != hi_sorted.end() && *it_hi <= v) ++it_hi;
        rows.push_back({v, static_cast<double>(it_hi - hi_sorted.begin()) / n_hi,
                        static_cast<double>(it_lo - lo_sorted.begin()) / n_lo});
    }
    return rows;
}

std::pair<BetaParams, BetaParams> point_condition_betas(std::span<const double> data,
                                                        const BoundingInterval& interval,
                                                        double x) {
    if (std::isnan(x) || !(interval.lo < x && x < interval.hi)) {
        throw Error(ErrorKind::OutOfBounds, "x must lie strictly inside the bounding interval");
    }
    double below = 0.0;
    double above = 0.0;
    for (double d : data) {
        if (!interval.contains(d)) {
            throw Error(ErrorKind::OutOfBounds, "observation outside the bounding interval");
        }
        if (d == x) {
            std::ostringstream msg;
            msg << "x = " << x << " coincides with an observation";
            throw Error(ErrorKind::AtObservation, msg.str());
        }
        (d < x ? below : above) += 1.0;
    }
    return {BetaParams(below, above + 1.0), BetaParams(below + 1.0, above)};
}

ProjectionParams probabilistic_projection_params(std::span<const double> data,
                                                 const BoundingInterval& interval) {
    const ExtendedOrderStats stats = make_extended_order_stats(data, interval);
    std::vector<double> alphas(stats.points().size(), 1.0);
    alphas.front() = 0.5;
    alphas.back() = 0.5;
    return {stats.points(), DirichletParams(std::move(alphas))};
}

WeightedStepCdf sample_projection(const ProjectionParams& proj, Rng& rng) {
    const WeightVector w = sample_dirichlet(proj.params, rng);
    return WeightedStepCdf(proj.points, w);
}

} // namespace bis
