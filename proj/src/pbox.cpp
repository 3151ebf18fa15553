#include "bis/pbox.hpp"

#include "bis/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bis {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidProbability: return "InvalidProbability";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BadInterval: return "BadInterval";
    case ErrorKind::IndeterminateSum: return "IndeterminateSum";
    case ErrorKind::AtObservation: return "AtObservation";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    }
    return "Unknown";
}

BoundingInterval::BoundingInterval(ExtendedReal lo_, ExtendedReal hi_) : lo(lo_), hi(hi_) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
        std::ostringstream msg;
        msg << "bounding interval requires x_L < x_R, got [" << lo << ", " << hi << "]";
        throw Error(ErrorKind::BadInterval, msg.str());
    }
}

ExtendedOrderStats make_extended_order_stats(std::span<const double> data,
                                             const BoundingInterval& interval) {
    std::vector<ExtendedReal> points;
    points.reserve(data.size() + 2);
    points.push_back(interval.lo);
    for (double x : data) {
        if (!std::isfinite(x)) {
            throw Error(ErrorKind::NonFinite, "observations must be finite");
        }
        if (!interval.contains(x)) {
            std::ostringstream msg;
            msg << "observation " << x << " outside [" << interval.lo << ", " << interval.hi << "]";
            throw Error(ErrorKind::OutOfBounds, msg.str());
        }
        points.push_back(x);
    }
    std::sort(points.begin() + 1, points.end());
    points.push_back(interval.hi);
    return ExtendedOrderStats(std::move(points));
}

WeightedStepCdf::WeightedStepCdf(std::span<const ExtendedReal> supports,
                                 std::span<const double> weights) {
    if (supports.size() != weights.size()) {
        throw Error(ErrorKind::InvalidArgument, "supports and weights differ in length");
    }
    if (supports.empty()) {
        throw Error(ErrorKind::InvalidArgument, "step distribution needs at least one atom");
    }
    supports_.reserve(supports.size());
    weights_.reserve(weights.size());
    for (std::size_t i = 0; i < supports.size(); ++i) {
        const ExtendedReal s = supports[i];
        const double w = weights[i];
        if (std::isnan(s)) {
            throw Error(ErrorKind::InvalidArgument, "support point is NaN");
        }
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error(ErrorKind::InvalidArgument, "weights must be finite and nonnegative");
        }
        if (!supports_.empty()) {
            if (s < supports_.back()) {
                throw Error(ErrorKind::InvalidArgument, "supports must be non-decreasing");
            }
            if (s == supports_.back()) {
                weights_.back() += w;
                continue;
            }
        }
        supports_.push_back(s);
        weights_.push_back(w);
    }
    finish();
}

WeightedStepCdf WeightedStepCdf::unit_step(ExtendedReal at) {
    const double one = 1.0;
    return WeightedStepCdf(std::span(&at, 1), std::span(&one, 1));
}

void WeightedStepCdf::finish() {
    cumulative_.resize(weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        acc += weights_[i];
        cumulative_[i] = acc;
    }
    if (std::abs(acc - 1.0) > kMassTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "weights sum to " << acc << ", expected 1";
        throw Error(ErrorKind::InvalidArgument, msg.str());
    }
}

double WeightedStepCdf::cdf(ExtendedReal x) const noexcept {
    // first support strictly greater than x
    auto it = std::upper_bound(supports_.begin(), supports_.end(), x);
    if (it == supports_.begin()) return 0.0;
    if (it == supports_.end()) return 1.0;
    return cumulative_[static_cast<std::size_t>(it - supports_.begin()) - 1];
}

double WeightedStepCdf::cdf_left(ExtendedReal x) const noexcept {
    auto it = std::lower_bound(supports_.begin(), supports_.end(), x);
    if (it == supports_.begin()) return 0.0;
    return cumulative_[static_cast<std::size_t>(it - supports_.begin()) - 1];
}

double cdf_eval(const WeightedStepCdf& dist, ExtendedReal x) noexcept { return dist.cdf(x); }

std::size_t generalized_inverse_index(const WeightedStepCdf& dist, double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "quantile level must lie in (0, 1]");
    }
    const auto& cum = dist.cumulative();
    auto it = std::lower_bound(cum.begin(), cum.end(), p);
    if (it != cum.end()) return static_cast<std::size_t>(it - cum.begin());
    // Rounding left the total a hair below p (only possible near p = 1):
    // the answer is the last atom carrying mass.
    const auto& w = dist.weights();
    std::size_t i = w.size() - 1;
    while (i > 0 && w[i] == 0.0) --i;
    return i;
}

ExtendedReal generalized_inverse(const WeightedStepCdf& dist, double p) {
    return dist.supports()[generalized_inverse_index(dist, p)];
}

ProbabilityBox::ProbabilityBox(WeightedStepCdf lower, WeightedStepCdf upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    // Both are step functions, so checking every breakpoint suffices.
    for (ExtendedReal x : breakpoints()) {
        if (lower_.cdf(x) > upper_.cdf(x) + kMassTolerance) {
            std::ostringstream msg;
            msg << "lower CDF exceeds upper CDF at x = " << x;
            throw Error(ErrorKind::InvalidArgument, msg.str());
        }
    }
}

std::vector<ExtendedReal> ProbabilityBox::breakpoints() const {
    std::vector<ExtendedReal> out;
    out.reserve(lower_.size() + upper_.size());
    std::merge(lower_.supports().begin(), lower_.supports().end(), upper_.supports().begin(),
               upper_.supports().end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProbabilityInterval pbox_interval_probability(const ProbabilityBox& box, ExtendedReal a,
                                              ExtendedReal b) {
    if (std::isnan(a) || std::isnan(b) || !(a < b)) {
        throw Error(ErrorKind::BadInterval, "event (a, b] requires a < b");
    }
    const double upper = std::clamp(box.upper().cdf(b) - box.lower().cdf(a), 0.0, 1.0);
    const double lower = std::clamp(box.lower().cdf(b) - box.upper().cdf(a), 0.0, upper);
    return {lower, upper};
}

ProbabilityBox expected_pbox(const ExtendedOrderStats& stats) {
    const auto& pts = stats.points();
    const std::size_t n_cells = pts.size() - 1;
    const std::vector<double> w(n_cells, 1.0 / static_cast<double>(n_cells));
    std::span<const ExtendedReal> all(pts);
    return ProbabilityBox(WeightedStepCdf(all.subspan(1), w),
                          WeightedStepCdf(all.first(n_cells), w));
}

IntervalEstimate::IntervalEstimate(ExtendedReal lo_, ExtendedReal hi_, double c)
    : lo(lo_), hi(hi_), credibility(c) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
        throw Error(ErrorKind::BadInterval, "interval estimate requires lo <= hi");
    }
    if (!(c > 0.0 && c < 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "credibility must lie in (0, 1)");
    }
}

} // namespace bis
