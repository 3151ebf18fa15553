#pragma once

// Extended-real step distributions, probability boxes and the primitives
// used to evaluate and invert them.

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace bis {

// A double that may be -inf or +inf but never NaN.
using ExtendedReal = double;

inline constexpr ExtendedReal kInf = std::numeric_limits<double>::infinity();

// Weight sums must be within this distance of one.
inline constexpr double kMassTolerance = 1e-12;

struct BoundingInterval {
    ExtendedReal lo;
    ExtendedReal hi;

    // Throws BadInterval unless lo < hi (and neither is NaN).
    BoundingInterval(ExtendedReal lo, ExtendedReal hi);

    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

// Sorted observations with the interval endpoints prepended and appended:
// points[0] = x_L, points[N+1] = x_R.
class ExtendedOrderStats {
public:
    const std::vector<ExtendedReal>& points() const noexcept { return points_; }
    std::size_t n_obs() const noexcept { return points_.size() - 2; }
    std::span<const ExtendedReal> observations() const noexcept {
        return std::span(points_).subspan(1, n_obs());
    }
    ExtendedReal lower_bound() const noexcept { return points_.front(); }
    ExtendedReal upper_bound() const noexcept { return points_.back(); }

    friend ExtendedOrderStats make_extended_order_stats(std::span<const double> data,
                                                        const BoundingInterval& interval);

private:
    explicit ExtendedOrderStats(std::vector<ExtendedReal> points) : points_(std::move(points)) {}
    std::vector<ExtendedReal> points_;
};

ExtendedOrderStats make_extended_order_stats(std::span<const double> data,
                                             const BoundingInterval& interval);

// Right-continuous step CDF: strictly increasing supports, nonnegative
// weights summing to one.
class WeightedStepCdf {
public:
    // Supports must be non-decreasing; equal supports are coalesced by
    // summing their weights.  Throws InvalidArgument on malformed input.
    WeightedStepCdf(std::span<const ExtendedReal> supports, std::span<const double> weights);

    static WeightedStepCdf unit_step(ExtendedReal at);

    const std::vector<ExtendedReal>& supports() const noexcept { return supports_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    // cumulative()[i] = sum of weights[0..i]
    const std::vector<double>& cumulative() const noexcept { return cumulative_; }
    std::size_t size() const noexcept { return supports_.size(); }

    double cdf(ExtendedReal x) const noexcept;
    // Left limit F(x-).
    double cdf_left(ExtendedReal x) const noexcept;

private:
    WeightedStepCdf() = default;
    void finish();

    std::vector<ExtendedReal> supports_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

double cdf_eval(const WeightedStepCdf& dist, ExtendedReal x) noexcept;

// inf{x : F(x) >= p}.  Throws InvalidProbability unless 0 < p <= 1.
ExtendedReal generalized_inverse(const WeightedStepCdf& dist, double p);

// Index of the support returned by generalized_inverse.
std::size_t generalized_inverse_index(const WeightedStepCdf& dist, double p);

class ProbabilityBox {
public:
    // Throws InvalidArgument if lower.cdf exceeds upper.cdf anywhere.
    ProbabilityBox(WeightedStepCdf lower, WeightedStepCdf upper);

    const WeightedStepCdf& lower() const noexcept { return lower_; }
    const WeightedStepCdf& upper() const noexcept { return upper_; }

    // Union of both support sets, ascending.
    std::vector<ExtendedReal> breakpoints() const;

private:
    WeightedStepCdf lower_;
    WeightedStepCdf upper_;
};

struct ProbabilityInterval {
    double lower;
    double upper;
};

// Bounds on P(a < X <= b).  Throws BadInterval unless a < b.
ProbabilityInterval pbox_interval_probability(const ProbabilityBox& box, ExtendedReal a,
                                              ExtendedReal b);

// The expected (input) box: lower has steps of 1/(N+1) at x(1)..x(N+1),
// upper has steps of 1/(N+1) at x(0)..x(N).
ProbabilityBox expected_pbox(const ExtendedOrderStats& stats);

struct IntervalEstimate {
    ExtendedReal lo;
    ExtendedReal hi;
    double credibility;

    IntervalEstimate(ExtendedReal lo, ExtendedReal hi, double credibility);

    bool contains(double q) const noexcept { return lo <= q && q <= hi; }
    bool unbounded() const noexcept { return lo == -kInf || hi == kInf; }
};

} // namespace bis
