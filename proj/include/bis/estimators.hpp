#pragma once

// Population-parameter functionals on step distributions.  All of them are
// monotone under first-order stochastic dominance, so a realised p-box maps
// straight to a [q_min, q_max] pair.

#include "bis/pbox.hpp"

#include <span>
#include <string>
#include <string_view>

namespace bis {

class Functional {
public:
    enum class Kind { Mean, Quantile, TruncatedMean, Cvar };

    static Functional mean() { return Functional(Kind::Mean, 0.0); }
    static Functional median() { return Functional(Kind::Quantile, 0.5); }
    // p must lie in (0, 1); throws InvalidProbability otherwise.
    static Functional quantile(double p);
    static Functional truncated_mean(double p);
    static Functional cvar(double p);

    // mean | median | quantile:p | trunc-mean:p | cvar:p
    static Functional parse(std::string_view text);
    std::string to_string() const;

    Kind kind() const noexcept { return kind_; }
    double level() const noexcept { return level_; }

    ExtendedReal operator()(const WeightedStepCdf& dist) const;

    friend bool operator==(const Functional&, const Functional&) = default;

private:
    Functional(Kind kind, double level) : kind_(kind), level_(level) {}

    Kind kind_;
    double level_;
};

// Sum of w_i s_i over atoms with w_i > 0.  Signed infinities propagate;
// positive mass at both -inf and +inf throws IndeterminateSum.
ExtendedReal q_mean(const WeightedStepCdf& dist);

ExtendedReal q_quantile(const WeightedStepCdf& dist, double p);

// Mean of the lowest-p part, splitting the atom at the p-quantile so the
// retained mass is exactly p.
ExtendedReal q_truncated_mean(const WeightedStepCdf& dist, double p);

// Mean of the upper (1 - p) tail with the same atom split, so that
// mean = p * truncated_mean + (1 - p) * cvar.
ExtendedReal q_cvar(const WeightedStepCdf& dist, double p);

struct ParameterBounds {
    ExtendedReal q_min;
    ExtendedReal q_max;
};

// q_max from the lower-bound CDF (weights on points[1..]), q_min from the
// upper-bound CDF (weights on points[0..n-1]).  Requires
// weights.size() + 1 == points.size().
ParameterBounds bounds_for_monotonic(std::span<const double> weights,
                                     std::span<const ExtendedReal> points, const Functional& f);

} // namespace bis
