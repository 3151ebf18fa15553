#include "bis/estimators.hpp"

#include "bis/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace bis {

namespace {

void check_level(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorKind::InvalidProbability, "functional level must lie in (0, 1)");
    }
}

// Weighted sum over extended reals; zero weights never touch an infinity.
class ExtendedSum {
public:
    void add(double weight, ExtendedReal value) noexcept {
        if (!(weight > 0.0)) return;
        if (value == kInf) {
            pos_inf_ = true;
        } else if (value == -kInf) {
            neg_inf_ = true;
        } else {
            finite_ += weight * value;
        }
    }

    ExtendedReal divided_by(double denom) const {
        if (pos_inf_ && neg_inf_) {
            throw Error(ErrorKind::IndeterminateSum, "positive mass at both -inf and +inf");
        }
        if (pos_inf_) return kInf;
        if (neg_inf_) return -kInf;
        return finite_ / denom;
    }

private:
    double finite_ = 0.0;
    bool pos_inf_ = false;
    bool neg_inf_ = false;
};

// Supports of the first and last atoms that carry mass.
std::pair<ExtendedReal, ExtendedReal> mass_range(const WeightedStepCdf& dist) {
    const auto& s = dist.supports();
    const auto& w = dist.weights();
    std::size_t lo = 0;
    while (lo + 1 < w.size() && w[lo] == 0.0) ++lo;
    std::size_t hi = w.size() - 1;
    while (hi > lo && w[hi] == 0.0) --hi;
    return {s[lo], s[hi]};
}

} // namespace

Functional Functional::quantile(double p) {
    check_level(p);
    return Functional(Kind::Quantile, p);
}

Functional Functional::truncated_mean(double p) {
    check_level(p);
    return Functional(Kind::TruncatedMean, p);
}

Functional Functional::cvar(double p) {
    check_level(p);
    return Functional(Kind::Cvar, p);
}

Functional Functional::parse(std::string_view text) {
    if (text == "mean") return mean();
    if (text == "median") return median();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorKind::InvalidArgument, "unknown functional '" + std::string(text) + "'");
    }
    const std::string_view name = text.substr(0, colon);
    const std::string_view arg = text.substr(colon + 1);
    double p = 0.0;
    const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
    if (ec != std::errc() || end != arg.data() + arg.size()) {
        throw Error(ErrorKind::InvalidArgument, "bad level in '" + std::string(text) + "'");
    }
    if (name == "quantile") return quantile(p);
    if (name == "trunc-mean") return truncated_mean(p);
    if (name == "cvar") return cvar(p);
    throw Error(ErrorKind::InvalidArgument, "unknown functional '" + std::string(text) + "'");
}

std::string Functional::to_string() const {
    if (kind_ == Kind::Mean) return "mean";
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
    case Kind::Quantile:
        if (level_ == 0.5) return "median";
        out << "quantile:";
        break;
    case Kind::TruncatedMean: out << "trunc-mean:"; break;
    case Kind::Cvar: out << "cvar:"; break;
    case Kind::Mean: break;
    }
    out << level_;
    return out.str();
}

ExtendedReal Functional::operator()(const WeightedStepCdf& dist) const {
    switch (kind_) {
    case Kind::Mean: return q_mean(dist);
    case Kind::Quantile: return q_quantile(dist, level_);
    case Kind::TruncatedMean: return q_truncated_mean(dist, level_);
    case Kind::Cvar: return q_cvar(dist, level_);
    }
    return q_mean(dist);
}

ExtendedReal q_mean(const WeightedStepCdf& dist) {
    ExtendedSum sum;
    double total = 0.0;
    const auto& s = dist.supports();
    const auto& w = dist.weights();
    for (std::size_t i = 0; i < s.size(); ++i) {
        sum.add(w[i], s[i]);
        total += w[i];
    }
    const ExtendedReal mean = sum.divided_by(total);
    if (!std::isfinite(mean)) return mean;
    const auto [lo, hi] = mass_range(dist);
    return std::clamp(mean, lo, hi);
}

ExtendedReal q_quantile(const WeightedStepCdf& dist, double p) {
    check_level(p);
    return generalized_inverse(dist, p);
}

ExtendedReal q_truncated_mean(const WeightedStepCdf& dist, double p) {
    check_level(p);
    const std::size_t k = generalized_inverse_index(dist, p);
    const auto& s = dist.supports();
    const auto& w = dist.weights();
    ExtendedSum sum;
    for (std::size_t i = 0; i < k; ++i) sum.add(w[i], s[i]);
    const double below = k == 0 ? 0.0 : dist.cumulative()[k - 1];
    sum.add(p - below, s[k]);
    return sum.divided_by(p);
}

ExtendedReal q_cvar(const WeightedStepCdf& dist, double p) {
    check_level(p);
    const std::size_t k = generalized_inverse_index(dist, p);
    const auto& s = dist.supports();
    const auto& w = dist.weights();
    ExtendedSum sum;
    sum.add(dist.cumulative()[k] - p, s[k]);
    for (std::size_t i = k + 1; i < s.size(); ++i) sum.add(w[i], s[i]);
    return sum.divided_by(1.0 - p);
}

ParameterBounds bounds_for_monotonic(std::span<const double> weights,
                                     std::span<const ExtendedReal> points, const Functional& f) {
    if (weights.size() + 1 != points.size()) {
        throw Error(ErrorKind::InvalidArgument, "need exactly one more point than weights");
    }
    const WeightedStepCdf lower(points.subspan(1), weights);
    const WeightedStepCdf upper(points.first(weights.size()), weights);
    const ExtendedReal q_max = f(lower);
    // Coalescing tied points groups the sums differently for the two bounds;
    // never let that rounding invert the pair.
    const ExtendedReal q_min = std::min(f(upper), q_max);
    return {q_min, q_max};
}

} // namespace bis
