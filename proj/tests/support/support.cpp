#include "support.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bis::test {

namespace {

using Rational = boost::multiprecision::cpp_rational;

KsResult ks_pvalue(double d, double n_effective) {
    const double root = std::sqrt(n_effective);
    return {d, kolmogorov_sf((root + 0.12 + 0.11 / root) * d)};
}

// (1 / width) * integral over [from, to] of the quantile function, where
// atom i occupies (C_{i-1}, C_i].
std::optional<double> integrate_quantile(std::span<const double> supports,
                                         std::span<const double> weights, const Rational& from,
                                         const Rational& to, const Rational& width) {
    Rational acc = 0;
    bool pos_inf = false;
    bool neg_inf = false;
    Rational left = 0;
    for (std::size_t i = 0; i < supports.size(); ++i) {
        const Rational right = left + Rational(weights[i]);
        const Rational lo = std::max(left, from);
        const Rational hi = std::min(right, to);
        left = right;
        if (hi <= lo) continue;
        if (std::isinf(supports[i])) {
            (supports[i] > 0 ? pos_inf : neg_inf) = true;
            continue;
        }
        acc += (hi - lo) * Rational(supports[i]);
    }
    if (pos_inf && neg_inf) return std::nullopt;
    if (pos_inf) return std::numeric_limits<double>::infinity();
    if (neg_inf) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(acc / width);
}

Rational total_mass(std::span<const double> weights) {
    Rational total = 0;
    for (double w : weights) total += Rational(w);
    return total;
}

} // namespace

double kolmogorov_sf(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return ks_pvalue(d, n);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return ks_pvalue(d, na * nb / (na + nb));
}

std::optional<double> oracle_truncated_mean(std::span<const double> supports,
                                            std::span<const double> weights, double p) {
    const Rational rp(p);
    return integrate_quantile(supports, weights, 0, rp, rp);
}

std::optional<double> oracle_cvar(std::span<const double> supports,
                                  std::span<const double> weights, double p) {
    const Rational rp(p);
    return integrate_quantile(supports, weights, rp, total_mass(weights), 1 - rp);
}

StepInstance random_step_instance(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> n_atoms(1, 5);
    const int n = n_atoms(gen);
    const bool dyadic = unit(gen) < 0.5;
    StepInstance inst;

    std::vector<double> s;
    while (static_cast<int>(s.size()) < n) {
        const double x = dyadic ? std::floor(unit(gen) * 1024.0 - 512.0) / 64.0
                                : unit(gen) * 20.0 - 10.0;
        if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
    }
    std::sort(s.begin(), s.end());
    if (n >= 2 && unit(gen) < 0.15) s.front() = -std::numeric_limits<double>::infinity();
    if (n >= 2 && unit(gen) < 0.15) s.back() = std::numeric_limits<double>::infinity();
    inst.supports = s;

    if (dyadic) {
        // n - 1 cut points on {0, ..., 1024}; repeated cuts give zero weights
        std::uniform_int_distribution<int> cut(0, 1024);
        std::vector<int> cuts{0, 1024};
        for (int i = 1; i < n; ++i) cuts.push_back(cut(gen));
        std::sort(cuts.begin(), cuts.end());
        for (int i = 0; i < n; ++i) inst.weights.push_back((cuts[i + 1] - cuts[i]) / 1024.0);
        if (unit(gen) < 0.3) {
            inst.p = std::uniform_int_distribution<int>(1, 1023)(gen) / 1024.0;
        } else {
            inst.p = 0.01 + 0.98 * unit(gen);
        }
    } else {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            inst.weights.push_back(0.05 + unit(gen));
            total += inst.weights.back();
        }
        for (double& w : inst.weights) w /= total;
        inst.p = 0.01 + 0.98 * unit(gen);
    }
    return inst;
}

DominancePair random_dominance_pair(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> n_atoms(1, 8);
    std::uniform_int_distribution<int> support(-20, 20);
    std::uniform_int_distribution<int> shift(0, 6);
    std::uniform_int_distribution<int> cut(0, 1024);
    const int n = n_atoms(gen);
    std::vector<int> cuts{0, 1024};
    for (int i = 1; i < n; ++i) cuts.push_back(cut(gen));
    std::sort(cuts.begin(), cuts.end());

    std::vector<std::pair<double, double>> z;
    std::vector<std::pair<double, double>> y;
    for (int i = 0; i < n; ++i) {
        const double w = (cuts[i + 1] - cuts[i]) / 1024.0;
        const double s = support(gen);
        z.emplace_back(s, w);
        const int d = shift(gen);
        y.emplace_back(s + (d > 2 ? d : 0), w);
    }
    auto build = [](std::vector<std::pair<double, double>> atoms) {
        std::sort(atoms.begin(), atoms.end());
        std::vector<double> s;
        std::vector<double> w;
        for (auto [a, b] : atoms) {
            s.push_back(a);
            w.push_back(b);
        }
        return WeightedStepCdf(s, w);
    };
    return {build(z), build(y)};
}

} // namespace bis::test
