#include "bis/dirichlet.hpp"

#include "bis/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace bis {

double sample_exponential(Rng& rng) noexcept { return -std::log(rng.uniform_open0()); }

double sample_normal(Rng& rng) noexcept {
    // Marsaglia polar method, one value per call.
    for (;;) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

namespace {

void check_shape(double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw Error(ErrorKind::InvalidArgument, "gamma shape must be finite and positive");
    }
}

// Marsaglia & Tsang (2000), shape >= 1.
double gamma_mt(double shape, Rng& rng) noexcept {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open0();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace

double sample_gamma(double shape, Rng& rng) {
    check_shape(shape);
    if (shape >= 1.0) return gamma_mt(shape, rng);
    return std::exp(sample_log_gamma(shape, rng));
}

double sample_log_gamma(double shape, Rng& rng) {
    check_shape(shape);
    if (shape >= 1.0) return std::log(gamma_mt(shape, rng));
    // G(a) = G(a + 1) * U^(1/a)
    const double g = gamma_mt(shape + 1.0, rng);
    return std::log(g) + std::log(rng.uniform_open0()) / shape;
}

double sample_beta(double a, double b, Rng& rng) {
    const double x = sample_log_gamma(a, rng);
    const double y = sample_log_gamma(b, rng);
    // x/(x+y) in log space
    const double m = std::max(x, y);
    const double ex = std::exp(x - m);
    return ex / (ex + std::exp(y - m));
}

DirichletParams::DirichletParams(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "Dirichlet needs at least one parameter");
    }
    for (double a : alphas_) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw Error(ErrorKind::InvalidArgument, "Dirichlet parameters must be finite and > 0");
        }
    }
}

double DirichletParams::total() const noexcept {
    return std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
}

bool DirichletParams::all_unit() const noexcept {
    return std::all_of(alphas_.begin(), alphas_.end(), [](double a) { return a == 1.0; });
}

void sample_uniform_simplex(std::span<double> out, Rng& rng) {
    if (out.empty()) {
        throw Error(ErrorKind::InvalidArgument, "simplex dimension must be at least 1");
    }
    double total = 0.0;
    for (double& w : out) {
        w = sample_exponential(rng);
        total += w;
    }
    const double inv = 1.0 / total;
    for (double& w : out) w *= inv;
}

WeightVector sample_uniform_simplex(std::size_t n, Rng& rng) {
    WeightVector w(n);
    sample_uniform_simplex(std::span(w), rng);
    return w;
}

void sample_dirichlet(const DirichletParams& params, std::span<double> out, Rng& rng) {
    const auto& alphas = params.alphas();
    if (out.size() != alphas.size()) {
        throw Error(ErrorKind::InvalidArgument, "output size does not match Dirichlet dimension");
    }
    if (params.all_unit()) {
        sample_uniform_simplex(out, rng);
        return;
    }
    const bool any_small = std::any_of(alphas.begin(), alphas.end(), [](double a) { return a < 1.0; });
    if (!any_small) {
        double total = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = gamma_mt(alphas[i], rng);
            total += out[i];
        }
        for (double& w : out) w /= total;
        return;
    }
    // Small shapes can underflow every component; normalise in log space.
    double top = -kInf;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = sample_log_gamma(alphas[i], rng);
        top = std::max(top, out[i]);
    }
    double total = 0.0;
    for (double& w : out) {
        w = std::exp(w - top);
        total += w;
    }
    for (double& w : out) w /= total;
}

WeightVector sample_dirichlet(const DirichletParams& params, Rng& rng) {
    WeightVector w(params.size());
    sample_dirichlet(params, std::span(w), rng);
    return w;
}

MergedPoints merge_duplicates(const ExtendedOrderStats& stats) {
    const auto& pts = stats.points();
    std::vector<ExtendedReal> reduced;
    std::vector<double> alphas;
    reduced.reserve(pts.size());
    alphas.reserve(pts.size());
    reduced.push_back(pts[0]);
    std::size_t i = 0;
    while (i + 1 < pts.size()) {
        std::size_t j = i;
        while (j + 1 < pts.size() && pts[j + 1] == pts[i]) ++j;
        const std::size_t m = j - i;
        if (m >= 1) {
            // m degenerate unit cells [v, v] aggregate into one cell of weight m.
            reduced.push_back(pts[i]);
            alphas.push_back(static_cast<double>(m));
            i = j;
            if (i + 1 >= pts.size()) break;
        }
        reduced.push_back(pts[i + 1]);
        alphas.push_back(1.0);
        ++i;
    }
    return {std::move(reduced), DirichletParams(std::move(alphas))};
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorKind::InvalidArgument, "concentration alpha must be finite and > 0");
    }
}

} // namespace

WeightedStepCdf sample_unit_dp_grid(double alpha, std::size_t n_cells, Rng& rng) {
    check_alpha(alpha);
    if (n_cells == 0) throw Error(ErrorKind::InvalidArgument, "n_cells must be at least 1");
    const double n = static_cast<double>(n_cells);
    const DirichletParams params(std::vector<double>(n_cells, alpha / n));
    const WeightVector w = sample_dirichlet(params, rng);
    std::vector<ExtendedReal> supports(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) supports[i] = static_cast<double>(i + 1) / n;
    return WeightedStepCdf(supports, w);
}

WeightedStepCdf sample_unit_dp_stick(double alpha, std::size_t n_terms, Rng& rng) {
    check_alpha(alpha);
    if (n_terms == 0) throw Error(ErrorKind::InvalidArgument, "n_terms must be at least 1");
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(n_terms + 1);
    double remaining = 1.0;
    for (std::size_t i = 0; i < n_terms; ++i) {
        // Beta(1, alpha) by inversion.
        const double b = -std::expm1(std::log(rng.uniform_open0()) / alpha);
        const double where = rng.uniform();
        atoms.emplace_back(where, remaining * b);
        remaining *= 1.0 - b;
    }
    atoms.emplace_back(rng.uniform(), remaining);
    std::sort(atoms.begin(), atoms.end());
    std::vector<ExtendedReal> supports(atoms.size());
    std::vector<double> weights(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        supports[i] = atoms[i].first;
        weights[i] = atoms[i].second;
    }
    return WeightedStepCdf(supports, weights);
}

} // namespace bis
