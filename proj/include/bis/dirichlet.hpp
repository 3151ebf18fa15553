#pragma once

// Random variates, Dirichlet weight vectors, duplicate merging and unit
// Dirichlet process realisations.

#include "bis/pbox.hpp"
#include "bis/random.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bis {

// Scalar variates.  All take the stream by reference and advance it.
double sample_exponential(Rng& rng) noexcept;
double sample_normal(Rng& rng) noexcept;
// Gamma(shape, 1).  Marsaglia-Tsang for shape >= 1, boosted for shape < 1.
double sample_gamma(double shape, Rng& rng);
// log of a Gamma(shape, 1) draw; stays finite for tiny shapes where the
// draw itself underflows.
double sample_log_gamma(double shape, Rng& rng);
double sample_beta(double a, double b, Rng& rng);

class DirichletParams {
public:
    // Throws InvalidArgument unless every alpha is finite and > 0.
    explicit DirichletParams(std::vector<double> alphas);
    static DirichletParams uniform(std::size_t n) { return DirichletParams(std::vector<double>(n, 1.0)); }

    const std::vector<double>& alphas() const noexcept { return alphas_; }
    std::size_t size() const noexcept { return alphas_.size(); }
    double total() const noexcept;
    bool all_unit() const noexcept;

private:
    std::vector<double> alphas_;
};

// Element of the unit simplex.
using WeightVector = std::vector<double>;

// Dir[1, ..., 1] of dimension n, via normalised unit exponentials.
WeightVector sample_uniform_simplex(std::size_t n, Rng& rng);
void sample_uniform_simplex(std::span<double> out, Rng& rng);

// Dir[alphas] via normalised Gamma(alpha_i, 1) variates.
WeightVector sample_dirichlet(const DirichletParams& params, Rng& rng);
void sample_dirichlet(const DirichletParams& params, std::span<double> out, Rng& rng);

struct MergedPoints {
    std::vector<ExtendedReal> points;
    DirichletParams params;
};

// Collapses each run of m+1 identical points to two copies, giving the
// degenerate cell between them parameter m.  Without ties this returns the
// points unchanged with unit parameters.
MergedPoints merge_duplicates(const ExtendedOrderStats& stats);

// Unit Dirichlet process (also called the identity Dirichlet process):
// a random CDF on [0, 1] with concentration alpha.

// Discretised on n_cells equal cells: Dir[alpha/n, ..., alpha/n] weights at
// the right cell endpoints i/n.
WeightedStepCdf sample_unit_dp_grid(double alpha, std::size_t n_cells, Rng& rng);

// Truncated stick-breaking: n_terms sticks B_i ~ Beta(1, alpha) at uniform
// atoms, the leftover stick at one more uniform atom.
WeightedStepCdf sample_unit_dp_stick(double alpha, std::size_t n_terms, Rng& rng);

} // namespace bis
