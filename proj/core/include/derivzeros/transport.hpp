#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "derivzeros/empirical.hpp"

namespace derivzeros {

/// Hard budget for the exact dense-flow solver; beyond it estimation must be
/// requested explicitly (no silent switching).
inline constexpr std::size_t kExactTransportBudget = 1100;

/// Exact W1 with Euclidean ground metric via min-cost flow on integer-scaled
/// masses (scale n*m for uniform measures, 2^40 with largest-remainder fixup
/// otherwise). Uniform equal-size inputs take the assignment fast path, which
/// solves the same LP. Throws SizeTooLarge when |mu| + |nu| exceeds the
/// budget.
double wasserstein1_exact(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

struct W1Estimate {
    double value = 0.0;
    double error = 0.0; // stderr (subsample), marginal gap (entropic), or trim bound (assignment)
    std::string method;
};

struct W1EstimateConfig {
    enum class Method { Subsample, Entropic, Assignment };
    Method method = Method::Subsample;

    int subsample_size = 512; // exact sub-instances per bootstrap pair
    int bootstrap = 8;
    std::uint64_t seed = 0;

    double epsilon = 0.02; // entropic regularization
    int max_sinkhorn_iters = 5000;
    double sinkhorn_tol = 1e-8;
};

/// Scales W1 beyond the exact budget.
///  - subsample: mean over B bootstrap pairs of exact W1 on subsample_size
///    points, with standard error.
///  - entropic: debiased log-domain Sinkhorn divergence, reported with the
///    final marginal gap; throws NoConvergence if the fixed point stalls.
///  - assignment: exact optimal matching for uniform measures; unequal sizes
///    are replicated when one divides the other, otherwise the larger side is
///    optimally trimmed and the mass-truncation bound is reported.
W1Estimate wasserstein1_estimate(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                                 const W1EstimateConfig& cfg);

namespace detail {

/// Rectangular dense assignment (rows <= cols), shortest augmenting path with
/// dual potentials. Returns the optimal total cost; col_of_row receives the
/// matched column per row.
double solve_assignment(int nr, int nc, const std::vector<double>& cost,
                        std::vector<int>& col_of_row);

/// Dense bipartite min-cost flow by successive shortest paths. supplies and
/// demands are positive integers with equal totals; cost is row-major
/// (supply x demand). Returns total cost of an optimal flow.
double solve_transport(const std::vector<std::int64_t>& supplies,
                       const std::vector<std::int64_t>& demands,
                       const std::vector<double>& cost);

} // namespace detail

} // namespace derivzeros
