#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "derivzeros/root_set.hpp"

namespace derivzeros {

struct AberthConfig {
    double tol = 1e-12;             // stop when |correction| <= tol * (1 + |approx|)
    int max_iters = 200;
    double cluster_eps = 1e-8;      // cluster radius, scaled by (1 + max |root|)
    double retry_perturb = 0x1.0p-40; // exact-hit perturbation, scaled by (1 + |z|)
};

/// Roots of P^(k) with per-root convergence flags. Multiple roots are
/// reported as repeated entries sharing a cluster multiplicity. Residuals are
/// log |last Newton correction| relative to the local scale (1 + |root|);
/// for collapsed clusters the probe disagreement takes that role.
struct RootResult {
    RootSet roots;
    std::vector<std::uint8_t> converged;
    std::vector<int> multiplicity;
    double residual_log_max = 0.0;
    double residual_log_median = 0.0;
    int iterations = 0;

    int unconverged_count() const {
        int c = 0;
        for (auto f : converged)
            if (!f) ++c;
        return c;
    }
};

/// Z(P^(k)) via Jacobi-sweep Ehrlich-Aberth driven by the elementary
/// symmetric recurrence (never expands coefficients). Exact multiple roots
/// (monomial derivatives, atomic measures) are resolved by cluster collapse:
/// a linked component of slow points is probed from several members with a
/// multiplicity-m Newton step; agreeing landings freeze the cluster.
/// Unconverged points are flagged, not thrown.
RootResult kth_derivative_roots(const RootSet& p, int k, const AberthConfig& cfg = {});

/// Independent Aberth on explicit coefficients (ascending, degree <= 64).
/// Test oracle only; shares no evaluation path with the scaled recurrence.
/// Throws NoConvergence when flags remain false after max_iters.
RootSet coeff_roots_oracle(const std::vector<Complex>& coeffs, const AberthConfig& cfg = {});

struct HullCheck {
    bool ok = false;
    double max_violation = 0.0;
};

/// True iff every child root lies within `slack` of the convex hull of the
/// parent roots; reports the worst violation distance.
HullCheck verify_gauss_lucas(const RootSet& parent, const RootSet& child, double slack);

/// n-k starting points: parent roots with the k closest to the centroid
/// dropped (ties by index), each jittered by cluster_eps at a deterministic
/// phase. Gauss-Lucas puts the true roots inside the parent hull.
std::vector<Complex> initial_guesses(const RootSet& p, int k, double cluster_eps = 1e-8);

} // namespace derivzeros
