#pragma once

#include "derivzeros/config.hpp"
#include "derivzeros/report.hpp"

namespace derivzeros {

struct RunOptions {
    int threads = 1;
};

/// W1 between two empirical measures under an explicit method policy; the
/// returned method label records what actually ran. auto: exact flow within
/// budget, assignment for larger uniform clouds, subsample otherwise.
W1Estimate compute_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                            const DistanceConfig& cfg, std::uint64_t seed);

/// The limit measure of a model, discretized as an n_ref-point cloud:
/// the base measure for the non-gas models (stratified when radial), the
/// equilibrium measure sigma_Q for the Coulomb gas.
EmpiricalMeasure make_target_cloud(const EnsembleSpec& spec, int n_ref);

/// Convergence study: per (n, k, trial) sample the ensemble, solve for the
/// k-th derivative zeros, and record W1(M(P^(k)), M(P)) and W1 to the
/// discretized target. Solver failures become flagged records, never aborts.
/// Output is deterministic in (config, master_seed) for any thread count.
Report run_convergence(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Small-value probe: frequency of log|L_n^k(z)| < -n*eps per (z, n).
ProbeSmallResult probe_small_values(const ExperimentConfig& cfg);

/// Tightness probe: Monte Carlo estimate of
/// (1/n^2) Integral_{D_r} log^2 |P^(k)/P| dm per (n, trial).
ProbeTightResult probe_tightness(const ExperimentConfig& cfg);

/// Zero-to-derivative-zero pairing diagnostics: histogram of n * (nearest
/// distance), greedy matched-pair distance sum, and the optimal matching
/// distance (assignment on counting measures). Exploratory; nothing asserted.
PairingResult pairing_stats(const RootSet& parent, const RootSet& child);

/// Coulomb chain with validation against the equilibrium measure (radial KS
/// and W1 to the discretized sigma_Q).
CoulombRunResult run_coulomb_experiment(const ExperimentConfig& cfg);

} // namespace derivzeros
