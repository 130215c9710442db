#pragma once

#include <cstdint>
#include <vector>

#include "derivzeros/potential_field.hpp"
#include "derivzeros/rng.hpp"
#include "derivzeros/root_set.hpp"

namespace derivzeros {

struct McmcConfig {
    int sweeps = 2000; // post-burn-in sweeps (one proposal per particle each)
    int burn_in = 500;
    double proposal_stddev = 0.5; // initial; adapted during burn-in only
    double target_acceptance = 0.30;
    bool adapt = true;
    int thinning = 1;
    std::uint64_t chain_seed = 0;

    void validate() const {
        if (sweeps < 1 || burn_in < 0 || thinning < 1)
            throw InvalidSpec("mcmc: sweeps/burn-in/thinning out of range");
        if (!(proposal_stddev >= 0.0)) throw InvalidSpec("mcmc: proposal stddev must be >= 0");
        if (!(target_acceptance > 0.0 && target_acceptance < 1.0))
            throw InvalidSpec("mcmc: target acceptance must be in (0,1)");
    }
};

/// H(zeta) = 2 sum_{j<k} log 1/|zeta_j - zeta_k| + n_scale * sum_i Q(zeta_i),
/// so the gas density is proportional to exp(-beta H). O(n^2).
double coulomb_energy(const RootSet& points, const RadialPotential& potential, int n_scale);

/// One Metropolis sweep: every particle proposed once with an isotropic
/// Gaussian step, energy differences computed incrementally in O(n).
/// Returns the sweep acceptance rate. Proposals landing exactly on another
/// particle are rejected.
double coulomb_sweep(std::vector<Complex>& points, const RadialPotential& potential, double beta,
                     int n_scale, double proposal_stddev, Rng& rng);

struct CoulombChainResult {
    RootSet points;
    double final_stddev = 0.0;
    double mean_acceptance = 0.0;           // post-burn-in
    std::vector<double> energy_trace;       // every `thinning` sweeps, post-burn-in
    std::vector<double> acceptance_trace;
};

/// Full chain: i.i.d. initialization on the disk of radius R_droplet + 1,
/// burn-in with step-size adaptation toward the target acceptance (frozen
/// afterward so stationarity is preserved), then `sweeps` sampling sweeps.
CoulombChainResult run_coulomb_chain(const RadialPotential& potential, double beta, int n,
                                     const McmcConfig& cfg, std::uint64_t seed);

} // namespace derivzeros
