#include "derivzeros/coulomb.hpp"

#include <cmath>

namespace derivzeros {

namespace {

double bisect_mass(const RadialPotential& pot, double target, double lo, double hi) {
    auto mass = [&pot](double r) { return 0.5 * r * pot.dg(r); };
    double flo = mass(lo) - target;
    double fhi = mass(hi) - target;
    if (flo > 0.0 || fhi < 0.0) throw NoDroplet("droplet: mass condition unsolvable in bracket");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = mass(mid) - target;
        if (f <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double droplet_inner_radius(const RadialPotential& pot) {
    pot.validate();
    if (pot.parametric())
        return pot.nu > 0.0 ? std::pow(pot.nu / pot.alpha, 1.0 / (2.0 * pot.alpha)) : 0.0;
    const double r_out = droplet_outer_radius(pot);
    if (0.5 * 1e-9 * pot.dg(1e-9) >= 0.0 && pot.dg(1e-9) >= 0.0) return 0.0;
    return bisect_mass(pot, 0.0, 1e-9, r_out);
}

double droplet_outer_radius(const RadialPotential& pot) {
    pot.validate();
    if (pot.parametric())
        return std::pow((1.0 + pot.nu) / pot.alpha, 1.0 / (2.0 * pot.alpha));
    double hi = 1.0;
    for (int it = 0; it < 64 && 0.5 * hi * pot.dg(hi) < 1.0; ++it) hi *= 2.0;
    if (0.5 * hi * pot.dg(hi) < 1.0) throw NoDroplet("droplet: outer mass condition unreachable");
    return bisect_mass(pot, 1.0, 1e-9, hi);
}

double coulomb_energy(const RootSet& points, const RadialPotential& potential, int n_scale) {
    const auto& z = points.roots;
    double pair_term = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j)
        for (std::size_t k = j + 1; k < z.size(); ++k) {
            const double d = std::abs(z[j] - z[k]);
            if (d == 0.0) throw CoincidentPoints("coulomb_energy: coincident points");
            pair_term -= 2.0 * std::log(d);
        }
    double pot_term = 0.0;
    for (const Complex& p : z) pot_term += potential.Q(p);
    return pair_term + static_cast<double>(n_scale) * pot_term;
}

double coulomb_sweep(std::vector<Complex>& points, const RadialPotential& potential, double beta,
                     int n_scale, double proposal_stddev, Rng& rng) {
    const std::size_t n = points.size();
    int accepted = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex cur = points[i];
        const Complex prop = cur + proposal_stddev * rng.gauss_pair();
        // sum of log |prop-z_j|^2 / |cur-z_j|^2 accumulates the pair term with
        // one log per neighbor
        double dlog2 = 0.0;
        bool coincident = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double nn = std::norm(prop - points[j]);
            if (nn == 0.0) {
                coincident = true;
                break;
            }
            dlog2 += std::log(nn / std::norm(cur - points[j]));
        }
        if (coincident) continue;
        const double dH =
            -dlog2 + static_cast<double>(n_scale) * (potential.Q(prop) - potential.Q(cur));
        if (dH <= 0.0 || rng.uniform01() < std::exp(-beta * dH)) {
            points[i] = prop;
            ++accepted;
        }
    }
    return n == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(n);
}

CoulombChainResult run_coulomb_chain(const RadialPotential& potential, double beta, int n,
                                     const McmcConfig& cfg, std::uint64_t seed) {
    potential.validate();
    cfg.validate();
    if (n < 2) throw InvalidSpec("coulomb: n must be >= 2");
    if (!(beta > 0.0)) throw InvalidSpec("coulomb: beta must be positive");

    Rng rng(derive_seed(seed, {cfg.chain_seed, 0xC0D1ULL}));
    const double r0 = droplet_outer_radius(potential) + 1.0;
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (Complex& p : z) {
        const double r = r0 * std::sqrt(rng.uniform01());
        const double t = 6.283185307179586 * rng.uniform01();
        p = {r * std::cos(t), r * std::sin(t)};
    }

    double step = cfg.proposal_stddev;
    for (int s = 0; s < cfg.burn_in; ++s) {
        const double acc = coulomb_sweep(z, potential, beta, n, step, rng);
        if (cfg.adapt && step > 0.0) step *= std::exp(0.1 * (acc - cfg.target_acceptance));
    }

    CoulombChainResult out;
    double acc_sum = 0.0;
    for (int s = 0; s < cfg.sweeps; ++s) {
        const double acc = coulomb_sweep(z, potential, beta, n, step, rng);
        acc_sum += acc;
        if ((s + 1) % cfg.thinning == 0) {
            out.acceptance_trace.push_back(acc);
            out.energy_trace.push_back(coulomb_energy(RootSet(z), potential, n));
        }
    }
    out.points = RootSet(std::move(z));
    out.final_stddev = step;
    out.mean_acceptance = cfg.sweeps > 0 ? acc_sum / cfg.sweeps : 1.0;
    return out;
}

} // namespace derivzeros
