#pragma once

#include <vector>

#include "derivzeros/potential_field.hpp"
#include "derivzeros/root_set.hpp"

namespace derivzeros {

/// Weighted complex point cloud with total mass 1 (uniform weights by
/// default). Carrier of M(P), the uniform measure on a zero multiset, and of
/// the gas empirical measure.
struct EmpiricalMeasure {
    std::vector<Complex> points;
    std::vector<double> weights;

    EmpiricalMeasure() = default;
    static EmpiricalMeasure uniform(std::vector<Complex> pts);
    static EmpiricalMeasure of(const RootSet& p) { return uniform(p.roots); }
    EmpiricalMeasure(std::vector<Complex> pts, std::vector<double> w);

    std::size_t size() const { return points.size(); }
    bool is_uniform() const;
    void validate() const;
};

/// U^mu(z) = sum_i w_i log 1/|z - p_i|^2. Throws AtomHit when z is an atom.
double log_potential(const EmpiricalMeasure& mu, Complex z);

/// Discrete logarithmic energy, off-diagonal double sum of log 1/|p_i-p_j|^2
/// (the diagonal self-energy is excluded by convention). Throws
/// CoincidentAtoms on repeated atoms.
double energy(const EmpiricalMeasure& mu);

/// energy(mu) + 2 sum_i w_i Q(p_i).
double weighted_energy(const EmpiricalMeasure& mu, const RadialPotential& Q);

} // namespace derivzeros
