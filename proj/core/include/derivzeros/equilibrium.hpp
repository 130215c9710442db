#pragma once

#include "derivzeros/empirical.hpp"
#include "derivzeros/potential_field.hpp"
#include "derivzeros/root_set.hpp"

namespace derivzeros {

/// Equilibrium measure of a radial potential: density Laplacian(Q)/(4 pi) on
/// the droplet annulus r_inner <= |z| <= r_outer (a disk when r_inner = 0),
/// with the modified Robin constant F_Q = g(r_outer) - 2 log r_outer from the
/// boundary value of the radial logarithmic potential.
struct EquilibriumMeasure {
    double r_inner = 0.0;
    double r_outer = 1.0;
    double robin_constant = 0.0;
    RadialPotential potential;

    double density(double r) const {
        if (r < r_inner || r > r_outer) return 0.0;
        return potential.laplacian(std::max(r, 1e-300)) / (4.0 * 3.141592653589793);
    }

    /// Total mass by quadrature of 2 pi r density(r); should be 1.
    double mass() const;
};

EquilibriumMeasure equilibrium_radial(const RadialPotential& potential);

/// sigma_Q({|z| <= r}).
double radial_cdf(const EquilibriumMeasure& eq, double r);

/// Radius with sigma_Q({|z| <= r}) = u.
double radial_cdf_inverse(const EquilibriumMeasure& eq, double u);

/// Kolmogorov-Smirnov distance between the empirical radial CDF of a point
/// set and the equilibrium radial CDF.
double ks_radial(const RootSet& points, const EquilibriumMeasure& eq);

/// U^sigma(zeta) on |zeta| = rho via the circle-average identity
/// (integral of log|zeta - eta| over a circle is log max(|zeta|, |eta|)).
double u_sigma_radial(const EquilibriumMeasure& eq, double rho);

/// Stratified N-point cloud: inverse-CDF radii against a golden-angle phase.
EmpiricalMeasure discretize_radial(const EquilibriumMeasure& eq, int n_points);

} // namespace derivzeros
