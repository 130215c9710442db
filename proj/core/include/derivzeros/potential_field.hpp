#pragma once

#include <functional>

#include "derivzeros/errors.hpp"
#include "derivzeros/root_set.hpp"

namespace derivzeros {

/// Radially symmetric external potential. The parametric family is the
/// Mittag-Leffler potential Q(z) = |z|^(2 alpha) - 2 nu log|z| (alpha >= 1,
/// nu >= 0; nu = 0, alpha = 1 is the Ginibre potential |z|^2). A custom
/// radial profile g(r) with its derivative is accepted when r g'(r) is
/// increasing.
struct RadialPotential {
    double alpha = 1.0;
    double nu = 0.0;
    std::function<double(double)> custom_g;
    std::function<double(double)> custom_dg;

    bool parametric() const { return !custom_g; }

    double g(double r) const {
        if (parametric()) {
            if (r <= 0.0) return nu > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
            const double p = std::pow(r, 2.0 * alpha);
            return nu > 0.0 ? p - 2.0 * nu * std::log(r) : p;
        }
        return custom_g(r);
    }

    double dg(double r) const {
        if (parametric()) {
            if (r <= 0.0) return nu > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
            return 2.0 * alpha * std::pow(r, 2.0 * alpha - 1.0) - 2.0 * nu / r;
        }
        return custom_dg(r);
    }

    /// Laplacian of g(|z|) at radius r > 0.
    double laplacian(double r) const {
        if (parametric()) return 4.0 * alpha * alpha * std::pow(r, 2.0 * alpha - 2.0);
        const double h = 1e-5 * (1.0 + r);
        const double g2 = (custom_dg(r + h) - custom_dg(r - h)) / (2.0 * h);
        return g2 + custom_dg(r) / r;
    }

    double Q(Complex z) const { return g(std::abs(z)); }

    void validate() const {
        if (parametric()) {
            if (!(alpha >= 1.0)) throw InvalidSpec("potential: alpha must be >= 1");
            if (!(nu >= 0.0)) throw InvalidSpec("potential: nu must be >= 0");
        } else if (!custom_dg) {
            throw InvalidSpec("potential: custom profile needs a derivative");
        }
    }
};

/// Droplet radii from the radial mass conditions r g'(r)/2 = 0 and = 1.
/// Closed forms for the parametric family; bisection for custom profiles.
/// Throws NoDroplet when the bracket fails.
double droplet_inner_radius(const RadialPotential& pot);
double droplet_outer_radius(const RadialPotential& pot);

} // namespace derivzeros
