#include "derivzeros/equilibrium.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace derivzeros {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kGoldenFrac = 0.6180339887498949;

// 32-node Gauss-Legendre rule on [-1,1], composited over panels.
struct GL32 {
    std::array<double, 32> x{}, w{};
    GL32() {
        // Newton iteration on Legendre P_32; nodes to full double precision.
        const int n = 32;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double step = p1 / dp;
                t -= step;
                if (std::fabs(step) < 1e-16) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[static_cast<std::size_t>(i)] = -t;
            x[static_cast<std::size_t>(n - 1 - i)] = t;
            w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(n - 1 - i)] =
                2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

template <typename F> double integrate(F&& f, double a, double b, int panels = 8) {
    static const GL32 rule;
    if (!(b > a)) return 0.0;
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h, half = 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < 32; ++i)
            s += rule.w[static_cast<std::size_t>(i)] * f(mid + half * rule.x[static_cast<std::size_t>(i)]);
        total += s * half;
    }
    return total;
}

} // namespace

double EquilibriumMeasure::mass() const {
    return integrate([this](double r) { return 2.0 * kPi * r * density(r); }, r_inner, r_outer);
}

EquilibriumMeasure equilibrium_radial(const RadialPotential& potential) {
    potential.validate();
    EquilibriumMeasure eq;
    eq.potential = potential;
    eq.r_inner = droplet_inner_radius(potential);
    eq.r_outer = droplet_outer_radius(potential);
    if (!(eq.r_outer > eq.r_inner)) throw NoDroplet("equilibrium: empty droplet");
    eq.robin_constant = potential.g(eq.r_outer) - 2.0 * std::log(eq.r_outer);
    return eq;
}

double radial_cdf(const EquilibriumMeasure& eq, double r) {
    if (r < 0.0) throw InvalidSpec("radial_cdf: negative radius");
    if (r <= eq.r_inner) return 0.0;
    if (r >= eq.r_outer) return 1.0;
    if (eq.potential.parametric()) {
        const double a = eq.potential.alpha;
        const double v =
            a * (std::pow(r, 2.0 * a) - std::pow(eq.r_inner, 2.0 * a));
        return std::clamp(v, 0.0, 1.0);
    }
    const double v =
        integrate([&eq](double s) { return 2.0 * kPi * s * eq.density(s); }, eq.r_inner, r);
    return std::clamp(v, 0.0, 1.0);
}

double radial_cdf_inverse(const EquilibriumMeasure& eq, double u) {
    u = std::clamp(u, 0.0, 1.0);
    if (eq.potential.parametric()) {
        const double a = eq.potential.alpha;
        return std::pow(u / a + std::pow(eq.r_inner, 2.0 * a), 1.0 / (2.0 * a));
    }
    double lo = eq.r_inner, hi = eq.r_outer;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (radial_cdf(eq, mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double ks_radial(const RootSet& points, const EquilibriumMeasure& eq) {
    std::vector<double> radii;
    radii.reserve(points.roots.size());
    for (const Complex& p : points.roots) radii.push_back(std::abs(p));
    std::sort(radii.begin(), radii.end());
    const double n = static_cast<double>(radii.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double F = radial_cdf(eq, radii[i]);
        ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / n - F));
        ks = std::max(ks, std::fabs(static_cast<double>(i) / n - F));
    }
    return ks;
}

double u_sigma_radial(const EquilibriumMeasure& eq, double rho) {
    if (rho >= eq.r_outer) return -2.0 * std::log(rho);
    const double inner_mass = radial_cdf(eq, rho);
    const double lo = std::max(rho, eq.r_inner);
    const double tail = integrate(
        [&eq](double s) { return std::log(s) * 2.0 * kPi * s * eq.density(s); }, lo, eq.r_outer);
    const double log_rho = rho > 0.0 ? std::log(rho) : 0.0; // zero mass inside anyway
    return -2.0 * (inner_mass * log_rho + tail);
}

EmpiricalMeasure discretize_radial(const EquilibriumMeasure& eq, int n_points) {
    if (n_points < 1) throw InvalidSpec("discretize_radial: need at least one point");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n_points);
        const double r = radial_cdf_inverse(eq, u);
        const double phase = kGoldenFrac * static_cast<double>(i + 1);
        const double t = 2.0 * kPi * (phase - std::floor(phase));
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    return EmpiricalMeasure::uniform(std::move(pts));
}

} // namespace derivzeros
