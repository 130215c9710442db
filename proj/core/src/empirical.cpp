#include "derivzeros/empirical.hpp"

#include <cmath>

namespace derivzeros {

EmpiricalMeasure EmpiricalMeasure::uniform(std::vector<Complex> pts) {
    EmpiricalMeasure m;
    if (pts.empty()) throw InvalidSpec("empirical measure: needs at least one point");
    m.weights.assign(pts.size(), 1.0 / static_cast<double>(pts.size()));
    m.points = std::move(pts);
    return m;
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<Complex> pts, std::vector<double> w)
    : points(std::move(pts)), weights(std::move(w)) {
    validate();
}

bool EmpiricalMeasure::is_uniform() const {
    if (points.empty()) return false;
    const double w0 = 1.0 / static_cast<double>(points.size());
    for (double w : weights)
        if (std::fabs(w - w0) > 1e-15) return false;
    return true;
}

void EmpiricalMeasure::validate() const {
    if (points.empty()) throw InvalidSpec("empirical measure: needs at least one point");
    if (points.size() != weights.size())
        throw InvalidSpec("empirical measure: points/weights size mismatch");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw InvalidSpec("empirical measure: weights must be positive");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw InvalidSpec("empirical measure: weights must sum to 1");
}

double log_potential(const EmpiricalMeasure& mu, Complex z) {
    double s = 0.0;
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        const double n2 = std::norm(z - mu.points[i]);
        if (n2 == 0.0) throw AtomHit("log_potential: z coincides with an atom");
        s -= mu.weights[i] * std::log(n2);
    }
    return s;
}

double energy(const EmpiricalMeasure& mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < mu.points.size(); ++i)
        for (std::size_t j = i + 1; j < mu.points.size(); ++j) {
            const double n2 = std::norm(mu.points[i] - mu.points[j]);
            if (n2 == 0.0) throw CoincidentAtoms("energy: coincident atoms");
            s -= 2.0 * mu.weights[i] * mu.weights[j] * std::log(n2);
        }
    return s;
}

double weighted_energy(const EmpiricalMeasure& mu, const RadialPotential& Q) {
    double s = energy(mu);
    for (std::size_t i = 0; i < mu.points.size(); ++i) s += 2.0 * mu.weights[i] * Q.Q(mu.points[i]);
    return s;
}

} // namespace derivzeros
