#include "derivzeros/measures.hpp"

#include <algorithm>
#include <cmath>

namespace derivzeros {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kGoldenFrac = 0.6180339887498949;

double frac(double x) { return x - std::floor(x); }

double vdc_base2(std::uint64_t i) {
    // bit-reversed index in [0,1)
    std::uint64_t r = 0;
    for (int b = 0; b < 64; ++b) {
        r = (r << 1) | (i & 1);
        i >>= 1;
    }
    return static_cast<double>(r >> 11) * 0x1.0p-53;
}

} // namespace

MeasureSpec MeasureSpec::uniform_disk(double R) {
    MeasureSpec m;
    m.kind = Kind::UniformDisk;
    m.radius = R;
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::uniform_circle(double R) {
    MeasureSpec m;
    m.kind = Kind::UniformCircle;
    m.radius = R;
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::complex_gaussian(double sigma) {
    MeasureSpec m;
    m.kind = Kind::ComplexGaussian;
    m.sigma = sigma;
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::uniform_annulus(double r_in, double r_out) {
    MeasureSpec m;
    m.kind = Kind::UniformAnnulus;
    m.r_in = r_in;
    m.r_out = r_out;
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::atom_mixture(std::vector<AtomEntry> atoms, double continuous_weight,
                                      std::shared_ptr<MeasureSpec> continuous) {
    MeasureSpec m;
    m.kind = Kind::AtomMixture;
    m.atoms = std::move(atoms);
    m.continuous_weight = continuous_weight;
    m.continuous = std::move(continuous);
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::custom_grid(double x0, double y0, double dx, double dy, int nx, int ny,
                                     std::vector<double> density) {
    MeasureSpec m;
    m.kind = Kind::CustomGrid;
    m.x0 = x0;
    m.y0 = y0;
    m.dx = dx;
    m.dy = dy;
    m.nx = nx;
    m.ny = ny;
    m.grid_density = std::move(density);
    m.validate();
    return m;
}

void MeasureSpec::validate() {
    switch (kind) {
    case Kind::UniformDisk:
    case Kind::UniformCircle:
        if (!(radius > 0.0)) throw InvalidSpec("measure: radius must be positive");
        break;
    case Kind::ComplexGaussian:
        if (!(sigma > 0.0)) throw InvalidSpec("measure: sigma must be positive");
        break;
    case Kind::UniformAnnulus:
        if (!(r_in >= 0.0) || !(r_out > r_in))
            throw InvalidSpec("measure: annulus needs 0 <= r_in < r_out");
        break;
    case Kind::AtomMixture: {
        double w = continuous_weight;
        for (const AtomEntry& a : atoms) {
            if (!(a.weight > 0.0)) throw InvalidSpec("measure: atom weights must be positive");
            w += a.weight;
        }
        if (std::fabs(w - 1.0) > 1e-9) throw InvalidSpec("measure: weights must sum to 1");
        if (continuous_weight > 0.0 && !continuous)
            throw InvalidSpec("measure: continuous component weight without a component");
        if (continuous) continuous->validate();
        break;
    }
    case Kind::CustomGrid: {
        if (nx <= 0 || ny <= 0 || !(dx > 0.0) || !(dy > 0.0))
            throw InvalidSpec("measure: grid geometry invalid");
        if (grid_density.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny))
            throw InvalidSpec("measure: grid density size mismatch");
        double total = 0.0;
        for (double v : grid_density) {
            if (!(v >= 0.0)) throw InvalidSpec("measure: grid density must be nonnegative");
            total += v;
        }
        if (!(total > 0.0)) throw InvalidSpec("measure: grid density is identically zero");
        grid_cdf.resize(grid_density.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < grid_density.size(); ++i) {
            acc += grid_density[i] / total;
            grid_cdf[i] = acc;
        }
        grid_cdf.back() = 1.0;
        break;
    }
    }
}

bool MeasureSpec::bounded_density() const {
    switch (kind) {
    case Kind::UniformDisk:
    case Kind::ComplexGaussian:
    case Kind::UniformAnnulus:
    case Kind::CustomGrid:
        return true;
    case Kind::UniformCircle: // singular w.r.t. area measure
    case Kind::AtomMixture:
        return false;
    }
    return false;
}

double MeasureSpec::radial_inverse_cdf(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    switch (kind) {
    case Kind::UniformDisk:
        return radius * std::sqrt(u);
    case Kind::UniformCircle:
        return radius;
    case Kind::ComplexGaussian:
        // F(r) = 1 - exp(-r^2/sigma^2)
        return sigma * std::sqrt(-std::log1p(-std::min(u, 1.0 - 1e-16)));
    case Kind::UniformAnnulus:
        return std::sqrt(r_in * r_in + u * (r_out * r_out - r_in * r_in));
    default:
        throw InvalidSpec("measure: radial CDF requested for a non-radial measure");
    }
}

Complex MeasureSpec::sample(Rng& rng) const {
    switch (kind) {
    case Kind::UniformDisk:
    case Kind::UniformCircle:
    case Kind::UniformAnnulus: {
        const double r = radial_inverse_cdf(rng.uniform01());
        const double t = kTwoPi * rng.uniform01();
        return {r * std::cos(t), r * std::sin(t)};
    }
    case Kind::ComplexGaussian: {
        const Complex g = rng.gauss_pair();
        return g * (sigma / std::sqrt(2.0));
    }
    case Kind::AtomMixture: {
        double u = rng.uniform01();
        for (const AtomEntry& a : atoms) {
            if (u < a.weight) return a.point;
            u -= a.weight;
        }
        if (continuous) return continuous->sample(rng);
        return atoms.back().point; // numeric slack lands on the last atom
    }
    case Kind::CustomGrid: {
        const double u = rng.uniform01();
        const auto it = std::lower_bound(grid_cdf.begin(), grid_cdf.end(), u);
        const std::size_t cell = static_cast<std::size_t>(it - grid_cdf.begin());
        const int iy = static_cast<int>(cell) / nx;
        const int ix = static_cast<int>(cell) % nx;
        return {x0 + (ix + rng.uniform01()) * dx, y0 + (iy + rng.uniform01()) * dy};
    }
    }
    throw InvalidSpec("measure: unknown kind");
}

Complex MeasureSpec::stratified_point(std::uint64_t index) const {
    if (!radial())
        throw InvalidSpec("measure: stratified sequences need a radially symmetric measure");
    const double r = radial_inverse_cdf(vdc_base2(index + 1));
    const double t = kTwoPi * frac(kGoldenFrac * static_cast<double>(index + 1));
    return {r * std::cos(t), r * std::sin(t)};
}

void SequenceSpec::validate() const {
    if (generator == Generator::Explicit) {
        if (explicit_points.empty()) throw InvalidSpec("sequence: explicit list is empty");
    } else if (generator == Generator::Stratified) {
        if (!mu.radial()) throw InvalidSpec("sequence: stratified generator needs a radial measure");
    }
}

std::vector<Complex> SequenceSpec::generate(int n) const {
    validate();
    if (n < 0) throw InvalidSpec("sequence: negative length");
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n));
    switch (generator) {
    case Generator::Explicit:
        if (static_cast<std::size_t>(n) > explicit_points.size())
            throw InvalidSpec("sequence: explicit list shorter than requested prefix");
        out.assign(explicit_points.begin(), explicit_points.begin() + n);
        break;
    case Generator::FrozenIid: {
        Rng rng(derive_seed(seed, {0x5eedULL}));
        for (int i = 0; i < n; ++i) out.push_back(mu.sample(rng));
        break;
    }
    case Generator::Stratified:
        for (int i = 0; i < n; ++i) out.push_back(mu.stratified_point(static_cast<std::uint64_t>(i)));
        break;
    }
    return out;
}

double log_cesaro_stat(const RootSet& points) {
    if (points.roots.empty()) return 0.0;
    double s = 0.0;
    for (const Complex& w : points.roots) {
        const double a = std::abs(w);
        if (a > 1.0) s += std::log(a);
    }
    return s / static_cast<double>(points.roots.size());
}

double ber_separation_stat(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (d < 1.0) s += (d == 0.0) ? 744.44 /* -log(min double) */ : -std::log(d);
    }
    return s;
}

} // namespace derivzeros
