#pragma once

#include <memory>
#include <vector>

#include "derivzeros/errors.hpp"
#include "derivzeros/rng.hpp"
#include "derivzeros/root_set.hpp"

namespace derivzeros {

struct AtomEntry {
    Complex point;
    double weight = 0.0;
};

/// Base measure mu on C. The radial kinds expose an inverse radial CDF so
/// deterministic mu-distributed sequences can be built by stratification.
struct MeasureSpec {
    enum class Kind {
        UniformDisk,
        UniformCircle,
        ComplexGaussian, // density exp(-|z|^2/sigma^2) / (pi sigma^2)
        UniformAnnulus,
        AtomMixture, // atoms plus an optional continuous component
        CustomGrid,  // piecewise-constant density on a rectangular grid
    };

    Kind kind = Kind::UniformDisk;
    double radius = 1.0;
    double sigma = 1.0;
    double r_in = 0.0, r_out = 1.0;

    std::vector<AtomEntry> atoms;
    double continuous_weight = 0.0;
    std::shared_ptr<MeasureSpec> continuous;

    double x0 = -1.0, y0 = -1.0, dx = 0.0, dy = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> grid_density; // row-major, nonnegative
    std::vector<double> grid_cdf;     // built by validate()

    static MeasureSpec uniform_disk(double R);
    static MeasureSpec uniform_circle(double R);
    static MeasureSpec complex_gaussian(double sigma);
    static MeasureSpec uniform_annulus(double r_in, double r_out);
    static MeasureSpec atom_mixture(std::vector<AtomEntry> atoms, double continuous_weight = 0.0,
                                    std::shared_ptr<MeasureSpec> continuous = nullptr);
    static MeasureSpec custom_grid(double x0, double y0, double dx, double dy, int nx, int ny,
                                   std::vector<double> density);

    void validate();

    Complex sample(Rng& rng) const;

    bool radial() const {
        return kind == Kind::UniformDisk || kind == Kind::UniformCircle ||
               kind == Kind::ComplexGaussian || kind == Kind::UniformAnnulus;
    }
    bool symmetric_about_zero() const { return radial(); }
    bool has_atoms() const { return kind == Kind::AtomMixture && !atoms.empty(); }
    bool bounded_density() const;

    /// Radius r with mu(|z| <= r) = u, for the radial kinds.
    double radial_inverse_cdf(double u) const;

    /// Low-discrepancy point #index (radial kinds only): van der Corput radius
    /// paired with a golden-angle phase.
    Complex stratified_point(std::uint64_t index) const;
};

/// Deterministic mu-distributed sequence. Same spec and seed always yield the
/// identical sequence, and prefixes are stable: generate(n) is the first n
/// entries of generate(n') for n' > n.
struct SequenceSpec {
    enum class Generator { FrozenIid, Stratified, Explicit };

    Generator generator = Generator::FrozenIid;
    MeasureSpec mu;
    std::uint64_t seed = 0;
    std::vector<Complex> explicit_points;

    std::vector<Complex> generate(int n) const;
    void validate() const;
};

/// (1/n) sum log_+ |w_i|, the log-Cesaro statistic of a point set.
double log_cesaro_stat(const RootSet& points);

/// sum_i log_+ 1/|a_i - b_i|; the paired-sequence separation diagnostic
/// (compared against o(n^2) growth).
double ber_separation_stat(const std::vector<Complex>& a, const std::vector<Complex>& b);

} // namespace derivzeros
