#include "derivzeros/ensembles.hpp"

#include <cmath>

namespace derivzeros {

namespace {

constexpr std::uint64_t kTagSample = 0x5a3cULL;

bool same_sequence_spec(const SequenceSpec& a, const SequenceSpec& b) {
    if (a.generator != b.generator) return false;
    if (a.generator == SequenceSpec::Generator::Explicit) return a.explicit_points == b.explicit_points;
    if (a.seed != b.seed) return false;
    const MeasureSpec &ma = a.mu, &mb = b.mu;
    return ma.kind == mb.kind && ma.radius == mb.radius && ma.sigma == mb.sigma &&
           ma.r_in == mb.r_in && ma.r_out == mb.r_out;
}

// Independently generated paired sequences are nudged apart to separation
// exp(-sqrt(i+1)). Explicit lists are left untouched (only diagnosed), and a
// deliberately degenerate pair (both sides the same spec) stays degenerate.
void enforce_pair_separation(const std::vector<Complex>& a, std::vector<Complex>& b,
                             const SequenceSpec& bspec) {
    if (bspec.generator == SequenceSpec::Generator::Explicit) return;
    Rng retry(derive_seed(bspec.seed, {0x9a1fULL}));
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double sep = std::exp(-std::sqrt(static_cast<double>(i + 1)));
        if (std::abs(a[i] - b[i]) >= sep) continue;
        bool fixed = false;
        if (bspec.generator == SequenceSpec::Generator::FrozenIid) {
            for (int t = 0; t < 64 && !fixed; ++t) {
                const Complex cand = bspec.mu.sample(retry);
                if (std::abs(a[i] - cand) >= sep) {
                    b[i] = cand;
                    fixed = true;
                }
            }
        }
        if (!fixed) {
            const double th = 6.283185307179586 * retry.uniform01();
            b[i] = a[i] + Complex(sep * std::cos(th), sep * std::sin(th));
        }
    }
}

struct Validator {
    void operator()(const IidZeros& m) const {
        if (m.n < 2) throw InvalidSpec("iid: n must be >= 2");
        MeasureSpec mu = m.mu;
        mu.validate();
    }
    void operator()(const PairedChoice& m) const {
        if (m.n < 2) throw InvalidSpec("paired: n must be >= 2");
        m.a.validate();
        m.b.validate();
    }
    void operator()(const Perturbed& m) const {
        if (m.n < 2) throw InvalidSpec("perturbed: n must be >= 2");
        m.z.validate();
        if (!(m.sigma_scale > 0.0) || !(m.sigma_exponent > 0.0))
            throw InvalidSpec("perturbed: sigma schedule must decrease to zero");
        if (!m.noise.symmetric_about_zero())
            throw InvalidSpec("perturbed: noise must be symmetric about zero");
    }
    void operator()(const RemoveOne& m) const {
        if (m.n < 2) throw InvalidSpec("remove_one: n must be >= 2");
        m.z.validate();
    }
    void operator()(const AugmentedDeterministic& m) const {
        if (m.n < 2) throw InvalidSpec("augmented: n must be >= 2");
        if (m.k_extra < 1) throw InvalidSpec("augmented: k_extra must be >= 1");
        m.z.validate();
        if (!m.extra.bounded_density())
            throw InvalidSpec("augmented: extra zeros need a bounded density");
    }
    void operator()(const CoulombGas& m) const {
        if (m.n < 2) throw InvalidSpec("coulomb: n must be >= 2");
        if (!(m.beta > 0.0)) throw InvalidSpec("coulomb: beta must be positive");
        m.potential.validate();
        m.mcmc.validate();
    }
    void operator()(const ExplicitRoots& m) const {
        if (m.n < 2) throw InvalidSpec("explicit_roots: n must be >= 2");
        if (m.kind == ExplicitRoots::Kind::PointList &&
            m.points.size() < static_cast<std::size_t>(m.n))
            throw InvalidSpec("explicit_roots: point list shorter than n");
    }
};

struct Sampler {
    std::uint64_t seed;

    RootSet operator()(const IidZeros& m) const {
        Rng rng(derive_seed(seed, {kTagSample, 1}));
        std::vector<Complex> z(static_cast<std::size_t>(m.n));
        for (Complex& w : z) w = m.mu.sample(rng);
        return RootSet(std::move(z));
    }

    RootSet operator()(const PairedChoice& m) const {
        const std::vector<Complex> a = m.a.generate(m.n);
        std::vector<Complex> b = m.b.generate(m.n);
        if (!same_sequence_spec(m.a, m.b)) enforce_pair_separation(a, b, m.b);
        Rng rng(derive_seed(seed, {kTagSample, 2}));
        std::vector<Complex> z(static_cast<std::size_t>(m.n));
        for (int i = 0; i < m.n; ++i)
            z[static_cast<std::size_t>(i)] =
                (rng.next_u64() & 1ULL) ? a[static_cast<std::size_t>(i)] : b[static_cast<std::size_t>(i)];
        return RootSet(std::move(z));
    }

    RootSet operator()(const Perturbed& m) const {
        std::vector<Complex> z = m.z.generate(m.n);
        Rng rng(derive_seed(seed, {kTagSample, 3}));
        for (int i = 0; i < m.n; ++i) {
            const double sigma_i =
                m.sigma_scale * std::pow(static_cast<double>(i + 1), -m.sigma_exponent);
            z[static_cast<std::size_t>(i)] += sigma_i * m.noise.sample(rng);
        }
        return RootSet(std::move(z));
    }

    RootSet operator()(const RemoveOne& m) const {
        std::vector<Complex> z = m.z.generate(m.n + 1); // z_0 .. z_n
        Rng rng(derive_seed(seed, {kTagSample, 4}));
        const std::size_t s = rng.uniform_int(static_cast<std::uint64_t>(m.n + 1));
        z.erase(z.begin() + static_cast<std::ptrdiff_t>(s));
        return RootSet(std::move(z));
    }

    RootSet operator()(const AugmentedDeterministic& m) const {
        std::vector<Complex> z = m.z.generate(m.n);
        Rng rng(derive_seed(seed, {kTagSample, 5}));
        for (int j = 0; j < m.k_extra; ++j) z.push_back(m.extra.sample(rng));
        return RootSet(std::move(z));
    }

    RootSet operator()(const CoulombGas& m) const {
        return run_coulomb_chain(m.potential, m.beta, m.n, m.mcmc, derive_seed(seed, {kTagSample, 6}))
            .points;
    }

    RootSet operator()(const ExplicitRoots& m) const {
        if (m.kind == ExplicitRoots::Kind::PointList)
            return RootSet(std::vector<Complex>(m.points.begin(), m.points.begin() + m.n));
        std::vector<Complex> z(static_cast<std::size_t>(m.n));
        for (int j = 0; j < m.n; ++j) {
            const double t = 6.283185307179586 * static_cast<double>(j) / m.n;
            z[static_cast<std::size_t>(j)] = Complex(std::cos(t), std::sin(t));
        }
        return RootSet(std::move(z));
    }
};

} // namespace

void validate(const EnsembleSpec& spec) { std::visit(Validator{}, spec); }

int output_degree(const EnsembleSpec& spec) {
    return std::visit(
        [](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AugmentedDeterministic>)
                return m.n + m.k_extra;
            else
                return m.n;
        },
        spec);
}

EnsembleSpec with_degree(EnsembleSpec spec, int n) {
    std::visit([n](auto& m) { m.n = n; }, spec);
    return spec;
}

std::string model_name(const EnsembleSpec& spec) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, IidZeros>) return "iid";
            if constexpr (std::is_same_v<T, PairedChoice>) return "paired";
            if constexpr (std::is_same_v<T, Perturbed>) return "perturbed";
            if constexpr (std::is_same_v<T, RemoveOne>) return "remove_one";
            if constexpr (std::is_same_v<T, AugmentedDeterministic>) return "augmented";
            if constexpr (std::is_same_v<T, CoulombGas>) return "coulomb";
            if constexpr (std::is_same_v<T, ExplicitRoots>) return "explicit";
            return "unknown";
        },
        spec);
}

RootSet sample(const EnsembleSpec& spec, std::uint64_t seed) {
    validate(spec);
    return std::visit(Sampler{seed}, spec);
}

} // namespace derivzeros
