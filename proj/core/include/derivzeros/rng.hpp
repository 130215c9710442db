#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace derivzeros {

/// splitmix64 finalizer; used to derive independent substream seeds from
/// (master_seed, tag...) tuples so parallel trials never share state.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t t : tags) s = mix64(s ^ (t + 0x9e3779b97f4a7c15ULL));
    return s;
}

/// Deterministic RNG stream. The engine is the standard-specified mt19937_64;
/// uniform and Gaussian variates are derived here from raw 64-bit draws rather
/// than through std distributions, whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Unbiased integer in [0, n) by rejection.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t lim = std::uint64_t(-1) - std::uint64_t(-1) % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= lim);
        return x % n;
    }

    /// Standard normal via Box-Muller (no caching: two draws per variate keeps
    /// the stream position a pure function of call count).
    double gauss() {
        double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; // (0,1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// Two independent standard normals packed as a complex number.
    std::complex<double> gauss_pair() {
        double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(6.283185307179586 * u2), r * std::sin(6.283185307179586 * u2)};
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace derivzeros
