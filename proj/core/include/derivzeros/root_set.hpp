#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "derivzeros/errors.hpp"

namespace derivzeros {

using Complex = std::complex<double>;

/// A polynomial represented by the multiset of its roots (monic by
/// convention). The only representation that scales: coefficients of a
/// degree-10^4 polynomial are unrepresentable in machine floats. Root order
/// carries no meaning.
struct RootSet {
    std::vector<Complex> roots;

    RootSet() = default;
    explicit RootSet(std::vector<Complex> r) : roots(std::move(r)) { validate(); }

    int degree() const { return static_cast<int>(roots.size()); }

    void validate() const {
        if (roots.empty()) throw InvalidSpec("RootSet: degree must be >= 1");
        for (const Complex& w : roots) {
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                throw InvalidSpec("RootSet: roots must be finite");
        }
    }
};

} // namespace derivzeros
