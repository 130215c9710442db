#pragma once

#include <stdexcept>
#include <string>

namespace derivzeros {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation point coincides bit-exactly with a root. Callers that can
// tolerate it perturb z by 2^-40 * (1 + |z|) and retry once.
struct ExactRootHit : Error {
    using Error::Error;
};

struct OrderTooLarge : Error {
    using Error::Error;
};
struct DegreeTooLarge : Error {
    using Error::Error;
};
struct DerivativeZero : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct DegenerateInput : Error {
    using Error::Error;
};
struct InvalidSpec : Error {
    using Error::Error;
};
struct CoincidentPoints : Error {
    using Error::Error;
};
struct SizeTooLarge : Error {
    using Error::Error;
};
struct AtomHit : Error {
    using Error::Error;
};
struct CoincidentAtoms : Error {
    using Error::Error;
};
struct NoDroplet : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

} // namespace derivzeros
