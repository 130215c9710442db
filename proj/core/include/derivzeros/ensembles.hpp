#pragma once

#include <string>
#include <variant>

#include "derivzeros/coulomb.hpp"
#include "derivzeros/measures.hpp"
#include "derivzeros/potential_field.hpp"
#include "derivzeros/root_set.hpp"

namespace derivzeros {

/// Zeros are i.i.d. draws from mu.
struct IidZeros {
    MeasureSpec mu;
    int n = 0;
};

/// Each zero picks a_i or b_i with equal probability, from two deterministic
/// mu-distributed sequences. Auto-generated pairs are kept at separation
/// >= exp(-sqrt(i)); explicit lists are only diagnosed.
struct PairedChoice {
    SequenceSpec a;
    SequenceSpec b;
    int n = 0;
};

/// z_i + sigma_i X_i with sigma_i = scale * (i+1)^-exponent decreasing to 0
/// and X_i i.i.d. from a symmetric noise measure.
struct Perturbed {
    SequenceSpec z;
    MeasureSpec noise;
    double sigma_scale = 1.0;
    double sigma_exponent = 0.5;
    int n = 0;
};

/// First n+1 entries z_0..z_n of a deterministic sequence with one entry
/// removed uniformly at random; degree n.
struct RemoveOne {
    SequenceSpec z;
    int n = 0;
};

/// Deterministic prefix of length n augmented by k_extra independent draws
/// from a bounded density; degree n + k_extra.
struct AugmentedDeterministic {
    SequenceSpec z;
    int n = 0;
    int k_extra = 1;
    MeasureSpec extra;
};

/// Zeros given by the 2D Coulomb gas at inverse temperature beta in the
/// external potential Q.
struct CoulombGas {
    RadialPotential potential;
    double beta = 1.0;
    int n = 0;
    McmcConfig mcmc;
};

/// Deterministic root sets for controls: the roots of z^n - 1 (whose
/// critical points all sit at the origin) or the first n points of an
/// explicit list.
struct ExplicitRoots {
    enum class Kind { RootsOfUnity, PointList };
    Kind kind = Kind::RootsOfUnity;
    std::vector<Complex> points;
    int n = 0;
};

using EnsembleSpec = std::variant<IidZeros, PairedChoice, Perturbed, RemoveOne,
                                  AugmentedDeterministic, CoulombGas, ExplicitRoots>;

void validate(const EnsembleSpec& spec);

/// Degree of the produced RootSet (n for all models except Augmented, which
/// yields n + k_extra).
int output_degree(const EnsembleSpec& spec);

/// Copy of the spec with the base size replaced (used by n_grid sweeps).
EnsembleSpec with_degree(EnsembleSpec spec, int n);

std::string model_name(const EnsembleSpec& spec);

/// Deterministic in (spec, seed): same inputs give a bit-identical RootSet.
RootSet sample(const EnsembleSpec& spec, std::uint64_t seed);

} // namespace derivzeros
