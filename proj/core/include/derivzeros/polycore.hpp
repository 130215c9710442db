#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "derivzeros/errors.hpp"
#include "derivzeros/root_set.hpp"
#include "derivzeros/scaled_complex.hpp"

namespace derivzeros {

/// Table of elementary symmetric functions e_0..e_m of the reciprocals
/// 1/(z - w_i). e_k equals L_n^k(z) = (1/k!) P^(k)(z)/P(z); e_0 is exactly 1.
struct ElemSymTable {
    std::vector<ScaledComplex> e;
    int order = 0;
    Complex center{0.0, 0.0};
};

namespace detail {

/// Hot-loop accumulator for the DP recurrence e_j <- e_j + e_{j-1} * u_i.
/// Each column keeps a plain complex mantissa and an int64 base-2 exponent;
/// the mantissa is renormalized lazily when it drifts outside [2^-40, 2^40],
/// so the common path is one complex multiply-add plus a table lookup.
class ElemSymAccumulator {
  public:
    static constexpr int kMaxOrder = 64;

    /// Fills columns e_0..e_m. Throws ExactRootHit when z equals a root
    /// bit-exactly. O(n*m).
    void compute(Complex z, std::span<const Complex> roots, int m);

    ScaledComplex get(int j) const { return ScaledComplex(mant_[j], exp_[j]); }
    int order() const { return order_; }

  private:
    std::array<Complex, kMaxOrder + 2> mant_{};
    std::array<std::int64_t, kMaxOrder + 2> exp_{};
    int order_ = 0;

    static double pow2(int i); // exact powers of two, |i| <= 512

    void renorm(int j) {
        double a = std::max(std::fabs(mant_[j].real()), std::fabs(mant_[j].imag()));
        if (a == 0.0) {
            exp_[j] = 0;
            return;
        }
        int e = 0;
        std::frexp(a, &e);
        mant_[j] = {std::ldexp(mant_[j].real(), -e), std::ldexp(mant_[j].imag(), -e)};
        exp_[j] += e;
    }
};

} // namespace detail

/// Stable log|P(z)| = sum_i log|z - w_i| with compensated summation.
double log_abs_poly(Complex z, const RootSet& p);

/// e_0..e_m of {1/(z - w_i)} by the subtraction-free DP recurrence.
ElemSymTable elem_sym_reciprocals(Complex z, const RootSet& p, int m);

/// L_n^k(z) = (1/k!) P^(k)(z)/P(z), the k-th elementary symmetric function of
/// the reciprocals.
ScaledComplex lnk(Complex z, const RootSet& p, int k);

/// Newton correction for roots of P^(k):
/// P^(k)(z)/P^(k+1)(z) = e_k / ((k+1) e_{k+1}), computed in scaled arithmetic.
Complex newton_ratio(Complex z, const RootSet& p, int k);

/// Monic coefficients (ascending powers) by convolution. Oracle path only;
/// degree <= 64.
std::vector<Complex> expand_from_roots(const RootSet& p);

/// Term-by-term derivative of an ascending coefficient list.
std::vector<Complex> differentiate_coeffs(const std::vector<Complex>& coeffs);

/// Horner evaluation of an ascending coefficient list (oracle path).
Complex eval_coeffs(const std::vector<Complex>& coeffs, Complex z);

} // namespace derivzeros
