#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace derivzeros {

/// Complex value stored as mantissa * 2^exponent with |mantissa| in [1,2),
/// or exactly zero. Plain doubles overflow around |value| ~ 1e308, which a
/// product of 1e5 factors of size ~e blows through instantly; this keeps the
/// dynamic range in a separate integer exponent and renormalizes after every
/// operation. Tolerances downstream are stated on log-magnitudes, where the
/// representation is exact up to one ulp of the mantissa term.
class ScaledComplex {
  public:
    constexpr ScaledComplex() noexcept = default;

    explicit ScaledComplex(std::complex<double> v) : mant_(v) { normalize(); }
    ScaledComplex(std::complex<double> mant, std::int64_t exp2) : mant_(mant), exp_(exp2) {
        normalize();
    }

    static ScaledComplex one() { return ScaledComplex(std::complex<double>(1.0, 0.0)); }
    static ScaledComplex zero() { return ScaledComplex(); }

    std::complex<double> mantissa() const { return mant_; }
    std::int64_t exponent2() const { return exp_; }
    bool is_zero() const { return mant_.real() == 0.0 && mant_.imag() == 0.0; }

    /// Natural log of |value|; -inf for zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(mant_)) + static_cast<double>(exp_) * kLn2;
    }

    /// Collapse to a plain complex. Overflows to +-inf / underflows to 0 when
    /// the exponent leaves the double range; callers that care check first.
    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        int e = static_cast<int>(std::clamp<std::int64_t>(exp_, -4400, 4400));
        return {std::ldexp(mant_.real(), e), std::ldexp(mant_.imag(), e)};
    }

    ScaledComplex operator*(const ScaledComplex& o) const {
        if (is_zero() || o.is_zero()) return zero();
        return ScaledComplex(mant_ * o.mant_, exp_ + o.exp_);
    }

    ScaledComplex operator/(const ScaledComplex& o) const {
        return ScaledComplex(mant_ / o.mant_, exp_ - o.exp_);
    }

    ScaledComplex operator+(const ScaledComplex& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        std::int64_t d = o.exp_ - exp_;
        // Beyond ~64 bits the smaller addend is below one ulp of the larger.
        if (d > 64) return o;
        if (d < -64) return *this;
        if (d >= 0) {
            std::complex<double> m(std::ldexp(mant_.real(), static_cast<int>(-d)),
                                   std::ldexp(mant_.imag(), static_cast<int>(-d)));
            return ScaledComplex(m + o.mant_, o.exp_);
        }
        std::complex<double> m(std::ldexp(o.mant_.real(), static_cast<int>(d)),
                               std::ldexp(o.mant_.imag(), static_cast<int>(d)));
        return ScaledComplex(mant_ + m, exp_);
    }

    ScaledComplex operator-() const {
        ScaledComplex r = *this;
        r.mant_ = -r.mant_;
        return r;
    }

    ScaledComplex operator-(const ScaledComplex& o) const { return *this + (-o); }

    ScaledComplex reciprocal() const { return one() / *this; }

    ScaledComplex conj() const {
        ScaledComplex r = *this;
        r.mant_ = std::conj(r.mant_);
        return r;
    }

    ScaledComplex scale_pow2(std::int64_t j) const {
        if (is_zero()) return zero();
        ScaledComplex r = *this;
        r.exp_ += j;
        return r;
    }

    static constexpr double kLn2 = 0.6931471805599453;

  private:
    std::complex<double> mant_{0.0, 0.0};
    std::int64_t exp_ = 0;

    void normalize() {
        double a = std::abs(mant_);
        if (a == 0.0) {
            mant_ = {0.0, 0.0};
            exp_ = 0;
            return;
        }
        int e = 0;
        std::frexp(a, &e); // a in [0.5,1) * 2^e  =>  shift by e-1 puts |m| in [1,2)
        if (e != 1) {
            int s = 1 - e;
            mant_ = {std::ldexp(mant_.real(), s), std::ldexp(mant_.imag(), s)};
            exp_ += e - 1;
        }
    }
};

} // namespace derivzeros
