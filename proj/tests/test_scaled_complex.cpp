#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "derivzeros/scaled_complex.hpp"

using derivzeros::ScaledComplex;
using Complex = std::complex<double>;

namespace {

bool normalized(const ScaledComplex& s) {
    if (s.is_zero()) return s.exponent2() == 0;
    const double a = std::abs(s.mantissa());
    return a >= 1.0 && a < 2.0;
}

} // namespace

TEST_CASE("construction normalizes the mantissa") {
    for (double v : {1.0, 0.5, 3.75, 1e300, 1e-300, 7.25e-12}) {
        ScaledComplex s(Complex(v, -2.0 * v));
        CHECK(normalized(s));
        const Complex back = s.to_complex();
        CHECK(back.real() == doctest::Approx(v).epsilon(1e-15));
        CHECK(back.imag() == doctest::Approx(-2.0 * v).epsilon(1e-15));
    }
    CHECK(ScaledComplex(Complex(0.0, 0.0)).is_zero());
    CHECK(ScaledComplex::zero().exponent2() == 0);
}

TEST_CASE("log_abs tracks magnitudes far beyond double range") {
    ScaledComplex s = ScaledComplex::one();
    const ScaledComplex f(Complex(2.718281828459045, 0.0));
    for (int i = 0; i < 100000; ++i) s = s * f;
    CHECK(s.log_abs() == doctest::Approx(100000.0).epsilon(1e-12));
    ScaledComplex inv = s.reciprocal();
    CHECK(inv.log_abs() == doctest::Approx(-100000.0).epsilon(1e-12));
}

TEST_CASE("arithmetic matches plain complex in the comfortable range") {
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int it = 0; it < 2000; ++it) {
        const Complex a(u(eng), u(eng)), b(u(eng), u(eng));
        if (std::abs(b) < 1e-6) continue;
        const ScaledComplex sa(a), sb(b);
        CHECK(std::abs((sa * sb).to_complex() - a * b) <= 1e-14 * std::abs(a * b) + 1e-300);
        CHECK(std::abs((sa + sb).to_complex() - (a + b)) <= 1e-13 * (std::abs(a) + std::abs(b)));
        CHECK(std::abs((sa / sb).to_complex() - a / b) <= 1e-13 * std::abs(a / b));
        CHECK(normalized(sa * sb));
        CHECK(normalized(sa + sb));
    }
}

TEST_CASE("adding across a huge exponent gap keeps the dominant term") {
    const ScaledComplex big(Complex(1.0, 0.0), 4000);
    const ScaledComplex tiny(Complex(1.0, 0.0), -4000);
    CHECK((big + tiny).log_abs() == doctest::Approx(big.log_abs()));
    CHECK((tiny + big).log_abs() == doctest::Approx(big.log_abs()));
}

TEST_CASE("conjugation and negation") {
    const ScaledComplex s(Complex(3.0, -4.0), 10);
    CHECK(s.conj().to_complex() == std::conj(s.to_complex()));
    CHECK((-s).to_complex() == -s.to_complex());
    CHECK((s - s).is_zero());
}

TEST_CASE("scale_pow2 shifts the exponent exactly") {
    const ScaledComplex s(Complex(1.5, 0.5));
    const ScaledComplex t = s.scale_pow2(-7);
    CHECK(t.log_abs() == doctest::Approx(s.log_abs() - 7.0 * ScaledComplex::kLn2));
}
