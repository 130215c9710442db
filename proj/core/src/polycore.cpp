#include "derivzeros/polycore.hpp"

#include <algorithm>

namespace derivzeros {

namespace detail {

double ElemSymAccumulator::pow2(int i) {
    static const std::array<double, 1025> tab = [] {
        std::array<double, 1025> t{};
        for (int k = -512; k <= 512; ++k) t[static_cast<std::size_t>(k + 512)] = std::ldexp(1.0, k);
        return t;
    }();
    return tab[static_cast<std::size_t>(i + 512)];
}

void ElemSymAccumulator::compute(Complex z, std::span<const Complex> roots, int m) {
    const int n = static_cast<int>(roots.size());
    if (m < 0 || m > n) throw OrderTooLarge("elem_sym: order exceeds degree");
    if (m > kMaxOrder) throw OrderTooLarge("elem_sym: order exceeds supported maximum");
    order_ = m;
    mant_[0] = {1.0, 0.0};
    exp_[0] = 0;
    for (int j = 1; j <= m; ++j) {
        mant_[j] = {0.0, 0.0};
        exp_[j] = 0;
    }

    for (int i = 0; i < n; ++i) {
        const Complex d = z - roots[i];
        const double dre = d.real(), dim = d.imag();
        if (dre == 0.0 && dim == 0.0) throw ExactRootHit("elem_sym: z coincides with a root");

        // u = 1/(z - w_i) as mantissa * 2^ue. The fast path covers all sane
        // distances; the scaled path only fires within ~1e-100 of a root.
        Complex um;
        std::int64_t ue = 0;
        const double amax = std::max(std::fabs(dre), std::fabs(dim));
        if (amax > 1e-100 && amax < 1e100) {
            const double n2 = dre * dre + dim * dim;
            um = {dre / n2, -dim / n2};
        } else {
            int de = 0;
            std::frexp(amax, &de);
            const Complex dm(std::ldexp(dre, -de), std::ldexp(dim, -de));
            const double n2 = dm.real() * dm.real() + dm.imag() * dm.imag();
            um = {dm.real() / n2, -dm.imag() / n2};
            ue = -de;
        }

        const int jmax = std::min(m, i + 1);
        for (int j = jmax; j >= 1; --j) {
            const Complex pm = mant_[j - 1] * um;
            const std::int64_t pe = exp_[j - 1] + ue;
            Complex& ej = mant_[j];
            if (ej.real() == 0.0 && ej.imag() == 0.0) {
                ej = pm;
                exp_[j] = pe;
            } else {
                const std::int64_t dd = pe - exp_[j];
                if (dd >= -512 && dd <= 512) {
                    ej += pm * pow2(static_cast<int>(dd));
                } else if (dd > 512) {
                    // old column content is below one ulp of the addend
                    ej = pm;
                    exp_[j] = pe;
                } // dd < -512: addend negligible
            }
            const double a = std::max(std::fabs(ej.real()), std::fabs(ej.imag()));
            if (a > 0x1.0p40 || (a < 0x1.0p-40 && a > 0.0)) renorm(j);
        }
    }
    for (int j = 1; j <= m; ++j) renorm(j);
}

} // namespace detail

double log_abs_poly(Complex z, const RootSet& p) {
    double sum = 0.0, comp = 0.0; // Kahan
    for (const Complex& w : p.roots) {
        const Complex d = z - w;
        if (d.real() == 0.0 && d.imag() == 0.0)
            throw ExactRootHit("log_abs_poly: z coincides with a root");
        const double term = std::log(std::abs(d));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

ElemSymTable elem_sym_reciprocals(Complex z, const RootSet& p, int m) {
    detail::ElemSymAccumulator acc;
    acc.compute(z, p.roots, m);
    ElemSymTable t;
    t.order = m;
    t.center = z;
    t.e.reserve(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) t.e.push_back(acc.get(j));
    return t;
}

ScaledComplex lnk(Complex z, const RootSet& p, int k) {
    if (k < 1 || k > p.degree()) throw OrderTooLarge("lnk: need 1 <= k <= degree");
    detail::ElemSymAccumulator acc;
    acc.compute(z, p.roots, k);
    return acc.get(k);
}

Complex newton_ratio(Complex z, const RootSet& p, int k) {
    if (k + 1 > p.degree()) throw OrderTooLarge("newton_ratio: need k+1 <= degree");
    detail::ElemSymAccumulator acc;
    ScaledComplex ek, ek1;
    try {
        acc.compute(z, p.roots, k + 1);
        ek = acc.get(k);
        ek1 = acc.get(k + 1);
    } catch (const ExactRootHit&) {
        // z sits on a parent root of multiplicity m. Factoring (z-w)^m out,
        // P^(k)/P^(k+1) at z equals e_{k-m} / ((k+1) e_{k+1-m}) over the
        // remaining roots, and 0 when k < m (z is itself a root of P^(k)).
        std::vector<Complex> others;
        others.reserve(p.roots.size());
        int m = 0;
        for (const Complex& w : p.roots) {
            if (w == z)
                ++m;
            else
                others.push_back(w);
        }
        if (k < m) return Complex(0.0, 0.0);
        acc.compute(z, others, k + 1 - m);
        ek = acc.get(k - m);
        ek1 = acc.get(k + 1 - m);
    }
    if (ek1.is_zero()) throw DerivativeZero("newton_ratio: e_{k+1} vanished");
    const ScaledComplex ratio =
        ek / (ek1 * ScaledComplex(Complex(static_cast<double>(k + 1), 0.0)));
    return ratio.to_complex();
}

std::vector<Complex> expand_from_roots(const RootSet& p) {
    if (p.degree() > 64) throw DegreeTooLarge("expand_from_roots: degree > 64");
    std::vector<Complex> c{Complex(1.0, 0.0)}; // ascending powers
    for (const Complex& w : p.roots) {
        c.push_back(Complex(0.0, 0.0));
        for (std::size_t j = c.size() - 1; j >= 1; --j) c[j] = c[j - 1] - w * c[j];
        c[0] = -w * c[0];
    }
    return c;
}

std::vector<Complex> differentiate_coeffs(const std::vector<Complex>& coeffs) {
    if (coeffs.empty()) throw DegenerateInput("differentiate_coeffs: empty coefficient list");
    if (coeffs.size() == 1) return {Complex(0.0, 0.0)};
    std::vector<Complex> d(coeffs.size() - 1);
    for (std::size_t j = 0; j + 1 < coeffs.size(); ++j)
        d[j] = static_cast<double>(j + 1) * coeffs[j + 1];
    return d;
}

Complex eval_coeffs(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * z + coeffs[j];
    return acc;
}

} // namespace derivzeros
