#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "derivzeros/polycore.hpp"
#include "derivzeros/rootfind.hpp"

using namespace derivzeros;
using Cx = std::complex<double>;

namespace {

RootSet random_roots(std::mt19937_64& eng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<Cx> r(static_cast<std::size_t>(n));
    for (Cx& w : r) w = Cx(u(eng), u(eng));
    return RootSet(std::move(r));
}

double hausdorff(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    auto one_sided = [](const std::vector<Cx>& x, const std::vector<Cx>& y) {
        double worst = 0.0;
        for (const Cx& p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (const Cx& q : y) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

std::vector<Cx> roots_of_unity(int n) {
    std::vector<Cx> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double t = 6.283185307179586 * j / n;
        z[static_cast<std::size_t>(j)] = Cx(std::cos(t), std::sin(t));
    }
    return z;
}

} // namespace

TEST_CASE("quadratic derivative: roots {0,1,2}, k=1") {
    const RootResult rr = kth_derivative_roots(RootSet({Cx(0, 0), Cx(1, 0), Cx(2, 0)}), 1);
    REQUIRE(rr.roots.degree() == 2);
    CHECK(rr.unconverged_count() == 0);
    std::vector<Cx> got = rr.roots.roots;
    std::sort(got.begin(), got.end(), [](Cx a, Cx b) { return a.real() < b.real(); });
    const double s = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(got[0] - Cx(1.0 - s, 0)) <= 1e-10);
    CHECK(std::abs(got[1] - Cx(1.0 + s, 0)) <= 1e-10);
}

TEST_CASE("monomial derivative: 4th roots of unity, k=1 -> triple zero at 0") {
    const RootResult rr = kth_derivative_roots(RootSet(roots_of_unity(4)), 1);
    REQUIRE(rr.roots.degree() == 3);
    CHECK(rr.unconverged_count() == 0);
    for (const Cx& z : rr.roots.roots) CHECK(std::abs(z) <= 1e-8);
    CHECK(rr.multiplicity[0] == 3);
}

TEST_CASE("negative-control scale: z^n - 1 collapses for large n") {
    for (int n : {64, 256}) {
        const RootResult rr = kth_derivative_roots(RootSet(roots_of_unity(n)), 1);
        REQUIRE(rr.roots.degree() == n - 1);
        CHECK(rr.unconverged_count() == 0);
        for (const Cx& z : rr.roots.roots) CHECK(std::abs(z) <= 1e-6);
    }
}

TEST_CASE("roots {i,-i}, k=1 -> single zero at 0") {
    const RootResult rr = kth_derivative_roots(RootSet({Cx(0, 1), Cx(0, -1)}), 1);
    REQUIRE(rr.roots.degree() == 1);
    CHECK(std::abs(rr.roots.roots[0]) <= 1e-10);
}

TEST_CASE("degenerate input") {
    CHECK_THROWS_AS(kth_derivative_roots(RootSet({Cx(0, 0), Cx(1, 0)}), 2), DegenerateInput);
}

TEST_CASE("degree conservation and residual stationarity on random instances") {
    std::mt19937_64 eng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 8 + static_cast<int>(eng() % 25);
        const int k = 1 + static_cast<int>(eng() % 3);
        if (k >= n) continue;
        const RootSet p = random_roots(eng, n);
        const RootResult rr = kth_derivative_roots(p, k);
        CHECK(rr.roots.degree() == n - k);
        CHECK(rr.unconverged_count() == 0);
        // stationarity restated through polycore ratios, simple roots only
        for (std::size_t i = 0; i < rr.roots.roots.size(); ++i) {
            if (rr.multiplicity[i] != 1) continue;
            const Cx xi = rr.roots.roots[i];
            const Cx ratio = newton_ratio(xi, p, k);
            CHECK(std::abs(ratio) <= 1e-9 * (1.0 + std::abs(xi)));
        }
    }
}

TEST_CASE("oracle agreement: degree <= 20, k <= 3, Hausdorff <= 1e-7") {
    std::mt19937_64 eng(9);
    int instances = 0;
    while (instances < 25) {
        const int n = 5 + static_cast<int>(eng() % 16);
        const int k = 1 + static_cast<int>(eng() % 3);
        if (k >= n) continue;
        const RootSet p = random_roots(eng, n);
        std::vector<Cx> coeffs = expand_from_roots(p);
        for (int j = 0; j < k; ++j) coeffs = differentiate_coeffs(coeffs);
        const RootSet oracle = coeff_roots_oracle(coeffs);
        const RootResult mine = kth_derivative_roots(p, k);
        CHECK(mine.unconverged_count() == 0);
        CHECK(hausdorff(mine.roots.roots, oracle.roots) <= 1e-7);
        ++instances;
    }
}

TEST_CASE("coeff oracle basics") {
    SUBCASE("z^2 - 1") {
        const RootSet r = coeff_roots_oracle({Cx(-1, 0), Cx(0, 0), Cx(1, 0)});
        std::vector<Cx> got = r.roots;
        std::sort(got.begin(), got.end(), [](Cx a, Cx b) { return a.real() < b.real(); });
        CHECK(std::abs(got[0] - Cx(-1, 0)) <= 1e-12);
        CHECK(std::abs(got[1] - Cx(1, 0)) <= 1e-12);
    }
    SUBCASE("3z^2 - 6z + 2") {
        const RootSet r = coeff_roots_oracle({Cx(2, 0), Cx(-6, 0), Cx(3, 0)});
        std::vector<Cx> got = r.roots;
        std::sort(got.begin(), got.end(), [](Cx a, Cx b) { return a.real() < b.real(); });
        const double s = 1.0 / std::sqrt(3.0);
        CHECK(std::abs(got[0] - Cx(1 - s, 0)) <= 1e-10);
        CHECK(std::abs(got[1] - Cx(1 + s, 0)) <= 1e-10);
    }
    SUBCASE("Wilkinson-5: roots 1..5 from expanded coefficients") {
        const RootSet p({Cx(1, 0), Cx(2, 0), Cx(3, 0), Cx(4, 0), Cx(5, 0)});
        const RootSet r = coeff_roots_oracle(expand_from_roots(p));
        CHECK(hausdorff(r.roots, p.roots) <= 1e-8);
    }
    SUBCASE("degree bound") {
        CHECK_THROWS_AS(coeff_roots_oracle(std::vector<Cx>(66, Cx(1, 0))), DegreeTooLarge);
    }
}

TEST_CASE("gauss-lucas verification") {
    SUBCASE("collinear parents, real children inside") {
        const HullCheck hc = verify_gauss_lucas(
            RootSet({Cx(0, 0), Cx(1, 0), Cx(2, 0)}),
            RootSet({Cx(1.0 - 1.0 / std::sqrt(3.0), 0), Cx(1.0 + 1.0 / std::sqrt(3.0), 0)}), 1e-9);
        CHECK(hc.ok);
        CHECK(hc.max_violation <= 1e-12);
    }
    SUBCASE("square hull contains the origin") {
        const HullCheck hc = verify_gauss_lucas(RootSet(roots_of_unity(4)),
                                                RootSet({Cx(0, 0), Cx(0, 0), Cx(0, 0)}), 1e-9);
        CHECK(hc.ok);
    }
    SUBCASE("synthetic negative") {
        const HullCheck hc =
            verify_gauss_lucas(RootSet({Cx(0, 0), Cx(1, 0)}), RootSet({Cx(0.5, 0.1)}), 1e-9);
        CHECK(!hc.ok);
        CHECK(hc.max_violation == doctest::Approx(0.1).epsilon(1e-9));
    }
    SUBCASE("holds along P -> P' -> P'' for random instances") {
        std::mt19937_64 eng(21);
        for (int rep = 0; rep < 10; ++rep) {
            const RootSet p = random_roots(eng, 24);
            double diam = 0.0;
            for (const Cx& a : p.roots)
                for (const Cx& b : p.roots) diam = std::max(diam, std::abs(a - b));
            const RootResult d1 = kth_derivative_roots(p, 1);
            const RootResult d2 = kth_derivative_roots(p, 2);
            CHECK(verify_gauss_lucas(p, d1.roots, 1e-7 * diam).ok);
            CHECK(verify_gauss_lucas(d1.roots, d2.roots, 1e-7 * diam).ok);
        }
    }
}

TEST_CASE("real roots strictly interlace") {
    std::mt19937_64 eng(33);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> xs(12);
        for (double& x : xs) x = u(eng);
        std::sort(xs.begin(), xs.end());
        bool distinct = true;
        for (std::size_t i = 1; i < xs.size(); ++i) distinct &= xs[i] - xs[i - 1] > 1e-3;
        if (!distinct) continue;
        std::vector<Cx> roots(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) roots[i] = Cx(xs[i], 0);
        const RootResult rr = kth_derivative_roots(RootSet(roots), 1);
        std::vector<double> crit;
        for (const Cx& z : rr.roots.roots) {
            CHECK(std::fabs(z.imag()) <= 1e-9);
            crit.push_back(z.real());
        }
        std::sort(crit.begin(), crit.end());
        REQUIRE(crit.size() == xs.size() - 1);
        for (std::size_t i = 0; i < crit.size(); ++i) {
            CHECK(crit[i] >= xs[i] - 1e-9);
            CHECK(crit[i] <= xs[i + 1] + 1e-9);
        }
    }
}

TEST_CASE("initial guesses") {
    SUBCASE("drops the k roots closest to the centroid") {
        const RootSet p({Cx(0, 0), Cx(10, 0), Cx(0.1, 0), Cx(-10, 0)});
        // centroid ~ 0.025: closest roots are 0 and 0.1
        const std::vector<Cx> g = initial_guesses(p, 2, 1e-8);
        REQUIRE(g.size() == 2);
        CHECK(std::abs(g[0] - Cx(10, 0)) <= 1e-6);
        CHECK(std::abs(g[1] - Cx(-10, 0)) <= 1e-6);
    }
    SUBCASE("k = degree - 1 leaves one point") {
        std::mt19937_64 eng(41);
        const RootSet p = random_roots(eng, 6);
        CHECK(initial_guesses(p, 5, 1e-8).size() == 1);
    }
    SUBCASE("roots of unity keep the circle") {
        const std::vector<Cx> g = initial_guesses(RootSet(roots_of_unity(8)), 1, 1e-8);
        REQUIRE(g.size() == 7);
        for (const Cx& z : g) CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("repeated parent roots: atomic measure derivative") {
    // P = (z-a)^10: P^(2) has an 8-fold zero at a
    const RootSet p(std::vector<Cx>(10, Cx(0.5, -0.25)));
    const RootResult rr = kth_derivative_roots(p, 2);
    REQUIRE(rr.roots.degree() == 8);
    CHECK(rr.unconverged_count() == 0);
    for (const Cx& z : rr.roots.roots) CHECK(std::abs(z - Cx(0.5, -0.25)) <= 1e-7);
}
