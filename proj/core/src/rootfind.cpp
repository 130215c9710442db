#include "derivzeros/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "derivzeros/polycore.hpp"

namespace derivzeros {

namespace {

constexpr double kGoldenFrac = 0.6180339887498949;

double frac(double x) { return x - std::floor(x); }

// Newton ratio P^(k)/P^(k+1) at z via the fast accumulator path; exact root
// hits fall through to the factored form in polycore, and a vanishing
// e_{k+1} gets one perturb-and-retry. Returns false when degenerate.
bool newton_ratio_guarded(detail::ElemSymAccumulator& acc, Complex& z, const RootSet& p, int k,
                          double retry_perturb, Complex& out) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        try {
            acc.compute(z, p.roots, k + 1);
            const ScaledComplex ek = acc.get(k);
            const ScaledComplex ek1 = acc.get(k + 1);
            if (ek1.is_zero()) throw DerivativeZero("e_{k+1} vanished");
            out = (ek / (ek1 * ScaledComplex(Complex(static_cast<double>(k + 1), 0.0))))
                      .to_complex();
        } catch (const ExactRootHit&) {
            try {
                out = newton_ratio(z, p, k);
            } catch (const DerivativeZero&) {
                z += Complex(retry_perturb * (1.0 + std::abs(z)), 0.0);
                continue;
            }
        } catch (const DerivativeZero&) {
            z += Complex(retry_perturb * (1.0 + std::abs(z)), 0.0);
            continue;
        }
        if (std::isfinite(out.real()) && std::isfinite(out.imag())) return true;
        z += Complex(retry_perturb * (1.0 + std::abs(z)), 0.0);
    }
    return false;
}

struct Cross {
    static double of(const Complex& o, const Complex& a, const Complex& b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) -
               (a.imag() - o.imag()) * (b.real() - o.real());
    }
};

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](const Complex& a, const Complex& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Complex> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && Cross::of(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) { // upper
        while (k >= t && Cross::of(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double point_segment_distance(const Complex& p, const Complex& a, const Complex& b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double distance_to_hull(const std::vector<Complex>& hull, const Complex& p) {
    if (hull.empty()) return std::numeric_limits<double>::infinity();
    if (hull.size() == 1) return std::abs(p - hull[0]);
    if (hull.size() == 2) return point_segment_distance(p, hull[0], hull[1]);
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Complex& a = hull[i];
        const Complex& b = hull[(i + 1) % hull.size()];
        if (Cross::of(a, b, p) < 0) {
            inside = false;
            break;
        }
    }
    if (inside) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i)
        d = std::min(d, point_segment_distance(p, hull[i], hull[(i + 1) % hull.size()]));
    return d;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

std::vector<Complex> initial_guesses(const RootSet& p, int k, double cluster_eps) {
    const int n = p.degree();
    if (k >= n) throw DegenerateInput("initial_guesses: need k < degree");
    Complex centroid(0.0, 0.0);
    for (const Complex& w : p.roots) centroid += w;
    centroid /= static_cast<double>(n);

    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double da = std::abs(p.roots[static_cast<std::size_t>(a)] - centroid);
        const double db = std::abs(p.roots[static_cast<std::size_t>(b)] - centroid);
        return da < db || (da == db && a < b);
    });

    std::vector<Complex> guesses;
    guesses.reserve(static_cast<std::size_t>(n - k));
    std::vector<std::uint8_t> dropped(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < k; ++j) dropped[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] = 1;
    int out = 0;
    for (int i = 0; i < n; ++i) {
        if (dropped[static_cast<std::size_t>(i)]) continue;
        const Complex w = p.roots[static_cast<std::size_t>(i)];
        const double theta = 6.283185307179586 * frac(kGoldenFrac * static_cast<double>(out + 1));
        const double r = cluster_eps * (1.0 + std::abs(w));
        guesses.push_back(w + Complex(r * std::cos(theta), r * std::sin(theta)));
        ++out;
    }
    return guesses;
}

RootResult kth_derivative_roots(const RootSet& p, int k, const AberthConfig& cfg) {
    const int n = p.degree();
    if (k < 1 || k >= n) throw DegenerateInput("kth_derivative_roots: need 1 <= k < degree");
    const int nu = n - k;

    double max_abs_root = 0.0;
    for (const Complex& w : p.roots) max_abs_root = std::max(max_abs_root, std::abs(w));
    const double eps_c = cfg.cluster_eps * (1.0 + max_abs_root);

    std::vector<Complex> z = initial_guesses(p, k, eps_c);
    std::vector<Complex> z_next(z.size());
    std::vector<double> corr(z.size(), std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> frozen(z.size(), 0);
    std::vector<std::uint8_t> conv(z.size(), 0);
    std::vector<int> mult(z.size(), 1);
    std::vector<double> resid(z.size(), std::numeric_limits<double>::infinity());

    detail::ElemSymAccumulator acc;
    int iter = 0;

    auto scale_of = [](const Complex& v) { return 1.0 + std::abs(v); };

    // Multiplicity-m Newton probe from z0; true when the landing is finite.
    auto probe_landing = [&](Complex z0, int m, Complex& landing) {
        Complex ratio;
        Complex zz = z0;
        if (!newton_ratio_guarded(acc, zz, p, k, cfg.retry_perturb, ratio)) return false;
        landing = zz - static_cast<double>(m) * ratio;
        return std::isfinite(landing.real()) && std::isfinite(landing.imag());
    };

    auto attempt_collapse = [&]() {
        // Link slow points whose separations are within a few correction
        // magnitudes of each other; converged singles never link.
        std::vector<int> cand;
        for (std::size_t i = 0; i < z.size(); ++i)
            if (!frozen[i] && corr[i] > 64.0 * cfg.tol * scale_of(z[i])) cand.push_back(static_cast<int>(i));
        if (cand.size() < 2) return;
        UnionFind uf(static_cast<int>(cand.size()));
        for (std::size_t a = 0; a < cand.size(); ++a)
            for (std::size_t b = a + 1; b < cand.size(); ++b) {
                const int i = cand[a], j = cand[b];
                const double link = 4.0 * (corr[static_cast<std::size_t>(i)] + corr[static_cast<std::size_t>(j)]) + eps_c;
                if (std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) <= link) uf.unite(static_cast<int>(a), static_cast<int>(b));
            }
        std::vector<std::vector<int>> comps(cand.size());
        for (std::size_t a = 0; a < cand.size(); ++a) comps[static_cast<std::size_t>(uf.find(static_cast<int>(a)))].push_back(cand[a]);

        for (const auto& comp : comps) {
            const int m = static_cast<int>(comp.size());
            if (m < 2) continue;
            Complex centroid(0.0, 0.0);
            for (int i : comp) centroid += z[static_cast<std::size_t>(i)];
            centroid /= static_cast<double>(m);
            double r_comp = 0.0;
            for (int i : comp) r_comp = std::max(r_comp, std::abs(z[static_cast<std::size_t>(i)] - centroid));

            // Probe from up to three well separated members; all landings must
            // agree for the collapse to be trusted.
            std::vector<Complex> landings;
            const int probes = std::min(3, m);
            for (int q = 0; q < probes; ++q) {
                const int i = comp[static_cast<std::size_t>((q * m) / probes)];
                Complex landing;
                if (probe_landing(z[static_cast<std::size_t>(i)], m, landing)) landings.push_back(landing);
            }
            if (static_cast<int>(landings.size()) < probes) continue;
            Complex xi(0.0, 0.0);
            for (const Complex& l : landings) xi += l;
            xi /= static_cast<double>(landings.size());
            double spread = 0.0;
            for (const Complex& l : landings) spread = std::max(spread, std::abs(l - xi));
            const double rho_agree = std::max(1e-6 * scale_of(xi), 10.0 * eps_c);
            if (spread > rho_agree) continue;
            if (std::abs(xi - centroid) > 2.0 * r_comp + rho_agree) continue;

            for (int i : comp) {
                z[static_cast<std::size_t>(i)] = xi;
                frozen[static_cast<std::size_t>(i)] = 1;
                conv[static_cast<std::size_t>(i)] = 1;
                mult[static_cast<std::size_t>(i)] = m;
                resid[static_cast<std::size_t>(i)] = std::max(spread, 1e-300) / scale_of(xi);
                corr[static_cast<std::size_t>(i)] = 0.0;
            }
        }
    };

    for (iter = 1; iter <= cfg.max_iters; ++iter) {
        bool all_done = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (frozen[i]) {
                z_next[i] = z[i];
                continue;
            }
            Complex zi = z[i];
            Complex ratio;
            if (!newton_ratio_guarded(acc, zi, p, k, cfg.retry_perturb, ratio)) {
                z_next[i] = zi;
                corr[i] = std::numeric_limits<double>::infinity();
                all_done = false;
                continue;
            }
            Complex S(0.0, 0.0);
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j == i) continue;
                const Complex d = zi - z[j];
                if (d.real() == 0.0 && d.imag() == 0.0) continue;
                S += 1.0 / d;
            }
            Complex w = ratio / (1.0 - ratio * S);
            const double cap = 0.5 * scale_of(zi);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                w = ratio; // repulsion denominator blew up; fall back to Newton
            }
            if (std::abs(w) > cap) w *= cap / std::abs(w);
            z_next[i] = zi - w;
            corr[i] = std::abs(w);
            resid[i] = std::abs(ratio) / scale_of(zi);
            if (corr[i] <= cfg.tol * scale_of(z_next[i])) {
                conv[i] = 1;
            } else {
                conv[i] = 0;
                all_done = false;
            }
        }
        z.swap(z_next);
        if (all_done) break;
        if (iter >= 3 && iter % 4 == 3) {
            attempt_collapse();
            all_done = true;
            for (std::size_t i = 0; i < z.size(); ++i)
                if (!frozen[i] && !conv[i]) all_done = false;
            if (all_done) break;
        }
    }

    RootResult res;
    res.roots.roots = std::move(z);
    res.converged = std::move(conv);
    res.multiplicity = std::move(mult);
    res.iterations = std::min(iter, cfg.max_iters);

    std::vector<double> logs(resid.size());
    for (std::size_t i = 0; i < resid.size(); ++i)
        logs[i] = std::log(std::max(resid[i], 1e-300));
    std::sort(logs.begin(), logs.end());
    res.residual_log_max = logs.empty() ? 0.0 : logs.back();
    res.residual_log_median = logs.empty() ? 0.0 : logs[logs.size() / 2];
    if (static_cast<int>(res.roots.roots.size()) != nu)
        throw Error("kth_derivative_roots: degree bookkeeping failed");
    return res;
}

RootSet coeff_roots_oracle(const std::vector<Complex>& coeffs, const AberthConfig& cfg) {
    if (coeffs.size() < 2) throw DegenerateInput("coeff_roots_oracle: degree must be >= 1");
    if (coeffs.size() > 65) throw DegreeTooLarge("coeff_roots_oracle: degree > 64");
    if (std::abs(coeffs.back()) == 0.0)
        throw DegenerateInput("coeff_roots_oracle: leading coefficient is zero");

    const int d = static_cast<int>(coeffs.size()) - 1;
    const Complex lead = coeffs.back();
    std::vector<Complex> c(coeffs);
    for (Complex& x : c) x /= lead; // monic

    const std::vector<Complex> dc = differentiate_coeffs(c);

    // Start on a circle between the geometric-mean root modulus and the
    // Cauchy bound.
    double cauchy = 0.0;
    for (int j = 0; j < d; ++j) cauchy = std::max(cauchy, std::abs(c[static_cast<std::size_t>(j)]));
    cauchy += 1.0;
    double r0 = std::pow(std::max(std::abs(c[0]), 1e-12), 1.0 / d);
    r0 = std::clamp(r0, 0.25, cauchy);

    std::vector<Complex> z(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const double th = 6.283185307179586 * (static_cast<double>(j) + 0.5) / d + 0.7;
        z[static_cast<std::size_t>(j)] = Complex(r0 * std::cos(th), r0 * std::sin(th));
    }

    std::vector<Complex> z_next(z.size());
    std::vector<std::uint8_t> conv(z.size(), 0);
    for (int it = 0; it < cfg.max_iters; ++it) {
        bool all_done = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const Complex zi = z[i];
            const Complex pv = eval_coeffs(c, zi);
            const Complex dv = eval_coeffs(dc, zi);
            Complex w;
            if (pv == Complex(0.0, 0.0)) {
                w = Complex(0.0, 0.0);
            } else if (dv == Complex(0.0, 0.0)) {
                w = Complex(cfg.retry_perturb * (1.0 + std::abs(zi)), 0.0);
            } else {
                const Complex N = pv / dv;
                Complex S(0.0, 0.0);
                for (std::size_t j = 0; j < z.size(); ++j) {
                    if (j == i) continue;
                    const Complex dd = zi - z[j];
                    if (dd != Complex(0.0, 0.0)) S += 1.0 / dd;
                }
                w = N / (1.0 - N * S);
                if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = N;
                const double cap = 0.5 * (1.0 + std::abs(zi));
                if (std::abs(w) > cap) w *= cap / std::abs(w);
            }
            z_next[i] = zi - w;
            if (std::abs(w) <= cfg.tol * (1.0 + std::abs(z_next[i]))) {
                conv[i] = 1;
            } else {
                conv[i] = 0;
                all_done = false;
            }
        }
        z.swap(z_next);
        if (all_done) break;
    }
    for (std::size_t i = 0; i < conv.size(); ++i)
        if (!conv[i]) throw NoConvergence("coeff_roots_oracle: unconverged approximations remain");
    return RootSet(std::move(z));
}

HullCheck verify_gauss_lucas(const RootSet& parent, const RootSet& child, double slack) {
    const std::vector<Complex> hull = convex_hull(parent.roots);
    HullCheck hc;
    hc.max_violation = 0.0;
    for (const Complex& c : child.roots)
        hc.max_violation = std::max(hc.max_violation, distance_to_hull(hull, c));
    hc.ok = hc.max_violation <= slack;
    return hc;
}

} // namespace derivzeros
