// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Each criterion pins its tolerances in code; runtimes are reported so budget
// regressions are visible. An optional argv selects a subset, e.g.
// ./acceptance 1 5 7.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "derivzeros/equilibrium.hpp"
#include "derivzeros/experiments.hpp"
#include "derivzeros/polycore.hpp"
#include "derivzeros/rootfind.hpp"

using namespace derivzeros;
using Cx = std::complex<double>;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double hausdorff(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    auto side = [](const std::vector<Cx>& x, const std::vector<Cx>& y) {
        double worst = 0.0;
        for (const Cx& p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (const Cx& q : y) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(side(a, b), side(b, a));
}

RootSet random_roots(std::mt19937_64& eng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<Cx> r(static_cast<std::size_t>(n));
    for (Cx& w : r) w = Cx(u(eng), u(eng));
    return RootSet(std::move(r));
}

SequenceSpec disk_seq(std::uint64_t seed) {
    SequenceSpec s;
    s.generator = SequenceSpec::Generator::FrozenIid;
    s.mu = MeasureSpec::uniform_disk(1.0);
    s.seed = seed;
    return s;
}

// ---------------------------------------------------------------------------
// 1. polycore oracle equivalence: 100 random root sets, n <= 10, all k <= n,
//    within 1e-9 relative of expansion + symbolic differentiation.
Outcome criterion1() {
    Outcome out;
    std::mt19937_64 eng(101);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int sets = 0;
    double worst = 0.0;
    while (sets < 100) {
        const int n = 2 + static_cast<int>(eng() % 9);
        const RootSet p = random_roots(eng, n);
        const Cx z(u(eng), u(eng));
        bool near = false;
        for (const Cx& w : p.roots) near |= std::abs(z - w) < 1e-3;
        if (near) continue;
        ++sets;
        std::vector<Cx> coeffs = expand_from_roots(p);
        const Cx pz = eval_coeffs(coeffs, z);
        double kfact = 1.0;
        for (int k = 1; k <= n; ++k) {
            coeffs = differentiate_coeffs(coeffs);
            kfact *= k;
            const Cx oracle = eval_coeffs(coeffs, z) / (kfact * pz);
            const Cx mine = lnk(z, p, k).to_complex();
            const double rel = std::abs(mine - oracle) / std::max(std::abs(oracle), 1e-12);
            worst = std::max(worst, rel);
        }
    }
    out.pass = worst <= 1e-9;
    char b[128];
    std::snprintf(b, sizeof b, "100 root sets, worst relative error %.3g (tol 1e-9)", worst);
    out.detail = b;
    return out;
}

// ---------------------------------------------------------------------------
// 2. root-finder vs coefficient oracle: 50 instances, n <= 20, k <= 3,
//    Hausdorff <= 1e-7.
Outcome criterion2() {
    Outcome out;
    std::mt19937_64 eng(202);
    int instances = 0;
    double worst = 0.0;
    while (instances < 50) {
        const int n = 5 + static_cast<int>(eng() % 16);
        const int k = 1 + static_cast<int>(eng() % 3);
        if (k >= n) continue;
        ++instances;
        const RootSet p = random_roots(eng, n);
        std::vector<Cx> coeffs = expand_from_roots(p);
        for (int j = 0; j < k; ++j) coeffs = differentiate_coeffs(coeffs);
        const RootSet oracle = coeff_roots_oracle(coeffs);
        const RootResult mine = kth_derivative_roots(p, k);
        if (mine.unconverged_count() != 0) {
            out.pass = false;
            out.detail = "solver left unconverged roots";
            return out;
        }
        worst = std::max(worst, hausdorff(mine.roots.roots, oracle.roots));
    }
    out.pass = worst <= 1e-7;
    char b[128];
    std::snprintf(b, sizeof b, "50 instances, worst Hausdorff %.3g (tol 1e-7)", worst);
    out.detail = b;
    return out;
}

// ---------------------------------------------------------------------------
// 3. Gauss-Lucas chain P -> P' -> P'' across 200 instances from all six
//    ensembles (slack 1e-7 * diameter), plus strict real interlacing.
Outcome criterion3() {
    Outcome out;
    std::vector<EnsembleSpec> models;
    models.push_back(IidZeros{MeasureSpec::uniform_disk(1.0), 0});
    models.push_back(PairedChoice{disk_seq(31), disk_seq(32), 0});
    {
        Perturbed p;
        p.z = disk_seq(33);
        p.noise = MeasureSpec::uniform_disk(1.0);
        p.sigma_scale = 0.3;
        p.sigma_exponent = 0.6;
        models.push_back(p);
    }
    models.push_back(RemoveOne{disk_seq(34), 0});
    models.push_back(AugmentedDeterministic{disk_seq(35), 0, 2, MeasureSpec::uniform_disk(1.0)});
    {
        CoulombGas g;
        g.beta = 1.0;
        g.mcmc.sweeps = 200;
        g.mcmc.burn_in = 150;
        models.push_back(g);
    }

    const std::vector<int> sizes{32, 64, 128, 256, 512};
    int instance = 0, violations = 0;
    double worst = 0.0;
    while (instance < 200) {
        const EnsembleSpec& model = models[static_cast<std::size_t>(instance) % models.size()];
        const bool coulomb = std::holds_alternative<CoulombGas>(model);
        // the gas is O(n^2) per sweep; smaller degrees keep the suite in budget
        const int n = coulomb ? sizes[static_cast<std::size_t>(instance) % 2]
                              : sizes[static_cast<std::size_t>(instance) % sizes.size()];
        const RootSet p = sample(with_degree(model, n), 9000 + static_cast<std::uint64_t>(instance));
        double diam = 0.0;
        for (std::size_t a = 0; a < p.roots.size(); ++a)
            for (std::size_t b = a + 1; b < p.roots.size(); ++b)
                diam = std::max(diam, std::abs(p.roots[a] - p.roots[b]));
        const RootResult d1 = kth_derivative_roots(p, 1);
        const RootResult d2 = kth_derivative_roots(p, 2);
        const HullCheck h1 = verify_gauss_lucas(p, d1.roots, 1e-7 * diam);
        const HullCheck h2 = verify_gauss_lucas(d1.roots, d2.roots, 1e-7 * diam);
        if (!h1.ok || !h2.ok) ++violations;
        worst = std::max({worst, h1.max_violation, h2.max_violation});
        ++instance;
    }

    // real-rooted instances interlace strictly
    std::mt19937_64 eng(303);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int interlace_failures = 0;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> xs(16);
        for (double& x : xs) x = u(eng);
        std::sort(xs.begin(), xs.end());
        bool ok_gap = true;
        for (std::size_t i = 1; i < xs.size(); ++i) ok_gap &= xs[i] - xs[i - 1] > 1e-4;
        if (!ok_gap) continue;
        std::vector<Cx> roots(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) roots[i] = Cx(xs[i], 0);
        const RootResult rr = kth_derivative_roots(RootSet(roots), 1);
        std::vector<double> crit;
        for (const Cx& z : rr.roots.roots) crit.push_back(z.real());
        std::sort(crit.begin(), crit.end());
        for (std::size_t i = 0; i < crit.size(); ++i)
            if (crit[i] < xs[i] - 1e-9 || crit[i] > xs[i + 1] + 1e-9) ++interlace_failures;
    }

    out.pass = violations == 0 && interlace_failures == 0;
    char b[160];
    std::snprintf(b, sizeof b,
                  "200 instances, %d hull violations (worst distance %.3g), %d interlacing failures",
                  violations, worst, interlace_failures);
    out.detail = b;
    return out;
}

// ---------------------------------------------------------------------------
// 4. transport exactness: brute-force polytope enumeration on 500 instances
//    (<= 5-point supports) to 1e-9; metric axioms on 1000 random triples.
double brute_force_w1(const std::vector<Cx>& a, const std::vector<int>& sa,
                      const std::vector<Cx>& b, std::vector<int> rem_b) {
    const std::size_t n = a.size(), m = b.size();
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, int, double)> rec = [&](std::size_t cell, int row_rem,
                                                            double cost) {
        if (cost >= best) return;
        const std::size_t i = cell / m, j = cell % m;
        if (i == n) {
            best = cost;
            return;
        }
        if (j == m - 1) {
            if (row_rem > rem_b[j]) return;
            rem_b[j] -= row_rem;
            rec(cell + 1, i + 1 < n ? sa[i + 1] : 0, cost + row_rem * std::abs(a[i] - b[j]));
            rem_b[j] += row_rem;
            return;
        }
        const int hi = std::min(row_rem, rem_b[j]);
        for (int f = 0; f <= hi; ++f) {
            rem_b[j] -= f;
            rec(cell + 1, row_rem - f, cost + f * std::abs(a[i] - b[j]));
            rem_b[j] += f;
        }
    };
    rec(0, sa[0], 0.0);
    return best;
}

Outcome criterion4() {
    Outcome out;
    std::mt19937_64 eng(404);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<int> size_d(1, 5), mass_d(1, 3);
    double worst = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
        const int n = size_d(eng), m = size_d(eng);
        std::vector<int> sa(static_cast<std::size_t>(n)), sb(static_cast<std::size_t>(m));
        int ta = 0, tb = 0;
        for (int& s : sa) ta += (s = mass_d(eng));
        for (int& s : sb) tb += (s = mass_d(eng));
        if (ta < tb)
            sa.back() += tb - ta;
        else
            sb.back() += ta - tb;
        const int total = std::max(ta, tb);
        std::vector<Cx> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(m));
        for (Cx& z : a) z = Cx(u(eng), u(eng));
        for (Cx& z : b) z = Cx(u(eng), u(eng));
        std::vector<double> wa(sa.size()), wb(sb.size());
        for (std::size_t i = 0; i < sa.size(); ++i) wa[i] = static_cast<double>(sa[i]) / total;
        for (std::size_t j = 0; j < sb.size(); ++j) wb[j] = static_cast<double>(sb[j]) / total;
        const double oracle = brute_force_w1(a, sa, b, sb) / total;
        const double mine = wasserstein1_exact(EmpiricalMeasure(a, wa), EmpiricalMeasure(b, wb));
        worst = std::max(worst, std::fabs(mine - oracle));
    }

    double axiom_worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        auto cloud = [&](int sz) {
            std::vector<Cx> p(static_cast<std::size_t>(sz));
            for (Cx& z : p) z = Cx(u(eng), u(eng));
            return EmpiricalMeasure::uniform(std::move(p));
        };
        const EmpiricalMeasure x = cloud(5), y = cloud(6), z = cloud(4);
        const double dxy = wasserstein1_exact(x, y);
        const double dyx = wasserstein1_exact(y, x);
        const double dxz = wasserstein1_exact(x, z);
        const double dzy = wasserstein1_exact(z, y);
        axiom_worst = std::max(axiom_worst, std::fabs(dxy - dyx));
        axiom_worst = std::max(axiom_worst, std::max(0.0, dxy - dxz - dzy));
        axiom_worst = std::max(axiom_worst, std::max(0.0, -dxy));
        axiom_worst = std::max(axiom_worst, wasserstein1_exact(x, x));
    }

    out.pass = worst <= 1e-9 && axiom_worst <= 1e-9;
    char b[160];
    std::snprintf(b, sizeof b,
                  "500 polytope instances, worst gap %.3g; 1000 triples, worst axiom slack %.3g",
                  worst, axiom_worst);
    out.detail = b;
    return out;
}

// ---------------------------------------------------------------------------
// 5. equilibrium formulas: Ginibre disk (radius 1, density 1/pi, F_Q = 1),
//    alpha=2 radius 2^(-1/4), Mittag-Leffler(1,1) annulus (1, sqrt 2), also
//    through the bisection mass-condition solver; Frostman constancy to 1e-6.
Outcome criterion5() {
    Outcome out;
    double worst = 0.0;
    constexpr double kPi = 3.141592653589793;

    const EquilibriumMeasure gin = equilibrium_radial(RadialPotential{});
    worst = std::max(worst, std::fabs(gin.r_outer - 1.0));
    worst = std::max(worst, std::fabs(gin.density(0.3) - 1.0 / kPi));
    worst = std::max(worst, std::fabs(gin.robin_constant - 1.0));

    {
        RadialPotential p;
        p.alpha = 2.0;
        worst = std::max(worst, std::fabs(equilibrium_radial(p).r_outer - std::pow(2.0, -0.25)));
    }
    {
        RadialPotential p;
        p.nu = 1.0;
        const EquilibriumMeasure eq = equilibrium_radial(p);
        worst = std::max(worst, std::fabs(eq.r_inner - 1.0));
        worst = std::max(worst, std::fabs(eq.r_outer - std::sqrt(2.0)));
    }
    // the same radii through the bisection mass-condition solver
    {
        RadialPotential c;
        c.custom_g = [](double r) { return r * r; };
        c.custom_dg = [](double r) { return 2.0 * r; };
        worst = std::max(worst, std::fabs(equilibrium_radial(c).r_outer - 1.0));
        RadialPotential c2;
        c2.custom_g = [](double r) { return std::pow(r, 4.0); };
        c2.custom_dg = [](double r) { return 4.0 * std::pow(r, 3.0); };
        worst = std::max(worst, std::fabs(equilibrium_radial(c2).r_outer - std::pow(2.0, -0.25)));
    }
    const bool formulas_ok = worst <= 1e-9;

    double frostman_worst = 0.0;
    for (double alpha : {1.0, 1.5, 2.0}) {
        for (double nu : {0.0, 1.0}) {
            RadialPotential p;
            p.alpha = alpha;
            p.nu = nu;
            const EquilibriumMeasure eq = equilibrium_radial(p);
            for (int i = 0; i <= 32; ++i) {
                const double rho = eq.r_inner + (eq.r_outer - eq.r_inner) * i / 32.0;
                if (rho <= 0.0) continue;
                const double val = u_sigma_radial(eq, rho) + p.g(rho);
                frostman_worst = std::max(frostman_worst, std::fabs(val - eq.robin_constant));
            }
            for (double rho : {1.2 * eq.r_outer, 2.0 * eq.r_outer}) {
                const double val = u_sigma_radial(eq, rho) + p.g(rho);
                frostman_worst = std::max(frostman_worst, std::max(0.0, eq.robin_constant - val));
            }
        }
    }

    out.pass = formulas_ok && frostman_worst <= 1e-6;
    char b[160];
    std::snprintf(b, sizeof b,
                  "closed forms worst error %.3g (tol 1e-9); Frostman worst %.3g (tol 1e-6)", worst,
                  frostman_worst);
    out.detail = b;
    return out;
}

// ---------------------------------------------------------------------------
// 6. Coulomb sampler validity: beta=1, Q=|z|^2, n=256, 2000 post-burn-in
//    sweeps: radial KS <= 0.05 and W1 to discretized sigma_Q <= 0.08.
Outcome criterion6() {
    Outcome out;
    ExperimentConfig cfg;
    CoulombGas gas;
    gas.beta = 1.0;
    gas.mcmc.sweeps = 2000;
    gas.mcmc.burn_in = 500;
    cfg.ensemble = gas;
    cfg.k_list = {1};
    cfg.n_grid = {256};
    cfg.trials = 1;
    cfg.master_seed = 606;
    cfg.n_ref = 4096;
    const CoulombRunResult res = run_coulomb_experiment(cfg);
    out.pass = res.ks <= 0.05 && res.w1_to_equilibrium <= 0.08;
    char b[160];
    std::snprintf(b, sizeof b, "KS %.4f (tol 0.05), W1 %.4f via %s (tol 0.08), acceptance %.2f",
                  res.ks, res.w1_to_equilibrium, res.w1_method.c_str(), res.mean_acceptance);
    out.detail = b;
    return out;
}

// ---------------------------------------------------------------------------
// 7. main phenomenon: five models, mu = uniform disk, k in {1,2,3},
//    n_grid {128, 512, 2048}, 20 trials: median W1(M(P^(k)), M(P_n))
//    non-increasing in n and <= 0.06 at n = 2048.
ExperimentConfig criterion7_config(const std::string& model) {
    ExperimentConfig cfg;
    if (model == "iid") {
        cfg.ensemble = IidZeros{MeasureSpec::uniform_disk(1.0), 0};
    } else if (model == "paired") {
        cfg.ensemble = PairedChoice{disk_seq(71), disk_seq(72), 0};
    } else if (model == "perturbed") {
        Perturbed p;
        p.z = disk_seq(73);
        p.noise = MeasureSpec::uniform_disk(1.0);
        p.sigma_scale = 0.5;
        p.sigma_exponent = 0.6;
        cfg.ensemble = p;
    } else if (model == "remove_one") {
        cfg.ensemble = RemoveOne{disk_seq(74), 0};
    } else {
        cfg.ensemble = AugmentedDeterministic{disk_seq(75), 0, 3, MeasureSpec::uniform_disk(1.0)};
    }
    cfg.k_list = {1, 2, 3};
    cfg.n_grid = {128, 512, 2048};
    cfg.trials = 20;
    cfg.master_seed = 707;
    cfg.n_ref = 4096;
    cfg.distance.bootstrap = 4;
    return cfg;
}

Outcome criterion7() {
    Outcome out;
    std::ostringstream detail;
    bool pass = true;
    for (const std::string& model : {"iid", "paired", "perturbed", "remove_one", "augmented"}) {
        const ExperimentConfig cfg = criterion7_config(model);
        const Report rep = run_convergence(cfg);
        if (model == "iid") {
            // reused by criterion 10 as the 1-thread reference run
            OutputConfig oc;
            oc.dir = "acceptance_out/c7_iid";
            oc.formats = {"csv", "json"};
            emit_report(rep, oc);
        }
        for (int k : cfg.k_list) {
            std::vector<double> medians;
            for (int n : cfg.n_grid)
                for (const AggregateRecord& a : rep.aggregates)
                    if (a.n == n && a.k == k) medians.push_back(a.median_w1_parent);
            const bool mono =
                medians.size() == 3 && medians[1] <= medians[0] && medians[2] <= medians[1];
            const bool small_enough = medians.back() <= 0.06;
            if (!mono || !small_enough) pass = false;
            char b[200];
            std::snprintf(b, sizeof b, "%s/k%d: %.4f -> %.4f -> %.4f%s%s; ", model.c_str(), k,
                          medians[0], medians[1], medians[2], mono ? "" : " NOT-MONOTONE",
                          small_enough ? "" : " ABOVE-0.06");
            detail << b;
        }
    }
    out.pass = pass;
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------------------
// 8. negative control: z^n - 1 keeps W1(M(P_n), M(P_n')) = 1 +- 1e-3 for
//    n in {64, 256, 1024}; the harness must not report convergence.
Outcome criterion8() {
    Outcome out;
    std::ostringstream detail;
    bool pass = true;
    for (int n : {64, 256, 1024}) {
        ExperimentConfig cfg;
        ExplicitRoots ex;
        ex.kind = ExplicitRoots::Kind::RootsOfUnity;
        cfg.ensemble = ex;
        cfg.k_list = {1};
        cfg.n_grid = {n};
        cfg.trials = 1;
        cfg.master_seed = 808;
        cfg.n_ref = 256;
        const Report rep = run_convergence(cfg);
        const double w1 = rep.records.at(0).w1_parent;
        if (std::fabs(w1 - 1.0) > 1e-3) pass = false;
        char b[120];
        std::snprintf(b, sizeof b, "n=%d: W1=%.6f (%s); ", n, w1,
                      rep.records.at(0).w1_parent_method.c_str());
        detail << b;
    }
    out.pass = pass;
    out.detail = detail.str() + "tol 1 +- 1e-3";
    return out;
}

// ---------------------------------------------------------------------------
// 9. probe sanity: small-value frequency 0 at z=2, eps=0.1, n in {100, 200},
//    500 trials (iid uniform disk); tightness estimates bounded across
//    n in {64, 256, 1024} within 2x of the n=64 value.
Outcome criterion9() {
    Outcome out;
    ExperimentConfig cfg;
    cfg.ensemble = IidZeros{MeasureSpec::uniform_disk(1.0), 0};
    cfg.k_list = {1};
    cfg.n_grid = {100, 200};
    cfg.trials = 500;
    cfg.master_seed = 909;
    cfg.probe.z_points = {Cx(2.0, 0.0)};
    cfg.probe.extra_random_z = 0;
    cfg.probe.epsilon = 0.1;
    cfg.probe.k = 1;
    const ProbeSmallResult small = probe_small_values(cfg);
    double worst_freq = 0.0;
    for (const ProbeSmallRow& r : small.rows) worst_freq = std::max(worst_freq, r.frequency);

    ExperimentConfig tcfg = cfg;
    tcfg.n_grid = {64, 256, 1024};
    tcfg.trials = 4;
    tcfg.probe.mc_points = 2048;
    tcfg.probe.disk_radius = 2.0;
    const ProbeTightResult tight = probe_tightness(tcfg);
    auto median_for = [&tight](int n) {
        std::vector<double> v;
        for (const ProbeTightRow& r : tight.rows)
            if (r.n == n) v.push_back(r.estimate);
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    const double base = median_for(64);
    const double m256 = median_for(256), m1024 = median_for(1024);
    const bool bounded = m256 <= 2.0 * base && m1024 <= 2.0 * base;

    out.pass = worst_freq == 0.0 && bounded;
    char b[200];
    std::snprintf(b, sizeof b,
                  "small-value freq %.4f (must be 0); tightness medians %.4g / %.4g / %.4g "
                  "(bound 2x n=64 value)",
                  worst_freq, base, m256, m1024);
    out.detail = b;
    return out;
}

// ---------------------------------------------------------------------------
// 10. determinism: criterion 7's iid config rerun at 8 threads is
//     byte-identical to the 1-thread reference emitted by criterion 7.
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion10() {
    Outcome out;
    const ExperimentConfig cfg = criterion7_config("iid");
    if (!std::filesystem::exists("acceptance_out/c7_iid/report.csv")) {
        // criterion 7 did not run in this invocation: produce the reference
        OutputConfig oc;
        oc.dir = "acceptance_out/c7_iid";
        oc.formats = {"csv", "json"};
        RunOptions one;
        one.threads = 1;
        emit_report(run_convergence(cfg, one), oc);
    }
    RunOptions eight;
    eight.threads = 8;
    OutputConfig oc;
    oc.dir = "acceptance_out/c10_iid";
    oc.formats = {"csv", "json"};
    emit_report(run_convergence(cfg, eight), oc);

    const bool csv_same =
        slurp("acceptance_out/c7_iid/report.csv") == slurp("acceptance_out/c10_iid/report.csv");
    const bool json_same =
        slurp("acceptance_out/c7_iid/report.json") == slurp("acceptance_out/c10_iid/report.json");
    out.pass = csv_same && json_same;
    out.detail = std::string("1-thread vs 8-thread runs: csv ") +
                 (csv_same ? "identical" : "DIFFER") + ", json " +
                 (json_same ? "identical" : "DIFFER");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const std::vector<Criterion> all = {
        {1, "polycore oracle equivalence", criterion1},
        {2, "root-finder vs coefficient oracle", criterion2},
        {3, "gauss-lucas / interlacing suite", criterion3},
        {4, "transport exactness and metric axioms", criterion4},
        {5, "equilibrium measure formulas", criterion5},
        {6, "coulomb sampler validity", criterion6},
        {7, "derivative-zero convergence (five models)", criterion7},
        {8, "negative control z^n - 1", criterion8},
        {9, "probe sanity (small values, tightness)", criterion9},
        {10, "byte-identical determinism across threads", criterion10},
    };

    std::set<int> selected;
    for (int a = 1; a < argc; ++a) selected.insert(std::atoi(argv[a]));

    int failures = 0;
    for (const Criterion& c : all) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d: %s - %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id,
                    c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
