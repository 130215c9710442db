#include "derivzeros/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "derivzeros/equilibrium.hpp"
#include "derivzeros/polycore.hpp"
#include "derivzeros/rootfind.hpp"

namespace derivzeros {

namespace {

constexpr std::uint64_t kTagTrial = 0x7217ULL;
constexpr std::uint64_t kTagDistance = 0xD157ULL;
constexpr std::uint64_t kTagTarget = 0x7A46ULL;
constexpr std::uint64_t kTagProbeZ = 0x9B2EULL;
constexpr std::uint64_t kTagMc = 0x3CABULL;

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// log |L_n^k(z)| with the perturb-and-retry-once fallback; increments
// `resampled` when the fallback fires. k = 0 returns 0 (e_0 = 1).
double log_lnk_guarded(Complex z, const RootSet& p, int k, double retry_perturb, int& resampled) {
    if (k == 0) return 0.0;
    try {
        return lnk(z, p, k).log_abs();
    } catch (const ExactRootHit&) {
        ++resampled;
        const Complex z2 = z + Complex(retry_perturb * (1.0 + std::abs(z)), 0.0);
        return lnk(z2, p, k).log_abs();
    }
}

} // namespace

W1Estimate compute_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                            const DistanceConfig& cfg, std::uint64_t seed) {
    W1EstimateConfig ecfg;
    ecfg.subsample_size = cfg.subsample_size;
    ecfg.bootstrap = cfg.bootstrap;
    ecfg.epsilon = cfg.epsilon;
    ecfg.seed = seed;

    auto run_exact = [&] {
        W1Estimate e;
        e.value = wasserstein1_exact(a, b);
        e.error = 0.0;
        e.method = "exact";
        return e;
    };

    switch (cfg.method) {
    case DistanceConfig::Method::Exact:
        return run_exact();
    case DistanceConfig::Method::Assignment:
        ecfg.method = W1EstimateConfig::Method::Assignment;
        return wasserstein1_estimate(a, b, ecfg);
    case DistanceConfig::Method::Entropic:
        ecfg.method = W1EstimateConfig::Method::Entropic;
        return wasserstein1_estimate(a, b, ecfg);
    case DistanceConfig::Method::Subsample:
        ecfg.method = W1EstimateConfig::Method::Subsample;
        return wasserstein1_estimate(a, b, ecfg);
    case DistanceConfig::Method::Auto:
        break;
    }
    if (a.size() + b.size() <= kExactTransportBudget) return run_exact();
    if (a.is_uniform() && b.is_uniform()) {
        const std::size_t lo = std::min(a.size(), b.size());
        const std::size_t hi = std::max(a.size(), b.size());
        // assignment is exact under replication and near-exact when the trim
        // discards a sliver; badly mismatched sizes go to subsampling instead
        if (hi % lo == 0 || static_cast<double>(lo) >= 0.9 * static_cast<double>(hi)) {
            ecfg.method = W1EstimateConfig::Method::Assignment;
            return wasserstein1_estimate(a, b, ecfg);
        }
    }
    ecfg.method = W1EstimateConfig::Method::Subsample;
    return wasserstein1_estimate(a, b, ecfg);
}

EmpiricalMeasure make_target_cloud(const EnsembleSpec& spec, int n_ref) {
    if (n_ref < 1) throw InvalidSpec("target cloud: n_ref must be >= 1");

    if (const auto* coulomb = std::get_if<CoulombGas>(&spec)) {
        const EquilibriumMeasure eq = equilibrium_radial(coulomb->potential);
        return discretize_radial(eq, n_ref);
    }
    if (const auto* ex = std::get_if<ExplicitRoots>(&spec)) {
        if (ex->kind == ExplicitRoots::Kind::PointList)
            return EmpiricalMeasure::uniform(ex->points);
        MeasureSpec circle = MeasureSpec::uniform_circle(1.0);
        std::vector<Complex> pts;
        pts.reserve(static_cast<std::size_t>(n_ref));
        for (int i = 0; i < n_ref; ++i) pts.push_back(circle.stratified_point(static_cast<std::uint64_t>(i)));
        return EmpiricalMeasure::uniform(std::move(pts));
    }

    const MeasureSpec* mu = nullptr;
    const SequenceSpec* seq = nullptr;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, IidZeros>)
                mu = &m.mu;
            else if constexpr (std::is_same_v<T, PairedChoice>)
                seq = &m.a;
            else if constexpr (std::is_same_v<T, Perturbed>)
                seq = &m.z;
            else if constexpr (std::is_same_v<T, RemoveOne>)
                seq = &m.z;
            else if constexpr (std::is_same_v<T, AugmentedDeterministic>)
                seq = &m.z;
        },
        spec);

    if (seq) {
        if (seq->generator == SequenceSpec::Generator::Explicit) {
            const int take = std::min<int>(n_ref, static_cast<int>(seq->explicit_points.size()));
            return EmpiricalMeasure::uniform(std::vector<Complex>(
                seq->explicit_points.begin(), seq->explicit_points.begin() + take));
        }
        mu = &seq->mu;
    }
    if (!mu) throw InvalidSpec("target cloud: model has no limit measure");

    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n_ref));
    if (mu->radial()) {
        for (int i = 0; i < n_ref; ++i) pts.push_back(mu->stratified_point(static_cast<std::uint64_t>(i)));
    } else {
        Rng rng(derive_seed(kTagTarget, {0x01}));
        for (int i = 0; i < n_ref; ++i) pts.push_back(mu->sample(rng));
    }
    return EmpiricalMeasure::uniform(std::move(pts));
}

Report run_convergence(const ExperimentConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    Report report;
    report.kind = "converge";
    report.master_seed = cfg.master_seed;
    report.config_echo = cfg.to_json_string();

    const EmpiricalMeasure target = make_target_cloud(cfg.ensemble, cfg.n_ref);
    {
        // Discretization floor: self-distance of two independent target clouds,
        // always via the cheap labeled subsample estimator.
        EmpiricalMeasure target2 = target;
        Rng rng(derive_seed(cfg.master_seed, {kTagTarget, 2}));
        if (const auto* coulomb = std::get_if<CoulombGas>(&cfg.ensemble)) {
            const EquilibriumMeasure eq = equilibrium_radial(coulomb->potential);
            std::vector<Complex> pts;
            for (int i = 0; i < cfg.n_ref; ++i) {
                const double r = radial_cdf_inverse(eq, rng.uniform01());
                const double t = 6.283185307179586 * rng.uniform01();
                pts.emplace_back(r * std::cos(t), r * std::sin(t));
            }
            target2 = EmpiricalMeasure::uniform(std::move(pts));
        } else {
            // jitter-free independent draw from the same limit when possible
            std::vector<Complex> pts;
            bool ok = true;
            std::visit(
                [&](const auto& m) {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, IidZeros>) {
                        for (int i = 0; i < cfg.n_ref; ++i) pts.push_back(m.mu.sample(rng));
                    } else if constexpr (std::is_same_v<T, PairedChoice>) {
                        if (m.a.generator != SequenceSpec::Generator::Explicit)
                            for (int i = 0; i < cfg.n_ref; ++i) pts.push_back(m.a.mu.sample(rng));
                        else
                            ok = false;
                    } else if constexpr (std::is_same_v<T, Perturbed> ||
                                         std::is_same_v<T, RemoveOne> ||
                                         std::is_same_v<T, AugmentedDeterministic>) {
                        if (m.z.generator != SequenceSpec::Generator::Explicit)
                            for (int i = 0; i < cfg.n_ref; ++i) pts.push_back(m.z.mu.sample(rng));
                        else
                            ok = false;
                    } else {
                        ok = false;
                    }
                },
                cfg.ensemble);
            if (ok && !pts.empty()) target2 = EmpiricalMeasure::uniform(std::move(pts));
        }
        DistanceConfig floor_cfg = cfg.distance;
        floor_cfg.method = DistanceConfig::Method::Subsample;
        const W1Estimate floor =
            compute_distance(target, target2, floor_cfg, derive_seed(cfg.master_seed, {kTagTarget, 3}));
        report.target_floor = floor.value;
        report.target_floor_method = floor.method;
    }

    if (const auto* ro = std::get_if<RemoveOne>(&cfg.ensemble)) {
        if (ro->z.generator != SequenceSpec::Generator::Explicit && ro->z.mu.has_atoms())
            report.notes.push_back("remove_one: atomic base measure, outside the proven regime");
    }
    if (const auto* pc = std::get_if<PairedChoice>(&cfg.ensemble)) {
        // separation diagnostic at the largest degree; required growth is o(n^2)
        const int n_max = *std::max_element(cfg.n_grid.begin(), cfg.n_grid.end());
        if (pc->a.generator != SequenceSpec::Generator::Explicit ||
            static_cast<int>(pc->a.explicit_points.size()) >= n_max) {
            const std::vector<Complex> a = pc->a.generate(n_max);
            const std::vector<Complex> b = pc->b.generate(n_max);
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "paired separation stat at n=%d: sum log+ 1/|a-b| = %.6g (n^2 = %g)",
                          n_max, ber_separation_stat(a, b),
                          static_cast<double>(n_max) * n_max);
            report.notes.push_back(buf);
        }
    }

    struct Job {
        int n, k, trial;
    };
    std::vector<Job> jobs;
    for (int n : cfg.n_grid)
        for (int k : cfg.k_list)
            for (int t = 0; t < cfg.trials; ++t) jobs.push_back({n, k, t});

    std::vector<TrialRecord> records(jobs.size());
    std::vector<ScatterData> scatters(static_cast<std::size_t>(cfg.n_grid.size() * cfg.k_list.size()));
    const std::string model = model_name(cfg.ensemble);

    auto run_job = [&](std::size_t ji) {
        const Job job = jobs[ji];
        const auto t0 = std::chrono::steady_clock::now();
        TrialRecord rec;
        rec.n = job.n;
        rec.k = job.k;
        rec.trial = job.trial;
        rec.model = model;
        rec.seed = derive_seed(cfg.master_seed, {kTagTrial, static_cast<std::uint64_t>(job.n),
                                                 static_cast<std::uint64_t>(job.k),
                                                 static_cast<std::uint64_t>(job.trial)});

        const RootSet parent = sample(with_degree(cfg.ensemble, job.n), rec.seed);
        const RootResult rr = kth_derivative_roots(parent, job.k, cfg.solver);
        rec.unconverged = rr.unconverged_count();
        rec.child_count = rr.roots.degree();
        rec.solver_iterations = rr.iterations;
        rec.resid_log_max = rr.residual_log_max;
        rec.resid_log_median = rr.residual_log_median;

        const EmpiricalMeasure m_parent = EmpiricalMeasure::of(parent);
        const EmpiricalMeasure m_child = EmpiricalMeasure::of(rr.roots);

        const W1Estimate dp = compute_distance(m_child, m_parent, cfg.distance,
                                               derive_seed(rec.seed, {kTagDistance, 1}));
        rec.w1_parent = dp.value;
        rec.w1_parent_err = dp.error;
        rec.w1_parent_method = dp.method;
        const W1Estimate dt =
            compute_distance(m_child, target, cfg.distance, derive_seed(rec.seed, {kTagDistance, 2}));
        rec.w1_target = dt.value;
        rec.w1_target_err = dt.error;
        rec.w1_target_method = dt.method;

        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                          .count();
        if (job.trial == 0) {
            const std::size_t si =
                static_cast<std::size_t>(std::find(cfg.n_grid.begin(), cfg.n_grid.end(), job.n) -
                                         cfg.n_grid.begin()) *
                    cfg.k_list.size() +
                static_cast<std::size_t>(std::find(cfg.k_list.begin(), cfg.k_list.end(), job.k) -
                                         cfg.k_list.begin());
            scatters[si] = ScatterData{job.n, job.k, parent.roots, rr.roots.roots};
        }
        records[ji] = std::move(rec);
    };

    const int threads = std::max(1, opts.threads);
    if (threads == 1) {
        for (std::size_t ji = 0; ji < jobs.size(); ++ji) run_job(ji);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t ji = next.fetch_add(1);
                    if (ji >= jobs.size()) return;
                    run_job(ji);
                }
            });
        for (std::thread& th : pool) th.join();
    }

    report.records = std::move(records);
    report.scatters = std::move(scatters);

    for (int n : cfg.n_grid)
        for (int k : cfg.k_list) {
            std::vector<double> wp, wt;
            for (const TrialRecord& r : report.records)
                if (r.n == n && r.k == k) {
                    wp.push_back(r.w1_parent);
                    wt.push_back(r.w1_target);
                }
            report.aggregates.push_back({n, k, median_of(std::move(wp)), median_of(std::move(wt))});
        }
    return report;
}

ProbeSmallResult probe_small_values(const ExperimentConfig& cfg) {
    cfg.validate();
    ProbeSmallResult out;
    out.master_seed = cfg.master_seed;
    out.k = cfg.probe.k;
    out.epsilon = cfg.probe.epsilon;
    out.config_echo = cfg.to_json_string();

    std::vector<Complex> zs = cfg.probe.z_points;
    {
        Rng rng(derive_seed(cfg.master_seed, {kTagProbeZ}));
        const MeasureSpec disk = MeasureSpec::uniform_disk(cfg.probe.disk_radius);
        for (int i = 0; i < cfg.probe.extra_random_z; ++i) zs.push_back(disk.sample(rng));
    }

    for (int n : cfg.n_grid) {
        std::vector<int> hits(zs.size(), 0);
        std::vector<int> resampled(zs.size(), 0);
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed = derive_seed(
                cfg.master_seed, {kTagTrial, static_cast<std::uint64_t>(n), 0xF00DULL,
                                  static_cast<std::uint64_t>(trial)});
            const RootSet p = sample(with_degree(cfg.ensemble, n), seed);
            const double threshold = -static_cast<double>(p.degree()) * cfg.probe.epsilon;
            for (std::size_t zi = 0; zi < zs.size(); ++zi) {
                const double la = log_lnk_guarded(zs[zi], p, std::min(cfg.probe.k, p.degree()),
                                                  cfg.solver.retry_perturb, resampled[zi]);
                if (la < threshold) ++hits[zi];
            }
        }
        for (std::size_t zi = 0; zi < zs.size(); ++zi)
            out.rows.push_back({zs[zi], n, cfg.trials, hits[zi],
                                static_cast<double>(hits[zi]) / static_cast<double>(cfg.trials),
                                resampled[zi]});
    }
    return out;
}

ProbeTightResult probe_tightness(const ExperimentConfig& cfg) {
    cfg.validate();
    ProbeTightResult out;
    out.master_seed = cfg.master_seed;
    out.k = cfg.probe.k;
    out.disk_radius = cfg.probe.disk_radius;
    out.mc_points = cfg.probe.mc_points;
    out.config_echo = cfg.to_json_string();

    const double r = cfg.probe.disk_radius;
    const double area = 3.141592653589793 * r * r;
    double log_kfact = 0.0;
    for (int j = 2; j <= cfg.probe.k; ++j) log_kfact += std::log(static_cast<double>(j));

    for (int n : cfg.n_grid) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed = derive_seed(
                cfg.master_seed, {kTagTrial, static_cast<std::uint64_t>(n), 0x716BULL,
                                  static_cast<std::uint64_t>(trial)});
            const RootSet p = sample(with_degree(cfg.ensemble, n), seed);
            Rng mc(derive_seed(seed, {kTagMc}));
            int resampled = 0;
            double sum = 0.0, sum2 = 0.0;
            const double inv_n2 = 1.0 / (static_cast<double>(p.degree()) * static_cast<double>(p.degree()));
            for (int m = 0; m < cfg.probe.mc_points; ++m) {
                double integrand = 0.0;
                for (int attempt = 0;; ++attempt) {
                    const double rr_ = r * std::sqrt(mc.uniform01());
                    const double th = 6.283185307179586 * mc.uniform01();
                    const Complex z(rr_ * std::cos(th), rr_ * std::sin(th));
                    if (cfg.probe.k == 0) break; // integrand identically zero
                    try {
                        const double la = log_kfact + lnk(z, p, std::min(cfg.probe.k, p.degree())).log_abs();
                        integrand = la * la * inv_n2;
                        break;
                    } catch (const ExactRootHit&) {
                        ++resampled;
                        if (attempt > 8) break;
                    }
                }
                sum += integrand;
                sum2 += integrand * integrand;
            }
            const double mean = sum / cfg.probe.mc_points;
            const double var = std::max(0.0, sum2 / cfg.probe.mc_points - mean * mean);
            out.rows.push_back({n, trial, area * mean,
                                area * std::sqrt(var / cfg.probe.mc_points), resampled});
        }
    }
    return out;
}

PairingResult pairing_stats(const RootSet& parent, const RootSet& child) {
    const std::size_t n = parent.roots.size(), m = child.roots.size();
    if (m > n) throw InvalidSpec("pairing_stats: child must not exceed parent");
    if (n * m > std::size_t{32} * 1024 * 1024)
        throw SizeTooLarge("pairing_stats: instance too large for the dense diagnostic");

    PairingResult res;
    res.parent_size = static_cast<int>(n);
    res.child_size = static_cast<int>(m);

    res.nearest_distances.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j)
            best = std::min(best, std::abs(parent.roots[i] - child.roots[j]));
        res.nearest_distances[i] = best;
    }

    // histogram of n * d
    res.hist_edges.clear();
    for (int b = 0; b <= 20; ++b) res.hist_edges.push_back(static_cast<double>(b));
    res.hist_counts.assign(21, 0); // last bin is [20, inf)
    for (double d : res.nearest_distances) {
        const double nd = static_cast<double>(n) * d;
        const int bin = nd >= 20.0 ? 20 : static_cast<int>(nd);
        ++res.hist_counts[static_cast<std::size_t>(bin)];
    }

    // greedy: repeatedly take the globally nearest unused (parent, child) pair
    {
        struct Pair {
            double d;
            int i, j;
        };
        std::vector<Pair> pairs;
        pairs.reserve(n * m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                pairs.push_back({std::abs(parent.roots[i] - child.roots[j]), static_cast<int>(i),
                                 static_cast<int>(j)});
        std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            return a.d < b.d || (a.d == b.d && (a.i < b.i || (a.i == b.i && a.j < b.j)));
        });
        std::vector<char> used_i(n, 0), used_j(m, 0);
        std::size_t matched = 0;
        for (const Pair& pr : pairs) {
            if (matched == m) break;
            if (used_i[static_cast<std::size_t>(pr.i)] || used_j[static_cast<std::size_t>(pr.j)]) continue;
            used_i[static_cast<std::size_t>(pr.i)] = used_j[static_cast<std::size_t>(pr.j)] = 1;
            res.greedy_matching_distance += pr.d;
            ++matched;
        }
    }

    // optimal: assignment of every child to a distinct parent
    {
        std::vector<double> cost(m * n);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i)
                cost[j * n + i] = std::abs(child.roots[j] - parent.roots[i]);
        std::vector<int> match;
        res.optimal_matching_distance =
            detail::solve_assignment(static_cast<int>(m), static_cast<int>(n), cost, match);
    }
    return res;
}

CoulombRunResult run_coulomb_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto* gas = std::get_if<CoulombGas>(&cfg.ensemble);
    if (!gas) throw ConfigError("coulomb experiment: ensemble model must be coulomb");

    const int n = cfg.n_grid.front();
    CoulombRunResult out;
    out.n = n;
    out.beta = gas->beta;
    out.master_seed = cfg.master_seed;
    out.config_echo = cfg.to_json_string();

    const std::uint64_t seed = derive_seed(cfg.master_seed, {kTagTrial, static_cast<std::uint64_t>(n), 6});
    const CoulombChainResult chain = run_coulomb_chain(gas->potential, gas->beta, n, gas->mcmc, seed);
    out.points = chain.points;
    out.mean_acceptance = chain.mean_acceptance;
    out.final_stddev = chain.final_stddev;
    out.energy_trace = chain.energy_trace;
    out.acceptance_trace = chain.acceptance_trace;

    const EquilibriumMeasure eq = equilibrium_radial(gas->potential);
    out.r_inner = eq.r_inner;
    out.r_outer = eq.r_outer;
    out.robin_constant = eq.robin_constant;
    out.ks = ks_radial(out.points, eq);

    const EmpiricalMeasure target = discretize_radial(eq, cfg.n_ref);
    const W1Estimate w1 = compute_distance(EmpiricalMeasure::of(out.points), target, cfg.distance,
                                           derive_seed(seed, {kTagDistance, 3}));
    out.w1_to_equilibrium = w1.value;
    out.w1_error = w1.error;
    out.w1_method = w1.method;
    return out;
}

} // namespace derivzeros
