#include "derivzeros/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "derivzeros/rng.hpp"

namespace derivzeros {

namespace detail {

double solve_assignment(int nr, int nc, const std::vector<double>& cost,
                        std::vector<int>& col_of_row) {
    if (nr > nc) throw InvalidSpec("assignment: rows must not exceed columns");
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(static_cast<std::size_t>(nr), 0.0);
    std::vector<double> v(static_cast<std::size_t>(nc), 0.0);
    std::vector<double> shortest(static_cast<std::size_t>(nc));
    std::vector<int> path(static_cast<std::size_t>(nc), -1);
    std::vector<int> row_of_col(static_cast<std::size_t>(nc), -1);
    std::vector<char> sr(static_cast<std::size_t>(nr));
    std::vector<char> sc(static_cast<std::size_t>(nc));
    std::vector<int> remaining(static_cast<std::size_t>(nc));
    col_of_row.assign(static_cast<std::size_t>(nr), -1);

    for (int cur_row = 0; cur_row < nr; ++cur_row) {
        double min_val = 0.0;
        int i = cur_row;
        std::fill(sr.begin(), sr.end(), 0);
        std::fill(sc.begin(), sc.end(), 0);
        std::fill(shortest.begin(), shortest.end(), inf);
        int num_remaining = nc;
        for (int it = 0; it < nc; ++it) remaining[static_cast<std::size_t>(it)] = nc - it - 1;

        int sink = -1;
        while (sink == -1) {
            sr[static_cast<std::size_t>(i)] = 1;
            const double* crow = cost.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(nc);
            const double ui = u[static_cast<std::size_t>(i)];
            int index = -1;
            double lowest = inf;
            for (int it = 0; it < num_remaining; ++it) {
                const int j = remaining[static_cast<std::size_t>(it)];
                const double r = min_val + crow[j] - ui - v[static_cast<std::size_t>(j)];
                if (r < shortest[static_cast<std::size_t>(j)]) {
                    path[static_cast<std::size_t>(j)] = i;
                    shortest[static_cast<std::size_t>(j)] = r;
                }
                const double sj = shortest[static_cast<std::size_t>(j)];
                if (sj < lowest ||
                    (sj == lowest && row_of_col[static_cast<std::size_t>(j)] == -1)) {
                    lowest = sj;
                    index = it;
                }
            }
            min_val = lowest;
            if (!(min_val < inf)) throw Error("assignment: no augmenting path (infeasible)");
            const int j = remaining[static_cast<std::size_t>(index)];
            if (row_of_col[static_cast<std::size_t>(j)] == -1)
                sink = j;
            else
                i = row_of_col[static_cast<std::size_t>(j)];
            sc[static_cast<std::size_t>(j)] = 1;
            remaining[static_cast<std::size_t>(index)] = remaining[static_cast<std::size_t>(--num_remaining)];
        }

        u[static_cast<std::size_t>(cur_row)] += min_val;
        for (int ip = 0; ip < nr; ++ip) {
            if (sr[static_cast<std::size_t>(ip)] && ip != cur_row)
                u[static_cast<std::size_t>(ip)] +=
                    min_val - shortest[static_cast<std::size_t>(col_of_row[static_cast<std::size_t>(ip)])];
        }
        for (int j = 0; j < nc; ++j)
            if (sc[static_cast<std::size_t>(j)])
                v[static_cast<std::size_t>(j)] -= min_val - shortest[static_cast<std::size_t>(j)];

        int j = sink;
        while (true) {
            const int ip = path[static_cast<std::size_t>(j)];
            row_of_col[static_cast<std::size_t>(j)] = ip;
            std::swap(col_of_row[static_cast<std::size_t>(ip)], j);
            if (ip == cur_row) break;
        }
    }

    double total = 0.0;
    for (int i = 0; i < nr; ++i)
        total += cost[static_cast<std::size_t>(i) * static_cast<std::size_t>(nc) +
                      static_cast<std::size_t>(col_of_row[static_cast<std::size_t>(i)])];
    return total;
}

double solve_transport(const std::vector<std::int64_t>& supplies,
                       const std::vector<std::int64_t>& demands,
                       const std::vector<double>& cost) {
    const int n = static_cast<int>(supplies.size());
    const int m = static_cast<int>(demands.size());
    if (cost.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(m))
        throw InvalidSpec("transport: cost matrix size mismatch");
    const std::int64_t total_supply = std::accumulate(supplies.begin(), supplies.end(), std::int64_t{0});
    const std::int64_t total_demand = std::accumulate(demands.begin(), demands.end(), std::int64_t{0});
    if (total_supply != total_demand) throw InvalidSpec("transport: unbalanced masses");

    // Node layout: sources 0..n-1, sinks n..n+m-1. Forward arcs have
    // unbounded residual; backward residual equals the shipped flow.
    const int nodes = n + m;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> excess(supplies);
    std::vector<std::int64_t> deficit(demands);
    std::vector<std::int64_t> flow(cost.size(), 0);
    std::vector<double> pot(static_cast<std::size_t>(nodes), 0.0);
    std::vector<double> dist(static_cast<std::size_t>(nodes));
    std::vector<int> prev(static_cast<std::size_t>(nodes));
    std::vector<char> done(static_cast<std::size_t>(nodes));

    auto any_excess = [&] {
        for (int i = 0; i < n; ++i)
            if (excess[static_cast<std::size_t>(i)] > 0) return true;
        return false;
    };

    while (any_excess()) {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(prev.begin(), prev.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        // Virtual super-source: seeding at max_pot - pot keeps every reduced
        // arc nonnegative across rounds (all-zero seeds are only valid while
        // the source potentials agree).
        double pmax = -inf;
        for (int i = 0; i < n; ++i)
            if (excess[static_cast<std::size_t>(i)] > 0)
                pmax = std::max(pmax, pot[static_cast<std::size_t>(i)]);
        for (int i = 0; i < n; ++i)
            if (excess[static_cast<std::size_t>(i)] > 0)
                dist[static_cast<std::size_t>(i)] = pmax - pot[static_cast<std::size_t>(i)];

        int sink = -1;
        // lazy-deletion heap; near-paired instances settle a deficit sink
        // after exploring a handful of nodes
        std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                            std::greater<>>
            heap;
        for (int x = 0; x < nodes; ++x)
            if (dist[static_cast<std::size_t>(x)] < inf) heap.push({dist[static_cast<std::size_t>(x)], x});
        for (;;) {
            int bst = -1;
            while (!heap.empty()) {
                const auto [d, x] = heap.top();
                heap.pop();
                if (!done[static_cast<std::size_t>(x)] && d <= dist[static_cast<std::size_t>(x)]) {
                    bst = x;
                    break;
                }
            }
            if (bst == -1) break;
            done[static_cast<std::size_t>(bst)] = 1;
            if (bst >= n && deficit[static_cast<std::size_t>(bst - n)] > 0) {
                sink = bst;
                break;
            }
            if (bst < n) {
                const int i = bst;
                const double* crow = cost.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
                for (int j = 0; j < m; ++j) {
                    const int node = n + j;
                    if (done[static_cast<std::size_t>(node)]) continue;
                    double rc = crow[j] + pot[static_cast<std::size_t>(i)] - pot[static_cast<std::size_t>(node)];
                    if (rc < 0.0) rc = 0.0; // fp slack
                    const double nd = dist[static_cast<std::size_t>(i)] + rc;
                    if (nd < dist[static_cast<std::size_t>(node)]) {
                        dist[static_cast<std::size_t>(node)] = nd;
                        prev[static_cast<std::size_t>(node)] = i;
                        heap.push({nd, node});
                    }
                }
            } else {
                const int j = bst - n;
                for (int i = 0; i < n; ++i) {
                    if (done[static_cast<std::size_t>(i)]) continue;
                    if (flow[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] <= 0)
                        continue;
                    double rc = -cost[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] +
                                pot[static_cast<std::size_t>(bst)] - pot[static_cast<std::size_t>(i)];
                    if (rc < 0.0) rc = 0.0;
                    const double nd = dist[static_cast<std::size_t>(bst)] + rc;
                    if (nd < dist[static_cast<std::size_t>(i)]) {
                        dist[static_cast<std::size_t>(i)] = nd;
                        prev[static_cast<std::size_t>(i)] = bst;
                        heap.push({nd, i});
                    }
                }
            }
        }
        if (sink == -1) throw Error("transport: no augmenting path");

        // Every node advances by min(dist, d_sink); unreached nodes (dist inf)
        // move by d_sink too, or flowed arcs into the reached region would go
        // negative in reduced cost.
        const double d_sink = dist[static_cast<std::size_t>(sink)];
        for (int x = 0; x < nodes; ++x)
            pot[static_cast<std::size_t>(x)] += std::min(dist[static_cast<std::size_t>(x)], d_sink);

        // Bottleneck along the path.
        std::int64_t amount = deficit[static_cast<std::size_t>(sink - n)];
        for (int x = sink; prev[static_cast<std::size_t>(x)] != -1; x = prev[static_cast<std::size_t>(x)]) {
            const int p = prev[static_cast<std::size_t>(x)];
            if (p >= n) { // backward arc sink->source segment: x is source
                amount = std::min(
                    amount, flow[static_cast<std::size_t>(x) * static_cast<std::size_t>(m) + static_cast<std::size_t>(p - n)]);
            }
        }
        {
            int x = sink;
            while (prev[static_cast<std::size_t>(x)] != -1) x = prev[static_cast<std::size_t>(x)];
            amount = std::min(amount, excess[static_cast<std::size_t>(x)]);
        }

        int x = sink;
        while (prev[static_cast<std::size_t>(x)] != -1) {
            const int p = prev[static_cast<std::size_t>(x)];
            if (p < n && x >= n)
                flow[static_cast<std::size_t>(p) * static_cast<std::size_t>(m) + static_cast<std::size_t>(x - n)] += amount;
            else if (p >= n && x < n)
                flow[static_cast<std::size_t>(x) * static_cast<std::size_t>(m) + static_cast<std::size_t>(p - n)] -= amount;
            x = p;
        }
        excess[static_cast<std::size_t>(x)] -= amount;
        deficit[static_cast<std::size_t>(sink - n)] -= amount;
    }

    double total = 0.0;
    for (std::size_t idx = 0; idx < flow.size(); ++idx)
        if (flow[idx] > 0) total += static_cast<double>(flow[idx]) * cost[idx];
    return total;
}

namespace {

std::vector<double> distance_matrix(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<double> c(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Complex ai = a[i];
        double* row = c.data() + i * b.size();
        for (std::size_t j = 0; j < b.size(); ++j) row[j] = std::abs(ai - b[j]);
    }
    return c;
}

std::vector<std::int64_t> integer_supplies(const std::vector<double>& w, std::int64_t scale) {
    std::vector<std::int64_t> s(w.size());
    std::int64_t total = 0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        s[i] = std::max<std::int64_t>(1, std::llround(w[i] * static_cast<double>(scale)));
        total += s[i];
        if (w[i] > w[largest]) largest = i;
    }
    s[largest] += scale - total; // largest-remainder fixup
    if (s[largest] <= 0) throw InvalidSpec("transport: weight scaling failed");
    return s;
}

} // namespace

} // namespace detail

double wasserstein1_exact(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
    mu.validate();
    nu.validate();
    if (mu.size() + nu.size() > kExactTransportBudget)
        throw SizeTooLarge("wasserstein1_exact: instance exceeds the exact-solver budget");

    const bool uniform = mu.is_uniform() && nu.is_uniform();
    if (uniform && mu.size() == nu.size()) {
        // Equal uniform masses: the transport LP has an assignment vertex.
        std::vector<double> cost = detail::distance_matrix(mu.points, nu.points);
        std::vector<int> match;
        const double total = detail::solve_assignment(
            static_cast<int>(mu.size()), static_cast<int>(nu.size()), cost, match);
        return total / static_cast<double>(mu.size());
    }

    const int n = static_cast<int>(mu.size());
    const int m = static_cast<int>(nu.size());
    std::vector<std::int64_t> s, d;
    double descale = 0.0;
    if (uniform) {
        s.assign(static_cast<std::size_t>(n), m);
        d.assign(static_cast<std::size_t>(m), n);
        descale = static_cast<double>(n) * static_cast<double>(m);
    } else {
        const std::int64_t scale = std::int64_t{1} << 40;
        s = detail::integer_supplies(mu.weights, scale);
        d = detail::integer_supplies(nu.weights, scale);
        descale = static_cast<double>(scale);
    }
    const std::vector<double> cost = detail::distance_matrix(mu.points, nu.points);
    return detail::solve_transport(s, d, cost) / descale;
}

namespace {

EmpiricalMeasure subsample(const EmpiricalMeasure& mu, int size, Rng& rng) {
    const int n = static_cast<int>(mu.size());
    if (n <= size && mu.is_uniform()) return mu;
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(size));
    if (mu.is_uniform()) {
        // without replacement (partial Fisher-Yates)
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < size; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) + rng.uniform_int(static_cast<std::uint64_t>(n - i));
            std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
            pts.push_back(mu.points[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        }
    } else {
        // weighted draws with replacement
        std::vector<double> cdf(mu.weights.size());
        std::partial_sum(mu.weights.begin(), mu.weights.end(), cdf.begin());
        for (int i = 0; i < size; ++i) {
            const double u = rng.uniform01() * cdf.back();
            const std::size_t j = static_cast<std::size_t>(
                std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            pts.push_back(mu.points[std::min(j, mu.points.size() - 1)]);
        }
    }
    return EmpiricalMeasure::uniform(std::move(pts));
}

// Log-domain Sinkhorn potentials for OT_eps(a, b); returns the dual value.
// symmetric=true runs the averaged fixed point used for the self terms.
double sinkhorn_dual(const std::vector<Complex>& pa, const std::vector<double>& wa,
                     const std::vector<Complex>& pb, const std::vector<double>& wb, double eps,
                     int max_iters, double tol, bool symmetric, double& marginal_gap) {
    const std::size_t n = pa.size(), m = pb.size();
    const std::vector<double> cost = detail::distance_matrix(pa, pb);
    std::vector<double> f(n, 0.0), g(m, 0.0), scratch(std::max(n, m));
    std::vector<double> la(n), lb(m);
    for (std::size_t i = 0; i < n; ++i) la[i] = std::log(wa[i]);
    for (std::size_t j = 0; j < m; ++j) lb[j] = std::log(wb[j]);

    auto lse_row = [&](std::size_t i) {
        // -eps * log sum_j exp((g_j - C_ij)/eps + log wb_j)
        double mx = -std::numeric_limits<double>::infinity();
        const double* crow = cost.data() + i * m;
        for (std::size_t j = 0; j < m; ++j) {
            scratch[j] = (g[j] - crow[j]) / eps + lb[j];
            mx = std::max(mx, scratch[j]);
        }
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += std::exp(scratch[j] - mx);
        return -eps * (mx + std::log(s));
    };
    auto lse_col = [&](std::size_t j) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            scratch[i] = (f[i] - cost[i * m + j]) / eps + la[i];
            mx = std::max(mx, scratch[i]);
        }
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::exp(scratch[i] - mx);
        return -eps * (mx + std::log(s));
    };

    marginal_gap = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iters; ++it) {
        if (symmetric) {
            double delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double nf = 0.5 * (f[i] + lse_row(i));
                delta = std::max(delta, std::fabs(nf - f[i]));
                f[i] = nf;
            }
            g = f; // self term: both marginals share the potential
            marginal_gap = delta;
            if (delta < tol) break;
        } else {
            for (std::size_t i = 0; i < n; ++i) f[i] = lse_row(i);
            double delta = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double ng = lse_col(j);
                delta = std::max(delta, std::fabs(ng - g[j]));
                g[j] = ng;
            }
            marginal_gap = delta;
            if (delta < tol) break;
        }
    }
    double val = 0.0;
    for (std::size_t i = 0; i < n; ++i) val += wa[i] * f[i];
    for (std::size_t j = 0; j < m; ++j) val += wb[j] * g[j];
    return val;
}

W1Estimate estimate_entropic(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                             const W1EstimateConfig& cfg) {
    double gap_ab = 0.0, gap_aa = 0.0, gap_bb = 0.0;
    const double ot_ab = sinkhorn_dual(mu.points, mu.weights, nu.points, nu.weights, cfg.epsilon,
                                       cfg.max_sinkhorn_iters, cfg.sinkhorn_tol, false, gap_ab);
    const double ot_aa = sinkhorn_dual(mu.points, mu.weights, mu.points, mu.weights, cfg.epsilon,
                                       cfg.max_sinkhorn_iters, cfg.sinkhorn_tol, true, gap_aa);
    const double ot_bb = sinkhorn_dual(nu.points, nu.weights, nu.points, nu.weights, cfg.epsilon,
                                       cfg.max_sinkhorn_iters, cfg.sinkhorn_tol, true, gap_bb);
    const double gap = std::max({gap_ab, gap_aa, gap_bb});
    if (!(gap < 1e3 * cfg.sinkhorn_tol))
        throw NoConvergence("wasserstein1_estimate: Sinkhorn fixed point stalled");
    W1Estimate e;
    e.value = std::max(0.0, ot_ab - 0.5 * ot_aa - 0.5 * ot_bb);
    e.error = gap;
    e.method = "entropic";
    return e;
}

W1Estimate estimate_assignment(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
    if (!mu.is_uniform() || !nu.is_uniform())
        throw InvalidSpec("wasserstein1_estimate: assignment method needs uniform weights");
    const std::vector<Complex>* small = &mu.points;
    const std::vector<Complex>* large = &nu.points;
    if (small->size() > large->size()) std::swap(small, large);
    const std::size_t ns = small->size(), nl = large->size();

    W1Estimate e;
    e.method = "assignment";
    std::vector<int> match;
    if (nl % ns == 0) {
        // replicate the smaller side; exact mass split, exact W1
        const std::size_t r = nl / ns;
        std::vector<Complex> rep;
        rep.reserve(nl);
        for (const Complex& p : *small)
            for (std::size_t q = 0; q < r; ++q) rep.push_back(p);
        const std::vector<double> cost = detail::distance_matrix(rep, *large);
        e.value = detail::solve_assignment(static_cast<int>(nl), static_cast<int>(nl), cost, match) /
                  static_cast<double>(nl);
        e.error = 0.0;
        return e;
    }
    // optimal trim: match all of the smaller side, ignore the residual mass
    const std::vector<double> cost = detail::distance_matrix(*small, *large);
    const double total =
        detail::solve_assignment(static_cast<int>(ns), static_cast<int>(nl), cost, match);
    e.value = total / static_cast<double>(nl);
    double dmax = 0.0;
    for (std::size_t i = 0; i < ns; ++i)
        dmax = std::max(dmax, cost[i * nl + static_cast<std::size_t>(match[i])]);
    e.error = static_cast<double>(nl - ns) / static_cast<double>(nl) * std::max(dmax, 1.0);
    return e;
}

} // namespace

W1Estimate wasserstein1_estimate(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                                 const W1EstimateConfig& cfg) {
    mu.validate();
    nu.validate();
    switch (cfg.method) {
    case W1EstimateConfig::Method::Entropic:
        return estimate_entropic(mu, nu, cfg);
    case W1EstimateConfig::Method::Assignment:
        return estimate_assignment(mu, nu);
    case W1EstimateConfig::Method::Subsample:
        break;
    }
    Rng rng(derive_seed(cfg.seed, {0x577BULL}));
    // Equal-size uniform inputs share one index draw per bootstrap pair: a
    // coupling that keeps the estimator consistent and reports 0 for
    // identical measures.
    const bool paired =
        mu.is_uniform() && nu.is_uniform() && mu.size() == nu.size();
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(cfg.bootstrap));
    for (int b = 0; b < cfg.bootstrap; ++b) {
        // Both sides subsample to a common size, so every sub-instance is an
        // equal-size assignment problem (the fast exact path).
        const int common = std::min<int>(
            cfg.subsample_size, static_cast<int>(std::min(mu.size(), nu.size())));
        if (paired) {
            const int sz = common;
            std::vector<int> idx(mu.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::vector<Complex> pa, pb;
            pa.reserve(static_cast<std::size_t>(sz));
            pb.reserve(static_cast<std::size_t>(sz));
            for (int i = 0; i < sz; ++i) {
                const std::size_t j = static_cast<std::size_t>(i) +
                                      rng.uniform_int(static_cast<std::uint64_t>(mu.size() - static_cast<std::size_t>(i)));
                std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
                pa.push_back(mu.points[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
                pb.push_back(nu.points[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
            }
            vals.push_back(wasserstein1_exact(EmpiricalMeasure::uniform(std::move(pa)),
                                              EmpiricalMeasure::uniform(std::move(pb))));
        } else {
            const EmpiricalMeasure ma = subsample(mu, common, rng);
            const EmpiricalMeasure mb = subsample(nu, common, rng);
            vals.push_back(wasserstein1_exact(ma, mb));
        }
    }
    W1Estimate e;
    e.method = "subsample";
    for (double v : vals) e.value += v;
    e.value /= static_cast<double>(vals.size());
    if (vals.size() > 1) {
        double ss = 0.0;
        for (double v : vals) ss += (v - e.value) * (v - e.value);
        e.error = std::sqrt(ss / (static_cast<double>(vals.size()) - 1.0) /
                            static_cast<double>(vals.size()));
    }
    return e;
}

} // namespace derivzeros
