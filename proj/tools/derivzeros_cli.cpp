// Command-line front end: sample | roots | converge | coulomb | probe-small |
// probe-tight | pairing | equilibrium. Exit codes: 0 success, 2 config error,
// 3 numerical failure beyond the flagged-record tolerance.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "derivzeros/config.hpp"
#include "derivzeros/equilibrium.hpp"
#include "derivzeros/experiments.hpp"
#include "derivzeros/points_io.hpp"
#include "derivzeros/rootfind.hpp"

namespace dz = derivzeros;

namespace {

constexpr double kUnconvergedTolerance = 0.10;

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir;
    int threads = 1;
    std::string format;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "JSON experiment config")->required();
    cmd->add_option("--seed", a.seed, "master seed override")->each([&a](const std::string&) {
        a.seed_set = true;
    });
    cmd->add_option("--out", a.out_dir, "output directory override");
    cmd->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--format", a.format, "csv|json|svg|all")
        ->check(CLI::IsMember({"csv", "json", "svg", "all"}));
}

dz::ExperimentConfig load_config(const CommonArgs& a) {
    dz::ExperimentConfig cfg = dz::ExperimentConfig::from_json_file(a.config_path);
    if (a.seed_set) cfg.master_seed = a.seed;
    if (!a.out_dir.empty()) cfg.output.dir = a.out_dir;
    if (!a.format.empty()) cfg.output.formats = {a.format};
    cfg.validate();
    return cfg;
}

int cmd_sample(const CommonArgs& a) {
    const dz::ExperimentConfig cfg = load_config(a);
    const int n = cfg.n_grid.front();
    const dz::RootSet p = dz::sample(dz::with_degree(cfg.ensemble, n), cfg.master_seed);
    std::filesystem::create_directories(cfg.output.dir);
    dz::write_points(cfg.output.dir + "/sample.txt", dz::EmpiricalMeasure::of(p));
    std::printf("sampled %s: degree %d -> %s/sample.txt\n", dz::model_name(cfg.ensemble).c_str(),
                p.degree(), cfg.output.dir.c_str());
    return 0;
}

int cmd_roots(const CommonArgs& a) {
    const dz::ExperimentConfig cfg = load_config(a);
    const int n = cfg.n_grid.front();
    const int k = cfg.k_list.front();
    const dz::RootSet p = dz::sample(dz::with_degree(cfg.ensemble, n), cfg.master_seed);
    const dz::RootResult rr = dz::kth_derivative_roots(p, k, cfg.solver);
    std::filesystem::create_directories(cfg.output.dir);
    dz::write_points(cfg.output.dir + "/parent.txt", dz::EmpiricalMeasure::of(p));
    dz::write_points(cfg.output.dir + "/roots.txt", dz::EmpiricalMeasure::of(rr.roots));
    std::printf("degree %d, k=%d: %d roots, %d unconverged, iterations %d, "
                "log-residual median %.3f max %.3f\n",
                p.degree(), k, rr.roots.degree(), rr.unconverged_count(), rr.iterations,
                rr.residual_log_median, rr.residual_log_max);
    const double frac =
        rr.roots.degree() ? static_cast<double>(rr.unconverged_count()) / rr.roots.degree() : 0.0;
    return frac > kUnconvergedTolerance ? 3 : 0;
}

int cmd_converge(const CommonArgs& a) {
    const dz::ExperimentConfig cfg = load_config(a);
    dz::RunOptions opts;
    opts.threads = a.threads;
    const dz::Report report = dz::run_convergence(cfg, opts);
    dz::emit_report(report, cfg.output);
    for (const dz::AggregateRecord& agg : report.aggregates)
        std::printf("n=%5d k=%d  median W1(child,parent)=%.6f  median W1(child,target)=%.6f\n",
                    agg.n, agg.k, agg.median_w1_parent, agg.median_w1_target);
    std::printf("target discretization floor: %.6f (%s)\n", report.target_floor,
                report.target_floor_method.c_str());
    return report.unconverged_fraction() > kUnconvergedTolerance ? 3 : 0;
}

int cmd_coulomb(const CommonArgs& a) {
    const dz::ExperimentConfig cfg = load_config(a);
    const dz::CoulombRunResult res = dz::run_coulomb_experiment(cfg);
    dz::emit_coulomb(res, cfg.output);
    std::printf("coulomb n=%d beta=%.3g: KS=%.4f  W1(mu_n, sigma_Q)=%.4f (%s)  acc=%.2f\n", res.n,
                res.beta, res.ks, res.w1_to_equilibrium, res.w1_method.c_str(),
                res.mean_acceptance);
    return 0;
}

int cmd_probe_small(const CommonArgs& a) {
    const dz::ExperimentConfig cfg = load_config(a);
    const dz::ProbeSmallResult res = dz::probe_small_values(cfg);
    dz::emit_probe_small(res, cfg.output);
    for (const dz::ProbeSmallRow& r : res.rows)
        std::printf("z=(%.3f,%.3f) n=%5d  freq=%.4f (%d/%d)\n", r.z.real(), r.z.imag(), r.n,
                    r.frequency, r.hits, r.trials);
    return 0;
}

int cmd_probe_tight(const CommonArgs& a) {
    const dz::ExperimentConfig cfg = load_config(a);
    const dz::ProbeTightResult res = dz::probe_tightness(cfg);
    dz::emit_probe_tight(res, cfg.output);
    for (const dz::ProbeTightRow& r : res.rows)
        std::printf("n=%5d trial=%d  estimate=%.6g +- %.2g\n", r.n, r.trial, r.estimate,
                    r.std_error);
    return 0;
}

int cmd_pairing(const CommonArgs& a) {
    const dz::ExperimentConfig cfg = load_config(a);
    const int n = cfg.n_grid.front();
    const int k = cfg.k_list.front();
    const dz::RootSet p = dz::sample(dz::with_degree(cfg.ensemble, n), cfg.master_seed);
    const dz::RootResult rr = dz::kth_derivative_roots(p, k, cfg.solver);
    const dz::PairingResult res = dz::pairing_stats(p, rr.roots);
    dz::emit_pairing(res, cfg.output);
    std::printf("pairing n=%d k=%d: greedy sum=%.4f optimal sum=%.4f\n", res.parent_size, k,
                res.greedy_matching_distance, res.optimal_matching_distance);
    int below10 = 0;
    for (double d : res.nearest_distances)
        if (res.parent_size * d <= 10.0) ++below10;
    std::printf("fraction with n*d <= 10: %.3f\n",
                static_cast<double>(below10) / std::max(1, res.parent_size));
    return 0;
}

int cmd_equilibrium(const CommonArgs& a) {
    const dz::ExperimentConfig cfg = load_config(a);
    const auto* gas = std::get_if<dz::CoulombGas>(&cfg.ensemble);
    if (!gas) throw dz::ConfigError("equilibrium: ensemble model must be coulomb");
    const dz::EquilibriumMeasure eq = dz::equilibrium_radial(gas->potential);
    std::filesystem::create_directories(cfg.output.dir);
    std::ofstream os(cfg.output.dir + "/equilibrium.csv", std::ios::binary);
    os << "r,density,cdf\n";
    char buf[128];
    for (int i = 0; i <= 256; ++i) {
        const double r = eq.r_outer * 1.2 * i / 256.0;
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", r, eq.density(r),
                      dz::radial_cdf(eq, r));
        os << buf;
    }
    std::printf("alpha=%.3g nu=%.3g: droplet [%.9g, %.9g], density(r_out)=%.9g, F_Q=%.9g, "
                "mass=%.12f\n",
                gas->potential.alpha, gas->potential.nu, eq.r_inner, eq.r_outer,
                eq.density(eq.r_outer), eq.robin_constant, eq.mass());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for zeros of random polynomials and their derivatives"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* c_sample = app.add_subcommand("sample", "draw one ensemble instance to a points file");
    auto* c_roots = app.add_subcommand("roots", "compute k-th derivative zeros of one instance");
    auto* c_converge = app.add_subcommand("converge", "W1 convergence study over n_grid x k_list");
    auto* c_coulomb = app.add_subcommand("coulomb", "run the Coulomb gas chain with validation");
    auto* c_psmall = app.add_subcommand("probe-small", "small-value probe of L_n^k");
    auto* c_ptight = app.add_subcommand("probe-tight", "tightness probe of (1/n^2) log^2 |P^(k)/P|");
    auto* c_pairing = app.add_subcommand("pairing", "zero/derivative-zero pairing diagnostics");
    auto* c_eq = app.add_subcommand("equilibrium", "radial equilibrium measure of a potential");
    for (CLI::App* c : {c_sample, c_roots, c_converge, c_coulomb, c_psmall, c_ptight, c_pairing, c_eq})
        add_common(c, args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_sample->parsed()) return cmd_sample(args);
        if (c_roots->parsed()) return cmd_roots(args);
        if (c_converge->parsed()) return cmd_converge(args);
        if (c_coulomb->parsed()) return cmd_coulomb(args);
        if (c_psmall->parsed()) return cmd_probe_small(args);
        if (c_ptight->parsed()) return cmd_probe_tight(args);
        if (c_pairing->parsed()) return cmd_pairing(args);
        if (c_eq->parsed()) return cmd_equilibrium(args);
    } catch (const dz::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dz::InvalidSpec& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dz::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const dz::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
