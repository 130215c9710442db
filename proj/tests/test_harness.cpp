#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "derivzeros/experiments.hpp"
#include "derivzeros/points_io.hpp"

using namespace derivzeros;
using Cx = std::complex<double>;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small_iid_config() {
    ExperimentConfig cfg;
    cfg.ensemble = IidZeros{MeasureSpec::uniform_disk(1.0), 0};
    cfg.k_list = {1};
    cfg.n_grid = {16, 32};
    cfg.trials = 3;
    cfg.master_seed = 7;
    cfg.n_ref = 256;
    return cfg;
}

} // namespace

TEST_CASE("config json round trip") {
    const std::string text = R"({
      "schema_version": "derivzeros-config/1",
      "ensemble": {"model": "iid", "mu": {"type": "uniform_disk", "radius": 1.0}},
      "k_list": [1, 2],
      "n_grid": [32, 64],
      "trials": 2,
      "master_seed": 11,
      "n_ref": 128,
      "distance": {"method": "auto"},
      "solver": {"tol": 1e-12, "max_iters": 150},
      "output": {"dir": "out_test", "formats": ["csv", "json"]}
    })";
    const ExperimentConfig cfg = ExperimentConfig::from_json_string(text);
    CHECK(cfg.k_list == std::vector<int>{1, 2});
    CHECK(cfg.n_grid == std::vector<int>{32, 64});
    CHECK(cfg.master_seed == 11);
    CHECK(cfg.solver.max_iters == 150);
    CHECK(model_name(cfg.ensemble) == "iid");
    // canonical echo reparses to the same canonical form
    const ExperimentConfig cfg2 = ExperimentConfig::from_json_string(cfg.to_json_string());
    CHECK(cfg2.to_json_string() == cfg.to_json_string());
}

TEST_CASE("config validation failures") {
    ExperimentConfig cfg = small_iid_config();
    cfg.k_list = {};
    CHECK_THROWS_AS(cfg.validate(), ConfigError); // empty k_list: error, no files
    cfg = small_iid_config();
    cfg.k_list = {40};
    CHECK_THROWS_AS(cfg.validate(), ConfigError); // max k >= min n
    cfg = small_iid_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_string("{ not json"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_string(
                        R"({"ensemble": {"model": "nope"}, "k_list": [1]})"),
                    ConfigError);
}

TEST_CASE("one-record report is well formed") {
    ExperimentConfig cfg = small_iid_config();
    cfg.n_grid = {8};
    cfg.trials = 1;
    const Report rep = run_convergence(cfg);
    REQUIRE(rep.records.size() == 1);
    const TrialRecord& r = rep.records[0];
    CHECK(r.n == 8);
    CHECK(r.k == 1);
    CHECK(r.trial == 0);
    CHECK(r.child_count == 7);
    CHECK(r.model == "iid");
    CHECK(r.w1_parent >= 0.0);
    CHECK(!r.w1_parent_method.empty());
    CHECK(rep.aggregates.size() == 1);
    CHECK(rep.schema_version == "derivzeros-report/1");
}

TEST_CASE("record count and trial independence") {
    ExperimentConfig cfg = small_iid_config();
    const Report rep = run_convergence(cfg);
    CHECK(rep.records.size() == cfg.n_grid.size() * cfg.k_list.size() *
                                   static_cast<std::size_t>(cfg.trials));
    // records are pure functions of (n, k, trial): a longer run reproduces
    // the shorter run's records verbatim
    ExperimentConfig more = cfg;
    more.trials = 5;
    const Report rep2 = run_convergence(more);
    for (const TrialRecord& r : rep.records) {
        bool found = false;
        for (const TrialRecord& s : rep2.records) {
            if (s.n == r.n && s.k == r.k && s.trial == r.trial) {
                found = true;
                CHECK(s.seed == r.seed);
                CHECK(s.w1_parent == r.w1_parent);
                CHECK(s.w1_target == r.w1_target);
            }
        }
        CHECK(found);
    }
}

TEST_CASE("determinism: byte-identical reports across runs and thread counts") {
    ExperimentConfig cfg = small_iid_config();
    cfg.output.formats = {"csv", "json"};

    RunOptions one;
    one.threads = 1;
    RunOptions eight;
    eight.threads = 8;
    OutputConfig out_a = cfg.output, out_b = cfg.output;
    out_a.dir = "harness_out_a";
    out_b.dir = "harness_out_b";
    emit_report(run_convergence(cfg, one), out_a);
    emit_report(run_convergence(cfg, eight), out_b);

    CHECK(slurp("harness_out_a/report.csv") == slurp("harness_out_b/report.csv"));
    CHECK(slurp("harness_out_a/report.json") == slurp("harness_out_b/report.json"));
    std::filesystem::remove_all("harness_out_a");
    std::filesystem::remove_all("harness_out_b");
}

TEST_CASE("negative control: uniform circle vs collapsed critical points") {
    ExperimentConfig cfg;
    ExplicitRoots ex;
    ex.kind = ExplicitRoots::Kind::RootsOfUnity;
    cfg.ensemble = ex;
    cfg.k_list = {1};
    cfg.n_grid = {256};
    cfg.trials = 1;
    cfg.n_ref = 256;
    const Report rep = run_convergence(cfg);
    REQUIRE(rep.records.size() == 1);
    // W1(M(P), M(P')) = 1: all derivative zeros sit at the origin
    CHECK(rep.records[0].w1_parent == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("probe_small_values on the iid disk model") {
    ExperimentConfig cfg = small_iid_config();
    cfg.n_grid = {100};
    cfg.trials = 40;
    cfg.probe.z_points = {Cx(2.0, 0.0)};
    cfg.probe.extra_random_z = 0;
    cfg.probe.epsilon = 0.1;
    const ProbeSmallResult res = probe_small_values(cfg);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].trials == 40);
    // |L_n^1(2)| concentrates near n/2; the small-value event never fires
    CHECK(res.rows[0].frequency == doctest::Approx(0.0));

    // sanity inversion: threshold e^{+n} dominates any sample
    ExperimentConfig inv = cfg;
    inv.probe.epsilon = -1.0;
    const ProbeSmallResult res2 = probe_small_values(inv);
    CHECK(res2.rows[0].frequency == doctest::Approx(1.0));
}

TEST_CASE("probe_tightness basics") {
    ExperimentConfig cfg = small_iid_config();
    cfg.n_grid = {64};
    cfg.trials = 2;
    cfg.probe.mc_points = 512;
    cfg.probe.disk_radius = 2.0;
    const ProbeTightResult res = probe_tightness(cfg);
    REQUIRE(res.rows.size() == 2);
    for (const ProbeTightRow& r : res.rows) {
        CHECK(std::isfinite(r.estimate));
        CHECK(r.estimate >= 0.0);
        CHECK(r.std_error >= 0.0);
    }
    // k = 0 degenerate: integrand identically zero
    ExperimentConfig zero = cfg;
    zero.probe.k = 0;
    const ProbeTightResult res0 = probe_tightness(zero);
    for (const ProbeTightRow& r : res0.rows) CHECK(r.estimate == 0.0);
}

TEST_CASE("pairing stats") {
    SUBCASE("hand-computed distances for the quadratic example") {
        const RootSet parent({Cx(0, 0), Cx(1, 0), Cx(2, 0)});
        const double s = 1.0 / std::sqrt(3.0);
        const RootSet child({Cx(1.0 - s, 0), Cx(1.0 + s, 0)});
        const PairingResult res = pairing_stats(parent, child);
        REQUIRE(res.nearest_distances.size() == 3);
        // endpoints sit 1 - 1/sqrt(3) from their critical point; the middle
        // zero is 1/sqrt(3) from both
        CHECK(res.nearest_distances[0] == doctest::Approx(1.0 - s).epsilon(1e-12));
        CHECK(res.nearest_distances[1] == doctest::Approx(s).epsilon(1e-12));
        CHECK(res.nearest_distances[2] == doctest::Approx(1.0 - s).epsilon(1e-12));
        CHECK(res.child_size == 2);
    }
    SUBCASE("child = parent minus one point matches at distance 0") {
        const RootSet parent({Cx(0, 0), Cx(1, 0), Cx(2, 0), Cx(3, 0)});
        const RootSet child({Cx(0, 0), Cx(1, 0), Cx(3, 0)});
        const PairingResult res = pairing_stats(parent, child);
        CHECK(res.greedy_matching_distance == doctest::Approx(0.0));
        CHECK(res.optimal_matching_distance == doctest::Approx(0.0));
    }
}

TEST_CASE("emit: formats, files, and byte determinism") {
    ExperimentConfig cfg = small_iid_config();
    cfg.n_grid = {16};
    cfg.trials = 1;
    cfg.output.dir = "harness_out_c";
    cfg.output.formats = {"all"};
    const Report rep = run_convergence(cfg);
    emit_report(rep, cfg.output);
    CHECK(std::filesystem::exists("harness_out_c/report.csv"));
    CHECK(std::filesystem::exists("harness_out_c/report.json"));
    CHECK(std::filesystem::exists("harness_out_c/timings.csv"));
    CHECK(std::filesystem::exists("harness_out_c/w1_curves.svg"));
    CHECK(std::filesystem::exists("harness_out_c/scatter_n16_k1.svg"));
    const std::string csv = slurp("harness_out_c/report.csv");
    CHECK(csv.find("n,k,trial,seed,model") == 0);
    std::filesystem::remove_all("harness_out_c");
}

TEST_CASE("convergence toward the target measure is monotone (desk scale)") {
    // factor-of-4 degree steps with a small reference cloud so every W1 is
    // exact; medians over 20 trials
    ExperimentConfig cfg;
    cfg.ensemble = IidZeros{MeasureSpec::uniform_disk(1.0), 0};
    cfg.k_list = {1};
    cfg.n_grid = {64, 256};
    cfg.trials = 20;
    cfg.master_seed = 2024;
    cfg.n_ref = 256;
    const Report rep = run_convergence(cfg);
    double m64 = 0, m256 = 0;
    for (const AggregateRecord& a : rep.aggregates) {
        if (a.n == 64) m64 = a.median_w1_target;
        if (a.n == 256) m256 = a.median_w1_target;
    }
    CHECK(m64 > 0.0);
    CHECK(m256 <= m64);
    // parent-child distance drops as well
    double p64 = 0, p256 = 0;
    for (const AggregateRecord& a : rep.aggregates) {
        if (a.n == 64) p64 = a.median_w1_parent;
        if (a.n == 256) p256 = a.median_w1_parent;
    }
    CHECK(p256 <= p64);
}

TEST_CASE("points file round trip") {
    const EmpiricalMeasure m = EmpiricalMeasure::uniform({Cx(0.5, -1.25), Cx(3, 4)});
    write_points("points_tmp.txt", m);
    const EmpiricalMeasure r = read_points("points_tmp.txt");
    REQUIRE(r.size() == 2);
    CHECK(r.points[0] == m.points[0]);
    CHECK(r.points[1] == m.points[1]);
    std::filesystem::remove("points_tmp.txt");
    CHECK_THROWS_AS(read_points("definitely_missing_file.txt"), IoError);
}
