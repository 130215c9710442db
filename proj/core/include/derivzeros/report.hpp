#pragma once

#include <string>
#include <vector>

#include "derivzeros/config.hpp"
#include "derivzeros/root_set.hpp"

namespace derivzeros {

struct TrialRecord {
    int n = 0, k = 0, trial = 0;
    std::uint64_t seed = 0;
    std::string model;
    double w1_parent = 0.0, w1_parent_err = 0.0;
    std::string w1_parent_method;
    double w1_target = 0.0, w1_target_err = 0.0;
    std::string w1_target_method;
    double resid_log_max = 0.0, resid_log_median = 0.0;
    int unconverged = 0;
    int child_count = 0;
    int solver_iterations = 0;
    double wall_ms = 0.0; // written to the timings sidecar only, never to the report
};

struct AggregateRecord {
    int n = 0, k = 0;
    double median_w1_parent = 0.0;
    double median_w1_target = 0.0;
};

struct ScatterData {
    int n = 0, k = 0;
    std::vector<Complex> parent, child;
};

/// Convergence-study report, schema "derivzeros-report/1". Byte-identical
/// for identical (config, master_seed) regardless of thread count; wall times
/// go to a separate timings.csv sidecar.
struct Report {
    std::string schema_version = "derivzeros-report/1";
    std::string kind = "converge";
    std::uint64_t master_seed = 0;
    std::string config_echo;
    std::vector<TrialRecord> records;
    std::vector<AggregateRecord> aggregates;
    double target_floor = 0.0; // self-distance of the discretized target
    std::string target_floor_method;
    std::vector<ScatterData> scatters;
    std::vector<std::string> notes; // regime tags and diagnostics

    double unconverged_fraction() const;
};

struct ProbeSmallRow {
    Complex z;
    int n = 0;
    int trials = 0;
    int hits = 0;
    double frequency = 0.0;
    int resampled = 0;
};

struct ProbeSmallResult {
    std::uint64_t master_seed = 0;
    int k = 1;
    double epsilon = 0.1;
    std::string config_echo;
    std::vector<ProbeSmallRow> rows;
};

struct ProbeTightRow {
    int n = 0;
    int trial = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    int resampled = 0;
};

struct ProbeTightResult {
    std::uint64_t master_seed = 0;
    int k = 1;
    double disk_radius = 2.0;
    int mc_points = 0;
    std::string config_echo;
    std::vector<ProbeTightRow> rows;
};

struct PairingResult {
    int parent_size = 0, child_size = 0;
    double greedy_matching_distance = 0.0;  // sum over greedily matched pairs
    double optimal_matching_distance = 0.0; // sum over the optimal (trimmed) matching
    std::vector<double> hist_edges;         // bins of n * (nearest-child distance)
    std::vector<int> hist_counts;
    std::vector<double> nearest_distances; // per parent zero
};

struct CoulombRunResult {
    int n = 0;
    double beta = 1.0;
    double ks = 0.0;
    double w1_to_equilibrium = 0.0, w1_error = 0.0;
    std::string w1_method;
    double mean_acceptance = 0.0, final_stddev = 0.0;
    double r_inner = 0.0, r_outer = 1.0, robin_constant = 0.0;
    std::vector<double> energy_trace, acceptance_trace;
    RootSet points;
    std::string config_echo;
    std::uint64_t master_seed = 0;
};

void emit_report(const Report& report, const OutputConfig& out);
void emit_probe_small(const ProbeSmallResult& result, const OutputConfig& out);
void emit_probe_tight(const ProbeTightResult& result, const OutputConfig& out);
void emit_pairing(const PairingResult& result, const OutputConfig& out);
void emit_coulomb(const CoulombRunResult& result, const OutputConfig& out);

} // namespace derivzeros
