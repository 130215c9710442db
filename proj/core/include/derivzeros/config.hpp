#pragma once

#include <string>
#include <vector>

#include "derivzeros/ensembles.hpp"
#include "derivzeros/rootfind.hpp"
#include "derivzeros/transport.hpp"

namespace derivzeros {

/// How W1 records are computed. `auto_select` picks the exact flow when the
/// instance fits the budget, the assignment solver when both measures are
/// uniform, and subsampling otherwise; every record is labeled with the
/// method actually used, so nothing switches silently.
struct DistanceConfig {
    enum class Method { Exact, Assignment, Subsample, Entropic, Auto };
    Method method = Method::Auto;
    int subsample_size = 512;
    int bootstrap = 8;
    double epsilon = 0.02;
};

struct ProbeConfig {
    // Fixed probe points keep cross-run comparisons meaningful; extra points
    // are seeded uniform draws from the disk of radius `disk_radius`.
    std::vector<Complex> z_points{{2.0, 0.0}, {1.0, 1.0}, {0.3, -0.7}, {-1.5, 0.0}};
    int extra_random_z = 4;
    double epsilon = 0.1;
    double disk_radius = 2.0;
    int mc_points = 2048;
    int k = 1;
};

struct OutputConfig {
    std::string dir = "out";
    std::vector<std::string> formats{"csv", "json"}; // csv | json | svg | all
};

struct ExperimentConfig {
    static constexpr const char* kSchemaVersion = "derivzeros-config/1";

    EnsembleSpec ensemble = IidZeros{MeasureSpec{}, 0}; // n filled from n_grid
    std::vector<int> k_list{1};
    std::vector<int> n_grid{128};
    int trials = 1;
    std::uint64_t master_seed = 1;
    int n_ref = 4096; // target-measure discretization size

    DistanceConfig distance;
    ProbeConfig probe;
    AberthConfig solver;
    OutputConfig output;

    void validate() const;

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_string(const std::string& text);

    /// Canonical re-serialization (echoed into reports).
    std::string to_json_string() const;
};

} // namespace derivzeros
