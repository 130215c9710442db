#include "derivzeros/config.hpp"

#include <fstream>
#include <sstream>

#include "derivzeros/points_io.hpp"
#include <nlohmann/json.hpp>

namespace derivzeros {

using json = nlohmann::ordered_json;

namespace {

Complex parse_complex(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(std::string(what) + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

MeasureSpec parse_measure(const json& j);

std::shared_ptr<MeasureSpec> parse_measure_ptr(const json& j) {
    return std::make_shared<MeasureSpec>(parse_measure(j));
}

MeasureSpec parse_measure(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "uniform_disk") return MeasureSpec::uniform_disk(j.value("radius", 1.0));
    if (type == "uniform_circle") return MeasureSpec::uniform_circle(j.value("radius", 1.0));
    if (type == "complex_gaussian") return MeasureSpec::complex_gaussian(j.value("sigma", 1.0));
    if (type == "uniform_annulus")
        return MeasureSpec::uniform_annulus(j.value("r_in", 0.5), j.value("r_out", 1.0));
    if (type == "atom_mixture") {
        std::vector<AtomEntry> atoms;
        for (const auto& a : j.at("atoms"))
            atoms.push_back({parse_complex(a.at("point"), "atom point"), a.at("weight").get<double>()});
        std::shared_ptr<MeasureSpec> cont;
        const double cw = j.value("continuous_weight", 0.0);
        if (j.contains("continuous")) cont = parse_measure_ptr(j.at("continuous"));
        return MeasureSpec::atom_mixture(std::move(atoms), cw, std::move(cont));
    }
    if (type == "custom_grid") {
        return MeasureSpec::custom_grid(j.at("x0").get<double>(), j.at("y0").get<double>(),
                                        j.at("dx").get<double>(), j.at("dy").get<double>(),
                                        j.at("nx").get<int>(), j.at("ny").get<int>(),
                                        j.at("density").get<std::vector<double>>());
    }
    throw ConfigError("unknown measure type: " + type);
}

json measure_to_json(const MeasureSpec& m) {
    json j;
    switch (m.kind) {
    case MeasureSpec::Kind::UniformDisk:
        j["type"] = "uniform_disk";
        j["radius"] = m.radius;
        break;
    case MeasureSpec::Kind::UniformCircle:
        j["type"] = "uniform_circle";
        j["radius"] = m.radius;
        break;
    case MeasureSpec::Kind::ComplexGaussian:
        j["type"] = "complex_gaussian";
        j["sigma"] = m.sigma;
        break;
    case MeasureSpec::Kind::UniformAnnulus:
        j["type"] = "uniform_annulus";
        j["r_in"] = m.r_in;
        j["r_out"] = m.r_out;
        break;
    case MeasureSpec::Kind::AtomMixture: {
        j["type"] = "atom_mixture";
        json atoms = json::array();
        for (const AtomEntry& a : m.atoms)
            atoms.push_back({{"point", {a.point.real(), a.point.imag()}}, {"weight", a.weight}});
        j["atoms"] = std::move(atoms);
        if (m.continuous) {
            j["continuous_weight"] = m.continuous_weight;
            j["continuous"] = measure_to_json(*m.continuous);
        }
        break;
    }
    case MeasureSpec::Kind::CustomGrid:
        j["type"] = "custom_grid";
        j["x0"] = m.x0;
        j["y0"] = m.y0;
        j["dx"] = m.dx;
        j["dy"] = m.dy;
        j["nx"] = m.nx;
        j["ny"] = m.ny;
        j["density"] = m.grid_density;
        break;
    }
    return j;
}

SequenceSpec parse_sequence(const json& j) {
    SequenceSpec s;
    const std::string gen = j.value("generator", "frozen_iid");
    if (gen == "frozen_iid")
        s.generator = SequenceSpec::Generator::FrozenIid;
    else if (gen == "stratified")
        s.generator = SequenceSpec::Generator::Stratified;
    else if (gen == "explicit")
        s.generator = SequenceSpec::Generator::Explicit;
    else
        throw ConfigError("unknown sequence generator: " + gen);

    if (s.generator == SequenceSpec::Generator::Explicit) {
        if (j.contains("points_file")) {
            s.explicit_points = read_points(j.at("points_file").get<std::string>()).points;
        } else if (j.contains("points")) {
            for (const auto& p : j.at("points"))
                s.explicit_points.push_back(parse_complex(p, "sequence point"));
        } else {
            throw ConfigError("explicit sequence needs points or points_file");
        }
    } else {
        s.mu = parse_measure(j.at("mu"));
        s.seed = j.value("seed", std::uint64_t{0});
    }
    return s;
}

json sequence_to_json(const SequenceSpec& s) {
    json j;
    switch (s.generator) {
    case SequenceSpec::Generator::FrozenIid:
        j["generator"] = "frozen_iid";
        break;
    case SequenceSpec::Generator::Stratified:
        j["generator"] = "stratified";
        break;
    case SequenceSpec::Generator::Explicit:
        j["generator"] = "explicit";
        break;
    }
    if (s.generator == SequenceSpec::Generator::Explicit) {
        json pts = json::array();
        for (const Complex& p : s.explicit_points) pts.push_back({p.real(), p.imag()});
        j["points"] = std::move(pts);
    } else {
        j["mu"] = measure_to_json(s.mu);
        j["seed"] = s.seed;
    }
    return j;
}

RadialPotential parse_potential(const json& j) {
    RadialPotential p;
    p.alpha = j.value("alpha", 1.0);
    p.nu = j.value("nu", 0.0);
    p.validate();
    return p;
}

McmcConfig parse_mcmc(const json& j) {
    McmcConfig m;
    m.sweeps = j.value("sweeps", m.sweeps);
    m.burn_in = j.value("burn_in", m.burn_in);
    m.proposal_stddev = j.value("proposal_stddev", m.proposal_stddev);
    m.target_acceptance = j.value("target_acceptance", m.target_acceptance);
    m.adapt = j.value("adapt", m.adapt);
    m.thinning = j.value("thinning", m.thinning);
    m.chain_seed = j.value("chain_seed", std::uint64_t{0});
    m.validate();
    return m;
}

EnsembleSpec parse_ensemble(const json& j) {
    const std::string model = j.at("model").get<std::string>();
    const int n = j.value("n", 0);
    if (model == "iid") return IidZeros{parse_measure(j.at("mu")), n};
    if (model == "paired") return PairedChoice{parse_sequence(j.at("a")), parse_sequence(j.at("b")), n};
    if (model == "perturbed") {
        Perturbed p;
        p.z = parse_sequence(j.at("z"));
        p.noise = parse_measure(j.at("noise"));
        p.sigma_scale = j.value("sigma_scale", 1.0);
        p.sigma_exponent = j.value("sigma_exponent", 0.5);
        p.n = n;
        return p;
    }
    if (model == "remove_one") return RemoveOne{parse_sequence(j.at("z")), n};
    if (model == "augmented") {
        AugmentedDeterministic a;
        a.z = parse_sequence(j.at("z"));
        a.k_extra = j.value("k_extra", 1);
        a.extra = parse_measure(j.at("extra"));
        a.n = n;
        return a;
    }
    if (model == "coulomb") {
        CoulombGas c;
        c.potential = parse_potential(j.value("potential", json::object()));
        c.beta = j.value("beta", 1.0);
        c.mcmc = j.contains("mcmc") ? parse_mcmc(j.at("mcmc")) : McmcConfig{};
        c.n = n;
        return c;
    }
    if (model == "explicit_roots") {
        ExplicitRoots e;
        const std::string kind = j.value("kind", "roots_of_unity");
        if (kind == "roots_of_unity") {
            e.kind = ExplicitRoots::Kind::RootsOfUnity;
        } else if (kind == "point_list") {
            e.kind = ExplicitRoots::Kind::PointList;
            if (j.contains("points_file"))
                e.points = read_points(j.at("points_file").get<std::string>()).points;
            else
                for (const auto& p : j.at("points"))
                    e.points.push_back(parse_complex(p, "explicit root"));
        } else {
            throw ConfigError("unknown explicit_roots kind: " + kind);
        }
        e.n = n;
        return e;
    }
    throw ConfigError("unknown ensemble model: " + model);
}

json ensemble_to_json(const EnsembleSpec& spec) {
    json j;
    j["model"] = model_name(spec);
    std::visit(
        [&j](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, IidZeros>) {
                j["mu"] = measure_to_json(m.mu);
            } else if constexpr (std::is_same_v<T, PairedChoice>) {
                j["a"] = sequence_to_json(m.a);
                j["b"] = sequence_to_json(m.b);
            } else if constexpr (std::is_same_v<T, Perturbed>) {
                j["z"] = sequence_to_json(m.z);
                j["noise"] = measure_to_json(m.noise);
                j["sigma_scale"] = m.sigma_scale;
                j["sigma_exponent"] = m.sigma_exponent;
            } else if constexpr (std::is_same_v<T, RemoveOne>) {
                j["z"] = sequence_to_json(m.z);
            } else if constexpr (std::is_same_v<T, AugmentedDeterministic>) {
                j["z"] = sequence_to_json(m.z);
                j["k_extra"] = m.k_extra;
                j["extra"] = measure_to_json(m.extra);
            } else if constexpr (std::is_same_v<T, CoulombGas>) {
                j["potential"] = {{"alpha", m.potential.alpha}, {"nu", m.potential.nu}};
                j["beta"] = m.beta;
                j["mcmc"] = {{"sweeps", m.mcmc.sweeps},
                             {"burn_in", m.mcmc.burn_in},
                             {"proposal_stddev", m.mcmc.proposal_stddev},
                             {"target_acceptance", m.mcmc.target_acceptance},
                             {"adapt", m.mcmc.adapt},
                             {"thinning", m.mcmc.thinning},
                             {"chain_seed", m.mcmc.chain_seed}};
            } else if constexpr (std::is_same_v<T, ExplicitRoots>) {
                if (m.kind == ExplicitRoots::Kind::RootsOfUnity) {
                    j["kind"] = "roots_of_unity";
                } else {
                    j["kind"] = "point_list";
                    json pts = json::array();
                    for (const Complex& p : m.points) pts.push_back({p.real(), p.imag()});
                    j["points"] = std::move(pts);
                }
            }
            j["n"] = m.n;
        },
        spec);
    return j;
}

DistanceConfig parse_distance(const json& j) {
    DistanceConfig d;
    const std::string m = j.value("method", "auto");
    if (m == "exact")
        d.method = DistanceConfig::Method::Exact;
    else if (m == "assignment")
        d.method = DistanceConfig::Method::Assignment;
    else if (m == "subsample")
        d.method = DistanceConfig::Method::Subsample;
    else if (m == "entropic")
        d.method = DistanceConfig::Method::Entropic;
    else if (m == "auto")
        d.method = DistanceConfig::Method::Auto;
    else
        throw ConfigError("unknown distance method: " + m);
    d.subsample_size = j.value("subsample_size", d.subsample_size);
    d.bootstrap = j.value("bootstrap", d.bootstrap);
    d.epsilon = j.value("epsilon", d.epsilon);
    return d;
}

const char* distance_method_name(DistanceConfig::Method m) {
    switch (m) {
    case DistanceConfig::Method::Exact:
        return "exact";
    case DistanceConfig::Method::Assignment:
        return "assignment";
    case DistanceConfig::Method::Subsample:
        return "subsample";
    case DistanceConfig::Method::Entropic:
        return "entropic";
    case DistanceConfig::Method::Auto:
        return "auto";
    }
    return "auto";
}

} // namespace

void ExperimentConfig::validate() const {
    if (k_list.empty()) throw ConfigError("config: k_list must not be empty");
    if (n_grid.empty()) throw ConfigError("config: n_grid must not be empty");
    if (trials < 1) throw ConfigError("config: trials must be >= 1");
    int kmax = 0, nmin = n_grid.front();
    for (int k : k_list) {
        if (k < 1) throw ConfigError("config: derivative orders must be >= 1");
        kmax = std::max(kmax, k);
    }
    for (int n : n_grid) {
        if (n < 2) throw ConfigError("config: degrees must be >= 2");
        nmin = std::min(nmin, n);
    }
    if (kmax >= nmin) throw ConfigError("config: max(k_list) must be < min(n_grid)");
    if (n_ref < 2) throw ConfigError("config: n_ref must be >= 2");
    if (!(solver.tol > 0.0) || solver.max_iters < 1 || !(solver.cluster_eps >= 0.0))
        throw ConfigError("config: solver settings out of range");
    if (probe.mc_points < 1 || !(probe.disk_radius > 0.0))
        throw ConfigError("config: probe settings out of range");
    for (const std::string& f : output.formats)
        if (f != "csv" && f != "json" && f != "svg" && f != "all")
            throw ConfigError("config: unknown output format " + f);
    // the ensemble is a template: degrees come from n_grid at run time
    derivzeros::validate(with_degree(ensemble, nmin));
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_string(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    try {
        ExperimentConfig cfg;
        const std::string sv = j.value("schema_version", std::string(kSchemaVersion));
        if (sv != kSchemaVersion) throw ConfigError("config: unsupported schema_version " + sv);
        cfg.ensemble = parse_ensemble(j.at("ensemble"));
        if (j.contains("k_list")) cfg.k_list = j.at("k_list").get<std::vector<int>>();
        if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<int>>();
        cfg.trials = j.value("trials", 1);
        cfg.master_seed = j.value("master_seed", std::uint64_t{1});
        cfg.n_ref = j.value("n_ref", 4096);
        if (j.contains("distance")) cfg.distance = parse_distance(j.at("distance"));
        if (j.contains("probe")) {
            const json& p = j.at("probe");
            if (p.contains("z_points")) {
                cfg.probe.z_points.clear();
                for (const auto& z : p.at("z_points"))
                    cfg.probe.z_points.push_back(parse_complex(z, "probe point"));
            }
            cfg.probe.extra_random_z = p.value("extra_random_z", cfg.probe.extra_random_z);
            cfg.probe.epsilon = p.value("epsilon", cfg.probe.epsilon);
            cfg.probe.disk_radius = p.value("disk_radius", cfg.probe.disk_radius);
            cfg.probe.mc_points = p.value("mc_points", cfg.probe.mc_points);
            cfg.probe.k = p.value("k", cfg.probe.k);
        }
        if (j.contains("solver")) {
            const json& s = j.at("solver");
            cfg.solver.tol = s.value("tol", cfg.solver.tol);
            cfg.solver.max_iters = s.value("max_iters", cfg.solver.max_iters);
            cfg.solver.cluster_eps = s.value("cluster_eps", cfg.solver.cluster_eps);
            cfg.solver.retry_perturb = s.value("retry_perturb", cfg.solver.retry_perturb);
        }
        if (j.contains("output")) {
            const json& o = j.at("output");
            cfg.output.dir = o.value("dir", cfg.output.dir);
            if (o.contains("formats")) cfg.output.formats = o.at("formats").get<std::vector<std::string>>();
        }
        cfg.validate();
        return cfg;
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidSpec& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

std::string ExperimentConfig::to_json_string() const {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["ensemble"] = ensemble_to_json(ensemble);
    j["k_list"] = k_list;
    j["n_grid"] = n_grid;
    j["trials"] = trials;
    j["master_seed"] = master_seed;
    j["n_ref"] = n_ref;
    j["distance"] = {{"method", distance_method_name(distance.method)},
                     {"subsample_size", distance.subsample_size},
                     {"bootstrap", distance.bootstrap},
                     {"epsilon", distance.epsilon}};
    json zs = json::array();
    for (const Complex& z : probe.z_points) zs.push_back({z.real(), z.imag()});
    j["probe"] = {{"z_points", std::move(zs)},
                  {"extra_random_z", probe.extra_random_z},
                  {"epsilon", probe.epsilon},
                  {"disk_radius", probe.disk_radius},
                  {"mc_points", probe.mc_points},
                  {"k", probe.k}};
    j["solver"] = {{"tol", solver.tol},
                   {"max_iters", solver.max_iters},
                   {"cluster_eps", solver.cluster_eps},
                   {"retry_perturb", solver.retry_perturb}};
    j["output"] = {{"dir", output.dir}, {"formats", output.formats}};
    return j.dump(2);
}

} // namespace derivzeros
