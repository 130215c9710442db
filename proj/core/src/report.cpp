#include "derivzeros/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace derivzeros {

using json = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool wants(const OutputConfig& out, const char* f) {
    for (const std::string& s : out.formats)
        if (s == f || s == "all") return true;
    return false;
}

std::ofstream open_out(const OutputConfig& out, const std::string& name) {
    std::filesystem::create_directories(out.dir);
    const std::string path = out.dir + "/" + name;
    std::ofstream os(path, std::ios::binary); // binary: byte-identical across platforms
    if (!os) throw IoError("cannot write " + path);
    return os;
}

// Minimal static SVG plotting.
struct Svg {
    std::string body;
    double width, height;
    Svg(double w, double h) : width(w), height(h) {}
    void line(double x1, double y1, double x2, double y2, const char* stroke, double sw = 1.0) {
        char b[256];
        std::snprintf(b, sizeof b,
                      "<line x1='%.6g' y1='%.6g' x2='%.6g' y2='%.6g' stroke='%s' stroke-width='%.3g'/>\n",
                      x1, y1, x2, y2, stroke, sw);
        body += b;
    }
    void circle(double x, double y, double r, const char* fill, double opacity = 1.0) {
        char b[256];
        std::snprintf(b, sizeof b, "<circle cx='%.6g' cy='%.6g' r='%.3g' fill='%s' fill-opacity='%.3g'/>\n",
                      x, y, r, fill, opacity);
        body += b;
    }
    void text(double x, double y, const std::string& t, int size = 12) {
        char b[512];
        std::snprintf(b, sizeof b, "<text x='%.6g' y='%.6g' font-size='%d' font-family='sans-serif'>%s</text>\n",
                      x, y, size, t.c_str());
        body += b;
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke,
                  const char* dash = nullptr) {
        std::string p = "<polyline fill='none' stroke='";
        p += stroke;
        p += "' stroke-width='1.5'";
        if (dash) {
            p += " stroke-dasharray='";
            p += dash;
            p += "'";
        }
        p += " points='";
        char b[64];
        for (const auto& [x, y] : pts) {
            std::snprintf(b, sizeof b, "%.6g,%.6g ", x, y);
            p += b;
        }
        p += "'/>\n";
        body += p;
    }
    std::string str() const {
        char head[256];
        std::snprintf(head, sizeof head,
                      "<svg xmlns='http://www.w3.org/2000/svg' width='%.6g' height='%.6g' "
                      "viewBox='0 0 %.6g %.6g'>\n<rect width='100%%' height='100%%' fill='white'/>\n",
                      width, height, width, height);
        return std::string(head) + body + "</svg>\n";
    }
};

void write_scatter_svg(const OutputConfig& out, const ScatterData& sc) {
    double lo = -1.5, hi = 1.5;
    for (const Complex& p : sc.parent) {
        lo = std::min({lo, p.real(), p.imag()});
        hi = std::max({hi, p.real(), p.imag()});
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    const double size = 540.0, margin = 30.0;
    auto X = [&](double v) { return margin + (v - lo) / (hi - lo) * (size - 2 * margin); };
    auto Y = [&](double v) { return size - margin - (v - lo) / (hi - lo) * (size - 2 * margin); };

    Svg svg(size, size);
    svg.line(X(lo), Y(0), X(hi), Y(0), "#cccccc");
    svg.line(X(0), Y(lo), X(0), Y(hi), "#cccccc");
    for (const Complex& p : sc.parent) svg.circle(X(p.real()), Y(p.imag()), 2.2, "#1f77b4", 0.75);
    for (const Complex& p : sc.child) svg.circle(X(p.real()), Y(p.imag()), 1.6, "#d62728", 0.85);
    char title[128];
    std::snprintf(title, sizeof title, "zeros (blue) vs derivative-%d zeros (red), n=%d", sc.k, sc.n);
    svg.text(margin, 18, title);
    auto os = open_out(out, "scatter_n" + std::to_string(sc.n) + "_k" + std::to_string(sc.k) + ".svg");
    os << svg.str();
}

void write_curves_svg(const OutputConfig& out, const Report& r) {
    if (r.aggregates.empty()) return;
    double xmin = 1e300, xmax = 0, ymin = 1e300, ymax = -1e300;
    for (const AggregateRecord& a : r.aggregates) {
        xmin = std::min(xmin, static_cast<double>(a.n));
        xmax = std::max(xmax, static_cast<double>(a.n));
        for (double v : {a.median_w1_parent, a.median_w1_target}) {
            if (v > 0) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    }
    if (!(ymax > 0)) return;
    ymin = std::min(ymin, ymax / 10);
    const double W = 640, H = 480, m = 50;
    auto X = [&](double n) {
        return m + (std::log(n) - std::log(xmin)) / std::max(1e-12, std::log(xmax) - std::log(xmin)) * (W - 2 * m);
    };
    auto Y = [&](double v) {
        return H - m - (std::log(v) - std::log(ymin)) / std::max(1e-12, std::log(ymax) - std::log(ymin)) * (H - 2 * m);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    Svg svg(W, H);
    svg.line(m, H - m, W - m, H - m, "#000000");
    svg.line(m, m, m, H - m, "#000000");
    svg.text(W / 2 - 20, H - 12, "n (log)");
    svg.text(6, m - 8, "median W1 (log)");

    std::vector<int> ks;
    for (const AggregateRecord& a : r.aggregates)
        if (std::find(ks.begin(), ks.end(), a.k) == ks.end()) ks.push_back(a.k);
    std::sort(ks.begin(), ks.end());
    int ci = 0;
    for (int k : ks) {
        std::vector<std::pair<double, double>> parent_pts, target_pts;
        for (const AggregateRecord& a : r.aggregates) {
            if (a.k != k) continue;
            if (a.median_w1_parent > 0) parent_pts.push_back({X(a.n), Y(a.median_w1_parent)});
            if (a.median_w1_target > 0) target_pts.push_back({X(a.n), Y(a.median_w1_target)});
        }
        const char* col = colors[ci % 6];
        svg.polyline(parent_pts, col);
        svg.polyline(target_pts, col, "6,4");
        svg.text(W - m + 4, Y(parent_pts.empty() ? ymax : std::exp((std::log(ymin) + std::log(ymax)) / 2)) + 14 * ci,
                 "k=" + std::to_string(k), 11);
        ++ci;
    }
    svg.text(m + 4, m + 4, "solid: W1 to M(P_n); dashed: W1 to target", 11);
    auto os = open_out(out, "w1_curves.svg");
    os << svg.str();
}

} // namespace

double Report::unconverged_fraction() const {
    long long bad = 0, total = 0;
    for (const TrialRecord& r : records) {
        bad += r.unconverged;
        total += r.child_count;
    }
    return total == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(total);
}

void emit_report(const Report& report, const OutputConfig& out) {
    if (wants(out, "csv")) {
        auto os = open_out(out, "report.csv");
        os << "n,k,trial,seed,model,w1_parent,w1_parent_err,w1_parent_method,"
              "w1_target,w1_target_err,w1_target_method,resid_log_max,resid_log_median,"
              "unconverged,child_count,solver_iterations\n";
        for (const TrialRecord& r : report.records) {
            os << r.n << ',' << r.k << ',' << r.trial << ',' << r.seed << ',' << r.model << ','
               << fmt(r.w1_parent) << ',' << fmt(r.w1_parent_err) << ',' << r.w1_parent_method << ','
               << fmt(r.w1_target) << ',' << fmt(r.w1_target_err) << ',' << r.w1_target_method << ','
               << fmt(r.resid_log_max) << ',' << fmt(r.resid_log_median) << ',' << r.unconverged
               << ',' << r.child_count << ',' << r.solver_iterations << '\n';
        }
        // wall-clock goes to a sidecar; it can never be deterministic
        auto ts = open_out(out, "timings.csv");
        ts << "n,k,trial,wall_ms\n";
        for (const TrialRecord& r : report.records)
            ts << r.n << ',' << r.k << ',' << r.trial << ',' << fmt(r.wall_ms) << '\n';
    }
    if (wants(out, "json")) {
        json j;
        j["schema_version"] = report.schema_version;
        j["kind"] = report.kind;
        j["master_seed"] = report.master_seed;
        j["target_floor"] = report.target_floor;
        j["target_floor_method"] = report.target_floor_method;
        j["notes"] = report.notes;
        j["config"] = json::parse(report.config_echo);
        json recs = json::array();
        for (const TrialRecord& r : report.records) {
            recs.push_back({{"n", r.n},
                            {"k", r.k},
                            {"trial", r.trial},
                            {"seed", r.seed},
                            {"model", r.model},
                            {"w1_parent", r.w1_parent},
                            {"w1_parent_err", r.w1_parent_err},
                            {"w1_parent_method", r.w1_parent_method},
                            {"w1_target", r.w1_target},
                            {"w1_target_err", r.w1_target_err},
                            {"w1_target_method", r.w1_target_method},
                            {"resid_log_max", r.resid_log_max},
                            {"resid_log_median", r.resid_log_median},
                            {"unconverged", r.unconverged},
                            {"child_count", r.child_count},
                            {"solver_iterations", r.solver_iterations}});
        }
        j["records"] = std::move(recs);
        json aggs = json::array();
        for (const AggregateRecord& a : report.aggregates)
            aggs.push_back({{"n", a.n},
                            {"k", a.k},
                            {"median_w1_parent", a.median_w1_parent},
                            {"median_w1_target", a.median_w1_target}});
        j["aggregates"] = std::move(aggs);
        auto os = open_out(out, "report.json");
        os << j.dump(2) << '\n';
    }
    if (wants(out, "svg")) {
        for (const ScatterData& sc : report.scatters) write_scatter_svg(out, sc);
        write_curves_svg(out, report);
    }
}

void emit_probe_small(const ProbeSmallResult& result, const OutputConfig& out) {
    if (wants(out, "csv")) {
        auto os = open_out(out, "probe_small.csv");
        os << "z_re,z_im,n,trials,hits,frequency,resampled\n";
        for (const ProbeSmallRow& r : result.rows)
            os << fmt(r.z.real()) << ',' << fmt(r.z.imag()) << ',' << r.n << ',' << r.trials << ','
               << r.hits << ',' << fmt(r.frequency) << ',' << r.resampled << '\n';
    }
    if (wants(out, "json")) {
        json j;
        j["schema_version"] = "derivzeros-report/1";
        j["kind"] = "probe-small";
        j["master_seed"] = result.master_seed;
        j["k"] = result.k;
        j["epsilon"] = result.epsilon;
        j["config"] = json::parse(result.config_echo);
        json rows = json::array();
        for (const ProbeSmallRow& r : result.rows)
            rows.push_back({{"z", {r.z.real(), r.z.imag()}},
                            {"n", r.n},
                            {"trials", r.trials},
                            {"hits", r.hits},
                            {"frequency", r.frequency},
                            {"resampled", r.resampled}});
        j["rows"] = std::move(rows);
        auto os = open_out(out, "probe_small.json");
        os << j.dump(2) << '\n';
    }
}

void emit_probe_tight(const ProbeTightResult& result, const OutputConfig& out) {
    if (wants(out, "csv")) {
        auto os = open_out(out, "probe_tight.csv");
        os << "n,trial,estimate,stderr,resampled\n";
        for (const ProbeTightRow& r : result.rows)
            os << r.n << ',' << r.trial << ',' << fmt(r.estimate) << ',' << fmt(r.std_error) << ','
               << r.resampled << '\n';
    }
    if (wants(out, "json")) {
        json j;
        j["schema_version"] = "derivzeros-report/1";
        j["kind"] = "probe-tight";
        j["master_seed"] = result.master_seed;
        j["k"] = result.k;
        j["disk_radius"] = result.disk_radius;
        j["mc_points"] = result.mc_points;
        j["config"] = json::parse(result.config_echo);
        json rows = json::array();
        for (const ProbeTightRow& r : result.rows)
            rows.push_back({{"n", r.n},
                            {"trial", r.trial},
                            {"estimate", r.estimate},
                            {"stderr", r.std_error},
                            {"resampled", r.resampled}});
        j["rows"] = std::move(rows);
        auto os = open_out(out, "probe_tight.json");
        os << j.dump(2) << '\n';
    }
}

void emit_pairing(const PairingResult& result, const OutputConfig& out) {
    if (wants(out, "csv")) {
        auto os = open_out(out, "pairing_hist.csv");
        os << "bin_lo,bin_hi,count\n";
        for (std::size_t i = 0; i < result.hist_counts.size(); ++i) {
            const double lo = result.hist_edges[i];
            const bool last = i + 1 >= result.hist_counts.size();
            os << fmt(lo) << ',' << (last ? "inf" : fmt(result.hist_edges[i + 1])) << ','
               << result.hist_counts[i] << '\n';
        }
    }
    if (wants(out, "json")) {
        json j;
        j["schema_version"] = "derivzeros-report/1";
        j["kind"] = "pairing";
        j["parent_size"] = result.parent_size;
        j["child_size"] = result.child_size;
        j["greedy_matching_distance"] = result.greedy_matching_distance;
        j["optimal_matching_distance"] = result.optimal_matching_distance;
        j["hist_edges"] = result.hist_edges;
        j["hist_counts"] = result.hist_counts;
        auto os = open_out(out, "pairing.json");
        os << j.dump(2) << '\n';
    }
}

void emit_coulomb(const CoulombRunResult& result, const OutputConfig& out) {
    if (wants(out, "csv")) {
        auto os = open_out(out, "coulomb_trace.csv");
        os << "index,energy,acceptance\n";
        for (std::size_t i = 0; i < result.energy_trace.size(); ++i)
            os << i << ',' << fmt(result.energy_trace[i]) << ',' << fmt(result.acceptance_trace[i])
               << '\n';
        auto ps = open_out(out, "coulomb_points.csv");
        ps << "re,im\n";
        for (const Complex& p : result.points.roots)
            ps << fmt(p.real()) << ',' << fmt(p.imag()) << '\n';
    }
    if (wants(out, "json")) {
        json j;
        j["schema_version"] = "derivzeros-report/1";
        j["kind"] = "coulomb";
        j["master_seed"] = result.master_seed;
        j["n"] = result.n;
        j["beta"] = result.beta;
        j["ks_radial"] = result.ks;
        j["w1_to_equilibrium"] = result.w1_to_equilibrium;
        j["w1_error"] = result.w1_error;
        j["w1_method"] = result.w1_method;
        j["mean_acceptance"] = result.mean_acceptance;
        j["final_stddev"] = result.final_stddev;
        j["droplet"] = {{"r_inner", result.r_inner},
                        {"r_outer", result.r_outer},
                        {"robin_constant", result.robin_constant}};
        j["config"] = json::parse(result.config_echo);
        auto os = open_out(out, "coulomb.json");
        os << j.dump(2) << '\n';
    }
    if (wants(out, "svg")) {
        ScatterData sc;
        sc.n = result.n;
        sc.k = 0;
        sc.parent = result.points.roots;
        write_scatter_svg(out, sc);
    }
}

} // namespace derivzeros
