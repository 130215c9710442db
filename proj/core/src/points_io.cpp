#include "derivzeros/points_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace derivzeros {

EmpiricalMeasure read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open points file: " + path);
    std::vector<Complex> pts;
    std::vector<double> w;
    bool any_weight = false;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double re, im;
        if (!(ss >> re >> im)) continue;
        double wt;
        if (ss >> wt) {
            any_weight = true;
            w.push_back(wt);
        } else {
            w.push_back(1.0);
        }
        pts.emplace_back(re, im);
    }
    if (pts.empty()) throw IoError("points file has no points: " + path);
    if (!any_weight) return EmpiricalMeasure::uniform(std::move(pts));
    double total = 0.0;
    for (double x : w) total += x;
    if (!(total > 0.0)) throw IoError("points file weights are not positive: " + path);
    for (double& x : w) x /= total;
    return EmpiricalMeasure(std::move(pts), std::move(w));
}

void write_points(const std::string& path, const EmpiricalMeasure& m, bool with_weights) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write points file: " + path);
    char buf[128];
    for (std::size_t i = 0; i < m.points.size(); ++i) {
        if (with_weights)
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", m.points[i].real(),
                          m.points[i].imag(), m.weights[i]);
        else
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", m.points[i].real(), m.points[i].imag());
        out << buf;
    }
    if (!out) throw IoError("write failed: " + path);
}

} // namespace derivzeros
