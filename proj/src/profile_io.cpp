#include "decaylab/profile_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "decaylab/report.hpp"

namespace decaylab {

void write_profile(const RadialProfile& p, const std::string& csv_path) {
    Eigen::ArrayXd grid = p.profile.is_sampled() ? p.profile.sample_points()
                                                 : p.default_grid;
    if (grid.size() == 0) grid = logspace(1e-3, 1e3, 16);

    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("write_profile: cannot open " + csv_path);
    char line[80];
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        std::snprintf(line, sizeof line, "%.12g,%.12g\n", grid[i], p.profile(grid[i]));
        csv << line;
    }

    json sidecar;
    sidecar["d"] = p.d;
    sidecar["side"] = to_string(p.side);
    sidecar["provenance"] = p.provenance;
    sidecar["name"] = p.profile.name();
    std::ofstream meta(csv_path + ".json");
    if (!meta) throw std::runtime_error("write_profile: cannot open " + csv_path + ".json");
    meta << sidecar.dump(2) << "\n";
}

RadialProfile read_profile(const std::string& csv_path) {
    std::ifstream csv(csv_path);
    if (!csv) throw std::runtime_error("read_profile: cannot open " + csv_path);
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double x, v;
        char comma;
        if (!(ss >> x >> comma >> v) || comma != ',')
            throw std::runtime_error("read_profile: malformed CSV line '" + line + "'");
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 2) throw std::runtime_error("read_profile: needs >= 2 samples");

    std::ifstream meta(csv_path + ".json");
    if (!meta) throw std::runtime_error("read_profile: missing sidecar " + csv_path + ".json");
    json sidecar = json::parse(meta);

    Eigen::Map<Eigen::ArrayXd> x(xs.data(), (Eigen::Index)xs.size());
    Eigen::Map<Eigen::ArrayXd> v(vs.data(), (Eigen::Index)vs.size());
    RadialProfile p;
    p.d = sidecar.at("d").get<int>();
    p.side = sidecar.at("side").get<std::string>() == "fourier" ? Side::fourier : Side::space;
    p.provenance = sidecar.value("provenance", "file");
    p.profile = RealFunc::samples(x, v, RealFunc::Interp::loglin,
                                  sidecar.value("name", "file"));
    p.default_grid = x;
    return p;
}

}  // namespace decaylab
