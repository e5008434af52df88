#include "decaylab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace decaylab {

BoundReport BoundReport::evaluate(Eigen::ArrayXd grid, Eigen::ArrayXd lhs,
                                  Eigen::ArrayXd rhs, double threshold, bool two_sided) {
    if (grid.size() != lhs.size() || grid.size() != rhs.size())
        throw std::invalid_argument("BoundReport: table sizes differ");
    BoundReport rep;
    rep.grid = std::move(grid);
    rep.lhs = std::move(lhs);
    rep.rhs = std::move(rhs);
    rep.threshold = threshold;
    rep.two_sided = two_sided;

    double inf_r = std::numeric_limits<double>::infinity();
    double sup_r = 0.0;
    bool any = false;
    bool broken = false;
    for (Eigen::Index i = 0; i < rep.grid.size(); ++i) {
        const double l = rep.lhs[i], r = rep.rhs[i];
        if (!std::isfinite(l) || !std::isfinite(r)) { broken = true; continue; }
        if (l == 0.0 && r == 0.0) continue;  // vacuous point
        if (r == 0.0) { broken = true; continue; }
        const double q = l / r;
        inf_r = std::min(inf_r, q);
        sup_r = std::max(sup_r, q);
        any = true;
    }
    if (!any) {
        // identically-zero claim holds by convention
        rep.ratio_inf = 0.0;
        rep.ratio_sup = 0.0;
        rep.pass = !broken;
        if (broken) rep.tag = "non-finite";
        return rep;
    }
    rep.ratio_inf = inf_r;
    rep.ratio_sup = sup_r;
    rep.pass = !broken && rep.ratio_sup <= threshold &&
               (!two_sided || rep.ratio_inf >= 1.0 / threshold);
    if (broken) {
        rep.pass = false;
        rep.tag = "non-finite";
    }
    return rep;
}

json BoundReport::to_json() const {
    json j;
    j["grid"] = json_array(grid);
    j["lhs"] = json_array(lhs);
    j["rhs"] = json_array(rhs);
    j["ratio_inf"] = json_number(ratio_inf);
    j["ratio_sup"] = json_number(ratio_sup);
    j["pass"] = pass;
    j["threshold"] = json_number(threshold);
    if (two_sided) j["two_sided"] = true;
    if (!tag.empty()) j["tag"] = tag;
    if (!extra.is_null()) j["extra"] = extra;
    return j;
}

json AsymptoticVerdict::to_json() const {
    json j = BoundReport::to_json();
    j["regime"] = regime;
    return j;
}

double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

json json_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_sig(x);
}

json json_array(const Eigen::ArrayXd& a) {
    json j = json::array();
    for (Eigen::Index i = 0; i < a.size(); ++i) j.push_back(json_number(a[i]));
    return j;
}

}  // namespace decaylab
