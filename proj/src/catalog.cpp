#include "decaylab/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace decaylab {

namespace {

double get_param(const std::map<std::string, double>& params,
                 const std::map<std::string, double>& defaults, const std::string& key) {
    if (auto it = params.find(key); it != params.end()) return it->second;
    if (auto it = defaults.find(key); it != defaults.end()) return it->second;
    throw std::invalid_argument("catalog: missing parameter '" + key + "'");
}

RadialProfile make_profile(int d, Side side, RealFunc f, Eigen::ArrayXd grid,
                           std::string provenance = "closed-form") {
    RadialProfile p;
    p.d = d;
    p.side = side;
    p.profile = std::move(f);
    p.default_grid = std::move(grid);
    p.provenance = std::move(provenance);
    return p;
}

}  // namespace

const std::vector<CatalogEntry>& list_catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"gaussian", "e^{-|x|^2/2} <-> (2pi)^{d/2} e^{-|xi|^2/2}", 1, 16, {}, {}, true,
         1e-6},
        {"exponential_spectrum",
         "F0 = e^{-s}; space side is the Poisson kernel c_d (1+t^2)^{-(d+1)/2}", 1, 16,
         {}, {}, true, 1e-5},
        {"ball_indicator", "indicator of the unit ball; F0 known for d <= 3", 1, 3, {},
         {}, true, 1e-5},
        {"power_tail", "F0 = s^{-sigma} 1_{s>=1}; spectral-primary", 1, 16, {"sigma"},
         {{"sigma", 1.0}}, false, 1e-2},
        {"remark_counterexample", "F0 = s^{-(2 beta + d/p')} 1_{s>=1}; spectral-primary",
         1, 16, {"beta", "p"}, {{"beta", 0.5}, {"p", 2.0}}, false, 1e-2},
    };
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : list_catalog())
        if (e.name == name) return e;
    throw std::invalid_argument("catalog: unknown entry '" + name + "'");
}

RadialProfile get_fourier_profile(const std::string& name, int d,
                                  const std::map<std::string, double>& params) {
    const CatalogEntry& entry = catalog_entry(name);
    if (d < entry.d_min || d > entry.d_max)
        throw std::invalid_argument("catalog: dimension out of range for '" + name + "'");

    if (name == "gaussian") {
        const double c = std::pow(2.0 * M_PI, 0.5 * d);
        return make_profile(d, Side::fourier,
                            RealFunc::closed_form("gaussian_fourier",
                                                  [c](double s) {
                                                      return c * std::exp(-0.5 * s * s);
                                                  }),
                            logspace(1e-3, 16.0, 16));
    }
    if (name == "exponential_spectrum") {
        return make_profile(d, Side::fourier,
                            RealFunc::closed_form("exp_spectrum",
                                                  [](double s) { return std::exp(-s); }),
                            logspace(1e-3, 80.0, 16));
    }
    if (name == "ball_indicator") {
        const double c = sphere_area(d) / d;
        const double nu = 0.5 * d;
        return make_profile(d, Side::fourier,
                            RealFunc::closed_form("ball_fourier",
                                                  [c, nu](double s) {
                                                      return c * normalized_bessel(nu, s);
                                                  }),
                            logspace(1e-3, 100.0, 16));
    }
    if (name == "power_tail") {
        const double sigma = get_param(params, entry.param_defaults, "sigma");
        return make_profile(
            d, Side::fourier,
            RealFunc::closed_form(
                "power_tail",
                [sigma](double s) { return s >= 1.0 ? std::pow(s, -sigma) : 0.0; }, 0.0,
                std::numeric_limits<double>::infinity(), {1.0}, {{"sigma", sigma}}),
            logspace(1e-2, 1e3, 16));
    }
    if (name == "remark_counterexample") {
        const double beta = get_param(params, entry.param_defaults, "beta");
        const double p = get_param(params, entry.param_defaults, "p");
        if (!(p > 1.0)) throw std::invalid_argument("remark_counterexample: need p > 1");
        const double pp = p / (p - 1.0);
        const double sigma = 2.0 * beta + (double)d / pp;
        return make_profile(
            d, Side::fourier,
            RealFunc::closed_form(
                "remark_counterexample",
                [sigma](double s) { return s >= 1.0 ? std::pow(s, -sigma) : 0.0; }, 0.0,
                std::numeric_limits<double>::infinity(), {1.0},
                {{"beta", beta}, {"p", p}, {"exponent", sigma}}),
            logspace(1e-2, 1e3, 16));
    }
    throw std::invalid_argument("catalog: unknown entry '" + name + "'");
}

RadialPair get_pair(const std::string& name, int d,
                    const std::map<std::string, double>& params, bool synthesize_space) {
    const CatalogEntry& entry = catalog_entry(name);
    RadialPair pair;
    pair.d = d;
    pair.fourier = get_fourier_profile(name, d, params);
    pair.provenance = entry.space_closed_form ? "closed-form" : "spectral-primary";

    if (name == "gaussian") {
        pair.space = make_profile(d, Side::space,
                                  RealFunc::closed_form("gaussian_space",
                                                        [](double r) {
                                                            return std::exp(-0.5 * r * r);
                                                        }),
                                  logspace(1e-3, 16.0, 16));
        return pair;
    }
    if (name == "exponential_spectrum") {
        const double c = std::tgamma(0.5 * (d + 1.0)) / std::pow(M_PI, 0.5 * (d + 1.0));
        const double e = 0.5 * (d + 1.0);
        pair.space = make_profile(d, Side::space,
                                  RealFunc::closed_form("poisson_kernel",
                                                        [c, e](double t) {
                                                            return c * std::pow(1.0 + t * t, -e);
                                                        }),
                                  logspace(1e-3, 80.0, 16));
        return pair;
    }
    if (name == "ball_indicator") {
        pair.space = make_profile(d, Side::space,
                                  RealFunc::closed_form("ball_space",
                                                        [](double r) {
                                                            return r <= 1.0 ? 1.0 : 0.0;
                                                        },
                                                        0.0,
                                                        std::numeric_limits<double>::infinity(),
                                                        {1.0}),
                                  logspace(1e-3, 2.0, 16));
        return pair;
    }
    // spectral-primary entries
    if (synthesize_space) {
        RadialProfile f = pair.fourier;
        pair.space = fourier_radial(f, logspace(1e-2, 20.0, 12));
        pair.provenance = "computed-by-transform";
    }
    return pair;
}

namespace oracles {

double gaussian_space_l2(int d) { return std::pow(M_PI, 0.25 * d); }

double gaussian_fourier_at_zero(int d) { return std::pow(2.0 * M_PI, 0.5 * d); }

double gaussian_fourier(int d, double s) {
    return std::pow(2.0 * M_PI, 0.5 * d) * std::exp(-0.5 * s * s);
}

double exponential_space(int d, double t) {
    return std::tgamma(0.5 * (d + 1.0)) *
           std::pow(M_PI, -0.5 * (d + 1.0)) * std::pow(1.0 + t * t, -0.5 * (d + 1.0));
}

double ball_fourier(int d, double s) {
    switch (d) {
        case 1: return 2.0 * std::sin(s) / s;
        case 2: return 2.0 * M_PI * std::cyl_bessel_j(1.0, s) / s;
        case 3: return 4.0 * M_PI * (std::sin(s) - s * std::cos(s)) / (s * s * s);
        default:
            throw std::invalid_argument("ball_fourier oracle: d must be 1, 2 or 3");
    }
}

double power_tail_weighted_power(double sigma, int d, double a, double b, double w,
                                 double q) {
    a = std::max(a, 1.0);  // support starts at 1
    if (b <= a) return 0.0;
    const double e = (w - sigma) * q + d;  // integrand s^{e-1}
    if (std::abs(e) < 1e-14) return std::log(b / a);
    if (std::isinf(b)) {
        if (e >= 0.0) return std::numeric_limits<double>::infinity();
        return -std::pow(a, e) / e;
    }
    return (std::pow(b, e) - std::pow(a, e)) / e;
}

double power_tail_shell(double sigma, int d, double t, double w, double q) {
    return std::pow(
        sphere_area(d) * power_tail_weighted_power(sigma, d, t, 2.0 * t, w, q), 1.0 / q);
}

double power_tail_tail(double sigma, int d, double radius, double w, double q) {
    return std::pow(sphere_area(d) *
                        power_tail_weighted_power(
                            sigma, d, radius, std::numeric_limits<double>::infinity(), w, q),
                    1.0 / q);
}

}  // namespace oracles

}  // namespace decaylab
