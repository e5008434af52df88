#include "decaylab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace decaylab {

namespace {

// Dense-coverage start for improper ranges; decade probes widen from here.
double pick_truncation(const RealFunc& f, const QuadratureSpec& quad) {
    double t0 = std::max(16.0, 64.0 * quad.r_min);
    for (double b : f.breakpoints()) t0 = std::max(t0, 2.0 * b);
    return std::min(t0, quad.r_max);
}

int probe_budget(const RealFunc& f, double from) {
    if (!std::isfinite(f.domain_max())) return 10;
    if (f.domain_max() <= from) return 0;
    return std::clamp((int)std::floor(std::log10(f.domain_max() / from)), 0, 10);
}

double lower_start(const RealFunc& f, const QuadratureSpec& quad) {
    return std::max(quad.r_min, f.is_sampled() ? f.domain_min() : 0.0);
}

}  // namespace

std::string to_string(Side s) { return s == Side::space ? "space" : "fourier"; }

double fourier_radial_at(const RadialProfile& g, double s, const QuadratureSpec& quad) {
    quad.validate();
    if (g.d < 1) throw std::invalid_argument("fourier_radial: dimension must be >= 1");
    if (s < 0.0) throw std::invalid_argument("fourier_radial: output point must be >= 0");
    const int d = g.d;
    const double nu = bessel_order(d);
    const RealFunc& f = g.profile;

    const auto integrand = [&](double r) {
        return std::pow(r, d - 1) * f(r) * normalized_bessel(nu, r * s);
    };

    const double scale = (g.side == Side::space)
                             ? sphere_area(d)
                             : sphere_area(d) / std::pow(2.0 * M_PI, d);

    const double a = lower_start(f, quad);
    double value;
    if (f.is_sampled()) {
        // sampled profiles are known only on their grid; no silent tails
        value = integrate(integrand, a, f.domain_max(), quad, s, f.breakpoints());
        ImproperResult low = integrate_lower(integrand, a * 2.0, a, quad, {}, 0);
        (void)low;  // lower end in-domain only; a equals the grid start
    } else {
        const double t0 = pick_truncation(f, quad);
        ImproperResult up = integrate_upper(integrand, std::min(a, t0 / 4.0), t0, quad, s,
                                            f.breakpoints(), probe_budget(f, t0));
        if (up.status == TailStatus::divergent)
            throw divergence_error("fourier_radial: truncated integral does not stabilize");
        ImproperResult low =
            integrate_lower(integrand, std::min(a, t0 / 4.0), std::min(a, t0 / 4.0) / 2.0,
                            quad, f.breakpoints());
        value = up.value + low.value;
    }
    return scale * value;
}

RadialProfile fourier_radial(const RadialProfile& g, const Eigen::ArrayXd& out_grid,
                             const QuadratureSpec& quad) {
    if (out_grid.size() < 2)
        throw std::invalid_argument("fourier_radial: output grid needs >= 2 points");
    Eigen::ArrayXd vals(out_grid.size());
    for (Eigen::Index i = 0; i < out_grid.size(); ++i)
        vals[i] = fourier_radial_at(g, out_grid[i], quad);

    RadialProfile out;
    out.d = g.d;
    out.side = (g.side == Side::space) ? Side::fourier : Side::space;
    out.provenance = "transform";
    out.default_grid = out_grid;
    out.profile = RealFunc::samples(out_grid, vals, RealFunc::Interp::loglin,
                                    g.profile.name() + "^");
    return out;
}

double radial_lp_norm(const RadialProfile& g, double p, const QuadratureSpec& quad) {
    quad.validate();
    if (!(p >= 1.0)) throw std::invalid_argument("radial_lp_norm: need p >= 1");
    const RealFunc& f = g.profile;

    if (std::isinf(p)) {
        Eigen::ArrayXd grid = g.default_grid.size() ? g.default_grid
                              : f.is_sampled()      ? f.sample_points()
                                                    : logspace(quad.r_min, quad.r_max, 32);
        double best = 0.0;
        Eigen::Index at = 0;
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const double v = std::abs(f(grid[i]));
            if (v > best) { best = v; at = i; }
        }
        // one refinement pass around the observed maximizer
        const double lo = grid[std::max<Eigen::Index>(at - 1, 0)];
        const double hi = grid[std::min<Eigen::Index>(at + 1, grid.size() - 1)];
        if (hi > lo) {
            Eigen::ArrayXd fine = logspace(lo, hi, 4096);
            for (Eigen::Index i = 0; i < fine.size(); ++i)
                best = std::max(best, std::abs(f(fine[i])));
        }
        return best;
    }

    const int d = g.d;
    const auto integrand = [&](double r) {
        return std::pow(std::abs(f(r)), p) * std::pow(r, d - 1);
    };

    const double a = lower_start(f, quad);
    double power;
    if (f.is_sampled()) {
        power = integrate(integrand, a, f.domain_max(), quad, 0.0, f.breakpoints());
    } else {
        const double t0 = pick_truncation(f, quad);
        ImproperResult up = integrate_upper(integrand, std::min(a, t0 / 4.0), t0, quad, 0.0,
                                            f.breakpoints(), probe_budget(f, t0));
        if (up.status == TailStatus::divergent)
            throw divergence_error("radial_lp_norm: integral diverges");
        ImproperResult low = integrate_lower(integrand, std::min(a, t0 / 4.0),
                                             std::min(a, t0 / 4.0) / 2.0, quad,
                                             f.breakpoints());
        if (low.status == TailStatus::divergent)
            throw divergence_error("radial_lp_norm: integral diverges at the origin");
        power = up.value + low.value;
    }
    return std::pow(sphere_area(d) * power, 1.0 / p);
}

namespace {

Integrand weighted_power(const RadialProfile& F, double w, double q) {
    const int d = F.d;
    const RealFunc& f = F.profile;
    return [&f, w, q, d](double s) {
        return std::pow(std::pow(s, w) * std::abs(f(s)), q) * std::pow(s, d - 1);
    };
}

}  // namespace

double shell_integral(const RadialProfile& F, double t, double w, double q,
                      const QuadratureSpec& quad) {
    quad.validate();
    if (!(t > 0.0)) throw std::invalid_argument("shell_integral: t must be positive");
    if (!(q >= 1.0)) throw std::invalid_argument("shell_integral: q must be >= 1");
    if (F.profile.is_sampled() &&
        (t < F.profile.domain_min() || 2.0 * t > F.profile.domain_max()))
        throw std::domain_error("shell_integral: shell leaves the sampled range");
    const double val = integrate(weighted_power(F, w, q), t, 2.0 * t, quad, 0.0,
                                 F.profile.breakpoints());
    return std::pow(sphere_area(F.d) * val, 1.0 / q);
}

ImproperResult tail_integral_power(const RadialProfile& F, double t, double w, double q,
                                   const QuadratureSpec& quad) {
    quad.validate();
    if (!(t > 0.0)) throw std::invalid_argument("tail_integral: radius must be positive");
    if (!(q >= 1.0)) throw std::invalid_argument("tail_integral: q must be >= 1");
    if (F.profile.is_sampled())
        throw std::domain_error("tail_integral: undefined beyond a sampled range");
    const double t0 = std::max(pick_truncation(F.profile, quad), 2.0 * t);
    ImproperResult res = integrate_upper(weighted_power(F, w, q), t, t0, quad, 0.0,
                                         F.profile.breakpoints(),
                                         probe_budget(F.profile, t0));
    res.value *= sphere_area(F.d);
    res.tail_estimate *= sphere_area(F.d);
    res.last_increment *= sphere_area(F.d);
    return res;
}

double tail_integral(const RadialProfile& F, double t, double w, double q,
                     const QuadratureSpec& quad) {
    ImproperResult res = tail_integral_power(F, t, w, q, quad);
    if (res.status == TailStatus::divergent)
        throw divergence_error("tail_integral: tail does not stabilize under the probe");
    return std::pow(res.value, 1.0 / q);
}

}  // namespace decaylab
