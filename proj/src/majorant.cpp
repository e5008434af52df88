#include "decaylab/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace decaylab {

namespace {

void require_grid(const Eigen::ArrayXd& grid) {
    if (grid.size() < 2) throw std::invalid_argument("majorant: grid needs >= 2 points");
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw std::invalid_argument("majorant: grid must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("majorant: grid must be strictly increasing");
    }
}

void require_nondecreasing(const PosFunc& phi, const Eigen::ArrayXd& grid) {
    double prev = phi(grid[0]);
    for (Eigen::Index i = 1; i < grid.size(); ++i) {
        const double cur = phi(grid[i]);
        if (cur < prev * (1.0 - 1e-12))
            throw std::invalid_argument("majorant: phi is not nondecreasing on the grid");
        prev = cur;
    }
}

// Local power exponent of phi at b, measured over one octave.
double local_exponent(const PosFunc& phi, double b) {
    const double f1 = phi(b), f2 = phi(2.0 * b);
    if (!(f1 > 0.0) || !(f2 > 0.0))
        throw quadrature_error("majorant: phi must be positive to estimate decay");
    return std::log2(f2 / f1);
}

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

double eval(const PosFunc& f, double t) { return f(t); }

BoundReport check_M(const PosFunc& phi, const Eigen::ArrayXd& grid,
                    const QuadratureSpec& quad, double threshold) {
    require_grid(grid);
    require_nondecreasing(phi, grid);

    const double domain_floor =
        phi.is_sampled() ? phi.domain_min() : phi.domain_min() * (1.0 + 1e-12);
    double b0 = grid[0] / 64.0;
    bool clipped = false;
    if (b0 < domain_floor) {
        b0 = domain_floor;
        clipped = true;
    }
    if (!phi.evaluable(2.0 * b0))
        throw std::invalid_argument("check_M: phi not evaluable near the truncation point");

    // mass below the truncation point, from the local power exponent there
    const double s0 = local_exponent(phi, b0);
    if (s0 <= 1e-3)
        throw quadrature_error("check_M: no decay at the origin, int phi(u)/u du diverges");
    const double lower_est = phi(b0) / s0;

    const auto integrand = [&phi](double u) { return phi(u) / u; };
    Eigen::ArrayXd lhs(grid.size()), rhs(grid.size());
    double acc = integrate(integrand, b0, grid[0], quad);
    lhs[0] = lower_est + acc;
    rhs[0] = phi(grid[0]);
    for (Eigen::Index i = 1; i < grid.size(); ++i) {
        acc += integrate(integrand, grid[i - 1], grid[i], quad);
        lhs[i] = lower_est + acc;
        rhs[i] = phi(grid[i]);
    }

    BoundReport rep = BoundReport::evaluate(grid, lhs, rhs, threshold);
    const bool decays = phi(grid[0]) <= 0.1 * phi(grid[grid.size() - 1]) * (1.0 + 1e-12);
    if (!decays) {
        rep.pass = false;
        rep.tag = "no-decay";
    }
    rep.extra["truncation_point"] = json_number(b0);
    rep.extra["truncation_clipped_to_domain"] = clipped;
    rep.extra["local_exponent"] = json_number(s0);
    rep.extra["lower_tail_estimate"] = json_number(lower_est);
    rep.extra["decay_proxy_pass"] = decays;
    return rep;
}

BoundReport check_omega(const PosFunc& phi, double beta, const Eigen::ArrayXd& grid,
                        double t_max, const QuadratureSpec& quad, double threshold) {
    require_grid(grid);
    if (!(beta > 0.0)) throw std::invalid_argument("check_omega: beta must be positive");
    BoundReport m_rep = check_M(phi, grid, quad, threshold);

    const auto integrand = [&phi, beta](double u) {
        return phi(u) * std::pow(u, -beta - 1.0);
    };
    const double t0 = grid[grid.size() - 1];
    double T = std::max(t_max, 10.0 * t0);
    if (T > phi.domain_max()) T = phi.domain_max();

    // one tail computation from grid_min; per-point values by subtraction
    int probes = 10;
    if (std::isfinite(phi.domain_max()))
        probes = std::clamp((int)std::floor(std::log10(phi.domain_max() / T)), 0, 10);
    ImproperResult tail = integrate_upper(integrand, grid[0], T, quad, 0.0, {}, probes);
    if (probes == 0) tail.status = TailStatus::truncated;

    // x10 stability probe on the tail-completed value: for a convergent tail
    // the completion is truncation-independent, for a divergent one the probe
    // keeps finding new mass
    double probe_change = 0.0;
    if (probes > 0) {
        int probes_wide = 10;
        if (std::isfinite(phi.domain_max()))
            probes_wide = std::clamp(
                (int)std::floor(std::log10(phi.domain_max() / (10.0 * T))), 0, 10);
        ImproperResult wide =
            integrate_upper(integrand, grid[0], 10.0 * T, quad, 0.0, {}, probes_wide);
        probe_change = std::abs(wide.value - tail.value) /
                       std::max(std::abs(tail.value), 1e-300);
    }

    Eigen::ArrayXd lhs(grid.size()), rhs(grid.size());
    double prefix = 0.0;
    lhs[0] = tail.value;
    rhs[0] = phi(grid[0]) * std::pow(grid[0], -beta);
    for (Eigen::Index i = 1; i < grid.size(); ++i) {
        prefix += integrate(integrand, grid[i - 1], grid[i], quad);
        lhs[i] = tail.value - prefix;
        rhs[i] = phi(grid[i]) * std::pow(grid[i], -beta);
    }

    BoundReport rep = BoundReport::evaluate(grid, lhs, rhs, threshold);
    const bool divergent =
        tail.status == TailStatus::divergent || probe_change >= defaults::stability_rel;
    if (divergent) {
        rep.pass = false;
        rep.tag = "divergent-tail";
    }
    if (!m_rep.pass) {
        rep.pass = false;
        if (rep.tag.empty()) rep.tag = "M-precondition-failed";
    }
    rep.extra["beta"] = json_number(beta);
    rep.extra["t_max"] = json_number(T);
    rep.extra["tail_status"] = to_string(tail.status);
    rep.extra["tail_estimate"] = json_number(tail.tail_estimate);
    rep.extra["tail_increment_ratio"] = json_number(tail.increment_ratio);
    rep.extra["probe_change"] = json_number(probe_change);
    rep.extra["precondition_M"] =
        json{{"pass", m_rep.pass}, {"ratio_sup", json_number(m_rep.ratio_sup)}};
    return rep;
}

BoundReport check_almost_decreasing(const PosFunc& phi, double beta, double eps,
                                    const Eigen::ArrayXd& grid, double threshold) {
    require_grid(grid);
    if (!(eps > 0.0) || !(eps < beta))
        throw std::invalid_argument("check_almost_decreasing: need 0 < eps < beta");

    const double expo = beta - eps;
    Eigen::ArrayXd h(grid.size()), run_min(grid.size()), run_max(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        h[i] = phi(grid[i]) / std::pow(grid[i], expo);
    double mn = h[0], mx = h[0];
    double sup = 1.0, inf = 1.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        mn = std::min(mn, h[i]);
        mx = std::max(mx, h[i]);
        run_min[i] = mn;
        run_max[i] = mx;
        sup = std::max(sup, h[i] / mn);
        inf = std::min(inf, h[i] / mx);
    }

    BoundReport rep;
    rep.grid = grid;
    rep.lhs = h;
    rep.rhs = run_min;
    rep.ratio_sup = sup;
    rep.ratio_inf = inf;
    rep.threshold = threshold;
    rep.pass = sup <= threshold;
    rep.extra["beta"] = json_number(beta);
    rep.extra["eps"] = json_number(eps);
    rep.extra["exponent"] = json_number(expo);
    return rep;
}

BoundReport check_omega_q(const PosFunc& phi, double beta, double q,
                          const Eigen::ArrayXd& delta_grid, const QuadratureSpec& quad) {
    if (!(q > 0.0)) throw std::invalid_argument("check_omega_q: q must be positive");
    Eigen::ArrayXd deltas = delta_grid;
    if (deltas.size() == 0) {
        deltas = Eigen::ArrayXd(8);
        for (int i = 0; i < 8; ++i) deltas[i] = std::pow(10.0, -(i + 1));
    }
    std::sort(deltas.data(), deltas.data() + deltas.size(), std::greater<double>());
    if (!(deltas[0] < 1.0))
        throw std::invalid_argument("check_omega_q: deltas must lie in (0,1)");

    const auto integrand = [&](double t) {
        const double p = phi(1.0 / t);
        if (!(p > 0.0)) throw quadrature_error("check_omega_q: phi(1/t) vanishes");
        return 1.0 / (t * std::pow(p, q));
    };

    const Eigen::Index n = deltas.size();
    Eigen::ArrayXd ivals(n), increments(n), prev(n);
    double acc = integrate(integrand, deltas[0], 1.0, quad);
    ivals[0] = acc;
    increments[0] = acc;
    prev[0] = acc;
    for (Eigen::Index k = 1; k < n; ++k) {
        const double piece = integrate(integrand, deltas[k], deltas[k - 1], quad);
        acc += piece;
        ivals[k] = acc;
        increments[k] = piece;
        prev[k] = increments[k - 1];
    }

    // Cauchy criterion: increments over successive delta decades must shrink
    // geometrically.
    double worst = 0.0;
    for (Eigen::Index k = 1; k < n; ++k)
        worst = std::max(worst, increments[k] / std::max(increments[k - 1], 1e-300));
    const double rho = increments[n - 1] / std::max(increments[n - 2], 1e-300);
    const bool cauchy = worst <= defaults::cauchy_shrink;
    double completed = ivals[n - 1];
    if (cauchy && rho > 0.0 && rho < 0.999)
        completed += increments[n - 1] * rho / (1.0 - rho);

    BoundReport rep;
    rep.grid = deltas;
    rep.lhs = increments;
    rep.rhs = prev;
    rep.ratio_sup = worst;
    rep.ratio_inf = increments[n - 1] / std::max(increments[0], 1e-300);
    rep.threshold = defaults::cauchy_shrink;
    rep.pass = cauchy;
    if (!cauchy) rep.tag = "divergent";
    rep.extra["beta"] = json_number(beta);
    rep.extra["q"] = json_number(q);
    rep.extra["integral"] = json_number(completed);
    rep.extra["partial_integrals"] = json_array(ivals);
    return rep;
}

RvEstimate estimate_rv_index(const PosFunc& phi, const std::vector<double>& lambda_set,
                             const Eigen::ArrayXd& x_grid) {
    require_grid(x_grid);
    if (lambda_set.empty())
        throw std::invalid_argument("estimate_rv_index: empty lambda set");
    const Eigen::Index n = x_grid.size();
    const Eigen::Index start = std::max<Eigen::Index>(0, n - std::max<Eigen::Index>(3, n / 4));

    std::vector<double> ys, ws;
    for (Eigen::Index i = start; i < n; ++i) {
        const double x = x_grid[i];
        const double base = phi(x);
        for (double lam : lambda_set) {
            if (!(lam > 0.0) || lam == 1.0)
                throw std::invalid_argument("estimate_rv_index: lambda must be positive, != 1");
            const double y = std::log(phi(lam * x) / base);
            if (!std::isfinite(y))
                throw quadrature_error("estimate_rv_index: non-finite quotient");
            ys.push_back(y);
            ws.push_back(std::log(lam));
        }
    }
    Eigen::Map<Eigen::VectorXd> y(ys.data(), (Eigen::Index)ys.size());
    Eigen::Map<Eigen::VectorXd> w(ws.data(), (Eigen::Index)ws.size());
    const double alpha = w.dot(y) / w.dot(w);
    const double rms = std::sqrt((y - alpha * w).squaredNorm() / (double)ys.size());
    return {alpha, rms};
}

namespace {

Majorant finish(Majorant m, double grid_lo, double grid_hi) {
    m.default_check_grid = logspace(grid_lo, grid_hi, defaults::grid_per_decade);
    return m;
}

}  // namespace

Majorant make_majorant(const std::string& name,
                       const std::map<std::string, double>& params) {
    const double alpha = get_param(params, "alpha", 0.5);
    if (!(alpha > 0.0)) throw std::invalid_argument("make_majorant: alpha must be positive");
    Majorant m;
    m.name = name;
    m.params = params;
    if (m.params.find("alpha") == m.params.end()) m.params["alpha"] = alpha;

    if (name == "power") {
        m.func = RealFunc::closed_form(
            "power", [alpha](double t) { return std::pow(t, alpha); }, 0.0,
            std::numeric_limits<double>::infinity(), {}, m.params);
        return finish(std::move(m), 1.0, 1e4);
    }
    if (name == "power_log") {  // t^a ln(1+t)
        m.func = RealFunc::closed_form(
            "power_log",
            [alpha](double t) { return std::pow(t, alpha) * std::log1p(t); }, 0.0,
            std::numeric_limits<double>::infinity(), {}, m.params);
        return finish(std::move(m), 1.0, 1e4);
    }
    if (name == "log_power") {  // (t ln(1+t))^a
        m.func = RealFunc::closed_form(
            "log_power",
            [alpha](double t) { return std::pow(t * std::log1p(t), alpha); }, 0.0,
            std::numeric_limits<double>::infinity(), {}, m.params);
        return finish(std::move(m), 1.0, 1e4);
    }
    if (name == "loglog") {  // t^a ln(ln(e+t))
        m.func = RealFunc::closed_form(
            "loglog",
            [alpha](double t) {
                return std::pow(t, alpha) * std::log(std::log(M_E + t));
            },
            0.0, std::numeric_limits<double>::infinity(), {}, m.params);
        return finish(std::move(m), 1.0, 1e4);
    }
    if (name == "exp_log_ratio") {
        // t^a exp(ln t / ln ln t); the inner logs need t > e, and the
        // function only becomes nondecreasing at t = e^e, so that is the
        // usable domain floor.
        const double lo = std::exp(M_E);
        m.func = RealFunc::closed_form(
            "exp_log_ratio",
            [alpha](double t) {
                return std::pow(t, alpha) * std::exp(std::log(t) / std::log(std::log(t)));
            },
            lo, std::numeric_limits<double>::infinity(), {}, m.params);
        return finish(std::move(m), 16.0, 1e5);
    }
    if (name == "iterated_log_exp") {  // t^a exp(prod_i (log_i t)^{a_i})
        std::vector<double> inner;
        for (int i = 1;; ++i) {
            auto it = params.find("a" + std::to_string(i));
            if (it == params.end()) break;
            if (!(it->second > 0.0) || !(it->second < 1.0))
                throw std::invalid_argument("iterated_log_exp: a_i must lie in (0,1)");
            inner.push_back(it->second);
        }
        if (inner.empty()) inner = {0.5, 0.5};
        for (size_t i = 0; i < inner.size(); ++i)
            m.params["a" + std::to_string(i + 1)] = inner[i];
        // innermost iterated log must stay nonnegative
        double lo = 1.0;
        for (size_t i = 1; i < inner.size(); ++i) lo = std::exp(lo);
        m.func = RealFunc::closed_form(
            "iterated_log_exp",
            [alpha, inner](double t) {
                double l = std::log(t);
                double prod = 1.0;
                for (double a : inner) {
                    prod *= std::pow(l, a);
                    l = std::log(l);
                }
                return std::pow(t, alpha) * std::exp(prod);
            },
            lo, std::numeric_limits<double>::infinity(), {}, m.params);
        return finish(std::move(m), std::max(16.0, 2.0 * lo), 1e5);
    }
    throw std::invalid_argument("make_majorant: unknown name '" + name + "'");
}

std::vector<std::string> majorant_names() {
    return {"power", "power_log", "log_power", "loglog", "exp_log_ratio",
            "iterated_log_exp"};
}

std::vector<Majorant> catalog_majorants() {
    std::vector<Majorant> out;
    for (const auto& name : majorant_names())
        out.push_back(make_majorant(name, {{"alpha", 0.5}}));
    return out;
}

EquivalenceScan omega_equivalence_scan(const PosFunc& phi, double beta,
                                       const Eigen::ArrayXd& grid, double ad_threshold) {
    EquivalenceScan scan;
    for (int k = 1; k <= 10; ++k) {
        const double eps = beta / std::pow(2.0, k);
        BoundReport rep = check_almost_decreasing(phi, beta, eps, grid, ad_threshold);
        if (rep.pass) {
            scan.found = true;
            scan.eps = eps;
            scan.almost_decreasing = std::move(rep);
            break;
        }
    }
    if (!scan.found) return scan;
    scan.omega = check_omega(phi, beta, grid);
    scan.chained_bound = (2.0 / scan.eps) * scan.almost_decreasing.ratio_sup;
    return scan;
}

Eigen::ArrayXd default_small_grid() { return logspace(1e-4, 1.0, defaults::grid_per_decade); }
Eigen::ArrayXd default_large_grid() { return logspace(1.0, 1e4, defaults::grid_per_decade); }

}  // namespace decaylab
