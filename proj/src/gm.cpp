#include "decaylab/gm.hpp"

#include <algorithm>
#include <cmath>

#include "decaylab/catalog.hpp"

namespace decaylab {

BVProfile BVProfile::closed(std::string name, RealFunc f, RealFunc df) {
    BVProfile g;
    g.name = std::move(name);
    g.profile = std::move(f);
    g.derivative = std::move(df);
    return g;
}

BVProfile spectral_bv_profile(const std::string& catalog_name, int d,
                              const std::map<std::string, double>& params) {
    RadialProfile p = get_fourier_profile(catalog_name, d, params);
    BVProfile g;
    g.name = catalog_name;
    g.profile = p.profile;

    if (catalog_name == "gaussian") {
        const double c = std::pow(2.0 * M_PI, 0.5 * d);
        g.derivative = RealFunc::closed_form(
            "gaussian_fourier'", [c](double s) { return -c * s * std::exp(-0.5 * s * s); });
    } else if (catalog_name == "exponential_spectrum") {
        g.derivative =
            RealFunc::closed_form("exp_spectrum'", [](double s) { return -std::exp(-s); });
    } else if (catalog_name == "ball_indicator") {
        const double cd = sphere_area(d) / d;
        const double nu = 0.5 * d;
        // derivative of c j_{d/2}(s): j_nu'(s) = -s j_{nu+1}(s) / (2 nu + 2)
        g.derivative = RealFunc::closed_form(
            "ball_fourier'", [cd, nu](double s) {
                return -cd * s * normalized_bessel(nu + 1.0, s) / (2.0 * nu + 2.0);
            });
    } else if (catalog_name == "power_tail" || catalog_name == "remark_counterexample") {
        const double sigma = p.profile.params().count("exponent")
                                 ? p.profile.params().at("exponent")
                                 : p.profile.params().at("sigma");
        g.derivative = RealFunc::closed_form(
            "power_tail'",
            [sigma](double s) {
                return s > 1.0 ? -sigma * std::pow(s, -sigma - 1.0) : 0.0;
            },
            0.0, std::numeric_limits<double>::infinity(), {1.0});
    }
    return g;
}

namespace {

double jump_sum(const RealFunc& f, double a, double b,
                const std::function<double(double)>& weight) {
    double acc = 0.0;
    for (double bp : f.breakpoints()) {
        if (bp <= a || bp >= b) continue;
        const double lo = f(bp * (1.0 - 1e-9)), hi = f(bp * (1.0 + 1e-9));
        acc += weight(bp) * std::abs(hi - lo);
    }
    return acc;
}

// weighted variation over a finite range via the closed-form derivative:
// split at sign changes of g', then int weight |g'| = |int weight g'| piecewise
double var_range_derivative(const BVProfile& g, double a, double b,
                            const std::function<double(double)>& weight,
                            const QuadratureSpec& quad) {
    const RealFunc& df = g.derivative;
    std::vector<double> knots{a};
    const Eigen::ArrayXd scan = logspace(a, b, 128);
    double px = scan[0];
    double ps = df(px);
    for (Eigen::Index i = 1; i < scan.size(); ++i) {
        const double x = scan[i];
        const double s = df(x);
        if ((ps < 0.0 && s > 0.0) || (ps > 0.0 && s < 0.0)) {
            double lo = px, hi = x;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double sm = df(mid);
                if ((sm < 0.0) == (ps < 0.0)) lo = mid;
                else hi = mid;
            }
            knots.push_back(0.5 * (lo + hi));
        }
        px = x;
        ps = s;
    }
    knots.push_back(b);
    double total = jump_sum(g.profile, a, b, weight);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i + 1] > knots[i])) continue;
        total += std::abs(integrate([&](double s) { return weight(s) * df(s); }, knots[i],
                                    knots[i + 1], quad, 0.0, g.profile.breakpoints()));
    }
    return total;
}

// grid path: refined increment sums with one Richardson extrapolation step
double var_range_increments(const BVProfile& g, double a, double b,
                            const std::function<double(double)>& weight) {
    const RealFunc& f = g.profile;
    double prev = -1.0;
    for (int level = 0; level < 14; ++level) {
        const int per_decade = 64 << level;
        Eigen::ArrayXd pts = logspace(a, b, per_decade);
        double v = 0.0;
        double pv = f(pts[0]);
        for (Eigen::Index i = 1; i < pts.size(); ++i) {
            const double cv = f(pts[i]);
            v += weight(std::sqrt(pts[i - 1] * pts[i])) * std::abs(cv - pv);
            pv = cv;
        }
        if (prev >= 0.0 && std::abs(v - prev) <= 1e-7 * std::max(v, 1e-300))
            return v + (v - prev) / 3.0;
        prev = v;
    }
    throw quadrature_error("weighted_variation: increment sums do not stabilize");
}

double var_range(const BVProfile& g, double a, double b,
                 const std::function<double(double)>& weight, const QuadratureSpec& quad) {
    if (b <= a) return 0.0;
    if (g.derivative.valid()) return var_range_derivative(g, a, b, weight, quad);
    return var_range_increments(g, a, b, weight);
}

}  // namespace

ImproperResult weighted_variation(const BVProfile& g, double t, double T,
                                  const std::function<double(double)>& weight,
                                  const QuadratureSpec& quad) {
    double a = std::max(t, 1e-12);
    if (g.profile.is_sampled()) {
        a = std::max(a, g.profile.domain_min());
        T = std::min(T, g.profile.domain_max());
    }
    if (std::isfinite(T)) {
        ImproperResult res;
        res.value = var_range(g, a, T, weight, quad);
        res.status = TailStatus::converged;
        return res;
    }

    // decade probes toward infinity
    double t0 = std::max(16.0, 2.0 * a);
    for (double bp : g.profile.breakpoints()) t0 = std::max(t0, 2.0 * bp);
    ImproperResult res;
    res.value = var_range(g, a, t0, weight, quad);
    double lo = t0, prev_inc = 0.0, inc = 0.0;
    for (int k = 0; k < 10; ++k) {
        prev_inc = inc;
        inc = var_range(g, lo, 10.0 * lo, weight, quad);
        res.blocks++;
        res.value += inc;
        lo *= 10.0;
        const double scale = std::max(res.value, 1e-300);
        if (inc <= 1e-12 * scale && k >= 1) {
            res.status = TailStatus::converged;
            res.last_increment = inc;
            return res;
        }
    }
    res.last_increment = inc;
    res.increment_ratio = prev_inc > 0.0 ? inc / prev_inc : 0.0;
    if (res.increment_ratio < 0.999 && prev_inc > 0.0) {
        res.tail_estimate = inc * res.increment_ratio / (1.0 - res.increment_ratio);
        res.value += res.tail_estimate;
        res.status = TailStatus::completed;
    } else {
        res.status = TailStatus::divergent;
    }
    return res;
}

double variation_tail(const BVProfile& g, double t, double T, const QuadratureSpec& quad) {
    ImproperResult res = weighted_variation(g, t, T, [](double) { return 1.0; }, quad);
    if (res.status == TailStatus::divergent)
        throw divergence_error("variation_tail: variation grows without stabilizing");
    return res.value;
}

json GMReport::to_json() const {
    json j;
    j["c"] = json_number(c);
    j["bound"] = bound.to_json();
    j["vanishing"] = vanishing;
    j["smallest_passing_c"] = json_number(smallest_passing_c);
    j["c_scan"] = c_scan;
    j["pass"] = pass;
    return j;
}

namespace {

// sup |g| over [X, 10X], sampled
double probe_sup(const RealFunc& f, double x) {
    double s = 0.0;
    const Eigen::ArrayXd pts = logspace(x, 10.0 * x, 64);
    for (Eigen::Index i = 0; i < pts.size(); ++i) s = std::max(s, std::abs(f(pts[i])));
    return s;
}

}  // namespace

GMReport check_gm(const BVProfile& g, double c, const Eigen::ArrayXd& grid_in,
                  const QuadratureSpec& quad, double threshold) {
    if (!(c >= 1.0)) throw std::invalid_argument("check_gm: c must be >= 1");
    Eigen::ArrayXd grid = grid_in.size() ? grid_in : logspace(1e-2, 1e2, 8);

    GMReport rep;
    rep.c = c;

    // vanishing at infinity: tail sups must halve under x10 domain growth;
    // sampled profiles are probed inside their own range
    bool vanishing;
    if (g.profile.is_sampled()) {
        const double hi = g.profile.domain_max();
        const double lo = g.profile.domain_min();
        if (hi / lo < 100.0) {
            vanishing = false;  // no room to probe
        } else {
            const double s1 = probe_sup(g.profile, hi / 100.0);
            const double s2 = probe_sup(g.profile, hi / 10.0);
            vanishing = s2 < 0.5 * s1 || s1 < 1e-300;
        }
    } else {
        const double x0 = std::max(grid[grid.size() - 1], 10.0);
        const double s1 = probe_sup(g.profile, x0);
        const double s2 = probe_sup(g.profile, 10.0 * x0);
        const double s3 = probe_sup(g.profile, 100.0 * x0);
        vanishing = (s2 < 0.5 * s1 || s1 < 1e-300) && (s3 < 0.5 * s2 || s2 < 1e-300);
    }
    rep.vanishing = vanishing;

    // lhs: tail variation (c-independent)
    Eigen::ArrayXd lhs(grid.size());
    bool lhs_divergent = false, lhs_unstable = false;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (!rep.vanishing) {
            // keep the report computable: cap the window instead of probing
            try {
                const double cap = std::min(10.0 * grid[grid.size() - 1],
                                            g.profile.domain_max());
                lhs[i] = var_range(g, std::max(grid[i], g.profile.domain_min()), cap,
                                   [](double) { return 1.0; }, quad);
            } catch (const quadrature_error&) {
                lhs[i] = std::numeric_limits<double>::quiet_NaN();
                lhs_unstable = true;
            }
            continue;
        }
        ImproperResult v = weighted_variation(
            g, grid[i], std::numeric_limits<double>::infinity(),
            [](double) { return 1.0; }, quad);
        if (v.status == TailStatus::divergent) lhs_divergent = true;
        lhs[i] = v.value;
    }

    const auto rhs_at = [&](double t, double cc) {
        const auto integrand = [&](double s) { return std::abs(g.profile(s)) / s; };
        const double from = t / cc;
        double t0 = std::max(16.0, 2.0 * from);
        for (double bp : g.profile.breakpoints()) t0 = std::max(t0, 2.0 * bp);
        if (g.profile.is_sampled()) {
            return integrate(integrand, std::max(from, g.profile.domain_min()),
                             g.profile.domain_max(), quad, 0.0, g.profile.breakpoints());
        }
        ImproperResult res = integrate_upper(integrand, from, t0, quad, 0.0,
                                             g.profile.breakpoints());
        if (res.status == TailStatus::divergent) {
            if (rep.vanishing)
                throw divergence_error("check_gm: weighted tail of |g| diverges");
            return std::numeric_limits<double>::quiet_NaN();
        }
        return res.value;
    };

    // c-scan; the requested c rides along
    std::vector<double> cs{1.0, 2.0, 4.0, 8.0};
    if (std::find(cs.begin(), cs.end(), c) == cs.end()) {
        cs.push_back(c);
        std::sort(cs.begin(), cs.end());
    }
    rep.c_scan = json::array();
    rep.smallest_passing_c = std::numeric_limits<double>::quiet_NaN();
    Eigen::ArrayXd rhs_c(grid.size());
    for (double cc : cs) {
        Eigen::ArrayXd rhs(grid.size());
        for (Eigen::Index i = 0; i < grid.size(); ++i) rhs[i] = rhs_at(grid[i], cc);
        BoundReport b = BoundReport::evaluate(grid, lhs, rhs, threshold);
        const bool ok = rep.vanishing && !lhs_divergent && b.pass;
        rep.c_scan.push_back(json{{"c", json_number(cc)},
                                  {"ratio_sup", json_number(b.ratio_sup)},
                                  {"pass", ok}});
        if (ok && std::isnan(rep.smallest_passing_c)) rep.smallest_passing_c = cc;
        if (cc == c) {
            rep.bound = std::move(b);
            rhs_c = rhs;
        }
    }

    if (!rep.vanishing) rep.bound.tag = "not-vanishing";
    else if (lhs_divergent) rep.bound.tag = "variation-divergent";
    else if (lhs_unstable) rep.bound.tag = "variation-unstable";
    rep.pass = rep.vanishing && !lhs_divergent && !lhs_unstable && rep.bound.pass;
    if (!rep.pass && rep.bound.pass) rep.bound.pass = false;
    return rep;
}

json GMdReport::to_json() const {
    json j;
    j["d"] = d;
    j["first_term"] = json_number(first_term);
    j["second_term"] = json_number(second_term);
    j["first_status"] = to_string(first_status);
    j["second_status"] = to_string(second_status);
    j["gm"] = gm.to_json();
    j["pass"] = pass;
    return j;
}

GMdReport check_gm_d(const BVProfile& g, int d, const QuadratureSpec& quad, bool enforce) {
    if (d < 1) throw std::invalid_argument("check_gm_d: d must be >= 1");
    GMdReport rep;
    rep.d = d;
    rep.gm = check_gm(g, 2.0, Eigen::ArrayXd(), quad);
    if (enforce && !rep.gm.pass)
        throw precondition_error("check_gm_d: g is not general monotone",
                                 json::array({rep.gm.to_json()}));

    const auto first_integrand = [&](double s) {
        return std::pow(s, d - 1) * std::abs(g.profile(s));
    };
    ImproperResult first;
    if (g.profile.is_sampled()) {
        first.value = integrate(first_integrand, g.profile.domain_min(), 1.0, quad, 0.0,
                                g.profile.breakpoints());
        first.status = TailStatus::truncated;
    } else {
        first = integrate_lower(first_integrand, 1.0, 0.5, quad, g.profile.breakpoints());
    }
    rep.first_term = first.value;
    rep.first_status = first.status;

    const double e = 0.5 * (d - 1);
    ImproperResult second = weighted_variation(
        g, 1.0, std::numeric_limits<double>::infinity(),
        [e](double s) { return std::pow(s, e); }, quad);
    rep.second_term = second.value;
    rep.second_status = second.status;

    rep.pass = rep.gm.pass && rep.first_status != TailStatus::divergent &&
               rep.second_status != TailStatus::divergent;
    return rep;
}

json GMPair::to_json() const {
    json j;
    j["membership"] = membership.to_json();
    j["p"] = json_number(p);
    j["lp_norm"] = json_number(lp_norm);
    j["in_lp"] = in_lp;
    j["provenance"] = pair.provenance;
    return j;
}

GMPair build_gm_pair(const BVProfile& F0, int d, double p, const Eigen::ArrayXd& out_grid,
                     const QuadratureSpec& quad, bool enforce) {
    GMPair gp;
    gp.p = p;
    gp.membership = check_gm_d(F0, d, quad, enforce);
    if (enforce && !gp.membership.pass)
        throw precondition_error("build_gm_pair: F0 is not in GM^d",
                                 json::array({gp.membership.to_json()}));

    RadialProfile fourier;
    fourier.d = d;
    fourier.side = Side::fourier;
    fourier.profile = F0.profile;
    fourier.provenance = "gm-spectral";
    fourier.default_grid = logspace(1e-2, 1e2, 16);

    Eigen::ArrayXd grid = out_grid.size() ? out_grid : logspace(1e-2, 50.0, 12);
    gp.pair.d = d;
    gp.pair.fourier = fourier;
    gp.pair.space = fourier_radial(fourier, grid, quad);
    gp.pair.provenance = "gm-transform";

    gp.lp_norm = radial_lp_norm(gp.pair.space, p, quad);
    gp.in_lp = std::isfinite(gp.lp_norm);
    return gp;
}

namespace {

bool nonnegative_on_grid(const RealFunc& f, const Eigen::ArrayXd& grid) {
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        if (f(grid[i]) < -1e-12) return false;
    return true;
}

}  // namespace

TwoSidedReport relaxed_two_sided(const MultiplierFamily& fam, const GMPair& gp,
                                 const RatePair& rate, const Eigen::ArrayXd& t_grid,
                                 const QuadratureSpec& quad, bool enforce) {
    rate.validate();
    TwoSidedReport rep;
    const double p = rate.p, q = rate.q;
    const int d = rate.d;

    const bool nonneg = nonnegative_on_grid(gp.pair.fourier.profile,
                                            gp.pair.fourier.default_grid.size()
                                                ? gp.pair.fourier.default_grid
                                                : logspace(1e-2, 1e2, 16));
    const bool pre_a = p <= q && nonneg;
    bool pre_b = q <= p && p > 2.0 * d / (d + 1.0);
    rep.preconditions.push_back(json{{"check", "membership"},
                                     {"pass", gp.membership.pass}});
    rep.preconditions.push_back(
        json{{"check", "part A: 1<p<=q and nonnegative spectral profile"},
             {"pass", pre_a},
             {"nonnegative", nonneg}});
    if (enforce && !gp.membership.pass)
        throw precondition_error("relaxed_two_sided: pair is not in GM^d",
                                 rep.preconditions);
    if (pre_b) {
        ImproperResult qn = weighted_qnorm_power(gp.pair.fourier, rate.w(), q, quad);
        const bool finite = qn.status != TailStatus::divergent;
        rep.preconditions.push_back(json{{"check", "part B: finite weighted q-norm"},
                                         {"pass", finite},
                                         {"value", json_number(qn.value)}});
        pre_b = finite;
    } else {
        rep.preconditions.push_back(
            json{{"check", "part B: 1<q<=p and p > 2d/(d+1)"}, {"pass", false}});
    }
    if (!pre_a && !pre_b)
        throw precondition_error("relaxed_two_sided: neither part's hypotheses hold",
                                 rep.preconditions);

    Eigen::ArrayXd grid = t_grid.size() ? t_grid : CheckGrids::defaults().t_small;
    Eigen::ArrayXd jv, ev;
    two_sided_tables(fam, gp.pair, rate, grid, quad, jv, ev);

    if (pre_a) {
        AsymptoticVerdict a;
        static_cast<BoundReport&>(a) =
            BoundReport::evaluate(grid, jv, ev, defaults::bound_threshold);
        a.regime = "t->0+";
        rep.part_a = std::move(a);
    }
    if (pre_b) {
        AsymptoticVerdict b;
        static_cast<BoundReport&>(b) =
            BoundReport::evaluate(grid, ev, jv, defaults::bound_threshold);
        b.regime = "t->0+";
        rep.part_b = std::move(b);
    }
    return rep;
}

json RelaxedLipReport::to_json() const {
    json j;
    j["forward"] = forward ? forward->to_json() : json();
    j["backward"] = backward ? backward->to_json() : json();
    j["iff_asserted"] = iff_asserted;
    j["pass"] = pass;
    return j;
}

RelaxedLipReport relaxed_lip_titchmarsh(const MultiplierFamily& fam, const GMPair& gp,
                                        double p, double q, const PosFunc& phi,
                                        const CheckGrids& grids, const QuadratureSpec& quad,
                                        bool enforce) {
    RelaxedLipReport rep;
    const int d = gp.pair.d;
    const double gamma = fam.gamma;
    const Eigen::ArrayXd t_chain = [&] {
        Eigen::ArrayXd g(grids.t_large.size());
        for (Eigen::Index i = 0; i < g.size(); ++i)
            g[i] = 1.0 / grids.t_large[grids.t_large.size() - 1 - i];
        return g;
    }();

    const bool nonneg = nonnegative_on_grid(gp.pair.fourier.profile,
                                            logspace(1e-2, 1e2, 16));

    if (p <= q && nonneg) {  // forward: Lip + membership => shell bound in q
        ImplicationReport fwd;
        fwd.name = "relaxed_forward";
        RatePair rate{p, q, d};
        AsymptoticVerdict lip = lip_check(fam, gp.pair, p, phi, gamma, t_chain, quad, enforce);
        fwd.preconditions = lip.extra["preconditions"];
        fwd.preconditions.push_back(json{{"check", "membership"},
                                         {"pass", gp.membership.pass}});

        Eigen::ArrayXd jv, ev;
        two_sided_tables(fam, gp.pair, rate, t_chain, quad, jv, ev);
        BoundReport a = BoundReport::evaluate(t_chain, jv, ev, defaults::bound_threshold);

        AsymptoticVerdict shell = shell_decay_check(gp.pair.fourier, rate, phi,
                                                    grids.t_large, quad);
        fwd.hypothesis = std::move(lip);
        fwd.conclusion = std::move(shell);
        fwd.chain_constant = a.ratio_sup * fwd.hypothesis.ratio_sup;
        fwd.chain_ok = fwd.conclusion.ratio_sup <= fwd.chain_constant * 1.001 + 1e-12;
        fwd.pass = fwd.hypothesis.pass && fwd.conclusion.pass && fwd.chain_ok;
        rep.forward = std::move(fwd);
    }

    if (q <= p && q > 2.0 * d / (d + 1.0)) {
        // backward: shell bound in exponent p gives Lip in exponent q
        ImplicationReport bwd;
        bwd.name = "relaxed_backward";
        RatePair rate_mixed{p, q, d};
        Eigen::ArrayXd grid = grids.t_large;
        Eigen::ArrayXd lhs(grid.size()), rhs(grid.size());
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            lhs[i] = shell_integral(gp.pair.fourier, grid[i], rate_mixed.w(), p, quad);
            rhs[i] = phi(1.0 / grid[i]);
        }
        AsymptoticVerdict shell;
        static_cast<BoundReport&>(shell) =
            BoundReport::evaluate(grid, lhs, rhs, defaults::bound_threshold);
        shell.regime = "t->inf";
        shell.extra["exponent"] = json_number(p);

        AsymptoticVerdict lip = lip_check(fam, gp.pair, q, phi, gamma, t_chain, quad, enforce);
        bwd.preconditions = lip.extra["preconditions"];

        bwd.hypothesis = std::move(shell);
        bwd.conclusion = std::move(lip);
        if (p == q) {
            RatePair rate{p, q, d};
            Eigen::ArrayXd jv, ev;
            two_sided_tables(fam, gp.pair, rate, t_chain, quad, jv, ev);
            BoundReport b = BoundReport::evaluate(t_chain, ev, jv, defaults::bound_threshold);
            bwd.chain_constant = b.ratio_sup;
            bwd.extra["part_b_constant"] = json_number(b.ratio_sup);
        } else {
            bwd.extra["note"] = "mixed exponents: constants reported, not chained";
        }
        bwd.chain_ok = true;
        bwd.pass = bwd.hypothesis.pass && bwd.conclusion.pass;
        rep.backward = std::move(bwd);
    }

    if (!rep.forward && !rep.backward)
        throw precondition_error("relaxed_lip_titchmarsh: no direction applies",
                                 json::array({json{{"p", p}, {"q", q}, {"d", d},
                                                   {"nonnegative", nonneg}}}));
    rep.iff_asserted = (p == q) && rep.forward && rep.backward;
    rep.pass = (!rep.forward || rep.forward->pass) && (!rep.backward || rep.backward->pass);
    return rep;
}

AsymptoticVerdict riemann_lebesgue_bound(const GMPair& gp, double q, const PosFunc& phi,
                                         const Eigen::ArrayXd& xi_grid, double c,
                                         const QuadratureSpec& quad, bool enforce) {
    if (!(q > 1.0)) throw std::invalid_argument("riemann_lebesgue_bound: need q > 1");
    if (!(c >= 1.0)) throw std::invalid_argument("riemann_lebesgue_bound: need c >= 1");
    if (enforce && !gp.membership.pass)
        throw precondition_error("riemann_lebesgue_bound: pair is not in GM^d",
                                 json::array({gp.membership.to_json()}));

    const int d = gp.pair.d;
    const double dq = d * (1.0 - 1.0 / q);  // d / q'
    const RealFunc& F = gp.pair.fourier.profile;
    Eigen::ArrayXd grid = xi_grid.size() ? xi_grid : logspace(1.0, 1e3, 16);

    Eigen::ArrayXd lhs(grid.size()), rhs(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        lhs[i] = std::abs(F(grid[i]));
        rhs[i] = std::pow(grid[i], -dq) * phi(1.0 / grid[i]);
    }
    AsymptoticVerdict v;
    static_cast<BoundReport&>(v) =
        BoundReport::evaluate(grid, lhs, rhs, defaults::bound_threshold);
    v.regime = "xi->inf";

    // intermediate Holder step
    Eigen::ArrayXd h_lhs(grid.size()), h_rhs(grid.size());
    bool divergent = false;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const auto integrand = [&](double s) {
            return std::pow(s, q * d - d - 1.0) * std::pow(std::abs(F(s)), q);
        };
        const double from = t / c;
        double t0 = std::max(16.0, 2.0 * from);
        for (double bp : F.breakpoints()) t0 = std::max(t0, 2.0 * bp);
        ImproperResult res =
            integrate_upper(integrand, from, t0, quad, 0.0, F.breakpoints());
        if (res.status == TailStatus::divergent) divergent = true;
        h_lhs[i] = std::abs(F(t));
        h_rhs[i] = std::pow(t, -dq) * std::pow(res.value, 1.0 / q);
    }
    BoundReport holder = BoundReport::evaluate(grid, h_lhs, h_rhs,
                                               defaults::bound_threshold);
    if (divergent) {
        holder.pass = false;
        holder.tag = "divergent-tail";
        v.pass = false;
        v.tag = "divergent-tail";
    }
    v.extra["holder_step"] = holder.to_json();
    v.extra["c"] = json_number(c);
    v.extra["membership_pass"] = gp.membership.pass;
    return v;
}

BesovValue relaxed_besov_criterion(const RadialProfile& F, double q, const PosFunc& phi,
                                   const QuadratureSpec& quad) {
    if (!(q > 1.0) || !std::isfinite(q))
        throw std::invalid_argument("relaxed_besov_criterion: need 1 < q < inf");
    const int d = F.d;
    const RealFunc& f = F.profile;
    const auto integrand = [&](double t) {
        const double e = d * (q - 1.0) - 1.0;
        return std::pow(t, e) * std::pow(std::abs(f(t)) / phi(1.0 / t), q);
    };
    double t0 = 16.0;
    for (double bp : f.breakpoints()) t0 = std::max(t0, 2.0 * bp);
    ImproperResult up = integrate_upper(integrand, 1e-2, t0, quad, 0.0, f.breakpoints());
    ImproperResult low = integrate_lower(integrand, 1e-2, 0.5e-2, quad, f.breakpoints());
    BesovValue out;
    out.value = up.value + low.value;
    out.status = (up.status == TailStatus::divergent || low.status == TailStatus::divergent)
                     ? TailStatus::divergent
                     : up.status;
    out.detail = json{{"upper_status", to_string(up.status)},
                      {"lower_status", to_string(low.status)}};
    return out;
}

json RelaxedBesovReport::to_json() const {
    json j;
    j["forward"] = forward ? forward->to_json() : json();
    j["backward"] = backward ? backward->to_json() : json();
    j["iff_asserted"] = iff_asserted;
    j["pass"] = pass;
    return j;
}

RelaxedBesovReport relaxed_besov(const MultiplierFamily& fam, const GMPair& gp, double p,
                                 double q, const PosFunc& phi, const QuadratureSpec& quad,
                                 bool enforce) {
    RelaxedBesovReport rep;
    const int d = gp.pair.d;
    const bool nonneg = nonnegative_on_grid(gp.pair.fourier.profile,
                                            logspace(1e-2, 1e2, 16));

    BesovValue crit = relaxed_besov_criterion(gp.pair.fourier, q, phi, quad);
    const bool crit_finite = crit.status != TailStatus::divergent;

    std::optional<BesovValue> besov;
    const auto get_besov = [&]() -> const BesovValue& {
        if (!besov) besov = besov_functional(fam, gp.pair, p, q, phi, quad, enforce);
        return *besov;
    };

    if (p <= q && nonneg) {
        ImplicationReport fwd;
        fwd.name = "relaxed_besov_forward";
        const BesovValue& b = get_besov();
        const bool b_finite = b.status != TailStatus::divergent;
        fwd.hypothesis.regime = "integral";
        fwd.hypothesis.pass = b_finite;
        fwd.hypothesis.extra = json{{"besov_functional", json_number(b.value)},
                                    {"status", to_string(b.status)}};
        fwd.conclusion.regime = "integral";
        fwd.conclusion.pass = crit_finite;
        fwd.conclusion.extra = json{{"criterion", json_number(crit.value)},
                                    {"status", to_string(crit.status)}};
        fwd.chain_constant = crit.value / std::max(b.value, 1e-300);
        fwd.chain_ok = std::isfinite(fwd.chain_constant);
        fwd.pass = !b_finite || crit_finite;
        rep.forward = std::move(fwd);
    }
    if (q <= p && p > 2.0 * d / (d + 1.0)) {
        ImplicationReport bwd;
        bwd.name = "relaxed_besov_backward";
        RatePair rate{p, q, d};
        ImproperResult qn = weighted_qnorm_power(gp.pair.fourier, rate.w(), q, quad);
        bwd.preconditions.push_back(json{{"check", "finite weighted q-norm"},
                                         {"pass", qn.status != TailStatus::divergent},
                                         {"value", json_number(qn.value)}});
        const BesovValue& b = get_besov();
        const bool b_finite = b.status != TailStatus::divergent;
        bwd.hypothesis.regime = "integral";
        bwd.hypothesis.pass = crit_finite;
        bwd.hypothesis.extra = json{{"criterion", json_number(crit.value)},
                                    {"status", to_string(crit.status)}};
        bwd.conclusion.regime = "integral";
        bwd.conclusion.pass = b_finite;
        bwd.conclusion.extra = json{{"besov_functional", json_number(b.value)},
                                    {"status", to_string(b.status)}};
        bwd.chain_constant = b.value / (qn.value + crit.value);
        bwd.chain_ok = std::isfinite(bwd.chain_constant);
        bwd.pass = !crit_finite || b_finite;
        rep.backward = std::move(bwd);
    }
    if (!rep.forward && !rep.backward)
        throw precondition_error("relaxed_besov: no direction applies",
                                 json::array({json{{"p", p}, {"q", q}, {"d", d},
                                                   {"nonnegative", nonneg}}}));
    rep.iff_asserted = (p == q) && rep.forward && rep.backward;
    rep.pass = (!rep.forward || rep.forward->pass) && (!rep.backward || rep.backward->pass);
    return rep;
}

}  // namespace decaylab
