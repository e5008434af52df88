#include "decaylab/smoothness.hpp"

#include <algorithm>
#include <cmath>

#include "decaylab/catalog.hpp"

namespace decaylab {

namespace {

Eigen::ArrayXd majorant_grid_for(const PosFunc& phi) {
    const double lo = std::max(1.0, 2.0 * phi.domain_min());
    double hi = lo * 1e4;
    if (std::isfinite(phi.domain_max())) hi = std::min(hi, 0.999 * phi.domain_max());
    if (!(hi > 10.0 * lo))
        throw std::invalid_argument("majorant domain too small for membership checks");
    return logspace(lo, hi, defaults::grid_per_decade);
}

Eigen::ArrayXd inverse_grid(const Eigen::ArrayXd& g) {
    Eigen::ArrayXd out(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) out[i] = 1.0 / g[g.size() - 1 - i];
    return out;
}

json precondition_entry(const std::string& what, const BoundReport& rep) {
    return json{{"check", what},
                {"pass", rep.pass},
                {"ratio_inf", json_number(rep.ratio_inf)},
                {"ratio_sup", json_number(rep.ratio_sup)},
                {"tag", rep.tag}};
}

// sigma_{d-1} int [factor(s) s^w |F(s)|]^q s^{d-1} ds over the profile's
// whole range, with decade probes on both improper ends.
ImproperResult weighted_improper_full(const RadialProfile& F,
                                      const std::function<double(double)>& factor,
                                      double w, double q, const QuadratureSpec& quad,
                                      std::vector<double> extra_breakpoints = {}) {
    const RealFunc& f = F.profile;
    const int d = F.d;
    const auto integrand = [&](double s) {
        const double base = factor(s) * std::pow(s, w) * std::abs(f(s));
        return std::pow(base, q) * std::pow(s, d - 1);
    };
    std::vector<double> bps = f.breakpoints();
    bps.insert(bps.end(), extra_breakpoints.begin(), extra_breakpoints.end());

    if (f.is_sampled()) {
        ImproperResult res;
        res.value = sphere_area(d) *
                    integrate(integrand, f.domain_min(), f.domain_max(), quad, 0.0, bps);
        res.status = TailStatus::truncated;
        return res;
    }
    double t0 = std::max(16.0, 64.0 * quad.r_min);
    for (double b : bps) t0 = std::max(t0, 2.0 * b);
    t0 = std::min(t0, quad.r_max);
    const double a = std::min(quad.r_min, t0 / 4.0);
    ImproperResult up = integrate_upper(integrand, a, t0, quad, 0.0, bps);
    ImproperResult low = integrate_lower(integrand, a, a / 2.0, quad, bps);
    ImproperResult res = up;
    res.value = sphere_area(d) * (up.value + low.value);
    res.tail_estimate = sphere_area(d) * (up.tail_estimate + low.tail_estimate);
    if (low.status == TailStatus::divergent) res.status = TailStatus::divergent;
    return res;
}

}  // namespace

void RatePair::validate() const {
    if (!(p > 1.0)) throw std::invalid_argument("RatePair: need p > 1");
    if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("RatePair: need 1 < q < inf");
    if (d < 1) throw std::invalid_argument("RatePair: need d >= 1");
}

json RatePair::to_json() const {
    return json{{"p", json_number(p)},     {"q", json_number(q)},
                {"d", d},                  {"p_prime", json_number(p_prime())},
                {"w", json_number(w())},   {"forward_ok", forward_ok()},
                {"backward_ok", backward_ok()}};
}

CheckGrids CheckGrids::defaults() {
    CheckGrids g;
    g.t_small = logspace(1e-3, 1e-1, 16);
    g.t_large = logspace(1.0, 1e3, 8);
    g.h_small = logspace(1e-3, 1.0, 8);
    return g;
}

json ImplicationReport::to_json() const {
    json j;
    j["name"] = name;
    j["preconditions"] = preconditions;
    j["hypothesis"] = hypothesis.to_json();
    j["conclusion"] = conclusion.to_json();
    j["chain_constant"] = json_number(chain_constant);
    j["chain_ok"] = chain_ok;
    j["pass"] = pass;
    if (!extra.is_null()) j["extra"] = extra;
    return j;
}

AsymptoticVerdict lip_check(const MultiplierFamily& fam, const RadialPair& pair, double p,
                            const PosFunc& phi, double beta, const Eigen::ArrayXd& t_grid,
                            const QuadratureSpec& quad, bool enforce, double threshold) {
    if (std::abs(beta - fam.gamma) > 1e-12)
        throw std::invalid_argument("lip_check: the Lipschitz order is the family's order");

    json pre = json::array();
    AdmissibilityReport adm = check_admissible(fam);
    pre.push_back(precondition_entry("admissibility gamma=" + std::to_string(fam.gamma), adm));
    BoundReport om = check_omega(phi, 2.0 * beta, majorant_grid_for(phi));
    pre.push_back(precondition_entry("phi in Omega_{2beta}", om));
    if (enforce && !(adm.pass && om.pass))
        throw precondition_error("lip_check: hypotheses not met", pre);

    Eigen::ArrayXd grid = t_grid.size() ? t_grid : CheckGrids::defaults().t_small;
    Eigen::ArrayXd lhs(grid.size()), rhs(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        lhs[i] = approx_error_norm(fam, grid[i], pair, p, quad);
        rhs[i] = phi(grid[i]);
    }
    AsymptoticVerdict v;
    static_cast<BoundReport&>(v) = BoundReport::evaluate(grid, lhs, rhs, threshold);
    v.regime = "t->0+";
    v.extra["preconditions"] = pre;
    v.extra["p"] = json_number(p);
    return v;
}

AsymptoticVerdict shell_decay_check(const RadialProfile& F, const RatePair& rate,
                                    const PosFunc& phi, const Eigen::ArrayXd& t_grid,
                                    const QuadratureSpec& quad, double threshold) {
    rate.validate();
    Eigen::ArrayXd grid = t_grid.size() ? t_grid : CheckGrids::defaults().t_large;
    Eigen::ArrayXd lhs(grid.size()), rhs(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        lhs[i] = shell_integral(F, grid[i], rate.w(), rate.q, quad);
        rhs[i] = phi(1.0 / grid[i]);
    }
    AsymptoticVerdict v;
    static_cast<BoundReport&>(v) = BoundReport::evaluate(grid, lhs, rhs, threshold);
    v.regime = "t->inf";
    v.extra["w"] = json_number(rate.w());
    v.extra["q"] = json_number(rate.q);
    return v;
}

AsymptoticVerdict tail_decay_check(const RadialProfile& F, const RatePair& rate,
                                   const PosFunc& phi, const Eigen::ArrayXd& h_grid,
                                   const QuadratureSpec& quad, double threshold) {
    rate.validate();
    Eigen::ArrayXd grid = h_grid.size() ? h_grid : CheckGrids::defaults().h_small;
    Eigen::ArrayXd lhs(grid.size()), rhs(grid.size());
    bool divergent = false;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        ImproperResult res = tail_integral_power(F, 1.0 / grid[i], rate.w(), rate.q, quad);
        if (res.status == TailStatus::divergent) divergent = true;
        lhs[i] = std::pow(res.value, 1.0 / rate.q);
        rhs[i] = phi(grid[i]);
    }
    AsymptoticVerdict v;
    static_cast<BoundReport&>(v) = BoundReport::evaluate(grid, lhs, rhs, threshold);
    v.regime = "t->0+";
    if (divergent) {
        v.pass = false;
        v.tag = "divergent-tail";
    }
    return v;
}

EquivalenceReport lemma_equivalence(const RadialProfile& F, const RatePair& rate,
                                    const PosFunc& phi, const CheckGrids& grids,
                                    const QuadratureSpec& quad, bool enforce) {
    BoundReport m_rep = check_M(phi, grids.majorant.size() ? grids.majorant
                                                           : majorant_grid_for(phi));
    if (enforce && !m_rep.pass)
        throw precondition_error("lemma_equivalence: phi not in M",
                                 json::array({precondition_entry("phi in M", m_rep)}));

    EquivalenceReport rep;
    rep.shell = shell_decay_check(F, rate, phi, grids.t_large, quad);
    rep.tail = tail_decay_check(F, rate, phi, grids.h_small, quad);

    const double q = rate.q;
    const PosFunc phi_q = RealFunc::closed_form(
        "phi^q", [phi, q](double t) { return std::pow(phi(t), q); }, phi.domain_min(),
        phi.domain_max());
    rep.m_condition_q = check_M(phi_q, grids.majorant.size() ? grids.majorant
                                                             : majorant_grid_for(phi));
    rep.chain_bound = rep.shell.ratio_sup *
                      std::pow(1.0 + rep.m_condition_q.ratio_sup / std::log(2.0), 1.0 / q);
    const bool tail_finite = rep.tail.tag != "divergent-tail";
    rep.chain_ok = tail_finite && rep.tail.ratio_sup <= rep.chain_bound * 1.05;
    rep.pass = rep.shell.pass && rep.tail.pass && rep.chain_ok;
    return rep;
}

json EquivalenceReport::to_json() const {
    json j;
    j["shell"] = shell.to_json();
    j["tail"] = tail.to_json();
    j["m_condition_q"] = m_condition_q.to_json();
    j["chain_bound"] = json_number(chain_bound);
    j["chain_ok"] = chain_ok;
    j["pass"] = pass;
    return j;
}

double j_functional(double gamma, const RadialProfile& F, const RatePair& rate, double t,
                    const QuadratureSpec& quad) {
    if (!(t > 0.0)) throw std::invalid_argument("j_functional: t must be positive");
    const double g2 = 2.0 * gamma;
    ImproperResult res = weighted_improper_full(
        F, [t, g2](double s) { return std::pow(std::min(1.0, t * s), g2); }, rate.w(),
        rate.q, quad, {1.0 / t});
    if (res.status == TailStatus::divergent)
        throw divergence_error("j_functional: weighted integral diverges");
    return std::pow(res.value, 1.0 / rate.q);
}

ImproperResult weighted_qnorm_power(const RadialProfile& F, double w, double q,
                                    const QuadratureSpec& quad) {
    return weighted_improper_full(F, [](double) { return 1.0; }, w, q, quad);
}

void two_sided_tables(const MultiplierFamily& fam, const RadialPair& pair,
                      const RatePair& rate, const Eigen::ArrayXd& grid,
                      const QuadratureSpec& quad, Eigen::ArrayXd& j_out,
                      Eigen::ArrayXd& e_out) {
    j_out.resize(grid.size());
    e_out.resize(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        j_out[i] = j_functional(fam.gamma, pair.fourier, rate, grid[i], quad);
        e_out[i] = approx_error_norm(fam, grid[i], pair, rate.p, quad);
    }
}

json TwoSidedReport::to_json() const {
    json j;
    j["part_a"] = part_a ? part_a->to_json() : json();
    j["part_b"] = part_b ? part_b->to_json() : json();
    j["congruence_inf"] = json_number(congruence_inf);
    j["congruence_sup"] = json_number(congruence_sup);
    j["preconditions"] = preconditions;
    return j;
}

TwoSidedReport two_sided_estimate(const MultiplierFamily& fam, const RadialPair& pair,
                                  const RatePair& rate, const Eigen::ArrayXd& t_grid,
                                  const QuadratureSpec& quad, bool enforce) {
    rate.validate();
    TwoSidedReport rep;
    bool do_a = rate.forward_ok();
    bool do_b = rate.backward_ok();
    rep.preconditions.push_back(json{{"check", "rate flags"}, {"rate", rate.to_json()}});
    if (!do_a && !do_b)
        throw precondition_error("two_sided_estimate: (p,q) fits neither direction",
                                 rep.preconditions);
    if (do_b) {
        ImproperResult qn = weighted_qnorm_power(pair.fourier, rate.w(), rate.q, quad);
        const bool finite = qn.status != TailStatus::divergent;
        rep.preconditions.push_back(json{{"check", "finite weighted q-norm"},
                                         {"pass", finite},
                                         {"value", json_number(qn.value)}});
        if (!finite) {
            if (enforce)
                throw precondition_error("two_sided_estimate: weighted q-norm diverges",
                                         rep.preconditions);
            do_b = false;
        }
    }

    Eigen::ArrayXd grid = t_grid.size() ? t_grid : CheckGrids::defaults().t_small;
    Eigen::ArrayXd jv, ev;
    two_sided_tables(fam, pair, rate, grid, quad, jv, ev);

    if (do_a) {
        AsymptoticVerdict a;
        static_cast<BoundReport&>(a) =
            BoundReport::evaluate(grid, jv, ev, defaults::bound_threshold);
        a.regime = "t->0+";
        rep.part_a = std::move(a);
    }
    if (do_b) {
        AsymptoticVerdict b;
        static_cast<BoundReport&>(b) =
            BoundReport::evaluate(grid, ev, jv, defaults::bound_threshold);
        b.regime = "t->0+";
        rep.part_b = std::move(b);
    }
    if (rate.p == 2.0 && rate.q == 2.0) {
        const double plancherel = std::pow(2.0 * M_PI, 0.5 * rate.d);
        double ci = std::numeric_limits<double>::infinity(), cs = 0.0;
        bool any = false;
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            if (jv[i] == 0.0) continue;
            const double c = plancherel * ev[i] / jv[i];
            ci = std::min(ci, c);
            cs = std::max(cs, c);
            any = true;
        }
        if (any) {
            rep.congruence_inf = ci;
            rep.congruence_sup = cs;
        }
    }
    return rep;
}

ImplicationReport titchmarsh_forward(const MultiplierFamily& fam, const RadialPair& pair,
                                     const RatePair& rate, const PosFunc& phi,
                                     const CheckGrids& grids, const QuadratureSpec& quad,
                                     bool enforce) {
    rate.validate();
    ImplicationReport rep;
    rep.name = "titchmarsh_forward";
    if (!rate.forward_ok())
        throw precondition_error("titchmarsh_forward: needs 1 < p <= 2 and p <= q <= p'",
                                 json::array({rate.to_json()}));

    const Eigen::ArrayXd t_chain = inverse_grid(grids.t_large);
    AsymptoticVerdict lip =
        lip_check(fam, pair, rate.p, phi, fam.gamma, t_chain, quad, enforce);
    rep.preconditions = lip.extra["preconditions"];

    TwoSidedReport two = two_sided_estimate(fam, pair, rate, t_chain, quad, enforce);
    const double c_a = two.part_a ? two.part_a->ratio_sup
                                  : std::numeric_limits<double>::quiet_NaN();

    AsymptoticVerdict shell = shell_decay_check(pair.fourier, rate, phi, grids.t_large, quad);

    rep.hypothesis = std::move(lip);
    rep.conclusion = std::move(shell);
    rep.chain_constant = c_a * rep.hypothesis.ratio_sup;
    rep.chain_ok = rep.conclusion.ratio_sup <= rep.chain_constant * 1.001 + 1e-12;
    rep.pass = rep.hypothesis.pass && rep.conclusion.pass && rep.chain_ok;
    rep.extra["part_a_constant"] = json_number(c_a);
    rep.extra["lip_constant"] = json_number(rep.hypothesis.ratio_sup);
    return rep;
}

ImplicationReport titchmarsh_backward(const MultiplierFamily& fam, const RadialProfile& F,
                                      const RatePair& rate, const PosFunc& phi,
                                      const CheckGrids& grids, const QuadratureSpec& quad,
                                      bool enforce) {
    rate.validate();
    ImplicationReport rep;
    rep.name = "titchmarsh_backward";
    if (!rate.backward_ok())
        throw precondition_error("titchmarsh_backward: needs 2 <= p < inf and p' <= q <= p",
                                 json::array({rate.to_json()}));

    AsymptoticVerdict shell = shell_decay_check(F, rate, phi, grids.t_large, quad);

    RadialPair pair;
    pair.d = rate.d;
    pair.fourier = F;
    pair.provenance = "spectral";
    if (rate.p != 2.0)
        pair.space = fourier_radial(F, logspace(1e-3, 50.0, 16), quad);

    const Eigen::ArrayXd t_chain = inverse_grid(grids.t_large);
    AsymptoticVerdict lip =
        lip_check(fam, pair, rate.p, phi, fam.gamma, t_chain, quad, enforce);
    rep.preconditions = lip.extra["preconditions"];

    TwoSidedReport two = two_sided_estimate(fam, pair, rate, t_chain, quad, enforce);
    const double c_b = two.part_b ? two.part_b->ratio_sup
                                  : std::numeric_limits<double>::quiet_NaN();

    // proof split J^q = tail(1/t) + t^{2 q beta} x low-frequency part, with the
    // low-frequency part O(phi(t)^q)
    const double q = rate.q, beta = fam.gamma, w = rate.w();
    Eigen::ArrayXd low_lhs(t_chain.size()), low_rhs(t_chain.size());
    double worst_gap = 0.0;
    for (Eigen::Index i = 0; i < t_chain.size(); ++i) {
        const double t = t_chain[i];
        const double tail_part = tail_integral_power(F, 1.0 / t, w, q, quad).value;
        const double s2b = 2.0 * beta;
        const auto low_integrand = [&](double s) {
            const double base = std::pow(s, s2b + w) * std::abs(F.profile(s));
            return std::pow(base, q) * std::pow(s, rate.d - 1);
        };
        std::vector<double> bps = F.profile.breakpoints();
        ImproperResult low = integrate_lower(low_integrand, 1.0 / t,
                                             std::min(0.5 / t, 1.0), quad, bps);
        const double low_part = sphere_area(rate.d) * low.value;
        low_lhs[i] = std::pow(t, 2.0 * q * beta) * low_part;
        low_rhs[i] = std::pow(phi(t), q);
        const double jq = std::pow(j_functional(beta, F, rate, t, quad), q);
        if (jq > 0.0)
            worst_gap = std::max(worst_gap,
                                 std::abs(jq - (tail_part + low_lhs[i])) / jq);
    }
    AsymptoticVerdict split;
    static_cast<BoundReport&>(split) =
        BoundReport::evaluate(t_chain, low_lhs, low_rhs, defaults::bound_threshold);
    split.regime = "t->0+";

    // quantitative chain: E <= C_B (tail + low)^{1/q} with tail and low both
    // majorized by phi^q constants
    const PosFunc phi_q = RealFunc::closed_form(
        "phi^q", [phi, q](double t) { return std::pow(phi(t), q); }, phi.domain_min(),
        phi.domain_max());
    BoundReport mq = check_M(phi_q, grids.majorant.size() ? grids.majorant
                                                          : majorant_grid_for(phi));
    const double c_tail_chain =
        shell.ratio_sup * std::pow(1.0 + mq.ratio_sup / std::log(2.0), 1.0 / q);
    rep.chain_constant =
        c_b * std::pow(std::pow(c_tail_chain, q) + split.ratio_sup, 1.0 / q);

    rep.hypothesis = std::move(shell);
    rep.conclusion = std::move(lip);
    rep.chain_ok = rep.conclusion.ratio_sup <= rep.chain_constant * 1.001 + 1e-12;
    rep.pass = rep.hypothesis.pass && rep.conclusion.pass && split.pass && rep.chain_ok;
    rep.extra["part_b_constant"] = json_number(c_b);
    rep.extra["low_frequency_split"] = split.to_json();
    rep.extra["split_identity_gap"] = json_number(worst_gap);
    return rep;
}

BesovValue besov_functional(const MultiplierFamily& fam, const RadialPair& pair, double p,
                            double q, const PosFunc& phi, const QuadratureSpec& quad,
                            bool enforce) {
    const double beta = fam.gamma;
    json pre = json::array();
    if (std::isinf(q)) {
        BoundReport om = check_omega(phi, 2.0 * beta, majorant_grid_for(phi));
        pre.push_back(precondition_entry("phi in Omega_{2beta}", om));
        if (enforce && !om.pass)
            throw precondition_error("besov_functional: phi not in Omega_{2beta}", pre);
        const Eigen::ArrayXd grid = logspace(1e-4, 1.0, 8);
        double sup = 0.0;
        for (Eigen::Index i = 0; i < grid.size(); ++i)
            sup = std::max(sup,
                           approx_error_norm(fam, grid[i], pair, p, quad) / phi(grid[i]));
        BesovValue out;
        out.value = sup;
        out.detail = json{{"form", "supremum"}, {"preconditions", pre}};
        return out;
    }

    BoundReport om = check_omega(phi, 2.0 * beta, majorant_grid_for(phi));
    pre.push_back(precondition_entry("phi in Omega_{2beta}", om));
    BoundReport omq = check_omega_q(phi, 2.0 * beta, q);
    pre.push_back(precondition_entry("phi in Omega_{2beta}^q", omq));
    if (enforce && !(om.pass && omq.pass))
        throw precondition_error("besov_functional: phi not in Omega_{2beta}^q", pre);

    const auto integrand = [&](double t) {
        const double e = approx_error_norm(fam, t, pair, p, quad);
        return std::pow(e / phi(t), q) / t;
    };
    QuadratureSpec coarse = quad;
    coarse.nodes_per_decade = std::max(24, quad.nodes_per_decade / 4);

    constexpr int kDecades = 5;
    double acc = 0.0, prev_inc = 0.0, inc = 0.0, worst = 0.0;
    Eigen::ArrayXd increments(kDecades);
    double hi = 1.0;
    for (int k = 0; k < kDecades; ++k) {
        prev_inc = inc;
        inc = integrate(integrand, hi / 10.0, hi, coarse);
        increments[k] = inc;
        acc += inc;
        if (k > 0) worst = std::max(worst, inc / std::max(prev_inc, 1e-300));
        hi /= 10.0;
    }
    BesovValue out;
    const double rho = increments[kDecades - 1] / std::max(increments[kDecades - 2], 1e-300);
    if (worst <= defaults::cauchy_shrink) {
        out.value = acc;
        if (rho > 0.0 && rho < 0.999) {
            out.value += increments[kDecades - 1] * rho / (1.0 - rho);
            out.status = TailStatus::completed;
        }
    } else {
        out.value = acc;
        out.status = TailStatus::divergent;
    }
    out.detail = json{{"increments", json_array(increments)},
                      {"worst_increment_ratio", json_number(worst)},
                      {"preconditions", pre}};
    return out;
}

double besov_norm(const MultiplierFamily& fam, const RadialPair& pair, double p, double q,
                  const PosFunc& phi, const QuadratureSpec& quad, bool enforce) {
    BesovValue b = besov_functional(fam, pair, p, q, phi, quad, enforce);
    if (b.status == TailStatus::divergent)
        throw divergence_error("besov_norm: functional diverges (f not in B)");
    double fp;
    if (p == 2.0)
        fp = radial_lp_norm(pair.fourier, 2.0, quad) / std::pow(2.0 * M_PI, 0.5 * pair.d);
    else
        fp = radial_lp_norm(pair.space, p, quad);
    if (std::isinf(q)) return fp + b.value;
    return std::pow(std::pow(fp, q) + b.value, 1.0 / q);
}

BesovValue besov_spectral_functional(const RadialProfile& F, const RatePair& rate,
                                     const PosFunc& phi, SpectralMode mode,
                                     const QuadratureSpec& quad) {
    rate.validate();
    const double q = rate.q, w = rate.w();

    if (mode == SpectralMode::single) {
        ImproperResult res = weighted_improper_full(
            F, [&phi](double s) { return 1.0 / phi(1.0 / s); }, w, q, quad);
        BesovValue out;
        out.value = std::log(2.0) * res.value;
        out.status = res.status;
        out.detail = json{{"mode", "single"}, {"tail_status", to_string(res.status)}};
        return out;
    }

    // iterated: outer integral over t of the shell integral, dt/t
    const RealFunc& f = F.profile;
    const int d = rate.d;
    const auto shell_pow = [&](double t) {
        const auto inner = [&](double s) {
            const double base = std::pow(s, w) * std::abs(f(s)) / phi(1.0 / s);
            return std::pow(base, q) * std::pow(s, d - 1);
        };
        return sphere_area(d) * integrate(inner, t, 2.0 * t, quad, 0.0, f.breakpoints());
    };
    const auto outer = [&](double t) { return shell_pow(t) / t; };
    std::vector<double> outer_bps;
    for (double b : f.breakpoints()) {
        outer_bps.push_back(b);
        outer_bps.push_back(0.5 * b);
    }
    QuadratureSpec coarse = quad;
    coarse.nodes_per_decade = std::max(24, quad.nodes_per_decade / 4);
    ImproperResult up = integrate_upper(outer, 1e-2, 1e2, coarse, 0.0, outer_bps);
    ImproperResult low = integrate_lower(outer, 1e-2, 0.5e-2, coarse, outer_bps);
    BesovValue out;
    out.value = up.value + low.value;
    out.status = up.status == TailStatus::divergent || low.status == TailStatus::divergent
                     ? TailStatus::divergent
                     : up.status;
    out.detail = json{{"mode", "iterated"},
                      {"upper_status", to_string(up.status)},
                      {"lower_status", to_string(low.status)}};
    return out;
}

ImplicationReport theorem_besov(const MultiplierFamily& fam, const RadialPair& pair,
                                const RatePair& rate, const PosFunc& phi,
                                Direction direction, const QuadratureSpec& quad,
                                bool enforce) {
    rate.validate();
    ImplicationReport rep;
    rep.name = direction == Direction::forward ? "besov_forward" : "besov_backward";
    if (direction == Direction::forward && !rate.forward_ok())
        throw precondition_error("theorem_besov: needs forward exponent flags",
                                 json::array({rate.to_json()}));
    if (direction == Direction::backward && !rate.backward_ok())
        throw precondition_error("theorem_besov: needs backward exponent flags",
                                 json::array({rate.to_json()}));

    ImproperResult qn = weighted_qnorm_power(pair.fourier, rate.w(), rate.q, quad);
    rep.preconditions.push_back(json{{"check", "finite weighted q-norm"},
                                     {"pass", qn.status != TailStatus::divergent},
                                     {"value", json_number(qn.value)}});
    if (direction == Direction::backward && enforce &&
        qn.status == TailStatus::divergent)
        throw precondition_error("theorem_besov: weighted q-norm diverges",
                                 rep.preconditions);

    BesovValue b = besov_functional(fam, pair, rate.p, rate.q, phi, quad, enforce);
    BesovValue s = besov_spectral_functional(pair.fourier, rate, phi,
                                             SpectralMode::single, quad);
    const bool b_finite = b.status != TailStatus::divergent;
    const bool s_finite = s.status != TailStatus::divergent;

    AsymptoticVerdict hyp, con;
    hyp.regime = "integral";
    con.regime = "integral";
    if (direction == Direction::forward) {
        hyp.pass = b_finite;
        hyp.extra = json{{"besov_functional", json_number(b.value)},
                         {"status", to_string(b.status)}, {"detail", b.detail}};
        con.pass = s_finite;
        con.extra = json{{"spectral_functional", json_number(s.value)},
                         {"status", to_string(s.status)}, {"detail", s.detail}};
        rep.chain_constant = s.value / (qn.value + b.value);
        rep.pass = !b_finite || s_finite;
    } else {
        hyp.pass = s_finite;
        hyp.extra = json{{"spectral_functional", json_number(s.value)},
                         {"status", to_string(s.status)}, {"detail", s.detail}};
        con.pass = b_finite;
        con.extra = json{{"besov_functional", json_number(b.value)},
                         {"status", to_string(b.status)}, {"detail", b.detail}};
        rep.chain_constant = b.value / (qn.value + s.value);
        rep.pass = !s_finite || b_finite;
    }
    rep.hypothesis = std::move(hyp);
    rep.conclusion = std::move(con);
    rep.chain_ok = std::isfinite(rep.chain_constant);
    return rep;
}

json CounterexampleReport::to_json() const {
    json j;
    j["tail_condition"] = tail_condition.to_json();
    j["schedule"] = json_array(schedule);
    j["growth"] = json_array(growth);
    j["per_decade_increment"] = json_array(per_decade_increment);
    j["omega_failure"] = omega_failure.to_json();
    j["pass"] = pass;
    return j;
}

CounterexampleReport counterexample_remark(double beta, double p, int d,
                                           const Eigen::ArrayXd& schedule_in,
                                           const QuadratureSpec& quad) {
    if (!(beta > 0.0)) throw std::invalid_argument("counterexample: beta must be positive");
    if (!(p >= 2.0)) throw std::invalid_argument("counterexample: needs p >= 2");
    CounterexampleReport rep;

    const double pp = p / (p - 1.0);
    RadialProfile F =
        get_fourier_profile("remark_counterexample", d, {{"beta", beta}, {"p", p}});
    const RatePair rate{p, pp, d};  // q = p' makes the shell weight vanish

    Eigen::ArrayXd schedule = schedule_in;
    if (schedule.size() == 0) {
        schedule = Eigen::ArrayXd(4);
        for (int i = 0; i < 4; ++i) schedule[i] = std::pow(10.0, i + 1);
    }
    rep.schedule = schedule;

    // (i) the tail decay condition holds with a stable constant
    Eigen::ArrayXd h_grid = inverse_grid(schedule);
    const PosFunc phi = RealFunc::closed_form(
        "power", [beta](double t) { return std::pow(t, 2.0 * beta); }, 0.0,
        std::numeric_limits<double>::infinity(), {}, {{"alpha", 2.0 * beta}});
    rep.tail_condition = tail_decay_check(F, rate, phi, h_grid, quad);
    const double mid = 0.5 * (rep.tail_condition.ratio_inf + rep.tail_condition.ratio_sup);
    const bool stable =
        (rep.tail_condition.ratio_sup - rep.tail_condition.ratio_inf) <= 0.01 * mid;
    rep.tail_condition.extra["stable_within_1pct"] = stable;

    // (ii) the low-frequency Lipschitz integral grows without bound: the
    // radial-line integrand is exactly s^{-1}, so it gains ln 10 per decade
    rep.growth = Eigen::ArrayXd(schedule.size());
    for (Eigen::Index i = 0; i < schedule.size(); ++i)
        rep.growth[i] = integrate(
            [&](double s) {
                return std::pow(std::pow(s, 2.0 * beta) * std::abs(F.profile(s)), pp) *
                       std::pow(s, d - 1);
            },
            1.0, schedule[i], quad, 0.0, F.profile.breakpoints());
    rep.per_decade_increment = Eigen::ArrayXd(schedule.size() - 1);
    bool growth_ok = true;
    for (Eigen::Index i = 0; i + 1 < schedule.size(); ++i) {
        rep.per_decade_increment[i] = rep.growth[i + 1] - rep.growth[i];
        const double decades = std::log10(schedule[i + 1] / schedule[i]);
        if (std::abs(rep.per_decade_increment[i] - decades * std::log(10.0)) >
            0.02 * decades * std::log(10.0))
            growth_ok = false;
    }

    // (iii) phi = t^{2 beta} itself fails Omega_{2 beta}
    rep.omega_failure = check_omega(phi, 2.0 * beta, default_large_grid());
    const bool omega_fails_as_expected =
        !rep.omega_failure.pass && rep.omega_failure.tag == "divergent-tail";

    rep.pass = stable && growth_ok && omega_fails_as_expected &&
               rep.tail_condition.pass;
    return rep;
}

}  // namespace decaylab
