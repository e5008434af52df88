#include <cmath>

#include "decaylab/majorant.hpp"
#include "doctest.h"

using namespace decaylab;

namespace {

// independent refined-step oracle: midpoint rule in log coordinates
template <class F>
double log_midpoint(F f, double a, double b, int n) {
    const double span = std::log(b / a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = a * std::exp(span * (i + 0.5) / n);
        acc += f(u) * u;  // du = u d(log u)
    }
    return acc * span / n;
}

PosFunc power(double alpha) { return make_majorant("power", {{"alpha", alpha}}).func; }

}  // namespace

TEST_CASE("eval: closed forms and domain") {
    PosFunc f = power(0.5);
    CHECK(eval(f, 4.0) == doctest::Approx(2.0).epsilon(1e-14));

    PosFunc g = make_majorant("power_log", {{"alpha", 1.0}}).func;
    CHECK_THROWS_AS(eval(g, 0.0), std::domain_error);  // domain open at 0
    CHECK_THROWS_AS(eval(g, -1.0), std::domain_error);
}

TEST_CASE("eval: log-log interpolation is exact on power laws") {
    Eigen::ArrayXd x(2), v(2);
    x << 1.0, 10.0;
    v << 2.0, 20.0;
    PosFunc f = RealFunc::samples(x, v, RealFunc::Interp::loglog);
    CHECK(f(std::sqrt(10.0)) == doctest::Approx(2.0 * std::sqrt(10.0)).epsilon(1e-13));
    CHECK_THROWS_AS(f(0.5), std::domain_error);   // below the sampled range
    CHECK_THROWS_AS(f(20.0), std::domain_error);  // above it

    // denser grid sampled from t^0.7 reproduces t^0.7 at interior points
    Eigen::ArrayXd g = logspace(0.1, 10.0, 8);
    Eigen::ArrayXd w = g.pow(0.7);
    PosFunc h = RealFunc::samples(g, w, RealFunc::Interp::loglog);
    for (double t : {0.13, 0.7, 2.3, 8.9})
        CHECK(h(t) == doctest::Approx(std::pow(t, 0.7)).epsilon(1e-12));
}

TEST_CASE("check_M: analytic constants for powers") {
    const Eigen::ArrayXd grid = default_small_grid();
    for (double alpha : {0.25, 0.5, 1.0}) {
        BoundReport rep = check_M(power(alpha), grid);
        CHECK(rep.pass);
        CHECK(rep.ratio_sup == doctest::Approx(1.0 / alpha).epsilon(1e-6));
        CHECK(rep.ratio_inf == doctest::Approx(1.0 / alpha).epsilon(1e-6));
    }
}

TEST_CASE("check_M: log factor against the refined-step oracle") {
    PosFunc phi = make_majorant("power_log", {{"alpha", 0.5}}).func;
    const Eigen::ArrayXd grid = default_small_grid();
    BoundReport rep = check_M(phi, grid);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.ratio_sup));

    const auto integrand = [&phi](double u) { return phi(u) / u; };
    double oracle_sup = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); i += 16) {
        const double t = grid[i];
        const double lhs = log_midpoint(integrand, 1e-12, t, 40000);
        oracle_sup = std::max(oracle_sup, lhs / phi(t));
    }
    CHECK(rep.ratio_sup == doctest::Approx(oracle_sup).epsilon(2e-3));
}

TEST_CASE("check_M: rejects non-monotone input") {
    PosFunc down = RealFunc::closed_form("down", [](double t) { return 1.0 / t; });
    CHECK_THROWS_AS(check_M(down, default_large_grid()), std::invalid_argument);
}

TEST_CASE("check_omega: exact power constants") {
    const Eigen::ArrayXd grid = default_large_grid();
    struct Case { double alpha, beta; };
    for (auto [alpha, beta] : {Case{1.0, 2.0}, Case{0.5, 1.0}}) {
        BoundReport rep = check_omega(power(alpha), beta, grid);
        CHECK(rep.pass);
        CHECK(rep.ratio_sup == doctest::Approx(1.0 / (beta - alpha)).epsilon(1e-6));
    }
}

TEST_CASE("check_omega: t^{2beta} against Omega_{2beta} diverges") {
    BoundReport rep = check_omega(power(2.0), 2.0, default_large_grid());
    CHECK_FALSE(rep.pass);
    CHECK(rep.tag == "divergent-tail");
    // the probe keeps finding new mass: increments do not shrink
    CHECK(rep.extra.at("probe_change").get<double>() > defaults::stability_rel);
    CHECK(rep.extra.at("tail_increment_ratio").get<double>() > 0.99);
}

TEST_CASE("check_omega: slowly varying factor against a refined oracle") {
    PosFunc phi = make_majorant("loglog", {{"alpha", 0.3}}).func;
    const Eigen::ArrayXd grid = default_large_grid();
    BoundReport rep = check_omega(phi, 1.0, grid);
    CHECK(rep.pass);

    const double beta = 1.0;
    const auto integrand = [&](double u) { return phi(u) * std::pow(u, -beta - 1.0); };
    for (Eigen::Index i : {Eigen::Index(0), grid.size() / 2}) {
        const double t = grid[i];
        const double oracle = log_midpoint(integrand, t, 1e9, 200000);
        CHECK(rep.lhs[i] == doctest::Approx(oracle).epsilon(5e-3));
    }
}

TEST_CASE("check_almost_decreasing: exact quotients") {
    const Eigen::ArrayXd grid = default_large_grid();
    // alpha < beta - eps: the quotient decreases, constant 1
    CHECK(check_almost_decreasing(power(0.5), 1.0, 0.25, grid).ratio_sup ==
          doctest::Approx(1.0).epsilon(1e-12));
    // phi = t^{beta-eps}: constant quotient
    CHECK(check_almost_decreasing(power(0.75), 1.0, 0.25, grid).ratio_sup ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("check_almost_decreasing: ratio grows with the grid span") {
    // quotient exponent alpha - (beta - eps) = +0.05: the supremum is the
    // full span to that power, so it grows as the grid widens
    const double alpha = 0.9, beta = 1.0, eps = 0.15;
    BoundReport narrow = check_almost_decreasing(power(alpha), beta, eps,
                                                 logspace(1.0, 1e4, 64));
    CHECK(narrow.ratio_sup == doctest::Approx(std::pow(1e4, 0.05)).epsilon(1e-10));
    BoundReport wide = check_almost_decreasing(power(alpha), beta, eps,
                                               logspace(1.0, 1e8, 64));
    CHECK(wide.ratio_sup == doctest::Approx(std::pow(1e8, 0.05)).epsilon(1e-10));
    CHECK(wide.ratio_sup > narrow.ratio_sup);
    // with eps = 0.05 the quotient exponent is -0.05 and the constant is 1
    CHECK(check_almost_decreasing(power(alpha), beta, 0.05, logspace(1.0, 1e4, 64))
              .ratio_sup == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("check_omega_q: exact antiderivatives and a divergent case") {
    BoundReport a = check_omega_q(power(0.5), 1.0, 2.0);
    CHECK(a.pass);
    CHECK(a.extra.at("integral").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    BoundReport b = check_omega_q(power(0.25), 1.0, 4.0);
    CHECK(b.pass);
    CHECK(b.extra.at("integral").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    // phi(u) = 1/ln(e u): the integrand is ln(e/t)/t whose antiderivative
    // L + L^2/2 (L = ln(1/delta)) grows without bound
    PosFunc slow = RealFunc::closed_form(
        "inv_log", [](double u) { return 1.0 / std::log(M_E * u); }, 1.0 / M_E);
    BoundReport c = check_omega_q(slow, 1.0, 1.0);
    CHECK_FALSE(c.pass);
    CHECK(c.tag == "divergent");
    // oracle: partial integrals follow L + L^2/2 exactly
    const auto partials = c.extra.at("partial_integrals");
    const double L = std::log(1e8);  // smallest default delta is 1e-8
    CHECK(partials.back().get<double>() == doctest::Approx(L + L * L / 2).epsilon(1e-6));
}

TEST_CASE("estimate_rv_index") {
    RvEstimate a = estimate_rv_index(power(0.7), {2.0, 4.0, 8.0}, logspace(1e2, 1e6, 4));
    CHECK(a.index == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(a.residual < 1e-12);

    PosFunc tl = make_majorant("power_log", {{"alpha", 1.0}}).func;
    RvEstimate b = estimate_rv_index(tl, {2.0, 4.0, 8.0}, logspace(1e2, 1e6, 4));
    CHECK(std::abs(b.index - 1.0) < 0.1);
    CHECK(b.residual < 0.1);

    PosFunc c = RealFunc::closed_form("const", [](double) { return 3.0; });
    RvEstimate cc = estimate_rv_index(c, {2.0, 4.0, 8.0}, logspace(1e2, 1e6, 4));
    CHECK(cc.index == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("catalog majorants: spot values and schema") {
    Majorant p = make_majorant("power", {{"alpha", 0.5}});
    CHECK(p.func(9.0) == doctest::Approx(3.0).epsilon(1e-14));

    Majorant pl = make_majorant("power_log", {{"alpha", 1.0}});
    CHECK(pl.func(M_E - 1.0) == doctest::Approx(M_E - 1.0).epsilon(1e-14));  // ln(1+t)=1

    Majorant ll = make_majorant("loglog", {{"alpha", 0.5}});
    const double t = std::exp(M_E) - M_E;  // then ln(ln(e+t)) = 1
    CHECK(ll.func(t) == doctest::Approx(std::sqrt(t)).epsilon(1e-14));

    auto cat = catalog_majorants();
    CHECK(cat.size() == majorant_names().size());
    for (const auto& m : cat) {
        CHECK(m.params.count("alpha") == 1);
        CHECK(m.func(m.default_check_grid[0]) > 0.0);
    }
    CHECK_THROWS_AS(make_majorant("nope", {}), std::invalid_argument);
}

TEST_CASE("invariant: Omega_beta passes nest upward in beta") {
    for (const auto& m : catalog_majorants()) {
        BoundReport at1 = check_omega(m.func, 1.0, m.default_check_grid);
        if (!at1.pass) continue;
        for (double beta : {1.5, 2.0}) {
            BoundReport rep = check_omega(m.func, beta, m.default_check_grid);
            CAPTURE(m.name);
            CAPTURE(beta);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("invariant: almost-decreasing scan chains into the Omega constant") {
    for (const auto& m : catalog_majorants()) {
        EquivalenceScan scan = omega_equivalence_scan(m.func, 1.0, m.default_check_grid);
        CAPTURE(m.name);
        REQUIRE(scan.found);
        CHECK(scan.omega.pass);
        // the displayed computation bounds the Omega constant by
        // (2/eps) x (almost-decreasing constant), asserted within a factor 2
        CHECK(scan.omega.ratio_sup <= 2.0 * scan.chained_bound);
    }
}
