#include <cmath>

#include "decaylab/catalog.hpp"
#include "decaylab/gm.hpp"
#include "doctest.h"

using namespace decaylab;

namespace {

PosFunc power(double alpha) { return make_majorant("power", {{"alpha", alpha}}).func; }

BVProfile exp_profile() {
    return BVProfile::closed(
        "exp", RealFunc::closed_form("exp", [](double s) { return std::exp(-s); }),
        RealFunc::closed_form("exp'", [](double s) { return -std::exp(-s); }));
}

double e1(double x) { return -std::expint(-x); }  // exponential integral E_1

CheckGrids slim_grids() {
    CheckGrids g = CheckGrids::defaults();
    g.t_large = logspace(1.0, 1e2, 4);
    g.h_small = logspace(1e-2, 1.0, 4);
    return g;
}

}  // namespace

TEST_CASE("variation_tail: monotone closed forms") {
    BVProfile g = exp_profile();
    CHECK(variation_tail(g, 1e-9, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(variation_tail(g, 1.0, 3.0) ==
          doctest::Approx(std::exp(-1.0) - std::exp(-3.0)).epsilon(1e-10));
}

TEST_CASE("variation_tail: oscillatory profile against the extremum-sum oracle") {
    // g = sin(s)/s on [pi, 10 pi], no derivative supplied: refinement path
    BVProfile g;
    g.name = "sinc";
    g.profile = RealFunc::closed_form("sinc", [](double s) { return std::sin(s) / s; });

    // oracle: critical points solve s cos s = sin s; scan + bisection
    const auto dnum = [](double s) { return s * std::cos(s) - std::sin(s); };
    std::vector<double> crit{M_PI};
    const int n = 20000;
    double prev = dnum(M_PI);
    for (int i = 1; i <= n; ++i) {
        const double s = M_PI + (10.0 * M_PI - M_PI) * i / n;
        const double cur = dnum(s);
        if ((prev < 0) != (cur < 0)) {
            double lo = M_PI + (10.0 * M_PI - M_PI) * (i - 1) / n, hi = s;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((dnum(mid) < 0) == (prev < 0)) lo = mid;
                else hi = mid;
            }
            crit.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    crit.push_back(10.0 * M_PI);
    double oracle = 0.0;
    for (size_t i = 0; i + 1 < crit.size(); ++i)
        oracle += std::abs(std::sin(crit[i + 1]) / crit[i + 1] -
                           std::sin(crit[i]) / crit[i]);

    CHECK(variation_tail(g, M_PI, 10.0 * M_PI) == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("check_gm: exponential profile at c = 2 with the E_1 oracle") {
    Eigen::ArrayXd grid(5);
    grid << 0.5, 1.0, 2.0, 4.0, 8.0;
    GMReport rep = check_gm(exp_profile(), 2.0, grid);
    CHECK(rep.pass);
    CHECK(rep.vanishing);
    CHECK(rep.smallest_passing_c <= 2.0);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        CHECK(rep.bound.lhs[i] == doctest::Approx(std::exp(-grid[i])).epsilon(1e-8));
        CHECK(rep.bound.rhs[i] == doctest::Approx(e1(0.5 * grid[i])).epsilon(1e-6));
    }
}

TEST_CASE("check_gm: nonincreasing nonnegative vanishing profile passes") {
    BVProfile g = BVProfile::closed(
        "lorentz",
        RealFunc::closed_form("lorentz", [](double s) { return 1.0 / (1.0 + s * s); }),
        RealFunc::closed_form("lorentz'", [](double s) {
            const double d = 1.0 + s * s;
            return -2.0 * s / (d * d);
        }));
    GMReport rep = check_gm(g, 2.0);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.smallest_passing_c));
}

TEST_CASE("check_gm: sin(s^2) is not vanishing in the probe sense") {
    BVProfile g;
    g.name = "chirp";
    g.profile = RealFunc::closed_form("chirp", [](double s) { return std::sin(s * s); });
    g.derivative = RealFunc::closed_form(
        "chirp'", [](double s) { return 2.0 * s * std::cos(s * s); });
    GMReport rep = check_gm(g, 2.0);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.vanishing);
    CHECK(rep.bound.tag == "not-vanishing");
}

TEST_CASE("check_gm_d: exponential profile in d = 3 with antiderivative oracles") {
    GMdReport rep = check_gm_d(exp_profile(), 3);
    CHECK(rep.pass);
    CHECK(rep.first_term == doctest::Approx(2.0 - 5.0 * std::exp(-1.0)).epsilon(1e-6));
    CHECK(rep.second_term == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("check_gm_d: support in [2, inf) zeroes the first term") {
    BVProfile g = BVProfile::closed(
        "shifted",
        RealFunc::closed_form("shifted",
                              [](double s) { return s >= 2.0 ? std::exp(-s) : 0.0; }, 0.0,
                              std::numeric_limits<double>::infinity(), {2.0}),
        RealFunc::closed_form("shifted'",
                              [](double s) { return s >= 2.0 ? -std::exp(-s) : 0.0; }, 0.0,
                              std::numeric_limits<double>::infinity(), {2.0}));
    GMdReport rep = check_gm_d(g, 2);
    CHECK(rep.first_term == doctest::Approx(0.0));
    CHECK(rep.pass);
}

TEST_CASE("check_gm_d: too-slow decay diverges in the second term") {
    BVProfile g = BVProfile::closed(
        "slow",
        RealFunc::closed_form("slow",
                              [](double s) { return s >= 1.0 ? std::pow(s, -0.25) : 0.0; },
                              0.0, std::numeric_limits<double>::infinity(), {1.0}),
        RealFunc::closed_form("slow'",
                              [](double s) {
                                  return s > 1.0 ? -0.25 * std::pow(s, -1.25) : 0.0;
                              },
                              0.0, std::numeric_limits<double>::infinity(), {1.0}));
    // s^{(d-1)/2} |dg| = s^{-1/4}/4 for d = 3: divergent
    GMdReport rep = check_gm_d(g, 3, {}, /*enforce=*/false);
    CHECK_FALSE(rep.pass);
    CHECK(rep.second_status == TailStatus::divergent);
}

TEST_CASE("build_gm_pair: Gaussian spectrum reproduces the catalog pair") {
    BVProfile g = spectral_bv_profile("gaussian", 1);
    GMPair gp = build_gm_pair(g, 1, 2.0);
    CHECK(gp.membership.pass);
    CHECK(gp.in_lp);
    const RadialPair catalog = get_pair("gaussian", 1);
    const Eigen::ArrayXd& grid = gp.pair.space.default_grid;
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        CHECK(gp.pair.space.profile(grid[i]) ==
              doctest::Approx(catalog.space.profile(grid[i])).epsilon(1e-7));
    // the norm is a finiteness probe over the synthesized grid; it sits within
    // the interpolation-and-truncation budget of the continuum norm
    CHECK(gp.lp_norm == doctest::Approx(oracles::gaussian_space_l2(1)).epsilon(2e-2));
}

TEST_CASE("build_gm_pair: exponential spectrum in d = 3 lands on the Poisson kernel") {
    GMPair gp = build_gm_pair(exp_profile(), 3, 2.0);
    CHECK(gp.membership.pass);
    const Eigen::ArrayXd& grid = gp.pair.space.default_grid;
    for (Eigen::Index i = 0; i < grid.size(); i += 3)
        CHECK(gp.pair.space.profile(grid[i]) ==
              doctest::Approx(oracles::exponential_space(3, grid[i])).epsilon(1e-6));
    // spot value at the origin limit: sigma_2/(2 pi)^3 x 2 = 1/pi^2
    CHECK(gp.pair.space.profile(grid[0]) ==
          doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-3));
}

TEST_CASE("build_gm_pair: zero profile gives the zero pair") {
    BVProfile z = BVProfile::closed(
        "zero", RealFunc::closed_form("zero", [](double) { return 0.0; }),
        RealFunc::closed_form("zero'", [](double) { return 0.0; }));
    GMPair gp = build_gm_pair(z, 2, 2.0);
    CHECK(gp.membership.pass);
    CHECK(gp.lp_norm == 0.0);
}

TEST_CASE("relaxed_two_sided: Gaussian instance at p = q = 3, d = 2") {
    BVProfile g = spectral_bv_profile("gaussian", 2);
    GMPair gp = build_gm_pair(g, 2, 3.0);
    MultiplierFamily fam = builtin_family("gauss");
    RatePair rate{3.0, 3.0, 2};  // p > 2d/(d+1) = 4/3
    TwoSidedReport rep = relaxed_two_sided(fam, gp, rate, logspace(1e-2, 1e-1, 4));
    REQUIRE(rep.part_a);
    REQUIRE(rep.part_b);
    CHECK(rep.part_a->pass);
    CHECK(rep.part_b->pass);
    CHECK(rep.part_a->ratio_inf > 0.0);
}

TEST_CASE("relaxed_two_sided: sign-changing spectrum refuses part A") {
    GMPair gp;
    gp.pair.d = 2;
    gp.pair.fourier.d = 2;
    gp.pair.fourier.side = Side::fourier;
    gp.pair.fourier.profile = RealFunc::closed_form(
        "signflip", [](double s) { return std::exp(-s) * (1.0 - s); });
    gp.membership.pass = true;  // isolate the nonnegativity clause
    MultiplierFamily fam = builtin_family("gauss");
    // p <= q, so only part A could apply, and it needs a nonnegative profile
    CHECK_THROWS_AS(relaxed_two_sided(fam, gp, RatePair{2.0, 3.0, 2}), precondition_error);
}

TEST_CASE("relaxed_lip_titchmarsh: equivalence at p = q on GM instances") {
    MultiplierFamily fam = builtin_family("gauss");
    {
        // power-tail spectrum, d = 1, exact rate
        GMPair gp = build_gm_pair(spectral_bv_profile("power_tail", 1, {{"sigma", 1.0}}),
                                  1, 2.0);
        RelaxedLipReport rep = relaxed_lip_titchmarsh(fam, gp, 2.0, 2.0, power(0.5),
                                                      slim_grids());
        CHECK(rep.iff_asserted);
        CHECK(rep.pass);
        REQUIRE(rep.forward);
        REQUIRE(rep.backward);
        CHECK(rep.forward->chain_ok);
    }
    {
        // Gaussian spectrum at p = q = 3 in d = 2
        GMPair gp = build_gm_pair(spectral_bv_profile("gaussian", 2), 2, 3.0);
        RelaxedLipReport rep = relaxed_lip_titchmarsh(fam, gp, 3.0, 3.0, power(0.5),
                                                      slim_grids());
        CHECK(rep.iff_asserted);
        CHECK(rep.pass);
    }
}

TEST_CASE("riemann_lebesgue_bound: matched power tail and compact support") {
    MultiplierFamily fam = builtin_family("gauss");
    (void)fam;
    {
        // sigma = d/q' + alpha = 1 at d = 1, q = 2, alpha = 1/2: constant ratio
        GMPair gp = build_gm_pair(spectral_bv_profile("power_tail", 1, {{"sigma", 1.0}}),
                                  1, 2.0);
        AsymptoticVerdict v = riemann_lebesgue_bound(gp, 2.0, power(0.5));
        CHECK(v.pass);
        CHECK(v.ratio_sup == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(v.ratio_inf == doctest::Approx(1.0).epsilon(1e-9));
        const json holder = v.extra.at("holder_step");
        CHECK(holder.at("pass").get<bool>());
        // holder rhs = t^{-1/2} (int_{max(t/c,1)}^inf s^{-2})^{1/2}: the ratio is
        // t^{-1/2} while the support clip is active (sup 1 at t = 1) and settles
        // at 1/sqrt(c) once t >= c
        CHECK(holder.at("ratio_sup").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(holder.at("ratio_inf").get<double>() ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    }
    {
        BVProfile tent = BVProfile::closed(
            "tent",
            RealFunc::closed_form("tent",
                                  [](double s) { return s < 1.0 ? 1.0 - s : 0.0; }, 0.0,
                                  std::numeric_limits<double>::infinity(), {1.0}),
            RealFunc::closed_form("tent'",
                                  [](double s) { return s < 1.0 ? -1.0 : 0.0; }, 0.0,
                                  std::numeric_limits<double>::infinity(), {1.0}));
        GMPair gp = build_gm_pair(tent, 1, 2.0);
        AsymptoticVerdict v = riemann_lebesgue_bound(gp, 2.0, power(0.5));
        CHECK(v.pass);
        CHECK(v.ratio_sup == 0.0);  // spectrum vanishes on the large-xi grid
    }
    {
        // intermediate step for the monotone exponential spectrum
        GMPair gp = build_gm_pair(exp_profile(), 1, 2.0);
        AsymptoticVerdict v = riemann_lebesgue_bound(gp, 2.0, power(0.5));
        const json holder = v.extra.at("holder_step");
        CHECK(holder.at("pass").get<bool>());
        CHECK(holder.at("ratio_sup").get<double>() < defaults::bound_threshold);
    }
}

TEST_CASE("relaxed_besov: exponent arithmetic fixture and the iff") {
    MultiplierFamily fam = builtin_family("gauss");
    {
        // sigma = d - d/q + alpha + eps = 1.6 at d = 2, q = 2, alpha = 0.5:
        // the criterion integrand is t^{-1.2} beyond 1, so the value is 5
        RadialProfile F = get_fourier_profile("power_tail", 2, {{"sigma", 1.6}});
        BesovValue crit = relaxed_besov_criterion(F, 2.0, power(0.5));
        CHECK(crit.status != TailStatus::divergent);
        CHECK(crit.value == doctest::Approx(5.0).epsilon(1e-6));

        // verdict agreement with the spectral functional at p = q, with the
        // collapse factor ln 2 x sigma_{d-1}
        BesovValue single = besov_spectral_functional(F, RatePair{2.0, 2.0, 2},
                                                      power(0.5), SpectralMode::single);
        CHECK(single.status != TailStatus::divergent);
        const double factor = single.value / crit.value;
        const double collapse = std::log(2.0) * sphere_area(2);
        CHECK(factor == doctest::Approx(collapse).epsilon(1e-6));
        CHECK(factor >= std::pow(2.0, -2.0) * collapse);
        CHECK(factor <= std::pow(2.0, 2.0) * collapse);
    }
    {
        BVProfile z = BVProfile::closed(
            "zero", RealFunc::closed_form("zero", [](double) { return 0.0; }),
            RealFunc::closed_form("zero'", [](double) { return 0.0; }));
        GMPair gp = build_gm_pair(z, 1, 2.0);
        BesovValue crit = relaxed_besov_criterion(gp.pair.fourier, 2.0, power(0.5));
        CHECK(crit.value == 0.0);
        RelaxedBesovReport rep = relaxed_besov(fam, gp, 2.0, 2.0, power(0.5));
        CHECK(rep.pass);
    }
    {
        GMPair gp = build_gm_pair(spectral_bv_profile("gaussian", 1), 1, 2.0);
        RelaxedBesovReport rep = relaxed_besov(fam, gp, 2.0, 2.0, power(0.5));
        CHECK(rep.iff_asserted);
        CHECK(rep.pass);
        REQUIRE(rep.forward);
        REQUIRE(rep.backward);
        CHECK(rep.forward->hypothesis.pass);
        CHECK(rep.forward->conclusion.pass);
    }
}

TEST_CASE("invariant: catalog nonincreasing vanishing spectra pass check_gm at c = 2") {
    for (const char* name : {"gaussian", "exponential_spectrum"}) {
        for (int d : {1, 3}) {
            CAPTURE(name);
            CAPTURE(d);
            GMReport rep = check_gm(spectral_bv_profile(name, d), 2.0);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("invariant: check_gm verdicts are grid-stable") {
    GMReport coarse = check_gm(exp_profile(), 2.0, logspace(1e-2, 1e2, 4));
    GMReport fine = check_gm(exp_profile(), 2.0, logspace(1e-2, 1e2, 16));
    CHECK(coarse.pass == fine.pass);
    CHECK(fine.bound.ratio_sup <= coarse.bound.ratio_sup * 1.05 + 0.05);
}
