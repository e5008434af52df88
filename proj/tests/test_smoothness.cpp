#include <cmath>

#include "decaylab/catalog.hpp"
#include "decaylab/smoothness.hpp"
#include "doctest.h"

using namespace decaylab;

namespace {

PosFunc power(double alpha) { return make_majorant("power", {{"alpha", alpha}}).func; }

RadialProfile fprofile(int d, std::function<double(double)> f, std::vector<double> bps = {}) {
    RadialProfile p;
    p.d = d;
    p.side = Side::fourier;
    p.profile = RealFunc::closed_form("fixture", std::move(f), 0.0,
                                      std::numeric_limits<double>::infinity(),
                                      std::move(bps));
    return p;
}

RadialPair zero_pair(int d) {
    RadialPair pair;
    pair.d = d;
    pair.fourier = fprofile(d, [](double) { return 0.0; });
    pair.space = pair.fourier;
    pair.space.side = Side::space;
    return pair;
}

}  // namespace

TEST_CASE("RatePair bookkeeping") {
    RatePair r{2.0, 2.0, 1};
    CHECK(r.p_prime() == doctest::Approx(2.0));
    CHECK(r.w() == doctest::Approx(0.0));
    CHECK(r.forward_ok());
    CHECK(r.backward_ok());

    RatePair f{1.5, 2.0, 2};
    CHECK(f.forward_ok());
    CHECK_FALSE(f.backward_ok());
    CHECK(f.p_prime() == doctest::Approx(3.0));
    CHECK(f.w() == doctest::Approx(2.0 * (1.0 - 1.0 / 1.5 - 0.5)));
}

TEST_CASE("lip_check: Gaussian pair under the gauss family") {
    RadialPair pair = get_pair("gaussian", 1);
    MultiplierFamily fam = builtin_family("gauss");
    AsymptoticVerdict v = lip_check(fam, pair, 2.0, power(0.5), 1.0);
    CHECK(v.pass);
    CHECK(v.regime == "t->0+");
    // E ~ c t^2 against phi = sqrt(t): the ratio decays like t^{3/2}
    const double first = v.lhs[0] / v.rhs[0];
    const double last = v.lhs[v.grid.size() - 1] / v.rhs[v.grid.size() - 1];
    CHECK(first < 0.01 * last);
}

TEST_CASE("lip_check: zero function passes vacuously") {
    AsymptoticVerdict v = lip_check(builtin_family("gauss"), zero_pair(1), 2.0,
                                    power(0.5), 1.0);
    CHECK(v.pass);
    CHECK(v.ratio_sup == 0.0);
}

TEST_CASE("lip_check: poisson family on a power-tail spectrum, with oracle") {
    RadialPair pair = get_pair("power_tail", 1, {{"sigma", 1.0}});
    MultiplierFamily fam = builtin_family("poisson");
    AsymptoticVerdict v = lip_check(fam, pair, 2.0, power(0.5), 0.5);
    CHECK(v.pass);
    CHECK(v.ratio_inf > 0.0);

    // independent midpoint oracle for E(t)^2 = (1/pi) int_1^inf (1-e^{-ts})^2 s^{-2} ds,
    // truncated at hi with the analytic remainder 1/hi (the exponential is dead there)
    const double t = v.grid[v.grid.size() - 1];
    double acc = 0.0;
    const int n = 2000000;
    const double hi = 2000.0;
    for (int i = 0; i < n; ++i) {
        const double s = 1.0 + (hi - 1.0) * (i + 0.5) / n;
        const double x = -std::expm1(-t * s);
        acc += x * x / (s * s);
    }
    acc = (acc * (hi - 1.0) / n + 1.0 / hi) / M_PI;
    CHECK(v.lhs[v.grid.size() - 1] == doctest::Approx(std::sqrt(acc)).epsilon(1e-4));
}

TEST_CASE("lip_check: failed majorant hypothesis raises unless unsafe") {
    RadialPair pair = get_pair("gaussian", 1);
    MultiplierFamily fam = builtin_family("gauss");
    CHECK_THROWS_AS(lip_check(fam, pair, 2.0, power(2.0), 1.0), precondition_error);
    AsymptoticVerdict v = lip_check(fam, pair, 2.0, power(2.0), 1.0, Eigen::ArrayXd(),
                                    {}, /*enforce=*/false);
    CHECK(v.extra.contains("preconditions"));
}

TEST_CASE("shell_decay_check: exact antiderivatives") {
    RatePair rate{2.0, 2.0, 1};
    RadialProfile F = fprofile(1, [](double s) { return s >= 1.0 ? 1.0 / s : 0.0; }, {1.0});
    AsymptoticVerdict v = shell_decay_check(F, rate, power(0.5));
    CHECK(v.pass);
    CHECK(v.ratio_inf == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v.ratio_sup == doctest::Approx(1.0).epsilon(1e-9));

    RadialProfile compact = fprofile(2, [](double s) { return s <= 1.0 ? 1.0 : 0.0; },
                                     {1.0});
    AsymptoticVerdict c = shell_decay_check(compact, RatePair{2.0, 2.0, 2}, power(0.5));
    CHECK(c.pass);
    CHECK(c.ratio_sup == 0.0);  // every shell misses the support

    RadialProfile F2 = fprofile(2, [](double s) { return s >= 1.0 ? std::pow(s, -1.5) : 0.0; },
                                {1.0});
    AsymptoticVerdict w = shell_decay_check(F2, RatePair{2.0, 2.0, 2}, power(0.5));
    CHECK(w.pass);
    CHECK(w.ratio_sup == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-9));
}

TEST_CASE("tail_decay_check: exact antiderivatives and the modulus variable") {
    RatePair rate{2.0, 2.0, 1};
    RadialProfile F = fprofile(1, [](double s) { return s >= 1.0 ? 1.0 / s : 0.0; }, {1.0});
    AsymptoticVerdict v = tail_decay_check(F, rate, power(0.5));
    CHECK(v.pass);
    CHECK(v.ratio_sup == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
    // spot value: h = 0.01 gives sqrt(2 x 0.01)
    Eigen::ArrayXd h(2);
    h << 0.01, 0.1;
    AsymptoticVerdict spot = tail_decay_check(F, rate, power(0.5), h);
    CHECK(spot.lhs[0] == doctest::Approx(std::sqrt(0.02)).epsilon(1e-8));

    AsymptoticVerdict z = tail_decay_check(fprofile(1, [](double) { return 0.0; }), rate,
                                           power(0.5));
    CHECK(z.pass);
    CHECK(z.ratio_sup == 0.0);

    RadialProfile F2 = fprofile(2, [](double s) { return s >= 1.0 ? std::pow(s, -1.5) : 0.0; },
                                {1.0});
    AsymptoticVerdict w = tail_decay_check(F2, RatePair{2.0, 2.0, 2}, power(0.5));
    CHECK(w.pass);
    CHECK(w.ratio_sup == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-7));
}

TEST_CASE("lemma_equivalence: both directions with the chained constant") {
    RatePair rate{2.0, 2.0, 1};
    RadialProfile F = fprofile(1, [](double s) { return s >= 1.0 ? 1.0 / s : 0.0; }, {1.0});
    EquivalenceReport rep = lemma_equivalence(F, rate, power(0.5));
    CHECK(rep.pass);
    CHECK(rep.shell.pass);
    CHECK(rep.tail.pass);
    // C_M for phi^q = t is exactly 1; chain bound C_sh (1 + 1/ln 2)^{1/2}
    CHECK(rep.m_condition_q.ratio_sup == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.chain_bound ==
          doctest::Approx(std::sqrt(1.0 + 1.0 / std::log(2.0))).epsilon(1e-6));
    CHECK(rep.tail.ratio_sup <= rep.chain_bound * 1.05);

    RadialProfile compact = fprofile(1, [](double s) { return s <= 1.0 ? 1.0 : 0.0; },
                                     {1.0});
    EquivalenceReport triv = lemma_equivalence(compact, rate, power(0.5));
    CHECK(triv.pass);
}

TEST_CASE("lemma_equivalence: divergent tail branch") {
    // [s^w |F|]^q s^{d-1} = s^{-1}: shells are bounded, the tail diverges
    RatePair rate{2.0, 2.0, 1};
    RadialProfile F = fprofile(1, [](double s) { return s >= 1.0 ? std::pow(s, -0.5) : 0.0; },
                               {1.0});
    EquivalenceReport rep = lemma_equivalence(F, rate, power(0.25));
    CHECK(rep.shell.pass);
    CHECK(rep.tail.tag == "divergent-tail");
    CHECK_FALSE(rep.tail.pass);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("two_sided_estimate: Gaussian fixture at p = q = 2") {
    RadialPair pair = get_pair("gaussian", 1);
    MultiplierFamily fam = builtin_family("gauss");
    RatePair rate{2.0, 2.0, 1};
    TwoSidedReport rep = two_sided_estimate(fam, pair, rate);
    REQUIRE(rep.part_a);
    REQUIRE(rep.part_b);
    CHECK(rep.part_a->pass);
    CHECK(rep.part_b->pass);
    // measured bracket, not assumed
    CHECK(rep.part_a->ratio_sup < 20.0);
    CHECK(rep.part_a->ratio_inf > 0.05);
    CHECK(rep.part_b->ratio_sup < 20.0);

    // Plancherel congruence: (2pi)^{d/2} E / J sits inside the admissibility
    // ratio bounds of the family
    AdmissibilityReport adm = check_admissible(fam);
    CHECK(rep.congruence_inf >= adm.ratio_inf - 1e-3);
    CHECK(rep.congruence_sup <= adm.ratio_sup + 1e-3);

    TwoSidedReport zero = two_sided_estimate(fam, zero_pair(1), rate);
    CHECK(zero.part_a->pass);  // 0 <= 0 by convention
}

TEST_CASE("titchmarsh_forward: Gaussian and power-tail instances") {
    MultiplierFamily fam = builtin_family("gauss");
    {
        RadialPair pair = get_pair("gaussian", 1);
        ImplicationReport rep = titchmarsh_forward(fam, pair, RatePair{2.0, 2.0, 1},
                                                   power(0.5));
        CHECK(rep.pass);
        CHECK(rep.chain_ok);
        CHECK(std::isfinite(rep.chain_constant));
        CHECK(rep.conclusion.ratio_sup <= rep.chain_constant * 1.001 + 1e-12);
    }
    {
        ImplicationReport rep = titchmarsh_forward(fam, zero_pair(1), RatePair{2.0, 2.0, 1},
                                                   power(0.5));
        CHECK(rep.pass);
    }
    {
        // spectral power tail with its exact rate
        RadialPair pair = get_pair("power_tail", 1, {{"sigma", 1.0}});
        ImplicationReport rep = titchmarsh_forward(fam, pair, RatePair{2.0, 2.0, 1},
                                                   power(0.5));
        CHECK(rep.pass);
    }
    CHECK_THROWS_AS(titchmarsh_forward(fam, get_pair("gaussian", 1), RatePair{3.0, 3.0, 1},
                                       power(0.5)),
                    precondition_error);
}

TEST_CASE("titchmarsh_backward: split verification and chain") {
    MultiplierFamily fam = builtin_family("gauss");
    {
        RadialProfile F = get_fourier_profile("power_tail", 1, {{"sigma", 1.0}});
        ImplicationReport rep = titchmarsh_backward(fam, F, RatePair{2.0, 2.0, 1},
                                                    power(0.5));
        CHECK(rep.pass);
        CHECK(rep.extra.at("split_identity_gap").get<double>() < 1e-6);
        // low-frequency piece: t^{2q beta} x (2/3)(t^{-3} - 1) against phi(t)^q = t
        const json split = rep.extra.at("low_frequency_split");
        CHECK(split.at("pass").get<bool>());
        CHECK(split.at("ratio_sup").get<double>() ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-2));
    }
    {
        RadialProfile compact = fprofile(1, [](double s) { return s <= 1.0 ? 1.0 : 0.0; },
                                         {1.0});
        ImplicationReport rep = titchmarsh_backward(fam, compact, RatePair{2.0, 2.0, 1},
                                                    power(0.5));
        CHECK(rep.pass);
    }
    {
        RadialProfile gf = get_pair("gaussian", 1).fourier;
        ImplicationReport rep = titchmarsh_backward(fam, gf, RatePair{2.0, 2.0, 1},
                                                    power(0.5));
        CHECK(rep.pass);
    }
}

TEST_CASE("besov_functional: value against a 1-D quadrature oracle") {
    RadialPair pair = get_pair("gaussian", 1);
    MultiplierFamily fam = builtin_family("gauss");
    BesovValue b = besov_functional(fam, pair, 2.0, 2.0, power(0.5));
    CHECK(b.status != TailStatus::divergent);

    // oracle: E(t)^2 = sqrt(pi)(1 - 2/sqrt(1+t^2) + 1/sqrt(1+2t^2)),
    // B = int_0^1 E(t)^2 / t^2 dt by fine midpoint
    double oracle = 0.0;
    const int n = 2000000;
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) / n;
        const double e2 = std::sqrt(M_PI) * (1.0 - 2.0 / std::sqrt(1.0 + t * t) +
                                             1.0 / std::sqrt(1.0 + 2.0 * t * t));
        oracle += e2 / (t * t);
    }
    oracle /= n;
    CHECK(b.value == doctest::Approx(oracle).epsilon(1e-4));

    BesovValue z = besov_functional(fam, zero_pair(1), 2.0, 2.0, power(0.5));
    CHECK(z.value == 0.0);
}

TEST_CASE("besov_functional: failing majorant hypothesis is an error, not a value") {
    RadialPair pair = get_pair("gaussian", 1);
    MultiplierFamily fam = builtin_family("gauss");
    CHECK_THROWS_AS(besov_functional(fam, pair, 2.0, 2.0, power(2.0)), precondition_error);
    // opting out computes anyway and flags the divergence
    BesovValue v = besov_functional(fam, pair, 2.0, 2.0, power(2.0), {}, false);
    CHECK(v.status == TailStatus::divergent);
}

TEST_CASE("besov_norm: composition of the pieces; q = inf reduces to the sup form") {
    RadialPair pair = get_pair("gaussian", 1);
    MultiplierFamily fam = builtin_family("gauss");
    BesovValue b = besov_functional(fam, pair, 2.0, 2.0, power(0.5));
    const double f2 = oracles::gaussian_space_l2(1);
    CHECK(besov_norm(fam, pair, 2.0, 2.0, power(0.5)) ==
          doctest::Approx(std::sqrt(f2 * f2 + b.value)).epsilon(1e-6));
    CHECK(besov_norm(fam, zero_pair(1), 2.0, 2.0, power(0.5)) == 0.0);

    const double qinf = std::numeric_limits<double>::infinity();
    BesovValue sup = besov_functional(fam, pair, 2.0, qinf, power(0.5));
    CHECK(besov_norm(fam, pair, 2.0, qinf, power(0.5)) ==
          doctest::Approx(f2 + sup.value).epsilon(1e-6));
}

TEST_CASE("besov_spectral_functional: Fubini identity on three instances") {
    struct Instance {
        RadialProfile F;
        RatePair rate;
        PosFunc phi;
        double exact;  // closed form for the single mode
    };
    std::vector<Instance> instances;
    instances.push_back({get_fourier_profile("power_tail", 1, {{"sigma", 1.0}}),
                         RatePair{2.0, 2.0, 1}, power(0.4), 10.0 * std::log(2.0)});
    instances.push_back({get_pair("gaussian", 1).fourier, RatePair{2.0, 2.0, 1},
                         power(0.5), 2.0 * M_PI * std::log(2.0)});
    instances.push_back({get_fourier_profile("exponential_spectrum", 3),
                         RatePair{2.0, 2.0, 3}, power(0.5),
                         1.5 * M_PI * std::log(2.0)});
    for (auto& inst : instances) {
        CAPTURE(inst.F.profile.name());
        BesovValue single = besov_spectral_functional(inst.F, inst.rate, inst.phi,
                                                      SpectralMode::single);
        BesovValue iter = besov_spectral_functional(inst.F, inst.rate, inst.phi,
                                                    SpectralMode::iterated);
        CHECK(single.value == doctest::Approx(inst.exact).epsilon(1e-6));
        CHECK(iter.value / single.value == doctest::Approx(1.0).epsilon(5e-3));
    }

    BesovValue z = besov_spectral_functional(fprofile(1, [](double) { return 0.0; }),
                                             RatePair{2.0, 2.0, 1}, power(0.5),
                                             SpectralMode::single);
    CHECK(z.value == 0.0);
}

TEST_CASE("theorem_besov: both directions on the Gaussian instance") {
    RadialPair pair = get_pair("gaussian", 1);
    MultiplierFamily fam = builtin_family("gauss");
    RatePair rate{2.0, 2.0, 1};
    ImplicationReport fwd = theorem_besov(fam, pair, rate, power(0.5), Direction::forward);
    CHECK(fwd.pass);
    CHECK(fwd.hypothesis.pass);
    CHECK(fwd.conclusion.pass);
    CHECK(std::isfinite(fwd.chain_constant));
    ImplicationReport bwd = theorem_besov(fam, pair, rate, power(0.5), Direction::backward);
    CHECK(bwd.pass);
}

TEST_CASE("counterexample_remark: d = 1 and d = 2") {
    for (int d : {1, 2}) {
        CAPTURE(d);
        CounterexampleReport rep = counterexample_remark(0.5, 2.0, d);
        CHECK(rep.pass);
        CHECK(rep.tail_condition.pass);
        // the radial-line integrand is exactly s^{-1} in every dimension
        for (Eigen::Index i = 0; i < rep.per_decade_increment.size(); ++i)
            CHECK(rep.per_decade_increment[i] ==
                  doctest::Approx(std::log(10.0)).epsilon(0.02));
        CHECK_FALSE(rep.omega_failure.pass);
        CHECK(rep.omega_failure.tag == "divergent-tail");
    }
    // d = 1, p = 2: condition (i) constant is exactly 1
    CounterexampleReport rep = counterexample_remark(0.5, 2.0, 1);
    CHECK(rep.tail_condition.ratio_sup == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.tail_condition.ratio_inf == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("invariant: lip verdicts are stable under grid refinement") {
    RadialPair pair = get_pair("gaussian", 1);
    MultiplierFamily fam = builtin_family("gauss");
    AsymptoticVerdict coarse = lip_check(fam, pair, 2.0, power(0.5), 1.0,
                                         logspace(1e-3, 1e-1, 8));
    AsymptoticVerdict fine = lip_check(fam, pair, 2.0, power(0.5), 1.0,
                                       logspace(1e-3, 1e-1, 32));
    CHECK(fine.ratio_sup <= coarse.ratio_sup * 1.02);
}
