#pragma once

#include <map>
#include <string>
#include <vector>

#include "decaylab/radial.hpp"

namespace decaylab {

// Closed-form transform pairs and spectral profiles used as fixtures and
// oracles across the verification suites.
struct CatalogEntry {
    std::string name;
    std::string summary;
    int d_min = 1;
    int d_max = 16;
    std::vector<std::string> param_names;
    std::map<std::string, double> param_defaults;
    bool space_closed_form = true;  // both sides in closed form
    double registration_tol = 1e-5;
};

// Deterministic order; names: gaussian, exponential_spectrum, ball_indicator,
// power_tail, remark_counterexample.
const std::vector<CatalogEntry>& list_catalog();
const CatalogEntry& catalog_entry(const std::string& name);

// Pair constructor.  Spectral-primary entries (power_tail,
// remark_counterexample) leave the space side empty unless synthesize_space
// is set, in which case it is computed by the inverse transform.
RadialPair get_pair(const std::string& name, int d,
                    const std::map<std::string, double>& params = {},
                    bool synthesize_space = false);

RadialProfile get_fourier_profile(const std::string& name, int d,
                                  const std::map<std::string, double>& params = {});

// Closed-form references (antiderivative expressions) for the registered
// entries; recorded as evaluable metadata so the test suites recompute every
// expected value instead of trusting constants.
namespace oracles {

double gaussian_space_l2(int d);          // pi^{d/4}
double gaussian_fourier_at_zero(int d);   // (2 pi)^{d/2}
double gaussian_fourier(int d, double s);
double exponential_space(int d, double t);  // Poisson kernel
double ball_fourier(int d, double s);       // d in {1,2,3}

// integral of [s^w s^{-sigma}]^q s^{d-1} over [a, b] (support clip at 1 is
// the caller's business); exact antiderivative
double power_tail_weighted_power(double sigma, int d, double a, double b, double w,
                                 double q);
// sigma_{d-1}-weighted shell/tail q-integrals of the power-tail entry
double power_tail_shell(double sigma, int d, double t, double w, double q);
double power_tail_tail(double sigma, int d, double radius, double w, double q);

}  // namespace oracles

}  // namespace decaylab
