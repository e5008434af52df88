#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "decaylab/quadrature.hpp"
#include "decaylab/radial.hpp"
#include "decaylab/report.hpp"

namespace decaylab {

// Family of multiplier operators {T_t} generated by dilation of eta:
// (T_t f)^(xi) = eta(t|xi|) fhat(xi).  The family stores 1 - eta directly,
// which is the quantity the admissibility condition compares against
// min(1, u)^{2 gamma} and which cancels badly near u = 0 if formed naively.
struct MultiplierFamily {
    std::string label;
    double gamma = 1.0;  // claimed admissibility order
    std::map<std::string, double> params;
    std::function<double(double)> one_minus_eta;

    double eta(double u) const { return 1.0 - one_minus_eta(u); }
};

struct AdmissibilityReport : BoundReport {
    double gamma = 0.0;
    json to_json() const;
};

// Built-in generators: gauss (eta = exp(-u^2), gamma = 1), poisson
// (eta = exp(-u), gamma = 1/2), spherical_combination (eta = m_r, gamma = r,
// needs params r > 0 and d >= 2).
MultiplierFamily builtin_family(const std::string& name,
                                const std::map<std::string, double>& params = {});

// Generalized binomial Gamma(r+1) / (Gamma(s+1) Gamma(r-s+1)) for r >= 0;
// zero at the Gamma poles (s or r-s a negative integer).
double gen_binomial(double r, double s);

// Weights of the fractional spherical-mean combination
//   w_k = -2 (-1)^k (2r choose r-k) / (2r choose r), k = 1, 2, ...
// truncated when |w_k| < tolerance (integer r terminates exactly at k = r).
struct WeightTable {
    std::vector<double> w;   // w[k-1] is the weight of V_{kt}
    double sum = 0.0;        // listed-weight sum; equals 1 up to tail_bound
    double tail_bound = 0.0; // estimate of sum_{k > K} |w_k|
};
WeightTable combination_weights(double r, double tolerance = 1e-10);

// Multiplier of the combination family, two routes.
// Series route: m_r(u) = sum_k w_k j_{d/2-1}(k u).
double m_r_series(double r, int d, double u, double tolerance = 1e-12);
double one_minus_m_r_series(double r, int d, double u, double tolerance = 1e-12);

// Integral route: 1 - m_r(u) = c(r, d) int_0^1 sin^{2r}(us/2) (1-s^2)^e ds.
// corrected mode uses e = (d-3)/2 with the constant calibrated once per d so
// that r = 1 reproduces j_{d/2-1} exactly; paper mode evaluates the displayed
// formula verbatim with e = (d-1)/2 and m read as d.
enum class ExponentMode { corrected, paper };
double m_r_integral(double r, int d, double u, const QuadratureSpec& quad = {},
                    ExponentMode mode = ExponentMode::corrected);
double one_minus_m_r_integral(double r, int d, double u, const QuadratureSpec& quad = {},
                              ExponentMode mode = ExponentMode::corrected);

// Two-sided check of [min(1,u)]^{2 gamma} ~ |1 - eta(u)| on the grid; the
// dilation structure makes the condition one-dimensional in u = ts.
AdmissibilityReport check_admissible(const MultiplierFamily& fam,
                                     const Eigen::ArrayXd& grid = Eigen::ArrayXd(),
                                     double threshold = defaults::adm_threshold);

// ||T_t f - f||_p for a radial pair, computed spectrally: the Fourier-side
// difference profile is (eta(t s) - 1) F0(s).  p = 2 uses the Plancherel
// fast path; other p inverse-transform to the space side first.
double approx_error_norm(const MultiplierFamily& fam, double t, const RadialPair& pair,
                         double p, const QuadratureSpec& quad = {});

Eigen::ArrayXd default_admissibility_grid();  // [1e-3, 1e3], 64 per decade

}  // namespace decaylab
