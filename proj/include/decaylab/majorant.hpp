#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decaylab/func.hpp"
#include "decaylab/quadrature.hpp"
#include "decaylab/report.hpp"

namespace decaylab {

// Positive nondecreasing function on (0, inf) used to majorize approximation
// rates; sampled instances interpolate in log-log coordinates.
using PosFunc = RealFunc;

struct Majorant {
    std::string name;
    std::map<std::string, double> params;
    PosFunc func;
    Eigen::ArrayXd default_check_grid;  // grid on which class membership is tested
    std::optional<BoundReport> checked_M;
    std::map<double, BoundReport> checked_omega;
    std::map<std::pair<double, double>, BoundReport> checked_omega_q;
};

double eval(const PosFunc& f, double t);

// Membership in M: int_0^t phi(u)/u du <= C phi(t) on the grid, phi
// nondecreasing, and phi(grid_min) <= 0.1 phi(grid_max) as the decay proxy.
// The lower limit is truncated at grid_min/64 (clipped to the domain) and the
// mass below is completed from the local power exponent there.
BoundReport check_M(const PosFunc& phi, const Eigen::ArrayXd& grid,
                    const QuadratureSpec& quad = {},
                    double threshold = defaults::bound_threshold);

// Membership in Omega_beta: int_t^inf phi(u) u^{-beta-1} du <= C phi(t)/t^beta.
// The upper tail is truncated at t_max, probed at 10 t_max (pass needs < 1%
// change) and completed geometrically; a non-shrinking tail yields the
// "divergent-tail" tag, distinct from bounded-but-large ratios.
BoundReport check_omega(const PosFunc& phi, double beta, const Eigen::ArrayXd& grid,
                        double t_max = defaults::omega_tmax,
                        const QuadratureSpec& quad = {},
                        double threshold = defaults::bound_threshold);

// (beta - eps)-almost decreasing on the grid:
// ratio_sup = max over u1 <= u2 of [phi(u2)/u2^{beta-eps}] / [phi(u1)/u1^{beta-eps}].
BoundReport check_almost_decreasing(const PosFunc& phi, double beta, double eps,
                                    const Eigen::ArrayXd& grid,
                                    double threshold = defaults::bound_threshold);

// Membership in Omega_beta^q: I(delta) = int_delta^1 dt / (t phi(1/t)^q) must
// be Cauchy in delta, i.e. the increments I(delta/10) - I(delta) shrink
// geometrically.  The report's tables carry the increments; extra["integral"]
// holds the completed value.
BoundReport check_omega_q(const PosFunc& phi, double beta, double q,
                          const Eigen::ArrayXd& delta_grid = Eigen::ArrayXd(),
                          const QuadratureSpec& quad = {});

struct RvEstimate {
    double index = 0.0;
    double residual = 0.0;  // rms misfit of log phi(lambda x)/phi(x) vs index*log lambda
};

// Regular-variation index via least squares over lambda_set at the largest
// quarter of x_grid.
RvEstimate estimate_rv_index(const PosFunc& phi, const std::vector<double>& lambda_set,
                             const Eigen::ArrayXd& x_grid);

// Named majorant families: power, power_log, log_power, loglog,
// exp_log_ratio, iterated_log_exp.  Parameters by name ("alpha", "a1", ...).
Majorant make_majorant(const std::string& name,
                       const std::map<std::string, double>& params);
std::vector<Majorant> catalog_majorants();
std::vector<std::string> majorant_names();

// Scan eps in {beta/2^k} for an almost-decreasing certificate, then chain it
// into the Omega_beta constant: omega ratio_sup should respect
// (2/eps) * (almost-decreasing constant).
struct EquivalenceScan {
    bool found = false;
    double eps = 0.0;
    BoundReport almost_decreasing;
    BoundReport omega;
    double chained_bound = 0.0;  // (2/eps) * ad constant
};
EquivalenceScan omega_equivalence_scan(const PosFunc& phi, double beta,
                                       const Eigen::ArrayXd& grid,
                                       double ad_threshold = 20.0);

// Default verification grids: 64 log-spaced points per decade over [1e-4, 1]
// for t->0+ claims and [1, 1e4] for t->inf claims.
Eigen::ArrayXd default_small_grid();
Eigen::ArrayXd default_large_grid();

}  // namespace decaylab
