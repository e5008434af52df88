#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace decaylab {

// Composite Gauss-Legendre quadrature on log-spaced panels.  Oscillatory
// kernels are handled by capping the panel width at a quarter period of the
// fastest oscillation, never by specialized oscillatory rules.
struct QuadratureSpec {
    double r_min = 1e-8;
    double r_max = 1e4;
    int nodes_per_decade = 96;  // total Gauss nodes per decade, >= 8
    std::string scheme = "gl12-log";

    void validate() const;
    int panels_per_decade() const;
};

struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

// Distinct from monotone divergence: adjacent tail blocks alternate in sign
// above tolerance, so the truncated value is cancellation-dominated.
struct cancellation_error : quadrature_error {
    explicit cancellation_error(const std::string& what) : quadrature_error(what) {}
};

// Monotone non-stabilizing tail.
struct divergence_error : quadrature_error {
    explicit divergence_error(const std::string& what) : quadrature_error(what) {}
};

enum class TailStatus {
    converged,    // increments fell below tolerance
    completed,    // geometric tail estimate added (power-like decay)
    oscillatory,  // alternating blocks, Euler-averaged value
    divergent,    // increments do not shrink
    truncated     // domain-limited; no statement about the remainder
};

std::string to_string(TailStatus s);

struct ImproperResult {
    double value = 0.0;          // includes tail_estimate when completed
    double tail_estimate = 0.0;  // estimated mass beyond the last block
    TailStatus status = TailStatus::converged;
    int blocks = 0;              // probe decades (or oscillation blocks) used
    double last_increment = 0.0;
    double increment_ratio = 0.0;  // |I_k/I_{k-1}| over the final probe pair
};

using Integrand = std::function<double(double)>;

// Proper integral over [a, b], 0 < a < b.  Panels are log-spaced at
// spec.panels_per_decade() with forced boundaries at the given breakpoints;
// osc_freq > 0 caps panel width at (pi/2)/osc_freq.
double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                 double osc_freq = 0.0, const std::vector<double>& breakpoints = {});

// Uniform panels on [a, b] (a may be 0); used for kernels smooth at the
// left endpoint where a log mesh buys nothing.
double integrate_uniform(const Integrand& f, double a, double b, int min_panels,
                         double osc_freq = 0.0);

// Improper integral over [a, inf).  Integrates [a, t_truncate] densely, then
// extends decade by decade: shrinking same-sign increments are completed with
// a geometric tail estimate (exact on power tails), alternating increments
// are Euler-averaged, non-shrinking increments are reported divergent.
ImproperResult integrate_upper(const Integrand& f, double a, double t_truncate,
                               const QuadratureSpec& spec, double osc_freq = 0.0,
                               const std::vector<double>& breakpoints = {},
                               int max_probe_decades = 10);

// Improper integral over (0, b]: decade extension toward 0 with the same
// completion rules.
ImproperResult integrate_lower(const Integrand& f, double b, double start,
                               const QuadratureSpec& spec,
                               const std::vector<double>& breakpoints = {},
                               int max_probe_decades = 10);

// Improper integral over (0, inf) = lower(b0) + [b0,t0] + upper(t0).
ImproperResult integrate_full(const Integrand& f, const QuadratureSpec& spec,
                              double osc_freq = 0.0,
                              const std::vector<double>& breakpoints = {});

// Tail of an oscillatory integrand from T on: half-period blocks of length
// pi/omega summed with repeated averaging of the alternating partial sums.
ImproperResult oscillatory_tail(const Integrand& f, double t_from, double omega,
                                const QuadratureSpec& spec, int max_blocks = 200000);

namespace defaults {
constexpr double stability_rel = 0.01;       // x10 probe: relative change for "stable"
constexpr double bound_threshold = 50.0;     // default one-sided ratio threshold
constexpr double adm_threshold = 1e3;        // two-sided admissibility threshold
constexpr double cauchy_shrink = 0.9;        // increment ratio for Cauchy convergence
constexpr double omega_tmax = 1e6;           // default truncation for weighted tails
constexpr int grid_per_decade = 64;
}  // namespace defaults

}  // namespace decaylab
