#pragma once

#include <string>

#include "decaylab/bessel.hpp"
#include "decaylab/func.hpp"
#include "decaylab/quadrature.hpp"
#include "decaylab/report.hpp"

namespace decaylab {

// Which side of a transform pair a profile lives on.
enum class Side { space, fourier };

std::string to_string(Side s);

// Radial reduction of a function on d-dimensional Euclidean space:
// x -> g(|x|), represented by its profile on the positive half-axis.
struct RadialProfile {
    int d = 1;
    Side side = Side::space;
    RealFunc profile;
    std::string provenance = "closed-form";  // closed-form | transform | file
    Eigen::ArrayXd default_grid;             // suggested evaluation grid

    double operator()(double r) const { return profile(r); }
};

// A profile together with its radial Fourier transform.  The forward
// transform of the space side must match the Fourier side within the
// declared tolerance on the overlap grid (checked at catalog registration).
struct RadialPair {
    int d = 1;
    RadialProfile space;
    RadialProfile fourier;
    std::string provenance = "closed-form";
};

// Radial Fourier-Hankel transform at a single output point:
//   forward:  fhat(s) = sigma_{d-1} int_0^inf r^{d-1} f0(r) j_{d/2-1}(rs) dr
//   inverse:  the same kernel scaled by (2 pi)^{-d}
// Direction follows g.side.  Truncation is probed decade by decade; a
// non-stabilizing tail raises divergence_error, an alternating one above
// tolerance raises cancellation_error.
double fourier_radial_at(const RadialProfile& g, double s, const QuadratureSpec& quad = {});

// Transform sampled on out_grid; meaning flag toggled, provenance "transform".
RadialProfile fourier_radial(const RadialProfile& g, const Eigen::ArrayXd& out_grid,
                             const QuadratureSpec& quad = {});

// (sigma_{d-1} int |g0(r)|^p r^{d-1} dr)^{1/p}; sup over the grid at p = inf.
double radial_lp_norm(const RadialProfile& g, double p, const QuadratureSpec& quad = {});

// (sigma_{d-1} int_t^{2t} [s^w |F(s)|]^q s^{d-1} ds)^{1/q}
double shell_integral(const RadialProfile& F, double t, double w, double q,
                      const QuadratureSpec& quad = {});

// Same with upper limit infinity; the radius is given directly (callers pass
// 1/t when working in the modulus variable).  Throws divergence_error when
// the tail does not stabilize.
double tail_integral(const RadialProfile& F, double t, double w, double q,
                     const QuadratureSpec& quad = {});

// q-th power of tail_integral with the stability diagnosis attached.
ImproperResult tail_integral_power(const RadialProfile& F, double t, double w, double q,
                                   const QuadratureSpec& quad = {});

}  // namespace decaylab
