#pragma once

namespace decaylab {

// Normalized Bessel function j_nu(u) = Gamma(nu+1) (u/2)^{-nu} J_nu(u),
// so that j_nu(0) = 1.  This is the radial Fourier kernel at order
// nu = d/2 - 1; closed forms are used at nu = -1/2 (cos u) and the
// half-integer orders, a power series below the switch point, and the
// standard J_nu evaluation beyond.  Requires nu >= -1/2.
double normalized_bessel(double nu, double u);

// 1 - j_nu(u) without cancellation at small u.
double one_minus_normalized_bessel(double nu, double u);

// Surface measure of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
// d = 1 gives the two-point "sphere", sigma_0 = 2.
double sphere_area(int d);

inline double bessel_order(int d) { return 0.5 * d - 1.0; }

}  // namespace decaylab
