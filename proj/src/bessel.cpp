#include "decaylab/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace decaylab {

namespace {

constexpr double kHalfTol = 1e-12;

bool near(double x, double y) { return std::abs(x - y) < kHalfTol; }

// Power series sum_k (-1)^k c_k with c_0 = 1,
// c_{k+1} = c_k z / ((k+1)(nu+k+1)), z = u^2/4.  Terms decay fast for the
// u range we use it on.
double series_tail(double nu, double u, int first_term) {
    const double z = 0.25 * u * u;
    double c = 1.0;
    double acc = first_term == 0 ? 1.0 : 0.0;
    double sign = 1.0;
    for (int k = 0; k < 64; ++k) {
        c *= z / ((k + 1) * (nu + k + 1));
        sign = -sign;
        if (k + 1 >= first_term) acc += sign * c;
        if (c < 1e-18 * (std::abs(acc) + 1.0)) break;
    }
    return acc;
}

double odd_double_factorial(int n) {  // (2n+1)!!
    double r = 1.0;
    for (int k = 1; k <= n; ++k) r *= 2 * k + 1;
    return r;
}

// Large-argument asymptotic for J_nu, used only for the generic
// non-special orders in (-1/2, 0) where the series no longer reaches.
double cyl_j_asymptotic(double nu, double u) {
    const double mu = 4.0 * nu * nu;
    const double w = 8.0 * u;
    const double p = 1.0 - (mu - 1.0) * (mu - 9.0) / (2.0 * w * w) +
                     (mu - 1.0) * (mu - 9.0) * (mu - 25.0) * (mu - 49.0) /
                         (24.0 * w * w * w * w);
    const double q = (mu - 1.0) / w - (mu - 1.0) * (mu - 9.0) * (mu - 25.0) /
                                          (6.0 * w * w * w);
    const double chi = u - (0.5 * nu + 0.25) * M_PI;
    return std::sqrt(2.0 / (M_PI * u)) * (p * std::cos(chi) - q * std::sin(chi));
}

double normalize(double nu, double u, double cyl) {
    // Gamma(nu+1) (u/2)^{-nu} * J_nu(u), via logs to dodge overflow.
    const double lg = std::lgamma(nu + 1.0) - nu * std::log(0.5 * u);
    return std::exp(lg) * cyl;
}

}  // namespace

double normalized_bessel(double nu, double u) {
    if (nu < -0.5 - kHalfTol)
        throw std::domain_error("normalized_bessel: order must be >= -1/2");
    if (u < 0.0) throw std::domain_error("normalized_bessel: argument must be >= 0");
    if (u == 0.0) return 1.0;

    if (near(nu, -0.5)) return std::cos(u);
    if (near(nu, 0.5)) return std::sin(u) / u;

    // half-integer orders: j_{n+1/2}(u) = (2n+1)!! sph_j_n(u) / u^n
    const double n_half = nu - 0.5;
    if (near(n_half, std::round(n_half)) && std::round(n_half) >= 1) {
        const int n = (int)std::lround(n_half);
        if (u < 0.5) return series_tail(nu, u, 0);
        return odd_double_factorial(n) * std::sph_bessel((unsigned)n, u) /
               std::pow(u, n);
    }

    if (u <= 0.25) return series_tail(nu, u, 0);

    if (nu >= 0.0) return normalize(nu, u, std::cyl_bessel_j(nu, u));

    // generic order in (-1/2, 0)
    if (u <= 16.0) return series_tail(nu, u, 0);
    return normalize(nu, u, cyl_j_asymptotic(nu, u));
}

double one_minus_normalized_bessel(double nu, double u) {
    if (u == 0.0) return 0.0;
    if (near(nu, -0.5)) {
        // 1 - cos u = 2 sin^2(u/2), exact at every scale
        const double s = std::sin(0.5 * u);
        return 2.0 * s * s;
    }
    if (u <= 0.25) return -series_tail(nu, u, 1);
    return 1.0 - normalized_bessel(nu, u);
}

double sphere_area(int d) {
    if (d < 1) throw std::domain_error("sphere_area: dimension must be >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace decaylab
