#pragma once

#include "decaylab/smoothness.hpp"

namespace decaylab {

// Locally bounded-variation profile on the positive half-axis, vanishing at
// infinity.  Variation is measured from the closed-form derivative when one
// is supplied and from refined increment sums otherwise; jump discontinuities
// ride on the profile's breakpoints.
struct BVProfile {
    std::string name;
    RealFunc profile;
    RealFunc derivative;  // optional; invalid() means increment sums

    static BVProfile closed(std::string name, RealFunc f, RealFunc df = RealFunc());
};

// Catalog spectral profiles wrapped as BV fixtures, with closed-form
// derivatives where available and jump breakpoints otherwise.
BVProfile spectral_bv_profile(const std::string& catalog_name, int d,
                              const std::map<std::string, double>& params = {});

// integral of weight(s) |dg(s)| over [t, T] (T may be infinite: probed decade
// by decade).  Closed-form path splits at the derivative's sign changes;
// the grid path refines increment sums until they stabilize.
ImproperResult weighted_variation(const BVProfile& g, double t, double T,
                                  const std::function<double(double)>& weight,
                                  const QuadratureSpec& quad = {});
double variation_tail(const BVProfile& g, double t, double T,
                      const QuadratureSpec& quad = {});

// General-monotone condition at constant c:
//   int_t^inf |dg| <= C int_{t/c}^inf |g(s)|/s ds < inf.
struct GMReport {
    double c = 0.0;
    BoundReport bound;  // lhs tail variation, rhs weighted tail integral
    bool vanishing = false;
    double smallest_passing_c = std::numeric_limits<double>::quiet_NaN();
    json c_scan;  // ratio_sup per scanned c
    bool pass = false;
    json to_json() const;
};
GMReport check_gm(const BVProfile& g, double c,
                  const Eigen::ArrayXd& grid = Eigen::ArrayXd(),
                  const QuadratureSpec& quad = {},
                  double threshold = defaults::bound_threshold);

// GM^d: additionally int_0^1 s^{d-1} |g| + int_1^inf s^{(d-1)/2} |dg| < inf.
struct GMdReport {
    int d = 1;
    double first_term = 0.0;
    double second_term = 0.0;
    TailStatus first_status = TailStatus::converged;
    TailStatus second_status = TailStatus::converged;
    GMReport gm;  // the paper's "in addition" premise
    bool pass = false;
    json to_json() const;
};
GMdReport check_gm_d(const BVProfile& g, int d, const QuadratureSpec& quad = {},
                     bool enforce = true);

// f0(t) = sigma_{d-1} (2 pi)^{-d} int s^{d-1} F0(s) j_{d/2-1}(ts) ds for a
// GM^d spectral profile, packaged with the membership evidence and an L^p
// finiteness probe of the synthesized side.
struct GMPair {
    RadialPair pair;
    GMdReport membership;
    double lp_norm = 0.0;
    double p = 0.0;
    bool in_lp = false;
    json to_json() const;
};
GMPair build_gm_pair(const BVProfile& F0, int d, double p,
                     const Eigen::ArrayXd& out_grid = Eigen::ArrayXd(),
                     const QuadratureSpec& quad = {}, bool enforce = true);

// Two-sided estimate under the relaxed hypotheses: part A needs
// 1 < p <= q < inf and a nonnegative spectral profile; part B needs
// 1 < q <= p with p > 2d/(d+1) and a finite weighted q-norm.
TwoSidedReport relaxed_two_sided(const MultiplierFamily& fam, const GMPair& gp,
                                 const RatePair& rate,
                                 const Eigen::ArrayXd& t_grid = Eigen::ArrayXd(),
                                 const QuadratureSpec& quad = {}, bool enforce = true);

// Decay theorem under the relaxed hypotheses.  Forward: Lip plus membership
// gives the shell bound in exponent q.  Backward: the shell bound in
// exponent p gives Lip in exponent q.  p = q asserts the equivalence.
struct RelaxedLipReport {
    std::optional<ImplicationReport> forward;
    std::optional<ImplicationReport> backward;
    bool iff_asserted = false;
    bool pass = false;
    json to_json() const;
};
RelaxedLipReport relaxed_lip_titchmarsh(const MultiplierFamily& fam, const GMPair& gp,
                                        double p, double q, const PosFunc& phi,
                                        const CheckGrids& grids = CheckGrids::defaults(),
                                        const QuadratureSpec& quad = {},
                                        bool enforce = true);

// Pointwise Riemann-Lebesgue bound F0(xi) = O(|xi|^{-d/q'} phi(1/|xi|)),
// plus the intermediate Holder step
//   F0(t) <= C t^{-d/q'} (int_{t/c}^inf s^{qd-d-1} F0(s)^q ds)^{1/q}
// as a second two-sided table in extra["holder_step"].
AsymptoticVerdict riemann_lebesgue_bound(const GMPair& gp, double q, const PosFunc& phi,
                                         const Eigen::ArrayXd& xi_grid = Eigen::ArrayXd(),
                                         double c = 2.0, const QuadratureSpec& quad = {},
                                         bool enforce = true);

// Single-radial-integral Besov criterion
//   int_0^inf t^{d(q-1)} (|F0(t)| / phi(1/t))^q dt/t
// with stability probes on both ends.
BesovValue relaxed_besov_criterion(const RadialProfile& F, double q, const PosFunc& phi,
                                   const QuadratureSpec& quad = {});

struct RelaxedBesovReport {
    std::optional<ImplicationReport> forward;
    std::optional<ImplicationReport> backward;
    bool iff_asserted = false;
    bool pass = false;
    json to_json() const;
};
RelaxedBesovReport relaxed_besov(const MultiplierFamily& fam, const GMPair& gp, double p,
                                 double q, const PosFunc& phi,
                                 const QuadratureSpec& quad = {}, bool enforce = true);

}  // namespace decaylab
