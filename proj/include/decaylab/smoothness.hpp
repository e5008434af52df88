#pragma once

#include <optional>

#include "decaylab/majorant.hpp"
#include "decaylab/multipliers.hpp"
#include "decaylab/radial.hpp"

namespace decaylab {

// Raised when an operation's stated hypotheses (admissibility, Omega
// membership, exponent ranges) fail and the caller did not opt out of
// enforcement; carries the failing reports.
struct precondition_error : std::runtime_error {
    json detail;
    precondition_error(const std::string& what, json d)
        : std::runtime_error(what), detail(std::move(d)) {}
};

// Exponent bookkeeping for the decay theorems: p' = p/(p-1) and the shell
// weight w = d(1 - 1/p - 1/q).  Forward-direction statements need
// 1 < p <= 2, p <= q <= p'; backward ones 2 <= p < inf, p' <= q <= p.
struct RatePair {
    double p = 2.0;
    double q = 2.0;
    int d = 1;

    double p_prime() const { return p / (p - 1.0); }
    double w() const { return d * (1.0 - 1.0 / p - 1.0 / q); }
    bool forward_ok() const { return p > 1.0 && p <= 2.0 && q >= p && q <= p_prime(); }
    bool backward_ok() const {
        return p >= 2.0 && std::isfinite(p) && q >= p_prime() && q <= p;
    }
    void validate() const;
    json to_json() const;
};

struct CheckGrids {
    Eigen::ArrayXd t_small;   // t -> 0+ regime (Lip side)
    Eigen::ArrayXd t_large;   // t -> inf regime (shell side)
    Eigen::ArrayXd h_small;   // modulus variable for tail checks
    Eigen::ArrayXd majorant;  // Omega membership grid; empty = per-majorant default

    static CheckGrids defaults();
};

// Implication report: hypothesis verdict, conclusion verdict, the constant
// chain between them.  A pass is always constant-valued, never a bare flag.
struct ImplicationReport {
    std::string name;
    json preconditions = json::array();
    AsymptoticVerdict hypothesis;
    AsymptoticVerdict conclusion;
    double chain_constant = std::numeric_limits<double>::quiet_NaN();
    bool chain_ok = true;
    bool pass = false;
    json extra;
    json to_json() const;
};

// ||T_t f - f||_p = O(phi(t)) as t -> 0+ for the gamma = beta family.
// Enforced hypotheses: family admissibility at gamma = beta and
// phi in Omega_{2 beta}; reports attached either way.
AsymptoticVerdict lip_check(const MultiplierFamily& fam, const RadialPair& pair, double p,
                            const PosFunc& phi, double beta,
                            const Eigen::ArrayXd& t_grid = Eigen::ArrayXd(),
                            const QuadratureSpec& quad = {}, bool enforce = true,
                            double threshold = defaults::bound_threshold);

// shell_integral(F, t, w, q) = O(phi(1/t)) as t -> inf.
AsymptoticVerdict shell_decay_check(const RadialProfile& F, const RatePair& rate,
                                    const PosFunc& phi,
                                    const Eigen::ArrayXd& t_grid = Eigen::ArrayXd(),
                                    const QuadratureSpec& quad = {},
                                    double threshold = defaults::bound_threshold);

// tail_integral(F, 1/h, w, q) = O(phi(h)) as h -> 0+; a non-stabilizing tail
// produces a failed verdict with the "divergent-tail" tag instead of a throw.
AsymptoticVerdict tail_decay_check(const RadialProfile& F, const RatePair& rate,
                                   const PosFunc& phi,
                                   const Eigen::ArrayXd& h_grid = Eigen::ArrayXd(),
                                   const QuadratureSpec& quad = {},
                                   double threshold = defaults::bound_threshold);

// Equivalence of the shell and tail conditions for phi in M.  When the tail
// is finite its constant must respect the dyadic-sum chain
//   C_tail <= C_shell (1 + C_M(phi^q)/ln 2)^{1/q},
// where C_M(phi^q) is the check_M constant of phi^q.
struct EquivalenceReport {
    AsymptoticVerdict shell;
    AsymptoticVerdict tail;
    BoundReport m_condition_q;  // check_M applied to phi^q
    double chain_bound = 0.0;
    bool chain_ok = false;
    bool pass = false;
    json to_json() const;
};
EquivalenceReport lemma_equivalence(const RadialProfile& F, const RatePair& rate,
                                    const PosFunc& phi,
                                    const CheckGrids& grids = CheckGrids::defaults(),
                                    const QuadratureSpec& quad = {}, bool enforce = true);

// J(t) = (sigma_{d-1} int [min(1,ts)^{2 gamma} s^w |F(s)|]^q s^{d-1} ds)^{1/q}
double j_functional(double gamma, const RadialProfile& F, const RatePair& rate, double t,
                    const QuadratureSpec& quad = {});

// J(t) and E(t) = ||T_t f - f||_p tabulated on a grid (shared by the strict
// and the relaxed two-sided estimates).
void two_sided_tables(const MultiplierFamily& fam, const RadialPair& pair,
                      const RatePair& rate, const Eigen::ArrayXd& grid,
                      const QuadratureSpec& quad, Eigen::ArrayXd& j_out,
                      Eigen::ArrayXd& e_out);

// sigma-weighted q-power norm (sigma_{d-1} int [s^w |F|]^q s^{d-1} ds)
ImproperResult weighted_qnorm_power(const RadialProfile& F, double w, double q,
                                    const QuadratureSpec& quad = {});

// Two-sided estimate between J(t) and E(t) = ||T_t f - f||_p.
// Part A (forward flags): J <= C E; part B (backward flags): E <= C J.
// At p = q = 2 the congruence table (2 pi)^{d/2} E / J must sit inside the
// family's admissibility ratio bounds.
struct TwoSidedReport {
    std::optional<AsymptoticVerdict> part_a;  // lhs J, rhs E
    std::optional<AsymptoticVerdict> part_b;  // lhs E, rhs J
    double congruence_inf = std::numeric_limits<double>::quiet_NaN();
    double congruence_sup = std::numeric_limits<double>::quiet_NaN();
    json preconditions = json::array();
    json to_json() const;
};
TwoSidedReport two_sided_estimate(const MultiplierFamily& fam, const RadialPair& pair,
                                  const RatePair& rate,
                                  const Eigen::ArrayXd& t_grid = Eigen::ArrayXd(),
                                  const QuadratureSpec& quad = {}, bool enforce = true);

// Forward decay theorem: Lip(p, beta, phi) implies the shell decay bound,
// with C_shell <= (part-A constant) x (Lip constant).
ImplicationReport titchmarsh_forward(const MultiplierFamily& fam, const RadialPair& pair,
                                     const RatePair& rate, const PosFunc& phi,
                                     const CheckGrids& grids = CheckGrids::defaults(),
                                     const QuadratureSpec& quad = {}, bool enforce = true);

// Backward decay theorem: the shell decay bound implies Lip(p, beta, phi).
// Also verifies the proof split J^q = tail + t^{2 q beta} low-frequency part
// and that the low-frequency part is O(phi(t)^q).
ImplicationReport titchmarsh_backward(const MultiplierFamily& fam, const RadialProfile& F,
                                      const RatePair& rate, const PosFunc& phi,
                                      const CheckGrids& grids = CheckGrids::defaults(),
                                      const QuadratureSpec& quad = {},
                                      bool enforce = true);

// B_{p,q}^phi(f) = int_0^1 (||T_t f - f||_p / phi(t))^q dt/t, with a Cauchy
// stability probe in the lower endpoint; q = inf uses the supremum form.
struct BesovValue {
    double value = 0.0;
    TailStatus status = TailStatus::converged;
    json detail;
};
BesovValue besov_functional(const MultiplierFamily& fam, const RadialPair& pair, double p,
                            double q, const PosFunc& phi, const QuadratureSpec& quad = {},
                            bool enforce = true);

double besov_norm(const MultiplierFamily& fam, const RadialPair& pair, double p, double q,
                  const PosFunc& phi, const QuadratureSpec& quad = {},
                  bool enforce = true);

// Spectral Besov functional; double mode iterates the shell integral in t,
// single mode collapses the t integral to ln 2 (Fubini).
enum class SpectralMode { single, iterated };
BesovValue besov_spectral_functional(const RadialProfile& F, const RatePair& rate,
                                     const PosFunc& phi,
                                     SpectralMode mode = SpectralMode::single,
                                     const QuadratureSpec& quad = {});

// Besov membership vs finiteness of the spectral functional, either
// direction; chain constant reported as conclusion / (weighted q-norm^q +
// hypothesis value).
enum class Direction { forward, backward };
ImplicationReport theorem_besov(const MultiplierFamily& fam, const RadialPair& pair,
                                const RatePair& rate, const PosFunc& phi,
                                Direction direction,
                                const QuadratureSpec& quad = {}, bool enforce = true);

// The necessity counterexample: F0 = s^{-(2 beta + d/p')} 1_{s>=1} with
// phi = t^{2 beta}.  Condition (i): the tail bound holds with a stable
// constant; condition (ii): the low-frequency Lipschitz integral grows by
// ln 10 per decade of the domain schedule; phi itself fails
// check_omega(2 beta) with the divergent-tail tag.
struct CounterexampleReport {
    AsymptoticVerdict tail_condition;     // (i)
    Eigen::ArrayXd schedule;              // R values
    Eigen::ArrayXd growth;                // I(R) table
    Eigen::ArrayXd per_decade_increment;  // I(R_{k+1}) - I(R_k)
    BoundReport omega_failure;            // phi = t^{2 beta} vs Omega_{2 beta}
    bool pass = false;
    json to_json() const;
};
CounterexampleReport counterexample_remark(double beta, double p, int d,
                                           const Eigen::ArrayXd& schedule = Eigen::ArrayXd(),
                                           const QuadratureSpec& quad = {});

}  // namespace decaylab
