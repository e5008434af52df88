#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace decaylab {

// Evaluable real-valued function on the positive half-axis: either a closed
// form with parameters or a sample grid with interpolation.  Evaluation
// outside the domain is an error, never silent extrapolation.
class RealFunc {
  public:
    enum class Interp {
        loglog,  // linear in (log t, log v); exact on power laws; values > 0
        loglin   // linear in (log t, v); for signed profiles
    };

    RealFunc() = default;

    static RealFunc closed_form(std::string name, std::function<double(double)> f,
                                double lo = 0.0,
                                double hi = std::numeric_limits<double>::infinity(),
                                std::vector<double> breakpoints = {},
                                std::map<std::string, double> params = {});

    static RealFunc samples(const Eigen::ArrayXd& x, const Eigen::ArrayXd& v,
                            Interp mode = Interp::loglog, std::string name = "samples");

    bool valid() const { return impl_ != nullptr; }
    double operator()(double t) const;

    bool evaluable(double t) const;
    double domain_min() const;  // domain is open at the left end
    double domain_max() const;

    const std::string& name() const;
    const std::map<std::string, double>& params() const;
    const std::vector<double>& breakpoints() const;
    bool is_sampled() const;
    // Sample abscissae (empty for closed forms); handy as a default grid.
    const Eigen::ArrayXd& sample_points() const;

    std::string describe() const;  // "name(k=v,...)" for reports

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Strictly increasing log-spaced grid, endpoints included.
Eigen::ArrayXd logspace(double lo, double hi, int points_per_decade);

}  // namespace decaylab
