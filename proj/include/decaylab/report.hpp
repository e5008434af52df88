#pragma once

#include <Eigen/Dense>
#include <string>

#include "json.hpp"

namespace decaylab {

using json = nlohmann::ordered_json;

// Empirical form of every O(.) and asymp-equivalence claim: per-point tables
// over a declared grid, the achieved constants, and a verdict against a
// declared threshold.  A report never carries a bare boolean.
struct BoundReport {
    Eigen::ArrayXd grid;
    Eigen::ArrayXd lhs;
    Eigen::ArrayXd rhs;
    double ratio_inf = 0.0;
    double ratio_sup = 0.0;
    double threshold = 0.0;
    bool two_sided = false;
    bool pass = false;
    std::string tag;  // empty, or e.g. "divergent-tail", "no-decay"
    json extra;       // probe data, truncation points, chained constants

    // Fills ratios and the verdict from the tables.  Points where both sides
    // vanish are skipped; lhs > 0 against rhs == 0 forces a failure.
    static BoundReport evaluate(Eigen::ArrayXd grid, Eigen::ArrayXd lhs,
                                Eigen::ArrayXd rhs, double threshold,
                                bool two_sided = false);

    json to_json() const;
};

// BoundReport for a one-parameter asymptotic claim, with the regime recorded.
struct AsymptoticVerdict : BoundReport {
    std::string regime;  // "t->0+" or "t->inf"
    json to_json() const;
};

// Round to 12 significant digits; reports quote constants at fixed precision.
double round_sig(double x, int digits = 12);

json json_number(double x);                 // non-finite values become strings
json json_array(const Eigen::ArrayXd& a);   // element-wise json_number

}  // namespace decaylab
