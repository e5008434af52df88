#include "decaylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decaylab {

namespace {

// 12-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kGlOrder = 12;
constexpr double kGlNode[6] = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr double kGlWeight[6] = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

double gauss_panel(const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double dx = half * kGlNode[i];
        acc += kGlWeight[i] * (f(mid + dx) + f(mid - dx));
    }
    return acc * half;
}

// Integrate one log-spaced range, subdividing each panel against the
// oscillation cap.
double integrate_log_range(const Integrand& f, double a, double b, int panels_per_decade,
                           double osc_freq) {
    if (b <= a) return 0.0;
    const double decades = std::log10(b / a);
    const int n = std::max(1, (int)std::ceil(decades * panels_per_decade));
    const double cap = osc_freq > 0 ? (M_PI / 2.0) / osc_freq
                                    : std::numeric_limits<double>::infinity();
    double total = 0.0;
    double lo = a;
    const double step = decades / n;
    for (int i = 0; i < n; ++i) {
        double hi = (i + 1 == n) ? b : a * std::pow(10.0, (i + 1) * step);
        if (hi - lo > cap) {
            const int m = (int)std::ceil((hi - lo) / cap);
            if (m > 2000000)
                throw quadrature_error("oscillation cap demands too many panels");
            const double w = (hi - lo) / m;
            for (int j = 0; j < m; ++j)
                total += gauss_panel(f, lo + j * w, lo + (j + 1) * w);
        } else {
            total += gauss_panel(f, lo, hi);
        }
        lo = hi;
    }
    return total;
}

std::vector<double> cut_points(double a, double b, const std::vector<double>& breakpoints) {
    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

struct ProbeState {
    double partial = 0.0;
    double prev_inc = 0.0;
    double inc = 0.0;
    int shrink_streak = 0;
    int grow_streak = 0;
    int flips = 0;
    int blocks = 0;
};

// Shared decade-probe bookkeeping: classify the increment stream and, where
// legitimate, estimate the remaining mass.
ImproperResult finish_probes(const ProbeState& st, double rel_floor) {
    ImproperResult res;
    res.value = st.partial;
    res.blocks = st.blocks;
    res.last_increment = st.inc;
    res.increment_ratio =
        st.prev_inc != 0.0 ? std::abs(st.inc / st.prev_inc) : 0.0;

    const double scale = std::max(std::abs(st.partial), rel_floor);
    if (std::abs(st.inc) <= 1e-14 * scale) {
        res.status = TailStatus::converged;
        return res;
    }
    const bool alternating = st.flips >= 2 && st.inc * st.prev_inc < 0.0;
    if (alternating) {
        if (std::abs(st.inc) > 0.05 * scale)
            throw cancellation_error(
                "tail blocks alternate above tolerance (oscillation-dominated cancellation)");
        res.value = st.partial - 0.5 * st.inc;  // one Euler averaging step
        res.status = TailStatus::oscillatory;
        return res;
    }
    const double rho = res.increment_ratio;
    if (st.prev_inc != 0.0 && st.inc * st.prev_inc > 0.0 && rho < 0.999) {
        res.tail_estimate = st.inc * rho / (1.0 - rho);
        res.value += res.tail_estimate;
        res.status = TailStatus::completed;
        return res;
    }
    res.status = TailStatus::divergent;
    return res;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(r_min > 0.0) || !(r_min < r_max))
        throw quadrature_error("QuadratureSpec: need 0 < r_min < r_max");
    if (nodes_per_decade < 8)
        throw quadrature_error("QuadratureSpec: nodes_per_decade must be >= 8");
}

int QuadratureSpec::panels_per_decade() const {
    return std::max(1, (nodes_per_decade + kGlOrder - 1) / kGlOrder);
}

std::string to_string(TailStatus s) {
    switch (s) {
        case TailStatus::converged: return "converged";
        case TailStatus::completed: return "completed";
        case TailStatus::oscillatory: return "oscillatory";
        case TailStatus::divergent: return "divergent";
        case TailStatus::truncated: return "truncated";
    }
    return "unknown";
}

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                 double osc_freq, const std::vector<double>& breakpoints) {
    spec.validate();
    if (!(a > 0.0)) throw quadrature_error("integrate: lower limit must be positive");
    if (b <= a) return 0.0;
    double total = 0.0;
    const auto cuts = cut_points(a, b, breakpoints);
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate_log_range(f, cuts[i], cuts[i + 1], spec.panels_per_decade(),
                                     osc_freq);
    if (!std::isfinite(total)) throw quadrature_error("integrate: non-finite result");
    return total;
}

double integrate_uniform(const Integrand& f, double a, double b, int min_panels,
                         double osc_freq) {
    if (b <= a) return 0.0;
    int n = std::max(1, min_panels);
    if (osc_freq > 0) {
        const double cap = (M_PI / 2.0) / osc_freq;
        n = std::max(n, (int)std::ceil((b - a) / cap));
    }
    if (n > 2000000) throw quadrature_error("integrate_uniform: too many panels");
    const double w = (b - a) / n;
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += gauss_panel(f, a + i * w, a + (i + 1) * w);
    if (!std::isfinite(total)) throw quadrature_error("integrate_uniform: non-finite result");
    return total;
}

ImproperResult integrate_upper(const Integrand& f, double a, double t_truncate,
                               const QuadratureSpec& spec, double osc_freq,
                               const std::vector<double>& breakpoints,
                               int max_probe_decades) {
    spec.validate();
    if (!(a > 0.0)) throw quadrature_error("integrate_upper: lower limit must be positive");
    double t0 = std::max(t_truncate, 2.0 * a);

    ProbeState st;
    st.partial = integrate(f, a, t0, spec, osc_freq, breakpoints);

    double lo = t0;
    for (int k = 0; k < max_probe_decades; ++k) {
        const double hi = lo * 10.0;
        // Resolving many oscillation periods per decade gets expensive; hand
        // the rest of the tail to the half-period block scheme.
        if (osc_freq > 0 && (hi - lo) * osc_freq > 512.0 * (M_PI / 2.0)) {
            ImproperResult osc = oscillatory_tail(f, lo, osc_freq, spec);
            osc.value += st.partial;
            osc.blocks += st.blocks;
            return osc;
        }
        st.prev_inc = st.inc;
        st.inc = integrate_log_range(f, lo, hi, spec.panels_per_decade(), osc_freq);
        st.blocks++;
        st.partial += st.inc;
        if (!std::isfinite(st.partial))
            throw quadrature_error("integrate_upper: non-finite partial sum");
        if (st.prev_inc != 0.0 && st.inc * st.prev_inc < 0.0) st.flips++;
        const double scale = std::max(std::abs(st.partial), 1e-300);
        if (std::abs(st.inc) <= 1e-14 * scale && k >= 1) break;
        lo = hi;
    }
    return finish_probes(st, 1e-300);
}

ImproperResult integrate_lower(const Integrand& f, double b, double start,
                               const QuadratureSpec& spec,
                               const std::vector<double>& breakpoints,
                               int max_probe_decades) {
    spec.validate();
    double b0 = std::min(start, b / 2.0);
    if (!(b0 > 0.0)) throw quadrature_error("integrate_lower: bad start");

    ProbeState st;
    st.partial = integrate(f, b0, b, spec, 0.0, breakpoints);

    double hi = b0;
    for (int k = 0; k < max_probe_decades; ++k) {
        const double lo = hi / 10.0;
        st.prev_inc = st.inc;
        st.inc = integrate_log_range(f, lo, hi, spec.panels_per_decade(), 0.0);
        st.blocks++;
        st.partial += st.inc;
        if (!std::isfinite(st.partial))
            throw quadrature_error("integrate_lower: non-finite partial sum");
        if (st.prev_inc != 0.0 && st.inc * st.prev_inc < 0.0) st.flips++;
        const double scale = std::max(std::abs(st.partial), 1e-300);
        if (std::abs(st.inc) <= 1e-14 * scale && k >= 1) break;
        hi = lo;
    }
    return finish_probes(st, 1e-300);
}

ImproperResult integrate_full(const Integrand& f, const QuadratureSpec& spec,
                              double osc_freq, const std::vector<double>& breakpoints) {
    spec.validate();
    ImproperResult low = integrate_lower(f, spec.r_min * 100.0, spec.r_min, spec, breakpoints);
    ImproperResult up = integrate_upper(f, spec.r_min * 100.0, spec.r_max, spec, osc_freq,
                                        breakpoints);
    ImproperResult res = up;
    res.value += low.value;
    res.tail_estimate += low.tail_estimate;
    res.blocks += low.blocks;
    if (low.status == TailStatus::divergent) res.status = TailStatus::divergent;
    else if (low.status == TailStatus::completed && res.status == TailStatus::converged)
        res.status = TailStatus::completed;
    return res;
}

namespace {
// Repeated averaging of the trailing partial sums (van Wijngaarden style).
double average_partials(const std::vector<double>& partials) {
    std::vector<double> row(partials.end() - std::min<size_t>(partials.size(), 24),
                            partials.end());
    while (row.size() > 1) {
        for (size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    return row.front();
}
}  // namespace

ImproperResult oscillatory_tail(const Integrand& f, double t_from, double omega,
                                const QuadratureSpec& spec, int max_blocks) {
    if (!(omega > 0.0)) throw quadrature_error("oscillatory_tail: omega must be positive");
    (void)spec;
    const double h = M_PI / omega;  // half period
    std::vector<double> partials;
    double acc = 0.0;
    double lo = t_from;
    double peak = 0.0;
    double prev_avg = std::numeric_limits<double>::quiet_NaN();
    for (int m = 0; m < max_blocks; ++m) {
        const double b = gauss_panel(f, lo, lo + 0.5 * h) +
                         gauss_panel(f, lo + 0.5 * h, lo + h);
        if (m > 32 && std::abs(b) > 4.0 * peak)
            throw quadrature_error("oscillatory_tail: block magnitudes grow (divergent)");
        peak = std::max(peak, std::abs(b));
        acc += b;
        partials.push_back(acc);
        lo += h;
        if (std::abs(b) < 1e-15 * std::max(1.0, std::abs(acc))) break;
        if (m % 256 == 255) {
            const double avg = average_partials(partials);
            if (std::isfinite(prev_avg) &&
                std::abs(avg - prev_avg) < 1e-12 * std::max(1.0, std::abs(avg)))
                break;
            prev_avg = avg;
        }
    }
    ImproperResult res;
    res.value = average_partials(partials);
    res.status = TailStatus::oscillatory;
    res.blocks = (int)partials.size();
    res.last_increment = partials.size() > 1
                             ? partials.back() - partials[partials.size() - 2]
                             : partials.back();
    return res;
}

}  // namespace decaylab
