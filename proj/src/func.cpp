#include "decaylab/func.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace decaylab {

struct RealFunc::Impl {
    std::string name;
    std::map<std::string, double> params;
    std::vector<double> breakpoints;

    // closed form
    std::function<double(double)> f;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    // samples
    bool sampled = false;
    Interp interp = Interp::loglog;
    Eigen::ArrayXd x, v, logx, work;  // work: logv (loglog) or v (loglin)
};

RealFunc RealFunc::closed_form(std::string name, std::function<double(double)> f,
                               double lo, double hi, std::vector<double> breakpoints,
                               std::map<std::string, double> params) {
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->f = std::move(f);
    impl->lo = lo;
    impl->hi = hi;
    impl->breakpoints = std::move(breakpoints);
    impl->params = std::move(params);
    RealFunc out;
    out.impl_ = impl;
    return out;
}

RealFunc RealFunc::samples(const Eigen::ArrayXd& x, const Eigen::ArrayXd& v, Interp mode,
                           std::string name) {
    if (x.size() != v.size() || x.size() < 2)
        throw std::invalid_argument("RealFunc::samples: need >= 2 matching samples");
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(x[i]))
            throw std::invalid_argument("RealFunc::samples: abscissae must be positive");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw std::invalid_argument("RealFunc::samples: abscissae must be strictly increasing");
        if (!std::isfinite(v[i]))
            throw std::invalid_argument("RealFunc::samples: values must be finite");
        if (mode == Interp::loglog && !(v[i] > 0.0))
            throw std::invalid_argument(
                "RealFunc::samples: log-log interpolation needs strictly positive values");
    }
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->sampled = true;
    impl->interp = mode;
    impl->x = x;
    impl->v = v;
    impl->logx = x.log();
    impl->work = (mode == Interp::loglog) ? Eigen::ArrayXd(v.log()) : v;
    impl->lo = x[0];
    impl->hi = x[x.size() - 1];
    RealFunc out;
    out.impl_ = impl;
    return out;
}

double RealFunc::operator()(double t) const {
    if (!impl_) throw std::logic_error("RealFunc: evaluating an empty function");
    const Impl& im = *impl_;
    if (im.sampled) {
        if (!(t >= im.lo) || !(t <= im.hi)) {
            std::ostringstream os;
            os << "RealFunc '" << im.name << "': t=" << t << " outside sampled range ["
               << im.lo << ", " << im.hi << "]";
            throw std::domain_error(os.str());
        }
        const double lt = std::log(t);
        const double* beg = im.logx.data();
        const double* end = beg + im.logx.size();
        const double* it = std::upper_bound(beg, end, lt);
        Eigen::Index i = std::min<Eigen::Index>(std::max<Eigen::Index>(it - beg, 1),
                                                im.logx.size() - 1);
        const double a = im.logx[i - 1], b = im.logx[i];
        const double w = (b > a) ? (lt - a) / (b - a) : 0.0;
        const double y = (1.0 - w) * im.work[i - 1] + w * im.work[i];
        return im.interp == Interp::loglog ? std::exp(y) : y;
    }
    if (!(t > im.lo) || !(t <= im.hi)) {
        std::ostringstream os;
        os << "RealFunc '" << im.name << "': t=" << t << " outside domain (" << im.lo
           << ", " << im.hi << "]";
        throw std::domain_error(os.str());
    }
    const double y = im.f(t);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "RealFunc '" << im.name << "': non-finite value at t=" << t;
        throw std::domain_error(os.str());
    }
    return y;
}

bool RealFunc::evaluable(double t) const {
    if (!impl_) return false;
    const Impl& im = *impl_;
    return im.sampled ? (t >= im.lo && t <= im.hi) : (t > im.lo && t <= im.hi);
}

double RealFunc::domain_min() const { return impl_ ? impl_->lo : 0.0; }
double RealFunc::domain_max() const {
    return impl_ ? impl_->hi : std::numeric_limits<double>::infinity();
}

const std::string& RealFunc::name() const {
    static const std::string empty;
    return impl_ ? impl_->name : empty;
}

const std::map<std::string, double>& RealFunc::params() const {
    static const std::map<std::string, double> empty;
    return impl_ ? impl_->params : empty;
}

const std::vector<double>& RealFunc::breakpoints() const {
    static const std::vector<double> empty;
    return impl_ ? impl_->breakpoints : empty;
}

bool RealFunc::is_sampled() const { return impl_ && impl_->sampled; }

const Eigen::ArrayXd& RealFunc::sample_points() const {
    static const Eigen::ArrayXd empty;
    return impl_ && impl_->sampled ? impl_->x : empty;
}

std::string RealFunc::describe() const {
    if (!impl_) return "<empty>";
    std::ostringstream os;
    os << impl_->name;
    if (!impl_->params.empty()) {
        os << "(";
        bool first = true;
        for (const auto& [k, v] : impl_->params) {
            if (!first) os << ",";
            os << k << "=" << v;
            first = false;
        }
        os << ")";
    }
    if (impl_->sampled) os << "[sampled n=" << impl_->x.size() << "]";
    return os.str();
}

Eigen::ArrayXd logspace(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("logspace: need 0 < lo < hi");
    if (points_per_decade < 1) throw std::invalid_argument("logspace: bad density");
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, (int)std::lround(decades * points_per_decade) + 1);
    Eigen::ArrayXd g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    g[0] = lo;
    g[n - 1] = hi;
    return g;
}

}  // namespace decaylab
