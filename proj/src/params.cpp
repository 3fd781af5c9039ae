#include "degell/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace degell {

ProblemParams::ProblemParams(int n, double a, double alpha, bool allow_weak_drift)
    : n_(n), a_(a), alpha_(alpha), weak_drift_(allow_weak_drift) {
    if (n < 1) throw std::invalid_argument("ProblemParams: n must be a positive integer");
    if (!std::isfinite(a) || !std::isfinite(alpha))
        throw std::invalid_argument("ProblemParams: non-finite parameter");
    // a >= 1/2 is enough for the comparison kernels; the classification
    // theorems want a > 1. The weak gate exists for transform-only work and
    // admits the codimension-1 lift boundary case a = 1/2 exactly.
    if (allow_weak_drift ? (a < 0.5) : (a <= 1.0))
        throw std::invalid_argument(allow_weak_drift
                                        ? "ProblemParams: drift constant a must be >= 1/2"
                                        : "ProblemParams: drift constant a must exceed 1");
    if (alpha <= 1.0) throw std::invalid_argument("ProblemParams: alpha must exceed 1");
    if (n + 2.0 * a <= 2.0)
        throw std::invalid_argument("ProblemParams: effective dimension n + 2a must exceed 2");
}

GeneralizedParams::GeneralizedParams(int n, std::vector<double> a_vec, double alpha)
    : n_(n), a_vec_(std::move(a_vec)), alpha_(alpha) {
    if (n < 1) throw std::invalid_argument("GeneralizedParams: n must be a positive integer");
    if (a_vec_.empty()) throw std::invalid_argument("GeneralizedParams: need at least one a_i");
    for (double ai : a_vec_) {
        if (!(ai > 1.0))
            throw std::invalid_argument("GeneralizedParams: every a_i must exceed 1");
    }
    if (alpha <= 1.0) throw std::invalid_argument("GeneralizedParams: alpha must exceed 1");
}

double GeneralizedParams::aggregate_a() const {
    double s = 0.0;
    for (double ai : a_vec_) s += ai;
    return s;
}

double critical_exponent(int n, double a) {
    const double m = n + 2.0 * a;
    if (m <= 2.0)
        throw std::domain_error("critical_exponent: n + 2a must exceed 2");
    return (m + 2.0) / (m - 2.0);
}

double tau(const ProblemParams& p) {
    const double m = p.effective_dimension();
    return m + 2.0 - p.alpha() * (m - 2.0);
}

Criticality classify(const ProblemParams& p) {
    const double gap = p.alpha() - critical_exponent(p.n(), p.a());
    CriticalityLabel label;
    if (std::abs(gap) <= kCriticalTieTol)
        label = CriticalityLabel::Critical;
    else
        label = gap < 0 ? CriticalityLabel::Subcritical : CriticalityLabel::Supercritical;
    return {label, gap};
}

ProblemParams aggregate(const GeneralizedParams& gp) {
    return ProblemParams(gp.n(), gp.aggregate_a(), gp.alpha());
}

std::optional<int> half_integer_multiple(double a) {
    const double k = std::round(2.0 * a);
    if (k >= 1.0 && std::abs(a - k / 2.0) <= 1e-12) return static_cast<int>(k);
    return std::nullopt;
}

}  // namespace degell
