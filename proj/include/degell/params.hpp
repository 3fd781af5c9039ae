#ifndef DEGELL_PARAMS_HPP
#define DEGELL_PARAMS_HPP

#include <optional>
#include <vector>

namespace degell {

/// Parameters of the half-space problem y*u_yy + a*u_y + Lap_x(u) + u^alpha = 0:
/// n tangential dimensions, drift constant a, nonlinearity exponent alpha.
/// Construction enforces n >= 1, alpha > 1 and a > 1 (the standing hypotheses);
/// `allow_weak_drift` relaxes the drift gate to a >= 1/2 for transform-only
/// use, where the comparison kernels remain valid. n + 2a > 2 always holds.
class ProblemParams {
public:
    ProblemParams(int n, double a, double alpha, bool allow_weak_drift = false);

    int n() const { return n_; }
    double a() const { return a_; }
    double alpha() const { return alpha_; }
    bool weak_drift_allowed() const { return weak_drift_; }

    /// n + 2a, the dimension the equation effectively lives in.
    double effective_dimension() const { return n_ + 2.0 * a_; }

    ProblemParams with_alpha(double alpha) const {
        return ProblemParams(n_, a_, alpha, weak_drift_);
    }

private:
    int n_;
    double a_;
    double alpha_;
    bool weak_drift_;
};

/// Parameters of the multi-drift variant
/// sum_i y_i u_{y_i y_i} + sum_i a_i u_{y_i} + Lap_x(u) + u^alpha = 0.
class GeneralizedParams {
public:
    GeneralizedParams(int n, std::vector<double> a_vec, double alpha);

    int n() const { return n_; }
    int m() const { return static_cast<int>(a_vec_.size()); }
    const std::vector<double>& a_vec() const { return a_vec_; }
    double alpha() const { return alpha_; }
    double aggregate_a() const;

private:
    int n_;
    std::vector<double> a_vec_;
    double alpha_;
};

enum class CriticalityLabel { Subcritical, Critical, Supercritical };

struct Criticality {
    CriticalityLabel label;
    double gap;  // alpha - alpha_critical
};

inline const char* to_string(CriticalityLabel c) {
    switch (c) {
        case CriticalityLabel::Subcritical: return "subcritical";
        case CriticalityLabel::Critical: return "critical";
        case CriticalityLabel::Supercritical: return "supercritical";
    }
    return "?";
}

/// (n+2a+2)/(n+2a-2). Throws std::domain_error if n + 2a <= 2.
double critical_exponent(int n, double a);

/// n+2a+2 - alpha*(n+2a-2); zero exactly at the critical exponent.
double tau(const ProblemParams& p);

/// Labels alpha against the critical exponent with a 1e-12 absolute tie band.
Criticality classify(const ProblemParams& p);

/// Collapses the multi-drift problem to the scalar one with a = sum a_i.
ProblemParams aggregate(const GeneralizedParams& gp);

/// k with |a - k/2| <= 1e-12, if any; gates the codimension-k lift.
std::optional<int> half_integer_multiple(double a);

inline constexpr double kCriticalTieTol = 1e-12;

}  // namespace degell

#endif
