#ifndef DEGELL_EXACT_SOLUTIONS_HPP
#define DEGELL_EXACT_SOLUTIONS_HPP

#include <vector>

#include "degell/field.hpp"
#include "degell/params.hpp"
#include "degell/rng.hpp"

namespace degell {

/// Two-parameter family of critical solutions: concentration scale t >= 0
/// and tangential center x0. t = 0 degenerates to the zero function.
struct BubbleParams {
    double t = 1.0;
    Vec x0;

    BubbleParams(double t_, Vec x0_);
};

struct HalfSpacePoint {
    Vec x;
    double y = 0.0;

    HalfSpacePoint(Vec x_, double y_);
    Vec packed() const;  // (x, y) as one vector
};

/// Leading far-field profile a0/|x|^(n+2a-2) + sum_i a_i x_i/|x|^(n+2a).
struct AsymptoticCoeffs {
    double a0;
    Vec ai;      // n+1 entries
    double order;  // n + 2a

    AsymptoticCoeffs(double a0_, Vec ai_, double order_);
};

// ---- bubble family -------------------------------------------------------

/// u(x,y) = ( t*sqrt((n+2a)(n+2a-2)) / (t^2 + 4y + |x-x0|^2) )^((n+2a-2)/2).
/// Requires alpha critical unless `unchecked`.
double bubble_eval(const ProblemParams& p, const BubbleParams& b, const HalfSpacePoint& pt,
                   bool unchecked = false);

/// Same evaluation with analytic gradient and Hessian over (x, y).
Jet bubble_jet(const ProblemParams& p, const BubbleParams& b, const Vec& xy,
               bool unchecked = false);

ScalarField bubble_field(const ProblemParams& p, const BubbleParams& b, bool unchecked = false);

/// Multi-drift bubble over (x, y_1..y_m); depends on y only through sum y_i.
double bubble_eval_multi(const GeneralizedParams& gp, const BubbleParams& b, const Vec& x,
                         const Vec& ys, bool unchecked = false);
Jet bubble_multi_jet(const GeneralizedParams& gp, const BubbleParams& b, const Vec& xys,
                     bool unchecked = false);
ScalarField bubble_field_multi(const GeneralizedParams& gp, const BubbleParams& b,
                               bool unchecked = false);

// ---- residuals -----------------------------------------------------------

/// y*u_yy + a*u_y + Lap_x(u) + u^alpha at (x,y). Negative u with non-integer
/// alpha is a domain error.
double residual_001(const ScalarField& u, const ProblemParams& p, const Vec& xy);

/// Lap(ubar) + (2a-1)/s * d_s(ubar) + ubar^alpha in (x, s) coordinates,
/// s = x_{n+1}. On the symmetry plane s = 0 the drift quotient is replaced
/// by its limit, turning the s-part into 2a * d_ss(ubar).
double residual_halfspace(const ScalarField& ubar, const ProblemParams& p, const Vec& xs);

/// Multi-drift residual sum_i y_i u_{y_i y_i} + sum_i a_i u_{y_i} + Lap_x u + u^alpha.
double residual_003(const ScalarField& u, const GeneralizedParams& gp, const Vec& xys);

// ---- comparison kernel ---------------------------------------------------

struct KernelEval {
    double value;
    double residual;  // of Lap + (2a-1)/s * d_s applied to the kernel
};

/// h(x) = (lambda0 - x_1) / |x - lambda0*e_1|^(n+2a), annihilated by the
/// drifted Laplacian away from its singular point.
KernelEval kernel_h_eval(const ProblemParams& p, double lambda0, const Vec& point);
ScalarField kernel_h_field(const ProblemParams& p, double lambda0);

// ---- barrier functions ---------------------------------------------------

enum class BarrierKind { Lemma21, Lemma22, Lemma25 };

struct BarrierShape {
    double beta = 0.0;  // Lemma21/22 steepness
    double r = 0.25;    // Lemma21 cap radius (< 1/2)
    double m1 = 0.0;    // Lemma25 boundary level
    double s = 0.5;     // Lemma25 inner radius
};

struct BarrierEval {
    double value;
    double op_value;   // drifted Laplacian applied to the barrier
    bool admissible;   // operator sign required by the kind's comparison step
};

BarrierEval barrier_eval(BarrierKind kind, const BarrierShape& shape, const ProblemParams& p,
                         const Vec& point);

/// -(m1+1) s^(n+2a-2) / (1 - s^(n+2a-2)), the level matching constant.
double lemma25_level(double m1, double s, double n2a);

/// Doubles beta from `beta0` until the barrier is admissible at every probe;
/// gives up past 2^20.
double barrier_beta_search(BarrierKind kind, BarrierShape shape, const ProblemParams& p,
                           const std::vector<Vec>& probes, double beta0 = 1.0);

// ---- far-field asymptotics ------------------------------------------------

double asymptotic_eval(const AsymptoticCoeffs& c, const Vec& point);

struct AsymptoticFit {
    AsymptoticCoeffs coeffs;
    double residual_rms;  // in the r^(n+2a-2)-scaled variable
    int rows;
};

/// Least squares for (a0, a_i) over sampled directions at the given radii.
/// Rows are scaled by r^(n+2a-2) so every radius contributes at unit size.
AsymptoticFit kelvin_asymptotic_fit(const std::function<double(const Vec&)>& v,
                                    const ProblemParams& p, const std::vector<double>& radii,
                                    int directions_per_radius, Rng& rng);

/// u^alpha for u >= 0; integral alpha extends to u < 0, otherwise domain error.
double signed_power(double u, double alpha);

}  // namespace degell

#endif
