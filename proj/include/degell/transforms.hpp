#ifndef DEGELL_TRANSFORMS_HPP
#define DEGELL_TRANSFORMS_HPP

#include "degell/field.hpp"
#include "degell/operator_field.hpp"
#include "degell/params.hpp"

namespace degell {

// ---- cylindrical lift: y = s^2/4 ------------------------------------------

FieldMap cylindrical_lift_map(int n);

/// ubar(x, s) = u(x, s^2/4). Even in s, so the lift extends across s = 0.
ScalarField cylindrical_lift(const ScalarField& u);

/// Even extension of a field given for s >= 0 to all of R^{n+1}. Checks
/// d_s(ubar)(x', 0) = 0 at Halton samples of the tangential box up front and
/// rejects fields that fail, reporting the worst offender.
ScalarField even_reflect(const ScalarField& ubar, const Vec& x_lo, const Vec& x_hi,
                         int samples = 64, double tol = 1e-8);

// ---- codimension lift: s = |xi| --------------------------------------------

/// Requires a = k/2 (relaxed drift gate). v(x, xi) = ubar(x, |xi|).
FieldMap dimension_lift_map(const ProblemParams& p, int k);
ScalarField dimension_lift(const ProblemParams& p, const ScalarField& ubar, int k);

// ---- Kelvin transform ------------------------------------------------------

/// v(x) = |x|^(2-n-2a) ubar(x/|x|^2); an involution in this weight.
FieldMap kelvin_map(const ProblemParams& p);
ScalarField kelvin(const ProblemParams& p, const ScalarField& ubar);

// ---- plane reflection ------------------------------------------------------

Vec reflect_plane(const Vec& point, double lambda, int axis = 0);

// ---- interior blow-up scaling ----------------------------------------------

/// Frame of one rescaling step: v(y) = mu^(2/(alpha-1)) u(base + mu y),
/// with mu^(2/(alpha-1)) * magnitude = 1.
struct BlowupFrame {
    Vec base;
    double magnitude;  // M_k
    double scale;      // mu_k
    double alpha;

    BlowupFrame(Vec base_, double magnitude_, double scale_, double alpha_);

    /// Derives the scale from the magnitude: mu = M^(-(alpha-1)/2).
    static BlowupFrame from_magnitude(Vec base, double magnitude, double alpha);
};

FieldMap blowup_case1_map(const BlowupFrame& frame);
ScalarField blowup_case1(const ScalarField& u, const BlowupFrame& frame);

// ---- boundary blow-up coordinates ------------------------------------------

/// p1 = (y1 - yk1)/mu, p2 = (y2 - yk2)/mu^2.
Eigen::Vector2d case2_scale(const Eigen::Vector2d& y, const Eigen::Vector2d& yk, double mu);
Eigen::Vector2d case2_unscale(const Eigen::Vector2d& p, const Eigen::Vector2d& yk, double mu);

/// q2 = 2 sqrt(p2 + ck) - 2 sqrt(ck) with ck = yk2 / mu^2; needs p2 + ck >= 0.
double sqrt_substitution(double p2, double ck);
double sqrt_substitution_inverse(double q2, double ck);

// ---- boundary flattening ---------------------------------------------------

struct FlattenedCoeffs {
    Eigen::Vector2d y;  // (x1, phi(x))
    double a22, a11, a12;
    double b1, b2;
};

/// Straightens {phi = 0} via y1 = x1, y2 = phi(x); valid while d2(phi) != 0.
FlattenedCoeffs boundary_flatten(const OperatorField& op, const Eigen::Vector2d& x);

}  // namespace degell

#endif
