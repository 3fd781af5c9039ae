#ifndef DEGELL_OPERATOR_FIELD_HPP
#define DEGELL_OPERATOR_FIELD_HPP

#include <array>
#include <vector>

#include "degell/field.hpp"

namespace degell {

/// Planar equation a^{ij} d_ij u + b^i d_i u + f(x, u) = 0 with a defining
/// function phi for the degenerate boundary {phi = 0}. Coefficients carry
/// analytic jets (the built-in families are polynomial).
struct OperatorField {
    ScalarField a11, a12, a22;
    ScalarField b1, b2;
    ScalarField phi;
    std::function<double(const Vec&, double)> f;
    Eigen::Vector2d box_lo, box_hi;
};

struct PolyTerm {
    double c;
    int i, j;  // c * x^i * y^j
};

ScalarField poly2_field(std::vector<PolyTerm> terms);

/// Model family for the half-plane problem: a11 = 1, a22 = y, b = (0, drift),
/// f = u^alpha, phi = y on [-1,1] x [-1/4, 1].
OperatorField model_operator(double drift, double alpha);

/// Model with drift perturbed to drift + eps*sin(x1).
OperatorField perturbed_model_operator(double drift, double eps, double alpha);

/// The same equation written in rotated coordinates z with x = R(theta) z:
/// a' = R^T a R composed with the rotation, b' = R^T b, phi' = phi o R.
OperatorField rotate_operator(const OperatorField& op, double theta);

}  // namespace degell

#endif
