#ifndef DEGELL_FIELD_HPP
#define DEGELL_FIELD_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace degell {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Value, gradient and Hessian of a scalar quantity at one point.
struct Jet {
    double value = 0.0;
    Vec grad;
    Mat hess;

    static Jet zero(int dim) {
        Jet j;
        j.grad = Vec::Zero(dim);
        j.hess = Mat::Zero(dim, dim);
        return j;
    }
    static Jet constant(int dim, double c) {
        Jet j = zero(dim);
        j.value = c;
        return j;
    }
};

/// Scalar field on R^dim evaluated with analytic derivatives. Transforms
/// propagate the derivatives through the chain rule instead of differencing,
/// so residual checks stay at machine precision.
struct ScalarField {
    int dim = 0;
    std::function<Jet(const Vec&)> jet;

    Jet operator()(const Vec& p) const { return jet(p); }
    double value(const Vec& p) const { return jet(p).value; }
};

/// A point map T: R^d -> R^e with Jacobian and per-component Hessians.
struct MapJet {
    Vec y;                   // T(x)
    Mat jac;                 // e x d
    std::vector<Mat> hess;   // e matrices, each d x d
};

/// Change of variables acting on fields: (pullback u)(x) = m(x) * u(T(x)).
/// `inverse` undoes the point map on the validity domain.
struct FieldMap {
    int dim_in = 0;
    int dim_out = 0;
    std::function<MapJet(const Vec&)> forward;
    std::function<Vec(const Vec&)> inverse;
    std::function<Jet(const Vec&)> multiplier;  // absent means identically 1
    std::function<bool(const Vec&)> valid;      // absent means everywhere
    std::string domain;

    bool is_valid(const Vec& p) const { return !valid || valid(p); }
};

ScalarField pullback(const FieldMap& map, const ScalarField& u);

ScalarField constant_field(int dim, double c);
ScalarField scale_field(const ScalarField& u, double c);
ScalarField add_fields(const ScalarField& u, const ScalarField& v);

/// Field from an analytic expression of one coordinate, e.g. p -> p[axis].
ScalarField coordinate_field(int dim, int axis);

}  // namespace degell

#endif
