#include "degell/operator_field.hpp"

#include <cmath>
#include <stdexcept>

#include "degell/exact_solutions.hpp"

namespace degell {

namespace {

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

ScalarField rotate_scalar(const ScalarField& c, const Eigen::Matrix2d& R) {
    FieldMap lin;
    lin.dim_in = 2;
    lin.dim_out = 2;
    lin.forward = [R](const Vec& z) {
        MapJet T;
        T.y = R * z;
        T.jac = R;
        T.hess = {Mat::Zero(2, 2), Mat::Zero(2, 2)};
        return T;
    };
    lin.inverse = [R](const Vec& x) -> Vec { return R.transpose() * x; };
    lin.domain = "rotation";
    return pullback(lin, c);
}

ScalarField sin_of_x1(double amplitude, double offset) {
    ScalarField f;
    f.dim = 2;
    f.jet = [amplitude, offset](const Vec& p) {
        Jet j = Jet::zero(2);
        j.value = offset + amplitude * std::sin(p[0]);
        j.grad[0] = amplitude * std::cos(p[0]);
        j.hess(0, 0) = -amplitude * std::sin(p[0]);
        return j;
    };
    return f;
}

}  // namespace

ScalarField poly2_field(std::vector<PolyTerm> terms) {
    ScalarField f;
    f.dim = 2;
    f.jet = [terms](const Vec& p) {
        const double x = p[0], y = p[1];
        Jet j = Jet::zero(2);
        for (const PolyTerm& t : terms) {
            j.value += t.c * ipow(x, t.i) * ipow(y, t.j);
            if (t.i >= 1) j.grad[0] += t.c * t.i * ipow(x, t.i - 1) * ipow(y, t.j);
            if (t.j >= 1) j.grad[1] += t.c * t.j * ipow(x, t.i) * ipow(y, t.j - 1);
            if (t.i >= 2) j.hess(0, 0) += t.c * t.i * (t.i - 1) * ipow(x, t.i - 2) * ipow(y, t.j);
            if (t.j >= 2) j.hess(1, 1) += t.c * t.j * (t.j - 1) * ipow(x, t.i) * ipow(y, t.j - 2);
            if (t.i >= 1 && t.j >= 1) {
                const double m = t.c * t.i * t.j * ipow(x, t.i - 1) * ipow(y, t.j - 1);
                j.hess(0, 1) += m;
                j.hess(1, 0) += m;
            }
        }
        return j;
    };
    return f;
}

OperatorField model_operator(double drift, double alpha) {
    OperatorField op;
    op.a11 = poly2_field({{1.0, 0, 0}});
    op.a12 = poly2_field({});
    op.a22 = poly2_field({{1.0, 0, 1}});  // y
    op.b1 = poly2_field({});
    op.b2 = poly2_field({{drift, 0, 0}});
    op.phi = poly2_field({{1.0, 0, 1}});  // y
    op.f = [alpha](const Vec&, double u) { return signed_power(u, alpha); };
    op.box_lo = {-1.0, -0.25};
    op.box_hi = {1.0, 1.0};
    return op;
}

OperatorField perturbed_model_operator(double drift, double eps, double alpha) {
    OperatorField op = model_operator(drift, alpha);
    op.b2 = sin_of_x1(eps, drift);
    return op;
}

OperatorField rotate_operator(const OperatorField& op, double theta) {
    Eigen::Matrix2d R;
    R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);

    // (R^T a R)_{ij} from the scalar entries, each composed with z -> Rz.
    const ScalarField a11r = rotate_scalar(op.a11, R);
    const ScalarField a12r = rotate_scalar(op.a12, R);
    const ScalarField a22r = rotate_scalar(op.a22, R);
    const ScalarField b1r = rotate_scalar(op.b1, R);
    const ScalarField b2r = rotate_scalar(op.b2, R);

    OperatorField out;
    out.a11 = add_fields(add_fields(scale_field(a11r, R(0, 0) * R(0, 0)),
                                    scale_field(a12r, 2.0 * R(0, 0) * R(1, 0))),
                         scale_field(a22r, R(1, 0) * R(1, 0)));
    out.a22 = add_fields(add_fields(scale_field(a11r, R(0, 1) * R(0, 1)),
                                    scale_field(a12r, 2.0 * R(0, 1) * R(1, 1))),
                         scale_field(a22r, R(1, 1) * R(1, 1)));
    out.a12 = add_fields(
        add_fields(scale_field(a11r, R(0, 0) * R(0, 1)),
                   scale_field(a12r, R(0, 0) * R(1, 1) + R(1, 0) * R(0, 1))),
        scale_field(a22r, R(1, 0) * R(1, 1)));
    out.b1 = add_fields(scale_field(b1r, R(0, 0)), scale_field(b2r, R(1, 0)));
    out.b2 = add_fields(scale_field(b1r, R(0, 1)), scale_field(b2r, R(1, 1)));
    out.phi = rotate_scalar(op.phi, R);
    auto f = op.f;
    out.f = [f, R](const Vec& z, double u) { return f(R * z, u); };

    // Axis-aligned bounding box of the rotated corners.
    Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
    for (int cx = 0; cx < 2; ++cx) {
        for (int cy = 0; cy < 2; ++cy) {
            Eigen::Vector2d corner(cx ? op.box_hi[0] : op.box_lo[0],
                                   cy ? op.box_hi[1] : op.box_lo[1]);
            const Eigen::Vector2d z = R.transpose() * corner;
            lo = lo.cwiseMin(z);
            hi = hi.cwiseMax(z);
        }
    }
    out.box_lo = lo;
    out.box_hi = hi;
    return out;
}

}  // namespace degell
