#include "degell/field.hpp"

#include <stdexcept>

namespace degell {

ScalarField pullback(const FieldMap& map, const ScalarField& u) {
    if (map.dim_out != u.dim)
        throw std::invalid_argument("pullback: map range dimension does not match field");
    ScalarField out;
    out.dim = map.dim_in;
    out.jet = [map, u](const Vec& x) -> Jet {
        if (!map.is_valid(x))
            throw std::domain_error("pullback: point outside map domain (" + map.domain + ")");
        const MapJet T = map.forward(x);
        const Jet uy = u.jet(T.y);
        Jet m = map.multiplier ? map.multiplier(x) : Jet::constant(map.dim_in, 1.0);

        const Vec chained_grad = T.jac.transpose() * uy.grad;  // grad of u(T(x))
        Mat chained_hess = T.jac.transpose() * uy.hess * T.jac;
        for (int k = 0; k < map.dim_out; ++k)
            chained_hess += uy.grad[k] * T.hess[static_cast<size_t>(k)];

        Jet out_jet;
        out_jet.value = m.value * uy.value;
        out_jet.grad = m.grad * uy.value + m.value * chained_grad;
        out_jet.hess = m.hess * uy.value + m.grad * chained_grad.transpose() +
                       chained_grad * m.grad.transpose() + m.value * chained_hess;
        return out_jet;
    };
    return out;
}

ScalarField constant_field(int dim, double c) {
    ScalarField f;
    f.dim = dim;
    f.jet = [dim, c](const Vec&) { return Jet::constant(dim, c); };
    return f;
}

ScalarField scale_field(const ScalarField& u, double c) {
    ScalarField f;
    f.dim = u.dim;
    f.jet = [u, c](const Vec& p) {
        Jet j = u.jet(p);
        j.value *= c;
        j.grad *= c;
        j.hess *= c;
        return j;
    };
    return f;
}

ScalarField add_fields(const ScalarField& u, const ScalarField& v) {
    if (u.dim != v.dim) throw std::invalid_argument("add_fields: dimension mismatch");
    ScalarField f;
    f.dim = u.dim;
    f.jet = [u, v](const Vec& p) {
        Jet a = u.jet(p);
        const Jet b = v.jet(p);
        a.value += b.value;
        a.grad += b.grad;
        a.hess += b.hess;
        return a;
    };
    return f;
}

ScalarField coordinate_field(int dim, int axis) {
    if (axis < 0 || axis >= dim) throw std::invalid_argument("coordinate_field: bad axis");
    ScalarField f;
    f.dim = dim;
    f.jet = [dim, axis](const Vec& p) {
        Jet j = Jet::zero(dim);
        j.value = p[axis];
        j.grad[axis] = 1.0;
        return j;
    };
    return f;
}

}  // namespace degell
