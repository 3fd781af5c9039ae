#include "degell/transforms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "degell/rng.hpp"

namespace degell {

FieldMap cylindrical_lift_map(int n) {
    const int d = n + 1;
    FieldMap m;
    m.dim_in = d;
    m.dim_out = d;
    m.forward = [d, n](const Vec& xs) {
        MapJet T;
        T.y = xs;
        T.y[n] = xs[n] * xs[n] / 4.0;
        T.jac = Mat::Identity(d, d);
        T.jac(n, n) = xs[n] / 2.0;
        T.hess.assign(static_cast<size_t>(d), Mat::Zero(d, d));
        T.hess[static_cast<size_t>(n)](n, n) = 0.5;
        return T;
    };
    m.inverse = [n](const Vec& xy) {
        Vec xs = xy;
        xs[n] = 2.0 * std::sqrt(std::max(xy[n], 0.0));
        return xs;
    };
    m.domain = "half-space lift s = 2 sqrt(y)";
    return m;
}

ScalarField cylindrical_lift(const ScalarField& u) {
    return pullback(cylindrical_lift_map(u.dim - 1), u);
}

ScalarField even_reflect(const ScalarField& ubar, const Vec& x_lo, const Vec& x_hi, int samples,
                         double tol) {
    const int d = ubar.dim;
    const int n = d - 1;
    if (x_lo.size() != n || x_hi.size() != n)
        throw std::invalid_argument("even_reflect: sample box must cover the tangential slab");

    double worst = 0.0;
    Vec worst_at;
    for (int i = 0; i < samples; ++i) {
        Vec p(d);
        if (n > 0) p.head(n) = halton_in_box(x_lo, x_hi, static_cast<std::uint64_t>(i));
        p[n] = 0.0;
        const double ds = ubar.jet(p).grad[n];
        if (std::abs(ds) > std::abs(worst)) {
            worst = ds;
            worst_at = p;
        }
    }
    if (std::abs(worst) > tol) {
        std::ostringstream msg;
        msg << "even_reflect: d_s(ubar) = " << worst << " at (";
        for (int i = 0; i < d; ++i) msg << worst_at[i] << (i + 1 < d ? ", " : ")");
        msg << " violates the symmetry precondition";
        throw std::invalid_argument(msg.str());
    }

    ScalarField out;
    out.dim = d;
    out.jet = [ubar, n](const Vec& p) -> Jet {
        if (p[n] >= 0.0) return ubar.jet(p);
        Vec q = p;
        q[n] = -p[n];
        Jet j = ubar.jet(q);
        j.grad[n] = -j.grad[n];
        for (int i = 0; i < n; ++i) {
            j.hess(i, n) = -j.hess(i, n);
            j.hess(n, i) = -j.hess(n, i);
        }
        return j;
    };
    return out;
}

FieldMap dimension_lift_map(const ProblemParams& p, int k) {
    if (k < 1) throw std::invalid_argument("dimension_lift: k must be >= 1");
    const auto k_detected = half_integer_multiple(p.a());
    if (!k_detected || *k_detected != k)
        throw std::invalid_argument("dimension_lift: requires a = k/2 to 1e-12");
    const int n = p.n();
    const int din = n + k;
    const int dout = n + 1;

    FieldMap m;
    m.dim_in = din;
    m.dim_out = dout;
    m.forward = [n, k, din, dout](const Vec& xxi) {
        const Vec xi = xxi.tail(k);
        const double r = xi.norm();
        if (r <= 0.0) throw std::domain_error("dimension_lift: |xi| = 0");
        MapJet T;
        T.y.resize(dout);
        T.y.head(n) = xxi.head(n);
        T.y[n] = r;
        T.jac = Mat::Zero(dout, din);
        T.jac.topLeftCorner(n, n).setIdentity();
        for (int j = 0; j < k; ++j) T.jac(n, n + j) = xi[j] / r;
        T.hess.assign(static_cast<size_t>(dout), Mat::Zero(din, din));
        Mat& H = T.hess[static_cast<size_t>(n)];
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                H(n + i, n + j) = (i == j ? 1.0 / r : 0.0) - xi[i] * xi[j] / (r * r * r);
        return T;
    };
    m.inverse = [n, k, din](const Vec& xs) {
        Vec xxi = Vec::Zero(din);
        xxi.head(n) = xs.head(n);
        xxi[n] = xs[n];  // section xi = s * e_1
        return xxi;
    };
    m.valid = [n, k](const Vec& xxi) { return xxi.tail(k).norm() > 0.0; };
    m.domain = "xi != 0";
    return m;
}

ScalarField dimension_lift(const ProblemParams& p, const ScalarField& ubar, int k) {
    return pullback(dimension_lift_map(p, k), ubar);
}

FieldMap kelvin_map(const ProblemParams& p) {
    const int d = p.n() + 1;
    const double N = p.effective_dimension();
    FieldMap m;
    m.dim_in = d;
    m.dim_out = d;
    m.forward = [d](const Vec& x) {
        const double r2 = x.squaredNorm();
        if (r2 <= 0.0) throw std::domain_error("kelvin: evaluation at the origin");
        MapJet T;
        T.y = x / r2;
        T.jac = Mat::Identity(d, d) / r2 - 2.0 / (r2 * r2) * (x * x.transpose());
        T.hess.assign(static_cast<size_t>(d), Mat());
        for (int k = 0; k < d; ++k) {
            Mat H = 8.0 * x[k] / (r2 * r2 * r2) * (x * x.transpose());
            H -= 2.0 * x[k] / (r2 * r2) * Mat::Identity(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    if (i == k) H(i, j) += -2.0 * x[j] / (r2 * r2);
                    if (j == k) H(i, j) += -2.0 * x[i] / (r2 * r2);
                }
            T.hess[static_cast<size_t>(k)] = H;
        }
        return T;
    };
    m.inverse = [](const Vec& x) -> Vec { return x / x.squaredNorm(); };
    m.multiplier = [d, N](const Vec& x) {
        const double r2 = x.squaredNorm();
        const double q = 2.0 - N;  // |x|^q
        Jet j;
        j.value = std::pow(r2, q / 2.0);
        j.grad = q * std::pow(r2, q / 2.0 - 1.0) * x;
        j.hess = q * std::pow(r2, q / 2.0 - 1.0) * Mat::Identity(d, d) +
                 q * (q - 2.0) * std::pow(r2, q / 2.0 - 2.0) * (x * x.transpose());
        return j;
    };
    m.valid = [](const Vec& x) { return x.squaredNorm() > 0.0; };
    m.domain = "x != 0";
    return m;
}

ScalarField kelvin(const ProblemParams& p, const ScalarField& ubar) {
    if (ubar.dim != p.n() + 1) throw std::invalid_argument("kelvin: field dimension != n+1");
    return pullback(kelvin_map(p), ubar);
}

Vec reflect_plane(const Vec& point, double lambda, int axis) {
    if (axis < 0 || axis >= point.size()) throw std::invalid_argument("reflect_plane: bad axis");
    Vec q = point;
    q[axis] = 2.0 * lambda - point[axis];
    return q;
}

BlowupFrame::BlowupFrame(Vec base_, double magnitude_, double scale_, double alpha_)
    : base(std::move(base_)), magnitude(magnitude_), scale(scale_), alpha(alpha_) {
    if (!(magnitude > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("BlowupFrame: magnitude and scale must be positive");
    if (!(alpha > 1.0)) throw std::invalid_argument("BlowupFrame: alpha must exceed 1");
    const double norm = std::pow(scale, 2.0 / (alpha - 1.0)) * magnitude;
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("BlowupFrame: mu^(2/(alpha-1)) * M must equal 1");
}

BlowupFrame BlowupFrame::from_magnitude(Vec base, double magnitude, double alpha) {
    const double mu = std::pow(magnitude, -(alpha - 1.0) / 2.0);
    return BlowupFrame(std::move(base), magnitude, mu, alpha);
}

FieldMap blowup_case1_map(const BlowupFrame& frame) {
    const int d = static_cast<int>(frame.base.size());
    const double mu = frame.scale;
    const Vec base = frame.base;
    const double amp = std::pow(mu, 2.0 / (frame.alpha - 1.0));
    FieldMap m;
    m.dim_in = d;
    m.dim_out = d;
    m.forward = [d, mu, base](const Vec& y) {
        MapJet T;
        T.y = base + mu * y;
        T.jac = mu * Mat::Identity(d, d);
        T.hess.assign(static_cast<size_t>(d), Mat::Zero(d, d));
        return T;
    };
    m.inverse = [mu, base](const Vec& x) -> Vec { return (x - base) / mu; };
    m.multiplier = [d, amp](const Vec&) { return Jet::constant(d, amp); };
    m.domain = "rescaling frame";
    return m;
}

ScalarField blowup_case1(const ScalarField& u, const BlowupFrame& frame) {
    return pullback(blowup_case1_map(frame), u);
}

Eigen::Vector2d case2_scale(const Eigen::Vector2d& y, const Eigen::Vector2d& yk, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("case2_scale: mu must be positive");
    return {(y[0] - yk[0]) / mu, (y[1] - yk[1]) / (mu * mu)};
}

Eigen::Vector2d case2_unscale(const Eigen::Vector2d& p, const Eigen::Vector2d& yk, double mu) {
    return {yk[0] + mu * p[0], yk[1] + mu * mu * p[1]};
}

double sqrt_substitution(double p2, double ck) {
    if (ck < 0.0) throw std::domain_error("sqrt_substitution: ck must be >= 0");
    const double shifted = p2 + ck;
    if (shifted < 0.0) throw std::domain_error("sqrt_substitution: p2 + ck must be >= 0");
    return 2.0 * std::sqrt(shifted) - 2.0 * std::sqrt(ck);
}

double sqrt_substitution_inverse(double q2, double ck) {
    const double root = q2 / 2.0 + std::sqrt(ck);
    if (root < 0.0) throw std::domain_error("sqrt_substitution_inverse: q2 below -2 sqrt(ck)");
    return root * root - ck;
}

FlattenedCoeffs boundary_flatten(const OperatorField& op, const Eigen::Vector2d& x) {
    const Jet phi = op.phi.jet(x);
    if (std::abs(phi.grad[1]) < 1e-10)
        throw std::domain_error("boundary_flatten: d2(phi) vanishes, coordinates degenerate");
    const double p1 = phi.grad[0], p2 = phi.grad[1];
    const double a11 = op.a11.jet(x).value;
    const double a12 = op.a12.jet(x).value;
    const double a22 = op.a22.jet(x).value;
    const double b1 = op.b1.jet(x).value;
    const double b2 = op.b2.jet(x).value;

    FlattenedCoeffs out;
    out.y = {x[0], phi.value};
    out.a22 = a11 * p1 * p1 + 2.0 * a12 * p1 * p2 + a22 * p2 * p2;
    out.a11 = a11;
    out.a12 = a11 * p1 + a12 * p2;
    out.b1 = b1;
    out.b2 = b1 * p1 + b2 * p2 + a11 * phi.hess(0, 0) + 2.0 * a12 * phi.hess(0, 1) +
             a22 * phi.hess(1, 1);
    return out;
}

}  // namespace degell
