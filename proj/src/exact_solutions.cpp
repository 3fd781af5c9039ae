#include "degell/exact_solutions.hpp"

#include <cmath>
#include <stdexcept>

namespace degell {

namespace {

void require_critical(const ProblemParams& p, bool unchecked, const char* who) {
    if (unchecked) return;
    if (classify(p).label != CriticalityLabel::Critical)
        throw std::invalid_argument(std::string(who) +
                                    ": alpha is not critical (pass unchecked to override)");
}

}  // namespace

BubbleParams::BubbleParams(double t_, Vec x0_) : t(t_), x0(std::move(x0_)) {
    if (!(t >= 0.0)) throw std::domain_error("BubbleParams: t must be >= 0");
}

HalfSpacePoint::HalfSpacePoint(Vec x_, double y_) : x(std::move(x_)), y(y_) {
    if (!(y >= 0.0)) throw std::domain_error("HalfSpacePoint: y must be >= 0");
}

Vec HalfSpacePoint::packed() const {
    Vec p(x.size() + 1);
    p.head(x.size()) = x;
    p[x.size()] = y;
    return p;
}

AsymptoticCoeffs::AsymptoticCoeffs(double a0_, Vec ai_, double order_)
    : a0(a0_), ai(std::move(ai_)), order(order_) {
    if (!(a0 > 0.0)) throw std::domain_error("AsymptoticCoeffs: leading coefficient must be > 0");
}

double signed_power(double u, double alpha) {
    if (u >= 0.0) return std::pow(u, alpha);
    const double r = std::round(alpha);
    if (std::abs(alpha - r) <= 1e-12) return std::pow(u, r);
    throw std::domain_error("signed_power: negative base with non-integer exponent");
}

// ---- bubble ---------------------------------------------------------------

Jet bubble_jet(const ProblemParams& p, const BubbleParams& b, const Vec& xy, bool unchecked) {
    require_critical(p, unchecked, "bubble_jet");
    const int n = p.n();
    if (xy.size() != n + 1) throw std::invalid_argument("bubble_jet: point size != n+1");
    if (b.x0.size() != n) throw std::invalid_argument("bubble_jet: center size != n");

    const int d = n + 1;
    if (b.t == 0.0) return Jet::zero(d);

    const double m = p.effective_dimension();           // n + 2a
    const double pw = (m - 2.0) / 2.0;                  // exponent
    const double numer = b.t * std::sqrt(m * (m - 2.0));
    const double K = std::pow(numer, pw);

    const Vec dx = xy.head(n) - b.x0;
    const double y = xy[n];
    const double D = b.t * b.t + 4.0 * y + dx.squaredNorm();

    Vec gD(d);
    gD.head(n) = 2.0 * dx;
    gD[n] = 4.0;
    Mat hD = Mat::Zero(d, d);
    hD.topLeftCorner(n, n) = 2.0 * Mat::Identity(n, n);

    const double Dmp = std::pow(D, -pw);
    Jet j;
    j.value = K * Dmp;
    j.grad = -pw * K * Dmp / D * gD;
    j.hess = pw * (pw + 1.0) * K * Dmp / (D * D) * (gD * gD.transpose()) -
             pw * K * Dmp / D * hD;
    return j;
}

double bubble_eval(const ProblemParams& p, const BubbleParams& b, const HalfSpacePoint& pt,
                   bool unchecked) {
    return bubble_jet(p, b, pt.packed(), unchecked).value;
}

ScalarField bubble_field(const ProblemParams& p, const BubbleParams& b, bool unchecked) {
    require_critical(p, unchecked, "bubble_field");
    ScalarField f;
    f.dim = p.n() + 1;
    f.jet = [p, b](const Vec& xy) { return bubble_jet(p, b, xy, true); };
    return f;
}

Jet bubble_multi_jet(const GeneralizedParams& gp, const BubbleParams& b, const Vec& xys,
                     bool unchecked) {
    const int n = gp.n();
    const int m = gp.m();
    if (xys.size() != n + m) throw std::invalid_argument("bubble_multi_jet: point size != n+m");
    for (int i = 0; i < m; ++i)
        if (xys[n + i] < 0.0) throw std::domain_error("bubble_multi_jet: y_i must be >= 0");

    const ProblemParams agg = aggregate(gp);
    Vec xy(n + 1);
    xy.head(n) = xys.head(n);
    xy[n] = xys.tail(m).sum();
    const Jet base = bubble_jet(agg, b, xy, unchecked);

    // Chain through the linear collapse (x, y_1..y_m) -> (x, sum y_i).
    const int d = n + m;
    Jet j = Jet::zero(d);
    j.value = base.value;
    j.grad.head(n) = base.grad.head(n);
    for (int i = 0; i < m; ++i) j.grad[n + i] = base.grad[n];
    j.hess.topLeftCorner(n, n) = base.hess.topLeftCorner(n, n);
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < n; ++k) {
            j.hess(k, n + i) = base.hess(k, n);
            j.hess(n + i, k) = base.hess(n, k);
        }
        for (int l = 0; l < m; ++l) j.hess(n + i, n + l) = base.hess(n, n);
    }
    return j;
}

double bubble_eval_multi(const GeneralizedParams& gp, const BubbleParams& b, const Vec& x,
                         const Vec& ys, bool unchecked) {
    Vec p(x.size() + ys.size());
    p.head(x.size()) = x;
    p.tail(ys.size()) = ys;
    return bubble_multi_jet(gp, b, p, unchecked).value;
}

ScalarField bubble_field_multi(const GeneralizedParams& gp, const BubbleParams& b,
                               bool unchecked) {
    if (!unchecked) {
        const ProblemParams agg = aggregate(gp);
        if (classify(agg).label != CriticalityLabel::Critical)
            throw std::invalid_argument("bubble_field_multi: alpha is not critical");
    }
    ScalarField f;
    f.dim = gp.n() + gp.m();
    f.jet = [gp, b](const Vec& p) { return bubble_multi_jet(gp, b, p, true); };
    return f;
}

// ---- residuals -------------------------------------------------------------

double residual_001(const ScalarField& u, const ProblemParams& p, const Vec& xy) {
    const int n = p.n();
    if (xy.size() != n + 1) throw std::invalid_argument("residual_001: point size != n+1");
    if (xy[n] < 0.0) throw std::domain_error("residual_001: y must be >= 0");
    const Jet j = u.jet(xy);
    double lap_x = 0.0;
    for (int i = 0; i < n; ++i) lap_x += j.hess(i, i);
    return xy[n] * j.hess(n, n) + p.a() * j.grad[n] + lap_x + signed_power(j.value, p.alpha());
}

double residual_halfspace(const ScalarField& ubar, const ProblemParams& p, const Vec& xs) {
    const int n = p.n();
    if (xs.size() != n + 1) throw std::invalid_argument("residual_halfspace: point size != n+1");
    const double s = xs[n];
    const Jet j = ubar.jet(xs);
    double lap_x = 0.0;
    for (int i = 0; i < n; ++i) lap_x += j.hess(i, i);
    const double nl = signed_power(j.value, p.alpha());
    const double switch_tol = 1e-10 * (1.0 + xs.norm());
    if (std::abs(s) <= switch_tol) {
        // d_s ubar(x,0) = 0 for even C^2 fields, so (2a-1)/s * d_s -> (2a-1) d_ss.
        return lap_x + 2.0 * p.a() * j.hess(n, n) + nl;
    }
    return lap_x + j.hess(n, n) + (2.0 * p.a() - 1.0) / s * j.grad[n] + nl;
}

double residual_003(const ScalarField& u, const GeneralizedParams& gp, const Vec& xys) {
    const int n = gp.n();
    const int m = gp.m();
    if (xys.size() != n + m) throw std::invalid_argument("residual_003: point size != n+m");
    const Jet j = u.jet(xys);
    double r = 0.0;
    for (int i = 0; i < n; ++i) r += j.hess(i, i);
    for (int i = 0; i < m; ++i) {
        if (xys[n + i] < 0.0) throw std::domain_error("residual_003: y_i must be >= 0");
        r += xys[n + i] * j.hess(n + i, n + i) + gp.a_vec()[static_cast<size_t>(i)] * j.grad[n + i];
    }
    return r + signed_power(j.value, gp.alpha());
}

// ---- comparison kernel -----------------------------------------------------

ScalarField kernel_h_field(const ProblemParams& p, double lambda0) {
    const int d = p.n() + 1;
    const double N = p.effective_dimension();  // decay power
    ScalarField f;
    f.dim = d;
    f.jet = [d, N, lambda0](const Vec& x) -> Jet {
        Vec z = x;
        z[0] -= lambda0;
        const double r2 = z.squaredNorm();
        if (r2 <= 0.0) throw std::domain_error("kernel_h: evaluation at the singular point");
        const double r = std::sqrt(r2);
        // h = f*g with f = -z_1 and g = r^-N.
        const double g = std::pow(r, -N);
        const Vec gg = -N * g / r2 * z;
        const Mat gh = -N * g / r2 * Mat::Identity(d, d) +
                       N * (N + 2.0) * g / (r2 * r2) * (z * z.transpose());
        Vec gf = Vec::Zero(d);
        gf[0] = -1.0;
        Jet j;
        j.value = -z[0] * g;
        j.grad = g * gf - z[0] * gg;
        j.hess = gf * gg.transpose() + gg * gf.transpose() - z[0] * gh;
        return j;
    };
    return f;
}

KernelEval kernel_h_eval(const ProblemParams& p, double lambda0, const Vec& point) {
    const int n = p.n();
    if (point.size() != n + 1) throw std::invalid_argument("kernel_h_eval: point size != n+1");
    const ScalarField h = kernel_h_field(p, lambda0);
    const Jet j = h.jet(point);
    const double s = point[n];
    double lap = j.hess.trace();
    double drift;
    const double switch_tol = 1e-10 * (1.0 + point.norm());
    if (std::abs(s) <= switch_tol) {
        // d_s h vanishes on s = 0; use the limit form as in residual_halfspace.
        drift = (2.0 * p.a() - 1.0) * j.hess(n, n);
    } else {
        drift = (2.0 * p.a() - 1.0) / s * j.grad[n];
    }
    return {j.value, lap + drift};
}

// ---- barriers --------------------------------------------------------------

double lemma25_level(double m1, double s, double n2a) {
    const double sp = std::pow(s, n2a - 2.0);
    return -(m1 + 1.0) * sp / (1.0 - sp);
}

BarrierEval barrier_eval(BarrierKind kind, const BarrierShape& shape, const ProblemParams& p,
                         const Vec& point) {
    const int d = p.n() + 1;
    if (point.size() != d) throw std::invalid_argument("barrier_eval: point size != n+1");
    const double drift_coef = 2.0 * p.a() - 1.0;
    const double s_coord = point[d - 1];
    const double slack = 1e-12;

    switch (kind) {
        case BarrierKind::Lemma21: {
            if (!(shape.r > 0.0 && shape.r < 0.5))
                throw std::invalid_argument("barrier_eval: Lemma21 needs 0 < r < 1/2");
            Vec zp = point;
            zp[d - 1] -= shape.r;  // center P = (0', r)
            const double dist = zp.norm();
            if (dist < shape.r / 2.0 - slack || dist > shape.r + slack)
                throw std::domain_error("barrier_eval: point outside the Lemma21 annulus");
            if (!(s_coord > 0.0))
                throw std::domain_error("barrier_eval: Lemma21 drift needs x_{n+1} > 0");
            const double rho = zp.squaredNorm() - shape.r * shape.r;
            const double e = std::exp(-shape.beta * rho);
            const double value = 1.0 - e;
            // L(h) = e^{-b rho} (b*Lap(rho) - b^2 |grad rho|^2 + drift/s * b * d_s rho)
            const double lap_rho = 2.0 * d;
            const double grad_rho2 = 4.0 * zp.squaredNorm();
            const double ds_rho = 2.0 * (s_coord - shape.r);
            const double op = e * (shape.beta * lap_rho - shape.beta * shape.beta * grad_rho2 +
                                   drift_coef / s_coord * shape.beta * ds_rho);
            return {value, op, op < 0.0};
        }
        case BarrierKind::Lemma22: {
            const double r = point.norm();
            if (r < 0.5 - slack || r > 1.0 + slack)
                throw std::domain_error("barrier_eval: point outside B_1 \\ B_{1/2}");
            const double e = std::exp(-shape.beta * r * r);
            const double value = e - std::exp(-shape.beta);
            // Drift quotient is regular: d_s e^{-b|x|^2} carries an s factor.
            const double op =
                e * (4.0 * shape.beta * shape.beta * r * r - 2.0 * shape.beta * d -
                     2.0 * shape.beta * drift_coef);
            return {value, op, op > 0.0};
        }
        case BarrierKind::Lemma25: {
            const double r = point.norm();
            if (!(shape.s > 0.0 && shape.s < 1.0))
                throw std::invalid_argument("barrier_eval: Lemma25 needs 0 < s < 1");
            if (r < shape.s - slack || r > 1.0 + slack)
                throw std::domain_error("barrier_eval: point outside the Lemma25 annulus");
            const double N = p.effective_dimension();
            const double l = lemma25_level(shape.m1, shape.s, N);
            const double q = N - 2.0;
            const double value = shape.m1 + l * (std::pow(r, -q) - 1.0);
            // Radial harmonic for the drifted Laplacian; evaluate the residual anyway.
            const double fr = -q * std::pow(r, -q - 1.0);
            const double frr = q * (q + 1.0) * std::pow(r, -q - 2.0);
            const double op = l * (frr + (d - 1.0) / r * fr + drift_coef / r * fr);
            return {value, op, std::abs(op) <= 1e-9 * (1.0 + std::abs(l) * std::pow(r, -q - 2.0))};
        }
    }
    throw std::logic_error("barrier_eval: unknown kind");
}

double barrier_beta_search(BarrierKind kind, BarrierShape shape, const ProblemParams& p,
                           const std::vector<Vec>& probes, double beta0) {
    if (kind == BarrierKind::Lemma25) return 0.0;  // no steepness parameter
    double beta = beta0;
    const double cap = std::pow(2.0, 20);
    while (beta <= cap) {
        shape.beta = beta;
        bool all_ok = true;
        for (const Vec& q : probes) {
            if (!barrier_eval(kind, shape, p, q).admissible) {
                all_ok = false;
                break;
            }
        }
        if (all_ok) return beta;
        beta *= 2.0;
    }
    throw std::runtime_error("barrier_beta_search: no admissible beta below 2^20");
}

// ---- asymptotics -----------------------------------------------------------

double asymptotic_eval(const AsymptoticCoeffs& c, const Vec& point) {
    const double r = point.norm();
    if (!(r > 0.0)) throw std::domain_error("asymptotic_eval: point must be nonzero");
    if (point.size() != c.ai.size())
        throw std::invalid_argument("asymptotic_eval: dimension mismatch");
    double v = c.a0 * std::pow(r, -(c.order - 2.0));
    const double rN = std::pow(r, -c.order);
    for (int i = 0; i < point.size(); ++i) v += c.ai[i] * point[i] * rN;
    return v;
}

AsymptoticFit kelvin_asymptotic_fit(const std::function<double(const Vec&)>& v,
                                    const ProblemParams& p, const std::vector<double>& radii,
                                    int directions_per_radius, Rng& rng) {
    const int d = p.n() + 1;
    const double N = p.effective_dimension();
    if (radii.size() < 2) throw std::invalid_argument("kelvin_asymptotic_fit: need >= 2 radii");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::invalid_argument("kelvin_asymptotic_fit: radii must increase");

    const int rows = static_cast<int>(radii.size()) * directions_per_radius;
    Mat A(rows, d + 1);
    Vec rhs(rows);
    int row = 0;
    for (double r : radii) {
        for (int k = 0; k < directions_per_radius; ++k) {
            const Vec w = rng.unit_vector(d);
            // Scaled model: r^(N-2) v(r w) = a0 + sum_i a_i w_i / r + O(1/r^2).
            A(row, 0) = 1.0;
            for (int i = 0; i < d; ++i) A(row, 1 + i) = w[i] / r;
            rhs[row] = std::pow(r, N - 2.0) * v(r * w);
            ++row;
        }
    }
    Eigen::ColPivHouseholderQR<Mat> qr(A);
    if (qr.rank() < d + 1)
        throw std::runtime_error("kelvin_asymptotic_fit: singular normal equations");
    const Vec sol = qr.solve(rhs);
    const double rms = std::sqrt((A * sol - rhs).squaredNorm() / rows);
    return {AsymptoticCoeffs(sol[0], sol.tail(d), N), rms, rows};
}

}  // namespace degell
