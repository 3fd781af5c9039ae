#include "degell/fichera.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "degell/transforms.hpp"

namespace degell {

namespace {

struct QJet {
    double value;
    Eigen::Vector2d grad;  // of q = a^{ij} phi_i phi_j
};

QJet degeneracy_form(const OperatorField& op, const Eigen::Vector2d& x) {
    const Jet a11 = op.a11.jet(x), a12 = op.a12.jet(x), a22 = op.a22.jet(x);
    const Jet phi = op.phi.jet(x);
    const double p1 = phi.grad[0], p2 = phi.grad[1];
    QJet q;
    q.value = a11.value * p1 * p1 + 2.0 * a12.value * p1 * p2 + a22.value * p2 * p2;
    for (int k = 0; k < 2; ++k) {
        q.grad[k] = a11.grad[k] * p1 * p1 + 2.0 * a12.grad[k] * p1 * p2 +
                    a22.grad[k] * p2 * p2 +
                    2.0 * a11.value * p1 * phi.hess(0, k) +
                    2.0 * a12.value * (phi.hess(0, k) * p2 + p1 * phi.hess(1, k)) +
                    2.0 * a22.value * p2 * phi.hess(1, k);
    }
    return q;
}

double bisect_phi(const OperatorField& op, double x1, double ylo, double yhi) {
    double flo = op.phi.jet(Eigen::Vector2d(x1, ylo)).value;
    double lo = ylo, hi = yhi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12) return mid;
        const double fm = op.phi.jet(Eigen::Vector2d(x1, mid)).value;
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0)
        throw std::runtime_error("a22_factor: adaptive quadrature failed to converge");
    return adaptive_simpson(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double fichera_ratio(const OperatorField& op, const Eigen::Vector2d& x) {
    const Jet phi = op.phi.jet(x);
    const double gn2 = phi.grad.squaredNorm();
    if (gn2 <= 1e-28) throw std::domain_error("fichera_ratio: grad(phi) vanishes");

    const Jet a11 = op.a11.jet(x), a12 = op.a12.jet(x), a22 = op.a22.jet(x);
    const double b1 = op.b1.jet(x).value, b2 = op.b2.jet(x).value;
    const double p1 = phi.grad[0], p2 = phi.grad[1];

    const double div_row1 = a11.grad[0] + a12.grad[1];  // d_j a^{1j}
    const double div_row2 = a12.grad[0] + a22.grad[1];  // d_j a^{2j}
    const double numer = b1 * p1 + b2 * p2 - (div_row1 * p1 + div_row2 * p2);

    const QJet q = degeneracy_form(op, x);
    const double denom = (q.grad[0] * p1 + q.grad[1] * p2) / gn2;
    const double scale = std::abs(q.grad[0]) + std::abs(q.grad[1]) + 1e-300;
    if (std::abs(denom) <= 1e-14 * scale)
        throw std::domain_error(
            "fichera_ratio: degeneracy direction derivative vanishes (structure violated)");
    return numer / denom;
}

std::vector<Eigen::Vector2d> trace_boundary(const OperatorField& op, int resolution) {
    if (resolution < 2) throw std::invalid_argument("trace_boundary: resolution must be >= 2");
    std::vector<Eigen::Vector2d> pts;
    const double xlo = op.box_lo[0], xhi = op.box_hi[0];
    const double ylo = op.box_lo[1], yhi = op.box_hi[1];
    const int scan = 64;
    for (int i = 0; i < resolution; ++i) {
        const double x1 = xlo + (xhi - xlo) * i / (resolution - 1.0);
        double prev_y = ylo;
        double prev_f = op.phi.jet(Eigen::Vector2d(x1, prev_y)).value;
        for (int j = 1; j <= scan; ++j) {
            const double yj = ylo + (yhi - ylo) * j / static_cast<double>(scan);
            const double fj = op.phi.jet(Eigen::Vector2d(x1, yj)).value;
            if (prev_f == 0.0) {
                pts.emplace_back(x1, prev_y);
            } else if ((prev_f < 0.0) != (fj < 0.0)) {
                pts.emplace_back(x1, bisect_phi(op, x1, prev_y, yj));
            }
            prev_y = yj;
            prev_f = fj;
        }
        if (prev_f == 0.0) pts.emplace_back(x1, prev_y);
    }
    return pts;
}

FicheraReport exponent_window(const OperatorField& op, int resolution) {
    FicheraReport rep;
    rep.resolution = resolution;
    const auto pts = trace_boundary(op, resolution);
    if (pts.empty())
        throw std::runtime_error("exponent_window: no boundary found inside the domain box");

    rep.sup_g = -std::numeric_limits<double>::infinity();
    rep.inf_g = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        const double g = fichera_ratio(op, p);
        rep.samples.push_back({p, g});
        rep.sup_g = std::max(rep.sup_g, g);
        rep.inf_g = std::min(rep.inf_g, g);
    }
    for (size_t i = 1; i < rep.samples.size(); ++i)
        rep.error_bar =
            std::max(rep.error_bar, std::abs(rep.samples[i].g - rep.samples[i - 1].g));
    rep.a = rep.sup_g + 1.0;
    rep.b = rep.inf_g;
    rep.window_lo = 1.0;
    rep.window_hi = (3.0 + 2.0 * rep.a) / (2.0 * rep.a - 1.0);
    return rep;
}

double a22_factor(const ScalarField& atil22, const Eigen::Vector2d& y, double abs_tol) {
    auto integrand = [&](double t) { return atil22.jet(Eigen::Vector2d(y[0], t * y[1])).grad[1]; };
    const double fa = integrand(0.0), fb = integrand(1.0), fm = integrand(0.5);
    const double whole = (fa + 4.0 * fm + fb) / 6.0;
    return adaptive_simpson(integrand, 0.0, 1.0, fa, fm, fb, whole, abs_tol, 48);
}

FlattenedOperator flatten(const OperatorField& op) {
    const OperatorField o = op;

    // x2(y1, y2): root of phi(y1, .) = y2, bracketed in the domain box then
    // polished by bisection. phi is monotone in x2 near the boundary by the
    // d2(phi) != 0 normalization.
    auto solve_x2 = [o](const Eigen::Vector2d& y) -> Eigen::Vector2d {
        const double x1 = y[0];
        const double lo = o.box_lo[1], hi = o.box_hi[1];
        auto val = [&](double x2) { return o.phi.jet(Eigen::Vector2d(x1, x2)).value - y[1]; };
        const int scan = 64;
        double prev = lo, fprev = val(lo);
        for (int j = 1; j <= scan; ++j) {
            const double xj = lo + (hi - lo) * j / static_cast<double>(scan);
            const double fj = val(xj);
            if (fprev == 0.0) return {x1, prev};
            if ((fprev < 0.0) != (fj < 0.0)) {
                double a = prev, b = xj, fa = fprev;
                for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm = val(m);
                    if (fm == 0.0) return {x1, m};
                    if ((fa < 0.0) != (fm < 0.0)) {
                        b = m;
                    } else {
                        a = m;
                        fa = fm;
                    }
                }
                return {x1, 0.5 * (a + b)};
            }
            prev = xj;
            fprev = fj;
        }
        if (fprev == 0.0) return {x1, prev};
        throw std::domain_error("flatten: y2 level not attained inside the domain box");
    };

    FlattenedOperator flat;
    flat.atil22.dim = 2;
    flat.atil22.jet = [o, solve_x2](const Vec& y) -> Jet {
        const Eigen::Vector2d x = solve_x2(Eigen::Vector2d(y[0], y[1]));
        const Jet phi = o.phi.jet(x);
        if (std::abs(phi.grad[1]) < 1e-10)
            throw std::domain_error("flatten: d2(phi) vanishes");
        const QJet q = degeneracy_form(o, x);
        Jet j = Jet::zero(2);
        j.value = q.value;
        // x1 = y1, dx2/dy2 = 1/phi_2, dx2/dy1 = -phi_1/phi_2.
        j.grad[1] = q.grad[1] / phi.grad[1];
        j.grad[0] = q.grad[0] - q.grad[1] * phi.grad[0] / phi.grad[1];
        return j;
    };
    flat.atil11 = [o, solve_x2](const Eigen::Vector2d& y) {
        return o.a11.jet(solve_x2(y)).value;
    };
    flat.btil2 = [o, solve_x2](const Eigen::Vector2d& y) {
        const Eigen::Vector2d x = solve_x2(y);
        return boundary_flatten(o, x).b2;
    };
    return flat;
}

Lemma41Report lemma41_check(const FlattenedOperator& flat, double y1_lo, double y1_hi,
                            int samples, double threshold) {
    if (samples < 1) throw std::invalid_argument("lemma41_check: need at least one sample");
    Lemma41Report rep;
    rep.threshold = threshold;
    rep.pass = true;
    rep.worst_ratio_margin = std::numeric_limits<double>::infinity();
    rep.worst_a22 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double y1 =
            samples == 1 ? y1_lo : y1_lo + (y1_hi - y1_lo) * i / (samples - 1.0);
        const Eigen::Vector2d y(y1, 0.0);
        Lemma41Row row;
        row.y1 = y1;
        row.a22_factor = a22_factor(flat.atil22, y);
        row.btil2 = flat.btil2(y);
        row.ratio = row.btil2 / row.a22_factor;
        row.pass = row.a22_factor > 0.0 && row.ratio > threshold;
        rep.worst_ratio_margin = std::min(rep.worst_ratio_margin, row.ratio - threshold);
        rep.worst_a22 = std::min(rep.worst_a22, row.a22_factor);
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

Lemma41Report lemma41_check(const OperatorField& op, double y1_lo, double y1_hi, int samples,
                            double threshold) {
    return lemma41_check(flatten(op), y1_lo, y1_hi, samples, threshold);
}

}  // namespace degell
