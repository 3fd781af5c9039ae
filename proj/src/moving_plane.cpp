#include "degell/moving_plane.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "degell/transforms.hpp"

namespace degell {

namespace {

bool clear_of_singularities(const Vec& p, const std::vector<Vec>& sing, double radius) {
    for (const Vec& s : sing)
        if ((p - s).norm() < radius) return false;
    return true;
}

}  // namespace

double reflection_gap(const std::function<double(const Vec&)>& v, double lambda,
                      const GapSampling& s) {
    if (s.box_lo.size() == 0 || s.box_lo.size() != s.box_hi.size())
        throw std::invalid_argument("reflection_gap: bad sampling box");
    double gap = std::numeric_limits<double>::infinity();
    const double margin = s.plane_margin * (s.box_hi[s.axis] - s.box_lo[s.axis]);
    int used = 0;
    for (int i = 0; i < s.samples; ++i) {
        Vec p = halton_in_box(s.box_lo, s.box_hi, static_cast<std::uint64_t>(i));
        if (p[s.axis] >= lambda) {
            p[s.axis] = lambda - (p[s.axis] - s.box_lo[s.axis]);  // fold into the half-space
            if (p[s.axis] < s.box_lo[s.axis]) continue;
        }
        if (lambda - p[s.axis] < margin) continue;
        const Vec q = reflect_plane(p, lambda, s.axis);
        if (!clear_of_singularities(p, s.singular_points, s.exclusion) ||
            !clear_of_singularities(q, s.singular_points, s.exclusion))
            continue;
        gap = std::min(gap, v(p) - v(q));
        ++used;
    }
    if (used == 0) throw std::domain_error("reflection_gap: empty sample set");
    return gap;
}

double reflection_gap(const GridField& v, double lambda, int axis, double exclusion,
                      const std::vector<Vec>& singular_points, GridGapInfo* info) {
    double gap = std::numeric_limits<double>::infinity();
    GridGapInfo local;
    GridGapInfo& gi = info ? *info : local;
    gi = GridGapInfo{};
    for (int i = 0; i < v.grid.total(); ++i) {
        const Vec p = v.grid.point(i);
        if (p[axis] >= lambda) continue;
        const Vec q = reflect_plane(p, lambda, axis);
        if (!v.inside(q)) {
            ++gi.clipped;
            continue;
        }
        if (!clear_of_singularities(p, singular_points, exclusion) ||
            !clear_of_singularities(q, singular_points, exclusion))
            continue;
        gap = std::min(gap, v[i] - v.interpolate(q));
        ++gi.used;
    }
    if (gi.used == 0) throw std::domain_error("reflection_gap: empty sample set");
    return gap;
}

PlaneScanResult critical_plane(const std::function<double(const Vec&)>& v, int axis,
                               double scan_lo, double scan_hi, double step,
                               const GapSampling& sampling) {
    if (!(step > 0.0) || !(scan_hi > scan_lo))
        throw std::invalid_argument("critical_plane: bad scan range");
    GapSampling s = sampling;
    s.axis = axis;

    PlaneScanResult res;
    double last_positive = std::numeric_limits<double>::quiet_NaN();
    double first_failure = std::numeric_limits<double>::quiet_NaN();
    for (double lam = scan_hi; lam >= scan_lo - 1e-12 * step; lam -= step) {
        const double g = reflection_gap(v, lam, s);
        res.lambdas.push_back(lam);
        res.gaps.push_back(g);
        if (g > 0.0) {
            last_positive = lam;
        } else {
            first_failure = lam;
            break;
        }
    }
    if (std::isnan(last_positive) || std::isnan(first_failure))
        throw std::runtime_error("critical_plane: scan range does not bracket the sign change");

    // Bisection refinement of [first_failure, last_positive] to step / 2^6.
    double lo = first_failure, hi = last_positive;
    for (int it = 0; it < 6; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (reflection_gap(v, mid, s) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    res.lambda0 = hi;
    res.bracketed = true;
    res.refinement = step / 64.0;
    res.gap_at_lambda0 = reflection_gap(v, res.lambda0, s);
    res.gap_above = reflection_gap(v, res.lambda0 + step, s);
    res.monotone_positive_above = true;
    for (size_t i = 0; i + 1 < res.gaps.size(); ++i)
        res.monotone_positive_above = res.monotone_positive_above && res.gaps[i] > 0.0;
    return res;
}

MinCheckReport lemma25_min_check(const ScalarField& v, const ProblemParams& p,
                                 double inner_radius, int samples, Rng& rng, double sign_tol) {
    const int d = p.n() + 1;
    if (v.dim != d) throw std::invalid_argument("lemma25_min_check: field dimension != n+1");
    MinCheckReport rep;

    // Superharmonicity probe: L(v) <= tol on interior samples.
    rep.worst_operator_sign = -std::numeric_limits<double>::infinity();
    const int probe_count = std::max(64, samples / 8);
    for (int i = 0; i < probe_count; ++i) {
        const Vec dir = rng.unit_vector(d);
        // Bias radii toward the puncture: log-uniform in [inner_radius, 1).
        const double r =
            inner_radius * std::pow(1.0 / inner_radius, rng.uniform());
        const Vec q = r * dir;
        const Jet j = v.jet(q);
        const double s = q[d - 1];
        double Lv;
        if (std::abs(s) <= 1e-10 * (1.0 + q.norm()))
            Lv = j.hess.trace() + (2.0 * p.a() - 1.0) * j.hess(d - 1, d - 1);
        else
            Lv = j.hess.trace() + (2.0 * p.a() - 1.0) / s * j.grad[d - 1];
        rep.worst_operator_sign = std::max(rep.worst_operator_sign, Lv);
    }
    rep.precondition_ok = rep.worst_operator_sign <= sign_tol;
    if (!rep.precondition_ok) return rep;  // pass = false, check skipped

    rep.interior_inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const Vec dir = rng.unit_vector(d);
        const double r = inner_radius * std::pow(1.0 / inner_radius, rng.uniform());
        rep.interior_inf = std::min(rep.interior_inf, v.value(r * dir));
    }
    rep.boundary_inf = std::numeric_limits<double>::infinity();
    const int boundary_samples = std::max(128, samples / 4);
    for (int i = 0; i < boundary_samples; ++i)
        rep.boundary_inf = std::min(rep.boundary_inf, v.value(rng.unit_vector(d)));

    rep.margin = rep.interior_inf - rep.boundary_inf;
    rep.pass = rep.margin >= -1e-8;
    return rep;
}

MinCheckReport grid_min_check(const DiscreteOperator& op, const GridField& u, double tol) {
    MinCheckReport rep;
    const GridField Lu = op.apply(u);
    rep.worst_operator_sign = -std::numeric_limits<double>::infinity();
    rep.interior_inf = std::numeric_limits<double>::infinity();
    rep.boundary_inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < op.grid.total(); ++i) {
        if (op.kinds[static_cast<size_t>(i)] == NodeKind::Dirichlet) {
            rep.boundary_inf = std::min(rep.boundary_inf, u[i]);
        } else {
            rep.worst_operator_sign = std::max(rep.worst_operator_sign, Lu[i]);
            rep.interior_inf = std::min(rep.interior_inf, u[i]);
        }
    }
    rep.precondition_ok = rep.worst_operator_sign <= tol;
    rep.margin = rep.interior_inf - rep.boundary_inf;
    rep.pass = rep.precondition_ok && rep.margin >= -tol;
    return rep;
}

SymmetryStats symmetry_report(const std::function<double(const Vec&)>& v, const Vec& center,
                              double max_radius, int pairs, Rng& rng) {
    const int d = static_cast<int>(center.size());
    if (std::abs(center[d - 1]) > 1e-12)
        throw std::invalid_argument(
            "symmetry_report: center must lie on the symmetry plane (last coordinate 0)");
    SymmetryStats st;
    st.pairs = pairs;
    double sum = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const double r = max_radius * std::sqrt(rng.uniform());
        const Vec p = center + r * rng.unit_vector(d);
        const Vec q = center + r * rng.unit_vector(d);
        const double dev = std::abs(v(p) - v(q));
        st.max_deviation = std::max(st.max_deviation, dev);
        sum += dev;
    }
    st.mean_deviation = pairs > 0 ? sum / pairs : 0.0;
    return st;
}

}  // namespace degell
