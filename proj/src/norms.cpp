#include "degell/norms.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace degell {

PeriodicGridField::PeriodicGridField(std::vector<int> nx_, std::vector<double> period_, int ny_,
                                     double y_hi_)
    : n(static_cast<int>(nx_.size())), nx(std::move(nx_)), period(std::move(period_)), ny(ny_),
      y_hi(y_hi_) {
    if (n < 1) throw std::invalid_argument("PeriodicGridField: need at least one x axis");
    if (period.size() != nx.size())
        throw std::invalid_argument("PeriodicGridField: one period per axis");
    for (int c : nx)
        if (c < 2) throw std::invalid_argument("PeriodicGridField: nx must be >= 2");
    for (double L : period)
        if (!(L > 0.0)) throw std::invalid_argument("PeriodicGridField: period must be positive");
    if (ny < 6) throw std::invalid_argument("PeriodicGridField: ny must be >= 6 (stencil width)");
    if (!(y_hi > 0.0)) throw std::invalid_argument("PeriodicGridField: y_hi must be positive");
    values.assign(static_cast<size_t>(slice_size()) * static_cast<size_t>(ny), 0.0);
}

int PeriodicGridField::slice_size() const {
    int s = 1;
    for (int c : nx) s *= c;
    return s;
}

double PeriodicGridField::node_weight(int yidx) const {
    double w = (yidx == 0 || yidx == ny - 1) ? hy() / 2.0 : hy();
    for (int ax = 0; ax < n; ++ax) w *= hx(ax);
    return w;
}

PeriodicGridField PeriodicGridField::sample(std::vector<int> nx, std::vector<double> period,
                                            int ny, double y_hi,
                                            const std::function<double(const Vec&, double)>& f) {
    PeriodicGridField g(std::move(nx), std::move(period), ny, y_hi);
    const int ss = g.slice_size();
    Vec x(g.n);
    for (int j = 0; j < g.ny; ++j) {
        const double y = j * g.hy();
        for (int s = 0; s < ss; ++s) {
            int rem = s;
            for (int ax = 0; ax < g.n; ++ax) {
                const int idx = rem % g.nx[static_cast<size_t>(ax)];
                rem /= g.nx[static_cast<size_t>(ax)];
                x[ax] = idx * g.hx(ax);
            }
            g.values[static_cast<size_t>(g.index(s, j))] = f(x, y);
        }
    }
    return g;
}

PeriodicGridField lambda1_pow(const PeriodicGridField& f, double power, double* max_imag) {
    const int ss = f.slice_size();
    const int rank = f.n;

    // FFTW wants the fastest-varying dimension last; our axis 0 is fastest.
    std::vector<int> dims(static_cast<size_t>(rank));
    for (int ax = 0; ax < rank; ++ax) dims[static_cast<size_t>(ax)] = f.nx[static_cast<size_t>(rank - 1 - ax)];

    fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(ss));
    fftw_plan fwd = fftw_plan_dft(rank, dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft(rank, dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);

    // |xi|^power per mode, modes decomposed with axis 0 fastest (same layout
    // as the value array).
    std::vector<double> mult(static_cast<size_t>(ss));
    for (int s = 0; s < ss; ++s) {
        int rem = s;
        double xi2 = 0.0;
        for (int ax = 0; ax < rank; ++ax) {
            const int N = f.nx[static_cast<size_t>(ax)];
            int k = rem % N;
            rem /= N;
            if (k > N / 2) k -= N;
            const double xi = 2.0 * M_PI * k / f.period[static_cast<size_t>(ax)];
            xi2 += xi * xi;
        }
        mult[static_cast<size_t>(s)] = std::pow(xi2, power / 2.0);
    }
    mult[0] = 0.0;  // zero mode annihilated for every positive power

    PeriodicGridField out = f;
    double worst_imag = 0.0;
    for (int j = 0; j < f.ny; ++j) {
        for (int s = 0; s < ss; ++s) {
            buf[s][0] = f.values[static_cast<size_t>(f.index(s, j))];
            buf[s][1] = 0.0;
        }
        fftw_execute(fwd);
        for (int s = 0; s < ss; ++s) {
            buf[s][0] *= mult[static_cast<size_t>(s)];
            buf[s][1] *= mult[static_cast<size_t>(s)];
        }
        fftw_execute(bwd);
        for (int s = 0; s < ss; ++s) {
            out.values[static_cast<size_t>(out.index(s, j))] = buf[s][0] / ss;
            worst_imag = std::max(worst_imag, std::abs(buf[s][1] / ss));
        }
    }
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
    if (max_imag) *max_imag = worst_imag;
    return out;
}

PeriodicGridField lambda1(const PeriodicGridField& f, double* max_imag) {
    return lambda1_pow(f, 1.0, max_imag);
}

namespace {

// 4th order first and second y-derivatives, one-sided near the edges.
void y_derivatives(const PeriodicGridField& v, PeriodicGridField& dy, PeriodicGridField& dyy) {
    const int ss = v.slice_size();
    const double h = v.hy();
    const int ny = v.ny;
    auto at = [&](int s, int j) { return v.values[static_cast<size_t>(v.index(s, j))]; };

    for (int s = 0; s < ss; ++s) {
        for (int j = 0; j < ny; ++j) {
            double d1, d2;
            if (j >= 2 && j <= ny - 3) {
                d1 = (at(s, j - 2) - 8 * at(s, j - 1) + 8 * at(s, j + 1) - at(s, j + 2)) /
                     (12 * h);
                d2 = (-at(s, j - 2) + 16 * at(s, j - 1) - 30 * at(s, j) + 16 * at(s, j + 1) -
                      at(s, j + 2)) /
                     (12 * h * h);
            } else {
                const bool low = j < 2;
                const int o = low ? 0 : ny - 1;       // anchor
                const int sg = low ? 1 : -1;          // direction into the grid
                auto g = [&](int k) { return at(s, o + sg * k); };
                const int e = low ? j : ny - 1 - j;   // offset from the edge
                if (e == 0) {
                    d1 = sg * (-25 * g(0) + 48 * g(1) - 36 * g(2) + 16 * g(3) - 3 * g(4)) /
                         (12 * h);
                    d2 = (45 * g(0) - 154 * g(1) + 214 * g(2) - 156 * g(3) + 61 * g(4) -
                          10 * g(5)) /
                         (12 * h * h);
                } else {
                    d1 = sg * (-3 * g(0) - 10 * g(1) + 18 * g(2) - 6 * g(3) + g(4)) / (12 * h);
                    d2 = (10 * g(0) - 15 * g(1) - 4 * g(2) + 14 * g(3) - 6 * g(4) + g(5)) /
                         (12 * h * h);
                }
            }
            dy.values[static_cast<size_t>(dy.index(s, j))] = d1;
            dyy.values[static_cast<size_t>(dyy.index(s, j))] = d2;
        }
    }
}

double lq_norm(const PeriodicGridField& g, double q) {
    double acc = 0.0;
    const int ss = g.slice_size();
    for (int j = 0; j < g.ny; ++j) {
        const double w = g.node_weight(j);
        for (int s = 0; s < ss; ++s)
            acc += w * std::pow(std::abs(g.values[static_cast<size_t>(g.index(s, j))]), q);
    }
    return std::pow(acc, 1.0 / q);
}

struct Constituents {
    PeriodicGridField y_dyy, lam2, sqrty_lam_dy, dy;
};

Constituents build_constituents(const PeriodicGridField& v) {
    PeriodicGridField dy = v, dyy = v;
    y_derivatives(v, dy, dyy);
    Constituents c{v, lambda1_pow(v, 2.0), lambda1(dy), dy};
    const int ss = v.slice_size();
    for (int j = 0; j < v.ny; ++j) {
        const double y = j * v.hy();
        const double sy = std::sqrt(y);
        for (int s = 0; s < ss; ++s) {
            c.y_dyy.values[static_cast<size_t>(v.index(s, j))] =
                y * dyy.values[static_cast<size_t>(v.index(s, j))];
            c.sqrty_lam_dy.values[static_cast<size_t>(v.index(s, j))] *= sy;
        }
    }
    return c;
}

}  // namespace

NormReport iq_norm(const PeriodicGridField& v, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("iq_norm: q must be >= 1");
    const Constituents c = build_constituents(v);

    NormReport rep;
    rep.terms.push_back({"y*d_yy(v)", lq_norm(c.y_dyy, q)});
    rep.terms.push_back({"lambda1^2(v)", lq_norm(c.lam2, q)});
    rep.terms.push_back({"sqrt(y)*lambda1(d_y v)", lq_norm(c.sqrty_lam_dy, q)});
    rep.terms.push_back({"d_y(v)", lq_norm(c.dy, q)});
    rep.terms.push_back({"v", lq_norm(v, q)});
    for (const auto& t : rep.terms) rep.total += t.value;

    double top = 0.0;
    for (int s = 0; s < v.slice_size(); ++s)
        top = std::max(top, std::abs(v.values[static_cast<size_t>(v.index(s, v.ny - 1))]));
    rep.note = "truncated at y = " + std::to_string(v.y_hi) +
               "; |v| on the top row <= " + std::to_string(top) +
               (q > v.n + 1 ? "; bootstrap gate q > n+1 holds" : "; bootstrap gate q > n+1 fails");
    return rep;
}

namespace {

double holder_sup(const PeriodicGridField& g, double beta, std::size_t budget, Rng* rng) {
    const int ss = g.slice_size();
    const std::size_t per_slice =
        static_cast<std::size_t>(ss) * static_cast<std::size_t>(ss - 1) / 2;
    const std::size_t total_pairs = per_slice * static_cast<std::size_t>(g.ny);

    // Squared torus distance between flat slice indices.
    auto dist = [&](int s1, int s2) {
        double d2 = 0.0;
        int r1 = s1, r2 = s2;
        for (int ax = 0; ax < g.n; ++ax) {
            const int N = g.nx[static_cast<size_t>(ax)];
            const int i1 = r1 % N, i2 = r2 % N;
            r1 /= N;
            r2 /= N;
            int di = std::abs(i1 - i2);
            di = std::min(di, N - di);
            const double dx = di * g.hx(ax);
            d2 += dx * dx;
        }
        return std::sqrt(d2);
    };

    double sup = 0.0;
    auto quotient = [&](int j, int s1, int s2) {
        const double d = dist(s1, s2);
        if (d <= 0.0) return;
        const double num = std::abs(g.values[static_cast<size_t>(g.index(s1, j))] -
                                    g.values[static_cast<size_t>(g.index(s2, j))]);
        sup = std::max(sup, num / std::pow(d, beta));
    };

    if (total_pairs <= budget) {
        for (int j = 0; j < g.ny; ++j)
            for (int s1 = 0; s1 < ss; ++s1)
                for (int s2 = s1 + 1; s2 < ss; ++s2) quotient(j, s1, s2);
    } else {
        Rng fallback(20240601u);
        Rng& r = rng ? *rng : fallback;
        for (std::size_t k = 0; k < budget; ++k) {
            const int j = r.uniform_int(0, g.ny - 1);
            const int s1 = r.uniform_int(0, ss - 1);
            const int s2 = r.uniform_int(0, ss - 1);
            if (s1 != s2) quotient(j, s1, s2);
        }
    }
    return sup;
}

}  // namespace

NormReport ibeta_seminorm(const PeriodicGridField& v, double beta, std::size_t pair_budget,
                          Rng* rng) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("ibeta_seminorm: beta must lie in (0,1)");
    const Constituents c = build_constituents(v);

    NormReport rep;
    rep.terms.push_back({"[y*d_yy(v)]", holder_sup(c.y_dyy, beta, pair_budget, rng)});
    rep.terms.push_back({"[lambda1^2(v)]", holder_sup(c.lam2, beta, pair_budget, rng)});
    rep.terms.push_back(
        {"[sqrt(y)*lambda1(d_y v)]", holder_sup(c.sqrty_lam_dy, beta, pair_budget, rng)});
    rep.terms.push_back({"[d_y(v)]", holder_sup(c.dy, beta, pair_budget, rng)});
    double sup = 0.0;
    for (double x : v.values) sup = std::max(sup, std::abs(x));
    rep.terms.push_back({"sup|v|", sup});
    for (const auto& t : rep.terms) rep.total += t.value;
    rep.note = "sampled lower bound on the seminorm";
    return rep;
}

namespace {

struct GaussRule {
    double node[2];
    double weight[2];
};

// Two-point rule exact for cubics against the measure y^w dy on [a, b].
GaussRule weighted_gauss(double w, double a, double b) {
    double m[4];
    for (int k = 0; k < 4; ++k)
        m[k] = (std::pow(b, w + k + 1) - std::pow(a, w + k + 1)) / (w + k + 1);
    // Monic orthogonal quadratic y^2 + c1 y + c0:
    // [m1 m0; m2 m1] [c1; c0] = [-m2; -m3].
    const double det = m[1] * m[1] - m[0] * m[2];
    if (std::abs(det) < 1e-300) throw std::runtime_error("weighted_gauss: degenerate moments");
    const double c1 = (m[0] * m[3] - m[1] * m[2]) / det;
    const double c0 = (m[2] * m[2] - m[1] * m[3]) / det;
    const double disc = c1 * c1 - 4.0 * c0;
    const double sq = std::sqrt(std::max(disc, 0.0));
    GaussRule g;
    g.node[0] = (-c1 - sq) / 2.0;
    g.node[1] = (-c1 + sq) / 2.0;
    const double dn = g.node[1] - g.node[0];
    if (std::abs(dn) < 1e-300) throw std::runtime_error("weighted_gauss: coincident nodes");
    g.weight[1] = (m[1] - g.node[0] * m[0]) / dn;
    g.weight[0] = m[0] - g.weight[1];
    return g;
}

constexpr double kGL2 = 0.5773502691896257645;  // Gauss-Legendre 2-point abscissa

}  // namespace

double weighted_sobolev_norm(const ScalarField& u, double alpha, double p, const Vec& lo,
                             const Vec& hi, const std::vector<int>& cells) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("weighted_sobolev_norm: alpha must lie in (0,1)");
    if (!(p >= 1.0)) throw std::invalid_argument("weighted_sobolev_norm: p must be >= 1");
    const int d = u.dim;
    if (lo.size() != d || hi.size() != d || static_cast<int>(cells.size()) != d)
        throw std::invalid_argument("weighted_sobolev_norm: box/cells dimension mismatch");
    if (lo[d - 1] < 0.0)
        throw std::invalid_argument("weighted_sobolev_norm: domain must sit in y >= 0");
    const double w = p * alpha;

    // Tensor quadrature: 2-point Gauss-Legendre on every tangential axis,
    // 2-point weighted Gauss on the y axis of each cell.
    std::vector<double> h(static_cast<size_t>(d));
    for (int ax = 0; ax < d; ++ax) h[static_cast<size_t>(ax)] = (hi[ax] - lo[ax]) / cells[static_cast<size_t>(ax)];

    int ncells = 1;
    for (int c : cells) ncells *= c;

    double acc = 0.0;
    Vec q(d);
    for (int cell = 0; cell < ncells; ++cell) {
        int rem = cell;
        std::vector<double> clo(static_cast<size_t>(d));
        for (int ax = 0; ax < d; ++ax) {
            const int idx = rem % cells[static_cast<size_t>(ax)];
            rem /= cells[static_cast<size_t>(ax)];
            clo[static_cast<size_t>(ax)] = lo[ax] + idx * h[static_cast<size_t>(ax)];
        }
        const GaussRule gy =
            weighted_gauss(w, clo[static_cast<size_t>(d - 1)],
                           clo[static_cast<size_t>(d - 1)] + h[static_cast<size_t>(d - 1)]);

        const int corners = 1 << d;
        for (int node = 0; node < corners; ++node) {
            double weight = 1.0;
            for (int ax = 0; ax < d; ++ax) {
                const bool hi_node = (node >> ax) & 1;
                if (ax < d - 1) {
                    const double mid = clo[static_cast<size_t>(ax)] + h[static_cast<size_t>(ax)] / 2.0;
                    const double off = h[static_cast<size_t>(ax)] / 2.0 * kGL2;
                    q[ax] = hi_node ? mid + off : mid - off;
                    weight *= h[static_cast<size_t>(ax)] / 2.0;
                } else {
                    q[ax] = gy.node[hi_node ? 1 : 0];
                    weight *= gy.weight[hi_node ? 1 : 0];
                }
            }
            const Jet j = u.jet(q);
            acc += weight *
                   (std::pow(j.grad.norm(), p) + std::pow(std::abs(j.value), p));
        }
    }
    return std::pow(acc, 1.0 / p);
}

// ---- cutoffs ----------------------------------------------------------------

CutoffJet smoothstep(double t) {
    if (t <= 0.0) return {0.0, 0.0, 0.0};
    if (t >= 1.0) return {1.0, 0.0, 0.0};
    auto phi = [](double s) { return std::exp(-1.0 / s); };
    auto phi1 = [&](double s) { return phi(s) / (s * s); };
    auto phi2 = [&](double s) { return phi(s) * (1.0 / (s * s * s * s) - 2.0 / (s * s * s)); };
    const double f = phi(t), f1 = phi1(t), f2 = phi2(t);
    const double g = phi(t) + phi(1.0 - t);
    const double g1 = phi1(t) - phi1(1.0 - t);
    const double g2 = phi2(t) + phi2(1.0 - t);
    const double v = f / g;
    const double d1 = (f1 * g - f * g1) / (g * g);
    const double d2 = (f2 * g - f * g2) / (g * g) - 2.0 * g1 * (f1 * g - f * g1) / (g * g * g);
    return {v, d1, d2};
}

RadialBump::RadialBump(double r_) : r(r_) {
    if (!(r > 0.0)) throw std::invalid_argument("RadialBump: radius must be positive");
}

CutoffJet RadialBump::radial(double rho) const {
    // psi(rho) = 1 - S(2 rho / r - 1)
    const double t = 2.0 * rho / r - 1.0;
    const CutoffJet s = smoothstep(t);
    return {1.0 - s.value, -s.d1 * 2.0 / r, -s.d2 * 4.0 / (r * r)};
}

Jet RadialBump::jet(const Vec& p) const {
    const int d = static_cast<int>(p.size());
    const double rho = p.norm();
    if (rho <= r / 2.0) return Jet::constant(d, 1.0);
    const CutoffJet f = radial(rho);
    Jet j = Jet::zero(d);
    j.value = f.value;
    const Vec dir = p / rho;
    j.grad = f.d1 * dir;
    j.hess = f.d2 * (dir * dir.transpose()) +
             f.d1 / rho * (Mat::Identity(d, d) - dir * dir.transpose());
    return j;
}

SmoothStepEps::SmoothStepEps(double eps_) : eps(eps_) {
    if (!(eps > 0.0)) throw std::invalid_argument("SmoothStepEps: eps must be positive");
}

CutoffJet SmoothStepEps::at(double s) const {
    const CutoffJet j = smoothstep(s / eps - 1.0);
    return {j.value, j.d1 / eps, j.d2 / (eps * eps)};
}

// ---- energy identity ---------------------------------------------------------

EnergyReport energy_estimate_check(const ScalarField& u, const EnergyCoeffs& coeffs, double r,
                                   int cells, const std::vector<double>& eps_list) {
    if (u.dim != 2) throw std::invalid_argument("energy_estimate_check: two variables expected");
    if (cells < 8) throw std::invalid_argument("energy_estimate_check: resolution too small");
    EnergyReport rep;
    const RadialBump psi(r);

    rep.min_b11_on_face = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 256; ++i) {
        Vec q(2);
        q << -r + 2.0 * r * i / 256.0, 0.0;
        rep.min_b11_on_face = std::min(rep.min_b11_on_face, coeffs.B11.jet(q).value);
    }
    rep.hypothesis_ok = rep.min_b11_on_face > 0.0;
    if (!rep.hypothesis_ok) return rep;

    const double hx = 2.0 * r / cells, hy = r / cells;
    const double cell_area = hx * hy;

    double lhs_sqrt = 0.0, lhs_p1 = 0.0;
    double b11c = 0.0, b12c = 0.0, b1c = 0.0, b2c = 0.0, finf = 0.0, uinf = 0.0;

    struct Acc {
        double lhs = 0.0, rhs = 0.0, lsq = 0.0, lp1 = 0.0;
    };
    std::vector<Acc> acc(eps_list.size());
    std::vector<SmoothStepEps> etas;
    etas.reserve(eps_list.size());
    for (double e : eps_list) etas.emplace_back(e);

    Vec q(2);
    for (int i = 0; i < cells; ++i) {
        for (int jdx = 0; jdx < cells; ++jdx) {
            q << -r + (i + 0.5) * hx, (jdx + 0.5) * hy;
            const double p2 = q[1];
            const Jet pj = psi.jet(q);
            if (pj.value == 0.0 && pj.grad.norm() == 0.0 && q.norm() > r) continue;

            const Jet ju = u.jet(q);
            const Jet jb11 = coeffs.B11.jet(q);
            const Jet jb12 = coeffs.B12.jet(q);
            const Jet jb1 = coeffs.B1.jet(q);
            const Jet jb2 = coeffs.B2.jet(q);
            const double fv = coeffs.f(q);

            // plain psi_r quantities
            lhs_sqrt += cell_area * pj.value * pj.value * p2 * ju.grad[1] * ju.grad[1];
            lhs_p1 += cell_area * pj.value * pj.value * ju.grad[0] * ju.grad[0];
            uinf = std::max(uinf, std::abs(pj.value * ju.value));
            finf = std::max(finf, std::abs(pj.value * fv));
            auto c1norm = [&](const Jet& b) {
                const double v = std::abs(pj.value * b.value);
                const Vec g = pj.grad * b.value + pj.value * b.grad;
                return std::max(v, g.template lpNorm<Eigen::Infinity>());
            };
            b11c = std::max(b11c, c1norm(jb11));
            b12c = std::max(b12c, c1norm(jb12));
            b1c = std::max(b1c, c1norm(jb1));
            b2c = std::max(b2c, c1norm(jb2));

            for (size_t e = 0; e < eps_list.size(); ++e) {
                const CutoffJet et = etas[e].at(p2);
                const double w = pj.value * et.value;                        // psi_{r,eps}
                const double w1 = pj.grad[0] * et.value;                     // d_1
                const double w2 = pj.grad[1] * et.value + pj.value * et.d1;  // d_2
                const double w22 = pj.hess(1, 1) * et.value + 2.0 * pj.grad[1] * et.d1 +
                                   pj.value * et.d2;

                const double u1 = ju.grad[0], u2 = ju.grad[1], uv = ju.value;
                const double lhs_term = w * p2 * u2 * u2 + jb11.value * w * u1 * u1;
                const double rhs_term =
                    (w2 + 0.5 * p2 * w22 - 0.5 * (jb2.grad[1] * w + jb2.value * w2)) * uv * uv +
                    (jb1.value * w - (jb11.grad[0] * w + jb11.value * w1)) * uv * u1 -
                    2.0 * p2 * (jb12.grad[0] * w + jb12.value * w1) * uv * u2 -
                    2.0 * p2 * jb12.value * w * u1 * u2 + w * uv * fv;
                acc[e].lhs += cell_area * lhs_term;
                acc[e].rhs += cell_area * rhs_term;
                acc[e].lsq += cell_area * w * w * p2 * u2 * u2;
                acc[e].lp1 += cell_area * w * w * u1 * u1;
            }
        }
    }

    rep.lhs_sqrt_term = std::sqrt(std::max(lhs_sqrt, 0.0));
    rep.lhs_p1_term = std::sqrt(std::max(lhs_p1, 0.0));
    rep.b11_c1 = b11c;
    rep.b12_c1 = b12c;
    rep.b1_c1 = b1c;
    rep.b2_c1 = b2c;
    rep.f_inf = finf;
    rep.u_inf = uinf;
    rep.ratio = (rep.lhs_sqrt_term + rep.lhs_p1_term) /
                (1.0 + b11c + b12c + b1c + b2c + finf + uinf);
    for (size_t e = 0; e < eps_list.size(); ++e) {
        EnergyIdentityProbe probe;
        probe.eps = eps_list[e];
        probe.lhs = acc[e].lhs;
        probe.rhs = acc[e].rhs;
        probe.defect = std::abs(acc[e].lhs - acc[e].rhs);
        probe.lhs_sqrt_term = std::sqrt(std::max(acc[e].lsq, 0.0));
        probe.lhs_p1_term = std::sqrt(std::max(acc[e].lp1, 0.0));
        rep.probes.push_back(probe);
    }
    return rep;
}

}  // namespace degell
