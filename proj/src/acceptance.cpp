#include "degell/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "degell/exact_solutions.hpp"
#include "degell/fd_solver.hpp"
#include "degell/fichera.hpp"
#include "degell/moving_plane.hpp"
#include "degell/norms.hpp"
#include "degell/transforms.hpp"

namespace degell {

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
    std::vector<CriterionResult> results;
    double tol_scale;
    std::uint64_t seed;

    template <typename F>
    void run(int id, const std::string& name, bool gating, F&& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        r.gating = gating;
        const auto t0 = Clock::now();
        try {
            std::ostringstream detail;
            r.pass = body(detail);
            r.detail = detail.str();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        results.push_back(std::move(r));
    }
};

ProblemParams critical_params(int n, double a) {
    return ProblemParams(n, a, critical_exponent(n, a));
}

double norm_residual_bound(double u, double alpha) { return 1.0 + std::pow(std::abs(u), alpha); }

bool criterion_bubble_residual(std::ostringstream& out, double tol_scale, std::uint64_t seed) {
    struct Case {
        int n;
        double a, t;
    };
    const Case cases[] = {{1, 1.25, 0.5}, {1, 1.5, 1.0}, {2, 1.5, 2.0}, {2, 2.0, 1.0},
                          {3, 1.25, 0.5}};
    Rng rng(seed);
    const double tol = 1e-8 * tol_scale;
    double worst = 0.0;
    for (const Case& c : cases) {
        const ProblemParams p = critical_params(c.n, c.a);
        Vec x0(c.n);
        for (int i = 0; i < c.n; ++i) x0[i] = rng.uniform(-1.0, 1.0);
        const BubbleParams b(c.t, x0);
        const ScalarField u = bubble_field(p, b);
        for (int s = 0; s < 10000; ++s) {
            Vec xy(c.n + 1);
            for (int i = 0; i < c.n; ++i) xy[i] = rng.uniform(-5.0, 5.0);
            xy[c.n] = rng.uniform(0.0, 5.0);
            const double res = residual_001(u, p, xy);
            const double scaled = std::abs(res) / norm_residual_bound(u.value(xy), p.alpha());
            worst = std::max(worst, scaled);
        }
    }
    out << "max normalized residual " << worst << " (tol " << tol << ")";
    return worst <= tol;
}

bool criterion_generalized_bubble(std::ostringstream& out, double tol_scale,
                                  std::uint64_t seed) {
    Rng rng(seed + 1);
    const double tol = 1e-8 * tol_scale;
    double worst = 0.0;
    const std::vector<std::vector<double>> drifts = {{1.5, 1.25}, {1.2, 1.3, 1.5}};
    for (const auto& av : drifts) {
        double asum = 0.0;
        for (double ai : av) asum += ai;
        const int n = 1;
        GeneralizedParams gp(n, av, critical_exponent(n, asum));
        Vec x0 = Vec::Zero(n);
        x0[0] = rng.uniform(-0.5, 0.5);
        const BubbleParams b(1.0, x0);
        const ScalarField u = bubble_field_multi(gp, b);
        const int m = gp.m();
        for (int s = 0; s < 2000; ++s) {
            Vec pt(n + m);
            pt[0] = rng.uniform(-4.0, 4.0);
            for (int i = 0; i < m; ++i)
                pt[n + i] = (s % 5 == 0 && i == 0) ? 0.0 : rng.uniform(0.0, 4.0);
            worst = std::max(worst, std::abs(residual_003(u, gp, pt)));
        }
    }
    out << "max residual " << worst << " (tol " << tol << ")";
    return worst <= tol;
}

bool criterion_fichera_model(std::ostringstream& out, double tol_scale) {
    const double tol = 1e-12 * tol_scale;
    bool ok = true;
    for (double drift : {2.0, 3.0}) {
        const OperatorField op = model_operator(drift, 2.0);
        const FicheraReport rep = exponent_window(op, 1000);
        double worst = 0.0;
        for (const auto& s : rep.samples) worst = std::max(worst, std::abs(s.g - (drift - 1.0)));
        const double expected_hi = (3.0 + 2.0 * drift) / (2.0 * drift - 1.0);
        const bool window_exact = rep.window_hi == expected_hi;
        ok = ok && worst <= tol && rep.samples.size() >= 1000 && window_exact;
        out << "drift " << drift << ": max|g-(a-1)| = " << worst << ", window_hi "
            << rep.window_hi << (window_exact ? " (exact)" : " (MISMATCH)") << "; ";
    }
    return ok;
}

bool criterion_kelvin_chain(std::ostringstream& out, double tol_scale, std::uint64_t seed) {
    const ProblemParams p = critical_params(1, 1.5);
    const BubbleParams b(1.0, Vec::Zero(1));
    const ScalarField ubar = cylindrical_lift(bubble_field(p, b));
    const ScalarField v = kelvin(p, ubar);

    Rng rng(seed + 2);
    double worst_res = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const double r = rng.uniform(0.2, 5.0);
        Vec dir = rng.unit_vector(2);
        dir[1] = std::abs(dir[1]);  // stay in the closed upper half-space
        worst_res = std::max(worst_res, std::abs(residual_halfspace(v, p, r * dir)));
    }

    const ScalarField vv = kelvin(p, v);
    double worst_inv = 0.0;
    for (int s = 0; s < 200; ++s) {
        const double r = rng.uniform(0.3, 3.0);
        Vec dir = rng.unit_vector(2);
        dir[1] = std::abs(dir[1]);
        const Vec q = r * dir;
        worst_inv = std::max(worst_inv, std::abs(vv.value(q) - ubar.value(q)));
    }
    out << "eq-104 residual " << worst_res << " (tol " << 1e-7 * tol_scale
        << "), involution defect " << worst_inv << " (tol " << 1e-10 * tol_scale << ")";
    return worst_res <= 1e-7 * tol_scale && worst_inv <= 1e-10 * tol_scale;
}

bool criterion_kernel(std::ostringstream& out, double tol_scale, std::uint64_t seed) {
    Rng rng(seed + 3);
    const double tol = 1e-9 * tol_scale;
    double worst = 0.0;
    const struct {
        int n;
        double a, lambda0;
    } cases[] = {{1, 1.5, 0.0}, {1, 2.0, 0.7}, {2, 1.25, -0.3}, {2, 1.75, 1.1}, {3, 1.5, 0.4}};
    for (const auto& c : cases) {
        const ProblemParams p(c.n, c.a, 2.0);
        int done = 0;
        while (done < 200) {
            const int d = c.n + 1;
            Vec q = rng.uniform_box(Vec::Constant(d, -3.0), Vec::Constant(d, 3.0));
            Vec sing = Vec::Zero(d);
            sing[0] = c.lambda0;
            if ((q - sing).norm() < 0.3) continue;
            worst = std::max(worst, std::abs(kernel_h_eval(p, c.lambda0, q).residual));
            ++done;
        }
    }
    out << "max kernel residual " << worst << " (tol " << tol << ")";
    return worst <= tol;
}

bool criterion_max_principle(std::ostringstream& out, double tol_scale, std::uint64_t seed) {
    const ProblemParams p(1, 1.5, 2.0);
    for (int c : {17, 65, 129}) {
        const Grid g(1, -1.0, 1.0, 1.0, {c, c});
        const auto cert = max_principle_check(assemble(p, g));
        if (!cert.pass) {
            out << "certificate failed on " << c << "x" << c << ": " << cert.detail;
            return false;
        }
    }
    Rng rng(seed + 4);
    const Grid g(1, -1.0, 1.0, 1.0, {33, 33});
    const DiscreteOperator op = assemble(p, g);
    double worst_min = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        GridField rhs(g), bdry(g);
        for (int i = 0; i < g.total(); ++i) {
            rhs[i] = op.kinds[static_cast<size_t>(i)] == NodeKind::Dirichlet
                         ? 0.0
                         : -rng.uniform(0.0, 1.0);
            bdry[i] = rng.uniform(0.0, 1.0);
        }
        const GridField u = solve_linear(op, rhs, bdry);
        for (double v : u.values) worst_min = std::min(worst_min, v);
    }
    out << "certificates pass up to 129x129; min over 20 trials " << worst_min << " (tol -"
        << 1e-9 * tol_scale << ")";
    return worst_min >= -1e-9 * tol_scale;
}

bool criterion_convergence(std::ostringstream& out, double tol_scale, std::uint64_t) {
    const ProblemParams p = critical_params(1, 1.5);
    const BubbleParams b(2.0, Vec::Zero(1));
    std::vector<double> errs;
    for (int c : {33, 65, 129}) {
        const Grid g(1, -1.0, 1.0, 1.0, {c, c});
        const GridField exact = GridField::sample(
            g, [&](const Vec& q) { return bubble_jet(p, b, q, true).value; });
        NewtonTrace trace;
        const GridField u = solve_semilinear(p, g, exact, exact, 12, &trace);
        double err = 0.0;
        for (int i = 0; i < g.total(); ++i) err = std::max(err, std::abs(u[i] - exact[i]));
        errs.push_back(err);
        if (!trace.converged) {
            out << "Newton failed to converge on " << c << "x" << c;
            return false;
        }
    }
    const double o1 = std::log2(errs[0] / errs[1]);
    const double o2 = std::log2(errs[1] / errs[2]);
    out << "errors " << errs[0] << " -> " << errs[1] << " -> " << errs[2] << ", orders " << o1
        << ", " << o2;
    const double lo = 0.9 / tol_scale, hi = 2.2 * tol_scale;
    return o1 >= lo && o1 <= hi && o2 >= lo && o2 <= hi;
}

bool criterion_moving_plane(std::ostringstream& out, double, std::uint64_t) {
    const ProblemParams p = critical_params(1, 1.5);
    Vec x0(1);
    x0[0] = 0.7;
    const ScalarField ubar = cylindrical_lift(bubble_field(p, BubbleParams(1.0, x0)));
    auto v = [ubar](const Vec& q) { return ubar.value(q); };

    GapSampling s;
    s.box_lo = Vec::Constant(2, -4.0);
    s.box_hi = Vec::Constant(2, 4.0);
    s.samples = 4096;
    const double step = 0.05;
    const PlaneScanResult res = critical_plane(v, 0, -0.5, 2.5, step, s);

    bool gaps_positive = true;
    for (size_t i = 0; i < res.lambdas.size(); ++i)
        if (res.lambdas[i] >= res.lambda0 + 2.0 * step && res.gaps[i] <= 0.0)
            gaps_positive = false;
    const double extra = reflection_gap(v, res.lambda0 + 2.0 * step, s);
    out << "lambda0 = " << res.lambda0 << " (target 0.7 +- " << step << "), gap at +2h "
        << extra;
    return std::abs(res.lambda0 - 0.7) <= step && gaps_positive && extra > 0.0;
}

bool criterion_asymptotic_fit(std::ostringstream& out, double tol_scale, std::uint64_t seed) {
    const ProblemParams p = critical_params(1, 1.5);
    const BubbleParams b(1.0, Vec::Zero(1));
    const ScalarField ubar = cylindrical_lift(bubble_field(p, b));
    const ScalarField v = kelvin(p, ubar);
    auto vv = [v](const Vec& q) { return v.value(q); };

    Rng rng(seed + 5);
    const std::vector<double> radii = {50, 100, 200, 400, 800, 1600};
    const AsymptoticFit fit = kelvin_asymptotic_fit(vv, p, radii, 32, rng);
    const double expected = ubar.value(Vec::Zero(2));  // 2 sqrt(2)
    const double rel = std::abs(fit.coeffs.a0 - expected) / expected;
    out << "a0 = " << fit.coeffs.a0 << ", expected " << expected << ", rel err " << rel
        << " (tol " << 1e-4 * tol_scale << ")";
    return rel <= 1e-4 * tol_scale && fit.coeffs.a0 > 0.0;
}

bool criterion_norms(std::ostringstream& out, double tol_scale, std::uint64_t seed) {
    Rng rng(seed + 6);
    // Self-adjointness and positivity of the multiplier on random data.
    PeriodicGridField f({32}, {2.0 * M_PI}, 8, 1.0);
    PeriodicGridField g = f;
    for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
    for (auto& v : g.values) v = rng.uniform(-1.0, 1.0);
    const PeriodicGridField lf = lambda1(f);
    const PeriodicGridField lg = lambda1(g);
    double ip1 = 0.0, ip2 = 0.0, ipff = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) {
        ip1 += lf.values[i] * g.values[i];
        ip2 += f.values[i] * lg.values[i];
        ipff += lf.values[i] * f.values[i];
    }
    const double sa_defect = std::abs(ip1 - ip2) / f.values.size();
    const bool sa_ok = sa_defect <= 1e-10 * tol_scale && ipff >= -1e-10 * tol_scale;

    // Lambda1 applied twice against the one-pass |xi|^2 multiplier.
    PeriodicGridField trig({64}, {2.0 * M_PI}, 8, 1.0);
    trig = PeriodicGridField::sample({64}, {2.0 * M_PI}, 8, 1.0, [](const Vec& x, double) {
        return std::sin(3.0 * x[0]) + 0.5 * std::cos(5.0 * x[0]);
    });
    const PeriodicGridField twice = lambda1(lambda1(trig));
    const PeriodicGridField lap = lambda1_pow(trig, 2.0);
    double lap_defect = 0.0;
    for (size_t i = 0; i < trig.values.size(); ++i)
        lap_defect = std::max(lap_defect, std::abs(twice.values[i] - lap.values[i]));
    const bool lap_ok = lap_defect <= 1e-10 * tol_scale;

    // Separable closed forms for I_2.
    const PeriodicGridField sep = PeriodicGridField::sample(
        {64}, {2.0 * M_PI}, 16001, 20.0,
        [](const Vec& x, double y) { return std::exp(-y) * std::sin(x[0]); });
    const NormReport rep = iq_norm(sep, 2.0);
    const double pi = M_PI;
    const double expected[5] = {std::sqrt(pi / 4.0), std::sqrt(pi / 2.0), std::sqrt(pi / 4.0),
                                std::sqrt(pi / 2.0), std::sqrt(pi / 2.0)};
    double iq_defect = 0.0;
    for (int i = 0; i < 5; ++i)
        iq_defect = std::max(iq_defect, std::abs(rep.terms[static_cast<size_t>(i)].value - expected[i]));
    const bool iq_ok = iq_defect <= 1e-6 * tol_scale;

    // Weighted Sobolev norms with exact low-degree answers.
    ScalarField one = constant_field(2, 1.0);
    ScalarField yfield = coordinate_field(2, 1);
    const Vec lo = Vec::Zero(2), hi = Vec::Ones(2);
    const double n1 = weighted_sobolev_norm(one, 0.5, 2.0, lo, hi, {8, 8});
    const double n2 = weighted_sobolev_norm(yfield, 0.5, 2.0, lo, hi, {8, 8});
    const double ws_defect =
        std::max(std::abs(n1 * n1 - 0.5), std::abs(n2 * n2 - 0.75));
    const bool ws_ok = ws_defect <= 1e-10 * tol_scale;

    out << "self-adjoint defect " << sa_defect << ", lambda1^2 vs -lap " << lap_defect
        << ", I_2 defect " << iq_defect << ", weighted Sobolev defect " << ws_defect;
    return sa_ok && lap_ok && iq_ok && ws_ok;
}

// Manufactured instance of the p2-degenerate equation for the energy checker.
struct EnergyInstance {
    ScalarField u;
    EnergyCoeffs coeffs;
};

EnergyInstance make_energy_instance() {
    ScalarField u;
    u.dim = 2;
    u.jet = [](const Vec& p) {
        const double c = std::cos(p[0]), s = std::sin(p[0]), e = std::exp(-p[1]);
        Jet j = Jet::zero(2);
        j.value = c * (1.0 + p[1]) * e;
        j.grad[0] = -s * (1.0 + p[1]) * e;
        j.grad[1] = c * e * (1.0 - (1.0 + p[1]));
        j.hess(0, 0) = -c * (1.0 + p[1]) * e;
        j.hess(0, 1) = -s * e * (1.0 - (1.0 + p[1]));
        j.hess(1, 0) = j.hess(0, 1);
        j.hess(1, 1) = c * e * ((1.0 + p[1]) - 2.0);
        return j;
    };
    EnergyCoeffs c;
    c.B11 = poly2_field({{1.0, 0, 0}, {0.1, 0, 1}});
    c.B12 = poly2_field({{0.2, 0, 0}, {0.1, 1, 0}});
    c.B1 = poly2_field({{0.3, 1, 0}});
    c.B2 = poly2_field({{3.0, 0, 0}, {0.1, 0, 1}});
    const ScalarField uu = u;
    const ScalarField b11 = c.B11, b12 = c.B12, b1 = c.B1, b2 = c.B2;
    c.f = [uu, b11, b12, b1, b2](const Vec& p) {
        const Jet j = uu.jet(p);
        return -(p[1] * j.hess(1, 1) + b11.jet(p).value * j.hess(0, 0) +
                 2.0 * p[1] * b12.jet(p).value * j.hess(0, 1) + b1.jet(p).value * j.grad[0] +
                 b2.jet(p).value * j.grad[1]);
    };
    return {u, c};
}

bool criterion_energy_identity(std::ostringstream& out, double tol_scale, std::uint64_t) {
    const EnergyInstance inst = make_energy_instance();
    const double r = 1.0;
    const double eps_fixed = r / 8.0;

    std::vector<double> defects;
    for (int cells : {64, 128, 256}) {
        const EnergyReport rep =
            energy_estimate_check(inst.u, inst.coeffs, r, cells, {eps_fixed});
        defects.push_back(rep.probes[0].defect);
    }
    const bool decay = defects[1] <= 0.6 * tol_scale * defects[0] &&
                       defects[2] <= 0.6 * tol_scale * defects[1];

    const int cells = 256;
    const double h = r / cells;
    const EnergyReport sweep =
        energy_estimate_check(inst.u, inst.coeffs, r, cells, {2 * h, 4 * h, 8 * h});
    bool bounded = true;
    const double full = sweep.lhs_sqrt_term + sweep.lhs_p1_term;
    for (const auto& probe : sweep.probes) {
        const double lhs = probe.lhs_sqrt_term + probe.lhs_p1_term;
        bounded = bounded && std::isfinite(lhs) && lhs <= full + 1e-9;
    }
    out << "identity defects " << defects[0] << " -> " << defects[1] << " -> " << defects[2]
        << ", sweep LHS bounded by " << full;
    return decay && bounded;
}

bool criterion_liouville_probe(std::ostringstream& out, double, std::uint64_t seed) {
    const ProblemParams p(1, 1.5, 2.0);  // subcritical
    const Grid g(1, -2.0, 2.0, 4.0, {21, 21});
    int good = 0;
    for (int trial = 0; trial < 10; ++trial) {
        Rng rng(seed + 100 + static_cast<std::uint64_t>(trial));
        const double amp = rng.uniform(0.05, 0.2);
        const GridField zero(g);
        const GridField bump = GridField::sample(g, [&](const Vec& q) {
            const double dx = q[0], dy = q[1] - 1.0;
            return amp * std::exp(-(dx * dx + dy * dy) / 0.5);
        });
        try {
            const GridField u = solve_semilinear(p, g, zero, bump, 40);
            if (u.max_abs() <= 1e-6) ++good;
        } catch (const std::exception&) {
            // nonconvergence counts as a failed seed, recorded below
        }
    }
    out << good << "/10 seeds decayed to the trivial solution";
    return good == 10;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(double tol_scale, std::uint64_t seed) {
    Runner r;
    r.tol_scale = tol_scale;
    r.seed = seed;

    r.run(1, "bubble residual", true,
          [&](std::ostringstream& o) { return criterion_bubble_residual(o, tol_scale, seed); });
    r.run(2, "generalized bubble residual", true, [&](std::ostringstream& o) {
        return criterion_generalized_bubble(o, tol_scale, seed);
    });
    r.run(3, "fichera model value", true,
          [&](std::ostringstream& o) { return criterion_fichera_model(o, tol_scale); });
    r.run(4, "kelvin chain", true,
          [&](std::ostringstream& o) { return criterion_kelvin_chain(o, tol_scale, seed); });
    r.run(5, "kernel harmonicity", true,
          [&](std::ostringstream& o) { return criterion_kernel(o, tol_scale, seed); });
    r.run(6, "discrete maximum principle", true,
          [&](std::ostringstream& o) { return criterion_max_principle(o, tol_scale, seed); });
    r.run(7, "manufactured-solution convergence", true,
          [&](std::ostringstream& o) { return criterion_convergence(o, tol_scale, seed); });
    r.run(8, "moving plane recovery", true,
          [&](std::ostringstream& o) { return criterion_moving_plane(o, tol_scale, seed); });
    r.run(9, "asymptotic fit", true,
          [&](std::ostringstream& o) { return criterion_asymptotic_fit(o, tol_scale, seed); });
    r.run(10, "norm machinery", true,
          [&](std::ostringstream& o) { return criterion_norms(o, tol_scale, seed); });
    r.run(11, "energy identity", true,
          [&](std::ostringstream& o) { return criterion_energy_identity(o, tol_scale, seed); });
    r.run(12, "liouville evidence (non-gating)", false,
          [&](std::ostringstream& o) { return criterion_liouville_probe(o, tol_scale, seed); });
    return r.results;
}

bool acceptance_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (r.gating && !r.pass) return false;
    return true;
}

}  // namespace degell
