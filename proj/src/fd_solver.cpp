#include "degell/fd_solver.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "degell/exact_solutions.hpp"

namespace degell {

Grid::Grid(int n_, double x_lo_, double x_hi_, double y_hi_, std::vector<int> counts_)
    : n(n_), x_lo(x_lo_), x_hi(x_hi_), y_hi(y_hi_), counts(std::move(counts_)) {
    if (n < 1) throw std::invalid_argument("Grid: n must be >= 1");
    if (counts.size() != static_cast<size_t>(n + 1))
        throw std::invalid_argument("Grid: need one node count per axis");
    for (int c : counts)
        if (c < 3) throw std::invalid_argument("Grid: fewer than 3 nodes on an axis");
    if (!(x_hi > x_lo) || !(y_hi > 0.0))
        throw std::invalid_argument("Grid: spacings must be positive");
}

int Grid::total() const {
    int t = 1;
    for (int c : counts) t *= c;
    return t;
}

int Grid::index(const std::vector<int>& multi) const {
    int flat = 0, stride = 1;
    for (int ax = 0; ax < axes(); ++ax) {
        flat += multi[static_cast<size_t>(ax)] * stride;
        stride *= counts[static_cast<size_t>(ax)];
    }
    return flat;
}

std::vector<int> Grid::unpack(int flat) const {
    std::vector<int> multi(static_cast<size_t>(axes()));
    for (int ax = 0; ax < axes(); ++ax) {
        multi[static_cast<size_t>(ax)] = flat % counts[static_cast<size_t>(ax)];
        flat /= counts[static_cast<size_t>(ax)];
    }
    return multi;
}

Vec Grid::point(const std::vector<int>& multi) const {
    Vec p(axes());
    for (int ax = 0; ax < n; ++ax) p[ax] = x_lo + multi[static_cast<size_t>(ax)] * hx(ax);
    p[n] = multi[static_cast<size_t>(n)] * hy();
    return p;
}

Vec Grid::point(int flat) const { return point(unpack(flat)); }

bool Grid::same_layout(const Grid& o) const {
    return n == o.n && x_lo == o.x_lo && x_hi == o.x_hi && y_hi == o.y_hi && counts == o.counts;
}

GridField::GridField(const Grid& g) : grid(g), values(static_cast<size_t>(g.total()), 0.0) {}

GridField GridField::sample(const Grid& g, const std::function<double(const Vec&)>& f) {
    GridField u(g);
    for (int i = 0; i < g.total(); ++i) u[i] = f(g.point(i));
    return u;
}

bool GridField::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

bool GridField::inside(const Vec& p) const {
    for (int ax = 0; ax < grid.n; ++ax)
        if (p[ax] < grid.x_lo || p[ax] > grid.x_hi) return false;
    return p[grid.n] >= 0.0 && p[grid.n] <= grid.y_hi;
}

double GridField::interpolate(const Vec& p) const {
    if (!inside(p)) throw std::domain_error("GridField::interpolate: point outside the box");
    const int axes = grid.axes();
    std::vector<int> base(static_cast<size_t>(axes));
    std::vector<double> w(static_cast<size_t>(axes));
    for (int ax = 0; ax < axes; ++ax) {
        const double lo = ax < grid.n ? grid.x_lo : 0.0;
        const double h = ax < grid.n ? grid.hx(ax) : grid.hy();
        const int cmax = grid.counts[static_cast<size_t>(ax)] - 1;
        double s = (p[ax] - lo) / h;
        int i = static_cast<int>(std::floor(s));
        if (i >= cmax) i = cmax - 1;
        if (i < 0) i = 0;
        base[static_cast<size_t>(ax)] = i;
        w[static_cast<size_t>(ax)] = std::min(std::max(s - i, 0.0), 1.0);
    }
    double acc = 0.0;
    const int corners = 1 << axes;
    std::vector<int> multi(static_cast<size_t>(axes));
    for (int c = 0; c < corners; ++c) {
        double weight = 1.0;
        for (int ax = 0; ax < axes; ++ax) {
            const bool hi = (c >> ax) & 1;
            multi[static_cast<size_t>(ax)] = base[static_cast<size_t>(ax)] + (hi ? 1 : 0);
            weight *= hi ? w[static_cast<size_t>(ax)] : 1.0 - w[static_cast<size_t>(ax)];
        }
        if (weight != 0.0) acc += weight * values[static_cast<size_t>(grid.index(multi))];
    }
    return acc;
}

double GridField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

namespace {

std::vector<NodeKind> classify_nodes(const Grid& g) {
    std::vector<NodeKind> kinds(static_cast<size_t>(g.total()));
    for (int i = 0; i < g.total(); ++i) {
        const auto multi = g.unpack(i);
        bool dirichlet = multi[static_cast<size_t>(g.n)] == g.counts[static_cast<size_t>(g.n)] - 1;
        for (int ax = 0; ax < g.n && !dirichlet; ++ax)
            dirichlet = multi[static_cast<size_t>(ax)] == 0 ||
                        multi[static_cast<size_t>(ax)] == g.counts[static_cast<size_t>(ax)] - 1;
        if (dirichlet)
            kinds[static_cast<size_t>(i)] = NodeKind::Dirichlet;
        else if (multi[static_cast<size_t>(g.n)] == 0)
            kinds[static_cast<size_t>(i)] = NodeKind::DegenerateFace;
        else
            kinds[static_cast<size_t>(i)] = NodeKind::Interior;
    }
    return kinds;
}

}  // namespace

GridField DiscreteOperator::apply(const GridField& u) const {
    if (!u.grid.same_layout(grid)) throw std::invalid_argument("apply: grid mismatch");
    GridField out(grid);
    Eigen::Map<const Eigen::VectorXd> uv(u.values.data(), static_cast<long>(u.values.size()));
    Eigen::VectorXd r = L * uv;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = r[static_cast<long>(i)];
    return out;
}

DiscreteOperator assemble(const ProblemParams& p, const Grid& g, DriftScheme drift) {
    if (g.n != p.n()) throw std::invalid_argument("assemble: grid and params disagree on n");
    const int total = g.total();
    const double a = p.a();
    const double hy = g.hy();

    DiscreteOperator op{g, p, drift, {}, classify_nodes(g)};
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(total) * static_cast<size_t>(2 * g.n + 3));

    for (int i = 0; i < total; ++i) {
        const NodeKind kind = op.kinds[static_cast<size_t>(i)];
        if (kind == NodeKind::Dirichlet) {
            trip.emplace_back(i, i, 1.0);
            continue;
        }
        auto multi = g.unpack(i);
        const double y = multi[static_cast<size_t>(g.n)] * hy;
        double diag = 0.0;

        for (int ax = 0; ax < g.n; ++ax) {
            const double c = 1.0 / (g.hx(ax) * g.hx(ax));
            auto nb = multi;
            nb[static_cast<size_t>(ax)] -= 1;
            trip.emplace_back(i, g.index(nb), c);
            nb[static_cast<size_t>(ax)] += 2;
            trip.emplace_back(i, g.index(nb), c);
            diag -= 2.0 * c;
        }

        auto up = multi;
        up[static_cast<size_t>(g.n)] += 1;
        const int i_up = g.index(up);

        if (kind == NodeKind::Interior) {
            auto dn = multi;
            dn[static_cast<size_t>(g.n)] -= 1;
            const int i_dn = g.index(dn);
            const double cyy = y / (hy * hy);
            diag -= 2.0 * cyy;
            if (drift == DriftScheme::Upwind) {
                trip.emplace_back(i, i_dn, cyy);
                trip.emplace_back(i, i_up, cyy + a / hy);
                diag -= a / hy;
            } else {
                trip.emplace_back(i, i_dn, cyy - a / (2.0 * hy));
                trip.emplace_back(i, i_up, cyy + a / (2.0 * hy));
            }
        } else {  // degenerate face: y = 0 removes the y u_yy term
            trip.emplace_back(i, i_up, a / hy);
            diag -= a / hy;
        }
        trip.emplace_back(i, i, diag);
    }

    op.L.resize(total, total);
    op.L.setFromTriplets(trip.begin(), trip.end());
    op.L.makeCompressed();
    return op;
}

MaxPrincipleCertificate max_principle_check(const DiscreteOperator& op) {
    MaxPrincipleCertificate cert;
    cert.pass = true;
    for (int i = 0; i < op.L.outerSize(); ++i) {
        if (op.kinds[static_cast<size_t>(i)] == NodeKind::Dirichlet) continue;
        double diag = 0.0, rowsum = 0.0, scale = 0.0;
        bool bad = false;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(op.L, i); it; ++it) {
            const double m = -it.value();  // inspect -L
            rowsum += m;
            scale = std::max(scale, std::abs(m));
            if (it.col() == i)
                diag = m;
            else if (m > 0.0)
                bad = true;
        }
        const double tol = 1e-12 * scale;
        if (!(diag > 0.0) || rowsum < -tol) bad = true;
        if (bad) {
            cert.pass = false;
            cert.offending_rows.push_back(i);
        }
    }
    if (!cert.pass) {
        std::ostringstream d;
        d << cert.offending_rows.size() << " rows violate the -L sign pattern";
        cert.detail = d.str();
    } else {
        cert.detail = "positive diagonal, nonpositive off-diagonals, nonnegative row sums";
    }
    return cert;
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

Eigen::VectorXd sparse_direct_solve(const SpMat& M, const Eigen::VectorXd& b,
                                    const char* who) {
    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(M);
    lu.factorize(M);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error(std::string(who) + ": sparse factorization failed (singular)");
    Eigen::VectorXd u = lu.solve(b);
    const double bnorm = b.lpNorm<Eigen::Infinity>();
    const double rel = (M * u - b).lpNorm<Eigen::Infinity>() / (bnorm > 0.0 ? bnorm : 1.0);
    if (!(rel <= 1e-10)) {
        std::ostringstream msg;
        msg << who << ": relative residual " << rel << " exceeds 1e-10";
        throw std::runtime_error(msg.str());
    }
    return u;
}

}  // namespace

GridField solve_linear(const DiscreteOperator& op, const GridField& rhs,
                       const GridField& dirichlet) {
    if (!rhs.grid.same_layout(op.grid) || !dirichlet.grid.same_layout(op.grid))
        throw std::invalid_argument("solve_linear: grid mismatch");
    if (!rhs.all_finite() || !dirichlet.all_finite())
        throw std::invalid_argument("solve_linear: non-finite data");

    const int total = op.grid.total();
    // Assemble M = -L on equation rows (the M-matrix), identity on data rows.
    SpMat M(total, total);
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd b(total);
    for (int i = 0; i < total; ++i) {
        if (op.kinds[static_cast<size_t>(i)] == NodeKind::Dirichlet) {
            trip.emplace_back(i, i, 1.0);
            b[i] = dirichlet[i];
            continue;
        }
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(op.L, i); it; ++it)
            trip.emplace_back(i, static_cast<int>(it.col()), -it.value());
        b[i] = -rhs[i];
    }
    M.setFromTriplets(trip.begin(), trip.end());
    M.makeCompressed();

    const Eigen::VectorXd u = sparse_direct_solve(M, b, "solve_linear");
    GridField out(op.grid);
    for (int i = 0; i < total; ++i) out[i] = u[i];
    return out;
}

GridField solve_semilinear(const ProblemParams& p, const Grid& g, const GridField& dirichlet,
                           const GridField& initial_guess, int max_newton, NewtonTrace* trace) {
    if (!dirichlet.grid.same_layout(g) || !initial_guess.grid.same_layout(g))
        throw std::invalid_argument("solve_semilinear: grid mismatch");
    for (double v : initial_guess.values)
        if (v < 0.0) throw std::invalid_argument("solve_semilinear: initial guess must be >= 0");

    const DiscreteOperator op = assemble(p, g);
    const int total = g.total();
    const double alpha = p.alpha();

    Eigen::VectorXd u(total);
    for (int i = 0; i < total; ++i)
        u[i] = op.kinds[static_cast<size_t>(i)] == NodeKind::Dirichlet ? dirichlet[i]
                                                                       : initial_guess[i];
    NewtonTrace local;
    NewtonTrace& tr = trace ? *trace : local;
    tr = NewtonTrace{};

    auto residual = [&](const Eigen::VectorXd& w) {
        Eigen::VectorXd F = op.L * w;
        for (int i = 0; i < total; ++i) {
            if (op.kinds[static_cast<size_t>(i)] == NodeKind::Dirichlet) {
                F[i] = 0.0;
            } else {
                F[i] += std::pow(std::max(w[i], 0.0), alpha);
            }
        }
        return F;
    };

    for (int k = 0; k < max_newton; ++k) {
        const Eigen::VectorXd F = residual(u);

        SpMat J(total, total);
        std::vector<Eigen::Triplet<double>> trip;
        for (int i = 0; i < total; ++i) {
            if (op.kinds[static_cast<size_t>(i)] == NodeKind::Dirichlet) {
                trip.emplace_back(i, i, 1.0);
                continue;
            }
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(op.L, i); it;
                 ++it)
                trip.emplace_back(i, static_cast<int>(it.col()), it.value());
            trip.emplace_back(i, i, alpha * std::pow(std::max(u[i], 0.0), alpha - 1.0));
        }
        J.setFromTriplets(trip.begin(), trip.end());
        J.makeCompressed();

        Eigen::SparseLU<SpMat> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("solve_semilinear: Newton matrix factorization failed");
        const Eigen::VectorXd delta = lu.solve(-F);

        u += delta;
        const double dn = delta.lpNorm<Eigen::Infinity>();
        tr.update_norms.push_back(dn);
        tr.iterations = k + 1;

        const size_t h = tr.update_norms.size();
        if (h >= 4 && tr.update_norms[h - 1] > tr.update_norms[h - 2] &&
            tr.update_norms[h - 2] > tr.update_norms[h - 3] &&
            tr.update_norms[h - 3] > tr.update_norms[h - 4]) {
            std::ostringstream msg;
            msg << "solve_semilinear: update norms grew three steps in a row:";
            for (double v : tr.update_norms) msg << ' ' << v;
            throw std::runtime_error(msg.str());
        }
        if (dn <= 1e-10) {
            tr.converged = true;
            break;
        }
    }
    tr.final_residual_inf = residual(u).lpNorm<Eigen::Infinity>();

    GridField out(g);
    for (int i = 0; i < total; ++i) out[i] = u[i];
    return out;
}

HopfReport hopf_probe(const DiscreteOperator& op, const GridField& u, double tol) {
    if (!u.grid.same_layout(op.grid)) throw std::invalid_argument("hopf_probe: grid mismatch");
    const GridField Lu = op.apply(u);
    for (int i = 0; i < op.grid.total(); ++i) {
        if (op.kinds[static_cast<size_t>(i)] != NodeKind::Dirichlet &&
            Lu[i] > tol * (1.0 + std::abs(u[i])))
            throw std::invalid_argument("hopf_probe: field is not discretely superharmonic");
    }

    double umin = std::numeric_limits<double>::infinity();
    double umax = -std::numeric_limits<double>::infinity();
    for (double v : u.values) {
        umin = std::min(umin, v);
        umax = std::max(umax, v);
    }
    if (umax - umin <= tol * (1.0 + std::abs(umax)))
        return {HopfReport::Kind::Constant, -1, umin, 0.0};

    double bmin = std::numeric_limits<double>::infinity();
    int barg = -1;
    double imin = std::numeric_limits<double>::infinity();
    int iarg = -1;
    for (int i = 0; i < op.grid.total(); ++i) {
        if (op.kinds[static_cast<size_t>(i)] == NodeKind::Dirichlet) {
            if (u[i] < bmin) {
                bmin = u[i];
                barg = i;
            }
        } else if (u[i] < imin) {
            imin = u[i];
            iarg = i;
        }
    }
    if (imin < bmin - tol * (1.0 + std::abs(bmin)))
        return {HopfReport::Kind::InteriorMin, iarg, imin, imin - bmin};

    // Inward one-sided difference quotient at the boundary minimum; corners
    // take the least favorable axis.
    const Grid& g = op.grid;
    auto multi = g.unpack(barg);
    double margin = std::numeric_limits<double>::infinity();
    for (int ax = 0; ax < g.axes(); ++ax) {
        const int c = g.counts[static_cast<size_t>(ax)];
        const double h = ax < g.n ? g.hx(ax) : g.hy();
        int dir = 0;
        if (ax < g.n && multi[static_cast<size_t>(ax)] == 0) dir = 1;
        if (multi[static_cast<size_t>(ax)] == c - 1) dir = -1;
        if (ax == g.n && multi[static_cast<size_t>(ax)] == 0) dir = 0;  // face is not data
        if (dir == 0) continue;
        auto nb = multi;
        nb[static_cast<size_t>(ax)] += dir;
        margin = std::min(margin, (u[g.index(nb)] - u[barg]) / h);
    }
    return {HopfReport::Kind::BoundaryMin, barg, bmin, margin};
}

}  // namespace degell
