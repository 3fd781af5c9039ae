#ifndef DEGELL_FD_SOLVER_HPP
#define DEGELL_FD_SOLVER_HPP

#include <Eigen/Sparse>
#include <vector>

#include "degell/field.hpp"
#include "degell/params.hpp"

namespace degell {

/// Tensor grid on [x_lo, x_hi]^n x [0, y_hi]. The face y = 0 is part of the
/// grid: the equation holds there and no boundary data is ever attached to it.
struct Grid {
    int n = 1;
    double x_lo = -1.0, x_hi = 1.0;
    double y_hi = 1.0;
    std::vector<int> counts;  // per axis, tangential axes first, y last

    Grid(int n_, double x_lo_, double x_hi_, double y_hi_, std::vector<int> counts_);

    double hx(int axis) const { return (x_hi - x_lo) / (counts[static_cast<size_t>(axis)] - 1); }
    double hy() const { return y_hi / (counts.back() - 1); }
    int axes() const { return n + 1; }
    int total() const;
    int index(const std::vector<int>& multi) const;
    std::vector<int> unpack(int flat) const;
    Vec point(const std::vector<int>& multi) const;
    Vec point(int flat) const;
    bool same_layout(const Grid& other) const;
};

struct GridField {
    Grid grid;
    std::vector<double> values;

    explicit GridField(const Grid& g);

    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }

    static GridField zeros(const Grid& g) { return GridField(g); }
    static GridField sample(const Grid& g, const std::function<double(const Vec&)>& f);

    bool all_finite() const;
    bool inside(const Vec& p) const;
    /// Multilinear interpolation; throws std::domain_error outside the box.
    double interpolate(const Vec& p) const;
    double max_abs() const;
};

enum class NodeKind { Interior, DegenerateFace, Dirichlet };
enum class DriftScheme { Upwind, Centered };

struct MaxPrincipleCertificate {
    bool pass = false;
    std::vector<int> offending_rows;
    std::string detail;
};

/// Sparse form of L(u) = y u_yy + a u_y + Lap_x u. Non-Dirichlet rows hold the
/// stencil; Dirichlet rows are identity. The drift is one-sided toward
/// increasing y (both in the interior and on the face row) so that -L keeps
/// the M-matrix sign pattern; Centered exists to demonstrate how that fails.
struct DiscreteOperator {
    Grid grid;
    ProblemParams params;
    DriftScheme drift;
    Eigen::SparseMatrix<double, Eigen::RowMajor> L;
    std::vector<NodeKind> kinds;

    GridField apply(const GridField& u) const;
};

DiscreteOperator assemble(const ProblemParams& p, const Grid& g,
                          DriftScheme drift = DriftScheme::Upwind);

/// Sign-structure certificate for -L: positive diagonal, nonpositive
/// off-diagonal entries and nonnegative row sums on every equation row.
MaxPrincipleCertificate max_principle_check(const DiscreteOperator& op);

/// Solves L(u) = rhs with the given data on the outer (Dirichlet) boundary.
/// Direct sparse factorization; relative residual above 1e-10 is an error.
GridField solve_linear(const DiscreteOperator& op, const GridField& rhs,
                       const GridField& dirichlet);

struct NewtonTrace {
    std::vector<double> update_norms;
    int iterations = 0;
    double final_residual_inf = 0.0;
    bool converged = false;
};

/// Newton iteration for L(u) + u^alpha = 0; negative iterate values are
/// clamped to zero inside the power. Stops when the sup-norm update drops
/// below 1e-10 or after max_newton steps; three straight growing updates
/// abort with the iterate history in the exception text.
GridField solve_semilinear(const ProblemParams& p, const Grid& g, const GridField& dirichlet,
                           const GridField& initial_guess, int max_newton,
                           NewtonTrace* trace = nullptr);

struct HopfReport {
    enum class Kind { BoundaryMin, InteriorMin, Constant };
    Kind kind;
    int node = -1;
    double minimum = 0.0;
    double margin = 0.0;  // inward difference quotient at a boundary minimum
};

/// Inspects a discretely superharmonic field (-L(u) >= 0 checked first) at
/// its minimum: boundary minima report the inward difference quotient.
HopfReport hopf_probe(const DiscreteOperator& op, const GridField& u, double tol = 1e-9);

}  // namespace degell

#endif
