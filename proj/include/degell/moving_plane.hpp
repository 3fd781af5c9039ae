#ifndef DEGELL_MOVING_PLANE_HPP
#define DEGELL_MOVING_PLANE_HPP

#include <vector>

#include "degell/fd_solver.hpp"
#include "degell/field.hpp"
#include "degell/params.hpp"
#include "degell/rng.hpp"

namespace degell {

/// How the half-space Sigma_lambda = {p[axis] < lambda} gets sampled.
/// Points closer to the plane than plane_margin (relative to the box extent)
/// are skipped: their gap tends to 0 with the distance, so at double
/// precision they carry rounding noise instead of sign information.
struct GapSampling {
    Vec box_lo, box_hi;           // sampling box for quasi-random points
    int samples = 2048;
    int axis = 0;
    double exclusion = 1e-3;      // radius kept clear around singular points
    double plane_margin = 1e-6;   // relative to box_hi - box_lo along the axis
    std::vector<Vec> singular_points;
};

/// min over sampled Sigma_lambda of v(x) - v(x^lambda).
double reflection_gap(const std::function<double(const Vec&)>& v, double lambda,
                      const GapSampling& s);

struct GridGapInfo {
    int used = 0;
    int clipped = 0;  // nodes whose reflection left the box
};

/// Grid version: every node left of the plane, reflected values interpolated.
double reflection_gap(const GridField& v, double lambda, int axis, double exclusion,
                      const std::vector<Vec>& singular_points, GridGapInfo* info = nullptr);

struct PlaneScanResult {
    std::vector<double> lambdas;
    std::vector<double> gaps;
    double lambda0 = 0.0;
    bool bracketed = false;
    bool monotone_positive_above = false;  // gap > 0 at every scanned lambda > lambda0
    double gap_at_lambda0 = 0.0;
    double gap_above = 0.0;  // certification probe at lambda0 + step
    double refinement = 0.0; // final bisection width, step / 2^6
};

/// Scans lambda downward from the top of the range, stops at the first
/// nonpositive gap and refines the bracket by six bisection steps.
PlaneScanResult critical_plane(const std::function<double(const Vec&)>& v, int axis,
                               double scan_lo, double scan_hi, double step,
                               const GapSampling& sampling);

struct MinCheckReport {
    bool precondition_ok = false;
    double worst_operator_sign = 0.0;  // max of L(v) over probes (want <= tol)
    double interior_inf = 0.0;
    double boundary_inf = 0.0;
    bool pass = false;
    double margin = 0.0;  // interior_inf - boundary_inf
};

/// Checks inf over the punctured unit ball (radii down to inner_radius)
/// against inf over the unit sphere for a field with -L(v) >= 0, where
/// L = Lap + (2a-1)/s d_s. Sampled, not exhausted.
MinCheckReport lemma25_min_check(const ScalarField& v, const ProblemParams& p,
                                 double inner_radius, int samples, Rng& rng,
                                 double sign_tol = 1e-8);

/// Grid analogue: interior/face infimum versus Dirichlet-boundary infimum.
MinCheckReport grid_min_check(const DiscreteOperator& op, const GridField& u,
                              double tol = 1e-8);

struct SymmetryStats {
    double max_deviation = 0.0;
    double mean_deviation = 0.0;
    int pairs = 0;
};

/// Deviation of v over random same-radius pairs about a candidate center;
/// the center must sit on the symmetry plane (last coordinate zero).
SymmetryStats symmetry_report(const std::function<double(const Vec&)>& v, const Vec& center,
                              double max_radius, int pairs, Rng& rng);

}  // namespace degell

#endif
