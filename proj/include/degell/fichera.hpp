#ifndef DEGELL_FICHERA_HPP
#define DEGELL_FICHERA_HPP

#include <vector>

#include "degell/operator_field.hpp"

namespace degell {

struct FicheraSample {
    Eigen::Vector2d x;
    double g;
};

struct FicheraReport {
    std::vector<FicheraSample> samples;
    double sup_g = 0.0, inf_g = 0.0;
    double a = 0.0;  // sup g + 1
    double b = 0.0;  // inf g
    double window_lo = 1.0;
    double window_hi = 0.0;  // (3 + 2a) / (2a - 1)
    int resolution = 0;
    double error_bar = 0.0;  // largest jump between adjacent boundary samples
};

/// g(x) = (b^i phi_i - d_j a^{ij} phi_i) / (d_k(a^{ij} phi_i phi_j) phi^k),
/// phi^k = phi_k / |grad phi|^2, the boundary ratio steering admissible
/// nonlinearities. The numerator is the Fichera number of the operator.
double fichera_ratio(const OperatorField& op, const Eigen::Vector2d& x);

/// Traces {phi = 0} column by column (bisection to 1e-12), evaluates g on the
/// samples and reports extrema plus the nonlinearity window (1, (3+2a)/(2a-1)).
FicheraReport exponent_window(const OperatorField& op, int resolution);

/// A22(y) = int_0^1 d_{y2}(atil22)(y1, t y2) dt by adaptive quadrature.
double a22_factor(const ScalarField& atil22, const Eigen::Vector2d& y, double abs_tol = 1e-10);

/// Coefficients of the flattened equation as fields of y = (x1, phi(x)).
/// x2(y) is recovered per evaluation by 1-D root finding; the jets carry
/// value and gradient (second derivatives are not propagated).
struct FlattenedOperator {
    ScalarField atil22;
    std::function<double(const Eigen::Vector2d&)> atil11;
    std::function<double(const Eigen::Vector2d&)> btil2;
};

FlattenedOperator flatten(const OperatorField& op);

struct Lemma41Row {
    double y1;
    double a22_factor;
    double btil2;
    double ratio;
    bool pass;
};

struct Lemma41Report {
    std::vector<Lemma41Row> rows;
    bool pass = false;
    double worst_ratio_margin = 0.0;  // min(ratio - threshold)
    double worst_a22 = 0.0;           // min A22
    double threshold = 2.0;
};

/// Samples the flattened boundary {y2 = 0} over [y1_lo, y1_hi] and checks
/// A22 > 0 and btil2 / A22 > threshold at every sample.
Lemma41Report lemma41_check(const FlattenedOperator& flat, double y1_lo, double y1_hi,
                            int samples, double threshold = 2.0);
Lemma41Report lemma41_check(const OperatorField& op, double y1_lo, double y1_hi, int samples,
                            double threshold = 2.0);

/// Boundary points of {phi = 0} found along vertical grid columns.
std::vector<Eigen::Vector2d> trace_boundary(const OperatorField& op, int resolution);

}  // namespace degell

#endif
