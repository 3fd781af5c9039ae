#ifndef DEGELL_NORMS_HPP
#define DEGELL_NORMS_HPP

#include <string>
#include <vector>

#include "degell/field.hpp"
#include "degell/params.hpp"
#include "degell/rng.hpp"

namespace degell {

/// Values on a torus in x (per-axis uniform, endpoint identified with the
/// origin so it is stored once) times a uniform grid on [0, y_hi].
struct PeriodicGridField {
    int n = 1;
    std::vector<int> nx;
    std::vector<double> period;
    int ny = 2;
    double y_hi = 1.0;
    std::vector<double> values;  // axis 0 fastest, y slowest

    PeriodicGridField(std::vector<int> nx_, std::vector<double> period_, int ny_, double y_hi_);

    static PeriodicGridField sample(std::vector<int> nx, std::vector<double> period, int ny,
                                    double y_hi,
                                    const std::function<double(const Vec&, double)>& f);

    int slice_size() const;
    double hx(int axis) const { return period[static_cast<size_t>(axis)] / nx[static_cast<size_t>(axis)]; }
    double hy() const { return y_hi / (ny - 1); }
    int index(int xflat, int yidx) const { return xflat + slice_size() * yidx; }
    double node_weight(int yidx) const;  // trapezoid in y times cell area in x
};

/// Fourier multiplier |xi|^power applied per y-slice; power 1 is the
/// half-Laplacian symbol, power 2 reproduces -Lap_x spectrally. Real output;
/// the largest imaginary leak is returned through max_imag when given.
PeriodicGridField lambda1_pow(const PeriodicGridField& f, double power,
                              double* max_imag = nullptr);
PeriodicGridField lambda1(const PeriodicGridField& f, double* max_imag = nullptr);

struct NormTerm {
    std::string name;
    double value;
};

struct NormReport {
    std::vector<NormTerm> terms;
    double total = 0.0;
    std::string note;
};

/// I_q = ||y v_yy||_q + ||Lambda1^2 v||_q + ||sqrt(y) Lambda1 v_y||_q
///       + ||v_y||_q + ||v||_q, composite trapezoid in y, exact torus sums
/// in x, y-derivatives by 4th order stencils.
NormReport iq_norm(const PeriodicGridField& v, double q);

/// Same constituents measured in the x-Hoelder seminorm at fixed y plus
/// ||v||_inf. Pair sup exhausts the grid up to pair_budget, then samples.
NormReport ibeta_seminorm(const PeriodicGridField& v, double beta,
                          std::size_t pair_budget = 1000000, Rng* rng = nullptr);

/// ( int_U y^(p*alpha) (|Du|^p + |u|^p) )^(1/p) on a box U in the upper half
/// space. The y^(p*alpha) weight is integrated exactly per cell (generalized
/// two-point Gauss in the weighted measure), so cells touching y = 0 need no
/// special casing and low-degree integrands come out exact.
double weighted_sobolev_norm(const ScalarField& u, double alpha, double p, const Vec& lo,
                             const Vec& hi, const std::vector<int>& cells);

// ---- smooth cutoffs --------------------------------------------------------

struct CutoffJet {
    double value, d1, d2;
};

/// C^inf monotone step: 0 for t <= 0, 1 for t >= 1.
CutoffJet smoothstep(double t);

/// Radial bump psi_r: 1 on |p| <= r/2, 0 on |p| >= r.
struct RadialBump {
    double r;
    explicit RadialBump(double r_);
    CutoffJet radial(double rho) const;  // profile and its radial derivatives
    Jet jet(const Vec& p) const;
};

/// eta_eps: 0 on (0, eps], 1 on [2 eps, inf); |d^j eta| <= C_j eps^-j.
struct SmoothStepEps {
    double eps;
    explicit SmoothStepEps(double eps_);
    CutoffJet at(double s) const;
};

// ---- weighted energy identity ----------------------------------------------

/// Coefficients of p2 u_22 + B11 u_11 + 2 p2 B12 u_12 + B1 u_1 + B2 u_2 + f = 0.
struct EnergyCoeffs {
    ScalarField B11, B12, B1, B2;
    std::function<double(const Vec&)> f;
};

struct EnergyIdentityProbe {
    double eps;
    double lhs, rhs, defect;
    double lhs_sqrt_term, lhs_p1_term;
};

struct EnergyReport {
    bool hypothesis_ok = false;
    double min_b11_on_face = 0.0;
    double lhs_sqrt_term = 0.0;  // ||p2^(1/2) psi_r u_2||_L2
    double lhs_p1_term = 0.0;    // ||psi_r u_1||_L2
    double b11_c1 = 0.0, b12_c1 = 0.0, b1_c1 = 0.0, b2_c1 = 0.0;
    double f_inf = 0.0, u_inf = 0.0;
    double ratio = 0.0;  // LHS over 1 + sum of data norms
    std::vector<EnergyIdentityProbe> probes;
};

/// Evaluates the cutoff energy identity obtained by multiplying the equation
/// by psi_{r,eps} u and integrating by parts, for each eps in eps_list, and
/// the data quantities controlling the a priori bound. `cells` is the
/// midpoint-quadrature resolution per axis on [-r,r] x [0,r].
EnergyReport energy_estimate_check(const ScalarField& u, const EnergyCoeffs& coeffs, double r,
                                   int cells, const std::vector<double>& eps_list);

}  // namespace degell

#endif
