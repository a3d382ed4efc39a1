#pragma once

#include <iosfwd>

#include "semipos/curvature.hpp"

namespace semipos {

// The Hopf surface H_{a,b} = (C^2 \ {0}) / <(z,w) -> (az,bw)> with
// |a| >= |b| > 1, worked on its covering space.  Phi is the positive root of
// |z|^2 Phi^{-alpha} + |w|^2 Phi^{alpha-2} = 1, alpha = 2 k1/(k1+k2).
struct HopfParams {
    Complex a, b;
    double k1 = 0.0, k2 = 0.0, alpha = 1.0;
    double lambda1 = 1.0, lambda2 = 1.0;  // metric coefficients of the diagonal family

    // Canonical coefficients 1/alpha^2, 1/(2-alpha)^2 make the metric Gauduchon.
    static HopfParams create(Complex a, Complex b);
    static HopfParams create(Complex a, Complex b, double lambda1, double lambda2);

    double mu(int k) const { return k == 0 ? -alpha : alpha - 2.0; }  // exponent of f_k
    double f(int k, double phi) const {
        return (k == 0 ? lambda1 : lambda2) * std::pow(phi, mu(k));
    }
};

struct PhiValue {
    double phi = 0.0;
    double residual = 0.0;  // |z|^2 Phi^-a + |w|^2 Phi^{a-2} - 1
    double delta = 0.0;     // a |z|^2 Phi^-a + (2-a) |w|^2 Phi^{a-2}
    Eigen::Vector2cd dphi;  // (d_z Phi, d_w Phi)
    CMat m_log;             // 2x2 matrix of ddbar log Phi (rank one, PSD)
    CMat m_wedge;           // 2x2 matrix of dPhi wedge dbarPhi (rank one, PSD)
};

// Unique positive root by bracketing in t = log Phi plus safeguarded Newton,
// relative tolerance 1e-13.  alpha = 1 short-circuits to |z|^2 + |w|^2.
// Throws std::invalid_argument at (z,w) = (0,0).
double solve_phi(const HopfParams& params, Complex z, Complex w);
// The iterative path without the alpha = 1 shortcut; lets the closed form
// serve as an oracle for the solver.
double solve_phi_newton(const HopfParams& params, Complex z, Complex w);

// Closed-form derivative pack: dPhi = (dbar-free part + ...)/(Phi^{a-1} Delta),
// ddbar log Phi = Phi^{-2}/Delta^3 * v v^H with v = ((a-2) w, a z).
PhiValue phi_closed_forms(const HopfParams& params, Complex z, Complex w);

// The four closed-form summands of ddbar Phi from the derivation of the
// matrix identities; their sum must reproduce the Hessian of Phi.
struct PhiHessianSplit {
    CMat a, b, c, d;
    CMat sum() const { return a + b + c + d; }
};
PhiHessianSplit phi_hessian_split(const HopfParams& params, Complex z, Complex w);
CMat phi_hessian(const HopfParams& params, Complex z, Complex w);  // Phi M_log + M_wedge/Phi

// omega = i (lambda1 Phi^-a dz dzbar + lambda2 Phi^{a-2} dw dwbar) as a
// MetricField with closed-form derivative callbacks.
MetricField gauduchon_metric(const HopfParams& params);

struct GauduchonReport {
    double max_scaled_residual_closed = 0.0;
    double max_scaled_residual_fd = 0.0;
    int grid_points = 0;
};
// Residual d_w d_wbar f1 + d_z d_zbar f2 of ddbar omega, scaled by the size
// of its two terms; zero exactly at the canonical coefficients.  Both the
// closed-form route and the finite-difference route are evaluated.
GauduchonReport verify_gauduchon(const HopfParams& params, const std::vector<CVec>& grid);

struct HopfCurvatureResult {
    CurvatureTensor tensor;  // identity frame
    PositivityReport griffiths;
};
// R_{i jbar k lbar} = (ddbar log Phi)_{i jbar} (3-2k a + ...) f_k delta_{kl}:
// the product of the rank-one PSD base factor with a positive diagonal.
HopfCurvatureResult hopf_curvature(const HopfParams& params, const CVec& point,
                                   std::uint64_t seed = 1);

// Ric(omega) = 2 ddbar log Phi for every lambda1, lambda2 > 0.
CMat ricci_form(const HopfParams& params, const CVec& point);

struct RelativeTangentReport {
    double min_eigenvalue_with_margin = 0.0;  // min lambda_min(F + eps Omega)
    double min_curvature_eigenvalue = 0.0;    // min lambda_min(F)
    double lambda2 = 0.0;
    int doublings = 0;
    bool satisfied = false;
};

// One sample of the relative-tangent curvature: the 3x3 matrices of F and of
// the reference form omega_Y in chart coordinates (z, w, u), the chart picked
// by the dominant component of the fiber direction [W1 : W2].
struct RelativePointSample {
    CMat curvature;
    CMat reference;
};
RelativePointSample relative_tangent_at(const HopfParams& params, const CVec& zw,
                                        const CVec& direction);

// Curvature F = 2 ddbar log(lambda1^{-1} Phi^{a-1} |W1|^2 + lambda2^{-1}
// Phi^{1-a} |W2|^2) of the relative tangent bundle metric on P(T*X), checked
// against F >= -eps omega_Y for the product reference form omega_Y
// (canonical Gauduchon base, Fubini-Study fiber).  Fiber directions sample
// the W2 = 0 axis and a generic spread; on the invariant W1 = 0 axis the
// family keeps a lambda-independent negative base block for alpha > 1, so
// the bound is only attainable away from it.
RelativeTangentReport relative_tangent_bound(const HopfParams& params, double eps,
                                             const std::vector<CVec>& base_grid,
                                             int fiber_samples);

// Doubles lambda2 (from lambda1) until the bound holds; gives up after
// max_doublings.
RelativeTangentReport find_lambda2(const HopfParams& params, double eps,
                                   const std::vector<CVec>& base_grid, int fiber_samples,
                                   int max_doublings = 40);

struct EquivarianceGap {
    double phi_gap = 0.0;    // |Phi(az,bw) - |a||b| Phi(z,w)| / Phi
    double zterm_gap = 0.0;  // deck invariance of |z|^2 Phi^-alpha
};
EquivarianceGap deck_equivariance_gap(const HopfParams& params, Complex z, Complex w);

// Deterministic covering-space sample grid, radii spread over [0.5, 1.8].
std::vector<CVec> hopf_grid(int points_per_axis);

// CSV rows: Re z, Im z, Re w, Im w, Phi, Delta, min_eig_Mlog, det_Mlog,
// gauduchon_residual, griffiths_min.
void hopf_grid_csv(const HopfParams& params, const std::vector<CVec>& grid,
                   std::ostream& out);

}  // namespace semipos
