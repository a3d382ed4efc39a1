#pragma once

#include "semipos/curvature.hpp"

namespace semipos {

// Induced metric and curvature of the tautological line bundle O_{P(E*)}(1)
// built from a Hermitian metric h on E.

// The fiber point [a_1 : ... : a_n], stored |a| = 1.  Chart-based operations
// require a_n != 0; callers permute coordinates to put a dominant component
// last.
struct FiberDirection {
    CVec a;
    explicit FiberDirection(CVec v) : a(std::move(v)) {
        if (a.size() < 2) throw std::invalid_argument("fiber direction needs dimension >= 2");
        const double norm = a.norm();
        if (norm < 1e-12) throw std::invalid_argument("zero fiber direction");
        a /= norm;
    }
    bool chart_ok() const { return std::abs(a[a.size() - 1]) > 1e-12; }
};

// h^L = 1 / (sum h^{a bbar} W_a conj(W_b)): the quotient metric value on the
// fiber covector W.  Homogeneous of degree -2 in W.
double induced_metric_value(const CMat& h, const CVec& w);

struct TautCurvature {
    // (2n-1) x (2n-1) Hermitian matrix of the curvature (1,1)-form in
    // coordinates (z, w): base block sum R_{i jbar a bbar} a_b conj(a_a),
    // vanishing cross block, fiber block delta_{AB} - a_B conj(a_A) at
    // |a| = 1.  The w-chart Hessian carries an extra |a_n|^2 on the fiber
    // block; this normalization is the |a| = 1 form of the chart statement.
    CMat form;
    double min_eigenvalue;  // spectrum of `form`
    // Spectrum relative to the flat reference (identity base block, fiber
    // Fubini-Study block): the fiber contributes exactly 1, so this isolates
    // the base-curvature content that positivity scans care about.
    double min_relative_eigenvalue;
};

// Requires R in the identity-metric frame and a.chart_ok().
TautCurvature taut_curvature_at(const CurvatureTensor& R, const FiberDirection& a);

// Deterministic fiber directions: a Kronecker low-discrepancy sequence plus
// the coordinate axes (degenerate directions by construction) and balanced
// generic directions.
std::vector<CVec> fiber_sample_directions(int n, int count);

struct TautScanReport {
    double min_relative_eigenvalue = 0.0;  // over every (point, direction)
    double max_eigenvalue_gap = 0.0;       // spread of the form spectrum
    double best_sample_min = 0.0;          // largest per-sample relative minimum
    bool strictly_positive_sample = false;
    int base_points = 0;
    int fiber_count = 0;
};

// Sweeps chern_curvature over the grid and taut_curvature_at over the fiber
// samples; directions are permuted so the dominant component takes the chart
// slot.
TautScanReport taut_positivity_scan(const MetricField& metric,
                                    const std::vector<CVec>& base_grid, int fiber_samples);

struct NormalFrameReport {
    double max_deviation = 0.0;   // |quadratic Taylor coefficient + R| max entry
    double max_linear_term = 0.0; // residual first-order terms after the frame change
    bool pass = false;
};

// Verifies h = id - R z zbar + O(|z|^3) in the normal frame at the point: the
// linear metric derivatives are absorbed by a holomorphic frame change and
// the remaining mixed quadratic coefficient is fitted by finite differences.
NormalFrameReport normal_frame_check(const MetricField& metric, const CVec& point,
                                     double tol = 1e-5);

// The metric field in normal form at `point`: orthonormal coordinates
// (z = point + C z'), frame chosen so the value at 0 is the identity and the
// first derivatives vanish.  The quadratic term is then minus the curvature.
std::function<CMat(const CVec&)> normal_frame_metric(const MetricField& metric,
                                                     const CVec& point);

// Index permutation of a tangent-type tensor; perm[new] = old.
CurvatureTensor permute_tensor(const CurvatureTensor& R, const std::vector<int>& perm);

}  // namespace semipos
