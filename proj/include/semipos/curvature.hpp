#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "semipos/metric_field.hpp"

namespace semipos {

enum class SymmetryTag { hermitian, kahler };

// Chern curvature R_{i jbar alpha betabar} at a point: n^2 blocks of r x r
// complex matrices, block(i,j)(a,b) = R_{i jbar a bbar}.  Contractions pair
// the first index of each pair with a vector component and the second with
// its conjugate.  Tensors produced by this module are expressed in a frame
// where the metric is the identity at the evaluation point.
class CurvatureTensor {
  public:
    CurvatureTensor(int base_dim, int fiber_rank, SymmetryTag tag);

    int base_dim() const { return n_; }
    int fiber_rank() const { return r_; }
    SymmetryTag tag() const { return tag_; }

    CMat& block(int i, int j) { return blocks_[i * n_ + j]; }
    const CMat& block(int i, int j) const { return blocks_[i * n_ + j]; }

    double hermitian_violation() const;  // max |R(i,j) - R(j,i)^H|
    double kahler_violation() const;     // max over the base/fiber swap, r == n only
    double max_abs() const;

    // Projects onto the declared symmetry class.  Throws if the projection
    // moves any entry by more than `guard` (the declared tag was wrong).
    void enforce_symmetry(double guard = 1e-5);

    CurvatureTensor operator*(double c) const;
    CurvatureTensor operator+(const CurvatureTensor& o) const;

  private:
    int n_, r_;
    SymmetryTag tag_;
    std::vector<CMat> blocks_;
};

// Frame change C = L^{-T} (H = L L^H) taking the metric to the identity;
// vector components transform by v' = C^{-1} v.
CMat base_frame_change(const CMat& metric);

// Transforms a tangent-type tensor (r == n), expressed in the coordinate
// frame, into the frame where `metric` becomes the identity.  All four
// indices transform.
CurvatureTensor to_identity_frame(const CurvatureTensor& raw, const CMat& metric);

// R_{i jbar a bbar} = -d_i d_jbar h_{a bbar} + h^{g dbar} (d_i h_{a dbar})(d_jbar h_{g bbar}),
// computed in the coordinate frame and then moved to the identity frame.
// Throws std::domain_error when the metric fails to be positive definite at
// the point and std::runtime_error on non-finite derivative values.
CurvatureTensor chern_curvature(const MetricField& metric, const CVec& point);

// Chern-Ricci form -d_i d_jbar log det h in the coordinate frame.
CMat chern_ricci(const MetricField& metric, const CVec& point);

// sum R_{i jbar a bbar} u^i conj(u^j) v^a conj(v^b); |u| = |v| = 1 within 1e-9.
double bisectional(const CurvatureTensor& R, const CVec& u, const CVec& v);
// H(W) = R(W, Wbar, W, Wbar) for unit W (r == n).
double holomorphic_sectional(const CurvatureTensor& R, const CVec& w);

struct PositivityReport {
    double min_value = 0.0;
    CVec witness_u, witness_v;
    int restarts_used = 0;
    bool converged = false;
    enum class Certificate { negative_witness, heuristic_nonnegative } certificate =
        Certificate::heuristic_nonnegative;
};

// Heuristic minimum of the bisectional form over unit pairs: alternating
// smallest-eigenvector iteration with multi-start.  Negative outcomes carry a
// reproducible witness; nonnegative outcomes are heuristic.
PositivityReport griffiths_min(const CurvatureTensor& R, std::uint64_t seed = 1,
                               int restarts = 32);

// Least eigenvalue of the nr x nr matrix M_{(ia)(jb)} = R_{i jbar a bbar};
// deterministic dense eigensolve.
double nakano_min(const CurvatureTensor& R);

struct SliceCheck {
    bool psd = false;
    double min_eigenvalue = 0.0;
};
// Every fixed-k slice R_{i jbar k kbar} must be PSD when R is Griffiths
// semi-positive.
SliceCheck psd_slice_check(const CurvatureTensor& R, double tol = 1e-8);

struct FlatnessVerdict {
    bool pass = false;
    double max_abs_component = 0.0;
    double ricci_trace_norm = 0.0;
    double bound = 0.0;
};
// Griffiths semi-positivity plus vanishing Ricci trace forces the zero
// tensor: every slice H(a)_{k l} = R(a, abar, k, lbar) is PSD with trace
// Ric(a, abar), a PSD matrix has entries bounded by its trace, and
// polarization over a costs a factor 2.  Hence the bound
// max |R| <= 2 ||Ric||_tr (+ slack for the -tol Griffiths allowance).
// Precondition: griffiths_min(R) >= -tol, established by the caller.
FlatnessVerdict flat_if_ricci_flat(const CurvatureTensor& R, double tol);

// Symmetry-projected random tensors (complex Gaussian data averaged over the
// symmetry group), reproducible from the seed.
CurvatureTensor random_hermitian_tensor(int n, int r, std::uint64_t seed);
CurvatureTensor random_kahler_tensor(int n, std::uint64_t seed);

// Closed-form Fubini-Study curvature R = g(i,j)g(k,l) + g(i,l)g(k,j) in the
// coordinate frame at the given chart point.
CurvatureTensor fubini_study_curvature_raw(const CVec& z);
CurvatureTensor product_fubini_study_curvature_raw(const std::vector<int>& factor_dims,
                                                   const CVec& z);

CVec random_unit_vector(int n, std::mt19937_64& rng);

}  // namespace semipos
