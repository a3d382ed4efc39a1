#pragma once

#include "semipos/curvature.hpp"

namespace semipos {

// Extremizers of the holomorphic sectional curvature H(W) = R(W,Wbar,W,Wbar)
// on the unit sphere, and the first-order consequences that hold at them.

struct DirectionWitness {
    enum class Mode { min, max };
    CVec direction;  // unit, largest-magnitude component real positive
    double value = 0.0;
    Mode mode = Mode::min;
    int restarts_used = 0;
    std::uint64_t seed = 0;
    double projected_gradient_norm = 0.0;
    bool converged = false;
};

// Projected gradient with multi-start plus a final random perturbation pass.
// Requires a kahler-tagged tensor.
DirectionWitness extremize_sectional(const CurvatureTensor& R, DirectionWitness::Mode mode,
                                     std::uint64_t seed, int restarts = 32);

struct ExtremalInequalityReport {
    bool holds = false;
    // min over sampled W of (2 R(e,ebar,W,Wbar) - (1+|<W,e>|^2) H(e)), sign
    // flipped for the maximizer variant so that >= -tol always means "holds".
    double worst_slack = 0.0;
    // max |R(e,ebar,e,Wbar)| over W orthogonal to the extremizer.
    double max_first_order = 0.0;
    // min over e2 orthogonal to e of (2 R(e,ebar,e2,e2bar) - H(e)), flipped
    // for the maximizer variant.
    double worst_orthogonal_slack = 0.0;
    DirectionWitness extremizer;
};

// At the minimizer e1: 2 R(e1,e1bar,W,Wbar) >= (1+|<W,e1>|^2) R(e1,e1bar,e1,e1bar),
// R(e1,e1bar,e1,Wbar) = 0 for W orthogonal to e1, and 2 R(e1,e1bar,e2,e2bar) >= H(e1).
ExtremalInequalityReport verify_minimizer_inequality(const CurvatureTensor& R, int samples,
                                                     std::uint64_t seed, double tol = 1e-7);
// Mirror image at the maximizer, with reversed inequalities.
ExtremalInequalityReport verify_maximizer_inequality(const CurvatureTensor& R, int samples,
                                                     std::uint64_t seed, double tol = 1e-7);

struct FilterReport {
    bool holds = false;
    double bound = 0.0;          // H(e1)/2
    double min_observed = 0.0;   // min over sampled W of R(e1,e1bar,W,Wbar)
    DirectionWitness minimizer;
};

// When H(e1) > 0 at the minimizer of a Griffiths semi-positive tensor,
// R(e1,e1bar,W,Wbar) >= H(e1)/2 for every unit W.  Throws std::domain_error
// when the preconditions fail.
FilterReport filter_positivity(const CurvatureTensor& R, int samples, std::uint64_t seed,
                               double tol = 1e-7);

// Orthonormal basis of the orthogonal complement of the unit vector e.
std::vector<CVec> orthogonal_complement(const CVec& e);

}  // namespace semipos
