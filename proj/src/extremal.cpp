#include "semipos/extremal.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace semipos {

namespace {

// S(i,j) = sum_{k,l} R(i,j)(k,l) W_k conj(W_l).
CMat sectional_form(const CurvatureTensor& R, const CVec& w) {
    const int n = R.base_dim();
    CMat s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s(i, j) = (w.transpose() * R.block(i, j) * w.conjugate())(0, 0);
    return s;
}

CMat pair_form(const CurvatureTensor& R, const CVec& u) {
    const int n = R.base_dim();
    CMat b = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b += u[i] * std::conj(u[j]) * R.block(i, j);
    return b;
}

double sectional_value(const CurvatureTensor& R, const CVec& w) {
    const CMat s = sectional_form(R, w);
    return (w.transpose() * s * w.conjugate())(0, 0).real();
}

// dH/dW_m; for a kahler-symmetric tensor the two unbarred slots contribute
// equal terms, but both are computed so the formula stays valid in general.
CVec gradient(const CurvatureTensor& R, const CVec& w) {
    const CMat s = sectional_form(R, w);
    const CMat b = pair_form(R, w);
    return s * w.conjugate() + b * w.conjugate();
}

void normalize_phase(CVec& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const Complex c = v[imax];
    if (std::abs(c) > 0) v *= std::conj(c) / std::abs(c);
}

struct DescentResult {
    CVec w;
    double value;
    double grad_norm;
    bool converged;
};

// Tangential part of the descent direction at w.
CVec tangential_gradient(const CurvatureTensor& R, const CVec& w) {
    CVec d = gradient(R, w).conjugate();
    d -= Complex(w.dot(d).real()) * w;
    return d;
}

// Line-search descent bottoms out near |grad| ~ 1e-8: the Armijo decrease it
// would need is below the resolution of H in double precision.  This Newton
// polish solves the stationarity system g_tan = 0 instead; gradient values
// stay machine-accurate, so a few steps reach ~1e-12.
CVec polish_newton(const CurvatureTensor& R, CVec w) {
    const int n = R.base_dim();
    const int dims = 2 * (n - 1);  // tangent modulo the flat global-phase circle
    if (dims == 0) return w;
    const double fd_step = 1e-6;
    for (int iter = 0; iter < 8; ++iter) {
        const auto complement = orthogonal_complement(w);
        std::vector<CVec> dirs;
        for (const CVec& b : complement) {
            dirs.push_back(b);
            dirs.push_back(Complex(0, 1) * b);
        }
        auto g_in_chart = [&](const RVec& t) {
            CVec cand = w;
            for (int a = 0; a < dims; ++a) cand += t[a] * dirs[a];
            cand /= cand.norm();
            const CVec g = tangential_gradient(R, cand);
            RVec out(dims);
            for (int a = 0; a < dims; ++a) out[a] = dirs[a].dot(g).real();
            return out;
        };
        const RVec g0 = g_in_chart(RVec::Zero(dims));
        if (g0.norm() <= 1e-13) break;
        RMat jac(dims, dims);
        for (int a = 0; a < dims; ++a) {
            RVec tp = RVec::Zero(dims), tm = RVec::Zero(dims);
            tp[a] = fd_step;
            tm[a] = -fd_step;
            jac.col(a) = (g_in_chart(tp) - g_in_chart(tm)) / (2.0 * fd_step);
        }
        const RVec delta = jac.colPivHouseholderQr().solve(-g0);
        CVec cand = w;
        for (int a = 0; a < dims; ++a) cand += delta[a] * dirs[a];
        cand /= cand.norm();
        if (tangential_gradient(R, cand).norm() >= tangential_gradient(R, w).norm()) break;
        w = cand;
    }
    return w;
}

DescentResult descend(const CurvatureTensor& R, CVec w, int max_iter, double grad_tol) {
    double value = sectional_value(R, w);
    double step = 0.1;
    double grad_norm = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        const CVec g = gradient(R, w);
        CVec d = g.conjugate();
        d -= Complex(w.dot(d).real()) * w;  // project onto the sphere tangent
        grad_norm = d.norm();
        if (grad_norm <= grad_tol) return {w, value, grad_norm, true};
        bool accepted = false;
        for (int bt = 0; bt < 50; ++bt) {
            CVec cand = w - step * d;
            cand /= cand.norm();
            const double cand_value = sectional_value(R, cand);
            if (cand_value <= value - 0.25 * step * grad_norm * grad_norm) {
                w = cand;
                value = cand_value;
                step *= 1.5;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return {w, value, grad_norm, grad_norm <= grad_tol};
    }
    return {w, value, grad_norm, grad_norm <= grad_tol};
}

}  // namespace

std::vector<CVec> orthogonal_complement(const CVec& e) {
    const Eigen::Index n = e.size();
    // Columns of a unitary completing e, via Householder QR of [e | I].
    CMat m(n, n + 1);
    m.col(0) = e;
    m.block(0, 1, n, n) = CMat::Identity(n, n);
    Eigen::HouseholderQR<CMat> qr(m);
    CMat q = qr.householderQ();
    // First column spans e up to phase; the rest span the complement.
    std::vector<CVec> out;
    for (Eigen::Index k = 1; k < n; ++k) out.push_back(q.col(k));
    return out;
}

DirectionWitness extremize_sectional(const CurvatureTensor& R, DirectionWitness::Mode mode,
                                     std::uint64_t seed, int restarts) {
    if (R.tag() != SymmetryTag::kahler)
        throw std::invalid_argument("extremize_sectional expects a kahler-tagged tensor");
    const bool maximize = mode == DirectionWitness::Mode::max;
    const CurvatureTensor work = maximize ? R * -1.0 : R;

    const int n = R.base_dim();
    std::mt19937_64 rng(seed);
    const double grad_tol = 1e-8;

    DescentResult best{CVec::Unit(n, 0), std::numeric_limits<double>::infinity(), 0.0, false};
    for (int trial = 0; trial < restarts; ++trial) {
        CVec w0 = trial < n ? CVec(CVec::Unit(n, trial)) : random_unit_vector(n, rng);
        DescentResult res = descend(work, w0, 2000, grad_tol);
        if (res.value < best.value) best = res;
    }
    // Final fine perturbation pass around the best point.
    for (int k = 0; k < 8; ++k) {
        CVec w0 = best.w + 1e-3 * random_unit_vector(n, rng);
        w0 /= w0.norm();
        DescentResult res = descend(work, w0, 2000, grad_tol);
        if (res.value < best.value) best = res;
    }
    best.w = polish_newton(work, best.w);

    DirectionWitness witness;
    witness.direction = best.w;
    normalize_phase(witness.direction);
    witness.value = sectional_value(R, witness.direction);
    witness.mode = mode;
    witness.restarts_used = restarts;
    witness.seed = seed;
    witness.projected_gradient_norm = tangential_gradient(work, witness.direction).norm();
    witness.converged = witness.projected_gradient_norm <= 1e-9;
    return witness;
}

namespace {

ExtremalInequalityReport verify_at_extremum(const CurvatureTensor& R, DirectionWitness::Mode mode,
                               int samples, std::uint64_t seed, double tol) {
    ExtremalInequalityReport report;
    report.extremizer = extremize_sectional(R, mode, seed);
    const CVec& e = report.extremizer.direction;
    const double he = report.extremizer.value;
    const double sign = mode == DirectionWitness::Mode::min ? 1.0 : -1.0;

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const int n = R.base_dim();

    // Inequality against (1 + |<W,e>|^2) H(e) over random unit W.
    report.worst_slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const CVec w = random_unit_vector(n, rng);
        const double lhs = 2.0 * bisectional(R, e, w);
        const double overlap = std::abs(e.dot(w));
        const double rhs = (1.0 + overlap * overlap) * he;
        report.worst_slack = std::min(report.worst_slack, sign * (lhs - rhs));
    }

    // First-order vanishing R(e,ebar,e,Wbar) = 0 for W orthogonal to e; the
    // form is conjugate-linear in W, so the complement basis plus samples on
    // the complement cover it.
    const CMat b = pair_form(R, e);
    const auto complement = orthogonal_complement(e);
    report.max_first_order = 0.0;
    auto first_order = [&](const CVec& w) {
        return std::abs((e.transpose() * b * w.conjugate())(0, 0));
    };
    for (const CVec& w : complement)
        report.max_first_order = std::max(report.max_first_order, first_order(w));

    // 2 R(e,ebar,e2,e2bar) vs H(e) over the complement sphere.
    report.worst_orthogonal_slack = std::numeric_limits<double>::infinity();
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int ortho_samples = std::max(samples, static_cast<int>(complement.size()));
    for (int k = 0; k < ortho_samples; ++k) {
        CVec e2;
        if (k < static_cast<int>(complement.size())) {
            e2 = complement[k];
        } else {
            e2 = CVec::Zero(n);
            for (const CVec& c : complement)
                e2 += Complex(gauss(rng), gauss(rng)) * c;
            if (e2.norm() < 1e-8) continue;
            e2 /= e2.norm();
        }
        report.max_first_order = std::max(report.max_first_order, first_order(e2));
        const double slack = sign * (2.0 * bisectional(R, e, e2) - he);
        report.worst_orthogonal_slack = std::min(report.worst_orthogonal_slack, slack);
    }

    report.holds = report.worst_slack >= -tol && report.max_first_order <= 1e-6 &&
                   report.worst_orthogonal_slack >= -tol;
    return report;
}

}  // namespace

ExtremalInequalityReport verify_minimizer_inequality(const CurvatureTensor& R, int samples,
                                                     std::uint64_t seed, double tol) {
    return verify_at_extremum(R, DirectionWitness::Mode::min, samples, seed, tol);
}

ExtremalInequalityReport verify_maximizer_inequality(const CurvatureTensor& R, int samples,
                                                     std::uint64_t seed, double tol) {
    return verify_at_extremum(R, DirectionWitness::Mode::max, samples, seed, tol);
}

FilterReport filter_positivity(const CurvatureTensor& R, int samples, std::uint64_t seed,
                               double tol) {
    if (griffiths_min(R, seed).min_value < -1e-9)
        throw std::domain_error("filter_positivity requires a Griffiths semi-positive tensor");
    FilterReport report;
    report.minimizer = extremize_sectional(R, DirectionWitness::Mode::min, seed);
    if (report.minimizer.value <= 0)
        throw std::domain_error("filter_positivity requires H(e1) > 0 at the minimizer");
    report.bound = 0.5 * report.minimizer.value;

    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbull);
    const CVec& e = report.minimizer.direction;
    report.min_observed = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const CVec w = random_unit_vector(R.base_dim(), rng);
        report.min_observed = std::min(report.min_observed, bisectional(R, e, w));
    }
    report.holds = report.min_observed >= report.bound - tol;
    return report;
}

}  // namespace semipos
