#include "semipos/tautological.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace semipos {

double induced_metric_value(const CMat& h, const CVec& w) {
    if (w.size() != h.rows()) throw std::invalid_argument("covector dimension mismatch");
    if (w.norm() == 0.0) throw std::invalid_argument("zero covector");
    Eigen::LLT<CMat> llt(h);
    if (llt.info() != Eigen::Success) throw std::domain_error("metric not positive definite");
    const double q = (w.adjoint() * h.inverse() * w)(0, 0).real();
    return 1.0 / q;
}

TautCurvature taut_curvature_at(const CurvatureTensor& R, const FiberDirection& dir) {
    if (!dir.chart_ok())
        throw std::invalid_argument("chart requires a_n != 0; permute coordinates first");
    const int n = R.base_dim();
    if (R.fiber_rank() != n || static_cast<int>(dir.a.size()) != n)
        throw std::invalid_argument("dimension mismatch");
    const CVec& a = dir.a;

    const int m = 2 * n - 1;
    CMat form = CMat::Zero(m, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            form(i, j) = (a.adjoint() * R.block(i, j) * a)(0, 0);
    // Fiber block delta_{AB} - a_B conj(a_A) = I - u u^H with u = conj(a_{<n}).
    const CVec u = a.head(n - 1).conjugate();
    form.block(n, n, n - 1, n - 1) = CMat::Identity(n - 1, n - 1) - u * u.adjoint();

    TautCurvature out;
    out.form = form;
    Eigen::SelfAdjointEigenSolver<CMat> es(form);
    out.min_eigenvalue = es.eigenvalues().minCoeff();

    CMat ref = CMat::Identity(m, m);
    ref.block(n, n, n - 1, n - 1) = form.block(n, n, n - 1, n - 1);
    Eigen::GeneralizedSelfAdjointEigenSolver<CMat> ges(form, ref);
    out.min_relative_eigenvalue = ges.eigenvalues().minCoeff();
    return out;
}

std::vector<CVec> fiber_sample_directions(int n, int count) {
    std::vector<CVec> out;
    for (int k = 0; k < n; ++k) out.push_back(CVec::Unit(n, k));
    // Balanced generic directions; they avoid the degenerate axes on product
    // geometries.
    CVec flat = CVec::Constant(n, Complex(1.0, 0.0) / std::sqrt(double(n)));
    out.push_back(flat);
    CVec tilt(n);
    for (int k = 0; k < n; ++k)
        tilt[k] = std::polar(1.0, 0.7 * (k + 1));
    out.push_back(tilt / tilt.norm());

    // Kronecker sequence mapped through Box-Muller.
    static const double roots[] = {2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0};
    auto frac = [](double x) { return x - std::floor(x); };
    for (int k = 1; static_cast<int>(out.size()) < count; ++k) {
        CVec v(n);
        for (int j = 0; j < n; ++j) {
            const double u1 = frac((k + 0.5) * std::sqrt(roots[(2 * j) % 8]));
            const double u2 = frac((k + 0.5) * std::sqrt(roots[(2 * j + 1) % 8]));
            const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-12)));
            v[j] = Complex(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
        }
        if (v.norm() < 1e-9) continue;
        out.push_back(v / v.norm());
    }
    out.resize(std::min<size_t>(out.size(), count));
    return out;
}

CurvatureTensor permute_tensor(const CurvatureTensor& R, const std::vector<int>& perm) {
    const int n = R.base_dim();
    CurvatureTensor out(n, n, R.tag());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    out.block(i, j)(k, l) = R.block(perm[i], perm[j])(perm[k], perm[l]);
    return out;
}

TautScanReport taut_positivity_scan(const MetricField& metric,
                                    const std::vector<CVec>& base_grid, int fiber_samples) {
    const int n = metric.dim;
    TautScanReport report;
    report.min_relative_eigenvalue = std::numeric_limits<double>::infinity();
    report.best_sample_min = -std::numeric_limits<double>::infinity();
    report.base_points = static_cast<int>(base_grid.size());

    const auto directions = fiber_sample_directions(n, fiber_samples);
    report.fiber_count = static_cast<int>(directions.size());

    for (const CVec& z : base_grid) {
        const CurvatureTensor r = chern_curvature(metric, z);
        for (const CVec& a : directions) {
            // Put the dominant component in the chart slot.
            Eigen::Index imax = 0;
            a.cwiseAbs().maxCoeff(&imax);
            std::vector<int> perm(n);
            for (int k = 0; k < n; ++k) perm[k] = k;
            std::swap(perm[imax], perm[n - 1]);
            CVec ap(n);
            for (int k = 0; k < n; ++k) ap[k] = a[perm[k]];

            const TautCurvature tc =
                taut_curvature_at(permute_tensor(r, perm), FiberDirection(ap));
            report.min_relative_eigenvalue =
                std::min(report.min_relative_eigenvalue, tc.min_relative_eigenvalue);
            report.best_sample_min =
                std::max(report.best_sample_min, tc.min_relative_eigenvalue);
            Eigen::SelfAdjointEigenSolver<CMat> es(tc.form);
            report.max_eigenvalue_gap =
                std::max(report.max_eigenvalue_gap,
                         es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff());
        }
    }
    report.strictly_positive_sample = report.best_sample_min > 1e-6;
    return report;
}

std::function<CMat(const CVec&)> normal_frame_metric(const MetricField& metric,
                                                     const CVec& point) {
    const int n = metric.dim;
    const CMat c = base_frame_change(metric.value(point));
    auto framed = [metric, point, c](const CVec& zp) -> CMat {
        return c.transpose() * metric.value(point + c * zp) * c.conjugate();
    };
    // Linear derivatives in the orthonormal coordinates, absorbed by the
    // holomorphic frame change P(z) = I - sum_i A_i^T z^i.
    std::vector<CMat> first(n);
    for (int i = 0; i < n; ++i)
        first[i] = wirtinger_d_scaled(framed, CVec::Zero(n), i, metric.diff);
    return [framed, first, n](const CVec& zp) -> CMat {
        CMat p = CMat::Identity(n, n);
        for (int i = 0; i < n; ++i) p -= first[i].transpose() * zp[i];
        return p.transpose() * framed(zp) * p.conjugate();
    };
}

NormalFrameReport normal_frame_check(const MetricField& metric, const CVec& point,
                                     double tol) {
    const int n = metric.dim;
    const auto field = normal_frame_metric(metric, point);

    NormalFrameReport report;
    for (int i = 0; i < n; ++i) {
        const CMat lin = wirtinger_d_scaled(field, CVec::Zero(n), i, metric.diff);
        report.max_linear_term = std::max(report.max_linear_term, lin.cwiseAbs().maxCoeff());
    }

    const CurvatureTensor r = chern_curvature(metric, point);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CMat q = wirtinger_dd(field, CVec::Zero(n), i, j, metric.diff);
            report.max_deviation =
                std::max(report.max_deviation, (q + r.block(i, j)).cwiseAbs().maxCoeff());
        }
    report.pass = report.max_deviation <= tol && report.max_linear_term <= tol;
    return report;
}

}  // namespace semipos
