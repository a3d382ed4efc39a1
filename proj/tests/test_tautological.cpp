#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semipos/tautological.hpp"

using namespace semipos;

namespace {

CVec cvec(std::initializer_list<Complex> entries) {
    CVec v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (Complex c : entries) v[i++] = c;
    return v;
}

// Independent route: the full chart Hessian of log(W^H h^{-1} W) on the
// projectivized bundle, with h in normal form at the base point (the frame
// the curvature formula is stated in).  Its base block matches
// taut_curvature_at, the cross block vanishes, and the fiber block carries
// the documented |a_n|^2 chart factor.
struct ChartHessian {
    CMat zz, zw, ww;
};

ChartHessian taut_fd_hessian(const MetricField& metric, const CVec& point, const CVec& a) {
    const int n = metric.dim;
    const auto field = normal_frame_metric(metric, point);
    const CVec w0 = (a.head(n - 1) / a[n - 1]).eval();

    auto f = [&](const CVec& zeta) {
        const CVec z = zeta.head(n);
        CVec w(n);
        w.head(n - 1) = zeta.tail(n - 1);
        w[n - 1] = 1.0;
        const CMat h = field(z);
        return Complex(std::log((w.adjoint() * h.inverse() * w)(0, 0).real()));
    };

    CVec zeta0 = CVec::Zero(2 * n - 1);
    zeta0.tail(n - 1) = w0;
    CMat full(2 * n - 1, 2 * n - 1);
    for (int p = 0; p < 2 * n - 1; ++p)
        for (int q = 0; q < 2 * n - 1; ++q) full(p, q) = wirtinger_dd(f, zeta0, p, q);
    return {full.topLeftCorner(n, n), full.topRightCorner(n, n - 1),
            full.bottomRightCorner(n - 1, n - 1)};
}

}  // namespace

TEST_CASE("induced metric value") {
    CHECK(induced_metric_value(CMat::Identity(2, 2), cvec({1, 0})) == doctest::Approx(1.0));
    CMat h = CMat::Zero(2, 2);
    h(0, 0) = 2;
    h(1, 1) = 1;
    CHECK(induced_metric_value(h, cvec({1, 0})) == doctest::Approx(2.0));

    // Homogeneity of degree -2.
    CVec w = cvec({Complex(0.3, 1.2), Complex(-0.5, 0.1)});
    CHECK(induced_metric_value(h, 2.0 * w) ==
          doctest::Approx(induced_metric_value(h, w) / 4.0));

    CHECK_THROWS_AS(induced_metric_value(h, CVec::Zero(2)), std::invalid_argument);
    CMat sing = CMat::Zero(2, 2);
    sing(0, 0) = 1;
    CHECK_THROWS_AS(induced_metric_value(sing, w), std::domain_error);
}

TEST_CASE("taut_curvature_at spot values") {
    // Zero curvature: base block zero, fiber block I - u u^H with spectrum in [0,1].
    CurvatureTensor zero(2, 2, SymmetryTag::kahler);
    FiberDirection mixed(cvec({Complex(0.6, 0.2), Complex(0.7, -0.1)}));
    TautCurvature t0 = taut_curvature_at(zero, mixed);
    CHECK(t0.form.topLeftCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);
    const double fib = t0.form(2, 2).real();
    CHECK(fib >= 0.0);
    CHECK(fib <= 1.0);
    CHECK(t0.min_eigenvalue <= 1e-15);

    // FS on P^2 at a = (0,1): diag(1,2,1).
    CurvatureTensor fs = fubini_study_curvature_raw(CVec::Zero(2));
    TautCurvature t1 = taut_curvature_at(fs, FiberDirection(cvec({0, 1})));
    CMat expected = CMat::Zero(3, 3);
    expected(0, 0) = 1;
    expected(1, 1) = 2;
    expected(2, 2) = 1;
    CHECK((t1.form - expected).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(t1.min_relative_eigenvalue == doctest::Approx(1.0));

    // Product FS at a = (0,1): diag(0,2,1), min eigenvalue 0 (degenerate
    // cross-factor direction).
    CurvatureTensor prod = product_fubini_study_curvature_raw({1, 1}, CVec::Zero(2));
    TautCurvature t2 = taut_curvature_at(prod, FiberDirection(cvec({0, 1})));
    CHECK(std::abs(t2.form(0, 0)) <= 1e-15);
    CHECK(t2.form(1, 1).real() == doctest::Approx(2.0));
    CHECK(t2.form(2, 2).real() == doctest::Approx(1.0));
    CHECK(std::abs(t2.min_eigenvalue) <= 1e-12);
    CHECK(std::abs(t2.min_relative_eigenvalue) <= 1e-12);

    // Chart violation.
    CHECK_THROWS_AS(taut_curvature_at(fs, FiberDirection(cvec({1, 0}))),
                    std::invalid_argument);
}

TEST_CASE("fiber block stays a projection for every direction") {
    std::mt19937_64 rng(14);
    CurvatureTensor r = random_hermitian_tensor(3, 3, 77);
    for (int trial = 0; trial < 40; ++trial) {
        CVec a = random_unit_vector(3, rng);
        if (std::abs(a[2]) < 0.1) continue;
        TautCurvature tc = taut_curvature_at(r, FiberDirection(a));
        Eigen::SelfAdjointEigenSolver<CMat> es(tc.form.bottomRightCorner(2, 2));
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-12);
        CHECK(tc.form.topRightCorner(3, 2).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("consistency with the FD Hessian of the induced metric") {
    std::mt19937_64 rng(21);
    std::vector<MetricField> metrics{fubini_study_metric(2), product_fubini_study_metric({1, 1}),
                                     flat_metric(2)};
    for (auto& metric : metrics) {
        for (int trial = 0; trial < 6; ++trial) {
            CVec point = 0.4 * random_unit_vector(2, rng);
            CVec a = random_unit_vector(2, rng);
            if (std::abs(a[1]) < 0.3) a = cvec({a[0], 1.0}) / std::hypot(std::abs(a[0]), 1.0);
            const CurvatureTensor r = chern_curvature(metric, point);
            const TautCurvature tc = taut_curvature_at(r, FiberDirection(a));
            const ChartHessian fd = taut_fd_hessian(metric, point, a);

            const double an2 = std::norm(a[1]);
            CHECK((fd.zz - tc.form.topLeftCorner(2, 2)).cwiseAbs().maxCoeff() <= 1e-5);
            CHECK(fd.zw.cwiseAbs().maxCoeff() <= 1e-5);
            CHECK((fd.ww - an2 * tc.form.bottomRightCorner(1, 1)).cwiseAbs().maxCoeff() <=
                  1e-5);
        }
    }
}

TEST_CASE("positivity transfer: Griffiths semi-positive tensors give PSD forms") {
    std::mt19937_64 rng(31);
    CurvatureTensor fs = fubini_study_curvature_raw(CVec::Zero(3));
    CurvatureTensor tw(2, 2, SymmetryTag::hermitian);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    tw.block(i, j)(k, l) = (i == l && k == j) ? 1.0 : 0.0;

    auto check_tensor = [&](const CurvatureTensor& r) {
        REQUIRE(griffiths_min(r, 5).min_value >= -1e-9);
        const int n = r.base_dim();
        for (const CVec& a : fiber_sample_directions(n, 40)) {
            Eigen::Index imax = 0;
            a.cwiseAbs().maxCoeff(&imax);
            std::vector<int> perm(n);
            for (int k = 0; k < n; ++k) perm[k] = k;
            std::swap(perm[imax], perm[n - 1]);
            CVec ap(n);
            for (int k = 0; k < n; ++k) ap[k] = a[perm[k]];
            TautCurvature tc = taut_curvature_at(permute_tensor(r, perm), FiberDirection(ap));
            CHECK(tc.min_eigenvalue >= -1e-8);
        }
    };
    check_tensor(fs);
    check_tensor(tw);
    check_tensor(product_fubini_study_curvature_raw({1, 2}, CVec::Zero(3)));
}

TEST_CASE("taut_positivity_scan") {
    std::mt19937_64 rng(8);
    std::vector<CVec> grid;
    for (int k = 0; k < 9; ++k) grid.push_back(0.5 * random_unit_vector(2, rng));

    // Flat torus: base blocks vanish, minimum relative eigenvalue 0.
    TautScanReport flat = taut_positivity_scan(flat_metric(2), grid, 24);
    CHECK(std::abs(flat.min_relative_eigenvalue) <= 1e-10);

    // FS on P^2: diag(1,2,1)-type relative spectra everywhere by homogeneity.
    TautScanReport fs = taut_positivity_scan(fubini_study_metric(2), grid, 24);
    CHECK(fs.min_relative_eigenvalue >= 1.0 - 1e-6);
    CHECK(fs.strictly_positive_sample);

    // Product FS: degenerate factor-aligned directions, strictly positive
    // generic ones (quasi-positive but not ample).
    TautScanReport prod = taut_positivity_scan(product_fubini_study_metric({1, 1}), grid, 24);
    CHECK(prod.min_relative_eigenvalue >= -1e-8);
    CHECK(prod.min_relative_eigenvalue <= 1e-6);
    CHECK(prod.best_sample_min > 0.1);
    CHECK(prod.strictly_positive_sample);
}

TEST_CASE("normal_frame_check") {
    NormalFrameReport flat = normal_frame_check(flat_metric(2), CVec::Zero(2));
    CHECK(flat.pass);
    CHECK(flat.max_deviation <= 1e-10);

    // FS at the origin: coefficient is minus the delta-delta pattern.
    NormalFrameReport fs0 = normal_frame_check(fubini_study_metric(2), CVec::Zero(2));
    CHECK(fs0.pass);

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 4; ++trial) {
        const CVec p = 0.6 * random_unit_vector(2, rng);
        CHECK(normal_frame_check(fubini_study_metric(2), p).pass);
        CHECK(normal_frame_check(product_fubini_study_metric({1, 1}), p).pass);
    }
}

TEST_CASE("fiber samples include axes and stay unit") {
    auto dirs = fiber_sample_directions(3, 25);
    REQUIRE(static_cast<int>(dirs.size()) == 25);
    for (int k = 0; k < 3; ++k) CHECK((dirs[k] - CVec::Unit(3, k)).norm() == 0.0);
    for (const CVec& a : dirs) CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
}
