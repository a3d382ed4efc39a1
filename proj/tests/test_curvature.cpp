#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semipos/curvature.hpp"

using namespace semipos;

namespace {

CVec chart_point(std::mt19937_64& rng, int n, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    CVec z(n);
    for (int i = 0; i < n; ++i) z[i] = Complex(u(rng), u(rng));
    return z;
}

double tensor_distance(const CurvatureTensor& a, const CurvatureTensor& b) {
    double d = 0.0;
    for (int i = 0; i < a.base_dim(); ++i)
        for (int j = 0; j < a.base_dim(); ++j)
            d = std::max(d, (a.block(i, j) - b.block(i, j)).cwiseAbs().maxCoeff());
    return d;
}

CVec unit(std::initializer_list<Complex> entries) {
    CVec v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (Complex c : entries) v[i++] = c;
    return v / v.norm();
}

}  // namespace

TEST_CASE("flat metric has zero curvature and zero Ricci") {
    MetricField flat = flat_metric(2);
    CurvatureTensor r = chern_curvature(flat, CVec::Zero(2));
    CHECK(r.max_abs() <= 1e-10);
    CHECK(chern_ricci(flat, CVec::Zero(2)).cwiseAbs().maxCoeff() <= 1e-10);

    // Constant non-identity metrics are flat too.
    CMat h0(2, 2);
    h0 << Complex(2, 0), Complex(0.3, 0.1), Complex(0.3, -0.1), Complex(1, 0);
    CurvatureTensor r2 = chern_curvature(constant_metric(h0), CVec::Zero(2));
    CHECK(r2.max_abs() <= 1e-10);

    // Same through the finite-difference path (callbacks stripped).
    MetricField fd = constant_metric(h0);
    fd.d1 = nullptr;
    fd.d2 = nullptr;
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        CurvatureTensor rf = chern_curvature(fd, chart_point(rng, 2, 1.0));
        CHECK(rf.max_abs() <= 1e-10);
        CHECK(chern_ricci(fd, CVec::Zero(2)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("Fubini-Study curvature at the chart origin") {
    MetricField fs = fubini_study_metric(2);
    CurvatureTensor r = chern_curvature(fs, CVec::Zero(2));
    CHECK(r.tag() == SymmetryTag::kahler);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    double expected = (i == j && k == l ? 1.0 : 0.0) +
                                      (i == l && k == j ? 1.0 : 0.0);
                    CHECK(std::abs(r.block(i, j)(k, l) - expected) <= 1e-8);
                }
}

TEST_CASE("FD curvature matches closed forms at random chart points") {
    std::mt19937_64 rng(31);
    MetricField fs = fubini_study_metric(2);
    MetricField prod = product_fubini_study_metric({1, 1});
    for (int trial = 0; trial < 100; ++trial) {
        CVec z = chart_point(rng, 2, 1.2);
        CurvatureTensor fd = chern_curvature(fs, z);
        CurvatureTensor closed =
            to_identity_frame(fubini_study_curvature_raw(z), fubini_study_value(z));
        CHECK(tensor_distance(fd, closed) <= 1e-6 * (1.0 + closed.max_abs()));

        CurvatureTensor fdp = chern_curvature(prod, z);
        CurvatureTensor closedp =
            to_identity_frame(product_fubini_study_curvature_raw({1, 1}, z), prod.value(z));
        CHECK(tensor_distance(fdp, closedp) <= 1e-6 * (1.0 + closedp.max_abs()));
    }
}

TEST_CASE("closed-form metric derivative callbacks agree with FD") {
    std::mt19937_64 rng(17);
    MetricField fd = fubini_study_metric(3);
    MetricField cf = fubini_study_metric(3, /*closed_form_derivatives=*/true);
    for (int trial = 0; trial < 20; ++trial) {
        CVec z = chart_point(rng, 3, 1.0);
        for (int i = 0; i < 3; ++i) {
            CHECK((cf.d1(z, i) - fd.first_derivative(z, i)).cwiseAbs().maxCoeff() <= 1e-8);
            for (int j = 0; j < 3; ++j)
                CHECK((cf.d2(z, i, j) - fd.second_derivative(z, i, j)).cwiseAbs().maxCoeff() <=
                      1e-7);
        }
        CHECK(tensor_distance(chern_curvature(cf, z), chern_curvature(fd, z)) <= 1e-6);
    }
}

TEST_CASE("Chern-Ricci form") {
    // FS on P^2 at 0: Ricci = 3 delta, from the -ddbar log det oracle.
    MetricField fs = fubini_study_metric(2);
    CMat ric = chern_ricci(fs, CVec::Zero(2));
    CHECK((ric - 3.0 * CMat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-6);

    // Closed-form route (FS with callbacks) agrees with the FD route off-origin.
    std::mt19937_64 rng(5);
    MetricField cf = fubini_study_metric(2, true);
    for (int trial = 0; trial < 10; ++trial) {
        CVec z = chart_point(rng, 2, 1.0);
        CHECK((chern_ricci(cf, z) - chern_ricci(fs, z)).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("trace consistency: fiber trace of curvature equals Ricci (Kahler)") {
    std::mt19937_64 rng(23);
    MetricField fs = fubini_study_metric(2, true);
    for (int trial = 0; trial < 10; ++trial) {
        CVec z = chart_point(rng, 2, 1.0);
        CurvatureTensor r = chern_curvature(fs, z);
        const CMat h = fs.value(z);
        // The tensor lives in the identity frame; move the coordinate-frame
        // Ricci matrix there before comparing.
        const CMat c = base_frame_change(h);
        CMat ric_frame = c.transpose() * chern_ricci(fs, z) * c.conjugate();
        CMat trace = CMat::Zero(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) trace(i, j) += r.block(i, j)(k, k);
        CHECK((trace - ric_frame).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("bisectional and sectional values on the FS tensor") {
    CurvatureTensor zero(2, 2, SymmetryTag::kahler);
    CurvatureTensor fs = fubini_study_curvature_raw(CVec::Zero(2));

    CVec e1 = unit({1, 0});
    CVec e2 = unit({0, 1});
    CHECK(bisectional(zero, e1, e2) == 0.0);
    CHECK(std::abs(bisectional(fs, e1, e2) - 1.0) <= 1e-12);  // orthogonal pair
    CHECK(std::abs(bisectional(fs, e1, e1) - 2.0) <= 1e-12);  // u = v
    CHECK(std::abs(holomorphic_sectional(fs, unit({1, Complex(0, 1)})) - 2.0) <= 1e-12);

    CVec bad = CVec::Zero(2);
    bad[0] = 1.1;
    CHECK_THROWS_AS(bisectional(fs, bad, e1), std::invalid_argument);
}

TEST_CASE("griffiths_min: pinned values and witnesses") {
    CurvatureTensor zero(2, 2, SymmetryTag::kahler);
    CHECK(std::abs(griffiths_min(zero, 7).min_value) <= 1e-12);

    CurvatureTensor fs = fubini_study_curvature_raw(CVec::Zero(2));
    PositivityReport pos = griffiths_min(fs, 7);
    CHECK(std::abs(pos.min_value - 1.0) <= 1e-9);
    CHECK(pos.certificate == PositivityReport::Certificate::heuristic_nonnegative);

    PositivityReport neg = griffiths_min(fs * -1.0, 7);
    CHECK(std::abs(neg.min_value + 2.0) <= 1e-9);
    CHECK(neg.certificate == PositivityReport::Certificate::negative_witness);
    // witness u = v up to phase; the witness reproduces the value
    CHECK(std::abs(std::abs(neg.witness_u.dot(neg.witness_v)) - 1.0) <= 1e-6);
    CHECK(std::abs(bisectional(fs * -1.0, neg.witness_u, neg.witness_v) - neg.min_value) <=
          1e-10);
}

TEST_CASE("nakano_min: eigen-oracle values") {
    CurvatureTensor zero(2, 3, SymmetryTag::hermitian);
    CHECK(nakano_min(zero) == 0.0);

    // FS on P^2: M = I + swap has eigenvalues {2 (sym), 0 (antisym)}; the
    // dense eigensolve froze the minimum at 0.
    CurvatureTensor fs = fubini_study_curvature_raw(CVec::Zero(2));
    CHECK(std::abs(nakano_min(fs) - 0.0) <= 1e-12);

    // Rank-one decomposable vectors: the Nakano form at u (x) v equals the
    // bisectional value.
    std::mt19937_64 rng(11);
    CurvatureTensor r = random_hermitian_tensor(2, 3, 99);
    for (int trial = 0; trial < 20; ++trial) {
        CVec u = random_unit_vector(2, rng);
        CVec v = random_unit_vector(3, rng);
        CMat m(6, 6);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) m(i * 3 + a, j * 3 + b) = r.block(i, j)(a, b);
        CVec w(6);
        for (int i = 0; i < 2; ++i)
            for (int a = 0; a < 3; ++a) w[i * 3 + a] = u[i] * v[a];
        const Complex quad = (w.transpose() * m * w.conjugate())(0, 0);
        CHECK(std::abs(quad.real() - bisectional(r, u, v)) <= 1e-10);
    }
}

TEST_CASE("griffiths_min >= nakano_min on random Hermitian tensors") {
    for (int trial = 0; trial < 100; ++trial) {
        CurvatureTensor r = random_hermitian_tensor(2 + trial % 2, 2, 1000 + trial);
        CHECK(griffiths_min(r, trial).min_value >= nakano_min(r) - 1e-9);
    }
}

TEST_CASE("psd_slice_check") {
    CurvatureTensor fs = fubini_study_curvature_raw(CVec::Zero(2));
    CHECK(psd_slice_check(fs).psd);
    CHECK(psd_slice_check(CurvatureTensor(2, 2, SymmetryTag::kahler)).psd);
    CHECK_FALSE(psd_slice_check(fs * -1.0).psd);

    // Constructively semi-positive tensors: random convex combinations of
    // FS-type, twisted-FS-type and PSD-product tensors keep PSD slices.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        CurvatureTensor mix(2, 2, SymmetryTag::hermitian);
        double wsum = 0.0;
        // FS part
        double w1 = coin(rng);
        wsum += w1;
        mix = mix + fs * w1;
        // twisted part: R(i,j)(k,l) = delta_il delta_kj
        CurvatureTensor tw(2, 2, SymmetryTag::hermitian);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        tw.block(i, j)(k, l) = (i == l && k == j) ? 1.0 : 0.0;
        double w2 = coin(rng);
        wsum += w2;
        mix = mix + tw * w2;
        // PSD product part: A (x) B with random PSD factors
        CMat ga(2, 2), gb(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                ga(i, j) = Complex(coin(rng) - 0.5, coin(rng) - 0.5);
                gb(i, j) = Complex(coin(rng) - 0.5, coin(rng) - 0.5);
            }
        CMat a = ga * ga.adjoint(), b = gb * gb.adjoint();
        CurvatureTensor ab(2, 2, SymmetryTag::hermitian);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) ab.block(i, j) = a(i, j) * b;
        double w3 = coin(rng);
        wsum += w3;
        mix = mix + ab * w3;
        mix = mix * (1.0 / wsum);

        CHECK(griffiths_min(mix, trial).min_value >= -1e-9);
        CHECK(psd_slice_check(mix).psd);
    }
}

TEST_CASE("flat_if_ricci_flat") {
    CurvatureTensor zero(2, 2, SymmetryTag::kahler);
    CHECK(flat_if_ricci_flat(zero, 1e-9).pass);

    MetricField flat = flat_metric(2);
    CurvatureTensor torus = chern_curvature(flat, CVec::Zero(2));
    CHECK(flat_if_ricci_flat(torus, 1e-9).pass);

    // FS has Ricci trace 3n; the bound is not binding, vacuous pass.
    CurvatureTensor fs = fubini_study_curvature_raw(CVec::Zero(2));
    FlatnessVerdict v = flat_if_ricci_flat(fs, 1e-9);
    CHECK(v.pass);
    CHECK(v.ricci_trace_norm == doctest::Approx(6.0));
}

TEST_CASE("symmetry invariants of produced tensors") {
    std::mt19937_64 rng(41);
    MetricField fs = fubini_study_metric(2);
    for (int trial = 0; trial < 10; ++trial) {
        CurvatureTensor r = chern_curvature(fs, chart_point(rng, 2, 1.0));
        CHECK(r.tag() == SymmetryTag::kahler);
        CHECK(r.hermitian_violation() <= 1e-12);
        CHECK(r.kahler_violation() <= 1e-12);
    }
    for (int trial = 0; trial < 20; ++trial) {
        CurvatureTensor r = random_kahler_tensor(3, trial);
        CHECK(r.hermitian_violation() <= 1e-12);
        CHECK(r.kahler_violation() <= 1e-12);
    }
}

TEST_CASE("degenerate metric is an error") {
    MetricField singular;
    singular.dim = 2;
    singular.value = [](const CVec&) {
        CMat h(2, 2);
        h << 1, 0, 0, 0;
        return h;
    };
    CHECK_THROWS_AS(chern_curvature(singular, CVec::Zero(2)), std::domain_error);
}
