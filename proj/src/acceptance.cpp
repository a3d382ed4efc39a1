#include "semipos/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "semipos/bundle_expr.hpp"
#include "semipos/class_ring.hpp"
#include "semipos/extremal.hpp"
#include "semipos/hopf.hpp"
#include "semipos/tautological.hpp"

namespace semipos {

namespace {

using Clock = std::chrono::steady_clock;

struct Sizes {
    int bundles;         // random bundles for the pushforward identity
    int phi_points;      // solver / equivariance / matrix points
    int grid_axis;       // Gauduchon and semipositivity grid is axis^2
    int pair_samples;    // direction pairs per curvature point
    int tensors;         // random Kahler tensors for the lemma suites
    int lemma_samples;   // sampled W per tensor
    int taut_grid;       // base points for tautological scans
    int taut_fibers;     // fiber directions per base point
};

Sizes sizes_for(SuiteLevel level) {
    if (level == SuiteLevel::quick) return {30, 200, 8, 200, 40, 40, 6, 16};
    return {100, 1000, 20, 1000, 200, 100, 12, 32};
}

BundleClass random_bundle(const BasePresentation& base, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> rank_dist(1, 3);
    std::uniform_int_distribution<int> coeff(-4, 4);
    const int r = rank_dist(rng);
    GradedClass c = GradedClass::one(base);
    std::vector<Exponents> frontier{Exponents(base.num_factors(), 0)};
    for (int k = 1; k <= std::min(r, base.dim()); ++k) {
        std::vector<Exponents> next;
        for (const auto& e : frontier)
            for (int i = 0; i < base.num_factors(); ++i) {
                Exponents e2 = e;
                e2[i]++;
                if (e2[i] <= base.factors[i]) next.push_back(e2);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (const auto& e : next) c.add_term(e, coeff(rng));
        frontier = next;
    }
    return BundleClass(r, c);
}

std::vector<CVec> random_cover_points(int count, std::uint64_t seed, double rmin,
                                      double rmax) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logr(std::log(rmin), std::log(rmax));
    std::vector<CVec> out;
    while (static_cast<int>(out.size()) < count)
        out.push_back(std::exp(logr(rng)) * random_unit_vector(2, rng));
    return out;
}

CriterionResult criterion_exact_classes() {
    CriterionResult c{1, "exact class numbers", false, 0, {}};
    const BasePresentation p2({2});

    const Rational c2 = tangent_bundle(p2).chern(2).integrate();
    c.checks.push_back(CheckRecord::equals("c1.c2_tp2", c2 == 3, c2.convert_to<double>(), 3.0));

    const BundleClass e = tensor_with_line(tangent_bundle(p2), line_bundle(p2, {-1}));
    const Rational s2 = segre_from_chern(e).component(2).integrate();
    c.checks.push_back(CheckRecord::equals("c1.s2_twisted", s2 == 0, s2.convert_to<double>(), 0.0));

    // Same numbers through the expression language.
    const auto v1 = evaluate(parse_expression("integrate(c2(T))", p2), p2);
    c.checks.push_back(CheckRecord::equals("c1.expr_c2_tp2", std::get<Rational>(v1) == 3,
                                           std::get<Rational>(v1).convert_to<double>(), 3.0));
    const auto v2 = evaluate(parse_expression("integrate(s2(T (x) O(-1)))", p2), p2);
    c.checks.push_back(CheckRecord::equals("c1.expr_s2_twisted", std::get<Rational>(v2) == 0,
                                           std::get<Rational>(v2).convert_to<double>(), 0.0));
    return c;
}

CriterionResult criterion_pushforward(const Sizes& sizes, std::uint64_t seed) {
    CriterionResult c{2, "pushforward identity", false, 0, {}};
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5ull);
    const std::vector<BasePresentation> bases{BasePresentation({2}), BasePresentation({3}),
                                              BasePresentation({1, 1})};
    int exact = 0;
    for (int trial = 0; trial < sizes.bundles; ++trial) {
        const auto& base = bases[trial % bases.size()];
        const BundleClass e = random_bundle(base, rng);
        ProjBundleRing ring(e);
        const int n = base.dim();
        const Rational lhs = ring.integrate(ring.pow(ring.xi(), n + e.rank - 1));
        Rational sn = segre_from_chern(e).component(n).integrate();
        if (n % 2 != 0) sn = -sn;
        if (lhs == sn) ++exact;
    }
    c.checks.push_back(CheckRecord::equals("c2.random_bundles_exact", exact == sizes.bundles,
                                           exact, sizes.bundles));

    ProjBundleRing ring(tangent_bundle(BasePresentation({2})));
    const Rational top = ring.integrate(ring.pow(ring.xi(), 3));
    c.checks.push_back(CheckRecord::equals("c2.tp2_value", top == 6, top.convert_to<double>(), 6.0));
    const Rational anti = ring.integrate(ring.pow(ring.anticanonical_class(), 3));
    c.checks.push_back(CheckRecord::equals("c2.anticanonical_cube", anti == 48, anti.convert_to<double>(),
                                           48.0));
    return c;
}

CriterionResult criterion_phi_solver(const Sizes& sizes, std::uint64_t seed) {
    CriterionResult c{3, "Hopf Phi solver", false, 0, {}};

    const HopfParams diag = HopfParams::create(2.0, 2.0);
    double worst = 0.0;
    for (const CVec& p : random_cover_points(sizes.phi_points, seed ^ 1, 1e-3, 1e3)) {
        const double exact = std::norm(p[0]) + std::norm(p[1]);
        const double phi = solve_phi_newton(diag, p[0], p[1]);
        worst = std::max(worst, std::abs(phi - exact) / exact);
    }
    c.checks.push_back(CheckRecord::at_most("c3.alpha1_matches_closed_form", worst, 1e-12));

    const std::vector<HopfParams> families{
        diag, HopfParams::create(3.0, 2.0),
        HopfParams::create(Complex(2.0, 1.0), Complex(1.5, 0.75)),
        HopfParams::create(std::exp(1.4), std::exp(0.6)), HopfParams::create(1.2, 1.1)};
    double worst_phi = 0.0, worst_zterm = 0.0;
    for (size_t f = 0; f < families.size(); ++f)
        for (const CVec& p : random_cover_points(sizes.phi_points, seed ^ (10 + f), 1e-3, 1e3)) {
            const EquivarianceGap gap = deck_equivariance_gap(families[f], p[0], p[1]);
            worst_phi = std::max(worst_phi, gap.phi_gap);
            worst_zterm = std::max(worst_zterm, gap.zterm_gap);
        }
    c.checks.push_back(CheckRecord::at_most("c3.deck_equivariance", worst_phi, 1e-10));
    c.checks.push_back(CheckRecord::at_most("c3.deck_invariant_zterm", worst_zterm, 1e-10));
    return c;
}

CriterionResult criterion_appendix_matrices(const Sizes& sizes, std::uint64_t seed) {
    CriterionResult c{4, "appendix matrices", false, 0, {}};
    const std::vector<HopfParams> families{HopfParams::create(std::exp(1.4), std::exp(0.6)),
                                           HopfParams::create(3.0, 2.0)};
    double worst_fd = 0.0, worst_det = 0.0, worst_psd = 0.0;
    for (size_t f = 0; f < families.size(); ++f) {
        const HopfParams& params = families[f];
        auto log_phi = [&](const CVec& q) {
            return Complex(std::log(solve_phi(params, q[0], q[1])));
        };
        for (const CVec& p :
             random_cover_points(sizes.phi_points / 2, seed ^ (20 + f), 0.3, 3.0)) {
            const PhiValue v = phi_closed_forms(params, p[0], p[1]);
            const double scale = v.m_log.real().trace();
            // log Phi varies on the scale of the distance to the excluded
            // origin; shrink the stencil accordingly or its truncation error
            // dominates at small radius.
            DiffConfig cfg;
            const double len = std::clamp(p.norm(), 0.1, 1.0);
            cfg.second_inner_step *= len;
            cfg.second_outer_step *= len;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const Complex fd = wirtinger_dd(log_phi, p, i, j, cfg);
                    worst_fd = std::max(worst_fd, std::abs(v.m_log(i, j) - fd) / scale);
                }
            worst_det =
                std::max(worst_det, std::abs(v.m_log.determinant()) / (scale * scale));
            Eigen::SelfAdjointEigenSolver<CMat> es(v.m_log);
            worst_psd = std::min(worst_psd, es.eigenvalues().minCoeff() / scale);
        }
    }
    c.checks.push_back(CheckRecord::at_most("c4.closed_vs_fd", worst_fd, 1e-6));
    c.checks.push_back(CheckRecord::at_most("c4.scaled_determinant", worst_det, 1e-10));
    c.checks.push_back(CheckRecord::at_least("c4.psd", worst_psd, -1e-10));
    return c;
}

CriterionResult criterion_gauduchon(const Sizes& sizes) {
    CriterionResult c{5, "Gauduchon verification", false, 0, {}};
    const auto grid = hopf_grid(sizes.grid_axis);
    double worst = 0.0;
    for (double alpha : {1.0, 1.2, 1.4, 1.8}) {
        const HopfParams params = HopfParams::create(std::exp(alpha), std::exp(2.0 - alpha));
        const GauduchonReport rep = verify_gauduchon(params, grid);
        worst = std::max({worst, rep.max_scaled_residual_closed, rep.max_scaled_residual_fd});
    }
    c.checks.push_back(CheckRecord::at_most("c5.residual_canonical", worst, 1e-8));

    const HopfParams off = HopfParams::create(std::exp(1.4), std::exp(0.6), 1.0, 1.0);
    c.checks.push_back(CheckRecord::at_least(
        "c5.negative_control", verify_gauduchon(off, grid).max_scaled_residual_closed, 1e-4));
    return c;
}

CriterionResult criterion_hopf_semipositivity(const Sizes& sizes, std::uint64_t seed) {
    CriterionResult c{6, "Hopf semi-positivity", false, 0, {}};
    const HopfParams params = HopfParams::create(std::exp(1.4), std::exp(0.6));
    std::mt19937_64 rng(seed ^ 0xbeefull);
    std::vector<std::pair<CVec, CVec>> pairs;
    pairs.reserve(sizes.pair_samples);
    for (int k = 0; k < sizes.pair_samples; ++k)
        pairs.emplace_back(random_unit_vector(2, rng), random_unit_vector(2, rng));

    double worst = std::numeric_limits<double>::infinity();
    for (const CVec& p : hopf_grid(sizes.grid_axis)) {
        const HopfCurvatureResult hc = hopf_curvature(params, p, seed);
        worst = std::min(worst, hc.griffiths.min_value);
        for (const auto& [u, v] : pairs)
            worst = std::min(worst, bisectional(hc.tensor, u, v));
    }
    c.checks.push_back(CheckRecord::at_least("c6.griffiths_min", worst, -1e-8));
    return c;
}

CriterionResult criterion_lemma_suite(const Sizes& sizes, std::uint64_t seed) {
    CriterionResult c{7, "extremal direction lemmas", false, 0, {}};
    double worst_slack = std::numeric_limits<double>::infinity();
    double worst_first_order = 0.0;
    double worst_slack_max = std::numeric_limits<double>::infinity();
    double worst_first_order_max = 0.0;
    for (int trial = 0; trial < sizes.tensors; ++trial) {
        const int n = 2 + trial % 2;
        const CurvatureTensor r = random_kahler_tensor(n, seed + trial);
        const ExtremalInequalityReport rep =
            verify_minimizer_inequality(r, sizes.lemma_samples, seed + trial);
        worst_slack = std::min(worst_slack, rep.worst_slack);
        worst_slack = std::min(worst_slack, rep.worst_orthogonal_slack);
        worst_first_order = std::max(worst_first_order, rep.max_first_order);
        const ExtremalInequalityReport rep1 =
            verify_maximizer_inequality(r, sizes.lemma_samples, seed + trial);
        worst_slack_max = std::min(worst_slack_max, rep1.worst_slack);
        worst_slack_max = std::min(worst_slack_max, rep1.worst_orthogonal_slack);
        worst_first_order_max = std::max(worst_first_order_max, rep1.max_first_order);
    }
    c.checks.push_back(CheckRecord::at_least("c7.minimizer_slack", worst_slack, -1e-7));
    c.checks.push_back(
        CheckRecord::at_most("c7.minimizer_first_order", worst_first_order, 1e-6));
    c.checks.push_back(CheckRecord::at_least("c7.maximizer_slack", worst_slack_max, -1e-7));
    c.checks.push_back(
        CheckRecord::at_most("c7.maximizer_first_order", worst_first_order_max, 1e-6));
    return c;
}

CriterionResult criterion_engine_oracle() {
    CriterionResult c{8, "curvature engine oracles", false, 0, {}};
    const MetricField fs = fubini_study_metric(2);
    const CurvatureTensor r = chern_curvature(fs, CVec::Zero(2));
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    const double expected =
                        (i == j && k == l ? 1.0 : 0.0) + (i == l && k == j ? 1.0 : 0.0);
                    worst = std::max(worst, std::abs(r.block(i, j)(k, l) - expected));
                }
    c.checks.push_back(CheckRecord::at_most("c8.fs_curvature_origin", worst, 1e-8));

    const CMat ric = chern_ricci(fs, CVec::Zero(2));
    c.checks.push_back(CheckRecord::at_most(
        "c8.fs_ricci", (ric - 3.0 * CMat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-6));

    const CurvatureTensor flat = chern_curvature(flat_metric(2), CVec::Zero(2));
    c.checks.push_back(CheckRecord::at_most("c8.flat_zero", flat.max_abs(), 1e-10));
    return c;
}

CriterionResult criterion_tautological(const Sizes& sizes, std::uint64_t seed) {
    CriterionResult c{9, "tautological positivity", false, 0, {}};
    std::mt19937_64 rng(seed ^ 0x7777ull);
    std::vector<CVec> grid;
    for (int k = 0; k < sizes.taut_grid; ++k)
        grid.push_back(0.6 * random_unit_vector(2, rng));

    const TautScanReport fs = taut_positivity_scan(fubini_study_metric(2), grid,
                                                   sizes.taut_fibers);
    c.checks.push_back(
        CheckRecord::at_least("c9.fs_scan_min", fs.min_relative_eigenvalue, 1.0 - 1e-6));

    const TautCurvature spot = taut_curvature_at(
        fubini_study_curvature_raw(CVec::Zero(2)), FiberDirection(CVec::Unit(2, 1)));
    CMat expected = CMat::Zero(3, 3);
    expected(0, 0) = 1;
    expected(1, 1) = 2;
    expected(2, 2) = 1;
    c.checks.push_back(CheckRecord::at_most(
        "c9.fs_spot_diag121", (spot.form - expected).cwiseAbs().maxCoeff(), 1e-8));

    const TautScanReport prod =
        taut_positivity_scan(product_fubini_study_metric({1, 1}), grid, sizes.taut_fibers);
    c.checks.push_back(
        CheckRecord::at_least("c9.product_scan_min", prod.min_relative_eigenvalue, -1e-8));
    c.checks.push_back(
        CheckRecord::at_most("c9.product_scan_min_upper", prod.min_relative_eigenvalue, 1e-6));
    c.checks.push_back(
        CheckRecord::at_least("c9.product_positive_sample", prod.best_sample_min, 0.1));
    return c;
}

CriterionResult criterion_relative_tangent(const Sizes& sizes) {
    CriterionResult c{10, "relative tangent bound", false, 0, {}};
    const auto grid = hopf_grid(std::max(3, sizes.grid_axis / 4));

    const HopfParams diag = HopfParams::create(2.0, 2.0);
    const RelativeTangentReport rd = relative_tangent_bound(diag, 0.01, grid, 12);
    c.checks.push_back(
        CheckRecord::at_least("c10.alpha1_fiber_fs", rd.min_curvature_eigenvalue, -1e-10));

    const HopfParams generic = HopfParams::create(std::exp(1.4), std::exp(0.6));
    const RelativeTangentReport rg = find_lambda2(generic, 0.01, grid, 12);
    c.checks.push_back(CheckRecord::at_least("c10.alpha14_margin_bound",
                                             rg.min_eigenvalue_with_margin, -1e-9));
    c.checks.push_back(
        CheckRecord::at_most("c10.alpha14_doublings", rg.doublings, 40.0));
    return c;
}

}  // namespace

Report AcceptanceResult::to_report(const std::string& command, std::uint64_t seed) const {
    Report report;
    report.command = command;
    report.seed = seed;
    report.tolerances = {
        {"exact_arithmetic", 0.0},       {"phi_relative", 1e-12},
        {"equivariance", 1e-10},         {"closed_vs_fd", 1e-6},
        {"scaled_determinant", 1e-10},   {"gauduchon_residual", 1e-8},
        {"griffiths_semipositive", 1e-8},{"lemma_slack", 1e-7},
        {"first_order_vanishing", 1e-6}, {"engine_origin", 1e-8},
        {"taut_fs_floor", 1.0 - 1e-6},   {"relative_margin", 1e-9},
    };
    for (const CriterionResult& crit : criteria)
        for (const CheckRecord& check : crit.checks) report.checks.push_back(check);
    report.runtime_seconds = seconds;
    return report;
}

AcceptanceResult run_acceptance(SuiteLevel level, std::uint64_t seed) {
    const Sizes sizes = sizes_for(level);
    AcceptanceResult result;
    const auto t0 = Clock::now();

    auto run = [&](CriterionResult crit) {
        crit.passed = std::all_of(crit.checks.begin(), crit.checks.end(),
                                  [](const CheckRecord& c) { return c.passed; });
        result.criteria.push_back(std::move(crit));
    };
    auto timed = [&](auto&& fn) {
        const auto start = Clock::now();
        CriterionResult crit = fn();
        crit.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        run(std::move(crit));
    };

    timed([&] { return criterion_exact_classes(); });
    timed([&] { return criterion_pushforward(sizes, seed); });
    timed([&] { return criterion_phi_solver(sizes, seed); });
    timed([&] { return criterion_appendix_matrices(sizes, seed); });
    timed([&] { return criterion_gauduchon(sizes); });
    timed([&] { return criterion_hopf_semipositivity(sizes, seed); });
    timed([&] { return criterion_lemma_suite(sizes, seed); });
    timed([&] { return criterion_engine_oracle(); });
    timed([&] { return criterion_tautological(sizes, seed); });
    timed([&] { return criterion_relative_tangent(sizes); });

    result.all_passed = std::all_of(result.criteria.begin(), result.criteria.end(),
                                    [](const CriterionResult& c) { return c.passed; });
    result.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return result;
}

}  // namespace semipos
