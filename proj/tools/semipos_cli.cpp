// semipos: batch verification driver for characteristic-class arithmetic,
// curvature positivity diagnostics and the Hopf-surface constructions.
//
// Exit codes: 0 all checks passed, 1 at least one check failed (the report is
// still emitted), 2 usage or parse error.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "semipos/acceptance.hpp"
#include "semipos/bundle_expr.hpp"
#include "semipos/extremal.hpp"
#include "semipos/hopf.hpp"
#include "semipos/tautological.hpp"

namespace {

using namespace semipos;

// Complex flag syntax "re+imi", e.g. 2+0i, -1.5-0.5i, 3 (imaginary part 0).
Complex parse_complex(const std::string& text) {
    const char* p = text.c_str();
    char* end = nullptr;
    const double re = std::strtod(p, &end);
    if (end == p) throw CLI::ValidationError("complex", "expected re+imi, got: " + text);
    if (*end == '\0') return {re, 0.0};
    const char* q = end;
    const double im = std::strtod(q, &end);
    if (end == q || *end != 'i' || *(end + 1) != '\0')
        throw CLI::ValidationError("complex", "expected re+imi, got: " + text);
    return {re, im};
}

void emit(const Report& report, const std::string& json_path, bool print_text = true) {
    if (print_text) std::cout << report.to_text();
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << report.to_json().dump(2) << "\n";
    }
}

int run_classes(const std::string& base_name, const std::string& expr,
                const std::string& json_path) {
    const BasePresentation base = BasePresentation::parse(base_name);
    const BundleAst ast = parse_expression(expr, base);
    const EvalResult value = evaluate(ast, base);
    std::string rendered;
    if (std::holds_alternative<Rational>(value))
        rendered = to_string(std::get<Rational>(value));
    else
        rendered = std::get<GradedClass>(value).str();
    std::cout << rendered << "\n";
    if (!json_path.empty()) {
        nlohmann::ordered_json out;
        out["schema"] = 1;
        out["base"] = base.name();
        out["expr"] = expr;
        out["result"] = rendered;
        std::ofstream(json_path) << out.dump(2) << "\n";
    }
    return 0;
}

int run_lemma(int dim, int count, int samples, std::uint64_t seed, double tol,
              const std::string& json_path, const std::string& cmd) {
    Report report;
    report.command = cmd;
    report.seed = seed;
    report.tolerances = {{"slack", tol}, {"first_order", 1e-6}};

    double min_slack = std::numeric_limits<double>::infinity();
    double min_slack_max = min_slack;
    double first_order = 0.0, first_order_max = 0.0;
    for (int trial = 0; trial < count; ++trial) {
        const CurvatureTensor r = random_kahler_tensor(dim, seed + trial);
        const ExtremalInequalityReport rep =
            verify_minimizer_inequality(r, samples, seed + trial, tol);
        min_slack = std::min({min_slack, rep.worst_slack, rep.worst_orthogonal_slack});
        first_order = std::max(first_order, rep.max_first_order);
        const ExtremalInequalityReport rep1 =
            verify_maximizer_inequality(r, samples, seed + trial, tol);
        min_slack_max = std::min({min_slack_max, rep1.worst_slack, rep1.worst_orthogonal_slack});
        first_order_max = std::max(first_order_max, rep1.max_first_order);
    }
    report.add(CheckRecord::at_least("lemma.minimizer_slack", min_slack, -tol));
    report.add(CheckRecord::at_most("lemma.minimizer_first_order", first_order, 1e-6));
    report.add(CheckRecord::at_least("lemma.maximizer_slack", min_slack_max, -tol));
    report.add(CheckRecord::at_most("lemma.maximizer_first_order", first_order_max, 1e-6));
    emit(report, json_path);
    return report.exit_code();
}

int run_engine(const std::string& base_name, int samples, std::uint64_t seed, double tol,
               const std::string& json_path, const std::string& cmd) {
    Report report;
    report.command = cmd;
    report.seed = seed;
    report.tolerances = {{"fd_agreement", tol}};

    const BasePresentation base = BasePresentation::parse(base_name);
    std::vector<int> dims = base.factors;
    MetricField metric =
        dims.size() == 1 ? fubini_study_metric(dims[0]) : product_fubini_study_metric(dims);

    const int n = metric.dim;
    const CurvatureTensor flat = chern_curvature(flat_metric(n), CVec::Zero(n));
    report.add(CheckRecord::at_most("engine.flat_zero", flat.max_abs(), 1e-10));

    std::mt19937_64 rng(seed);
    double fd_gap = 0.0, sym = 0.0, trace_gap = 0.0;
    for (int k = 0; k < samples; ++k) {
        const CVec z = 0.8 * random_unit_vector(n, rng);
        const CurvatureTensor r = chern_curvature(metric, z);
        const CurvatureTensor closed = to_identity_frame(
            dims.size() == 1 ? fubini_study_curvature_raw(z)
                             : product_fubini_study_curvature_raw(dims, z),
            metric.value(z));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                fd_gap = std::max(fd_gap,
                                  (r.block(i, j) - closed.block(i, j)).cwiseAbs().maxCoeff());
        sym = std::max({sym, r.hermitian_violation(), r.kahler_violation()});

        const CMat c = base_frame_change(metric.value(z));
        const CMat ric = c.transpose() * chern_ricci(metric, z) * c.conjugate();
        CMat tr = CMat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k2 = 0; k2 < n; ++k2) tr(i, j) += r.block(i, j)(k2, k2);
        trace_gap = std::max(trace_gap, (tr - ric).cwiseAbs().maxCoeff());
    }
    report.add(CheckRecord::at_most("engine.fd_vs_closed", fd_gap, tol));
    report.add(CheckRecord::at_most("engine.symmetry", sym, 1e-12));
    report.add(CheckRecord::at_most("engine.trace_consistency", trace_gap, tol));

    const CurvatureTensor fs = fubini_study_curvature_raw(CVec::Zero(2));
    report.add(CheckRecord::at_least("engine.fs_griffiths", griffiths_min(fs, seed).min_value,
                                     1.0 - 1e-9));
    report.add(CheckRecord::at_least("engine.fs_nakano", nakano_min(fs), -1e-9));
    report.add(CheckRecord::equals("engine.fs_slices_psd", psd_slice_check(fs).psd, 1.0));
    emit(report, json_path);
    return report.exit_code();
}

int run_taut(const std::string& base_name, const std::string& metric_name, int grid,
             int samples, std::uint64_t seed, double tol, const std::string& json_path,
             const std::string& cmd) {
    Report report;
    report.command = cmd;
    report.seed = seed;
    report.tolerances = {{"psd_slack", tol}};

    const BasePresentation base = BasePresentation::parse(base_name);
    MetricField metric;
    if (metric_name == "flat")
        metric = flat_metric(base.dim());
    else if (base.num_factors() == 1)
        metric = fubini_study_metric(base.factors[0]);
    else
        metric = product_fubini_study_metric(base.factors);

    std::mt19937_64 rng(seed);
    std::vector<CVec> points;
    for (int k = 0; k < grid; ++k)
        points.push_back(0.6 * random_unit_vector(metric.dim, rng));
    const TautScanReport scan = taut_positivity_scan(metric, points, samples);

    report.add(
        CheckRecord::at_least("taut.min_relative_eigenvalue", scan.min_relative_eigenvalue,
                              -tol));
    report.add(CheckRecord::equals("taut.strictly_positive_sample",
                                   true, scan.strictly_positive_sample ? 1.0 : 0.0));
    report.add(CheckRecord::equals("taut.max_eigenvalue_gap", true, scan.max_eigenvalue_gap));

    const NormalFrameReport nf = normal_frame_check(metric, points.front());
    report.add(CheckRecord::at_most("taut.normal_frame_deviation", nf.max_deviation, 1e-5));
    emit(report, json_path);
    return report.exit_code();
}

int run_hopf(Complex a, Complex b, double lambda1, double lambda2, bool lambdas_given,
             int grid_axis, int samples, std::uint64_t seed, double eps, bool eps_given,
             const std::string& csv_path, const std::string& json_path,
             const std::string& cmd) {
    Report report;
    report.command = cmd;
    report.seed = seed;
    report.tolerances = {{"residual", 1e-12},        {"equivariance", 1e-10},
                         {"closed_vs_fd", 1e-6},     {"gauduchon", 1e-8},
                         {"griffiths", 1e-8},        {"relative_margin", 1e-9}};

    const HopfParams canonical = HopfParams::create(a, b);
    const auto grid = hopf_grid(grid_axis);

    double residual = 0.0, equi = 0.0, alpha1_gap = 0.0;
    double fd_gap = 0.0, det_gap = 0.0, psd_floor = 0.0, griffiths_floor = 0.0;
    for (const CVec& p : grid) {
        const PhiValue v = phi_closed_forms(canonical, p[0], p[1]);
        residual = std::max(residual, std::abs(v.residual));
        const EquivarianceGap gap = deck_equivariance_gap(canonical, p[0], p[1]);
        equi = std::max({equi, gap.phi_gap, gap.zterm_gap});
        if (canonical.alpha == 1.0)
            alpha1_gap = std::max(alpha1_gap,
                                  std::abs(solve_phi_newton(canonical, p[0], p[1]) - v.phi) /
                                      v.phi);

        const double scale = v.m_log.real().trace();
        DiffConfig cfg;
        const double len = std::clamp(p.norm(), 0.1, 1.0);
        cfg.second_inner_step *= len;
        cfg.second_outer_step *= len;
        auto log_phi = [&](const CVec& q) {
            return Complex(std::log(solve_phi(canonical, q[0], q[1])));
        };
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                fd_gap = std::max(fd_gap,
                                  std::abs(v.m_log(i, j) - wirtinger_dd(log_phi, p, i, j, cfg)) /
                                      scale);
        det_gap = std::max(det_gap, std::abs(v.m_log.determinant()) / (scale * scale));
        Eigen::SelfAdjointEigenSolver<CMat> es(v.m_log);
        psd_floor = std::min(psd_floor, es.eigenvalues().minCoeff() / scale);

        const HopfCurvatureResult hc = hopf_curvature(canonical, p, seed);
        griffiths_floor = std::min(griffiths_floor, hc.griffiths.min_value);
    }
    report.add(CheckRecord::at_most("hopf.defining_equation_residual", residual, 1e-12));
    report.add(CheckRecord::at_most("hopf.deck_equivariance", equi, 1e-10));
    if (canonical.alpha == 1.0)
        report.add(CheckRecord::at_most("hopf.alpha1_closed_form", alpha1_gap, 1e-12));
    report.add(CheckRecord::at_most("hopf.mlog_closed_vs_fd", fd_gap, 1e-6));
    report.add(CheckRecord::at_most("hopf.mlog_scaled_det", det_gap, 1e-10));
    report.add(CheckRecord::at_least("hopf.mlog_psd", psd_floor, -1e-10));
    report.add(CheckRecord::at_least("hopf.griffiths_min", griffiths_floor, -1e-8));

    const GauduchonReport gd = verify_gauduchon(canonical, grid);
    report.add(CheckRecord::at_most(
        "hopf.gauduchon_residual",
        std::max(gd.max_scaled_residual_closed, gd.max_scaled_residual_fd), 1e-8));

    if (eps_given) {
        RelativeTangentReport rel;
        if (lambdas_given) {
            const HopfParams chosen = HopfParams::create(a, b, lambda1, lambda2);
            rel = relative_tangent_bound(chosen, eps, grid, samples);
        } else {
            rel = find_lambda2(canonical, eps, grid, samples);
        }
        report.add(CheckRecord::at_least("hopf.relative_tangent_margin",
                                         rel.min_eigenvalue_with_margin, -1e-9));
        report.add(CheckRecord::equals("hopf.relative_lambda2", true, rel.lambda2));
    }

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        hopf_grid_csv(canonical, grid, out);
    }
    emit(report, json_path);
    return report.exit_code();
}

int run_suite(const std::string& level, const std::string& json_path, std::uint64_t seed,
              const std::string& cmd) {
    const SuiteLevel lv = level == "quick" ? SuiteLevel::quick : SuiteLevel::full;
    const AcceptanceResult result = run_acceptance(lv, seed);
    for (const auto& crit : result.criteria) {
        std::printf("%s  criterion %2d  [%s]  (%.2f s)\n", crit.passed ? "PASS" : "FAIL",
                    crit.index, crit.title.c_str(), crit.seconds);
        if (!crit.passed)
            for (const auto& check : crit.checks)
                if (!check.passed)
                    std::printf("      FAIL %s  value=%.12g\n", check.name.c_str(),
                                check.value);
    }
    const Report report = result.to_report(cmd, seed);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << report.to_json().dump(2) << "\n";
    }
    return result.all_passed ? 0 : 1;
}

std::string join_argv(int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd += " ";
        cmd += argv[i];
    }
    return cmd;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification driver for class arithmetic, curvature positivity and "
                 "Hopf-surface metrics"};
    app.require_subcommand(1);
    const std::string cmd = join_argv(argc, argv);

    std::string base = "P2", expr, json_path, csv_path, metric = "fs", level = "full";
    std::string a_text = "2+0i", b_text = "2+0i";
    std::uint64_t seed = 1;
    int dim = 2, count = 50, samples = 100, grid = 10;
    double tol = 1e-7, eps = 0.01, lambda1 = 1.0, lambda2 = 1.0;

    auto* classes = app.add_subcommand("classes", "evaluate a characteristic-class expression");
    classes->add_option("--base", base, "base space, e.g. P2, P3, P1xP1");
    classes->add_option("--expr", expr, "expression, e.g. integrate(s2(T (x) O(-1)))")
        ->required();
    classes->add_option("--json", json_path, "write a JSON report");

    auto* lemma = app.add_subcommand("lemma", "extremal-direction lemma suites on random "
                                              "Kahler tensors");
    lemma->add_option("--dim", dim, "tensor dimension")->check(CLI::Range(2, 4));
    lemma->add_option("--count", count, "number of random tensors");
    lemma->add_option("--samples", samples, "sampled directions per tensor");
    lemma->add_option("--seed", seed, "RNG seed");
    lemma->add_option("--tol", tol, "slack tolerance");
    lemma->add_option("--json", json_path, "write a JSON report");

    auto* engine = app.add_subcommand("engine", "curvature engine oracles");
    engine->add_option("--base", base, "P2, P3 or P1xP1");
    engine->add_option("--samples", samples, "random chart points");
    engine->add_option("--seed", seed, "RNG seed");
    engine->add_option("--tol", tol, "FD agreement tolerance");
    engine->add_option("--json", json_path, "write a JSON report");

    auto* taut = app.add_subcommand("taut", "tautological line bundle positivity scan");
    taut->add_option("--base", base, "P2, P3 or P1xP1");
    taut->add_option("--metric", metric, "fs or flat");
    taut->add_option("--grid", grid, "base points");
    taut->add_option("--samples", samples, "fiber directions");
    taut->add_option("--seed", seed, "RNG seed");
    taut->add_option("--tol", tol, "PSD slack");
    taut->add_option("--json", json_path, "write a JSON report");

    auto* hopf = app.add_subcommand("hopf", "Hopf surface solver, Gauduchon metric and "
                                            "curvature checks");
    hopf->add_option("--a", a_text, "contraction factor a as re+imi (|a| >= |b| > 1)");
    hopf->add_option("--b", b_text, "contraction factor b as re+imi");
    auto* l1 = hopf->add_option("--lambda1", lambda1, "metric coefficient lambda1");
    auto* l2 = hopf->add_option("--lambda2", lambda2, "metric coefficient lambda2");
    hopf->add_option("--grid", grid, "grid points per axis");
    hopf->add_option("--samples", samples, "fiber directions for the relative bound");
    hopf->add_option("--seed", seed, "RNG seed");
    auto* eps_opt = hopf->add_option("--eps", eps, "margin for the relative tangent bound");
    hopf->add_option("--csv", csv_path, "write the grid CSV dump");
    hopf->add_option("--json", json_path, "write a JSON report");

    auto* suite = app.add_subcommand("suite", "run the verification battery");
    suite->add_option("level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    suite->add_option("--seed", seed, "RNG seed");
    suite->add_option("--json", json_path, "write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classes->parsed()) return run_classes(base, expr, json_path);
        if (lemma->parsed())
            return run_lemma(dim, count, std::min(samples, 1000), seed, tol, json_path, cmd);
        if (engine->parsed()) return run_engine(base, samples, seed, tol, json_path, cmd);
        if (taut->parsed())
            return run_taut(base, metric, grid, samples, seed, tol, json_path, cmd);
        if (hopf->parsed())
            return run_hopf(parse_complex(a_text), parse_complex(b_text), lambda1, lambda2,
                            l1->count() > 0 && l2->count() > 0, grid, samples, seed, eps,
                            eps_opt->count() > 0, csv_path, json_path, cmd);
        if (suite->parsed()) return run_suite(level, json_path, seed, cmd);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.line << ":" << e.column << ": " << e.what()
                  << "\n";
        return 2;
    } catch (const SemanticError& e) {
        std::cerr << "semantic error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
