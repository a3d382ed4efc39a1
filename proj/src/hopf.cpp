#include "semipos/hopf.hpp"

#include <Eigen/Eigenvalues>
#include <ostream>
#include <stdexcept>

namespace semipos {

namespace {

void validate_moduli(Complex a, Complex b) {
    if (!(std::abs(a) >= std::abs(b) && std::abs(b) > 1.0))
        throw std::invalid_argument("Hopf parameters require |a| >= |b| > 1");
}

}  // namespace

HopfParams HopfParams::create(Complex a, Complex b) {
    validate_moduli(a, b);
    HopfParams p;
    p.a = a;
    p.b = b;
    p.k1 = std::log(std::abs(a));
    p.k2 = std::log(std::abs(b));
    p.alpha = 2.0 * p.k1 / (p.k1 + p.k2);
    p.lambda1 = 1.0 / (p.alpha * p.alpha);
    p.lambda2 = 1.0 / ((2.0 - p.alpha) * (2.0 - p.alpha));
    return p;
}

HopfParams HopfParams::create(Complex a, Complex b, double lambda1, double lambda2) {
    if (lambda1 <= 0 || lambda2 <= 0)
        throw std::invalid_argument("metric coefficients must be positive");
    HopfParams p = create(a, b);
    p.lambda1 = lambda1;
    p.lambda2 = lambda2;
    return p;
}

double solve_phi(const HopfParams& params, Complex z, Complex w) {
    if (params.alpha == 1.0) {
        const double phi = std::norm(z) + std::norm(w);
        if (phi == 0.0) throw std::invalid_argument("Phi is undefined at the origin");
        return phi;
    }
    return solve_phi_newton(params, z, w);
}

double solve_phi_newton(const HopfParams& params, Complex z, Complex w) {
    const double az2 = std::norm(z);
    const double aw2 = std::norm(w);
    if (az2 == 0.0 && aw2 == 0.0)
        throw std::invalid_argument("Phi is undefined at the origin");
    const double alpha = params.alpha;

    // G(t) = |z|^2 e^{-a t} + |w|^2 e^{(a-2) t} - 1 is strictly decreasing,
    // so the root in t = log Phi is unique; bracket then run safeguarded
    // Newton.
    auto g = [&](double t) {
        return az2 * std::exp(-alpha * t) + aw2 * std::exp((alpha - 2.0) * t) - 1.0;
    };
    auto dg = [&](double t) {
        return -alpha * az2 * std::exp(-alpha * t) +
               (alpha - 2.0) * aw2 * std::exp((alpha - 2.0) * t);
    };

    const double t0 = std::log(az2 + aw2);
    double lo = t0 - 1.0, hi = t0 + 1.0;
    while (g(lo) < 0.0) lo -= 2.0 * (t0 - lo + 1.0);
    while (g(hi) > 0.0) hi += 2.0 * (hi - t0 + 1.0);

    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double gt = g(t);
        if (gt == 0.0) break;
        if (gt > 0.0)
            lo = t;
        else
            hi = t;
        double step = gt / dg(t);
        double next = t - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection safeguard
        // Run to the rounding floor: downstream finite differences divide
        // solver noise by squared steps, so 1e-14 would not be enough.
        if (std::abs(next - t) <= 4e-16 * (1.0 + std::abs(t))) {
            t = next;
            break;
        }
        t = next;
    }
    return std::exp(t);
}

PhiValue phi_closed_forms(const HopfParams& params, Complex z, Complex w) {
    const double alpha = params.alpha;
    PhiValue v;
    v.phi = solve_phi(params, z, w);
    const double az2 = std::norm(z);
    const double aw2 = std::norm(w);
    const double x = az2 * std::pow(v.phi, -alpha);
    const double y = aw2 * std::pow(v.phi, alpha - 2.0);
    v.residual = x + y - 1.0;
    v.delta = alpha * x + (2.0 - alpha) * y;

    v.dphi[0] = std::conj(z) * std::pow(v.phi, 1.0 - alpha) / v.delta;
    v.dphi[1] = std::conj(w) * std::pow(v.phi, alpha - 1.0) / v.delta;

    Eigen::Vector2cd dir;
    dir << (alpha - 2.0) * w, alpha * z;
    v.m_log = (std::pow(v.phi, -2.0) / std::pow(v.delta, 3.0)) * (dir * dir.adjoint());
    v.m_wedge = v.dphi * v.dphi.adjoint();
    return v;
}

PhiHessianSplit phi_hessian_split(const HopfParams& params, Complex z, Complex w) {
    const double alpha = params.alpha;
    const PhiValue v = phi_closed_forms(params, z, w);
    const double phi = v.phi, delta = v.delta;
    const double az2 = std::norm(z), aw2 = std::norm(w);
    auto p = [&](double e) { return std::pow(phi, e); };

    PhiHessianSplit split;
    const double common = 1.0 / (p(2.0 * alpha - 2.0) * delta * delta);
    split.a = CMat::Zero(2, 2);
    split.a(0, 0) = common * (alpha * az2 * p(-1.0) + (2.0 - alpha) * aw2 * p(2.0 * alpha - 3.0));
    split.a(1, 1) =
        common * (alpha * az2 * p(2.0 * alpha - 3.0) + (2.0 - alpha) * aw2 * p(4.0 * alpha - 5.0));

    Eigen::Vector2cd q;
    q << -alpha * std::conj(z) * p(-1.0), (alpha - 2.0) * std::conj(w) * p(2.0 * alpha - 3.0);
    split.b = (q * v.dphi.adjoint()) / (p(alpha - 1.0) * delta);

    const double c_scalar =
        (alpha * az2 * p(-2.0) + (alpha - 2.0) * (2.0 * alpha - 3.0) * aw2 * p(2.0 * alpha - 4.0)) /
        (p(alpha - 1.0) * delta);
    split.c = c_scalar * v.m_wedge;

    split.d = CMat::Zero(2, 2);
    const double d_scalar = (2.0 * alpha - 2.0) * p(2.0 * alpha - 3.0) / (p(alpha - 1.0) * delta);
    split.d(0, 1) = d_scalar * v.dphi[0] * w;
    split.d(1, 1) = d_scalar * v.dphi[1] * w;
    return split;
}

CMat phi_hessian(const HopfParams& params, Complex z, Complex w) {
    const PhiValue v = phi_closed_forms(params, z, w);
    return v.phi * v.m_log + v.m_wedge / v.phi;
}

MetricField gauduchon_metric(const HopfParams& params) {
    MetricField m;
    m.dim = 2;
    m.kahler = false;
    m.value = [params](const CVec& zw) {
        const double phi = solve_phi(params, zw[0], zw[1]);
        CMat h = CMat::Zero(2, 2);
        h(0, 0) = params.f(0, phi);
        h(1, 1) = params.f(1, phi);
        return h;
    };
    m.d1 = [params](const CVec& zw, int i) {
        const PhiValue v = phi_closed_forms(params, zw[0], zw[1]);
        CMat out = CMat::Zero(2, 2);
        for (int k = 0; k < 2; ++k) {
            const double mu = params.mu(k);
            out(k, k) = params.f(k, v.phi) * mu / v.phi * v.dphi[i];
        }
        return out;
    };
    m.d2 = [params](const CVec& zw, int i, int j) {
        const PhiValue v = phi_closed_forms(params, zw[0], zw[1]);
        CMat out = CMat::Zero(2, 2);
        for (int k = 0; k < 2; ++k) {
            const double mu = params.mu(k);
            // ddbar Phi^mu = mu Phi^mu ddbar log Phi + mu^2 Phi^{mu-2} dPhi dbarPhi
            out(k, k) = (k == 0 ? params.lambda1 : params.lambda2) *
                        (mu * std::pow(v.phi, mu) * v.m_log(i, j) +
                         mu * mu * std::pow(v.phi, mu - 2.0) * v.m_wedge(i, j));
        }
        return out;
    };
    return m;
}

GauduchonReport verify_gauduchon(const HopfParams& params, const std::vector<CVec>& grid) {
    GauduchonReport report;
    report.grid_points = static_cast<int>(grid.size());
    const MetricField metric = gauduchon_metric(params);

    auto f1 = [&](const CVec& zw) {
        return Complex(params.f(0, solve_phi(params, zw[0], zw[1])));
    };
    auto f2 = [&](const CVec& zw) {
        return Complex(params.f(1, solve_phi(params, zw[0], zw[1])));
    };

    for (const CVec& zw : grid) {
        const Complex t1 = metric.d2(zw, 1, 1)(0, 0);  // d_w d_wbar f1
        const Complex t2 = metric.d2(zw, 0, 0)(1, 1);  // d_z d_zbar f2
        // The two entries can vanish together (alpha = 1 on |z| = |w|), so
        // the residual is scaled by the full second-derivative magnitude.
        double scale = 1e-300;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                scale = std::max(scale, metric.d2(zw, i, j).cwiseAbs().maxCoeff());
        report.max_scaled_residual_closed =
            std::max(report.max_scaled_residual_closed, std::abs(t1 + t2) / scale);

        const Complex u1 = wirtinger_dd(f1, zw, 1, 1, metric.diff);
        const Complex u2 = wirtinger_dd(f2, zw, 0, 0, metric.diff);
        report.max_scaled_residual_fd =
            std::max(report.max_scaled_residual_fd, std::abs(u1 + u2) / scale);
    }
    return report;
}

HopfCurvatureResult hopf_curvature(const HopfParams& params, const CVec& point,
                                   std::uint64_t seed) {
    const PhiValue v = phi_closed_forms(params, point[0], point[1]);
    CurvatureTensor raw(2, 2, SymmetryTag::hermitian);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CMat block = CMat::Zero(2, 2);
            for (int k = 0; k < 2; ++k)
                block(k, k) = v.m_log(i, j) * (-params.mu(k)) * params.f(k, v.phi);
            raw.block(i, j) = block;
        }
    CMat h = CMat::Zero(2, 2);
    h(0, 0) = params.f(0, v.phi);
    h(1, 1) = params.f(1, v.phi);

    HopfCurvatureResult out{to_identity_frame(raw, h), {}};
    out.tensor.enforce_symmetry();
    out.griffiths = griffiths_min(out.tensor, seed, 8);
    return out;
}

CMat ricci_form(const HopfParams& params, const CVec& point) {
    return 2.0 * phi_closed_forms(params, point[0], point[1]).m_log;
}

namespace {

// Directions for the relative-tangent scan: the W2 = 0 axis (where the
// curvature reduces to (alpha-1) * 2 ddbar log Phi), balanced directions and
// a Kronecker spread.  The W1 = 0 axis is excluded: the family keeps the
// lambda-independent base block 2(1-alpha) ddbar log Phi there, so the
// epsilon-bound only holds for directions bounded away from it.
std::vector<CVec> relative_fiber_directions(int count) {
    std::vector<CVec> out;
    out.push_back(CVec::Unit(2, 0));
    CVec flat(2);
    flat << Complex(1, 0), Complex(1, 0);
    out.push_back(flat / flat.norm());
    auto frac = [](double x) { return x - std::floor(x); };
    for (int k = 1; static_cast<int>(out.size()) < count; ++k) {
        const double u1 = frac((k + 0.5) * std::sqrt(2.0));
        const double u2 = frac((k + 0.5) * std::sqrt(3.0));
        const double theta = 0.5 * M_PI * u1;
        CVec v(2);
        v << std::cos(theta), std::polar(std::sin(theta), 2.0 * M_PI * u2);
        if (std::abs(v[0]) < 0.05) continue;
        out.push_back(v);
    }
    return out;
}

// Hessian over (z, w, u) of log S, S = sum_k c_k e^{m_k t} |W_k(u)|^2 with
// t = log Phi, in the chart W = (u, 1) or (1, u).
struct FiberChart {
    int var_index;  // which of W1, W2 is the chart variable u
    Complex u0;
};

CMat relative_curvature_matrix(const HopfParams& params, const PhiValue& v,
                               const FiberChart& chart) {
    const double c[2] = {1.0 / params.lambda1, 1.0 / params.lambda2};
    const double m[2] = {params.alpha - 1.0, 1.0 - params.alpha};

    Eigen::Vector3cd tau = Eigen::Vector3cd::Zero();
    tau[0] = v.dphi[0] / v.phi;
    tau[1] = v.dphi[1] / v.phi;

    CMat p3 = CMat::Zero(3, 3);
    p3.topLeftCorner(2, 2) = v.m_log;

    // W_k(u), derivatives W_k'.
    Complex wval[2], wder[2] = {0.0, 0.0};
    wval[chart.var_index] = chart.u0;
    wval[1 - chart.var_index] = 1.0;
    wder[chart.var_index] = 1.0;

    const double emt[2] = {std::pow(v.phi, m[0]), std::pow(v.phi, m[1])};

    double s = 0.0;
    Eigen::Vector3cd sigma = Eigen::Vector3cd::Zero();
    CMat hess_s = CMat::Zero(3, 3);
    for (int k = 0; k < 2; ++k) {
        const double q = std::norm(wval[k]);
        Eigen::Vector3cd g = Eigen::Vector3cd::Zero();
        g[2] = std::conj(wval[k]) * wder[k];
        const double weight = c[k] * emt[k];
        s += weight * q;
        sigma += weight * (m[k] * q * tau + g);
        hess_s += weight * (m[k] * q * p3 + m[k] * m[k] * q * (tau * tau.adjoint()) +
                            m[k] * (tau * g.adjoint() + g * tau.adjoint()));
        hess_s(2, 2) += weight * std::norm(wder[k]);
    }
    CMat hess_log = hess_s / s - (sigma * sigma.adjoint()) / (s * s);
    return 2.0 * hess_log;
}

}  // namespace

RelativePointSample relative_tangent_at(const HopfParams& params, const CVec& zw,
                                        const CVec& direction) {
    const PhiValue v = phi_closed_forms(params, zw[0], zw[1]);
    FiberChart chart;
    if (std::abs(direction[0]) >= std::abs(direction[1])) {
        chart.var_index = 1;  // W = (1, u)
        chart.u0 = direction[1] / direction[0];
    } else {
        chart.var_index = 0;  // W = (u, 1)
        chart.u0 = direction[0] / direction[1];
    }
    RelativePointSample sample;
    sample.curvature = relative_curvature_matrix(params, v, chart);

    const HopfParams reference = HopfParams::create(params.a, params.b);
    const PhiValue vref = phi_closed_forms(reference, zw[0], zw[1]);
    sample.reference = CMat::Zero(3, 3);
    sample.reference(0, 0) = reference.f(0, vref.phi);
    sample.reference(1, 1) = reference.f(1, vref.phi);
    const double opu = 1.0 + std::norm(chart.u0);
    sample.reference(2, 2) = 1.0 / (opu * opu);  // fiber Fubini-Study form
    return sample;
}

RelativeTangentReport relative_tangent_bound(const HopfParams& params, double eps,
                                             const std::vector<CVec>& base_grid,
                                             int fiber_samples) {
    RelativeTangentReport report;
    report.lambda2 = params.lambda2;
    report.min_eigenvalue_with_margin = std::numeric_limits<double>::infinity();
    report.min_curvature_eigenvalue = std::numeric_limits<double>::infinity();

    const auto directions = relative_fiber_directions(fiber_samples);
    for (const CVec& zw : base_grid) {
        for (const CVec& a : directions) {
            const RelativePointSample sample = relative_tangent_at(params, zw, a);
            Eigen::SelfAdjointEigenSolver<CMat> ef(sample.curvature);
            report.min_curvature_eigenvalue =
                std::min(report.min_curvature_eigenvalue, ef.eigenvalues().minCoeff());
            Eigen::SelfAdjointEigenSolver<CMat> em(sample.curvature + eps * sample.reference);
            report.min_eigenvalue_with_margin =
                std::min(report.min_eigenvalue_with_margin, em.eigenvalues().minCoeff());
        }
    }
    report.satisfied = report.min_eigenvalue_with_margin >= -1e-9;
    return report;
}

RelativeTangentReport find_lambda2(const HopfParams& params, double eps,
                                   const std::vector<CVec>& base_grid, int fiber_samples,
                                   int max_doublings) {
    HopfParams trial = params;
    trial.lambda2 = params.lambda1;
    for (int k = 0; k <= max_doublings; ++k) {
        RelativeTangentReport report =
            relative_tangent_bound(trial, eps, base_grid, fiber_samples);
        report.doublings = k;
        if (report.satisfied) return report;
        trial.lambda2 *= 2.0;
    }
    RelativeTangentReport report = relative_tangent_bound(trial, eps, base_grid, fiber_samples);
    report.doublings = max_doublings;
    report.satisfied = false;
    return report;
}

EquivarianceGap deck_equivariance_gap(const HopfParams& params, Complex z, Complex w) {
    const double phi = solve_phi(params, z, w);
    const double phi_deck = solve_phi(params, params.a * z, params.b * w);
    const double scale = std::abs(params.a) * std::abs(params.b);
    EquivarianceGap gap;
    gap.phi_gap = std::abs(phi_deck - scale * phi) / phi;
    const double zterm = std::norm(z) * std::pow(phi, -params.alpha);
    const double zterm_deck =
        std::norm(params.a * z) * std::pow(phi_deck, -params.alpha);
    gap.zterm_gap = std::abs(zterm_deck - zterm);
    return gap;
}

std::vector<CVec> hopf_grid(int points_per_axis) {
    std::vector<CVec> grid;
    auto frac = [](double x) { return x - std::floor(x); };
    for (int i = 0; i < points_per_axis; ++i)
        for (int j = 0; j < points_per_axis; ++j) {
            const double s = points_per_axis == 1 ? 0.5 : double(i) / (points_per_axis - 1);
            const double t = points_per_axis == 1 ? 0.5 : double(j) / (points_per_axis - 1);
            const double r1 = 0.5 * std::pow(1.8 / 0.5, s);
            const double r2 = 0.5 * std::pow(1.8 / 0.5, t);
            const double th1 = 2.0 * M_PI * frac(0.618033988749895 * (i + 1));
            const double th2 = 2.0 * M_PI * frac(0.618033988749895 * (j + 1) + 0.25);
            CVec zw(2);
            zw[0] = std::polar(r1, th1);
            zw[1] = std::polar(r2, th2);
            grid.push_back(zw);
        }
    return grid;
}

void hopf_grid_csv(const HopfParams& params, const std::vector<CVec>& grid,
                   std::ostream& out) {
    out << "re_z,im_z,re_w,im_w,phi,delta,min_eig_mlog,det_mlog,gauduchon_residual,"
           "griffiths_min\n";
    const MetricField metric = gauduchon_metric(params);
    for (const CVec& zw : grid) {
        const PhiValue v = phi_closed_forms(params, zw[0], zw[1]);
        Eigen::SelfAdjointEigenSolver<CMat> es(v.m_log);
        const Complex t1 = metric.d2(zw, 1, 1)(0, 0);
        const Complex t2 = metric.d2(zw, 0, 0)(1, 1);
        const double residual =
            std::abs(t1 + t2) / std::max({std::abs(t1), std::abs(t2), 1e-300});
        const HopfCurvatureResult hc = hopf_curvature(params, zw);
        out << zw[0].real() << "," << zw[0].imag() << "," << zw[1].real() << ","
            << zw[1].imag() << "," << v.phi << "," << v.delta << ","
            << es.eigenvalues().minCoeff() << "," << std::abs(v.m_log.determinant()) << ","
            << residual << "," << hc.griffiths.min_value << "\n";
    }
}

}  // namespace semipos
