#include "semipos/metric_field.hpp"

#include <stdexcept>

namespace semipos {

CMat fubini_study_value(const CVec& z) {
    const Eigen::Index n = z.size();
    const double denom = 1.0 + z.squaredNorm();
    CMat h = CMat::Identity(n, n) / denom;
    h -= z.conjugate() * z.transpose() / (denom * denom);
    return h;
}

namespace {

// d_k h for the Fubini-Study metric, h_{i jbar} = delta_ij/(1+s) - zbar_i z_j/(1+s)^2.
CMat fs_d1(const CVec& z, int k) {
    const Eigen::Index n = z.size();
    const double p = 1.0 + z.squaredNorm();
    CMat out = CMat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex v = 2.0 * std::conj(z[i]) * z[j] * std::conj(z[k]) / (p * p * p);
            if (i == j) v -= std::conj(z[k]) / (p * p);
            if (j == k) v -= std::conj(z[i]) / (p * p);
            out(i, j) = v;
        }
    return out;
}

CMat fs_d2(const CVec& z, int k, int l) {
    const Eigen::Index n = z.size();
    const double p = 1.0 + z.squaredNorm();
    CMat out = CMat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex v = -6.0 * std::conj(z[i]) * z[j] * std::conj(z[k]) * z[l] /
                        (p * p * p * p);
            v += 2.0 * Complex(i == l) * z[j] * std::conj(z[k]) / (p * p * p);
            v += 2.0 * Complex(k == l) * std::conj(z[i]) * z[j] / (p * p * p);
            if (i == j) {
                v += 2.0 * std::conj(z[k]) * z[l] / (p * p * p);
                if (k == l) v -= 1.0 / (p * p);
            }
            if (j == k) {
                v += 2.0 * std::conj(z[i]) * z[l] / (p * p * p);
                if (i == l) v -= 1.0 / (p * p);
            }
            out(i, j) = v;
        }
    return out;
}

}  // namespace

MetricField flat_metric(int n) { return constant_metric(CMat::Identity(n, n)); }

MetricField constant_metric(const CMat& h0) {
    MetricField m;
    m.dim = static_cast<int>(h0.rows());
    m.kahler = true;
    const int n = m.dim;
    m.value = [h0](const CVec&) { return h0; };
    m.d1 = [n](const CVec&, int) { return CMat::Zero(n, n).eval(); };
    m.d2 = [n](const CVec&, int, int) { return CMat::Zero(n, n).eval(); };
    return m;
}

MetricField fubini_study_metric(int n, bool closed_form_derivatives) {
    MetricField m;
    m.dim = n;
    m.kahler = true;
    m.value = [](const CVec& z) { return fubini_study_value(z); };
    if (closed_form_derivatives) {
        m.d1 = [](const CVec& z, int i) { return fs_d1(z, i); };
        m.d2 = [](const CVec& z, int i, int j) { return fs_d2(z, i, j); };
    }
    return m;
}

MetricField product_fubini_study_metric(const std::vector<int>& factor_dims,
                                        bool closed_form_derivatives) {
    int n = 0;
    for (int d : factor_dims) {
        if (d < 1) throw std::invalid_argument("factor dimension must be >= 1");
        n += d;
    }
    auto offsets = [factor_dims]() {
        std::vector<int> off{0};
        for (int d : factor_dims) off.push_back(off.back() + d);
        return off;
    }();

    MetricField m;
    m.dim = n;
    m.kahler = true;
    m.value = [factor_dims, offsets, n](const CVec& z) {
        CMat h = CMat::Zero(n, n);
        for (size_t f = 0; f < factor_dims.size(); ++f) {
            const int a = offsets[f], d = factor_dims[f];
            h.block(a, a, d, d) = fubini_study_value(z.segment(a, d));
        }
        return h;
    };
    if (closed_form_derivatives) {
        auto factor_of = [offsets](int i) {
            size_t f = 0;
            while (offsets[f + 1] <= i) ++f;
            return f;
        };
        m.d1 = [factor_dims, offsets, factor_of, n](const CVec& z, int i) {
            CMat out = CMat::Zero(n, n);
            const size_t f = factor_of(i);
            const int a = offsets[f], d = factor_dims[f];
            out.block(a, a, d, d) = fs_d1(z.segment(a, d), i - a);
            return out;
        };
        m.d2 = [factor_dims, offsets, factor_of, n](const CVec& z, int i, int j) {
            CMat out = CMat::Zero(n, n);
            const size_t fi = factor_of(i), fj = factor_of(j);
            if (fi != fj) return out;  // cross-factor derivatives vanish
            const int a = offsets[fi], d = factor_dims[fi];
            out.block(a, a, d, d) = fs_d2(z.segment(a, d), i - a, j - a);
            return out;
        };
    }
    return m;
}

}  // namespace semipos
