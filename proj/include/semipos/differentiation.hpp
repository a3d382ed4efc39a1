#pragma once

#include <Eigen/Dense>
#include <complex>
#include <type_traits>
#include <utility>

namespace semipos {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Finite-difference backend for Wirtinger derivatives of fields on C^n.
// First derivatives: 4th-order central stencils on each real coordinate with
// one Richardson extrapolation level.  Mixed second derivatives d_i d_jbar
// are nested first derivatives; they use larger steps, since with a 1e-4
// step the double-precision roundoff floor (~eps/h^2) would sit near 1e-8,
// too close to the tolerances the engine has to meet.
struct DiffConfig {
    double first_step = 1e-4;
    double second_inner_step = 1e-3;
    double second_outer_step = 2e-3;
    bool richardson = true;
};

namespace detail {

inline double step_scale(const CVec& z) {
    double m = 1.0;
    for (Eigen::Index k = 0; k < z.size(); ++k)
        m = std::max({m, std::abs(z[k].real()), std::abs(z[k].imag())});
    return m;
}

// axis 2i   -> Re z_i
// axis 2i+1 -> Im z_i
inline CVec displace(CVec z, int axis, double delta) {
    if (axis % 2 == 0)
        z[axis / 2] += delta;
    else
        z[axis / 2] += Complex(0.0, delta);
    return z;
}

// Field value type, evaluated (Eigen expressions collapse to plain matrices).
template <class F>
using field_value_t = std::decay_t<decltype(std::declval<F&>()(std::declval<const CVec&>()))>;

template <class F>
field_value_t<F> stencil4(F&& f, const CVec& z, int axis, double h) {
    const field_value_t<F> fp2 = f(displace(z, axis, 2 * h));
    const field_value_t<F> fp1 = f(displace(z, axis, h));
    const field_value_t<F> fm1 = f(displace(z, axis, -h));
    const field_value_t<F> fm2 = f(displace(z, axis, -2 * h));
    field_value_t<F> out = ((fm2 - fp2) + 8.0 * (fp1 - fm1)) * (1.0 / (12.0 * h));
    return out;
}

template <class F>
field_value_t<F> real_derivative(F&& f, const CVec& z, int axis, double h, bool richardson) {
    field_value_t<F> coarse = stencil4(f, z, axis, h);
    if (!richardson) return coarse;
    const field_value_t<F> fine = stencil4(f, z, axis, h / 2);
    field_value_t<F> out = (16.0 * fine - coarse) * (1.0 / 15.0);
    return out;
}

}  // namespace detail

// d/dz_i = (d/dx_i - i d/dy_i)/2.  F must return a complex scalar or a
// complex Eigen matrix.
template <class F>
detail::field_value_t<F> wirtinger_d(F&& f, const CVec& z, int i, double h,
                                     bool richardson = true) {
    const auto dx = detail::real_derivative(f, z, 2 * i, h, richardson);
    const auto dy = detail::real_derivative(f, z, 2 * i + 1, h, richardson);
    detail::field_value_t<F> out = 0.5 * (dx - Complex(0, 1) * dy);
    return out;
}

// d/dzbar_j = (d/dx_j + i d/dy_j)/2.
template <class F>
detail::field_value_t<F> wirtinger_dbar(F&& f, const CVec& z, int j, double h,
                                        bool richardson = true) {
    const auto dx = detail::real_derivative(f, z, 2 * j, h, richardson);
    const auto dy = detail::real_derivative(f, z, 2 * j + 1, h, richardson);
    detail::field_value_t<F> out = 0.5 * (dx + Complex(0, 1) * dy);
    return out;
}

// d_i d_jbar f, nested.  The inner stencil keeps Richardson; the outer step
// is wide enough that its 4th-order truncation is already negligible.
template <class F>
auto wirtinger_dd(F&& f, const CVec& z, int i, int j, const DiffConfig& cfg = {}) {
    const double scale = detail::step_scale(z);
    const double hi = cfg.second_inner_step * scale;
    auto inner = [&](const CVec& y) { return wirtinger_dbar(f, y, j, hi, cfg.richardson); };
    return wirtinger_d(inner, z, i, cfg.second_outer_step * scale, false);
}

template <class F>
auto wirtinger_d_scaled(F&& f, const CVec& z, int i, const DiffConfig& cfg = {}) {
    return wirtinger_d(f, z, i, cfg.first_step * detail::step_scale(z), cfg.richardson);
}

}  // namespace semipos
