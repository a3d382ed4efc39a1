#pragma once

#include <functional>

#include "semipos/differentiation.hpp"

namespace semipos {

// A smooth Hermitian metric field z -> h(z) on a chart of C^n, positive
// definite wherever it is queried.  Derivatives come from the closed-form
// callbacks when present and from the finite-difference backend otherwise.
struct MetricField {
    int dim = 0;
    bool kahler = false;
    std::function<CMat(const CVec&)> value;
    std::function<CMat(const CVec&, int)> d1;       // optional: d_i h
    std::function<CMat(const CVec&, int, int)> d2;  // optional: d_i d_jbar h
    DiffConfig diff;

    CMat first_derivative(const CVec& z, int i) const {
        if (d1) return d1(z, i);
        return wirtinger_d_scaled(value, z, i, diff);
    }
    CMat second_derivative(const CVec& z, int i, int j) const {
        if (d2) return d2(z, i, j);
        return wirtinger_dd(value, z, i, j, diff);
    }
};

// Built-in fields.
MetricField flat_metric(int n);
MetricField constant_metric(const CMat& h0);
// Fubini-Study on the affine chart of P^n, potential log(1 + |z|^2).
MetricField fubini_study_metric(int n, bool closed_form_derivatives = false);
// Product of Fubini-Study factors on P^{n1} x ... x P^{nk}.
MetricField product_fubini_study_metric(const std::vector<int>& factor_dims,
                                        bool closed_form_derivatives = false);

// Evaluates the Fubini-Study metric matrix on the chart.
CMat fubini_study_value(const CVec& z);

}  // namespace semipos
