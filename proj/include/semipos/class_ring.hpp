#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "semipos/rational.hpp"

namespace semipos {

// Cohomology ring of a product of projective spaces P^{n1} x ... x P^{nm}:
// polynomials in the hyperplane classes h1, ..., hm modulo hi^{ni+1} = 0,
// with exact rational coefficients.

struct BasePresentation {
    std::vector<int> factors;  // (n1, ..., nm), all >= 1

    explicit BasePresentation(std::vector<int> dims) : factors(std::move(dims)) {
        if (factors.empty()) throw std::invalid_argument("base needs at least one factor");
        for (int n : factors)
            if (n < 1) throw std::invalid_argument("factor dimension must be >= 1");
    }

    int dim() const {
        int d = 0;
        for (int n : factors) d += n;
        return d;
    }
    int num_factors() const { return static_cast<int>(factors.size()); }

    bool operator==(const BasePresentation& o) const { return factors == o.factors; }

    // "P2", "P1xP1", ...
    std::string name() const;
    static BasePresentation parse(const std::string& name);
};

// Exponent tuple, one entry per factor.  Kept truncated: e[i] <= n[i].
using Exponents = std::vector<int>;

class GradedClass {
  public:
    explicit GradedClass(BasePresentation base) : base_(std::move(base)) {}
    GradedClass(BasePresentation base, const Rational& scalar);

    static GradedClass zero(const BasePresentation& base) { return GradedClass(base); }
    static GradedClass one(const BasePresentation& base) { return GradedClass(base, 1); }
    // The hyperplane class of factor `i` (0-based).
    static GradedClass hyperplane(const BasePresentation& base, int factor);

    const BasePresentation& base() const { return base_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    // Sum of all terms of total degree k.
    GradedClass component(int degree) const;
    int max_degree() const;
    Rational coefficient(const Exponents& e) const;

    // Adds c * h^e, truncating out-of-range exponents to zero.
    void add_term(const Exponents& e, const Rational& c);

    GradedClass& operator+=(const GradedClass& o);
    GradedClass& operator-=(const GradedClass& o);
    friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
    friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
    friend GradedClass operator*(const GradedClass& a, const GradedClass& b);
    friend GradedClass operator*(const Rational& c, GradedClass a);
    GradedClass operator-() const;
    GradedClass pow(int k) const;

    bool operator==(const GradedClass& o) const {
        return base_ == o.base_ && terms_ == o.terms_;
    }

    // Coefficient of the top monomial h1^{n1} ... hm^{nm} (the fundamental
    // class pairing; zero when no top-degree term is present).
    Rational integrate() const;

    // Canonical text form, e.g. "1 + 3 * h1 + 3 * h1^2".
    std::string str() const;

  private:
    void check_same_base(const GradedClass& o) const;

    BasePresentation base_;
    std::map<Exponents, Rational> terms_;  // zero coefficients never stored
};

// A vector bundle known through its rank and total Chern class.
struct BundleClass {
    int rank;
    GradedClass total_chern;  // degree-0 term 1; components beyond rank/dim vanish

    BundleClass(int r, GradedClass c);
    GradedClass chern(int k) const { return total_chern.component(k); }
};

// Constructors for the bundle descriptors the expression language exposes.
BundleClass trivial_line(const BasePresentation& base);
BundleClass line_bundle(const BasePresentation& base, const std::vector<int>& degrees);
BundleClass tangent_bundle(const BasePresentation& base);
BundleClass cotangent_bundle(const BasePresentation& base);
BundleClass dual_bundle(const BundleClass& e);
BundleClass determinant_bundle(const BundleClass& e);
BundleClass direct_sum(const BundleClass& e, const BundleClass& f);
// c_k(E (x) L) = sum_i binom(r-i, k-i) c_i(E) c1(L)^{k-i}.  Rejects two
// factors of rank > 1: the general tensor Chern class is out of scope.
BundleClass tensor_with_line(const BundleClass& e, const BundleClass& line);

// c1(K_X) = -sum_i (n_i + 1) h_i on a product of projective spaces.
GradedClass canonical_c1(const BasePresentation& base);

// Total Segre class: the inverse of the total Chern class, computed degree by
// degree from s_k + s_{k-1} c_1 + ... + s_1 c_{k-1} + c_k = 0.
GradedClass segre_from_chern(const BundleClass& e);

struct SegreVerdict {
    Rational value;  // (-1)^n * integral of s_n(E), n = dim X
    bool big;        // value > 0; meaningful only when the caller knows E is nef
};
SegreVerdict signed_segre_number(const BundleClass& e);

// The cohomology ring of Y = P(E*) -> X: polynomials in xi = c1(O_Y(1)) of
// degree < rank, with GradedClass coefficients, reduced by the relation
// xi^r + c1(E*) xi^{r-1} + ... + cr(E*) = 0,  ci(E*) = (-1)^i ci(E).
class ProjBundleRing {
  public:
    // Element in reduced form; index = xi-degree, size = rank.
    using Element = std::vector<GradedClass>;

    explicit ProjBundleRing(BundleClass e);

    const BundleClass& bundle() const { return bundle_; }
    int rank() const { return bundle_.rank; }
    const BasePresentation& base() const { return bundle_.total_chern.base(); }

    Element zero() const;
    Element pullback(const GradedClass& c) const;
    Element xi() const;  // reduced, so for rank 1 this is already a base class
    Element add(const Element& a, const Element& b) const;
    Element scale(const Rational& c, const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element pow(const Element& a, int k) const;

    // pi_*: the coefficient of xi^{r-1} in the reduced form.  Classes of
    // xi-degree < r-1 push forward to zero by convention.  Together with the
    // reduction this realizes pi_*(xi^{r-1+k}) = s_k(E*).
    GradedClass pushforward(const Element& a) const;
    Rational integrate(const Element& a) const;  // over Y: pushforward, then base

    // c1(K_Y) = -r xi + pi*(c1(K_X) + c1(E)), from K_Y = L^{-r} (x) pi*(K_X (x) det E).
    Element canonical_class() const;
    Element anticanonical_class() const;

    std::string str(const Element& a) const;

  private:
    BundleClass bundle_;
    std::vector<GradedClass> dual_chern_;  // ci(E*) for i = 0..r
};

}  // namespace semipos
