#include "semipos/class_ring.hpp"

#include <algorithm>
#include <sstream>

namespace semipos {

std::string BasePresentation::name() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "x";
        s += "P" + std::to_string(factors[i]);
    }
    return s;
}

BasePresentation BasePresentation::parse(const std::string& name) {
    std::vector<int> dims;
    size_t pos = 0;
    while (pos < name.size()) {
        if (name[pos] != 'P') throw std::invalid_argument("bad base name: " + name);
        ++pos;
        size_t start = pos;
        while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("bad base name: " + name);
        dims.push_back(std::stoi(name.substr(start, pos - start)));
        if (pos < name.size()) {
            if (name[pos] != 'x') throw std::invalid_argument("bad base name: " + name);
            ++pos;
        }
    }
    return BasePresentation(dims);
}

GradedClass::GradedClass(BasePresentation base, const Rational& scalar) : base_(std::move(base)) {
    if (scalar != 0) terms_[Exponents(base_.num_factors(), 0)] = scalar;
}

GradedClass GradedClass::hyperplane(const BasePresentation& base, int factor) {
    GradedClass g(base);
    Exponents e(base.num_factors(), 0);
    e.at(factor) = 1;
    g.add_term(e, 1);
    return g;
}

void GradedClass::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(e.size()) != base_.num_factors())
        throw std::invalid_argument("exponent arity mismatch");
    for (int i = 0; i < base_.num_factors(); ++i) {
        if (e[i] < 0) throw std::invalid_argument("negative exponent");
        if (e[i] > base_.factors[i]) return;  // truncation: hi^{ni+1} = 0
    }
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GradedClass GradedClass::component(int degree) const {
    GradedClass out(base_);
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        if (d == degree) out.add_term(e, c);
    }
    return out;
}

int GradedClass::max_degree() const {
    int m = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        m = std::max(m, d);
    }
    return m;
}

Rational GradedClass::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void GradedClass::check_same_base(const GradedClass& o) const {
    if (!(base_ == o.base_)) throw std::invalid_argument("mismatched base presentations");
}

GradedClass& GradedClass::operator+=(const GradedClass& o) {
    check_same_base(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

GradedClass& GradedClass::operator-=(const GradedClass& o) {
    check_same_base(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

GradedClass operator*(const GradedClass& a, const GradedClass& b) {
    a.check_same_base(b);
    GradedClass out(a.base_);
    const int m = a.base_.num_factors();
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(m);
            bool alive = true;
            for (int i = 0; i < m; ++i) {
                e[i] = ea[i] + eb[i];
                if (e[i] > a.base_.factors[i]) {
                    alive = false;
                    break;
                }
            }
            if (alive) out.add_term(e, ca * cb);
        }
    }
    return out;
}

GradedClass operator*(const Rational& c, GradedClass a) {
    if (c == 0) return GradedClass(a.base_);
    for (auto& [e, v] : a.terms_) v *= c;
    return a;
}

GradedClass GradedClass::operator-() const { return Rational(-1) * (*this); }

GradedClass GradedClass::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power of a graded class");
    GradedClass out = GradedClass::one(base_);
    for (int i = 0; i < k; ++i) out = out * (*this);
    return out;
}

Rational GradedClass::integrate() const {
    Exponents top(base_.factors.begin(), base_.factors.end());
    return coefficient(top);
}

std::string GradedClass::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational coeff = c;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        os << to_string(coeff);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << " * h" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

BundleClass::BundleClass(int r, GradedClass c) : rank(r), total_chern(std::move(c)) {
    if (rank < 1) throw std::invalid_argument("bundle rank must be >= 1");
    if (!(total_chern.component(0) == GradedClass::one(total_chern.base())))
        throw std::invalid_argument("total Chern class must start with 1");
    for (int k = rank + 1; k <= total_chern.max_degree(); ++k)
        if (!total_chern.component(k).is_zero())
            throw std::invalid_argument("c_k must vanish for k > rank");
}

BundleClass trivial_line(const BasePresentation& base) {
    return BundleClass(1, GradedClass::one(base));
}

BundleClass line_bundle(const BasePresentation& base, const std::vector<int>& degrees) {
    if (static_cast<int>(degrees.size()) != base.num_factors())
        throw std::invalid_argument("line bundle degree arity mismatch");
    GradedClass c = GradedClass::one(base);
    for (int i = 0; i < base.num_factors(); ++i)
        c += Rational(degrees[i]) * GradedClass::hyperplane(base, i);
    return BundleClass(1, c);
}

BundleClass tangent_bundle(const BasePresentation& base) {
    // Euler sequence per factor: c(T P^n) = (1+h)^{n+1}, truncated.
    GradedClass c = GradedClass::one(base);
    for (int i = 0; i < base.num_factors(); ++i) {
        GradedClass f = GradedClass::one(base) + GradedClass::hyperplane(base, i);
        c = c * f.pow(base.factors[i] + 1);
    }
    return BundleClass(base.dim(), c);
}

BundleClass cotangent_bundle(const BasePresentation& base) {
    return dual_bundle(tangent_bundle(base));
}

BundleClass dual_bundle(const BundleClass& e) {
    GradedClass c(e.total_chern.base());
    for (int k = 0; k <= e.total_chern.max_degree(); ++k) {
        Rational sign = (k % 2 == 0) ? 1 : -1;
        c += sign * e.chern(k);
    }
    return BundleClass(e.rank, c);
}

BundleClass determinant_bundle(const BundleClass& e) {
    return BundleClass(1, GradedClass::one(e.total_chern.base()) + e.chern(1));
}

BundleClass direct_sum(const BundleClass& e, const BundleClass& f) {
    return BundleClass(e.rank + f.rank, e.total_chern * f.total_chern);
}

BundleClass tensor_with_line(const BundleClass& e, const BundleClass& line) {
    if (e.rank > 1 && line.rank > 1)
        throw std::invalid_argument("tensor of two higher-rank bundles is unsupported");
    if (line.rank > 1) return tensor_with_line(line, e);
    const BasePresentation& base = e.total_chern.base();
    if (!(base == line.total_chern.base()))
        throw std::invalid_argument("mismatched base presentations");
    const GradedClass ell = line.chern(1);
    const int r = e.rank;
    const int top = std::min(r, base.dim());
    GradedClass c(base);
    for (int k = 0; k <= top; ++k) {
        GradedClass ck(base);
        for (int i = 0; i <= k; ++i) {
            Rational b(binomial(r - i, k - i));
            if (b == 0) continue;
            ck += b * (e.chern(i) * ell.pow(k - i));
        }
        c += ck;
    }
    return BundleClass(r, c);
}

GradedClass canonical_c1(const BasePresentation& base) {
    GradedClass c(base);
    for (int i = 0; i < base.num_factors(); ++i)
        c += Rational(-(base.factors[i] + 1)) * GradedClass::hyperplane(base, i);
    return c;
}

GradedClass segre_from_chern(const BundleClass& e) {
    const BasePresentation& base = e.total_chern.base();
    const int n = base.dim();
    std::vector<GradedClass> s(n + 1, GradedClass(base));
    s[0] = GradedClass::one(base);
    for (int k = 1; k <= n; ++k) {
        GradedClass acc = e.chern(k);
        for (int i = 1; i < k; ++i) acc += s[k - i] * e.chern(i);
        s[k] = -acc;
    }
    GradedClass total(base);
    for (int k = 0; k <= n; ++k) total += s[k];
    return total;
}

SegreVerdict signed_segre_number(const BundleClass& e) {
    const int n = e.total_chern.base().dim();
    Rational v = segre_from_chern(e).component(n).integrate();
    if (n % 2 != 0) v = -v;
    return {v, v > 0};
}

ProjBundleRing::ProjBundleRing(BundleClass e) : bundle_(std::move(e)) {
    const BundleClass dual = dual_bundle(bundle_);
    dual_chern_.reserve(bundle_.rank + 1);
    for (int i = 0; i <= bundle_.rank; ++i) dual_chern_.push_back(dual.chern(i));
}

ProjBundleRing::Element ProjBundleRing::zero() const {
    return Element(rank(), GradedClass(base()));
}

ProjBundleRing::Element ProjBundleRing::pullback(const GradedClass& c) const {
    Element a = zero();
    a[0] = c;
    return a;
}

ProjBundleRing::Element ProjBundleRing::xi() const {
    if (rank() == 1) {
        // xi + c1(E*) = 0, so xi is already a base class.
        Element a = zero();
        a[0] = -dual_chern_[1];
        return a;
    }
    Element a = zero();
    a[1] = GradedClass::one(base());
    return a;
}

ProjBundleRing::Element ProjBundleRing::add(const Element& a, const Element& b) const {
    Element out = a;
    for (int k = 0; k < rank(); ++k) out[k] += b[k];
    return out;
}

ProjBundleRing::Element ProjBundleRing::scale(const Rational& c, const Element& a) const {
    Element out = a;
    for (int k = 0; k < rank(); ++k) out[k] = c * out[k];
    return out;
}

ProjBundleRing::Element ProjBundleRing::mul(const Element& a, const Element& b) const {
    const int r = rank();
    std::vector<GradedClass> raw(2 * r - 1, GradedClass(base()));
    for (int i = 0; i < r; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < r; ++j) raw[i + j] += a[i] * b[j];
    }
    // Reduce from the top: xi^m = -sum_{k=1..r} ck(E*) xi^{m-k} for m >= r.
    for (int m = 2 * r - 2; m >= r; --m) {
        if (raw[m].is_zero()) continue;
        for (int k = 1; k <= r; ++k) raw[m - k] -= raw[m] * dual_chern_[k];
        raw[m] = GradedClass(base());
    }
    raw.resize(r, GradedClass(base()));
    return raw;
}

ProjBundleRing::Element ProjBundleRing::pow(const Element& a, int k) const {
    if (k < 0) throw std::invalid_argument("negative power in projective bundle ring");
    Element out = pullback(GradedClass::one(base()));
    for (int i = 0; i < k; ++i) out = mul(out, a);
    return out;
}

GradedClass ProjBundleRing::pushforward(const Element& a) const { return a[rank() - 1]; }

Rational ProjBundleRing::integrate(const Element& a) const {
    return pushforward(a).integrate();
}

ProjBundleRing::Element ProjBundleRing::canonical_class() const {
    GradedClass twist = canonical_c1(base()) + bundle_.chern(1);
    Element a = scale(Rational(-rank()), xi());
    a[0] += twist;
    return a;
}

ProjBundleRing::Element ProjBundleRing::anticanonical_class() const {
    return scale(Rational(-1), canonical_class());
}

std::string ProjBundleRing::str(const Element& a) const {
    std::ostringstream os;
    bool wrote = false;
    for (int k = 0; k < rank(); ++k) {
        if (a[k].is_zero()) continue;
        if (wrote) os << " + ";
        wrote = true;
        if (k == 0) {
            os << a[k].str();
        } else {
            os << "(" << a[k].str() << ") * xi";
            if (k > 1) os << "^" << k;
        }
    }
    return wrote ? os.str() : "0";
}

}  // namespace semipos
