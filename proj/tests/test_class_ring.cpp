#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "semipos/class_ring.hpp"

using namespace semipos;

namespace {

// Independent Segre oracle: s(E) = sum_k (1 - c(E))^k.  The series terminates
// because 1 - c(E) has no degree-0 part and the ring is nilpotent.
GradedClass segre_series_oracle(const BundleClass& e) {
    const BasePresentation& base = e.total_chern.base();
    GradedClass u = GradedClass::one(base) - e.total_chern;
    GradedClass out = GradedClass::one(base);
    GradedClass p = GradedClass::one(base);
    for (int k = 1; k <= base.dim(); ++k) {
        p = p * u;
        out += p;
    }
    return out;
}

BundleClass random_bundle(const BasePresentation& base, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> rank_dist(1, 3);
    std::uniform_int_distribution<int> coeff(-4, 4);
    const int r = rank_dist(rng);
    GradedClass c = GradedClass::one(base);
    // Random integer Chern data: each c_k an integer combination of the
    // degree-k monomials, k <= min(rank, dim).
    std::vector<GradedClass> h;
    for (int i = 0; i < base.num_factors(); ++i) h.push_back(GradedClass::hyperplane(base, i));
    const int top = std::min(r, base.dim());
    std::vector<Exponents> monos;
    std::vector<Exponents> frontier{Exponents(base.num_factors(), 0)};
    for (int k = 1; k <= top; ++k) {
        std::vector<Exponents> next;
        for (const auto& e : frontier) {
            for (int i = 0; i < base.num_factors(); ++i) {
                Exponents e2 = e;
                e2[i]++;
                if (e2[i] <= base.factors[i] &&
                    (i == 0 || e2[i - 1] == e[i - 1]))  // crude dedup: bump rightmost-first
                    next.push_back(e2);
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (const auto& e : next) c.add_term(e, coeff(rng));
        frontier = next;
    }
    return BundleClass(r, c);
}

const BasePresentation P1{{1}};
const BasePresentation P2{{2}};
const BasePresentation P3{{3}};
const BasePresentation P1xP1{{1, 1}};

}  // namespace

TEST_CASE("graded class arithmetic and truncation") {
    GradedClass h = GradedClass::hyperplane(P2, 0);
    CHECK(h.pow(2).integrate() == 1);  // fundamental class normalization
    CHECK(h.pow(3).is_zero());         // h^3 = 0 on P2
    GradedClass x = GradedClass::one(P2) + Rational(3) * h;
    CHECK((x * x).coefficient({1}) == 6);
    CHECK((x - x).is_zero());

    // Truncation soundness: multiplying any class by h^{n+1-deg} kills it.
    GradedClass y = Rational(5) * h.pow(2);
    CHECK((y * h).is_zero());

    GradedClass h1 = GradedClass::hyperplane(P1xP1, 0);
    GradedClass h2 = GradedClass::hyperplane(P1xP1, 1);
    CHECK((h1 + h2).pow(2).integrate() == 2);  // 2 h1 h2
    CHECK(h1.pow(2).is_zero());
}

TEST_CASE("total Chern classes of standard bundles") {
    BundleClass t = tangent_bundle(P2);
    CHECK(t.rank == 2);
    CHECK(t.chern(1) == Rational(3) * GradedClass::hyperplane(P2, 0));
    CHECK(t.chern(2).integrate() == 3);  // c2(TP2) = 3

    CHECK(trivial_line(P2).total_chern == GradedClass::one(P2));
    CHECK(line_bundle(P2, {0}).total_chern == GradedClass::one(P2));

    // T P2 (x) O(-1): c1 = h, c2 = h^2.
    BundleClass e = tensor_with_line(t, line_bundle(P2, {-1}));
    CHECK(e.chern(1) == GradedClass::hyperplane(P2, 0));
    CHECK(e.chern(2).integrate() == 1);

    // Product base: c(T(P1xP1)) = (1+2h1)(1+2h2).
    BundleClass tp = tangent_bundle(P1xP1);
    CHECK(tp.chern(1).coefficient({1, 0}) == 2);
    CHECK(tp.chern(2).integrate() == 4);

    CHECK_THROWS_AS(tensor_with_line(t, tangent_bundle(P2)), std::invalid_argument);
    BundleClass on_p1 = tangent_bundle(P1);
    CHECK_THROWS_AS(direct_sum(t, on_p1), std::invalid_argument);
}

TEST_CASE("Segre classes: recursion vs series oracle and pinned values") {
    // s(1) = 1
    CHECK(segre_from_chern(trivial_line(P2)) == GradedClass::one(P2));

    BundleClass t = tangent_bundle(P2);
    GradedClass s = segre_from_chern(t);
    CHECK(s == segre_series_oracle(t));
    CHECK(s.component(1) == -t.chern(1));
    CHECK(s.component(2).integrate() == 6);  // s2 = 9h^2 - 3h^2 = 6h^2

    BundleClass e = tensor_with_line(t, line_bundle(P2, {-1}));
    CHECK(segre_from_chern(e).component(2).is_zero());  // s2 = c1^2 - c2 = 0

    // s2(T) on P1xP1: series oracle gives 4 h1 h2.
    BundleClass tp = tangent_bundle(P1xP1);
    GradedClass s2 = segre_from_chern(tp).component(2);
    CHECK(s2 == segre_series_oracle(tp).component(2));
    CHECK(s2.integrate() == 4);
}

TEST_CASE("signed Segre numbers") {
    CHECK(signed_segre_number(tangent_bundle(P2)).value == 6);
    CHECK(signed_segre_number(tangent_bundle(P2)).big);

    BundleClass e = tensor_with_line(tangent_bundle(P2), line_bundle(P2, {-1}));
    CHECK(signed_segre_number(e).value == 0);
    CHECK_FALSE(signed_segre_number(e).big);

    // Rank-1 case reduces to the degree: (-1)^1 s1(O(1)) = c1 = 1 on P1.
    CHECK(signed_segre_number(line_bundle(P1, {1})).value == 1);
    CHECK(signed_segre_number(line_bundle(P1, {1})).big);
}

TEST_CASE("projective bundle ring: reduction, pushforward, adjunction") {
    ProjBundleRing ring(tangent_bundle(P2));

    // xi^2 = 3 h xi - 3 h^2 from the Grothendieck relation with c(E*) = 1 - 3h + 3h^2.
    auto xi2 = ring.pow(ring.xi(), 2);
    GradedClass h = GradedClass::hyperplane(P2, 0);
    CHECK(xi2[1] == Rational(3) * h);
    CHECK(xi2[0] == Rational(-3) * h.pow(2));

    auto xi3 = ring.pow(ring.xi(), 3);
    CHECK(xi3[1] == Rational(6) * h.pow(2));
    CHECK(xi3[0].is_zero());
    CHECK(ring.integrate(xi3) == 6);
    CHECK(ring.pushforward(xi3).integrate() == signed_segre_number(tangent_bundle(P2)).value);

    // Pushforward of xi-degree < r-1 is zero.
    CHECK(ring.pushforward(ring.pullback(h)).is_zero());

    // Adjunction: K_Y^{-1} = O_Y(2) for E = TP2, so c1(K_Y^{-1})^3 integrates to 48.
    auto anti = ring.anticanonical_class();
    CHECK(anti[0].is_zero());
    CHECK(anti[1] == Rational(2) * GradedClass::one(P2));
    CHECK(ring.integrate(ring.pow(anti, 3)) == 48);

    // Rank-1 projectivization is the base itself.
    ProjBundleRing triv(line_bundle(P1, {3}));
    auto elem = triv.mul(triv.pullback(GradedClass::hyperplane(P1, 0)),
                         triv.pullback(GradedClass::one(P1)));
    CHECK(triv.pushforward(elem) == GradedClass::hyperplane(P1, 0));

    // Product base: for E = T(P1xP1) the twist in K_Y cancels again, and the
    // anticanonical cube reduces to 8 * s2(E) = 32.
    ProjBundleRing prod(tangent_bundle(P1xP1));
    auto anti_prod = prod.anticanonical_class();
    CHECK(anti_prod[0].is_zero());
    CHECK(anti_prod[1] == Rational(2) * GradedClass::one(P1xP1));
    CHECK(prod.integrate(prod.pow(anti_prod, 3)) == 32);
}

TEST_CASE("property: c * s = 1 and duality on random bundles") {
    std::mt19937_64 rng(12345);
    const std::vector<BasePresentation> bases{P2, P3, P1xP1};
    for (int trial = 0; trial < 100; ++trial) {
        const auto& base = bases[trial % bases.size()];
        BundleClass e = random_bundle(base, rng);
        GradedClass s = segre_from_chern(e);
        CHECK(e.total_chern * s == GradedClass::one(base));
        CHECK(s == segre_series_oracle(e));

        // Duality: s_k(E*) = (-1)^k s_k(E).
        GradedClass sd = segre_from_chern(dual_bundle(e));
        for (int k = 0; k <= base.dim(); ++k) {
            Rational sign = (k % 2 == 0) ? 1 : -1;
            CHECK(sd.component(k) == sign * s.component(k));
        }
    }
}

TEST_CASE("property: Whitney formula on random pairs") {
    std::mt19937_64 rng(777);
    const std::vector<BasePresentation> bases{P2, P3, P1xP1};
    for (int trial = 0; trial < 60; ++trial) {
        const auto& base = bases[trial % bases.size()];
        BundleClass e = random_bundle(base, rng);
        BundleClass f = random_bundle(base, rng);
        CHECK(direct_sum(e, f).total_chern == e.total_chern * f.total_chern);
    }
}

TEST_CASE("property: pushforward identity pi_*(xi^{n+r-1}) = (-1)^n s_n(E)") {
    std::mt19937_64 rng(4242);
    const std::vector<BasePresentation> bases{P2, P3, P1xP1};
    for (int trial = 0; trial < 100; ++trial) {
        const auto& base = bases[trial % bases.size()];
        BundleClass e = random_bundle(base, rng);
        ProjBundleRing ring(e);
        const int n = base.dim();
        auto top = ring.pow(ring.xi(), n + e.rank - 1);
        Rational lhs = ring.integrate(top);
        Rational sn = segre_from_chern(e).component(n).integrate();
        Rational rhs = (n % 2 == 0) ? sn : -sn;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("serialization canonical form") {
    BundleClass t = tangent_bundle(P2);
    CHECK(t.total_chern.str() == "1 + 3 * h1 + 3 * h1^2");
    CHECK(GradedClass(P2).str() == "0");
    GradedClass g = Rational(1, 2) * GradedClass::hyperplane(P1xP1, 1);
    CHECK(g.str() == "1/2 * h2");

    ProjBundleRing ring(tangent_bundle(P2));
    CHECK(ring.str(ring.pow(ring.xi(), 3)) == "(6 * h1^2) * xi");
}

TEST_CASE("base presentation parsing") {
    CHECK(BasePresentation::parse("P2") == P2);
    CHECK(BasePresentation::parse("P1xP1") == P1xP1);
    CHECK(BasePresentation::parse("P3").dim() == 3);
    CHECK_THROWS_AS(BasePresentation::parse("Q2"), std::invalid_argument);
    CHECK_THROWS_AS(BasePresentation::parse("P"), std::invalid_argument);
}
