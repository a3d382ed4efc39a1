#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "semipos/bundle_expr.hpp"

using namespace semipos;

namespace {

const BasePresentation P1{{1}};
const BasePresentation P2{{2}};
const BasePresentation P1xP1{{1, 1}};

Rational eval_rational(const std::string& text, const BasePresentation& base) {
    return std::get<Rational>(evaluate(parse_expression(text, base), base));
}

GradedClass eval_class(const std::string& text, const BasePresentation& base) {
    return std::get<GradedClass>(evaluate(parse_expression(text, base), base));
}

// Random grammar-derived AST, used for the round-trip property.  Bundle sums
// and tensors are generated left-folded: the grammar has no parenthesized
// bundles, so only left-associated chains are printable.
BundleAst random_batom(std::mt19937_64& rng, int factors, int depth);

BundleAst random_bundle_ast(std::mt19937_64& rng, int factors, int depth) {
    std::uniform_int_distribution<int> count(1, 2);
    auto chain = [&](BundleAst::Kind kind, auto leaf) {
        BundleAst out = leaf();
        int extra = count(rng) - 1;
        for (int i = 0; i < extra; ++i)
            out = BundleAst{kind, {std::move(out), leaf()}, {}};
        return out;
    };
    auto bterm = [&] {
        return chain(BundleAst::Kind::BundleTwist,
                     [&] { return random_batom(rng, factors, depth); });
    };
    return chain(BundleAst::Kind::BundleSum, bterm);
}

BundleAst random_batom(std::mt19937_64& rng, int factors, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 2);
    std::uniform_int_distribution<int> deg(-3, 3);
    switch (pick(rng)) {
        case 0: return {BundleAst::Kind::Tangent, {}, {}};
        case 1: return {BundleAst::Kind::Cotangent, {}, {}};
        case 2: {
            std::vector<int> degrees;
            for (int i = 0; i < factors; ++i) degrees.push_back(deg(rng));
            return {BundleAst::Kind::Line, {}, degrees};
        }
        case 3:
            return {BundleAst::Kind::Dual, {random_bundle_ast(rng, factors, depth - 1)}, {}};
        default:
            return {BundleAst::Kind::Det, {random_bundle_ast(rng, factors, depth - 1)}, {}};
    }
}

BundleAst random_class_ast(std::mt19937_64& rng, int factors, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 0);
    std::uniform_int_distribution<int> kdist(-1, 2);
    std::uniform_int_distribution<int> edist(0, 3);
    std::uniform_int_distribution<int> fndist(0, 1);
    switch (pick(rng)) {
        case 0:
            return {BundleAst::Kind::ClassFn, {random_bundle_ast(rng, factors, depth)},
                    {fndist(rng), kdist(rng)}};
        case 1:
            return {BundleAst::Kind::Add,
                    {random_class_ast(rng, factors, depth - 1),
                     random_class_ast(rng, factors, depth - 1)}, {}};
        case 2:
            return {BundleAst::Kind::Sub,
                    {random_class_ast(rng, factors, depth - 1),
                     random_class_ast(rng, factors, depth - 1)}, {}};
        case 3:
            return {BundleAst::Kind::Product,
                    {random_class_ast(rng, factors, depth - 1),
                     random_class_ast(rng, factors, depth - 1)}, {}};
        default:
            return {BundleAst::Kind::Power, {random_class_ast(rng, factors, depth - 1)},
                    {edist(rng)}};
    }
}

}  // namespace

TEST_CASE("grammar basics") {
    CHECK_NOTHROW(parse_expression("s2(T (x) O(-1))", P2));
    CHECK(eval_class("c(O(0))", P2) == GradedClass::one(P2));
    CHECK(eval_class("c(T)", P2).str() == "1 + 3 * h1 + 3 * h1^2");
    CHECK(eval_class("c1(T) - c1(dual(T*))", P2).is_zero());
    CHECK(eval_class("c(O(1,2))", P1xP1).coefficient({0, 1}) == 2);
    CHECK(eval_class("c2(T (+) O(0))", P2) == eval_class("c2(T)", P2));
}

TEST_CASE("pinned evaluations") {
    CHECK(eval_rational("integrate(s2(T (x) O(-1)))", P2) == 0);
    CHECK(eval_rational("integrate(c1(det(T))^2)", P2) == 9);
    // Frozen from the series oracle in test_class_ring: s2(T) = 4 h1 h2.
    CHECK(eval_rational("integrate(s2(T))", P1xP1) == 4);
    CHECK(eval_rational("integrate(c2(T))", P2) == 3);
    CHECK(eval_rational("integrate(c1(T)*c1(O(-1)))", P2) == -3);
    CHECK(eval_rational("integrate(s1(O(1)))", P1) == -1);
}

TEST_CASE("semantic errors surface at evaluate") {
    BundleAst ast = parse_expression("s2(T (x) T)", P2);  // parses fine
    CHECK_THROWS_AS(evaluate(ast, P2), SemanticError);
    CHECK_THROWS_AS(evaluate(parse_expression("c(O(1))", P1xP1), P1xP1), SemanticError);
    CHECK_THROWS_AS(evaluate(parse_expression("c1(T)^-2", P2), P2), SemanticError);
}

TEST_CASE("parse errors carry position and expected set") {
    try {
        parse_expression("c1(Q)", P2);  // lexer-level: unknown token
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 4);
    }
    try {
        parse_expression("c1(T", P2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.column == 5);
        CHECK(!e.expected.empty());
    }
    try {
        parse_expression("integrate(\n  c1(T) +? )", P2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_expression("", P2), ParseError);
    CHECK_THROWS_AS(parse_expression("c1(T) c1(T)", P2), ParseError);
}

TEST_CASE("whitespace insensitivity") {
    BundleAst a = parse_expression("integrate(s2(T(x)O(-1)))", P2);
    BundleAst b = parse_expression("  integrate ( s2( T (x)\n O( -1 ) ) ) ", P2);
    CHECK(a == b);
}

TEST_CASE("property: pretty-print round trip") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        int factors = 1 + (trial % 2);
        BundleAst ast = random_class_ast(rng, factors, 4);
        if (trial % 3 == 0) ast = {BundleAst::Kind::Integrate, {std::move(ast)}, {}};
        std::string text = pretty_print(ast);
        CAPTURE(text);
        BundleAst reparsed = parse_expression(text, factors == 1 ? P2 : P1xP1);
        CHECK(reparsed == ast);
    }
}

TEST_CASE("property: parser totality on fuzzed input") {
    std::mt19937_64 rng(99);
    const std::string alphabet = "csTO()+-*^duelintgra0123456789,x \n\t";
    std::uniform_int_distribution<size_t> len(0, 40);
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text;
        size_t n = len(rng);
        for (size_t i = 0; i < n; ++i) text += alphabet[pick(rng)];
        try {
            BundleAst ast = parse_expression(text, P2);
            (void)pretty_print(ast);
        } catch (const ParseError&) {
            // structured failure is the contract
        }
    }
}
