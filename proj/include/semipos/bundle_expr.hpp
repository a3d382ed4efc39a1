#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "semipos/class_ring.hpp"

namespace semipos {

// Expression language for characteristic-class queries.  Normative grammar:
//
//   expr      := classexpr | 'integrate' '(' classexpr ')'
//   classexpr := term (('+'|'-') term)*
//   term      := factor ('*' factor)*
//   factor    := classfn '(' bundle ')' | factor '^' int | '(' classexpr ')'
//   classfn   := 'c' int? | 's' int?
//   bundle    := bterm ('(+)' bterm)*
//   bterm     := batom ('(x)' batom)*
//   batom     := 'T' | 'T*' | 'O' '(' int (',' int)* ')'
//              | 'det' '(' bundle ')' | 'dual' '(' bundle ')'
//
// Whitespace-insensitive; `(x)` and `(+)` are atomic operators.  One base per
// expression, declared out-of-band.

struct ParseError : std::runtime_error {
    ParseError(int line_, int column_, const std::string& what_,
               std::vector<std::string> expected_ = {})
        : std::runtime_error(what_), line(line_), column(column_),
          expected(std::move(expected_)) {}
    int line;    // 1-based
    int column;  // 1-based
    std::vector<std::string> expected;
};

struct SemanticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BundleAst {
    enum class Kind {
        Tangent,     // T
        Cotangent,   // T*
        Line,        // O(d1,...,dm); degrees in ints
        Dual,        // dual(bundle)
        Det,         // det(bundle)
        BundleSum,   // (+)
        BundleTwist, // (x); rank restriction enforced at evaluate
        ClassFn,     // c / c_k / s / s_k of a bundle; ints = {fn, k} with fn 0='c',1='s', k=-1 for total
        Add,         // classexpr + classexpr
        Sub,         // classexpr - classexpr
        Product,     // term * term
        Power,       // factor ^ int; exponent in ints
        Integrate,   // integrate(classexpr)
    };

    Kind kind;
    std::vector<BundleAst> children;
    std::vector<int> ints;

    bool operator==(const BundleAst& o) const {
        return kind == o.kind && ints == o.ints && children == o.children;
    }
};

// Parses `text` against the grammar.  Throws ParseError with 1-based position
// and the expected-token set on any non-grammar input.
BundleAst parse_expression(const std::string& text, const BasePresentation& base);

using EvalResult = std::variant<GradedClass, Rational>;

// Evaluates a well-typed AST.  Integrate roots produce an exact Rational,
// everything else a GradedClass.  Semantic violations (tensor of two bundles
// of rank > 1, degree arity mismatch) throw SemanticError.
EvalResult evaluate(const BundleAst& ast, const BasePresentation& base);

std::string pretty_print(const BundleAst& ast);

}  // namespace semipos
