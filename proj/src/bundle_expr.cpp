#include "semipos/bundle_expr.hpp"

#include <cctype>
#include <sstream>

namespace semipos {

namespace {

struct Token {
    enum class Type {
        Integrate, Det, Dual, T, O, ClassC, ClassS,
        Int, Plus, Minus, Star, Caret, LParen, RParen, Comma,
        OSum, OTensor, End,
    };
    Type type;
    long value = 0;  // for Int
    int line = 1;
    int column = 1;
};

const char* token_name(Token::Type t) {
    switch (t) {
        case Token::Type::Integrate: return "'integrate'";
        case Token::Type::Det: return "'det'";
        case Token::Type::Dual: return "'dual'";
        case Token::Type::T: return "'T'";
        case Token::Type::O: return "'O'";
        case Token::Type::ClassC: return "'c'";
        case Token::Type::ClassS: return "'s'";
        case Token::Type::Int: return "integer";
        case Token::Type::Plus: return "'+'";
        case Token::Type::Minus: return "'-'";
        case Token::Type::Star: return "'*'";
        case Token::Type::Caret: return "'^'";
        case Token::Type::LParen: return "'('";
        case Token::Type::RParen: return "')'";
        case Token::Type::Comma: return "','";
        case Token::Type::OSum: return "'(+)'";
        case Token::Type::OTensor: return "'(x)'";
        case Token::Type::End: return "end of input";
    }
    return "?";
}

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            Token tok;
            tok.line = line_;
            tok.column = col_;
            if (pos_ >= text_.size()) {
                tok.type = Token::Type::End;
                out.push_back(tok);
                return out;
            }
            char ch = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                size_t start = pos_;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    advance();
                tok.type = Token::Type::Int;
                tok.value = std::stol(text_.substr(start, pos_ - start));
            } else if (std::isalpha(static_cast<unsigned char>(ch))) {
                size_t start = pos_;
                while (pos_ < text_.size() &&
                       std::isalpha(static_cast<unsigned char>(text_[pos_])))
                    advance();
                std::string word = text_.substr(start, pos_ - start);
                if (word == "integrate") tok.type = Token::Type::Integrate;
                else if (word == "det") tok.type = Token::Type::Det;
                else if (word == "dual") tok.type = Token::Type::Dual;
                else if (word == "T") tok.type = Token::Type::T;
                else if (word == "O") tok.type = Token::Type::O;
                else if (word == "c") tok.type = Token::Type::ClassC;
                else if (word == "s") tok.type = Token::Type::ClassS;
                else
                    throw ParseError(tok.line, tok.column, "unknown token '" + word + "'");
            } else if (ch == '(') {
                // "(+)" and "(x)" are atomic.
                if (pos_ + 2 < text_.size() && text_[pos_ + 2] == ')' &&
                    (text_[pos_ + 1] == '+' || text_[pos_ + 1] == 'x')) {
                    tok.type = text_[pos_ + 1] == '+' ? Token::Type::OSum
                                                      : Token::Type::OTensor;
                    advance(); advance(); advance();
                } else {
                    tok.type = Token::Type::LParen;
                    advance();
                }
            } else {
                switch (ch) {
                    case ')': tok.type = Token::Type::RParen; break;
                    case '+': tok.type = Token::Type::Plus; break;
                    case '-': tok.type = Token::Type::Minus; break;
                    case '*': tok.type = Token::Type::Star; break;
                    case '^': tok.type = Token::Type::Caret; break;
                    case ',': tok.type = Token::Type::Comma; break;
                    default:
                        throw ParseError(tok.line, tok.column,
                                         std::string("unknown token '") + ch + "'");
                }
                advance();
            }
            out.push_back(tok);
        }
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    BundleAst parse_expr() {
        BundleAst out;
        if (peek().type == Token::Type::Integrate) {
            next();
            expect(Token::Type::LParen);
            BundleAst inner = parse_classexpr();
            expect(Token::Type::RParen);
            out = BundleAst{BundleAst::Kind::Integrate, {std::move(inner)}, {}};
        } else {
            out = parse_classexpr();
        }
        if (peek().type != Token::Type::End) fail({"end of input"});
        return out;
    }

  private:
    BundleAst parse_classexpr() {
        BundleAst lhs = parse_term();
        while (peek().type == Token::Type::Plus || peek().type == Token::Type::Minus) {
            bool plus = next().type == Token::Type::Plus;
            BundleAst rhs = parse_term();
            lhs = BundleAst{plus ? BundleAst::Kind::Add : BundleAst::Kind::Sub,
                            {std::move(lhs), std::move(rhs)}, {}};
        }
        return lhs;
    }

    BundleAst parse_term() {
        BundleAst lhs = parse_factor();
        while (peek().type == Token::Type::Star) {
            next();
            BundleAst rhs = parse_factor();
            lhs = BundleAst{BundleAst::Kind::Product, {std::move(lhs), std::move(rhs)}, {}};
        }
        return lhs;
    }

    BundleAst parse_factor() {
        BundleAst out;
        switch (peek().type) {
            case Token::Type::ClassC:
            case Token::Type::ClassS: {
                int fn = next().type == Token::Type::ClassC ? 0 : 1;
                int k = -1;
                if (peek().type == Token::Type::Int)
                    k = static_cast<int>(next().value);
                expect(Token::Type::LParen);
                BundleAst b = parse_bundle();
                expect(Token::Type::RParen);
                out = BundleAst{BundleAst::Kind::ClassFn, {std::move(b)}, {fn, k}};
                break;
            }
            case Token::Type::LParen: {
                next();
                out = parse_classexpr();
                expect(Token::Type::RParen);
                break;
            }
            default:
                fail({"'c'", "'s'", "'('"});
        }
        while (peek().type == Token::Type::Caret) {
            next();
            long e = parse_int();
            out = BundleAst{BundleAst::Kind::Power, {std::move(out)},
                            {static_cast<int>(e)}};
        }
        return out;
    }

    BundleAst parse_bundle() {
        BundleAst lhs = parse_bterm();
        while (peek().type == Token::Type::OSum) {
            next();
            BundleAst rhs = parse_bterm();
            lhs = BundleAst{BundleAst::Kind::BundleSum, {std::move(lhs), std::move(rhs)}, {}};
        }
        return lhs;
    }

    BundleAst parse_bterm() {
        BundleAst lhs = parse_batom();
        while (peek().type == Token::Type::OTensor) {
            next();
            BundleAst rhs = parse_batom();
            lhs = BundleAst{BundleAst::Kind::BundleTwist, {std::move(lhs), std::move(rhs)}, {}};
        }
        return lhs;
    }

    BundleAst parse_batom() {
        switch (peek().type) {
            case Token::Type::T: {
                next();
                if (peek().type == Token::Type::Star) {
                    next();
                    return BundleAst{BundleAst::Kind::Cotangent, {}, {}};
                }
                return BundleAst{BundleAst::Kind::Tangent, {}, {}};
            }
            case Token::Type::O: {
                next();
                expect(Token::Type::LParen);
                std::vector<int> degrees{static_cast<int>(parse_int())};
                while (peek().type == Token::Type::Comma) {
                    next();
                    degrees.push_back(static_cast<int>(parse_int()));
                }
                expect(Token::Type::RParen);
                return BundleAst{BundleAst::Kind::Line, {}, std::move(degrees)};
            }
            case Token::Type::Det:
            case Token::Type::Dual: {
                bool det = next().type == Token::Type::Det;
                expect(Token::Type::LParen);
                BundleAst b = parse_bundle();
                expect(Token::Type::RParen);
                return BundleAst{det ? BundleAst::Kind::Det : BundleAst::Kind::Dual,
                                 {std::move(b)}, {}};
            }
            default:
                fail({"'T'", "'O'", "'det'", "'dual'"});
        }
        return {};  // unreachable
    }

    long parse_int() {
        bool negative = false;
        if (peek().type == Token::Type::Minus || peek().type == Token::Type::Plus)
            negative = next().type == Token::Type::Minus;
        if (peek().type != Token::Type::Int) fail({"integer"});
        long v = next().value;
        return negative ? -v : v;
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    void expect(Token::Type t) {
        if (peek().type != t) fail({token_name(t)});
        next();
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        const Token& tok = peek();
        std::ostringstream os;
        os << "unexpected " << token_name(tok.type) << ", expected ";
        for (size_t i = 0; i < expected.size(); ++i) {
            if (i) os << " or ";
            os << expected[i];
        }
        throw ParseError(tok.line, tok.column, os.str(), std::move(expected));
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

BundleClass eval_bundle(const BundleAst& node, const BasePresentation& base) {
    switch (node.kind) {
        case BundleAst::Kind::Tangent: return tangent_bundle(base);
        case BundleAst::Kind::Cotangent: return cotangent_bundle(base);
        case BundleAst::Kind::Line: {
            if (static_cast<int>(node.ints.size()) != base.num_factors())
                throw SemanticError("O(...) needs one degree per base factor");
            return line_bundle(base, node.ints);
        }
        case BundleAst::Kind::Dual: return dual_bundle(eval_bundle(node.children[0], base));
        case BundleAst::Kind::Det:
            return determinant_bundle(eval_bundle(node.children[0], base));
        case BundleAst::Kind::BundleSum:
            return direct_sum(eval_bundle(node.children[0], base),
                              eval_bundle(node.children[1], base));
        case BundleAst::Kind::BundleTwist: {
            BundleClass lhs = eval_bundle(node.children[0], base);
            BundleClass rhs = eval_bundle(node.children[1], base);
            if (lhs.rank > 1 && rhs.rank > 1)
                throw SemanticError("tensor of two higher-rank bundles");
            return tensor_with_line(lhs, rhs);
        }
        default:
            throw SemanticError("class expression used where a bundle is required");
    }
}

GradedClass eval_class(const BundleAst& node, const BasePresentation& base) {
    switch (node.kind) {
        case BundleAst::Kind::ClassFn: {
            BundleClass b = eval_bundle(node.children[0], base);
            const bool segre = node.ints[0] == 1;
            const int k = node.ints[1];
            GradedClass total = segre ? segre_from_chern(b) : b.total_chern;
            return k < 0 ? total : total.component(k);
        }
        case BundleAst::Kind::Add:
            return eval_class(node.children[0], base) + eval_class(node.children[1], base);
        case BundleAst::Kind::Sub:
            return eval_class(node.children[0], base) - eval_class(node.children[1], base);
        case BundleAst::Kind::Product:
            return eval_class(node.children[0], base) * eval_class(node.children[1], base);
        case BundleAst::Kind::Power: {
            if (node.ints[0] < 0) throw SemanticError("negative power of a class");
            return eval_class(node.children[0], base).pow(node.ints[0]);
        }
        default:
            throw SemanticError("bundle used where a class is required");
    }
}

}  // namespace

BundleAst parse_expression(const std::string& text, const BasePresentation&) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.parse_expr();
}

EvalResult evaluate(const BundleAst& ast, const BasePresentation& base) {
    if (ast.kind == BundleAst::Kind::Integrate)
        return eval_class(ast.children[0], base).integrate();
    return eval_class(ast, base);
}

namespace {

void print_node(const BundleAst& node, std::ostream& os) {
    using Kind = BundleAst::Kind;
    switch (node.kind) {
        case Kind::Tangent: os << "T"; break;
        case Kind::Cotangent: os << "T*"; break;
        case Kind::Line:
            os << "O(";
            for (size_t i = 0; i < node.ints.size(); ++i) {
                if (i) os << ",";
                os << node.ints[i];
            }
            os << ")";
            break;
        case Kind::Dual:
            os << "dual(";
            print_node(node.children[0], os);
            os << ")";
            break;
        case Kind::Det:
            os << "det(";
            print_node(node.children[0], os);
            os << ")";
            break;
        case Kind::BundleSum:
            print_node(node.children[0], os);
            os << " (+) ";
            print_node(node.children[1], os);
            break;
        case Kind::BundleTwist:
            print_node(node.children[0], os);
            os << " (x) ";
            print_node(node.children[1], os);
            break;
        case Kind::ClassFn:
            os << (node.ints[0] == 1 ? "s" : "c");
            if (node.ints[1] >= 0) os << node.ints[1];
            os << "(";
            print_node(node.children[0], os);
            os << ")";
            break;
        case Kind::Add:
            print_node(node.children[0], os);
            os << " + ";
            // '+'/'-' are left-associative; a right child that is itself a
            // sum must be re-grouped.
            if (node.children[1].kind == Kind::Add || node.children[1].kind == Kind::Sub) {
                os << "(";
                print_node(node.children[1], os);
                os << ")";
            } else {
                print_node(node.children[1], os);
            }
            break;
        case Kind::Sub:
            print_node(node.children[0], os);
            os << " - ";
            if (node.children[1].kind == Kind::Add || node.children[1].kind == Kind::Sub) {
                os << "(";
                print_node(node.children[1], os);
                os << ")";
            } else {
                print_node(node.children[1], os);
            }
            break;
        case Kind::Product: {
            auto print_side = [&](const BundleAst& c, bool right) {
                bool needs_parens = c.kind == Kind::Add || c.kind == Kind::Sub ||
                                    (right && c.kind == Kind::Product);
                if (needs_parens) os << "(";
                print_node(c, os);
                if (needs_parens) os << ")";
            };
            print_side(node.children[0], false);
            os << " * ";
            print_side(node.children[1], true);
            break;
        }
        case Kind::Power: {
            const BundleAst& c = node.children[0];
            bool needs_parens = c.kind != Kind::ClassFn;
            if (needs_parens) os << "(";
            print_node(c, os);
            if (needs_parens) os << ")";
            os << "^" << node.ints[0];
            break;
        }
        case Kind::Integrate:
            os << "integrate(";
            print_node(node.children[0], os);
            os << ")";
            break;
    }
}

}  // namespace

std::string pretty_print(const BundleAst& ast) {
    std::ostringstream os;
    print_node(ast, os);
    return os.str();
}

}  // namespace semipos
