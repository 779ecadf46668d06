#include "svagen/render.hpp"

#include "svagen/errors.hpp"
#include "svagen/inventory.hpp"

#include <cctype>

namespace svagen {

namespace {

struct Token {
    enum Kind {
        Ident,
        Number,
        LParen,
        RParen,
        Bang,
        AndAnd,
        Implies,
        EqEq,
        NotEq,
        Delay,   // ##k
        Stable,
        Rose,
        Fell,
        End,
    } kind;
    std::string text;
    int delay = 0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string &src) : src_(src) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= src_.size()) {
            t.kind = Token::End;
            return t;
        }
        char c = src_[pos_];
        if (c == '(') {
            advance();
            t.kind = Token::LParen;
            return t;
        }
        if (c == ')') {
            advance();
            t.kind = Token::RParen;
            return t;
        }
        if (c == '[') {
            // Repetition operators ([*..], [=..], [->..]) are outside the
            // supported fragment.
            std::string tok = "[";
            if (pos_ + 1 < src_.size())
                tok += src_[pos_ + 1];
            throw UnsupportedConstructError(tok, t.line, t.column);
        }
        if (c == '!') {
            if (peek(1) == '=') {
                advance();
                advance();
                t.kind = Token::NotEq;
                return t;
            }
            advance();
            t.kind = Token::Bang;
            return t;
        }
        if (c == '&') {
            if (peek(1) != '&')
                throw ParseError("expected '&&'", t.line, t.column);
            advance();
            advance();
            t.kind = Token::AndAnd;
            return t;
        }
        if (c == '|') {
            if (peek(1) == '-' && peek(2) == '>') {
                advance();
                advance();
                advance();
                t.kind = Token::Implies;
                return t;
            }
            if (peek(1) == '=' && peek(2) == '>')
                throw UnsupportedConstructError("|=>", t.line, t.column);
            throw ParseError("expected '|->'", t.line, t.column);
        }
        if (c == '=') {
            if (peek(1) != '=')
                throw ParseError("expected '=='", t.line, t.column);
            advance();
            advance();
            t.kind = Token::EqEq;
            return t;
        }
        if (c == '#') {
            if (peek(1) != '#')
                throw ParseError("expected '##'", t.line, t.column);
            advance();
            advance();
            if (pos_ < src_.size() && src_[pos_] == '[')
                throw UnsupportedConstructError("##[", t.line, t.column);
            if (pos_ >= src_.size() || !isdigit((unsigned char)src_[pos_]))
                throw ParseError("expected cycle count after '##'", t.line,
                                 column_);
            int k = 0;
            while (pos_ < src_.size() && isdigit((unsigned char)src_[pos_])) {
                k = k * 10 + (src_[pos_] - '0');
                advance();
            }
            if (k < 1)
                throw ParseError("delay count must be positive", t.line,
                                 t.column);
            t.kind = Token::Delay;
            t.delay = k;
            return t;
        }
        if (c == '$') {
            std::string word = "$";
            advance();
            while (pos_ < src_.size() &&
                   (isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_')) {
                word += src_[pos_];
                advance();
            }
            if (word == "$stable")
                t.kind = Token::Stable;
            else if (word == "$rose")
                t.kind = Token::Rose;
            else if (word == "$fell")
                t.kind = Token::Fell;
            else
                throw UnsupportedConstructError(word, t.line, t.column);
            return t;
        }
        if (isdigit((unsigned char)c)) {
            std::string num;
            while (pos_ < src_.size() &&
                   (isalnum((unsigned char)src_[pos_]))) {
                num += src_[pos_];
                advance();
            }
            t.kind = Token::Number;
            t.text = num;
            return t;
        }
        if (isalpha((unsigned char)c) || c == '_') {
            std::string word;
            while (pos_ < src_.size() &&
                   (isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_')) {
                word += src_[pos_];
                advance();
            }
            t.kind = Token::Ident;
            t.text = word;
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'",
                         t.line, t.column);
    }

private:
    char peek(size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }
    void skip_space() {
        while (pos_ < src_.size() &&
               isspace((unsigned char)src_[pos_]))
            advance();
    }

    const std::string &src_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    Parser(const std::string &src, const SignalInventory *inv)
        : lexer_(src), inv_(inv) {
        cur_ = lexer_.next();
    }

    PropertyNode parse() {
        PropertyNode lhs = parse_conj();
        if (cur_.kind == Token::Implies) {
            bump();
            PropertyNode rhs = parse_conj();
            expect_end();
            return implic(std::move(lhs), std::move(rhs));
        }
        expect_end();
        return lhs;
    }

private:
    void bump() { cur_ = lexer_.next(); }

    void expect_end() {
        if (cur_.kind != Token::End)
            throw ParseError("trailing input", cur_.line, cur_.column);
    }

    PropertyNode parse_conj() {
        std::vector<PropertyNode> ops;
        ops.push_back(parse_unary());
        while (cur_.kind == Token::AndAnd) {
            bump();
            ops.push_back(parse_unary());
        }
        if (ops.size() == 1)
            return std::move(ops[0]);
        return conj(std::move(ops));
    }

    PropertyNode parse_unary() {
        if (cur_.kind == Token::Bang) {
            bump();
            PropertyNode inner = parse_unary();
            // "!s" is the 1-bit low test; anything else is plain negation.
            if (inner.kind == NodeKind::Eq &&
                inner.children[1].kind == NodeKind::LevelConst) {
                Level l = inner.children[1].level;
                inner.children[1].level =
                    l == Level::High ? Level::Low : Level::High;
                return inner;
            }
            return neg(std::move(inner));
        }
        if (cur_.kind == Token::Delay) {
            int k = cur_.delay;
            bump();
            return delay(k, parse_unary());
        }
        return parse_primary();
    }

    PropertyNode parse_sig_arg(const char *op) {
        if (cur_.kind != Token::LParen)
            throw ParseError(std::string("expected '(' after ") + op,
                             cur_.line, cur_.column);
        bump();
        if (cur_.kind != Token::Ident)
            throw ParseError(std::string(op) + " expects a signal name",
                             cur_.line, cur_.column);
        PropertyNode s = sig_ref(cur_.text);
        bump();
        if (cur_.kind != Token::RParen)
            throw ParseError("expected ')'", cur_.line, cur_.column);
        bump();
        return s;
    }

    PropertyNode parse_primary() {
        switch (cur_.kind) {
        case Token::LParen: {
            bump();
            PropertyNode inner = parse_conj();
            if (cur_.kind == Token::Implies)
                throw ParseError("implication must be top-level", cur_.line,
                                 cur_.column);
            if (cur_.kind != Token::RParen)
                throw ParseError("expected ')'", cur_.line, cur_.column);
            bump();
            return inner;
        }
        case Token::Stable: {
            bump();
            return stable(parse_sig_arg("$stable"));
        }
        case Token::Rose: {
            bump();
            return rose(parse_sig_arg("$rose"));
        }
        case Token::Fell: {
            bump();
            return fell(parse_sig_arg("$fell"));
        }
        case Token::Ident: {
            std::string name = cur_.text;
            bump();
            if (cur_.kind == Token::EqEq || cur_.kind == Token::NotEq) {
                bool is_eq = cur_.kind == Token::EqEq;
                bump();
                PropertyNode rhs = parse_value();
                PropertyNode e = is_eq ? eq(sig_ref(name), std::move(rhs))
                                       : neq(sig_ref(name), std::move(rhs));
                return e;
            }
            // A bare name is the 1-bit high test.
            return eq(sig_ref(name), level_const(Level::High));
        }
        default:
            throw ParseError("unexpected token", cur_.line, cur_.column);
        }
    }

    PropertyNode parse_value() {
        if (cur_.kind == Token::Number) {
            PropertyNode c = word_const(cur_.text);
            if (!c.word_value)
                throw ParseError("bad numeric literal '" + cur_.text + "'",
                                 cur_.line, cur_.column);
            bump();
            return c;
        }
        if (cur_.kind == Token::Ident) {
            std::string t = cur_.text;
            bump();
            if (t == "HIGH")
                return level_const(Level::High);
            if (t == "LOW")
                return level_const(Level::Low);
            if (inv_ && inv_->has(t))
                return sig_ref(t);
            return word_const(t);
        }
        throw ParseError("expected a value", cur_.line, cur_.column);
    }

    Lexer lexer_;
    const SignalInventory *inv_;
    Token cur_;
};

} // namespace

PropertyNode parse_sva(const std::string &text, const SignalInventory *inv) {
    Parser p(text, inv);
    PropertyNode node = p.parse();
    SignalOrder order = inv ? SignalOrder(*inv) : SignalOrder();
    return canonicalize(node, order);
}

} // namespace svagen
