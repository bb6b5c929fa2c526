#include "frob/symbolic/parse.hpp"

#include "frob/errors.hpp"

#include <algorithm>
#include <optional>

namespace frob {
namespace {

enum class Tok { End, Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, At };

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;
    std::string text;
};

// Scalar value or a linear combination of basis atoms.
struct Value {
    Expr scalar;
    LinearTerms lin;
    bool linear = false;
};

class Parser {
public:
    Parser(std::string_view text, const ScopePtr& scope, std::optional<BasisKind> kind, std::size_t line,
           std::size_t column)
        : text_(text), scope_(scope), kind_(kind), line_(line), column_(column) {
        advance();
    }

    Value parse_all() {
        Value v = expr();
        if (tok_.kind != Tok::End) fail(tok_.pos, "unexpected '" + tok_.text + "'");
        return v;
    }

    [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
        std::size_t line = line_, col = column_;
        for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, msg);
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    void advance() {
        skip_space();
        tok_ = Token{Tok::End, pos_, ""};
        if (pos_ >= text_.size()) return;
        const char c = text_[pos_];
        if (c >= '0' && c <= '9') {
            std::size_t s = pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
            tok_ = Token{Tok::Int, s, std::string(text_.substr(s, pos_ - s))};
            return;
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t s = pos_;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if ((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_') ++pos_;
                else break;
            }
            tok_ = Token{Tok::Ident, s, std::string(text_.substr(s, pos_ - s))};
            return;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ',': k = Tok::Comma; break;
            case '@': k = Tok::At; break;
            default: fail(pos_, std::string("unexpected character '") + c + "'");
        }
        tok_ = Token{k, pos_, std::string(1, c)};
        ++pos_;
    }

    void expect(Tok k, const char* what) {
        if (tok_.kind != k) fail(tok_.pos, std::string("expected ") + what);
        advance();
    }

    Value scalar(Expr e) { return Value{std::move(e), {}, false}; }

    Value add(Value a, Value b, bool minus, std::size_t pos) {
        if (minus) b = negate(std::move(b));
        if (a.linear && b.linear) {
            for (auto& [key, c] : b.lin) {
                auto it = a.lin.find(key);
                if (it == a.lin.end()) a.lin.emplace(key, c);
                else it->second += c;
            }
            std::erase_if(a.lin, [](const auto& kv) { return kv.second.is_zero(); });
            return a;
        }
        if (!a.linear && !b.linear) {
            a.scalar += b.scalar;
            return a;
        }
        const Value& s = a.linear ? b : a;
        if (!s.scalar.is_zero()) fail(pos, "cannot add a scalar to a basis term");
        return a.linear ? a : b;
    }

    Value negate(Value v) {
        if (v.linear)
            for (auto& [k, c] : v.lin) c = -c;
        else
            v.scalar = -v.scalar;
        return v;
    }

    Value mul(Value a, Value b, bool divide, std::size_t pos) {
        if (divide) {
            if (b.linear) fail(pos, "cannot divide by a basis term");
            if (b.scalar.is_zero()) fail(pos, "division by zero");
            if (a.linear) {
                for (auto& [k, c] : a.lin) c /= b.scalar;
                return a;
            }
            a.scalar /= b.scalar;
            return a;
        }
        if (a.linear && b.linear) fail(pos, "product of two basis terms");
        if (!a.linear && !b.linear) {
            a.scalar *= b.scalar;
            return a;
        }
        Value& l = a.linear ? a : b;
        const Expr& s = a.linear ? b.scalar : a.scalar;
        for (auto& [k, c] : l.lin) c *= s;
        std::erase_if(l.lin, [](const auto& kv) { return kv.second.is_zero(); });
        return std::move(l);
    }

    Value expr() {
        Value v = term();
        while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
            const bool minus = tok_.kind == Tok::Minus;
            const std::size_t pos = tok_.pos;
            advance();
            v = add(std::move(v), term(), minus, pos);
        }
        return v;
    }

    Value term() {
        Value v = factor();
        while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
            const bool divide = tok_.kind == Tok::Slash;
            const std::size_t pos = tok_.pos;
            advance();
            v = mul(std::move(v), factor(), divide, pos);
        }
        return v;
    }

    Value factor() {
        Value b = base();
        if (tok_.kind != Tok::Caret) return b;
        const std::size_t pos = tok_.pos;
        advance();
        bool neg = false;
        if (tok_.kind == Tok::Minus) {
            neg = true;
            advance();
        }
        if (tok_.kind != Tok::Int) fail(tok_.pos, "expected integer exponent");
        if (tok_.text.size() > 6) fail(tok_.pos, "exponent too large");
        long n = std::stol(tok_.text);
        advance();
        if (neg) n = -n;
        if (b.linear) {
            if (n != 1) fail(pos, "basis term raised to a power");
            return b;
        }
        try {
            return scalar(pow(b.scalar, n));
        } catch (const DivisionByZero&) {
            fail(pos, "division by zero");
        }
    }

    std::size_t variable_index(const Token& t) {
        auto i = scope_->index_of(t.text);
        if (!i) fail(t.pos, "undeclared variable '" + t.text + "'");
        return *i;
    }

    Value base() {
        const Token t = tok_;
        switch (t.kind) {
            case Tok::Int: {
                advance();
                return scalar(Expr::constant(scope_, mpq_class(mpz_class(t.text))));
            }
            case Tok::Minus: {
                advance();
                return negate(base());
            }
            case Tok::LParen: {
                advance();
                Value v = expr();
                expect(Tok::RParen, "')'");
                return v;
            }
            case Tok::At: {
                advance();
                if (kind_ != BasisKind::Vector) fail(t.pos, "'@' is only valid in vector fields");
                if (tok_.kind != Tok::Ident) fail(tok_.pos, "expected variable after '@'");
                const std::size_t i = variable_index(tok_);
                advance();
                Value v;
                v.linear = true;
                v.lin.emplace(std::vector<std::size_t>{i}, Expr::constant(scope_, 1));
                return v;
            }
            case Tok::Ident: {
                advance();
                if (t.text == "exp") {
                    expect(Tok::LParen, "'(' after exp");
                    const std::size_t arg_pos = tok_.pos;
                    Value arg = expr();
                    expect(Tok::RParen, "')'");
                    if (arg.linear) fail(arg_pos, "basis term inside exp");
                    if (!arg.scalar.is_exp_free()) fail(arg_pos, "nested exp is not supported");
                    return scalar(Expr::exp(arg.scalar));
                }
                if (t.text == "d" && tok_.kind == Tok::LParen) {
                    if (kind_ != BasisKind::Form) fail(t.pos, "'d(...)' is only valid in differential forms");
                    advance();
                    std::vector<std::size_t> idx;
                    while (true) {
                        if (tok_.kind != Tok::Ident) fail(tok_.pos, "expected variable in d(...)");
                        idx.push_back(variable_index(tok_));
                        advance();
                        if (tok_.kind == Tok::Comma) {
                            advance();
                            continue;
                        }
                        break;
                    }
                    expect(Tok::RParen, "')'");
                    // Sort with sign; a repeated index gives the zero form.
                    int sign = 1;
                    for (std::size_t i = 0; i < idx.size(); ++i)
                        for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
                            if (idx[j] > idx[j + 1]) {
                                std::swap(idx[j], idx[j + 1]);
                                sign = -sign;
                            }
                    Value v;
                    v.linear = true;
                    if (std::adjacent_find(idx.begin(), idx.end()) == idx.end())
                        v.lin.emplace(std::move(idx), Expr::constant(scope_, sign));
                    return v;
                }
                return scalar(Expr::variable(scope_, variable_index(t)));
            }
            case Tok::End: fail(t.pos, "unexpected end of input");
            default: fail(t.pos, "unexpected '" + t.text + "'");
        }
    }

    std::string_view text_;
    ScopePtr scope_;
    std::optional<BasisKind> kind_;
    std::size_t line_, column_;
    std::size_t pos_ = 0;
    Token tok_;
};

}  // namespace

Expr parse_expr(std::string_view text, const ScopePtr& scope, std::size_t line, std::size_t column) {
    Parser p(text, scope, std::nullopt, line, column);
    Value v = p.parse_all();
    if (!v.scalar.scope()) return Expr::constant(scope, 0);
    return v.scalar;
}

LinearTerms parse_linear(std::string_view text, const ScopePtr& scope, BasisKind kind, std::size_t line,
                         std::size_t column) {
    Parser p(text, scope, kind, line, column);
    Value v = p.parse_all();
    if (!v.linear) {
        if (!v.scalar.is_zero()) p.fail(0, "expected a combination of basis terms");
        return {};
    }
    return v.lin;
}

}  // namespace frob
