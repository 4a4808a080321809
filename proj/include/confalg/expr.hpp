#pragma once

// Conformal expressions in ASCII:
//
//   expr   := '0' | ['-'] term (('+' | '-') term)*
//   term   := [rational '*'] factor
//   factor := ident | 'D^' int '(' expr ')' | '(' expr '.' int expr ')'
//
// "(x .n y)" stands for x o_n y. Whitespace is ignored between tokens.

#include "confalg/freeconf.hpp"
#include "confalg/scalar.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace confalg {

struct Expr;

struct Factor {
    enum class Kind { generator, d_power, product };

    Kind kind = Kind::generator;
    std::string name;           // generator
    Degree index = 0;           // D power or product index
    std::vector<Expr> operands; // one for d_power, two for product

    friend bool operator==(const Factor&, const Factor&) = default;
};

struct Expr {
    std::vector<std::pair<Scalar, Factor>> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const Expr&, const Expr&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool digit_at(std::size_t i) const {
        return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    }

    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (digit_at(pos_)) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::string(text_.substr(start, pos_ - start));
    }
    Degree integer() {
        const std::size_t at = (skip(), pos_);
        std::string d = digits();
        if (d.size() > 9) throw ParseError("integer too large", at);
        return static_cast<Degree>(std::stoul(d));
    }

    bool lone_zero() {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != '0') return false;
        std::size_t j = pos_ + 1;
        if (digit_at(j)) return false;
        while (j < text_.size() && std::isspace(static_cast<unsigned char>(text_[j]))) ++j;
        return j >= text_.size() || (text_[j] != '*' && text_[j] != '/');
    }

    Expr expr() {
        Expr e;
        if (lone_zero()) {
            ++pos_;
            return e;
        }
        Scalar sign(1);
        if (peek() == '-') {
            ++pos_;
            sign = -1;
        }
        e.terms.push_back(term(sign));
        for (;;) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                e.terms.push_back(term(Scalar(c == '-' ? -1 : 1)));
            } else {
                break;
            }
        }
        return e;
    }

    std::pair<Scalar, Factor> term(const Scalar& sign) {
        Scalar c(1);
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string num = digits();
            if (peek() == '/') {
                ++pos_;
                num += "/" + digits();
            }
            const std::size_t at = pos_;
            try {
                c = parse_scalar(num);
            } catch (const std::invalid_argument&) {
                throw ParseError("malformed rational", at);
            }
            expect('*');
        }
        return {c * sign, factor()};
    }

    Factor factor() {
        Factor f;
        char c = peek();
        if (c == '(') {
            ++pos_;
            f.kind = Factor::Kind::product;
            f.operands.push_back(expr());
            expect('.');
            skip();
            if (!digit_at(pos_)) fail("expected a product index");
            f.index = integer();
            f.operands.push_back(expr());
            expect(')');
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            f.name = std::string(text_.substr(start, pos_ - start));
            if (f.name == "D") {
                expect('^');
                f.kind = Factor::Kind::d_power;
                f.name.clear();
                f.index = integer();
                expect('(');
                f.operands.push_back(expr());
                expect(')');
            }
            return f;
        }
        fail("expected a generator, 'D^' or '('");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

inline std::string print_expr(const Expr& e);

inline std::string print_factor(const Factor& f) {
    switch (f.kind) {
        case Factor::Kind::generator: return f.name;
        case Factor::Kind::d_power:
            return "D^" + std::to_string(f.index) + "(" + print_expr(f.operands.at(0)) + ")";
        case Factor::Kind::product:
            return "(" + print_expr(f.operands.at(0)) + " ." + std::to_string(f.index) + " " +
                   print_expr(f.operands.at(1)) + ")";
    }
    return {};
}

inline std::string print_expr(const Expr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        const auto& [c, f] = e.terms[i];
        if (i == 0)
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        const Scalar a = abs(c);
        if (a != 1) out += to_short_string(a) + " * ";
        out += print_factor(f);
    }
    return out;
}

enum class Engine { realize, rewrite };

/// Checks that every generator in e is declared in cfg; throws std::invalid_argument otherwise.
inline void resolve(const Expr& e, const AlgebraConfig& cfg) {
    for (const auto& [c, f] : e.terms) {
        if (f.kind == Factor::Kind::generator) {
            auto l = cfg.find(f.name);
            if (!l || l->is_v()) throw std::invalid_argument("unknown generator '" + f.name + "'");
        }
        for (const auto& sub : f.operands) resolve(sub, cfg);
    }
}

/// Value of e in the normal-word basis.
inline ConfElement eval(const Expr& e, const AlgebraConfig& cfg, Engine engine = Engine::realize) {
    ConfElement out;
    for (const auto& [c, f] : e.terms) {
        ConfElement v;
        switch (f.kind) {
            case Factor::Kind::generator: {
                auto l = cfg.find(f.name);
                if (!l || l->is_v()) throw std::invalid_argument("unknown generator '" + f.name + "'");
                v = ConfElement::word(NormalWord::generator(*l));
                break;
            }
            case Factor::Kind::d_power: v = apply_D(eval(f.operands.at(0), cfg, engine), f.index); break;
            case Factor::Kind::product: {
                ConfElement l = eval(f.operands.at(0), cfg, engine);
                ConfElement r = eval(f.operands.at(1), cfg, engine);
                v = engine == Engine::realize ? cprod(l, f.index, r, cfg) : cprod_rw(l, f.index, r, cfg);
                break;
            }
        }
        out += v * c;
    }
    return out;
}

/// Parses a realized element such as "2 * D^1 <avb> - <ab>"; words use parse_word syntax.
inline PElement parse_realized(std::string_view text, const AlgebraConfig& cfg) {
    PElement out;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto number = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ParseError("expected an integer", pos);
        if (pos - start > 9) throw ParseError("integer too large", start);
        return std::string(text.substr(start, pos - start));
    };
    skip();
    if (text.substr(pos) == "0") return out;
    bool first = true;
    while (true) {
        skip();
        if (pos >= text.size()) {
            if (first) throw ParseError("empty realized element", pos);
            break;
        }
        Scalar sign(1);
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
            skip();
        } else if (!first) {
            throw ParseError("expected '+' or '-'", pos);
        }
        first = false;
        Scalar c(1);
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::string num = number();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                num += "/" + number();
            }
            c = parse_scalar(num);
            skip();
            if (pos >= text.size() || text[pos] != '*') throw ParseError("expected '*'", pos);
            ++pos;
            skip();
        }
        Degree d = 0;
        if (text.substr(pos, 2) == "D^") {
            pos += 2;
            d = static_cast<Degree>(std::stoul(number()));
            skip();
        }
        if (pos >= text.size() || text[pos] != '<') throw ParseError("expected '<'", pos);
        std::size_t close = text.find('>', pos);
        if (close == std::string_view::npos) throw ParseError("unterminated word", pos);
        const std::string body(text.substr(pos + 1, close - pos - 1));
        Word w;
        try {
            w = parse_word(body, cfg);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), pos + 1);
        }
        out.add(d, NCPoly::monomial(w, c * sign));
        pos = close + 1;
    }
    return out;
}

}  // namespace confalg
