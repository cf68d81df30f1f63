#include "aksz/parse.hpp"

#include <cctype>
#include <sstream>

namespace aksz {

namespace {

class Parser {
public:
    Parser(std::string_view src, const Chart& chart) : src_(src), chart_(chart) {}

    GradedPoly parse() {
        GradedPoly p = expr();
        skip_ws();
        if (pos_ != src_.size()) fail(ErrorKind::syntax, "unexpected '" + std::string(1, src_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(ErrorKind kind, const std::string& msg, std::size_t at) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(kind, msg, line, col);
    }
    [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const { fail(kind, msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    GradedPoly expr() {
        GradedPoly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    GradedPoly term() {
        GradedPoly acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    GradedPoly factor() {
        skip_ws();
        if (pos_ >= src_.size()) fail(ErrorKind::syntax, "unexpected end of expression");
        const char c = src_[pos_];
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            GradedPoly inner = expr();
            if (!accept(')')) fail(ErrorKind::syntax, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational value{mpz_class(digits())};
            const std::size_t save = pos_;
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == '/') {
                ++pos_;
                skip_ws();
                const std::size_t at = pos_;
                const std::string den = digits();
                if (den.empty()) fail(ErrorKind::syntax, "expected denominator");
                mpz_class d(den);
                if (d == 0) fail(ErrorKind::syntax, "zero denominator", at);
                value = Rational(value.get_num(), d);
                value.canonicalize();
            } else {
                pos_ = save;
            }
            return GradedPoly::constant(chart_, value);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            const std::string name(src_.substr(start, pos_ - start));
            auto idx = chart_.find(name);
            if (!idx) fail(ErrorKind::unknown_identifier, "unknown identifier '" + name + "'", start);
            unsigned long exponent = 1;
            if (accept('^')) {
                skip_ws();
                const std::string e = digits();
                if (e.empty()) fail(ErrorKind::syntax, "expected exponent");
                if (e.size() > 4) fail(ErrorKind::syntax, "exponent too large");
                exponent = std::stoul(e);
            }
            if (exponent >= 2 && is_odd(chart_[*idx].parity)) {
                fail(ErrorKind::odd_square, "odd identifier '" + name + "' raised to a power", start);
            }
            Monomial m(chart_.size(), 0);
            m[*idx] = static_cast<std::uint16_t>(exponent);
            return GradedPoly::term(chart_, m, Rational(1));
        }
        fail(ErrorKind::syntax, "unexpected '" + std::string(1, c) + "'");
    }

    std::string_view src_;
    const Chart& chart_;
    std::size_t pos_ = 0;
};

}  // namespace

GradedPoly parse_expression(std::string_view src, const Chart& chart) {
    return Parser(src, chart).parse();
}

std::string print_poly(const GradedPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const Chart& chart = p.chart();
    for (const auto& [m, c] : p.terms()) {
        const bool negative = sgn(c) < 0;
        const Rational mag = abs(c);
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (wrote) os << '*';
            os << chart[i].name;
            if (m[i] > 1) os << '^' << m[i];
            wrote = true;
        }
        if (!wrote) os << '1';
    }
    return os.str();
}

}  // namespace aksz
