#include "quatlab/words.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace quatlab {

namespace {

std::string word_with_powers(const std::string& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        os << w[i];
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

void append_coeff(std::ostringstream& os, const Rat& c, bool first, bool suppress_one) {
    Rat a = c < 0 ? Rat(-c) : c;
    if (first) {
        if (c < 0) os << "-";
    } else {
        os << (c < 0 ? " - " : " + ");
    }
    if (!suppress_one || a != 1) os << rat_to_string(a);
}

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c))
            throw std::invalid_argument(std::string("expected '") + c + "' at position " +
                                        std::to_string(pos));
    }
    bool starts_number() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c));
    }
    unsigned parse_uint() {
        skip_ws();
        if (!starts_number()) throw std::invalid_argument("expected integer");
        unsigned v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + (s[pos++] - '0');
        return v;
    }
    Rat parse_rational() {
        unsigned num = parse_uint();
        if (consume('/')) {
            unsigned den = parse_uint();
            return Rat(num, den);
        }
        return Rat(num);
    }
    bool lookahead_tr() {
        skip_ws();
        return pos + 1 < s.size() && s[pos] == 'T' && s[pos + 1] == 'r';
    }

    // --- noncommutative polynomial grammar ---

    NCPoly parse_ncexpr() {
        NCPoly acc;
        bool neg = false;
        if (consume('-')) neg = true;
        else consume('+');
        acc = parse_ncterm();
        if (neg) acc = -acc;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc = acc + parse_ncterm();
            } else if (c == '-') {
                ++pos;
                acc = acc - parse_ncterm();
            } else {
                break;
            }
        }
        return acc;
    }

    NCPoly parse_ncterm() {
        Rat coeff(1);
        bool have_coeff = false;
        if (starts_number()) {
            coeff = parse_rational();
            have_coeff = true;
            consume('*');
        }
        NCPoly acc = NCPoly::one();
        bool have_factor = false;
        for (;;) {
            char c = peek();
            if (c == 'x' || c == 'y' || c == '(' || c == '[') {
                acc = acc * parse_ncfactor();
                have_factor = true;
                consume('*');
            } else {
                break;
            }
        }
        if (!have_factor && !have_coeff) throw std::invalid_argument("empty term");
        return acc * coeff;
    }

    NCPoly parse_ncfactor() {
        NCPoly base;
        char c = peek();
        if (c == 'x' || c == 'y') {
            ++pos;
            base = NCPoly::letter(c);
        } else if (c == '(') {
            ++pos;
            base = parse_ncexpr();
            expect(')');
        } else if (c == '[') {
            ++pos;
            NCPoly a = parse_ncexpr();
            expect(',');
            NCPoly b = parse_ncexpr();
            expect(']');
            base = nc_commutator(a, b);
        } else {
            throw std::invalid_argument("expected x, y, ( or [");
        }
        if (consume('^')) return base.pow(parse_uint());
        return base;
    }

    // --- trace polynomial grammar ---

    TracePoly parse_traceexpr() {
        TracePoly acc;
        bool neg = false;
        if (consume('-')) neg = true;
        else consume('+');
        acc = parse_traceterm();
        if (neg) acc = -acc;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc = acc + parse_traceterm();
            } else if (c == '-') {
                ++pos;
                acc = acc - parse_traceterm();
            } else {
                break;
            }
        }
        return acc;
    }

    TracePoly parse_traceterm() {
        Rat coeff(1);
        bool have_coeff = false;
        if (starts_number()) {
            coeff = parse_rational();
            have_coeff = true;
            consume('*');
        }
        TracePoly acc;
        acc.add_term({}, Rat(1));  // empty product = 1
        bool have_factor = false;
        while (lookahead_tr()) {
            pos += 2;
            expect('(');
            NCPoly inner = parse_ncexpr();
            expect(')');
            acc = acc * trace_reduce(inner);
            have_factor = true;
            consume('*');
        }
        if (!have_factor && !have_coeff)
            throw std::invalid_argument("expected coefficient or Tr(...)");
        return acc * coeff;
    }
};

}  // namespace

std::string to_string(const NCPoly& p) {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : p.terms) {
        append_coeff(os, c, first, !w.empty());
        if (!w.empty()) os << word_with_powers(w);
        first = false;
    }
    return os.str();
}

std::string to_string(const TracePoly& t) {
    if (t.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [factors, c] : t.terms) {
        append_coeff(os, c, first, !factors.empty());
        Rat a = c < 0 ? Rat(-c) : c;
        bool need_star = !factors.empty() && a != 1;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (need_star || i > 0) os << (i == 0 ? "" : "*");
            os << "Tr(" << word_with_powers(factors[i]) << ")";
        }
        first = false;
    }
    return os.str();
}

NCPoly parse_ncpoly(const std::string& text) {
    Parser p(text);
    NCPoly r = p.parse_ncexpr();
    if (p.peek() != '\0') throw std::invalid_argument("trailing input in polynomial");
    return r;
}

TracePoly parse_tracepoly(const std::string& text) {
    Parser p(text);
    TracePoly r = p.parse_traceexpr();
    if (p.peek() != '\0') throw std::invalid_argument("trailing input in trace polynomial");
    return r;
}

}  // namespace quatlab
