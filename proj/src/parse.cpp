#include "lc/parse.hpp"

#include <cctype>
#include <map>

#include "lc/errors.hpp"

namespace lc {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const std::string& what) {
        if (!accept(c))
            throw SyntaxError(pos, pos + 1, "expected '" + std::string(1, c) +
                                                "' " + what);
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (text.compare(pos, w.size(), w) != 0) return false;
        std::size_t end = pos + w.size();
        if (end < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
            return false;
        pos = end;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw SyntaxError(pos, std::min(pos + 1, text.size()), msg);
    }
};

Integer parse_integer(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    bool negative = false;
    if (c.pos < c.text.size() && (c.text[c.pos] == '-' || c.text[c.pos] == '+')) {
        negative = c.text[c.pos] == '-';
        ++c.pos;
    }
    std::string digits;
    while (c.pos < c.text.size() &&
           std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
        digits += c.text[c.pos];
        ++c.pos;
    }
    if (digits.empty())
        throw SyntaxError(start, c.pos + 1, "expected an integer");
    Integer v(digits);
    return negative ? Integer(-v) : v;
}

Rational parse_rational(Cursor& c) {
    Integer num = parse_integer(c);
    if (c.accept('/')) {
        Integer den = parse_integer(c);
        if (den <= 0)
            c.fail("denominator must be positive");
        return make_rational(num, den);
    }
    return make_rational(num, Integer(1));
}

// One series term: coefficient and exponent of d.
struct ParsedTerm {
    Rational exponent;
    Rational coefficient;
};

Rational parse_d_exponent(Cursor& c) {
    if (!c.accept('^')) return Rational(1);
    c.expect('(', "before the exponent");
    Rational q = parse_rational(c);
    c.expect(')', "after the exponent");
    return q;
}

ParsedTerm parse_term(Cursor& c, bool negative) {
    if (c.accept_word("d")) {
        Rational q = parse_d_exponent(c);
        return {q, negative ? Rational(-1) : Rational(1)};
    }
    Rational coeff = parse_rational(c);
    if (negative) coeff = -coeff;
    if (c.accept('*')) {
        if (!c.accept_word("d")) c.fail("expected d after '*'");
        Rational q = parse_d_exponent(c);
        return {q, coeff};
    }
    return {Rational(0), coeff};
}

LCNumber parse_number_at(Cursor& c) {
    std::map<Rational, bool> seen;
    std::vector<Term> terms;
    bool negative = c.accept('-');
    if (!negative) c.accept('+');
    while (true) {
        ParsedTerm t = parse_term(c, negative);
        if (seen.count(t.exponent)) throw DuplicateExponent(to_string(t.exponent));
        seen[t.exponent] = true;
        if (t.coefficient != 0) terms.push_back({t.exponent, t.coefficient});
        if (c.accept('-')) {
            negative = true;
        } else if (c.accept('+')) {
            negative = false;
        } else {
            break;
        }
    }
    return LCNumber::make(std::move(terms));
}

// --- set expressions ----------------------------------------------------------

struct SetParser {
    Cursor& c;
    std::map<std::string, SetPtr> bindings;

    SetPtr parse_expr() {
        SetPtr acc = parse_term();
        while (true) {
            if (c.accept('|')) {
                acc = LCSet::union_of(acc, parse_term());
            } else if (c.accept('\\')) {
                acc = LCSet::diff_of(acc, parse_term());
            } else {
                return acc;
            }
        }
    }

    SetPtr parse_term() {
        SetPtr acc = parse_factor();
        while (c.accept('&')) acc = LCSet::intersect_of(acc, parse_factor());
        return acc;
    }

    SetPtr parse_factor() {
        if (c.accept('~')) {
            SetPtr inner = parse_factor();
            if (!c.accept_word("within")) throw UnboundedComplement();
            Interval ambient = parse_interval_strict();
            return LCSet::diff_of(LCSet::single(ambient), inner);
        }
        return parse_atom();
    }

    SetPtr parse_atom() {
        char ch = c.peek();
        if (ch == '[' || ch == '(') {
            if (ch == '(') {
                // Either an open interval or a grouped expression.
                std::size_t save = c.pos;
                try {
                    return LCSet::single(parse_interval_strict());
                } catch (const SyntaxError&) {
                    c.pos = save;
                }
                c.expect('(', "");
                SetPtr inner = parse_expr();
                c.expect(')', "after the grouped expression");
                return inner;
            }
            return LCSet::single(parse_interval_strict());
        }
        if (c.accept_word("Q")) return primitive_points();
        if (c.accept_word("T")) return primitive_dense(DenseFamily::T);
        if (c.accept_word("S")) return primitive_dense(DenseFamily::S);
        if (c.accept_word("union")) return countable(true);
        if (c.accept_word("intersect")) return countable(false);
        std::string id = parse_ident();
        auto it = bindings.find(id);
        if (it == bindings.end())
            c.fail("unknown name '" + id + "'");
        return it->second;
    }

    std::string parse_ident() {
        c.skip_ws();
        std::size_t start = c.pos;
        std::string id;
        while (c.pos < c.text.size() &&
               (std::isalnum(static_cast<unsigned char>(c.text[c.pos])) ||
                c.text[c.pos] == '_')) {
            id += c.text[c.pos];
            ++c.pos;
        }
        if (id.empty())
            throw SyntaxError(start, start + 1, "expected a set expression");
        return id;
    }

    Interval parse_interval_strict() {
        c.skip_ws();
        bool lo_closed;
        if (c.accept('[')) {
            lo_closed = true;
        } else if (c.accept('(')) {
            lo_closed = false;
        } else {
            c.fail("expected an interval");
        }
        LCNumber lo = parse_number_at(c);
        c.expect(',', "between the interval endpoints");
        LCNumber hi = parse_number_at(c);
        bool hi_closed;
        if (c.accept(']')) {
            hi_closed = true;
        } else if (c.accept(')')) {
            hi_closed = false;
        } else {
            c.fail("expected ']' or ')' closing the interval");
        }
        return Interval::make(Bound::finite(lo, lo_closed),
                              Bound::finite(hi, hi_closed));
    }

    SetPtr primitive_points() {
        c.expect('(', "after Q");
        Interval I = parse_interval_strict();
        c.expect(')', "after Q(...)");
        return LCSet::rational_points(I);
    }

    SetPtr primitive_dense(DenseFamily fam) {
        c.expect('(', "after the dense family name");
        Interval I = parse_interval_strict();
        c.expect(')', "after the dense family");
        return LCSet::dense(fam, I);
    }

    SetPtr countable(bool is_union) {
        c.expect('(', "after the countable constructor");
        std::string var = parse_ident();
        if (var != "n")
            c.fail("countable families are indexed by 'n'");
        c.expect(',', "after the index variable");
        std::string pattern = capture_pattern();
        c.expect(')', "closing the countable constructor");
        return set_countable_from_pattern(pattern, is_union);
    }

    // Raw pattern text up to the matching close paren, whitespace stripped.
    std::string capture_pattern() {
        c.skip_ws();
        std::string out;
        int depth = 0;
        while (c.pos < c.text.size()) {
            char ch = c.text[c.pos];
            if (ch == '(' || ch == '[') ++depth;
            if (ch == ')' || ch == ']') {
                if (ch == ')' && depth == 0) break;
                --depth;
            }
            if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
            ++c.pos;
        }
        if (out.empty()) c.fail("expected an interval pattern");
        return out;
    }
};

} // namespace

LCNumber parse_number(const std::string& text) {
    Cursor c{text};
    LCNumber x = parse_number_at(c);
    if (!c.done())
        throw SyntaxError(c.pos, text.size(), "trailing input after the series");
    return x;
}

SetPtr parse_set_script(const std::string& text) {
    Cursor c{text};
    SetParser p{c, {}};
    while (c.accept_word("let")) {
        std::string name = p.parse_ident();
        c.expect('=', "after the let name");
        SetPtr value = p.parse_expr();
        p.bindings[name] = value;
        c.expect(';', "after the let binding");
    }
    SetPtr result = p.parse_expr();
    if (!c.done())
        throw SyntaxError(c.pos, text.size(), "trailing input after the set expression");
    return result;
}

// --- function expressions -------------------------------------------------------

namespace {

struct FuncParser {
    Cursor& c;

    FuncPtr parse_expr() {
        bool negative = false;
        if (c.accept('-'))
            negative = true;
        else
            c.accept('+');
        FuncPtr acc = parse_term();
        if (negative)
            acc = FuncExpr::sub(FuncExpr::constant_of(Rational(0)), acc);
        while (true) {
            if (c.accept('+')) {
                acc = FuncExpr::add(acc, parse_term());
            } else if (c.accept('-')) {
                acc = FuncExpr::sub(acc, parse_term());
            } else {
                return acc;
            }
        }
    }

    FuncPtr parse_term() {
        FuncPtr acc = parse_power();
        while (true) {
            if (c.accept('*')) {
                acc = FuncExpr::mul(acc, parse_power());
            } else if (c.accept('/')) {
                acc = FuncExpr::div(acc, parse_power());
            } else {
                return acc;
            }
        }
    }

    FuncPtr parse_power() {
        FuncPtr base = parse_atom();
        if (c.accept('^')) {
            Integer k = parse_integer(c);
            if (k < 1) c.fail("powers must be positive integers");
            FuncPtr acc = base;
            for (Integer i = 1; i < k; ++i) acc = FuncExpr::mul(acc, base);
            return acc;
        }
        return base;
    }

    FuncPtr parse_atom() {
        if (c.accept('(')) {
            FuncPtr inner = parse_expr();
            c.expect(')', "after the grouped expression");
            return inner;
        }
        if (c.accept_word("root")) {
            c.expect('(', "after root");
            FuncPtr arg = parse_expr();
            c.expect(',', "between the radicand and the degree");
            Integer deg = parse_integer(c);
            if (deg < 1) c.fail("root degree must be positive");
            c.expect(')', "after root(...)");
            return FuncExpr::root(arg, deg.get_ui());
        }
        if (c.accept_word("x")) return FuncExpr::variable();
        // Integer literals only: fractions are spelled with the division
        // operator and evaluate to the same exact rational.
        return FuncExpr::constant_of(Rational(parse_integer(c)));
    }
};

} // namespace

FuncPtr parse_func(const std::string& text) {
    Cursor c{text};
    FuncParser p{c};
    FuncPtr f = p.parse_expr();
    if (!c.done())
        throw SyntaxError(c.pos, text.size(), "trailing input after the expression");
    return f;
}

Rational parse_rational_text(const std::string& text) {
    Cursor c{text};
    Rational q = parse_rational(c);
    if (!c.done())
        throw SyntaxError(c.pos, text.size(), "trailing input after the rational");
    return q;
}

} // namespace lc
