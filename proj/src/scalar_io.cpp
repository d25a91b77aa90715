#include "ioa/scalar_io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ioa {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (rat_den(r) != 1) os << "/" << rat_den(r);
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rat(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal '" + s + "'");
    }
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    long order;

    explicit Parser(const std::string& str, long ord) : s(str), order(ord) {}

    void skip_ws() { while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos; }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("scalar parse error at offset " + std::to_string(pos) + ": " + what +
                                    " in '" + s + "'");
    }

    Cyclo parse_expr() {
        Cyclo v = parse_term();
        for (;;) {
            skip_ws();
            if (eat('+')) v = v + parse_term();
            else if (eat('-')) v = v - parse_term();
            else return v;
        }
    }
    Cyclo parse_term() {
        Cyclo v = parse_factor();
        for (;;) {
            skip_ws();
            if (eat('*')) v = v * parse_factor();
            else return v;
        }
    }
    Cyclo parse_factor() {
        skip_ws();
        if (eat('(')) {
            Cyclo v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (eat('-')) return -parse_factor();
        if (pos < s.size() && s[pos] == 'z') {
            ++pos;
            if (!eat('(')) fail("expected '(' after z");
            long k = parse_long();
            if (!eat(',')) fail("expected ',' in z(k,N)");
            long n = parse_long();
            if (!eat(')')) fail("expected ')' in z(k,N)");
            return Cyclo::root_of_unity(order, k, n);
        }
        return Cyclo(order, parse_rat());
    }
    long parse_long() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected integer");
        return std::stol(s.substr(start, pos - start));
    }
    Rat parse_rat() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected number");
        std::string num = s.substr(start, pos - start);
        skip_ws();
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            skip_ws();
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == dstart) fail("expected denominator");
            return rat_from_string(num + "/" + s.substr(dstart, pos - dstart));
        }
        return rat_from_string(num);
    }
};

}  // namespace

Cyclo parse_scalar(const std::string& text, long ambient_order) {
    Parser p(text, ambient_order);
    Cyclo v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

std::string scalar_to_string(const Cyclo& c) { return c.to_string(); }

}  // namespace ioa
