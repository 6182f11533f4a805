#include "skewfold/parser.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace skewfold {

namespace {

class Scanner {
  public:
    explicit Scanner(const std::string& text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    char raw_peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char get() {
        skip_ws();
        char c = text_[pos_];
        advance();
        return c;
    }

    bool accept(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!accept(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }

    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, line_, col_); }

    double read_real() {
        skip_ws();
        std::size_t start = pos_;
        if (raw_peek() == '+' || raw_peek() == '-') advance();
        bool digits = false;
        while (std::isdigit(static_cast<unsigned char>(raw_peek()))) { advance(); digits = true; }
        if (raw_peek() == '.') {
            advance();
            while (std::isdigit(static_cast<unsigned char>(raw_peek()))) { advance(); digits = true; }
        }
        if (!digits) fail("expected a number");
        if (raw_peek() == 'e' || raw_peek() == 'E') {
            std::size_t mark = pos_;
            advance();
            if (raw_peek() == '+' || raw_peek() == '-') advance();
            if (!std::isdigit(static_cast<unsigned char>(raw_peek())))
                pos_ = mark;  // the 'e' was not an exponent
            else
                while (std::isdigit(static_cast<unsigned char>(raw_peek()))) advance();
        }
        return std::stod(text_.substr(start, pos_ - start));
    }

    long long read_nat() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(raw_peek())))
            fail("expected a non-negative integer exponent");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(raw_peek()))) {
            v = v * 10 + (raw_peek() - '0');
            if (v > 1000000) fail("exponent too large");
            advance();
        }
        return v;
    }

    int line() const { return line_; }
    int col() const { return col_; }

  private:
    void advance() {
        if (pos_ < text_.size()) {
            if (text_[pos_] == '\n') { ++line_; col_ = 1; }
            else ++col_;
            ++pos_;
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// (a+bi), (a-bi), (bi), (a); the sign of b may precede the digits.
cpx read_complex_literal(Scanner& sc) {
    sc.expect('(', "to open a complex literal");
    double first = sc.read_real();
    if (sc.accept('i')) {
        sc.expect(')', "to close a complex literal");
        return cpx(0.0, first);
    }
    if (sc.peek() == ')') {
        sc.get();
        return cpx(first, 0.0);
    }
    char sign = sc.get();
    if (sign != '+' && sign != '-') sc.fail("expected '+', '-' or ')' in complex literal");
    double second = sc.read_real();
    if (!sc.accept('i')) sc.fail("expected 'i' after the imaginary part");
    sc.expect(')', "to close a complex literal");
    return cpx(first, sign == '-' ? -second : second);
}

// term := factor ('*'? factor)*, factor := literal | ('z'|'w') ['^' nat]
Term read_term(Scanner& sc) {
    Term t{Rational(0), Rational(0), cpx(1.0, 0.0)};
    bool any = false;
    for (;;) {
        char c = sc.peek();
        if (c == '(') {
            t.coeff *= read_complex_literal(sc);
            any = true;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            t.coeff *= sc.read_real();
            any = true;
        } else if (c == 'z' || c == 'w') {
            sc.get();
            long long e = 1;
            if (sc.accept('^')) e = sc.read_nat();
            if (c == 'z') t.ez += Rational(e);
            else t.ew += Rational(e);
            any = true;
        } else {
            break;
        }
        sc.accept('*');
    }
    if (!any) sc.fail("expected a term");
    return t;
}

Poly read_poly(Scanner& sc) {
    std::vector<Term> terms;
    double sign = 1.0;
    if (sc.accept('-')) sign = -1.0;
    else sc.accept('+');
    for (;;) {
        Term t = read_term(sc);
        t.coeff *= sign;
        terms.push_back(t);
        if (sc.accept('+')) sign = 1.0;
        else if (sc.accept('-')) sign = -1.0;
        else break;
    }
    return Poly(terms);
}

}  // namespace

Poly parse_polynomial(const std::string& text) {
    Scanner sc(text);
    Poly poly = read_poly(sc);
    if (!sc.eof()) sc.fail("trailing input after polynomial");
    return poly;
}

SkewProduct parse_map(const std::string& text) {
    Scanner sc(text);
    std::optional<Poly> p, q;
    while (!sc.eof()) {
        if (sc.accept(';')) continue;
        char name = sc.get();
        if (name != 'p' && name != 'q') sc.fail("expected 'p' or 'q' assignment");
        sc.expect('=', "after coordinate name");
        Poly poly = read_poly(sc);
        if (name == 'p') {
            if (p) sc.fail("duplicate assignment to p");
            p = poly;
        } else {
            if (q) sc.fail("duplicate assignment to q");
            q = poly;
        }
        if (!sc.eof() && !sc.accept(';')) sc.fail("expected ';' between assignments");
    }
    if (!p) throw parse_error("map file does not define p", 1, 1);
    if (!q) throw parse_error("map file does not define q", 1, 1);
    return SkewProduct::make(*p, *q);
}

SkewProduct parse_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map(buf.str());
}

}  // namespace skewfold
