#include "partdet/ringpoly.hpp"

#include <algorithm>
#include <cctype>

#include "partdet/error.hpp"

namespace partdet {

void RingPoly::normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const Monomial& a, const Monomial& b) { return a.word < b.word; });
    std::vector<Monomial> out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().word == t.word) {
            out.back().coeff += t.coeff;
            if (out.back().coeff == 0) out.pop_back();
        } else if (t.coeff != 0) {
            out.push_back(std::move(t));
        }
    }
    terms = std::move(out);
    for (const auto& t : terms)
        for (int v : t.word) nvars = std::max(nvars, v);
}

bool RingPoly::same_terms(const RingPoly& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].coeff != o.terms[i].coeff || terms[i].word != o.terms[i].word) return false;
    return true;
}

RingPoly RingPoly::variable(int index) {
    if (index < 1) fail("BadVariable", "variable indices are 1-based");
    RingPoly p;
    p.terms.push_back({1, {index}});
    p.nvars = index;
    return p;
}

RingPoly RingPoly::operator+(const RingPoly& o) const {
    RingPoly p;
    p.terms = terms;
    p.terms.insert(p.terms.end(), o.terms.begin(), o.terms.end());
    p.nvars = std::max(nvars, o.nvars);
    p.normalize();
    return p;
}

RingPoly RingPoly::operator-() const { return scaled(-1); }

RingPoly RingPoly::operator-(const RingPoly& o) const { return *this + (-o); }

RingPoly RingPoly::scaled(long long c) const {
    RingPoly p = *this;
    for (auto& t : p.terms) t.coeff *= c;
    p.normalize();
    return p;
}

RingPoly RingPoly::operator*(const RingPoly& o) const {
    RingPoly p;
    p.nvars = std::max(nvars, o.nvars);
    for (const auto& a : terms) {
        for (const auto& b : o.terms) {
            Monomial m;
            m.coeff = a.coeff * b.coeff;
            m.word = a.word;
            m.word.insert(m.word.end(), b.word.begin(), b.word.end());
            p.terms.push_back(std::move(m));
        }
    }
    p.normalize();
    return p;
}

RingPoly RingPoly::pow(int e) const {
    if (e < 1) fail("BadExponent", "polynomial powers need exponent >= 1");
    RingPoly p = *this;
    for (int i = 1; i < e; ++i) p = p * *this;
    return p;
}

ElementId RingPoly::eval(const FiniteRing& r, const std::vector<ElementId>& x) const {
    for (const auto& t : terms) {
        if (t.word.empty()) fail("BadMonomial", "constant terms have no meaning here");
        for (int v : t.word)
            if (v > static_cast<int>(x.size()))
                fail("BadArity", "polynomial uses variable " + std::to_string(v) +
                                     " but only " + std::to_string(x.size()) + " values given");
    }
    ElementId acc = r.zero();
    const long long n = r.order();
    for (const auto& t : terms) {
        ElementId w = x[static_cast<std::size_t>(t.word[0] - 1)];
        for (std::size_t i = 1; i < t.word.size(); ++i)
            w = r.mul(w, x[static_cast<std::size_t>(t.word[i] - 1)]);
        long long c = ((t.coeff % n) + n) % n;  // c-fold sum; additive order divides n
        ElementId scaled = r.zero();
        for (long long i = 0; i < c; ++i) scaled = r.add(scaled, w);
        acc = r.add(acc, scaled);
    }
    return acc;
}

std::string RingPoly::str(char letter) const {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        long long c = t.coeff;
        if (i == 0) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        long long mag = c < 0 ? -c : c;
        if (mag != 1) out += std::to_string(mag) + "*";
        for (std::size_t j = 0; j < t.word.size();) {
            std::size_t run = j;
            while (run < t.word.size() && t.word[run] == t.word[j]) ++run;
            if (j > 0) out += "*";
            out += letter + std::to_string(t.word[j]);
            if (run - j > 1) out += "^" + std::to_string(run - j);
            j = run;
        }
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    int nvars_hint;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void die(const std::string& why) {
        fail("BadPolynomial", why + " at offset " + std::to_string(pos) + " in \"" + s + "\"");
    }

    long long integer() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) die("expected an integer");
        return std::stoll(s.substr(start, pos - start));
    }

    // scalar multiplier plus polynomial factors of one product
    struct Term {
        long long scalar = 1;
        RingPoly poly;
        bool has_poly = false;
    };

    RingPoly primary_poly() {
        skip();
        if (s[pos] == '(') {
            ++pos;
            RingPoly p = expr();
            if (peek() != ')') die("expected ')'");
            ++pos;
            return p;
        }
        if (s[pos] == 'x' || s[pos] == 'y') {
            ++pos;
            long long idx = integer();
            if (idx < 1 || idx > 64) die("variable index out of range");
            if (nvars_hint > 0 && idx > nvars_hint)
                die("variable index beyond declared count " + std::to_string(nvars_hint));
            return RingPoly::variable(static_cast<int>(idx));
        }
        die("expected a variable, integer, or '('");
    }

    void factor(Term& t) {
        skip();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            long long v = integer();
            if (peek() == '^') {
                ++pos;
                long long e = integer();
                long long r = 1;
                for (long long i = 0; i < e; ++i) r *= v;
                v = r;
            }
            t.scalar *= v;
            return;
        }
        RingPoly p = primary_poly();
        if (peek() == '^') {
            ++pos;
            long long e = integer();
            if (e < 1 || e > 16) die("exponent out of range");
            p = p.pow(static_cast<int>(e));
        }
        t.poly = t.has_poly ? t.poly * p : p;
        t.has_poly = true;
    }

    RingPoly term() {
        Term t;
        bool negate = false;
        while (peek() == '+' || peek() == '-') {
            if (s[pos] == '-') negate = !negate;
            ++pos;
        }
        factor(t);
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                factor(t);
            } else if (c == '(' || c == 'x' || c == 'y' ||
                       std::isdigit(static_cast<unsigned char>(c))) {
                factor(t);  // juxtaposition
            } else {
                break;
            }
        }
        if (!t.has_poly) die("term has no variable (rings may lack a constant 1)");
        return t.poly.scaled(negate ? -t.scalar : t.scalar);
    }

    RingPoly expr() {
        RingPoly p = term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') break;
            p = p + term();  // sign consumed by term()
        }
        return p;
    }
};

}  // namespace

RingPoly parse_ring_poly(const std::string& text, int nvars_hint) {
    Parser p{text, 0, nvars_hint};
    RingPoly out = p.expr();
    p.skip();
    if (p.pos != text.size()) p.die("unexpected trailing input");
    if (nvars_hint > 0) out.nvars = nvars_hint;
    return out;
}

}  // namespace partdet
