#include "partdet/rational.hpp"

#include <cctype>

namespace partdet {

Rational parse_rational(const std::string& text) {
    if (text.empty()) fail("BadRational", "empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) fail("BadRational", "zero denominator in '" + text + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        fail("BadRational", "cannot parse rational '" + text + "'");
    }
}

std::string rational_str(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

BigInt denominator_lcm(std::span<const Rational> values) {
    BigInt l = 1;
    for (const Rational& v : values) {
        BigInt d = v.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

namespace {

// log2 |z| for z != 0 via mpz_get_d_2exp: z = d * 2^e with 0.5 <= |d| < 1.
double log2_big(const BigInt& z) {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return static_cast<double>(exp) + std::log2(std::fabs(d));
}

}  // namespace

double log2_rational(const Rational& q) {
    if (q <= 0) fail("BadLog", "log2 of non-positive rational");
    return log2_big(q.get_num()) - log2_big(q.get_den());
}

}  // namespace partdet
