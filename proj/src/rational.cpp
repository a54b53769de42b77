#include "gpsub/rational.hpp"

#include <cctype>
#include <ostream>

namespace gpsub {

Rational::Rational(long num, long den) {
    if (den == 0) throw DivisionByZeroError();
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZeroError();
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    // mpq_class accepts "p/q" directly but also tolerates whitespace and
    // bases we do not want; validate shape first.
    std::string s = text;
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty rational");
    s = s.substr(a, b - a + 1);
    size_t i = 0;
    auto digits = [&](size_t from) {
        size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        return j;
    };
    if (s[i] == '+' || s[i] == '-') ++i;
    size_t j = digits(i);
    if (j == i) throw ParseError("bad rational '" + text + "'");
    if (j < s.size()) {
        if (s[j] != '/') throw ParseError("bad rational '" + text + "'");
        size_t k = digits(j + 1);
        if (k != s.size() || k == j + 1) throw ParseError("bad rational '" + text + "'");
        if (mpz_class(s.substr(j + 1)) == 0) throw DivisionByZeroError();
    }
    mpq_class v(s);
    v.canonicalize();
    return Rational(v);
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

long Rational::to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
        throw Error("rational " + str() + " is not a machine integer");
    return v_.get_num().get_si();
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

size_t Rational::hash() const {
    // Reduced form is canonical, so hashing the string form is sound.
    return std::hash<std::string>{}(str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational gen_binomial(const Rational& n, unsigned long j) {
    Rational res = 1;
    for (unsigned long t = 0; t < j; ++t) {
        res *= n - Rational(static_cast<long>(t));
        res /= Rational(static_cast<long>(t) + 1);
    }
    return res;
}

Rational frac_part(const Rational& r) {
    return r - Rational(mpq_class(r.floor()));
}

}  // namespace gpsub
