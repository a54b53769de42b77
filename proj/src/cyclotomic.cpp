#include "gpsub/cyclotomic.hpp"

#include <cassert>
#include <sstream>

namespace gpsub {

namespace {

using Poly = std::vector<Rational>;  // little-endian, no trailing zeros

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

Poly sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// a = q*b + r with deg r < deg b.
void divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
    assert(!b.empty());
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        size_t shift = a.size() - b.size();
        Rational coef = a.back() / b.back();
        q[shift] += coef;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= coef * b[i];
        trim(a);
    }
    trim(q);
    r = std::move(a);
}

}  // namespace

CyclotomicField::CyclotomicField(unsigned long order) : order_(order) {
    if (order == 0) throw Error("cyclotomic order must be positive");
    // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d, built bottom-up.
    std::vector<Poly> phis(order + 1);
    for (unsigned long n = 1; n <= order; ++n) {
        Poly f(n + 1, Rational(0));
        f[0] = Rational(-1);
        f[n] = Rational(1);
        for (unsigned long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            Poly q, r;
            divmod(f, phis[d], q, r);
            assert(r.empty());
            f = std::move(q);
        }
        phis[n] = std::move(f);
    }
    phi_ = std::move(phis[order]);
    deg_ = phi_.size() - 1;

    size_t count = std::max<size_t>(2 * deg_ > 0 ? 2 * deg_ - 1 : 1, order);
    power_.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        if (k < deg_) {
            std::vector<Rational> e(deg_, Rational(0));
            e[k] = Rational(1);
            power_.push_back(std::move(e));
        } else {
            // zeta^k = zeta * zeta^{k-1}, then fold the top power back using
            // zeta^deg = -(phi_0 + phi_1 zeta + ...)/phi_deg (phi is monic).
            std::vector<Rational> e(deg_ + 1, Rational(0));
            const auto& prev = power_[k - 1];
            for (size_t i = 0; i < deg_; ++i) e[i + 1] = prev[i];
            Rational top = e[deg_];
            e.pop_back();
            if (!top.is_zero())
                for (size_t i = 0; i < deg_; ++i) e[i] -= top * phi_[i];
            power_.push_back(std::move(e));
        }
    }
}

Cyclotomic CyclotomicField::zero() const {
    return Cyclotomic(this, std::vector<Rational>(deg_, Rational(0)));
}

Cyclotomic CyclotomicField::one() const { return from_rational(Rational(1)); }

Cyclotomic CyclotomicField::from_rational(const Rational& r) const {
    std::vector<Rational> c(deg_, Rational(0));
    c[0] = r;
    return Cyclotomic(this, std::move(c));
}

Cyclotomic CyclotomicField::root_of_unity(const Rational& r) const {
    Rational f = frac_part(r);  // e(r) depends on r mod 1 only
    mpz_class den = f.den();
    if (!den.fits_ulong_p() || order_ % den.get_ui() != 0)
        throw IncompatibleOrderError("denominator of " + r.str() + " does not divide " +
                                     std::to_string(order_));
    unsigned long q = den.get_ui();
    mpz_class k = f.num() * static_cast<unsigned long>(order_ / q);
    unsigned long kk = mpz_class(k % order_).get_ui();
    return Cyclotomic(this, power_.at(kk));
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

Rational Cyclotomic::as_rational() const {
    if (!is_rational()) throw Error("scalar " + str() + " is not rational");
    return c_.empty() ? Rational(0) : c_[0];
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    assert(field_ == o.field_);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    assert(field_ == o.field_);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    assert(field_ == o.field_);
    size_t deg = c_.size();
    std::vector<Rational> conv(2 * deg - 1, Rational(0));
    for (size_t i = 0; i < deg; ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < deg; ++j) {
            if (o.c_[j].is_zero()) continue;
            conv[i + j] += c_[i] * o.c_[j];
        }
    }
    std::vector<Rational> res(deg, Rational(0));
    for (size_t k = 0; k < conv.size(); ++k) {
        if (conv[k].is_zero()) continue;
        if (k < deg) {
            res[k] += conv[k];
        } else {
            const auto& pw = field_->power(k);
            for (size_t i = 0; i < deg; ++i) res[i] += conv[k] * pw[i];
        }
    }
    c_ = std::move(res);
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    assert(a.field_ == b.field_);
    return a.c_ == b.c_;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw DivisionByZeroError();
    // Extended Euclid on (f, Phi_N) in Q[x]; Phi_N is irreducible so the
    // gcd is a nonzero constant g with u*f + v*Phi = g, giving f^-1 = u/g.
    Poly f = c_;
    trim(f);
    Poly r0 = field_->modulus(), r1 = f;
    Poly s0 = {}, s1 = {Rational(1)};  // s tracks the coefficient of f
    while (!r1.empty()) {
        Poly q, r;
        divmod(r0, r1, q, r);
        Poly s = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    assert(r0.size() == 1);  // gcd(f, Phi) constant
    Rational inv_g = Rational(1) / r0[0];
    std::vector<Rational> u(field_->degree(), Rational(0));
    for (size_t i = 0; i < s0.size(); ++i) u[i] = s0[i] * inv_g;
    return Cyclotomic(field_, std::move(u));
}

std::string Cyclotomic::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        Rational coef = c_[k];
        if (first) {
            if (coef < 0) { os << "-"; coef = -coef; }
            first = false;
        } else {
            os << (coef < 0 ? " - " : " + ");
            if (coef < 0) coef = -coef;
        }
        std::string basis =
            k == 0 ? "" : "e(" + Rational(static_cast<long>(k), static_cast<long>(field_->order())).str() + ")";
        if (basis.empty()) {
            os << coef.str();
        } else if (coef == Rational(1)) {
            os << basis;
        } else {
            os << coef.str() << "*" << basis;
        }
    }
    return os.str();
}

}  // namespace gpsub
