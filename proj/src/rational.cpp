#include "tmdist/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace tmdist {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::invalid_argument("Rational: zero denominator");
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    reduce();
}

void Rational::reduce() {
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        BigInt n = BigInt::from_decimal(text.substr(0, slash));
        BigInt d = BigInt::from_decimal(text.substr(slash + 1));
        return Rational(std::move(n), std::move(d));
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(BigInt::from_decimal(text));
    std::string digits(text.substr(0, dot));
    std::string_view fracpart = text.substr(dot + 1);
    digits.append(fracpart);
    BigInt n = BigInt::from_decimal(digits);
    BigInt d(1);
    for (std::size_t i = 0; i < fracpart.size(); ++i) d *= BigInt(10);
    return Rational(std::move(n), std::move(d));
}

BigInt Rational::floor() const {
    BigInt q, r;
    floor_divmod(num_, den_, q, r);
    return q;
}

BigInt Rational::ceil() const {
    BigInt q, r;
    floor_divmod(num_, den_, q, r);
    if (!r.is_zero()) q += BigInt(1);
    return q;
}

BigInt Rational::nearest() const {
    // floor(x + 1/2) = floor((2 num + den) / (2 den))
    BigInt n2 = (num_ << 1) + den_;
    BigInt q, r;
    floor_divmod(n2, den_ << 1, q, r);
    return q;
}

Rational Rational::frac() const {
    BigInt q, r;
    floor_divmod(num_, den_, q, r);
    return Rational(std::move(r), den_);
}

Rational Rational::dist_to_integer() const {
    Rational f = frac();
    Rational g = Rational(1) - f;
    return f <= g ? f : g;
}

double Rational::to_double() const {
    // scale so the quotient carries ~64 significant bits
    std::size_t nb = num_.bit_length(), db = den_.bit_length();
    long shift = static_cast<long>(db) + 64 - static_cast<long>(nb);
    BigInt scaled = shift >= 0 ? (num_ << static_cast<std::size_t>(shift)) : (num_ >> static_cast<std::size_t>(-shift));
    BigInt q = scaled / den_;
    return std::ldexp(q.to_double(), static_cast<int>(-shift));
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_decimal();
    return num_.to_decimal() + "/" + den_.to_decimal();
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    BigInt n = num_ * o.den_;
    BigInt d = den_ * o.num_;
    num_ = std::move(n);
    den_ = std::move(d);
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    reduce();
    return *this;
}

int compare(const Rational& a, const Rational& b) {
    return compare(a.num_ * b.den_, b.num_ * a.den_);
}

}  // namespace tmdist
