#pragma once

#include <cstdint>
#include <string>

#include "tmdist/bigint.hpp"
#include "tmdist/rational.hpp"

namespace tmdist {

// Exact dyadic rational num / 2^exp, normalized so num is odd or zero.
class Dyadic {
public:
    Dyadic() : num_(0), exp_(0) {}
    Dyadic(BigInt num, unsigned exp) : num_(std::move(num)), exp_(exp) { normalize(); }
    Dyadic(long long v) : num_(v), exp_(0) {}
    Dyadic(int v) : num_(v), exp_(0) {}

    const BigInt& num() const { return num_; }
    unsigned exp() const { return exp_; }
    bool is_zero() const { return num_.is_zero(); }

    Rational to_rational() const { return Rational(num_, BigInt::power_of_two(exp_)); }
    double to_double() const;
    std::string to_string() const;  // "num/2^k" ("num" when k = 0)

    Dyadic operator-() const { return Dyadic(-num_, exp_); }
    friend Dyadic abs(const Dyadic& x) { return Dyadic(x.num_.abs(), x.exp_); }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
    }

    friend int compare(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return compare(a, b) != 0; }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }

    friend Dyadic pow(const Dyadic& base, unsigned e);

private:
    void normalize();
    BigInt num_;
    unsigned exp_;
};

}  // namespace tmdist
