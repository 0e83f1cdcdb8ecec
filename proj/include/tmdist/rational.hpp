#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "tmdist/bigint.hpp"

namespace tmdist {

// Exact rational number, always stored reduced with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long n) : Rational(static_cast<long long>(n)) {}
    Rational(int n) : Rational(static_cast<long long>(n)) {}
    Rational(unsigned long long n) : num_(n), den_(1) {}
    Rational(unsigned long n) : Rational(static_cast<unsigned long long>(n)) {}
    Rational(unsigned n) : Rational(static_cast<unsigned long long>(n)) {}
    Rational(BigInt n, BigInt d);
    Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}

    // accepts "p/q", plain integers, and decimal literals like "1.25"
    static Rational parse(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int signum() const { return num_.signum(); }

    BigInt floor() const;
    BigInt ceil() const;
    BigInt nearest() const;            // <x> = floor(x + 1/2)
    Rational frac() const;             // {x} = x - floor(x), in [0,1)
    Rational dist_to_integer() const;  // ||x|| = min_n |x - n|, in [0,1/2]

    double to_double() const;
    std::string to_string() const;  // "p/q" ("p" when q = 1)

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend int compare(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return compare(a, b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

    friend Rational abs(const Rational& x) { return x.signum() < 0 ? -x : x; }

private:
    void reduce();
    BigInt num_, den_;
};

}  // namespace tmdist
