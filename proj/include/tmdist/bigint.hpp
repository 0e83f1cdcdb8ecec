#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tmdist {

// Arbitrary-precision signed integer, sign + magnitude, base 2^32 limbs
// (little-endian, no leading zero limbs; zero has an empty limb vector).
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    BigInt(unsigned long long v);
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned long v) : BigInt(static_cast<unsigned long long>(v)) {}
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned v) : BigInt(static_cast<unsigned long long>(v)) {}

    static BigInt from_decimal(std::string_view text);
    static BigInt power_of_two(unsigned k);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return neg_; }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }
    int signum() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    std::size_t bit_length() const;
    // largest k with 2^k | *this; 0 for zero
    std::size_t trailing_zero_bits() const;

    bool fits_int64() const;
    std::int64_t to_int64() const;   // throws std::overflow_error if out of range
    double to_double() const;
    std::string to_decimal() const;

    BigInt operator-() const;
    BigInt abs() const;

    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);
    BigInt& operator<<=(std::size_t k);
    BigInt& operator>>=(std::size_t k);   // magnitude shift (truncating)

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
    friend BigInt operator<<(BigInt a, std::size_t k) { return a <<= k; }
    friend BigInt operator>>(BigInt a, std::size_t k) { return a >>= k; }

    // truncating division (C++ semantics: quotient rounded toward zero)
    friend void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);
    // floor division: q = floor(a/b), 0 <= r < |b| sign-matched to b
    friend void floor_divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    friend int compare(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

    friend BigInt gcd(BigInt a, BigInt b);
    friend BigInt pow(const BigInt& base, unsigned exp);

private:
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static void add_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static void sub_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    void trim();

    bool neg_ = false;
    std::vector<std::uint32_t> limbs_;
};

}  // namespace tmdist
