#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "tmdist/rational.hpp"

namespace tmdist {

// Sum of base-q digits of n; base 2 is hardware popcount.
std::uint32_t sum_of_digits(std::uint64_t n, unsigned base = 2);

struct DigitKernel {
    unsigned base;
    explicit DigitKernel(unsigned b = 2);
    std::uint32_t sum(std::uint64_t n) const { return sum_of_digits(n, base); }
};

struct TruncationWindow {
    unsigned mu;
    unsigned lambda;
    TruncationWindow(unsigned mu_, unsigned lambda_);
};

// s_lambda(n) = s(n mod 2^lambda); 2^lambda-periodic
inline std::uint32_t truncated_digit_sum(std::uint64_t n, unsigned lambda) {
    if (lambda >= 64) return static_cast<std::uint32_t>(std::popcount(n));
    return static_cast<std::uint32_t>(std::popcount(n & ((lambda == 0) ? 0ull : (~0ull >> (64 - lambda)))));
}

// s_{mu,lambda}(n) = s_lambda(n) - s_mu(n), always >= 0
inline std::uint32_t twofold_digit_sum(std::uint64_t n, const TruncationWindow& w) {
    return truncated_digit_sum(n, w.lambda) - truncated_digit_sum(n, w.mu);
}

// (-1)^{s(n)}; +1 exactly when the Thue-Morse letter at n is 0
inline int tm_sign(std::uint64_t n) {
    return (std::popcount(n) & 1) ? -1 : 1;
}

// Thue-Morse letter t(n) as 0/1
inline unsigned tm_bit(std::uint64_t n) {
    return static_cast<unsigned>(std::popcount(n)) & 1u;
}

// t(0..count-1) built by the doubling rule t(n) = t(n - 2^k) xor 1,
// one byte per letter (fast sequential scans)
std::vector<std::uint8_t> thue_morse_letters(std::size_t count);

// --- nearest integer <x>, distance ||x||, fractional part {x} ---

inline BigInt nearest_integer(const Rational& x) { return x.nearest(); }
inline Rational dist_to_integer(const Rational& x) { return x.dist_to_integer(); }
inline Rational frac(const Rational& x) { return x.frac(); }

long long nearest_integer(double x);
double dist_to_integer(double x);
double frac(double x);

// One flag per item of the elementary fractional-part facts; an item whose
// hypothesis fails is vacuously true.
struct FractionalPartFacts {
    bool floor_splits;      // ||a||<eps, ||b||>=eps  =>  floor(a+b) = <a> + floor(b)
    bool norm_subadditive;  // ||n a|| <= n ||a||
    bool nearest_scales;    // ||a||<eps, 2n eps<1    =>  <n a> = n <a>
    bool all() const { return floor_splits && norm_subadditive && nearest_scales; }
};

FractionalPartFacts fractional_part_facts_check(const Rational& a, const Rational& b,
                                                std::uint64_t n, const Rational& eps);

}  // namespace tmdist
