#include "tmdist/digits.hpp"

#include <cmath>
#include <stdexcept>

namespace tmdist {

DigitKernel::DigitKernel(unsigned b) : base(b) {
    if (base < 2) throw std::invalid_argument("DigitKernel: base must be >= 2");
}

TruncationWindow::TruncationWindow(unsigned mu_, unsigned lambda_) : mu(mu_), lambda(lambda_) {
    if (mu > lambda) throw std::invalid_argument("TruncationWindow: requires mu <= lambda");
}

std::uint32_t sum_of_digits(std::uint64_t n, unsigned base) {
    if (base < 2) throw std::invalid_argument("sum_of_digits: base must be >= 2");
    if (base == 2) return static_cast<std::uint32_t>(std::popcount(n));
    std::uint32_t s = 0;
    while (n) {
        s += static_cast<std::uint32_t>(n % base);
        n /= base;
    }
    return s;
}

std::vector<std::uint8_t> thue_morse_letters(std::size_t count) {
    std::vector<std::uint8_t> t(count);
    if (count == 0) return t;
    t[0] = 0;
    std::size_t filled = 1;
    while (filled < count) {
        std::size_t block = std::min(filled, count - filled);
        for (std::size_t i = 0; i < block; ++i) t[filled + i] = t[i] ^ 1u;
        filled += block;
    }
    return t;
}

long long nearest_integer(double x) {
    return static_cast<long long>(std::floor(x + 0.5));
}

double dist_to_integer(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

double frac(double x) {
    return x - std::floor(x);
}

FractionalPartFacts fractional_part_facts_check(const Rational& a, const Rational& b,
                                                std::uint64_t n, const Rational& eps) {
    FractionalPartFacts out{true, true, true};
    const Rational na = Rational(BigInt(n)) * a;

    if (a.dist_to_integer() < eps && b.dist_to_integer() >= eps)
        out.floor_splits = (a + b).floor() == a.nearest() + b.floor();

    out.norm_subadditive = na.dist_to_integer() <= Rational(BigInt(n)) * a.dist_to_integer();

    if (a.dist_to_integer() < eps && Rational(2) * Rational(BigInt(n)) * eps < Rational(1))
        out.nearest_scales = na.nearest() == BigInt(n) * a.nearest();

    return out;
}

}  // namespace tmdist
