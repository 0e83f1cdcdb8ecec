#include "tmdist/dyadic.hpp"

#include <algorithm>
#include <cmath>

namespace tmdist {

void Dyadic::normalize() {
    if (num_.is_zero()) {
        exp_ = 0;
        return;
    }
    std::size_t tz = num_.trailing_zero_bits();
    std::size_t drop = std::min<std::size_t>(tz, exp_);
    if (drop) {
        num_ >>= drop;
        exp_ -= static_cast<unsigned>(drop);
    }
}

double Dyadic::to_double() const {
    return std::ldexp(num_.to_double(), -static_cast<int>(exp_));
}

std::string Dyadic::to_string() const {
    if (exp_ == 0) return num_.to_decimal();
    return num_.to_decimal() + "/2^" + std::to_string(exp_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned e = std::max(a.exp_, b.exp_);
    BigInt an = a.num_ << (e - a.exp_);
    BigInt bn = b.num_ << (e - b.exp_);
    return Dyadic(an + bn, e);
}

int compare(const Dyadic& a, const Dyadic& b) {
    unsigned e = std::max(a.exp_, b.exp_);
    return compare(a.num_ << (e - a.exp_), b.num_ << (e - b.exp_));
}

Dyadic pow(const Dyadic& base, unsigned e) {
    Dyadic r(1), b = base;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

}  // namespace tmdist
