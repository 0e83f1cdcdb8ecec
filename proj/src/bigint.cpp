#include "tmdist/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tmdist {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    neg_ = v < 0;
    std::uint64_t m = neg_ ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    if (m) limbs_.push_back(static_cast<std::uint32_t>(m));
    if (m >> 32) limbs_.push_back(static_cast<std::uint32_t>(m >> 32));
}

BigInt::BigInt(unsigned long long v) {
    if (v) limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

BigInt BigInt::power_of_two(unsigned k) {
    BigInt r;
    r.limbs_.assign(k / 32 + 1, 0);
    r.limbs_.back() = 1u << (k % 32);
    return r;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

void BigInt::add_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t s = carry + a[i] + (i < b.size() ? b[i] : 0);
        a[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) a.push_back(static_cast<std::uint32_t>(carry));
}

void BigInt::sub_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        borrow = s < 0;
        a[i] = static_cast<std::uint32_t>(s + (borrow ? static_cast<std::int64_t>(kBase) : 0));
    }
}

int compare(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
    int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
    return a.neg_ ? -c : c;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (neg_ == o.neg_) {
        add_mag(limbs_, o.limbs_);
    } else if (cmp_mag(limbs_, o.limbs_) >= 0) {
        sub_mag(limbs_, o.limbs_);
    } else {
        std::vector<std::uint32_t> tmp = o.limbs_;
        sub_mag(tmp, limbs_);
        limbs_ = std::move(tmp);
        neg_ = o.neg_;
    }
    trim();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
    BigInt t = o;
    if (!t.is_zero()) t.neg_ = !t.neg_;
    return *this += t;
}

BigInt& BigInt::operator*=(const BigInt& o) {
    if (is_zero() || o.is_zero()) {
        limbs_.clear();
        neg_ = false;
        return *this;
    }
    std::vector<std::uint32_t> out(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = limbs_[i];
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t cur = out[i + j] + carry + ai * o.limbs_[j];
            out[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + o.limbs_.size();
        while (carry) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    limbs_ = std::move(out);
    neg_ = neg_ != o.neg_;
    trim();
    return *this;
}

BigInt& BigInt::operator<<=(std::size_t k) {
    if (is_zero() || k == 0) return *this;
    std::size_t words = k / 32, bits = k % 32;
    limbs_.insert(limbs_.begin(), words, 0);
    if (bits) {
        std::uint32_t carry = 0;
        for (std::size_t i = words; i < limbs_.size(); ++i) {
            std::uint32_t nxt = limbs_[i] >> (32 - bits);
            limbs_[i] = (limbs_[i] << bits) | carry;
            carry = nxt;
        }
        if (carry) limbs_.push_back(carry);
    }
    return *this;
}

BigInt& BigInt::operator>>=(std::size_t k) {
    std::size_t words = k / 32, bits = k % 32;
    if (words >= limbs_.size()) {
        limbs_.clear();
        neg_ = false;
        return *this;
    }
    limbs_.erase(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(words));
    if (bits) {
        for (std::size_t i = 0; i + 1 < limbs_.size(); ++i)
            limbs_[i] = (limbs_[i] >> bits) | (limbs_[i + 1] << (32 - bits));
        limbs_.back() >>= bits;
    }
    trim();
    return *this;
}

std::size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return 32 * (limbs_.size() - 1) + (32 - static_cast<std::size_t>(std::countl_zero(limbs_.back())));
}

std::size_t BigInt::trailing_zero_bits() const {
    if (limbs_.empty()) return 0;
    std::size_t i = 0;
    while (limbs_[i] == 0) ++i;
    return 32 * i + static_cast<std::size_t>(std::countr_zero(limbs_[i]));
}

bool BigInt::fits_int64() const {
    if (limbs_.size() > 2) return false;
    if (limbs_.size() < 2) return true;
    std::uint64_t m = limbs_[0] | (static_cast<std::uint64_t>(limbs_[1]) << 32);
    return neg_ ? m <= (1ull << 63) : m < (1ull << 63);
}

std::int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: value does not fit in int64");
    std::uint64_t m = limbs_.empty() ? 0 : limbs_[0];
    if (limbs_.size() == 2) m |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return neg_ ? -static_cast<std::int64_t>(m - 1) - 1 : static_cast<std::int64_t>(m);
}

double BigInt::to_double() const {
    double r = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
    return neg_ ? -r : r;
}

// Schoolbook long division, Knuth algorithm D on 32-bit limbs.
void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::invalid_argument("BigInt: division by zero");
    int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
    if (c < 0) {
        r = a;
        q = BigInt();
        return;
    }
    bool qneg = a.neg_ != b.neg_, rneg = a.neg_;
    if (b.limbs_.size() == 1) {
        std::uint64_t d = b.limbs_[0], rem = 0;
        std::vector<std::uint32_t> qs(a.limbs_.size());
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | a.limbs_[i];
            qs[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        q.limbs_ = std::move(qs);
        q.neg_ = qneg;
        q.trim();
        r = BigInt(rem);
        if (rem && rneg) r.neg_ = true;
        return;
    }
    // normalize so the top divisor limb has its high bit set
    unsigned shift = static_cast<unsigned>(std::countl_zero(b.limbs_.back()));
    BigInt u = a.abs() << shift;
    BigInt v = b.abs() << shift;
    std::size_t n = v.limbs_.size(), m = u.limbs_.size() - n;
    u.limbs_.push_back(0);
    std::vector<std::uint32_t> qs(m + 1, 0);
    const std::uint64_t vtop = v.limbs_[n - 1], vsec = v.limbs_[n - 2];
    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = (static_cast<std::uint64_t>(u.limbs_[j + n]) << 32) | u.limbs_[j + n - 1];
        std::uint64_t qhat = num / vtop, rhat = num % vtop;
        while (qhat >= kBase || qhat * vsec > ((rhat << 32) | u.limbs_[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat >= kBase) break;
        }
        // multiply-subtract
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qhat * v.limbs_[i] + carry;
            carry = p >> 32;
            std::int64_t t = static_cast<std::int64_t>(u.limbs_[i + j]) - borrow -
                             static_cast<std::int64_t>(p & 0xffffffffull);
            borrow = t < 0;
            u.limbs_[i + j] = static_cast<std::uint32_t>(t + (borrow ? static_cast<std::int64_t>(kBase) : 0));
        }
        std::int64_t t = static_cast<std::int64_t>(u.limbs_[j + n]) - borrow - static_cast<std::int64_t>(carry);
        if (t < 0) {
            // qhat was one too large: add back
            --qhat;
            std::uint64_t c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s = c2 + u.limbs_[i + j] + v.limbs_[i];
                u.limbs_[i + j] = static_cast<std::uint32_t>(s);
                c2 = s >> 32;
            }
            t += static_cast<std::int64_t>(c2);
        }
        u.limbs_[j + n] = static_cast<std::uint32_t>(t);
        qs[j] = static_cast<std::uint32_t>(qhat);
    }
    u.limbs_.resize(n);
    u.trim();
    u >>= shift;
    q.limbs_ = std::move(qs);
    q.neg_ = qneg;
    q.trim();
    r = std::move(u);
    if (!r.is_zero()) r.neg_ = rneg;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
}

void floor_divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    divmod(a, b, q, r);
    if (!r.is_zero() && (r.is_negative() != b.is_negative())) {
        q -= BigInt(1);
        r += b;
    }
}

BigInt gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::size_t za = a.trailing_zero_bits(), zb = b.trailing_zero_bits();
    std::size_t shift = std::min(za, zb);
    a >>= za;
    b >>= zb;
    while (true) {
        int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) break;
        if (c < 0) std::swap(a, b);
        BigInt::sub_mag(a.limbs_, b.limbs_);
        a.trim();
        if (a.is_zero()) {
            a = b;
            break;
        }
        a >>= a.trailing_zero_bits();
    }
    return a << shift;
}

BigInt pow(const BigInt& base, unsigned exp) {
    BigInt r(1), b = base;
    while (exp) {
        if (exp & 1) r *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return r;
}

BigInt BigInt::from_decimal(std::string_view text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw std::invalid_argument("BigInt: empty decimal string");
    BigInt r;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad decimal digit");
        r *= BigInt(10);
        r += BigInt(static_cast<std::int64_t>(c - '0'));
    }
    if (neg && !r.is_zero()) r.neg_ = true;
    return r;
}

std::string BigInt::to_decimal() const {
    if (is_zero()) return "0";
    BigInt t = abs();
    std::string out;
    const BigInt chunk(static_cast<std::int64_t>(1000000000));
    while (!t.is_zero()) {
        BigInt q, r;
        divmod(t, chunk, q, r);
        std::uint64_t d = r.is_zero() ? 0 : r.limbs_[0];
        t = std::move(q);
        char buf[16];
        if (t.is_zero())
            std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(d));
        else
            std::snprintf(buf, sizeof buf, "%09llu", static_cast<unsigned long long>(d));
        out.insert(0, buf);
    }
    if (neg_) out.insert(0, "-");
    return out;
}

}  // namespace tmdist
