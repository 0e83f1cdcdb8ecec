#include "tmdist/farey.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "tmdist/parallel.hpp"

namespace tmdist {

namespace {

// right neighbour c/d of reduced p/q in F_n: q c - p d = 1, n - q < d <= n
void right_neighbor(const BigInt& p, const BigInt& q, const BigInt& n, BigInt& c, BigInt& d) {
    if (q == BigInt(1)) {
        d = n;
        c = p * n + BigInt(1);
        return;
    }
    // d = -inv(p) mod q, lifted to the largest value <= n
    BigInt x0(1), x1(0), a = p % q, b = q;
    if (a.is_negative()) a += q;
    while (!b.is_zero()) {  // extended Euclid: x0*p = gcd mod q
        BigInt t = a / b, r = a % b;
        a = b;
        b = r;
        BigInt nx = x0 - t * x1;
        x0 = x1;
        x1 = nx;
    }
    BigInt d0 = (-x0) % q;
    if (d0.is_negative()) d0 += q;
    d = d0 + ((n - d0) / q) * q;
    c = (p * d + BigInt(1)) / q;
}

void left_neighbor(const BigInt& p, const BigInt& q, const BigInt& n, BigInt& a, BigInt& b) {
    // mirror of right_neighbor: p b - a q = 1
    BigInt c, d;
    right_neighbor(-p, q, n, c, d);
    b = d;
    a = -c;
}

}  // namespace

Rational mediant(const Rational& left, const Rational& right) {
    if (!(left < right)) throw std::invalid_argument("mediant: requires left < right");
    return Rational(left.num() + right.num(), left.den() + right.den());
}

std::pair<Rational, Rational> farey_neighbors(const Rational& x, const BigInt& n) {
    if (n < BigInt(1)) throw std::invalid_argument("farey_neighbors: order must be positive");
    if (x.den() > n) throw std::invalid_argument("farey_neighbors: x is not in F_n");
    BigInt a, b, c, d;
    left_neighbor(x.num(), x.den(), n, a, b);
    right_neighbor(x.num(), x.den(), n, c, d);
    return {Rational(a, b), Rational(c, d)};
}

FareyApprox farey_approx(const Rational& alpha, const BigInt& order) {
    if (alpha.signum() < 0) throw std::invalid_argument("farey_approx: alpha must be >= 0");
    if (order < BigInt(1)) throw std::invalid_argument("farey_approx: order must be positive");
    const BigInt& Q = order;
    BigInt k = alpha.floor();
    Rational f = alpha.frac();
    BigInt pa, qa, pc, qc;  // bracket pa/qa <= f < pc/qc, consecutive in F_Q
    if (f.den() <= Q) {
        pa = f.num();
        qa = f.den();
        right_neighbor(pa, qa, Q, pc, qc);
    } else {
        // continued-fraction descent with semiconvergent completion
        BigInt hp(1), kp(0), hc(0), kc(1);  // c_{-1} = 1/0, c_0 = 0/1
        bool cur_below = true;
        BigInt n = f.den(), d = f.num();
        while (true) {
            BigInt a = n / d, r = n % d;
            BigInt hn = a * hc + hp, kn = a * kc + kp;
            if (kn > Q) break;
            hp = hc;
            kp = kc;
            hc = hn;
            kc = kn;
            cur_below = !cur_below;
            n = d;
            d = r;
            if (d.is_zero()) throw std::logic_error("farey_approx: descent ran past the target");
        }
        BigInt t = (Q - kp) / kc;
        BigInt hs = hp + t * hc, ks = kp + t * kc;
        if (cur_below) {
            pa = hc;
            qa = kc;
            pc = hs;
            qc = ks;
        } else {
            pa = hs;
            qa = ks;
            pc = hc;
            qc = kc;
        }
    }
    // mediant rule
    BigInt p, q;
    if (f < Rational(pa + pc, qa + qc)) {
        p = pa;
        q = qa;
    } else {
        p = pc;
        q = qc;
    }
    p += k * q;
    // |q alpha - p| < 1/Q, i.e. |q num - p den| * Q < den
    BigInt err = q * alpha.num() - p * alpha.den();
    if (!((err.is_negative() ? -err : err) * Q < alpha.den()))
        throw std::logic_error("farey_approx: dissection bound violated");
    return FareyApprox{std::move(p), std::move(q), Q};
}

FareyApprox64 farey_approx(std::int64_t num, std::int64_t den, std::int64_t order) {
    if (num < 0 || den < 1 || order < 1) throw std::invalid_argument("farey_approx: bad arguments");
    const std::int64_t Q = order;
    std::int64_t k = num / den;
    std::int64_t p0 = num % den;
    std::int64_t q0 = den;
    std::int64_t g = std::gcd(p0, q0);
    if (g > 1) {
        p0 /= g;
        q0 /= g;
    }
    std::int64_t pa, qa, pc, qc;
    if (q0 <= Q) {
        pa = p0;
        qa = q0;
        if (q0 == 1) {
            qc = Q;
            pc = p0 * Q + 1;
        } else {
            // d = -inv(p0) mod q0 lifted below Q
            std::int64_t x0 = 1, x1 = 0, a = p0, b = q0;
            while (b) {
                std::int64_t t = a / b;
                a -= t * b;
                std::swap(a, b);
                x0 -= t * x1;
                std::swap(x0, x1);
            }
            std::int64_t d0 = (-x0) % q0;
            if (d0 < 0) d0 += q0;
            qc = d0 + ((Q - d0) / q0) * q0;
            pc = (p0 * qc + 1) / q0;
        }
    } else {
        std::int64_t hp = 1, kp = 0, hc = 0, kc = 1;
        bool cur_below = true;
        std::int64_t n = q0, d = p0;
        while (true) {
            std::int64_t a = n / d, r = n % d;
            std::int64_t hn = a * hc + hp, kn = a * kc + kp;
            if (kn > Q) break;
            hp = hc;
            kp = kc;
            hc = hn;
            kc = kn;
            cur_below = !cur_below;
            n = d;
            d = r;
        }
        std::int64_t t = (Q - kp) / kc;
        std::int64_t hs = hp + t * hc, ks = kp + t * kc;
        if (cur_below) {
            pa = hc;
            qa = kc;
            pc = hs;
            qc = ks;
        } else {
            pa = hs;
            qa = ks;
            pc = hc;
            qc = kc;
        }
    }
    // f < (pa+pc)/(qa+qc)  <=>  p0 (qa+qc) < (pa+pc) q0
    std::int64_t p, q;
    if (static_cast<__int128>(p0) * (qa + qc) < static_cast<__int128>(pa + pc) * q0) {
        p = pa;
        q = qa;
    } else {
        p = pc;
        q = qc;
    }
    __int128 err = static_cast<__int128>(q) * p0 - static_cast<__int128>(p) * q0;
    if (err < 0) err = -err;
    if (!(err * Q < q0)) throw std::logic_error("farey_approx: dissection bound violated");
    return FareyApprox64{p + k * q, q};
}

FareyConstruction build_farey_construction(const Rational& alpha, int m, unsigned mu, unsigned sigma) {
    if (m < 2) throw std::invalid_argument("build_farey_construction: m must be >= 2");
    if (alpha.signum() < 0) throw std::invalid_argument("build_farey_construction: alpha must be >= 0");
    FareyConstruction fc;
    fc.m = m;
    fc.mu = mu;
    fc.sigma = sigma;
    fc.alpha = alpha;
    fc.K.resize(m);
    fc.M.resize(m);
    fc.p_frak.resize(m);

    auto shifted = [&](unsigned bits) { return alpha / Rational(BigInt::power_of_two(bits)); };

    for (int i = 1; i <= m; ++i) {
        if (i == m) {
            FareyApprox fa = farey_approx(shifted((m + 1) * mu), BigInt::power_of_two(mu + sigma));
            fc.K[m - 1] = fa.q;
            fc.M[m - 1] = fa.p;
            fc.p_frak[m - 1] = fa.p;
        } else {
            unsigned outer = (i == 1) ? 2 * mu + 2 * sigma : mu + 2 * sigma;
            FareyApprox fa = farey_approx(shifted((i + 1) * mu), BigInt::power_of_two(outer));
            Rational inner = Rational(fa.p, BigInt::power_of_two((m - i) * mu));
            FareyApprox fb = farey_approx(inner, BigInt::power_of_two(sigma));
            fc.K[i - 1] = fa.q * fb.q;
            fc.M[i - 1] = fa.p * fb.q;
            fc.p_frak[i - 1] = fb.p;
        }
    }

    // |K_1 alpha - 2^{2mu} M_1| < 2^-sigma and the shifted analogues for i >= 2
    const Rational bound = Rational(BigInt(1), BigInt::power_of_two(sigma));
    for (int i = 1; i <= m; ++i) {
        Rational lhs;
        if (i == 1) {
            lhs = Rational(fc.K[0]) * alpha - Rational(fc.M[0] * BigInt::power_of_two(2 * mu));
        } else {
            lhs = Rational(fc.K[i - 1]) * alpha / Rational(BigInt::power_of_two(i * mu)) -
                  Rational(fc.M[i - 1] * BigInt::power_of_two(mu));
        }
        if (!(abs(lhs) < bound))
            throw std::logic_error("build_farey_construction: approximation bound violated");
        if (fc.K[i - 1] < BigInt(1))
            throw std::logic_error("build_farey_construction: K_i must be positive");
    }
    return fc;
}

// F_K on [0,1] in increasing order via the next-fraction recurrence
std::vector<std::pair<std::int64_t, std::int64_t>> farey_sequence(std::int64_t K) {
    std::vector<std::pair<std::int64_t, std::int64_t>> seq;
    std::int64_t a = 0, b = 1, c = 1, d = K;
    seq.emplace_back(a, b);
    while (c <= K) {
        seq.emplace_back(c, d);
        std::int64_t k = (K + b) / d;
        std::int64_t nc = k * c - a, nd = k * d - b;
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    return seq;
}

Rational q_divisibility_measure(std::int64_t K, unsigned gamma, std::int64_t grid) {
    if (K < 1 || K > 100000 || grid < 1) throw std::invalid_argument("q_divisibility_measure: bad arguments");
    if (gamma > 62) return Rational(0);
    const std::int64_t mod = std::int64_t(1) << gamma;

    auto seq = farey_sequence(K);
    Rational total(0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        auto [p, q] = seq[i];
        if (q % mod != 0) continue;
        Rational left = (i == 0) ? Rational(0) : Rational(seq[i - 1].first + p, seq[i - 1].second + q);
        Rational right =
            (i + 1 == seq.size()) ? Rational(1) : Rational(p + seq[i + 1].first, q + seq[i + 1].second);
        total += right - left;
    }
    if (grid > 1) {
        std::int64_t cnt = 0;
        for (std::int64_t j = 0; j < grid; ++j) {
            FareyApprox64 fa = farey_approx(j, grid, K);
            if (fa.q % mod == 0) ++cnt;
        }
        Rational est(cnt, grid);
        // each dissection boundary can straddle at most one grid cell
        Rational slack = Rational(2 * static_cast<long long>(seq.size()), grid);
        if (abs(est - total) > slack)
            throw std::logic_error("q_divisibility_measure: grid cross-check failed");
    }
    return total;
}

std::int64_t spaced_points_divisibility_count(std::span<const Rational> points, const Rational& delta,
                                              std::int64_t K, unsigned gamma) {
    std::vector<Rational> fr;
    fr.reserve(points.size());
    for (const Rational& x : points) fr.push_back(x.frac());
    std::vector<Rational> sorted = fr;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i + 1] - sorted[i] < delta)
            throw std::invalid_argument("spaced_points_divisibility_count: spacing below delta");
    if (sorted.size() >= 2) {
        Rational wrap = Rational(1) - sorted.back() + sorted.front();
        if (wrap < delta) throw std::invalid_argument("spaced_points_divisibility_count: spacing below delta");
    }
    const BigInt modulus = BigInt::power_of_two(gamma);
    std::int64_t cnt = 0;
    for (const Rational& x : fr) {
        FareyApprox fa = farey_approx(x, BigInt(K));
        if ((fa.q % modulus).is_zero()) ++cnt;
    }
    return cnt;
}

namespace {

// p_frak_i along the census hot path, all int64; alpha = num/2^den_log2
bool any_p_frak_divisible(std::int64_t num, unsigned den_log2, unsigned mu, unsigned sigma,
                          unsigned gamma, int m) {
    const std::int64_t div = std::int64_t(1) << (3 * gamma);
    for (int i = 1; i <= m; ++i) {
        std::int64_t pf;
        if (i == m) {
            pf = farey_approx(num, std::int64_t(1) << ((m + 1) * mu + den_log2),
                              std::int64_t(1) << (mu + sigma))
                     .p;
        } else {
            unsigned outer = (i == 1) ? 2 * mu + 2 * sigma : mu + 2 * sigma;
            FareyApprox64 fa = farey_approx(num, std::int64_t(1) << ((i + 1) * mu + den_log2),
                                            std::int64_t(1) << outer);
            pf = farey_approx(fa.p, std::int64_t(1) << ((m - i) * mu), std::int64_t(1) << sigma).p;
        }
        if (pf % div == 0) return true;
    }
    return false;
}

}  // namespace

CensusResult exceptions_census(unsigned lambda, unsigned mu, unsigned sigma, unsigned gamma, int m,
                               CensusMode mode, unsigned grid_log2, unsigned threads) {
    if (m < 2) throw std::invalid_argument("exceptions_census: violated m >= 2");
    if (!(lambda >= (unsigned)(m + 1) * mu)) throw std::invalid_argument("exceptions_census: violated lambda >= (m+1) mu");
    if (!(gamma <= lambda - (unsigned)(m + 1) * mu)) throw std::invalid_argument("exceptions_census: violated gamma <= lambda - (m+1) mu");
    if (!(mu >= 4 * sigma)) throw std::invalid_argument("exceptions_census: violated mu >= 4 sigma");
    if (!(sigma >= gamma)) throw std::invalid_argument("exceptions_census: violated sigma >= gamma");
    if (!(gamma >= 1)) throw std::invalid_argument("exceptions_census: violated gamma >= 1");

    unsigned g = (mode == CensusMode::continuous_sampled) ? (grid_log2 ? grid_log2 : lambda + 2 * sigma + 1) : 0;
    if (std::max(lambda, (unsigned)(m + 1) * mu) + g > 60)
        throw std::invalid_argument("exceptions_census: parameters exceed the int64 fast path");

    CensusResult res{};
    res.mode = mode;
    if (mode == CensusMode::discrete) {
        res.grid_log2 = 0;
        res.total = std::uint64_t(1) << lambda;
        res.exceptional = parallel_sum(res.total, threads, [&](std::uint64_t a) -> std::uint64_t {
            return any_p_frak_divisible(static_cast<std::int64_t>(a), 0, mu, sigma, gamma, m) ? 1 : 0;
        });
        res.measure = Rational(BigInt(res.exceptional));
    } else {
        res.grid_log2 = g;
        res.total = (std::uint64_t(1) << (lambda + g)) + 1;  // alpha in [0, 2^lambda]
        res.exceptional = parallel_sum(res.total, threads, [&](std::uint64_t j) -> std::uint64_t {
            return any_p_frak_divisible(static_cast<std::int64_t>(j), g, mu, sigma, gamma, m) ? 1 : 0;
        });
        res.measure = Rational(BigInt(res.exceptional), BigInt::power_of_two(g));
    }
    return res;
}

}  // namespace tmdist
