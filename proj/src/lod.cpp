#include "tmdist/lod.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "tmdist/digits.hpp"
#include "tmdist/parallel.hpp"

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

namespace tmdist {

std::uint64_t beatty_count(std::uint64_t y, std::uint64_t z, const Rational& alpha, const Rational& beta) {
    if (alpha < Rational(1)) throw std::invalid_argument("beatty_count: requires alpha >= 1");
    if (beta.signum() < 0) throw std::invalid_argument("beatty_count: requires beta >= 0");
    std::uint64_t count = 0;
    for (std::uint64_t m = y; m < z; ++m) {
        if (tm_bit(m) != 0) continue;
        Rational target = (Rational(BigInt(m)) - beta) / alpha;
        BigInt n = target.ceil();
        Rational v = Rational(n) * alpha + beta;
        if (v.floor() == BigInt(m)) {
            // alpha >= 1 makes the representation unique
            Rational left = v - alpha;
            Rational right = v + alpha;
            if (left.floor() == BigInt(m) || right.floor() == BigInt(m))
                throw std::logic_error("beatty_count: representation not unique");
            ++count;
        }
    }
    return count;
}

namespace {

struct ApAccumulator {
    std::int64_t fmax = 0, fmin = 0;      // extremes of f(y) = 2d count - y
    std::int64_t maxpos = 0, minpos = 0;  // first attaining y
    std::int64_t count = 0;
};

APWindowStat finish_ap(std::int64_t d, std::int64_t a, std::int64_t x, ApAccumulator& acc) {
    std::int64_t fend = 2 * d * acc.count - x;
    if (fend < acc.fmin) {
        acc.fmin = fend;
        acc.minpos = x;
    }
    APWindowStat st;
    st.d = d;
    st.a = a;
    st.max_dev = Rational(acc.fmax - acc.fmin, 2 * d);
    st.arg_y = std::min(acc.maxpos, acc.minpos);
    st.arg_z = std::max(acc.maxpos, acc.minpos);
    return st;
}

// f decreases by 1 per unit y and jumps up by 2d just past each n = a (mod d)
// with t(n) = 0, so max candidates sit at y in {0} u {n+1} and min candidates
// at y in {n} u {x}
inline void ap_feed(ApAccumulator& acc, std::int64_t d, std::int64_t n) {
    std::int64_t fpre = 2 * d * acc.count - n;
    if (fpre < acc.fmin) {
        acc.fmin = fpre;
        acc.minpos = n;
    }
    acc.count += 1;
    std::int64_t fpost = fpre + 2 * d - 1;
    if (fpost > acc.fmax) {
        acc.fmax = fpost;
        acc.maxpos = n + 1;
    }
}

}  // namespace

APWindowStat ap_signed_prefix_extremes(std::int64_t d, std::int64_t a, std::int64_t x) {
    if (d < 1 || a < 0 || a >= d || x < 0) throw std::invalid_argument("ap_signed_prefix_extremes: bad arguments");
    ApAccumulator acc;
    for (std::int64_t n = a; n < x; n += d)
        if (tm_bit(static_cast<std::uint64_t>(n)) == 0) ap_feed(acc, d, n);
    return finish_ap(d, a, x, acc);
}

LoDSummary lod_error_total(std::int64_t x, double theta, std::uint64_t budget, unsigned threads) {
    if (x < 1 || theta <= 0.0 || theta > 1.0) throw std::invalid_argument("lod_error_total: bad arguments");
    std::int64_t D;
    if (theta == 0.5) {
        D = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
        while ((D + 1) * (D + 1) <= x) ++D;
        while (D * D > x) --D;
    } else {
        D = static_cast<std::int64_t>(std::floor(std::pow(static_cast<long double>(x), static_cast<long double>(theta))));
    }
    D = std::max<std::int64_t>(1, D);
    const std::uint64_t est = static_cast<std::uint64_t>(x) / 2 * static_cast<std::uint64_t>(D) +
                              static_cast<std::uint64_t>(x);
    if (est > budget)
        throw BudgetExceeded("lod_error_total: projected cost " + std::to_string(est) +
                             " exceeds budget " + std::to_string(budget));

    // positions n < x with t(n) = 0, walked once per modulus
    std::vector<std::uint8_t> letters = thue_morse_letters(static_cast<std::size_t>(x));
    std::vector<std::uint32_t> zeros;
    zeros.reserve(static_cast<std::size_t>(x / 2 + 2));
    for (std::int64_t n = 0; n < x; ++n)
        if (!letters[static_cast<std::size_t>(n)]) zeros.push_back(static_cast<std::uint32_t>(n));

    LoDSummary summary;
    summary.x = x;
    summary.D = D;
    summary.theta = theta;
    summary.per_d.resize(static_cast<std::size_t>(D));

    parallel_for(static_cast<std::uint64_t>(D), threads, [&](std::uint64_t di) {
        const std::int64_t d = static_cast<std::int64_t>(di) + 1;
        std::vector<ApAccumulator> acc(static_cast<std::size_t>(d));
        std::int64_t r = 0, prev = 0;
        for (std::uint32_t n : zeros) {
            r += n - prev;
            prev = n;
            while (r >= d) r -= d;
            ap_feed(acc[static_cast<std::size_t>(r)], d, n);
        }
        std::size_t best = 0;
        std::int64_t best_dev = -1;
        std::vector<APWindowStat> stats(static_cast<std::size_t>(d));
        for (std::int64_t a = 0; a < d; ++a) {
            stats[static_cast<std::size_t>(a)] = finish_ap(d, a, x, acc[static_cast<std::size_t>(a)]);
            std::int64_t dev = acc[static_cast<std::size_t>(a)].fmax - acc[static_cast<std::size_t>(a)].fmin;
            if (dev > best_dev) {
                best_dev = dev;
                best = static_cast<std::size_t>(a);
            }
        }
        summary.per_d[di] = stats[best];
    });

    for (const APWindowStat& st : summary.per_d) summary.total += st.max_dev;
    return summary;
}

// ---------------------------------------------------------------------------
// exact max over translations of Thue-Morse correlation sums
//
// Given a weighted value multiset {(v, w)} and modulus 2^M, maximize
// |sum w chi_M((v + a) mod 2^M)| over a < 2^A, chi = (-1)^{s(.)}. Peeling the
// low bit of a splits into two half-size subproblems over floor((v+b)/2) with
// sign (-1)^{b xor v_0}; merged duplicate values cancel, and a subtree whose
// absolute weight mass cannot beat the incumbent is pruned.
// ---------------------------------------------------------------------------

namespace {

struct CorrBuf {
    std::vector<std::uint64_t> v;
    std::vector<std::int64_t> w;
    std::size_t n = 0;
};

// Both absolute-value classes ride one tree: values never reach the modulus
// boundary until three a-bits remain (entries shrink like x/2^depth while the
// modulus shrinks like 2^{L-depth}), so the mod-2^{L-depth} and mod-2^{L+1-depth}
// transforms coincide there and only the leaf evaluation distinguishes the
// classes.
class CorrelationMax {
public:
    explicit CorrelationMax(unsigned L) : L_(L), stop_(L >= 3 ? L - 3 : 0) { bufs_.resize(stop_ + 1); }

    std::int64_t run(const std::vector<std::uint64_t>& vals, const std::vector<std::int64_t>& wts,
                     std::int64_t seed_plain, std::int64_t seed_trunc) {
        best_plain_ = seed_plain;
        best_trunc_ = seed_trunc;
        CorrBuf root;
        root.v = vals;
        root.w = wts;
        root.n = vals.size();
        dfs(root, 0);
        return std::max(best_plain_, best_trunc_);
    }

    // |sum w chi((v+a) mod 2^M)| by direct masked popcount
    static std::int64_t eval_at(const std::vector<std::uint64_t>& vals, const std::vector<std::int64_t>& wts,
                                unsigned M, std::uint64_t a) {
        const std::uint64_t mask = (M >= 64) ? ~0ull : ((std::uint64_t(1) << M) - 1);
        std::int64_t s = 0;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            std::uint64_t x = (vals[i] + a) & mask;
            s += (std::popcount(x) & 1) ? -wts[i] : wts[i];
        }
        return s < 0 ? -s : s;
    }

private:
    // child for a-bit b; no wrap handling needed above the stop depth
    std::int64_t make_child(const CorrBuf& p, std::uint64_t b, CorrBuf& out) {
        out.v.resize(p.n);
        out.w.resize(p.n);
        std::uint64_t* ov = out.v.data();
        std::int64_t* ow = out.w.data();
        const std::uint64_t* pv = p.v.data();
        const std::int64_t* pw = p.w.data();
        std::size_t k = 0;
        std::int64_t mass = 0;
        ov[0] = ~std::uint64_t(0);  // sentinel; real y values stay below 2^62
        for (std::size_t i = 0; i < p.n; ++i) {
            std::uint64_t x = pv[i];
            std::uint64_t lo = x & 1;
            std::int64_t w = (lo ^ b) ? -pw[i] : pw[i];
            std::uint64_t y = (x >> 1) + (b & lo);
            std::size_t km = k - (ov[k ? k - 1 : 0] == y && k);
            std::int64_t old = (km < k) ? ow[km] : 0;
            std::int64_t acc = old + w;
            mass += (acc < 0 ? -acc : acc) - (old < 0 ? -old : old);
            ov[km] = y;
            ow[km] = acc;
            k = km + (acc != 0);
        }
        out.n = k;
        return mass;
    }

    // brute force over the remaining a-bits, both classes in one pass
    void leaf(const CorrBuf& nd, unsigned depth) {
        const unsigned abits = L_ - depth;
        const unsigned mt = L_ - depth;       // truncated class modulus bits
        const std::uint64_t mask_t = (std::uint64_t(1) << mt) - 1;
        const std::uint64_t mask_p = (std::uint64_t(2) << mt) - 1;
        for (std::uint64_t a = 0; a < (std::uint64_t(1) << abits); ++a) {
            std::int64_t st = 0, sp = 0;
            for (std::size_t i = 0; i < nd.n; ++i) {
                std::uint64_t x = nd.v[i] + a;
                st += (std::popcount(x & mask_t) & 1) ? -nd.w[i] : nd.w[i];
                sp += (std::popcount(x & mask_p) & 1) ? -nd.w[i] : nd.w[i];
            }
            if (st < 0) st = -st;
            if (sp < 0) sp = -sp;
            if (st > best_trunc_) best_trunc_ = st;
            if (sp > best_plain_) best_plain_ = sp;
        }
    }

    void dfs(const CorrBuf& nd, unsigned depth) {
        if (nd.n == 0) return;
        if (nd.n == 1) {
            std::int64_t aw = nd.w[0] < 0 ? -nd.w[0] : nd.w[0];
            if (aw > best_plain_) best_plain_ = aw;
            if (aw > best_trunc_) best_trunc_ = aw;
            return;
        }
        if (depth == stop_) {
            leaf(nd, depth);
            return;
        }
        CorrBuf& c0 = bufs_[depth][0];
        CorrBuf& c1 = bufs_[depth][1];
        std::int64_t m0 = make_child(nd, 0, c0);
        std::int64_t m1 = make_child(nd, 1, c1);
        CorrBuf* heavy = &c0;
        CorrBuf* light = &c1;
        std::int64_t mh = m0, ml = m1;
        if (m1 > m0) {
            heavy = &c1;
            light = &c0;
            std::swap(mh, ml);
        }
        if (mh > std::min(best_plain_, best_trunc_)) dfs(*heavy, depth + 1);
        if (ml > std::min(best_plain_, best_trunc_)) dfs(*light, depth + 1);
    }

    unsigned L_, stop_;
    std::int64_t best_plain_ = 0, best_trunc_ = 0;
    std::vector<std::array<CorrBuf, 2>> bufs_;
};

unsigned structured_L(std::int64_t N, std::int64_t d) {
    std::uint64_t nd = static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(d);
    unsigned L = 0;
    while ((std::uint64_t(1) << L) < nd) ++L;  // ceil(log2(N d))
    return L + 1;
}

// exact max over the structured set for xi = 0: the plain class (true signs
// over [0, 2^{L+1})) and the truncated class (signs of s_L), each maximized
// over all a0 < 2^L
std::uint64_t structured_inner_max(std::int64_t N, std::int64_t d) {
    const unsigned L = structured_L(N, d);
    if (L > 44) throw std::invalid_argument("s0_discrete: structured search space too large");
    std::vector<std::uint64_t> vals(static_cast<std::size_t>(N));
    std::vector<std::int64_t> wts(static_cast<std::size_t>(N), 1);
    for (std::int64_t n = 0; n < N; ++n)
        vals[static_cast<std::size_t>(n)] = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(d);

    // seed the incumbents: random samples plus a bit-flip hill climb per class
    std::int64_t seed_p = 0, seed_t = 0;
    std::uint64_t rng = 0x9e3779b97f4a7c15ull ^ (static_cast<std::uint64_t>(d) << 20) ^ static_cast<std::uint64_t>(N);
    const std::uint64_t amask = (std::uint64_t(1) << L) - 1;
    for (unsigned M = L; M <= L + 1; ++M) {
        std::int64_t& seed = (M == L) ? seed_t : seed_p;
        std::uint64_t best_a = 0;
        for (int s = 0; s < 32; ++s) {
            std::uint64_t a = 0;
            if (s) {
                rng += 0x9e3779b97f4a7c15ull;
                std::uint64_t z = rng;
                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
                z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
                a = (z ^ (z >> 31)) & amask;
            }
            std::int64_t v = CorrelationMax::eval_at(vals, wts, M, a);
            if (v > seed) {
                seed = v;
                best_a = a;
            }
        }
        for (int round = 0; round < 4; ++round) {
            bool improved = false;
            for (unsigned bit = 0; bit < L; ++bit) {
                std::uint64_t a = best_a ^ (std::uint64_t(1) << bit);
                std::int64_t v = CorrelationMax::eval_at(vals, wts, M, a);
                if (v > seed) {
                    seed = v;
                    best_a = a;
                    improved = true;
                }
            }
            if (!improved) break;
        }
    }
    CorrelationMax solver(L);
    return static_cast<std::uint64_t>(solver.run(vals, wts, seed_p, seed_t));
}

std::uint64_t bruteforce_inner_max(std::int64_t N, std::int64_t d, std::uint64_t a_cap) {
    std::int64_t best = 0;
    for (std::uint64_t a = 0; a < a_cap; ++a) {
        std::int64_t s = 0;
        for (std::int64_t n = 0; n < N; ++n)
            s += tm_sign(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(d) + a);
        best = std::max(best, s < 0 ? -s : s);
    }
    return static_cast<std::uint64_t>(best);
}

// complex weights for xi != 0 share the same recursion
struct CorrBufC {
    std::vector<std::uint64_t> v;
    std::vector<std::complex<double>> w;
    std::size_t n = 0;
};

class CorrelationMaxC {
public:
    CorrelationMaxC(unsigned M, unsigned A) : M_(M), A_(A) { bufs_.resize(A_ + 1); }

    double run(const std::vector<std::uint64_t>& vals, const std::vector<std::complex<double>>& wts,
               double seed_best) {
        best_ = seed_best;
        CorrBufC root;
        root.v = vals;
        root.w = wts;
        root.n = vals.size();
        dfs(root, 0);
        return best_;
    }

private:
    double make_child(const CorrBufC& p, unsigned Mr, int b, CorrBufC& out) {
        out.n = 0;
        out.v.resize(p.n + 1);
        out.w.resize(p.n + 1);
        std::size_t cnt = p.n;
        const std::uint64_t wrapval = std::uint64_t(1) << (Mr - 1);
        if (b == 1 && cnt && p.v[cnt - 1] == wrapval * 2 - 1) {
            out.v[0] = 0;
            out.w[0] = p.w[cnt - 1];
            out.n = 1;
            --cnt;
        }
        for (std::size_t i = 0; i < cnt; ++i) {
            std::uint64_t x = p.v[i];
            std::complex<double> w = ((x ^ static_cast<std::uint64_t>(b)) & 1) ? -p.w[i] : p.w[i];
            std::uint64_t y = (x >> 1) + (static_cast<std::uint64_t>(b) & x & 1);
            if (out.n && out.v[out.n - 1] == y) {
                out.w[out.n - 1] += w;
            } else {
                out.v[out.n] = y;
                out.w[out.n] = w;
                ++out.n;
            }
        }
        double mass = 0;
        for (std::size_t i = 0; i < out.n; ++i) mass += std::abs(out.w[i]);
        return mass;
    }

    void dfs(const CorrBufC& nd, unsigned depth) {
        if (nd.n == 0) return;
        if (nd.n == 1) {
            best_ = std::max(best_, std::abs(nd.w[0]));
            return;
        }
        if (depth == A_) {
            std::complex<double> s(0, 0);
            for (std::size_t i = 0; i < nd.n; ++i)
                s += (std::popcount(nd.v[i]) & 1) ? -nd.w[i] : nd.w[i];
            best_ = std::max(best_, std::abs(s));
            return;
        }
        const unsigned Mr = M_ - depth;
        CorrBufC& c0 = bufs_[depth][0];
        CorrBufC& c1 = bufs_[depth][1];
        double m0 = make_child(nd, Mr, 0, c0);
        double m1 = make_child(nd, Mr, 1, c1);
        if (m0 >= m1) {
            if (m0 > best_) dfs(c0, depth + 1);
            if (m1 > best_) dfs(c1, depth + 1);
        } else {
            if (m1 > best_) dfs(c1, depth + 1);
            if (m0 > best_) dfs(c0, depth + 1);
        }
    }

    unsigned M_, A_;
    double best_ = 0;
    std::vector<std::array<CorrBufC, 2>> bufs_;
};

double structured_inner_max_xi(std::int64_t N, std::int64_t d, double xi) {
    const unsigned L = structured_L(N, d);
    if (L > 44) throw std::invalid_argument("s0_discrete: structured search space too large");
    std::vector<std::uint64_t> vals(static_cast<std::size_t>(N));
    std::vector<std::complex<double>> wts(static_cast<std::size_t>(N));
    for (std::int64_t n = 0; n < N; ++n) {
        vals[static_cast<std::size_t>(n)] = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(d);
        double ph = kTwoPi * xi * static_cast<double>(n);
        wts[static_cast<std::size_t>(n)] = std::complex<double>(std::cos(ph), std::sin(ph));
    }
    double best = 0;
    for (unsigned M = L; M <= L + 1; ++M) {
        CorrelationMaxC solver(M, L);
        best = std::max(best, solver.run(vals, wts, 0.0));
    }
    return best;
}

double bruteforce_inner_max_xi(std::int64_t N, std::int64_t d, double xi, std::uint64_t a_cap) {
    double best = 0;
    for (std::uint64_t a = 0; a < a_cap; ++a) {
        std::complex<double> s(0, 0);
        double err_re = 0, err_im = 0;  // compensated accumulation
        for (std::int64_t n = 0; n < N; ++n) {
            double ph = kTwoPi * xi * static_cast<double>(n);
            std::complex<double> term(std::cos(ph), std::sin(ph));
            if (tm_sign(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(d) + a) < 0) term = -term;
            double yr = term.real() - err_re;
            double tr = s.real() + yr;
            err_re = (tr - s.real()) - yr;
            double yi = term.imag() - err_im;
            double ti = s.imag() + yi;
            err_im = (ti - s.imag()) - yi;
            s = std::complex<double>(tr, ti);
        }
        best = std::max(best, std::abs(s));
    }
    return best;
}

}  // namespace

std::uint64_t s0_inner_max(std::int64_t N, std::int64_t d) { return structured_inner_max(N, d); }

std::uint64_t s0_inner_bruteforce(std::int64_t N, std::int64_t d, std::uint64_t a_cap) {
    return bruteforce_inner_max(N, d, a_cap);
}

S0Result s0_discrete(std::int64_t N, std::int64_t d_lo, std::int64_t d_hi, double xi,
                     S0Strategy strategy, unsigned threads) {
    if (N < 1 || d_lo < 1 || d_lo > d_hi) throw std::invalid_argument("s0_discrete: bad arguments");
    const std::uint64_t nd = static_cast<std::uint64_t>(d_hi - d_lo);
    S0Result res;
    res.lower_bound = strategy.kind == S0Strategy::exhaustive_capped;
    if (xi == 0.0) {
        std::vector<std::uint64_t> terms(nd);
        // expensive moduli first for better tail balance
        parallel_for(nd, threads, [&](std::uint64_t i) {
            std::uint64_t j = nd - 1 - i;
            std::int64_t d = d_lo + static_cast<std::int64_t>(j);
            terms[j] = (strategy.kind == S0Strategy::structured)
                           ? structured_inner_max(N, d)
                           : bruteforce_inner_max(N, d, strategy.cap);
        });
        BigInt total;
        for (std::uint64_t t : terms) total += BigInt(t);
        res.value = Rational(total);
        res.value_d = res.value.to_double();
        res.exact = true;
    } else {
        std::vector<double> terms(nd);
        parallel_for(nd, threads, [&](std::uint64_t i) {
            std::int64_t d = d_lo + static_cast<std::int64_t>(i);
            terms[i] = (strategy.kind == S0Strategy::structured)
                           ? structured_inner_max_xi(N, d, xi)
                           : bruteforce_inner_max_xi(N, d, xi, strategy.cap);
        });
        double total = 0;
        for (double t : terms) total += t;
        res.value = Rational(0);
        res.value_d = total;
        res.exact = false;
    }
    return res;
}

// ---------------------------------------------------------------------------

namespace {

// |sum_{n<N} tm_sign(floor((n p + b)/q))| with everything in int64
std::int64_t beatty_inner_abs(std::int64_t N, std::int64_t p, std::int64_t b, std::int64_t q) {
    std::int64_t s = 0;
    std::int64_t num = b;
    for (std::int64_t n = 0; n < N; ++n, num += p)
        s += tm_sign(static_cast<std::uint64_t>(num / q));
    return s < 0 ? -s : s;
}

}  // namespace

S0BeattyResult s0_beatty(std::int64_t N, const Rational& D, double xi, std::int64_t alpha_grid,
                         BetaStrategy beta) {
    if (N < 1 || alpha_grid < 1 || D < Rational(1))
        throw std::invalid_argument("s0_beatty: bad arguments");
    if (xi != 0.0) throw std::invalid_argument("s0_beatty: only xi = 0 is supported");

    BigInt total;  // sum over nodes of the beta-sup (integers for xi = 0)
    for (std::int64_t j = 0; j < alpha_grid; ++j) {
        // midpoint node alpha_j = D (2G + 2j + 1) / (2G)
        Rational alpha = D * Rational(2 * alpha_grid + 2 * j + 1, 2 * alpha_grid);
        if (!alpha.num().fits_int64() || !alpha.den().fits_int64())
            throw std::invalid_argument("s0_beatty: node does not fit the integer fast path");
        const std::int64_t p = alpha.num().to_int64();
        const std::int64_t q = alpha.den().to_int64();
        const std::int64_t lim = std::int64_t(1) << 31;
        if (p >= lim || q >= lim || N >= lim || beta.grid_size >= lim)
            throw std::invalid_argument("s0_beatty: node too large for the integer fast path");

        std::int64_t best = 0;
        if (beta.kind == BetaStrategy::breakpoints) {
            // term n jumps where n alpha + beta crosses an integer, i.e. at
            // beta = (-n alpha) mod 1: numerators (-n p) mod q over q
            std::vector<std::int64_t> cands;
            cands.reserve(static_cast<std::size_t>(std::min<std::int64_t>(N, q)) + 1);
            cands.push_back(0);
            for (std::int64_t n = 0; n < N; ++n) {
                std::int64_t k = (-(n % q) * (p % q)) % q;
                if (k < 0) k += q;
                cands.push_back(k);
            }
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            for (std::int64_t k : cands) best = std::max(best, beatty_inner_abs(N, p, k, q));
        } else {
            for (std::int64_t g = 0; g < beta.grid_size; ++g) {
                // beta = g / grid scaled onto denominator q: floor((n p + gq/grid)/q)
                // evaluate exactly over the common denominator q * grid
                std::int64_t P = p * beta.grid_size, B = g * q, Q = q * beta.grid_size;
                std::int64_t s = 0, num = B;
                for (std::int64_t n = 0; n < N; ++n, num += P)
                    s += tm_sign(static_cast<std::uint64_t>(num / Q));
                best = std::max(best, s < 0 ? -s : s);
            }
        }
        total += BigInt(best);
    }
    S0BeattyResult out;
    out.value = Rational(total) * D / Rational(BigInt(alpha_grid));
    out.value_d = out.value.to_double();
    out.exact = beta.kind == BetaStrategy::breakpoints;
    out.strategy = beta.kind == BetaStrategy::breakpoints ? "breakpoints" : "grid";
    return out;
}

PSExperiment ps_frequency(const Rational& c, std::uint64_t N) {
    if (!(c > Rational(1) && c < Rational(2))) throw std::invalid_argument("ps_frequency: need 1 < c < 2");
    if (N < 1) throw std::invalid_argument("ps_frequency: N must be positive");
    if (!c.num().fits_int64() || c.num().to_int64() > 64)
        throw std::invalid_argument("ps_frequency: exponent numerator too large");
    const unsigned p = static_cast<unsigned>(c.num().to_int64());
    const unsigned q = static_cast<unsigned>(c.den().to_int64());
    const long double cf = static_cast<long double>(p) / q;

    std::uint64_t count0 = parallel_sum(N, 0, [&](std::uint64_t n) -> std::uint64_t {
        if (n == 0) return 1;  // floor(0^c) = 0, t(0) = 0
        // exact floor(n^{p/q}): integer q-th root of n^p, float seed + fix-up
        BigInt X = pow(BigInt(n), p);
        std::int64_t r = static_cast<std::int64_t>(std::floor(std::pow(static_cast<long double>(n), cf)));
        if (r < 0) r = 0;
        while (pow(BigInt(r + 1), q) <= X) ++r;
        while (r > 0 && pow(BigInt(r), q) > X) --r;
        return tm_bit(static_cast<std::uint64_t>(r)) == 0 ? 1 : 0;
    });

    PSExperiment out;
    out.c = c;
    out.N = N;
    out.freq0 = Rational(BigInt(count0), BigInt(N));
    out.deviation = abs(out.freq0 - Rational(1, 2));
    out.excluded = 0;
    return out;
}

SlopeFit slope_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw std::invalid_argument("slope_fit: need at least 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    for (const auto& [x, y] : points) {
        if (x <= 0 || y <= 0) throw std::invalid_argument("slope_fit: points must be positive");
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double var = sxx - sx * sx / n;
    if (var == 0) throw std::invalid_argument("slope_fit: degenerate abscissas");
    double slope = (sxy - sx * sy / n) / var;
    double intercept = (sy - slope * sx) / n;
    double rss = 0;
    for (const auto& [x, y] : points) {
        double r = std::log(y) - (intercept + slope * std::log(x));
        rss += r * r;
    }
    return SlopeFit{slope, intercept, rss};
}

}  // namespace tmdist
