#include "tmdist/metrics.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "tmdist/digits.hpp"

namespace tmdist {

namespace {

// max_j A_j - min_i B_i over the sorted residue multiset, where
// A_j = S_j/N - v_j and B_i = S_{i-1}/N - v_i. Closed arcs [v_i, v_j]
// realize A_j - B_i as count/N - length (wrapping included), and open
// arcs realize the mirrored deficit with the same extreme value.
Rational scan_discrepancy(const std::vector<std::pair<std::int64_t, std::int64_t>>& val_cnt,
                          std::int64_t N, std::int64_t q) {
    if (N * static_cast<double>(q) > 4.6e18) throw std::invalid_argument("discrepancy: N*q too large");
    std::int64_t best_a = INT64_MIN, min_b = INT64_MAX;
    std::int64_t acc = 0;
    std::int64_t best = INT64_MIN;
    for (const auto& [k, c] : val_cnt) {
        std::int64_t b = acc * q - k * N;  // B_i * Nq
        min_b = std::min(min_b, b);
        acc += c;
        std::int64_t a = acc * q - k * N;  // A_j * Nq
        best_a = std::max(best_a, a);
        best = std::max(best, best_a - min_b);
    }
    return Rational(best, N * q);
}

}  // namespace

Rational discrepancy(const Rational& alpha, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("discrepancy: N must be positive");
    if (!alpha.den().fits_int64() || !alpha.num().fits_int64())
        throw std::invalid_argument("discrepancy: alpha too large for the integer path");
    const std::int64_t q = alpha.den().to_int64();
    std::int64_t p = alpha.num().to_int64() % q;
    if (p < 0) p += q;

    std::vector<std::pair<std::int64_t, std::int64_t>> val_cnt;
    if (N >= q) {
        // {np mod q} cycles with period q: base multiplicity plus one for
        // the first N mod q residues of the cycle
        std::int64_t base = N / q, extra = N % q;
        std::vector<std::int64_t> cnt(q, base);
        std::int64_t r = 0;
        for (std::int64_t n = 0; n < extra; ++n) {
            cnt[r] += 1;
            r += p;
            if (r >= q) r -= q;
        }
        val_cnt.reserve(q);
        for (std::int64_t k = 0; k < q; ++k)
            if (cnt[k]) val_cnt.emplace_back(k, cnt[k]);
    } else {
        std::vector<std::int64_t> res(N);
        std::int64_t r = 0;
        for (std::int64_t n = 0; n < N; ++n) {
            res[n] = r;
            r += p;
            if (r >= q) r -= q;
        }
        std::sort(res.begin(), res.end());
        for (std::int64_t v : res) {
            if (!val_cnt.empty() && val_cnt.back().first == v)
                val_cnt.back().second += 1;
            else
                val_cnt.emplace_back(v, 1);
        }
    }
    return scan_discrepancy(val_cnt, N, q);
}

Rational discrepancy_of_points(const PointSet& ps) {
    const std::int64_t N = ps.size();
    if (N < 1) throw std::invalid_argument("discrepancy_of_points: empty set");
    std::vector<Rational> pts;
    pts.reserve(ps.points.size());
    for (const Rational& x : ps.points) {
        if (x.signum() < 0 || x >= Rational(1))
            throw std::invalid_argument("discrepancy_of_points: residue outside [0,1)");
        pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    Rational best_a, min_b, best;
    bool init = false;
    std::int64_t acc = 0;
    std::size_t i = 0;
    while (i < pts.size()) {
        std::size_t j = i;
        while (j < pts.size() && pts[j] == pts[i]) ++j;
        Rational b = Rational(acc, N) - pts[i];
        acc += static_cast<std::int64_t>(j - i);
        Rational a = Rational(acc, N) - pts[i];
        if (!init) {
            best_a = a;
            min_b = b;
            best = a - b;
            init = true;
        } else {
            if (a > best_a) best_a = a;
            if (b < min_b) min_b = b;
            if (best_a - min_b > best) best = best_a - min_b;
        }
        i = j;
    }
    return best;
}

BoxCount box_count(const BoxQuery& qr) {
    if (qr.j_lo > qr.j_hi || qr.j_lo < 0) throw std::invalid_argument("box_count: bad interval");
    if (qr.t < 0 || qr.t >= qr.T || qr.k < 0 || qr.k >= qr.K)
        throw std::invalid_argument("box_count: need 0 <= t < T and 0 <= k < K");
    const BigInt K(qr.k), Kmod(qr.K);
    const Rational lo(qr.t, qr.T), hi(qr.t + 1, qr.T);
    std::int64_t count = 0;
    Rational v = Rational(qr.j_lo) * qr.alpha + qr.beta;
    for (std::int64_t n = qr.j_lo; n < qr.j_hi; ++n, v += qr.alpha) {
        BigInt fl = v.floor();
        Rational f = v - Rational(fl);
        if (f >= lo && f < hi) {
            BigInt r = fl % Kmod;
            if (r.is_negative()) r += Kmod;
            if (r == K) ++count;
        }
    }
    const std::int64_t N = qr.j_hi - qr.j_lo;
    Rational expected = Rational(N) / Rational(qr.K * qr.T);
    Rational residual = abs(Rational(count) - expected);
    return BoxCount{count, expected, residual};
}

std::int64_t carry_census(std::int64_t i_lo, std::int64_t i_hi, std::uint64_t r, const Rational& alpha,
                          const Rational& beta, unsigned lambda) {
    if (i_lo > i_hi || i_lo < 0) throw std::invalid_argument("carry_census: bad interval");
    if (alpha.signum() <= 0 || beta.signum() < 0)
        throw std::invalid_argument("carry_census: need alpha > 0, beta >= 0");
    const std::int64_t N = i_hi - i_lo;
    std::int64_t count = 0;
    Rational v = Rational(i_lo) * alpha + beta;
    Rational vr = Rational(i_lo + static_cast<std::int64_t>(r)) * alpha + beta;
    for (std::int64_t n = i_lo; n < i_hi; ++n, v += alpha, vr += alpha) {
        std::uint64_t a = static_cast<std::uint64_t>(v.floor().to_int64());
        std::uint64_t b = static_cast<std::uint64_t>(vr.floor().to_int64());
        int full = static_cast<int>(sum_of_digits(b)) - static_cast<int>(sum_of_digits(a));
        int trunc = static_cast<int>(truncated_digit_sum(b, lambda)) - static_cast<int>(truncated_digit_sum(a, lambda));
        if (full != trunc) ++count;
    }
    Rational bound = Rational(static_cast<long long>(r)) *
                     (Rational(N) * alpha / Rational(BigInt::power_of_two(lambda)) + Rational(2));
    if (Rational(count) > bound) throw std::logic_error("carry_census: proven bound violated");
    return count;
}

VdcResult vdc_check(std::span<const std::complex<double>> z, std::int64_t K, std::int64_t R,
                    double rel_tol) {
    if (K < 1 || R < 1) throw std::invalid_argument("vdc_check: K and R must be positive");
    const std::int64_t N = static_cast<std::int64_t>(z.size());
    std::complex<double> total(0, 0);
    for (const auto& v : z) total += v;
    double lhs = std::norm(total);
    double rhs = 0;
    for (std::int64_t r = -(R - 1); r < R; ++r) {
        std::complex<double> corr(0, 0);
        for (std::int64_t n = 0; n < N; ++n) {
            std::int64_t ns = n + K * r;
            if (ns >= 0 && ns < N) corr += z[ns] * std::conj(z[n]);
        }
        rhs += (1.0 - static_cast<double>(r < 0 ? -r : r) / R) * corr.real();
    }
    rhs *= static_cast<double>(N + K * (R - 1)) / R;
    bool ok = lhs <= rhs + rel_tol * std::max({1.0, lhs, rhs});
    return VdcResult{lhs, rhs, ok};
}

VdcExactResult vdc_check_exact(std::span<const RationalComplex> z, std::int64_t K, std::int64_t R) {
    if (K < 1 || R < 1) throw std::invalid_argument("vdc_check_exact: K and R must be positive");
    const std::int64_t N = static_cast<std::int64_t>(z.size());
    Rational sre, sim;
    for (const auto& v : z) {
        sre += v.re;
        sim += v.im;
    }
    Rational lhs = sre * sre + sim * sim;
    Rational rhs;
    for (std::int64_t r = -(R - 1); r < R; ++r) {
        Rational cre;
        for (std::int64_t n = 0; n < N; ++n) {
            std::int64_t ns = n + K * r;
            if (ns >= 0 && ns < N) cre += z[ns].re * z[n].re + z[ns].im * z[n].im;
        }
        rhs += (Rational(1) - Rational(r < 0 ? -r : r, R)) * cre;
    }
    rhs *= Rational(N + K * (R - 1), R);
    return VdcExactResult{lhs, rhs, lhs <= rhs};
}

Rational mean_discrepancy_sum(unsigned mu, std::int64_t N, MeanMode mode, std::int64_t grid) {
    if (N < 1) throw std::invalid_argument("mean_discrepancy_sum: N must be positive");
    if (mode == MeanMode::discrete) {
        Rational total;
        const std::int64_t den = std::int64_t(1) << mu;
        for (std::int64_t d = 0; d < den; ++d) total += discrepancy(Rational(d, den), N);
        return total;
    }
    if (grid < 1) grid = 256;
    Rational total;
    for (std::int64_t j = 0; j < grid; ++j) total += discrepancy(Rational(2 * j + 1, 2 * grid), N);
    return total / Rational(grid);
}

}  // namespace tmdist
