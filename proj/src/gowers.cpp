#include "tmdist/gowers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "tmdist/digits.hpp"
#include "tmdist/parallel.hpp"

namespace tmdist {

OffsetFamily OffsetFamily::zero(int m) {
    return OffsetFamily{m, std::vector<int>(std::size_t(1) << m, 0)};
}

OffsetFamily OffsetFamily::cube_corner_family(int m, int j) {
    if (j < 0 || j > m + 1) throw std::invalid_argument("cube_corner_family: j out of range");
    OffsetFamily a = zero(m);
    if (j == 0 || j == m + 1) return a;
    unsigned need = (1u << j) - 1;  // eps_1..eps_j all set
    for (unsigned eps = 0; eps < (1u << m); ++eps)
        if ((eps & need) == need) a.entries[eps] = 1;
    return a;
}

long long OffsetFamily::entry_sum() const {
    long long s = 0;
    for (int v : entries) s += v;
    return s;
}

int OffsetFamily::max_abs_entry() const {
    int mx = 0;
    for (int v : entries) mx = std::max(mx, v < 0 ? -v : v);
    return mx;
}

OffsetFamily delta(const OffsetFamily& a, unsigned e) {
    OffsetFamily b{a.m, std::vector<int>(a.entries.size())};
    const unsigned high = e >> 1;
    const int e0 = static_cast<int>(e & 1u);
    for (unsigned eps = 0; eps < a.entries.size(); ++eps) {
        int v = a.entries[eps] + e0 + std::popcount(eps & high);
        // floor toward -inf, entries may be negative for user-supplied families
        b.entries[eps] = (v >= 0) ? v / 2 : -((-v + 1) / 2);
    }
    return b;
}

Dyadic edge_weight(const OffsetFamily& a, const OffsetFamily& b) {
    if (a.m != b.m) throw std::invalid_argument("edge_weight: mismatched m");
    const unsigned moves = 1u << (a.m + 1);
    std::int64_t cnt = 0;
    for (unsigned e = 0; e < moves; ++e)
        if (delta(a, e) == b) ++cnt;
    const bool neg = a.entry_sum() & 1;
    return Dyadic(BigInt(neg ? -cnt : cnt), static_cast<unsigned>(a.m + 1));
}

int GowersGraph::index_of(const OffsetFamily& a) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), a);
    if (it == vertices.end() || !(*it == a)) return -1;
    return static_cast<int>(it - vertices.begin());
}

Dyadic GowersGraph::weight(int from, int to) const {
    std::int64_t c = count[from][to];
    return Dyadic(BigInt(sign[from] < 0 ? -c : c), static_cast<unsigned>(m + 1));
}

GowersGraph build_graph(int m) {
    if (m < 2) throw std::invalid_argument("build_graph: m must be >= 2");
    if (m > 6) throw std::invalid_argument("build_graph: m too large for dense closure");
    const unsigned moves = 1u << (m + 1);

    std::vector<OffsetFamily> found{OffsetFamily::zero(m)};
    std::map<std::vector<int>, int> seen{{found[0].entries, 0}};
    std::deque<int> queue{0};
    while (!queue.empty()) {
        OffsetFamily cur = found[static_cast<std::size_t>(queue.front())];
        queue.pop_front();
        for (unsigned e = 0; e < moves; ++e) {
            OffsetFamily nb = delta(cur, e);
            if (nb.max_abs_entry() >= m + 1)
                throw std::logic_error("build_graph: entry bound violated");
            if (!seen.count(nb.entries)) {
                seen.emplace(nb.entries, static_cast<int>(found.size()));
                found.push_back(nb);
                queue.push_back(static_cast<int>(found.size()) - 1);
            }
        }
    }

    GowersGraph g;
    g.m = m;
    g.vertices = std::move(found);
    std::sort(g.vertices.begin(), g.vertices.end());
    const int n = static_cast<int>(g.vertices.size());
    g.move_target.assign(n, std::vector<int>(moves, -1));
    g.count.assign(n, std::vector<std::int64_t>(n, 0));
    g.sign.resize(n);
    for (int i = 0; i < n; ++i) {
        g.sign[i] = (g.vertices[i].entry_sum() & 1) ? -1 : 1;
        for (unsigned e = 0; e < moves; ++e) {
            int j = g.index_of(delta(g.vertices[i], e));
            if (j < 0) throw std::logic_error("build_graph: closure not closed");
            g.move_target[i][e] = j;
            g.count[i][j] += 1;
        }
        std::int64_t row = 0;
        for (int j = 0; j < n; ++j) row += g.count[i][j];
        if (row != static_cast<std::int64_t>(moves))
            throw std::logic_error("build_graph: row sum identity violated");
    }

    // strong connectivity: repeated all-zero moves reach the zero family
    const int zero_idx = g.index_of(OffsetFamily::zero(m));
    for (int i = 0; i < n; ++i) {
        int cur = i;
        int steps = 0;
        while (cur != zero_idx && steps++ < 64) cur = g.move_target[cur][0];
        if (cur != zero_idx) throw std::logic_error("build_graph: zero family unreachable");
    }
    return g;
}

Dyadic gowers_bruteforce(int m, unsigned rho, const OffsetFamily& a, unsigned threads,
                         std::uint64_t budget) {
    if (a.m != m) throw std::invalid_argument("gowers_bruteforce: mismatched m");
    const unsigned total_log2 = static_cast<unsigned>(m + 1) * rho;
    if (total_log2 >= 62 || (std::uint64_t(1) << total_log2) > budget)
        throw std::invalid_argument("gowers_bruteforce: 2^" + std::to_string(total_log2) +
                                    " terms exceed budget " + std::to_string(budget));
    if (rho == 0) return Dyadic(1);

    const std::uint64_t R = std::uint64_t(1) << rho;
    const std::uint64_t mask = R - 1;
    const unsigned corners = 1u << m;
    const std::uint64_t tuples = std::uint64_t(1) << (static_cast<unsigned>(m) * rho);

    // offset entries can be negative; lift by a multiple of 2^rho so the
    // truncated digit sum sees a nonnegative representative
    std::vector<std::uint64_t> lifted(corners);
    for (unsigned eps = 0; eps < corners; ++eps) {
        long long v = a.entries[eps];
        long long lift = ((v % static_cast<long long>(R)) + static_cast<long long>(R)) % static_cast<long long>(R);
        lifted[eps] = static_cast<std::uint64_t>(lift);
    }

    std::vector<std::int64_t> partial(R, 0);
    parallel_for(R, threads, [&](std::uint64_t n) {
        std::int64_t acc = 0;
        std::vector<std::uint64_t> r(static_cast<std::size_t>(m), 0);
        for (std::uint64_t t = 0; t < tuples; ++t) {
            // mixed-radix decode of the r-tuple
            std::uint64_t x = t;
            for (int i = 0; i < m; ++i) {
                r[static_cast<std::size_t>(i)] = x & mask;
                x >>= rho;
            }
            unsigned parity = 0;
            for (unsigned eps = 0; eps < corners; ++eps) {
                std::uint64_t dot = 0;
                for (int i = 0; i < m; ++i)
                    if (eps >> i & 1) dot += r[static_cast<std::size_t>(i)];
                parity += truncated_digit_sum(n + dot + lifted[eps], rho);
            }
            acc += (parity & 1) ? -1 : 1;
        }
        partial[n] = acc;
    });
    std::int64_t total = 0;
    for (std::int64_t v : partial) total += v;
    return Dyadic(BigInt(total), total_log2);
}

std::vector<Dyadic> recursion_values(const GowersGraph& g, unsigned rho) {
    const int n = static_cast<int>(g.vertices.size());
    const unsigned step = static_cast<unsigned>(g.m + 1);
    // common denominator 2^{(m+1) r}: integer numerators throughout
    std::vector<BigInt> cur(n, BigInt(1));
    for (unsigned r = 0; r < rho; ++r) {
        std::vector<BigInt> nxt(n);
        for (int i = 0; i < n; ++i) {
            BigInt acc;
            for (int j = 0; j < n; ++j)
                if (g.count[i][j]) acc += BigInt(g.count[i][j]) * cur[j];
            nxt[i] = g.sign[i] < 0 ? -acc : acc;
        }
        cur = std::move(nxt);
    }
    std::vector<Dyadic> out;
    out.reserve(cur.size());
    for (auto& v : cur) out.emplace_back(std::move(v), step * rho);
    return out;
}

Dyadic recursion_value(const GowersGraph& g, unsigned rho, const OffsetFamily& a) {
    int idx = g.index_of(a);
    if (idx < 0) throw std::invalid_argument("recursion_value: family is not a reachable vertex");
    return recursion_values(g, rho)[static_cast<std::size_t>(idx)];
}

DyadicMatrix path_weight_powers(const GowersGraph& g, unsigned k) {
    if (k < 1) throw std::invalid_argument("path_weight_powers: k must be >= 1");
    const int n = static_cast<int>(g.vertices.size());
    const unsigned step = static_cast<unsigned>(g.m + 1);
    DyadicMatrix M;
    M.exp = step;
    M.num.assign(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M.num[i][j] = BigInt(g.sign[i] < 0 ? -g.count[i][j] : g.count[i][j]);
    for (unsigned s = 1; s < k; ++s) {
        DyadicMatrix nxt;
        nxt.exp = M.exp + step;
        nxt.num.assign(n, std::vector<BigInt>(n));
        for (int i = 0; i < n; ++i) {
            for (int l = 0; l < n; ++l) {
                if (M.num[i][l].is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    if (!g.count[l][j]) continue;
                    std::int64_t w = g.sign[l] < 0 ? -g.count[l][j] : g.count[l][j];
                    nxt.num[i][j] += M.num[i][l] * BigInt(w);
                }
            }
        }
        M = std::move(nxt);
    }
    return M;
}

ContractionResult contraction_check(const GowersGraph& g, unsigned k_max) {
    if (k_max < 1) throw std::invalid_argument("contraction_check: k_max must be >= 1");
    const int n = static_cast<int>(g.vertices.size());
    const unsigned step = static_cast<unsigned>(g.m + 1);
    ContractionResult res;
    DyadicMatrix M = path_weight_powers(g, 1);
    for (unsigned k = 1; k <= k_max; ++k) {
        BigInt worst;
        for (int i = 0; i < n; ++i) {
            BigInt row;
            for (int j = 0; j < n; ++j) row += M.num[i][j].abs();
            if (row > worst) worst = row;
        }
        Dyadic rowmax(worst, M.exp);
        res.row_max_history.push_back(rowmax);
        if (rowmax < Dyadic(1)) {
            res.k_star = k;
            res.c_star = rowmax;
            return res;
        }
        res.c_star = rowmax;
        if (k == k_max) break;
        // extend by one step
        DyadicMatrix nxt;
        nxt.exp = M.exp + step;
        nxt.num.assign(n, std::vector<BigInt>(n));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (M.num[i][l].is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    if (!g.count[l][j]) continue;
                    std::int64_t w = g.sign[l] < 0 ? -g.count[l][j] : g.count[l][j];
                    nxt.num[i][j] += M.num[i][l] * BigInt(w);
                }
            }
        M = std::move(nxt);
    }
    return res;
}

double decay_rate(const GowersGraph& g, unsigned k_star, const Dyadic& c_star,
                  const std::vector<Dyadic>& a_rho_at_zero) {
    if (!(c_star < Dyadic(1))) throw std::invalid_argument("decay_rate: c* must be < 1");
    if (c_star.is_zero() || k_star < 1) throw std::invalid_argument("decay_rate: bad arguments");
    (void)g;
    const double log2c = std::log2(std::abs(c_star.num().to_double())) - static_cast<double>(c_star.exp());
    const double eta = -log2c / k_star;
    for (std::size_t rho = 0; rho < a_rho_at_zero.size(); ++rho) {
        Dyadic cap = pow(c_star, static_cast<unsigned>(rho / k_star));
        if (abs(a_rho_at_zero[rho]) > cap)
            throw std::logic_error("decay_rate: |A_rho(0)| exceeds the contraction envelope");
        double envelope = (1.0 / c_star.to_double()) * std::exp2(-eta * static_cast<double>(rho));
        if (abs(a_rho_at_zero[rho]).to_double() > envelope * (1 + 1e-12))
            throw std::logic_error("decay_rate: |A_rho(0)| exceeds C 2^{-rho eta}");
    }
    return eta;
}

}  // namespace tmdist
