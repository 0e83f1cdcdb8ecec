#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tmdist/dyadic.hpp"

namespace tmdist {

// Integer family indexed by the corners of the m-cube; entry(eps) with eps a
// bitmask over {0,1}^m (bit i-1 carries eps_i).
struct OffsetFamily {
    int m;
    std::vector<int> entries;  // size 2^m

    static OffsetFamily zero(int m);
    // a^{(j)}: entry 1 exactly when eps_1 = ... = eps_j = 1 (j in [0, m+1],
    // with a^{(0)} = a^{(m+1)} = 0)
    static OffsetFamily cube_corner_family(int m, int j);

    long long entry_sum() const;
    int max_abs_entry() const;
    friend bool operator==(const OffsetFamily& a, const OffsetFamily& b) {
        return a.m == b.m && a.entries == b.entries;
    }
    friend bool operator<(const OffsetFamily& a, const OffsetFamily& b) { return a.entries < b.entries; }
};

// b_eps = floor((a_eps + e_0 + sum_i eps_i e_i)/2); e packs e_0..e_m in bits 0..m
OffsetFamily delta(const OffsetFamily& a, unsigned e);

Dyadic edge_weight(const OffsetFamily& a, const OffsetFamily& b);

struct GowersGraph {
    int m;
    std::vector<OffsetFamily> vertices;            // canonical (sorted) order, zero family first
    std::vector<std::vector<int>> move_target;     // [v][e] -> vertex index of delta(v, e)
    std::vector<std::vector<std::int64_t>> count;  // #{e : delta(a,e) = b}, dense
    std::vector<int> sign;                         // (-1)^{|a|}

    int index_of(const OffsetFamily& a) const;  // -1 when absent
    Dyadic weight(int from, int to) const;
};

// reachable closure from the zero family; checks the entry bound, the
// row-sum-1 identity, and strong connectivity
GowersGraph build_graph(int m);

// direct summation of A_rho(a), exact; refuses when 2^{(m+1)rho} exceeds budget
Dyadic gowers_bruteforce(int m, unsigned rho, const OffsetFamily& a, unsigned threads = 0,
                         std::uint64_t budget = std::uint64_t(1) << 34);

// A_rho on every vertex via rho applications of the recursion, exact
std::vector<Dyadic> recursion_values(const GowersGraph& g, unsigned rho);
Dyadic recursion_value(const GowersGraph& g, unsigned rho, const OffsetFamily& a);

// w_k as a dense matrix of dyadic path weights (common exponent (m+1)k)
struct DyadicMatrix {
    unsigned exp;
    std::vector<std::vector<BigInt>> num;
    Dyadic at(int i, int j) const { return Dyadic(num[i][j], exp); }
};

DyadicMatrix path_weight_powers(const GowersGraph& g, unsigned k);

struct ContractionResult {
    std::optional<unsigned> k_star;
    Dyadic c_star;                 // max_a sum_b |w_{k*}(a,b)| at k*, or at k_max if none
    std::vector<Dyadic> row_max_history;  // max row abs sum for k = 1..
};

ContractionResult contraction_check(const GowersGraph& g, unsigned k_max);

// eta = -log2(c*)/k*; also verifies |A_rho(0)| <= c*^{floor(rho/k*)} for the
// supplied values (exact dyadic comparison)
double decay_rate(const GowersGraph& g, unsigned k_star, const Dyadic& c_star,
                  const std::vector<Dyadic>& a_rho_at_zero);

}  // namespace tmdist
