#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tmdist/rational.hpp"

namespace tmdist {

// p_Q(alpha)/q_Q(alpha) assigned by the Farey dissection of order Q:
// bracket alpha by consecutive a/b <= alpha < c/d in F_Q, then pick the
// endpoint on alpha's side of the mediant. Satisfies |q alpha - p| < 1/Q.
struct FareyApprox {
    BigInt p;
    BigInt q;
    BigInt order;
    Rational value() const { return Rational(p, q); }
};

struct FareyApprox64 {
    std::int64_t p;
    std::int64_t q;
};

FareyApprox farey_approx(const Rational& alpha, const BigInt& order);

// fast path: alpha = num/den with num >= 0, den >= 1; all intermediates
// are bounded by max(num, den) so plain int64 arithmetic suffices
FareyApprox64 farey_approx(std::int64_t num, std::int64_t den, std::int64_t order);

Rational mediant(const Rational& left, const Rational& right);

// left/right neighbours of x in F_n; requires den(x) <= n
std::pair<Rational, Rational> farey_neighbors(const Rational& x, const BigInt& n);

// K_i, M_i, p_frak_i of the digit-cutting construction, all exact.
// The construction indexes i = 1..m; vectors are 0-based (entry i-1).
struct FareyConstruction {
    int m;
    unsigned mu;
    unsigned sigma;
    Rational alpha;
    std::vector<BigInt> K;
    std::vector<BigInt> M;
    std::vector<BigInt> p_frak;
};

FareyConstruction build_farey_construction(const Rational& alpha, int m, unsigned mu, unsigned sigma);

// exact total length of order-K dissection intervals around p/q with 2^gamma | q,
// over [0,1]; grid > 1 additionally cross-checks against a grid count
Rational q_divisibility_measure(std::int64_t K, unsigned gamma, std::int64_t grid = 1);

// number of points with 2^gamma | q_K(x_i); requires pairwise torus spacing >= delta
std::int64_t spaced_points_divisibility_count(std::span<const Rational> points, const Rational& delta,
                                              std::int64_t K, unsigned gamma);

enum class CensusMode { discrete, continuous_sampled };

struct CensusResult {
    std::uint64_t exceptional;   // #{alpha : 2^{3gamma} | p_frak_i for some i}
    std::uint64_t total;         // number of alpha values examined
    Rational measure;            // count (discrete) or count/2^grid_log2 (continuous)
    CensusMode mode;
    unsigned grid_log2;          // continuous mode: alpha step is 2^-grid_log2
};

// grid_log2 = 0 selects the default step 2^-(lambda+2 sigma+1)
CensusResult exceptions_census(unsigned lambda, unsigned mu, unsigned sigma, unsigned gamma, int m,
                               CensusMode mode, unsigned grid_log2 = 0, unsigned threads = 0);

}  // namespace tmdist
