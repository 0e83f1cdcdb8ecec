#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tmdist/rational.hpp"

namespace tmdist {

struct PointSet {
    std::vector<Rational> points;  // residues in [0,1)
    std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
};

// Exact extreme discrepancy of {n alpha mod 1 : 0 <= n < N}: the sup of
// |count/N - length| over all positioned arcs of the torus. The sup is
// attained in the limit at arcs whose endpoints are occupied residues,
// closed arcs maximizing the excess and open arcs the deficit, so a single
// sorted scan finds it exactly. Result is in [1/N, 1].
Rational discrepancy(const Rational& alpha, std::int64_t N);

// same maximization over an arbitrary residue multiset
Rational discrepancy_of_points(const PointSet& ps);

struct BoxQuery {
    std::int64_t j_lo, j_hi;  // J = [j_lo, j_hi)
    Rational alpha, beta;
    std::int64_t t, T, k, K;
};

struct BoxCount {
    std::int64_t count;
    Rational expected;  // N/(K T)
    Rational residual;  // |count - N/(K T)|
};

// #{n in J : t/T <= {n alpha + beta} < (t+1)/T, floor(n alpha + beta) = k mod K}
BoxCount box_count(const BoxQuery& q);

// #{n in I : s - s_lambda differences disagree between n+r and n};
// checks the proven ceiling r (N alpha / 2^lambda + 2) and throws if exceeded
std::int64_t carry_census(std::int64_t i_lo, std::int64_t i_hi, std::uint64_t r, const Rational& alpha,
                          const Rational& beta, unsigned lambda);

struct VdcResult {
    double lhs;
    double rhs;
    bool ok;
};

// both sides of the generalized van der Corput inequality
VdcResult vdc_check(std::span<const std::complex<double>> z, std::int64_t K, std::int64_t R,
                    double rel_tol = 1e-9);

struct RationalComplex {
    Rational re, im;
};

struct VdcExactResult {
    Rational lhs;
    Rational rhs;
    bool ok;
};

VdcExactResult vdc_check_exact(std::span<const RationalComplex> z, std::int64_t K, std::int64_t R);

enum class MeanMode { discrete, continuous_sampled };

// discrete: sum_{d<2^mu} D_N(d/2^mu) exactly; continuous: midpoint-rule
// estimate of the integral of D_N over [0,1] on `grid` nodes
Rational mean_discrepancy_sum(unsigned mu, std::int64_t N, MeanMode mode, std::int64_t grid = 0);

}  // namespace tmdist
