#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tmdist/rational.hpp"

namespace tmdist {

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// #{m in [y,z) : t(m) = 0 and m = floor(n alpha + beta) for some integer n};
// membership is decided per m by the unique candidate n = ceil((m-beta)/alpha)
std::uint64_t beatty_count(std::uint64_t y, std::uint64_t z, const Rational& alpha, const Rational& beta);

struct APWindowStat {
    std::int64_t d;
    std::int64_t a;
    Rational max_dev;  // max_{0<=y<=z<=x} |T(z) - T(y)|, T(y) = A(0,y;d,a) - y/(2d)
    std::int64_t arg_y;
    std::int64_t arg_z;
};

APWindowStat ap_signed_prefix_extremes(std::int64_t d, std::int64_t a, std::int64_t x);

struct LoDSummary {
    std::int64_t x;
    std::int64_t D;
    double theta;
    Rational total;  // sum over d <= D of the per-d maxima
    std::vector<APWindowStat> per_d;
};

// sum over 1 <= d <= floor(x^theta) of max_a max-window deviation;
// refuses with a cost estimate when the projected work exceeds budget
LoDSummary lod_error_total(std::int64_t x, double theta, std::uint64_t budget = std::uint64_t(1) << 36,
                           unsigned threads = 0);

struct S0Strategy {
    enum Kind { structured, exhaustive_capped } kind = structured;
    std::uint64_t cap = 0;  // exhaustive_capped: search a < cap
    static S0Strategy structured_max() { return {structured, 0}; }
    static S0Strategy capped(std::uint64_t c) { return {exhaustive_capped, c}; }
};

struct S0Result {
    Rational value;     // exact when xi = 0
    double value_d;
    bool exact;         // integer accumulation used
    bool lower_bound;   // true for the capped strategy
};

// S_0 = sum_{d_lo <= d < d_hi} max_a |sum_{n<N} e(s(nd+a)/2) e(n xi)|.
// The structured strategy realizes the full max over a >= 0: splitting
// a = a0 + 2^L a1 (L = ceil(log2(N d)) + 1, a0 < 2^L, a1 in {0,1,7,9})
// leaves two absolute-value classes, the plain sum over nd+a0 and the
// 2^L-truncated sum, and both are maximized exactly over all a0.
S0Result s0_discrete(std::int64_t N, std::int64_t d_lo, std::int64_t d_hi, double xi,
                     S0Strategy strategy = S0Strategy::structured_max(), unsigned threads = 0);

// per-d inner maxima (xi = 0), exposed for oracle tests
std::uint64_t s0_inner_max(std::int64_t N, std::int64_t d);
std::uint64_t s0_inner_bruteforce(std::int64_t N, std::int64_t d, std::uint64_t a_cap);

struct BetaStrategy {
    enum Kind { breakpoints, grid } kind = breakpoints;
    std::int64_t grid_size = 256;
    static BetaStrategy exact_breakpoints() { return {breakpoints, 0}; }
    static BetaStrategy uniform_grid(std::int64_t g) { return {grid, g}; }
};

struct S0BeattyResult {
    Rational value;   // exact for xi = 0 (midpoint rule value)
    double value_d;
    bool exact;
    std::string strategy;  // label: "breakpoints" (sup exact per node) or "grid" (lower bound)
};

// midpoint-rule approximation of the alpha-integral over [D, 2D] on
// alpha_grid nodes; per node the beta-sup is exact on one period
// (breakpoints) or grid-sampled (declared lower bound)
S0BeattyResult s0_beatty(std::int64_t N, const Rational& D, double xi, std::int64_t alpha_grid,
                         BetaStrategy beta = BetaStrategy::exact_breakpoints());

struct PSExperiment {
    Rational c;
    std::uint64_t N;
    Rational freq0;      // |{n < N : t(floor(n^c)) = 0}| / N
    Rational deviation;  // |freq0 - 1/2|
    std::uint64_t excluded;  // floor certifications that failed (always 0: exact roots)
};

// c must be rational in (1,2); floors are exact integer q-th roots of n^p
PSExperiment ps_frequency(const Rational& c, std::uint64_t N);

struct SlopeFit {
    double slope;
    double intercept;
    double rss;
};

// least squares through (log x, log y); requires >= 2 positive points
SlopeFit slope_fit(std::span<const std::pair<double, double>> points);

}  // namespace tmdist
