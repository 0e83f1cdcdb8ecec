#include <doctest.h>

#include <stdexcept>

#include <random>

#include "tmdist/digits.hpp"
#include "tmdist/metrics.hpp"

using namespace tmdist;

namespace {

// independent quadratic oracle: every candidate arc with occupied endpoints,
// closed for the excess and open for the deficit, counted by a fresh scan
Rational brute_discrepancy(const Rational& alpha, std::int64_t N) {
    std::vector<Rational> pts;
    for (std::int64_t n = 0; n < N; ++n) pts.push_back((Rational(n) * alpha).frac());
    std::vector<Rational> uniq = pts;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    Rational best(0);
    for (const Rational& u : uniq) {
        for (const Rational& w : uniq) {
            Rational len = (w >= u) ? w - u : Rational(1) + w - u;
            std::int64_t closed = 0, open = 0;
            for (const Rational& x : pts) {
                bool inside_closed, inside_open;
                if (u <= w) {
                    inside_closed = (x >= u && x <= w);
                    inside_open = (x > u && x < w);
                } else {
                    inside_closed = (x >= u || x <= w);
                    inside_open = (x > u || x < w);
                }
                closed += inside_closed;
                open += inside_open;
            }
            Rational excess = Rational(closed, N) - len;
            Rational deficit = len - Rational(open, N);
            if (excess > best) best = excess;
            if (deficit > best) best = deficit;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("discrepancy worked examples") {
    CHECK(discrepancy(Rational(3), 17) == Rational(1));
    CHECK(discrepancy(Rational(1, 2), 2) == Rational(1, 2));
    CHECK(discrepancy(Rational(1, 64), 64) == Rational(1, 64));
    CHECK(discrepancy(Rational(2, 7), 5) == Rational(13, 35));
    CHECK(discrepancy(Rational(3, 8), 6) == Rational(7, 24));
    CHECK(discrepancy(Rational(5, 13), 9) == Rational(25, 117));
}

TEST_CASE("discrepancy equals the quadratic oracle on random rationals") {
    std::mt19937_64 rng(53);
    for (int iter = 0; iter < 40; ++iter) {
        std::int64_t q = static_cast<std::int64_t>(rng() % 90) + 2;
        std::int64_t p = static_cast<std::int64_t>(rng() % q);
        std::int64_t N = static_cast<std::int64_t>(rng() % 50) + 1;
        REQUIRE(discrepancy(Rational(p, q), N) == brute_discrepancy(Rational(p, q), N));
    }
}

TEST_CASE("discrepancy range and symmetry invariants") {
    std::mt19937_64 rng(59);
    for (int iter = 0; iter < 300; ++iter) {
        std::int64_t q = static_cast<std::int64_t>(rng() % 5000) + 1;
        std::int64_t p = static_cast<std::int64_t>(rng() % (3 * q));
        std::int64_t N = static_cast<std::int64_t>(rng() % 400) + 1;
        Rational alpha(p, q);
        Rational d = discrepancy(alpha, N);
        REQUIRE(d >= Rational(1, N));
        REQUIRE(d <= Rational(1));
        REQUIRE(discrepancy(alpha + Rational(1), N) == d);
        REQUIRE(discrepancy(Rational(1) - alpha.frac(), N) == d);
    }
}

TEST_CASE("discrepancy_of_points matches the alpha path") {
    std::mt19937_64 rng(61);
    for (int iter = 0; iter < 50; ++iter) {
        std::int64_t q = static_cast<std::int64_t>(rng() % 60) + 2;
        std::int64_t p = static_cast<std::int64_t>(rng() % q);
        std::int64_t N = static_cast<std::int64_t>(rng() % 40) + 1;
        PointSet ps;
        for (std::int64_t n = 0; n < N; ++n) ps.points.push_back((Rational(n) * Rational(p, q)).frac());
        REQUIRE(discrepancy_of_points(ps) == discrepancy(Rational(p, q), N));
    }
}

TEST_CASE("box count examples and the exact discrepancy ceiling") {
    // alpha = 0, beta = 0: everything sits in the t=0, k=0 box
    BoxCount all = box_count(BoxQuery{0, 12, Rational(0), Rational(0), 0, 3, 0, 4});
    CHECK(all.count == 12);
    BoxCount half = box_count(BoxQuery{0, 8, Rational(1, 2), Rational(0), 0, 2, 0, 2});
    CHECK(half.count == 2);
    CHECK(half.expected == Rational(2));
    CHECK(half.residual == Rational(0));

    // |count - N/(KT)| <= N D_N(alpha/K) with constant exactly 1
    std::mt19937_64 rng(67);
    for (int iter = 0; iter < 150; ++iter) {
        std::int64_t q = static_cast<std::int64_t>(rng() % 200) + 1;
        std::int64_t p = static_cast<std::int64_t>(rng() % (2 * q));
        std::int64_t T = static_cast<std::int64_t>(rng() % 6) + 1;
        std::int64_t K = static_cast<std::int64_t>(rng() % 6) + 1;
        BoxQuery bq{0,
                    static_cast<std::int64_t>(rng() % 300) + 1,
                    Rational(p, q),
                    Rational(static_cast<std::int64_t>(rng() % 100), 97),
                    static_cast<std::int64_t>(rng() % T),
                    T,
                    static_cast<std::int64_t>(rng() % K),
                    K};
        BoxCount r = box_count(bq);
        Rational ceiling = Rational(bq.j_hi) * discrepancy(bq.alpha / Rational(K), bq.j_hi);
        REQUIRE(r.residual <= ceiling);
    }
}

TEST_CASE("carry census trivial and frozen cases") {
    CHECK(carry_census(0, 100, 0, Rational(5, 4), Rational(1, 3), 4) == 0);
    CHECK(carry_census(0, 100, 3, Rational(5, 4), Rational(1, 3), 40) == 0);
    CHECK(carry_census(0, 256, 3, Rational(5, 4), Rational(1, 3), 4) == 45);
}

TEST_CASE("vdc equality case and thue-morse weights") {
    std::vector<RationalComplex> ones(5, RationalComplex{Rational(1), Rational(0)});
    VdcExactResult eq = vdc_check_exact(ones, 1, 1);
    CHECK(eq.lhs == Rational(25));
    CHECK(eq.rhs == Rational(25));
    CHECK(eq.ok);

    std::vector<std::complex<double>> z(64);
    for (int n = 0; n < 64; ++n) z[static_cast<std::size_t>(n)] = tm_sign(static_cast<std::uint64_t>(n));
    VdcResult r = vdc_check(z, 2, 4);
    CHECK(r.ok);
    CHECK(r.lhs <= r.rhs + 1e-9);
}

TEST_CASE("vdc holds on random complex sequences") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int iter = 0; iter < 500; ++iter) {
        std::size_t N = 1 + rng() % 64;
        std::vector<std::complex<double>> z(N);
        for (auto& v : z) v = std::polar(unit(rng), 6.283185307179586 * unit(rng));
        std::int64_t K = 1 + static_cast<std::int64_t>(rng() % 8);
        std::int64_t R = 1 + static_cast<std::int64_t>(rng() % 8);
        VdcResult r = vdc_check(z, K, R);
        REQUIRE(r.ok);
    }
}

TEST_CASE("mean discrepancy discrete sums and continuous estimate") {
    CHECK(mean_discrepancy_sum(0, 7, MeanMode::discrete) == Rational(1));
    CHECK(mean_discrepancy_sum(3, 16, MeanMode::discrete) == Rational(5, 2));

    // ratio to (N + 2^mu)/N (log+ N)^2 bounded by one constant across the sweep
    double worst = 0;
    for (unsigned mu = 2; mu <= 6; ++mu) {
        for (std::int64_t N : {16, 64, 256, 1024}) {
            double total = mean_discrepancy_sum(mu, N, MeanMode::discrete).to_double();
            double lg = std::max(1.0, std::log(static_cast<double>(N)));
            double bound = (static_cast<double>(N) + std::exp2(mu)) / static_cast<double>(N) * lg * lg;
            worst = std::max(worst, total / bound);
        }
    }
    CHECK(worst <= 1.0);

    Rational est = mean_discrepancy_sum(0, 64, MeanMode::continuous_sampled, 128);
    double bound = std::pow(std::max(1.0, std::log(64.0)), 2) / 64.0;
    CHECK(est.to_double() <= 3.0 * bound);
}
