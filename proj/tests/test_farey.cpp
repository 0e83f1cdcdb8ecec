#include <doctest.h>

#include <stdexcept>

#include <random>
#include <vector>

#include "tmdist/farey.hpp"

using namespace tmdist;

TEST_CASE("mediant basics and betweenness") {
    CHECK(mediant(Rational(0), Rational(1)) == Rational(1, 2));
    CHECK(mediant(Rational(1, 3), Rational(1, 2)) == Rational(2, 5));
    CHECK_THROWS_AS(mediant(Rational(1, 2), Rational(1, 3)), std::invalid_argument);
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 10000; ++iter) {
        Rational a(static_cast<std::int64_t>(rng() % 2001) - 1000, static_cast<std::int64_t>(rng() % 999) + 1);
        Rational b(static_cast<std::int64_t>(rng() % 2001) - 1000, static_cast<std::int64_t>(rng() % 999) + 1);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        Rational m = mediant(a, b);
        REQUIRE(a < m);
        REQUIRE(m < b);
    }
}

TEST_CASE("farey_neighbors identities") {
    auto [l, r] = farey_neighbors(Rational(1, 2), BigInt(3));
    CHECK(l == Rational(1, 3));
    CHECK(r == Rational(2, 3));
    auto [l0, r0] = farey_neighbors(Rational(0), BigInt(1));
    CHECK(r0 == Rational(1));
    CHECK(l0 == Rational(-1));
    CHECK_THROWS_AS(farey_neighbors(Rational(1, 5), BigInt(4)), std::invalid_argument);

    std::mt19937_64 rng(37);
    for (int iter = 0; iter < 2000; ++iter) {
        std::int64_t q = static_cast<std::int64_t>(rng() % 60) + 1;
        std::int64_t p = static_cast<std::int64_t>(rng() % (4 * q));
        std::int64_t n = q + static_cast<std::int64_t>(rng() % 60);
        Rational x(p, q);
        auto [a, c] = farey_neighbors(x, BigInt(n));
        // bc - ad = 1 against both flanks, and the gap spans past order n
        CHECK(x.num() * a.den() - a.num() * x.den() == BigInt(1));
        CHECK(c.num() * x.den() - x.num() * c.den() == BigInt(1));
        CHECK(a.den() + x.den() > BigInt(n));
        CHECK(x.den() + c.den() > BigInt(n));
        CHECK(a < x);
        CHECK(x < c);
    }
}

TEST_CASE("farey_approx dissection rule on the worked examples") {
    FareyApprox fa = farey_approx(Rational(2, 5), BigInt(2));
    CHECK(fa.p == BigInt(1));
    CHECK(fa.q == BigInt(2));
    FareyApprox fb = farey_approx(Rational(1, 3), BigInt(3));
    CHECK(fb.p == BigInt(1));
    CHECK(fb.q == BigInt(3));
    FareyApprox fc = farey_approx(Rational(7), BigInt(9));
    CHECK(fc.p == BigInt(7));
    CHECK(fc.q == BigInt(1));
    FareyApprox64 f64 = farey_approx(2, 5, 2);
    CHECK(f64.p == 1);
    CHECK(f64.q == 2);
}

TEST_CASE("farey_approx int64 path agrees with the exact path") {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 5000; ++iter) {
        std::int64_t den = static_cast<std::int64_t>(rng() % 9999) + 1;
        std::int64_t num = static_cast<std::int64_t>(rng() % (8 * den));
        std::int64_t Q = static_cast<std::int64_t>(rng() % 500) + 1;
        FareyApprox64 fast = farey_approx(num, den, Q);
        FareyApprox slow = farey_approx(Rational(num, den), BigInt(Q));
        REQUIRE(BigInt(fast.p) == slow.p);
        REQUIRE(BigInt(fast.q) == slow.q);
    }
}

TEST_CASE("farey_approx translation invariance and dirichlet bound on a dyadic grid") {
    for (std::int64_t j = 0; j < (1 << 10); ++j) {
        for (std::int64_t Q = 1; Q <= 64; Q *= 2) {
            FareyApprox64 f = farey_approx(j, 1 << 10, Q);
            FareyApprox64 g = farey_approx(j + (1 << 10), 1 << 10, Q);
            REQUIRE(g.q == f.q);
            REQUIRE(g.p == f.p + f.q);
            // |q alpha - p| < 1/Q
            __int128 err = static_cast<__int128>(f.q) * j - static_cast<__int128>(f.p) * (1 << 10);
            if (err < 0) err = -err;
            REQUIRE(err * Q < (1 << 10));
        }
    }
}

TEST_CASE("dissection interval of the selected fraction contains alpha") {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 1000; ++iter) {
        std::int64_t den = static_cast<std::int64_t>(rng() % 999) + 1;
        std::int64_t num = static_cast<std::int64_t>(rng() % den);
        std::int64_t Q = static_cast<std::int64_t>(rng() % 64) + 1;
        Rational alpha(num, den);
        FareyApprox fa = farey_approx(alpha, BigInt(Q));
        Rational sel = fa.value();
        auto [lnb, rnb] = farey_neighbors(sel, BigInt(Q));
        REQUIRE(alpha >= mediant(lnb, sel));
        REQUIRE(alpha < mediant(sel, rnb));
    }
}

TEST_CASE("dissection interval lengths stay below 2/(Q q)") {
    for (std::int64_t Q : {5, 8, 13, 21}) {
        // F_Q on [0,1] by the next-fraction recurrence (independent of the library walk)
        std::vector<std::pair<std::int64_t, std::int64_t>> seq{{0, 1}, {1, Q}};
        while (seq.back().first < seq.back().second) {
            auto [a, b] = seq[seq.size() - 2];
            auto [c, d] = seq.back();
            std::int64_t k = (Q + b) / d;
            seq.emplace_back(k * c - a, k * d - b);
        }
        for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
            Rational left = mediant(Rational(seq[i - 1].first, seq[i - 1].second),
                                    Rational(seq[i].first, seq[i].second));
            Rational right = mediant(Rational(seq[i].first, seq[i].second),
                                     Rational(seq[i + 1].first, seq[i + 1].second));
            REQUIRE(right - left < Rational(2, Q * seq[i].second));
        }
    }
}

TEST_CASE("farey construction worked example alpha=5 m=2 mu=1 sigma=1") {
    FareyConstruction fc = build_farey_construction(Rational(5), 2, 1, 1);
    CHECK(fc.K[0] == BigInt(8));
    CHECK(fc.K[1] == BigInt(3));
    CHECK(fc.M[0] == BigInt(10));
    CHECK(fc.M[1] == BigInt(2));
    CHECK(fc.p_frak[0] == BigInt(5));
    CHECK(fc.p_frak[1] == BigInt(2));
}

TEST_CASE("farey construction exact multiples and random dyadic bounds") {
    // alpha a multiple of 2^{(m+1)mu}: K_m = 1, M_m = p_frak_m = alpha / 2^{(m+1)mu}
    for (int m : {2, 3}) {
        unsigned mu = 2;
        Rational alpha(BigInt(11) * BigInt::power_of_two((m + 1) * mu));
        FareyConstruction fc = build_farey_construction(alpha, m, mu, 3);
        CHECK(fc.K[m - 1] == BigInt(1));
        CHECK(fc.M[m - 1] == BigInt(11));
        CHECK(fc.p_frak[m - 1] == BigInt(11));
    }
    // builder asserts the approximation bounds internally
    std::mt19937_64 rng(47);
    for (int iter = 0; iter < 1000; ++iter) {
        Rational alpha(static_cast<std::int64_t>(rng() % (1 << 13)),
                       static_cast<std::int64_t>(1) << (rng() % 6));
        CHECK_NOTHROW(build_farey_construction(alpha, 2, 4, 1));
    }
}

TEST_CASE("q divisibility measure frozen values and bound sweep") {
    CHECK(q_divisibility_measure(8, 0) == Rational(1));
    CHECK(q_divisibility_measure(29, 0) == Rational(1));
    CHECK(q_divisibility_measure(4, 1) == Rational(13, 35));
    CHECK(q_divisibility_measure(16, 2) ==
          Rational(BigInt::from_decimal("5747925292"), BigInt::from_decimal("31556720475")));
    // grid cross-check path
    CHECK(q_divisibility_measure(8, 1, 4096) == q_divisibility_measure(8, 1));

    // measure <= C (2^-gamma + 1/K) with a single constant across the sweep
    Rational worst(0);
    for (std::int64_t K = 8; K <= 256; K *= 2) {
        for (unsigned gamma = 0; gamma <= 5; ++gamma) {
            Rational measure = q_divisibility_measure(K, gamma);
            Rational bound = Rational(1, std::int64_t(1) << gamma) + Rational(1, K);
            Rational ratio = measure / bound;
            if (ratio > worst) worst = ratio;
        }
    }
    CHECK(worst <= Rational(3, 2));
    CHECK(worst > Rational(0));
}

TEST_CASE("spaced points divisibility count") {
    std::vector<Rational> pts;
    for (int j = 0; j < 64; ++j) pts.emplace_back(j, 64);
    CHECK(spaced_points_divisibility_count(pts, Rational(1, 64), 16, 0) == 64);
    CHECK(spaced_points_divisibility_count(pts, Rational(1, 64), 16, 2) == 14);
    std::vector<Rational> bad{Rational(0), Rational(1, 100)};
    CHECK_THROWS_AS(spaced_points_divisibility_count(bad, Rational(1, 10), 16, 1), std::invalid_argument);

    // count <= C (K^2/2^gamma + (1/delta)(2^-gamma + 1/K)) across a sweep
    Rational worst(0);
    for (std::int64_t M : {32, 64, 128}) {
        std::vector<Rational> grid;
        for (std::int64_t j = 0; j < M; ++j) grid.emplace_back(j, M);
        for (std::int64_t K : {8, 16, 32}) {
            for (unsigned gamma = 0; gamma <= 3; ++gamma) {
                std::int64_t cnt = spaced_points_divisibility_count(grid, Rational(1, M), K, gamma);
                Rational bound = Rational(K * K, std::int64_t(1) << gamma) +
                                 Rational(M) * (Rational(1, std::int64_t(1) << gamma) + Rational(1, K));
                Rational ratio = Rational(cnt) / bound;
                if (ratio > worst) worst = ratio;
            }
        }
    }
    CHECK(worst <= Rational(2));
}

TEST_CASE("exceptions census frozen value, constraints, reproducibility") {
    CensusResult r = exceptions_census(13, 4, 1, 1, 2, CensusMode::discrete);
    CHECK(r.exceptional == 1400);
    CHECK(r.total == 8192);
    CensusResult r2 = exceptions_census(13, 4, 1, 1, 2, CensusMode::discrete);
    CHECK(r2.exceptional == r.exceptional);

    CHECK_THROWS_WITH_AS(exceptions_census(10, 4, 1, 1, 2, CensusMode::discrete),
                         "exceptions_census: violated lambda >= (m+1) mu", std::invalid_argument);
    CHECK_THROWS_WITH_AS(exceptions_census(12, 4, 1, 1, 2, CensusMode::discrete),
                         "exceptions_census: violated gamma <= lambda - (m+1) mu", std::invalid_argument);
    CHECK_THROWS_WITH_AS(exceptions_census(13, 3, 1, 1, 2, CensusMode::discrete),
                         "exceptions_census: violated mu >= 4 sigma", std::invalid_argument);
    CHECK_THROWS_WITH_AS(exceptions_census(26, 8, 1, 2, 2, CensusMode::discrete),
                         "exceptions_census: violated sigma >= gamma", std::invalid_argument);
    CHECK_THROWS_WITH_AS(exceptions_census(13, 4, 1, 0, 2, CensusMode::discrete),
                         "exceptions_census: violated gamma >= 1", std::invalid_argument);
    CHECK_THROWS_WITH_AS(exceptions_census(13, 4, 1, 1, 1, CensusMode::discrete),
                         "exceptions_census: violated m >= 2", std::invalid_argument);

    // continuous-sampled mode on a coarse explicit grid
    CensusResult c = exceptions_census(13, 4, 1, 1, 2, CensusMode::continuous_sampled, 2);
    CHECK(c.grid_log2 == 2);
    CHECK(c.total == (std::uint64_t(1) << 15) + 1);
    CHECK(c.measure > Rational(0));
    // same O(2^{lambda-gamma}) scale as the discrete count
    CHECK(c.measure < Rational(1 << 13));
}
