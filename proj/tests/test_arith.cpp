#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "qcov/arith.hpp"

using namespace qcov;

namespace {

// Valuation by plain repeated division, independent of mpz_remove.
unsigned long vp_oracle(unsigned long p, mpz_class x) {
    x = abs(x);
    unsigned long e = 0;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

unsigned long digit_sum_oracle(unsigned long p, unsigned long n) {
    unsigned long s = 0;
    while (n > 0) {
        s += n % p;
        n /= p;
    }
    return s;
}

// Carries when adding k and n-k in base p, simulated digit by digit.
unsigned long carry_count(unsigned long p, unsigned long n, unsigned long k) {
    unsigned long a = k, b = n - k;
    unsigned long carries = 0, carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        unsigned long d = a % p + b % p + carry;
        carry = d >= p ? 1 : 0;
        carries += carry;
        a /= p;
        b /= p;
    }
    return carries;
}

std::vector<unsigned long> g_row(unsigned long A) {
    std::vector<unsigned long> row;
    for (unsigned long a = 0; a < A; ++a) row.push_back(ternary_G(A, a));
    return row;
}

std::vector<unsigned long> f_row(unsigned long A) {
    std::vector<unsigned long> row;
    for (unsigned long a = 0; a <= A; ++a) row.push_back(ternary_F(A, a));
    return row;
}

std::set<unsigned long> argmax_set(const std::vector<unsigned long>& row) {
    unsigned long best = *std::max_element(row.begin(), row.end());
    std::set<unsigned long> s;
    for (unsigned long i = 0; i < row.size(); ++i)
        if (row[i] == best) s.insert(i);
    return s;
}

bool in_family(unsigned long value, unsigned long offset) {
    // value == 2*3^t - offset for some t >= 0?
    for (mpz_class pw = 1;; pw *= 3) {
        mpz_class member = 2 * pw - offset;
        if (member == value) return true;
        if (member > value) return false;
    }
}

}  // namespace

TEST_CASE("vp basics") {
    CHECK(vp(3, 18) == 2);
    CHECK(vp(2, 192) == 6);
    CHECK(vp(5, 7) == 0);
    CHECK(vp(7, -49) == 2);
    CHECK_THROWS_AS(vp(3, 0), std::domain_error);
    mpz_class big = factorial(60);
    for (unsigned long p : {2ul, 3ul, 5ul, 13ul, 59ul}) CHECK(vp(p, big) == vp_oracle(p, big));
}

TEST_CASE("digit_sum") {
    CHECK(digit_sum(3, 10) == 2);
    CHECK(digit_sum(2, 7) == 3);
    CHECK(digit_sum(3, 8) == 4);
    CHECK(digit_sum(5, 0) == 0);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
        for (unsigned long n = 0; n <= 2000; ++n) CHECK(digit_sum(p, n) == digit_sum_oracle(p, n));
}

TEST_CASE("vp_binomial examples and range errors") {
    CHECK(vp_binomial(3, 9, 3) == 1);  // C(9,3) = 84
    CHECK(vp_binomial(2, 5, 2) == 1);  // C(5,2) = 10
    CHECK(vp_binomial(7, 100, 0) == 0);
    CHECK_THROWS_AS(vp_binomial(3, 4, 5), std::domain_error);
}

TEST_CASE("vp_binomial matches direct factor extraction and carry count") {
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
        for (unsigned long n = 0; n <= 500; n += (n < 60 ? 1 : 7)) {
            for (unsigned long k = 0; k <= n; ++k) {
                unsigned long v = vp_binomial(p, n, k);
                CHECK(v == carry_count(p, n, k));
                if (n <= 60) CHECK(v == vp_oracle(p, binomial(n, k)));
            }
        }
    }
}

TEST_CASE("binomial_gcd against brute-force row gcd") {
    CHECK(binomial_gcd(9) == 3);
    CHECK(binomial_gcd(6) == 1);
    CHECK(binomial_gcd(12) == 1);
    CHECK_THROWS_AS(binomial_gcd(1), std::domain_error);
    for (unsigned long m = 2; m <= 200; ++m) {
        mpz_class g = 0;
        for (unsigned long r = 1; r < m; ++r) {
            g = gcd(g, binomial(m, r));
            if (g == 1) break;
        }
        CHECK(mpz_class(binomial_gcd(m)) == g);
    }
}

TEST_CASE("is_prime_power and a_of") {
    auto pp = is_prime_power(27);
    REQUIRE(pp.has_value());
    CHECK(pp->p == 3);
    CHECK(pp->k == 3);
    CHECK_FALSE(is_prime_power(6).has_value());
    auto four = is_prime_power(4);
    REQUIRE(four.has_value());
    CHECK(four->p == 2);
    CHECK(four->k == 2);
    auto prime = is_prime_power(97);
    REQUIRE(prime.has_value());
    CHECK(prime->p == 97);
    CHECK(prime->k == 1);

    CHECK(a_of(1) == 1);
    CHECK(a_of(2) == 1);
    CHECK(a_of(3) == 3);
    CHECK(a_of(4) == 1);
    CHECK(a_of(6) == 1);
    CHECK(a_of(8) == 1);
    CHECK(a_of(9) == 3);
    CHECK(a_of(25) == 5);
    CHECK(a_of(27) == 3);
}

TEST_CASE("squarefree_kernel") {
    CHECK(squarefree_kernel(192, 3) == 3);
    CHECK(squarefree_kernel(1, 2) == 1);
    CHECK(squarefree_kernel(360, 5) == 10);
    CHECK(squarefree_kernel(-360, 5) == 10);
    CHECK_THROWS_AS(squarefree_kernel(0, 5), std::domain_error);
    CHECK_THROWS_AS(squarefree_kernel(mpz_class(7) * 9, 5), integrity_error);

    std::mt19937_64 rng(20240811);
    auto primes = primes_up_to(50);
    auto random_smooth = [&] {
        mpz_class v = 1;
        for (int j = 0; j < 6; ++j) {
            unsigned long p = primes[rng() % primes.size()];
            unsigned long e = rng() % 4;
            for (unsigned long t = 0; t < e; ++t) v *= p;
        }
        return v;
    };
    for (int trial = 0; trial < 50; ++trial) {
        mpz_class x = random_smooth(), y = random_smooth();
        CHECK(squarefree_kernel(x * x * y, 50) == squarefree_kernel(y, 50));
    }
}

TEST_CASE("ternary_F equals direct v_3 of binomials") {
    CHECK(ternary_F(8, 4) == 0);
    CHECK(ternary_F(4, 2) == 1);
    CHECK(ternary_F(137, 0) == 0);
    CHECK_THROWS_AS(ternary_F(5, 6), std::domain_error);
    for (unsigned long n = 0; n <= 120; ++n)
        for (unsigned long k = 0; k <= n; ++k)
            CHECK(ternary_F(n, k) == vp_oracle(3, binomial(n, k)));
}

TEST_CASE("ternary_G") {
    CHECK(ternary_G(4, 1) == 1);
    CHECK(ternary_G(3, 0) == 1);
    CHECK(ternary_G(2, 1) == 0);
    CHECK_THROWS_AS(ternary_G(4, 4), std::domain_error);
    auto score = ternary_score(9, 3);
    CHECK(score.F == 1);
    REQUIRE(score.G.has_value());
    CHECK(*score.G == 2);
    CHECK(*score.G >= score.F);
    CHECK_FALSE(ternary_score(9, 9).G.has_value());
}

TEST_CASE("score recursion identities") {
    for (unsigned long A = 1; A <= 200; ++A) {
        for (unsigned long a = 0; a <= A; ++a) {
            for (unsigned long r = 0; r < 3; ++r)
                CHECK(ternary_F(3 * A + 2, 3 * a + r) == ternary_F(A, a));
            if (a <= A - 1 && A >= 1) {
                unsigned long g1 = ternary_G(A, a) + 1;
                CHECK(ternary_F(3 * A, 3 * a) == ternary_F(A, a));
                CHECK(ternary_F(3 * A, 3 * a + 1) == g1);
                CHECK(ternary_F(3 * A, 3 * a + 2) == g1);
                CHECK(ternary_F(3 * A + 1, 3 * a) == ternary_F(A, a));
                CHECK(ternary_F(3 * A + 1, 3 * a + 1) == ternary_F(A, a));
                CHECK(ternary_F(3 * A + 1, 3 * a + 2) == g1);

                CHECK(ternary_G(3 * A, 3 * a) == g1);
                CHECK(ternary_G(3 * A, 3 * a + 1) == g1);
                CHECK(ternary_G(3 * A, 3 * a + 2) == g1);
                CHECK(ternary_G(3 * A + 1, 3 * a + 1) == g1);
                CHECK(ternary_G(3 * A + 1, 3 * a + 2) == g1);
                CHECK(ternary_G(3 * A + 2, 3 * a + 2) == g1);
                CHECK(ternary_G(3 * A + 1, 3 * a) == ternary_F(A, a));
                CHECK(ternary_G(3 * A + 2, 3 * a) == ternary_F(A, a));
                CHECK(ternary_G(3 * A + 2, 3 * a + 1) == ternary_F(A, a));
            }
        }
    }
}

TEST_CASE("lower_half_G_maximizer") {
    CHECK(lower_half_G_maximizer(1) == 0);
    CHECK(lower_half_G_maximizer(3) == 0);
    unsigned long a10 = lower_half_G_maximizer(10);
    CHECK(a10 <= 4);
    for (unsigned long A = 1; A <= 150; ++A) {
        auto row = g_row(A);
        auto maxes = argmax_set(row);
        unsigned long a = lower_half_G_maximizer(A);
        INFO("A = " << A);
        CHECK(maxes.count(a) == 1);
        CHECK(2 * a < A);
        CHECK(a == *maxes.begin());
    }
}

TEST_CASE("odd_G_maximizer") {
    auto r5 = odd_G_maximizer(5);
    CHECK(r5.index == 2);
    CHECK(r5.exceptional);
    auto r1 = odd_G_maximizer(1);
    CHECK(r1.index == 0);
    CHECK(r1.exceptional);
    auto r7 = odd_G_maximizer(7);
    CHECK(r7.index < 3);
    CHECK_FALSE(r7.exceptional);
    CHECK_THROWS_AS(odd_G_maximizer(6), std::domain_error);

    for (unsigned long B = 1; B <= 151; B += 2) {
        auto row = g_row(B);
        auto maxes = argmax_set(row);
        auto res = odd_G_maximizer(B);
        INFO("B = " << B);
        CHECK(maxes.count(res.index) == 1);
        CHECK(res.exceptional == in_family(B, 1));
        if (res.exceptional) {
            CHECK(maxes.size() == 1);
            CHECK(res.index == (B - 1) / 2);
        } else {
            CHECK(2 * res.index < B - 1);
            CHECK(res.index == *maxes.begin());
        }
    }
}

TEST_CASE("even_F_maximizer") {
    auto r4 = even_F_maximizer(4);
    CHECK(r4.index == 2);
    CHECK(r4.exceptional);
    auto r2 = even_F_maximizer(2);
    CHECK(r2.index == 0);
    CHECK_FALSE(r2.exceptional);
    auto r10 = even_F_maximizer(10);
    CHECK(r10.index == 2);
    CHECK_FALSE(r10.exceptional);
    CHECK_THROWS_AS(even_F_maximizer(7), std::domain_error);

    for (unsigned long A = 2; A <= 150; A += 2) {
        auto row = f_row(A);
        auto maxes = argmax_set(row);
        auto res = even_F_maximizer(A);
        INFO("A = " << A);
        CHECK(maxes.count(res.index) == 1);
        CHECK(res.exceptional == (in_family(A, 2) && A >= 4));
        if (res.exceptional) {
            CHECK(maxes.size() == 1);
            CHECK(res.index == A / 2);
        } else {
            CHECK(2 * res.index < A);
            CHECK(res.index == *maxes.begin());
        }
    }
}
