#ifndef QCOV_ARITH_HPP
#define QCOV_ARITH_HPP

// Exact integer and p-adic combinatorics: factorials, valuations, digit
// sums, binomial row gcds, squarefree kernels, and the base-3 scoring
// machinery used by the valuation witnesses.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcov {

// Exact-arithmetic consistency violation (e.g. inexact division where
// exactness is required, or a prime factor escaping a promised bound).
// Distinct from std::domain_error, which flags caller-side misuse.
struct integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::vector<unsigned long> primes_up_to(unsigned long bound) {
    std::vector<unsigned long> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(bound + 1, false);
    for (unsigned long p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (unsigned long q = p * p; q <= bound; q += p) composite[q] = true;
    }
    return primes;
}

// p-adic valuation v_p(x); x = 0 has no valuation.
inline unsigned long vp(unsigned long p, const mpz_class& x) {
    if (p < 2) throw std::domain_error("vp: p must be at least 2");
    if (x == 0) throw std::domain_error("vp: valuation of zero undefined");
    mpz_class stripped;
    mpz_class pz(p);
    return mpz_remove(stripped.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
}

// Sum of base-p digits of n (n arbitrary precision, n >= 0).
inline unsigned long digit_sum(unsigned long p, mpz_class n) {
    if (p < 2) throw std::domain_error("digit_sum: p must be at least 2");
    if (n < 0) throw std::domain_error("digit_sum: n must be nonnegative");
    if (p == 2) return mpz_popcount(n.get_mpz_t());
    unsigned long s = 0;
    while (n > 0) s += mpz_tdiv_q_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    return s;
}

// v_p(C(n,k)) in digit-sum form: (s_p(k) + s_p(n-k) - s_p(n)) / (p-1).
// Equals the number of carries when adding k and n-k in base p.
inline unsigned long vp_binomial(unsigned long p, const mpz_class& n, const mpz_class& k) {
    if (p < 2) throw std::domain_error("vp_binomial: p must be at least 2");
    if (k < 0 || k > n) throw std::domain_error("vp_binomial: k out of range");
    unsigned long s = digit_sum(p, k) + digit_sum(p, n - k) - digit_sum(p, n);
    if (s % (p - 1) != 0)
        throw integrity_error("vp_binomial: digit sum not divisible by p-1");
    return s / (p - 1);
}

struct PrimePower {
    unsigned long p;
    unsigned long k;
};

inline std::optional<PrimePower> is_prime_power(unsigned long m) {
    if (m < 2) throw std::domain_error("is_prime_power: m must be at least 2");
    unsigned long p = m;
    for (unsigned long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            p = d;
            break;
        }
    }
    unsigned long k = 0;
    unsigned long rest = m;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) return std::nullopt;
    return PrimePower{p, k};
}

// gcd of the row C(m,1), ..., C(m,m-1): p when m is a prime power p^k, else 1.
inline unsigned long binomial_gcd(unsigned long m) {
    if (m < 2) throw std::domain_error("binomial_gcd: m must be at least 2");
    auto pp = is_prime_power(m);
    return pp ? pp->p : 1;
}

// p when m is a power of an odd prime p; 1 otherwise (including m = 1 and
// powers of 2).
inline unsigned long a_of(unsigned long m) {
    if (m < 1) throw std::domain_error("a_of: m must be positive");
    if (m == 1) return 1;
    auto pp = is_prime_power(m);
    if (pp && pp->p != 2) return pp->p;
    return 1;
}

// Product of the primes dividing |x| to odd multiplicity. All prime factors
// of |x| must lie below prime_bound; anything left over is an integrity
// error, never silently kept.
inline mpz_class squarefree_kernel(const mpz_class& x, unsigned long prime_bound) {
    if (x == 0) throw std::domain_error("squarefree_kernel: x must be nonzero");
    mpz_class rest = abs(x);
    mpz_class kernel = 1;
    for (unsigned long p : primes_up_to(prime_bound)) {
        mpz_class pz(p), stripped;
        unsigned long e = mpz_remove(stripped.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
        rest = stripped;
        if (e % 2 == 1) kernel *= p;
    }
    if (rest != 1)
        throw integrity_error("squarefree_kernel: factor above prime bound, remainder " +
                              rest.get_str());
    return kernel;
}

// --- Base-3 index scoring ---------------------------------------------
//
// ternary_F(N,k) scores an index k by v_3(C(N,k)); ternary_G(A,a) adds the
// cofactor valuation v_3(A-a). The maximizer routines locate extremal
// indices of these scores constructively (by ternary digit recursion) and
// are the source of the p = 3 valuation witnesses.

inline unsigned long ternary_F(unsigned long N, unsigned long k) {
    if (k > N) throw std::domain_error("ternary_F: k out of range");
    return vp_binomial(3, N, k);
}

inline unsigned long ternary_G(unsigned long A, unsigned long a) {
    if (A < 1) throw std::domain_error("ternary_G: A must be positive");
    if (a >= A) throw std::domain_error("ternary_G: a must be at most A-1 (v_3(0) undefined)");
    return ternary_F(A, a) + vp(3, mpz_class(A - a));
}

struct TernaryScore {
    unsigned long A = 0;
    unsigned long a = 0;
    unsigned long F = 0;                  // v_3(C(A,a))
    std::optional<unsigned long> G;       // F + v_3(A-a); absent when a = A
};

inline TernaryScore ternary_score(unsigned long A, unsigned long a) {
    TernaryScore s;
    s.A = A;
    s.a = a;
    s.F = ternary_F(A, a);
    if (a < A) s.G = ternary_G(A, a);
    return s;
}

struct MaximizerResult {
    unsigned long index = 0;
    bool exceptional = false;
};

// Smallest argmax of G_A over 0 <= a <= A-1; always lies in [0, A/2).
// Construction: G maximizers lift ternary-digit-wise (one residue class per
// case of A mod 3), so recursing on floor(A/3) and re-appending the digit
// follows the maximum down to the base cases.
inline unsigned long lower_half_G_maximizer(unsigned long A) {
    if (A < 1) throw std::domain_error("lower_half_G_maximizer: A must be positive");
    if (A <= 2) return 0;
    unsigned long B = A / 3;
    unsigned long r = A % 3;
    return 3 * lower_half_G_maximizer(B) + r;
}

// Smallest argmax of G_B for odd B. Exceptional family B = 2*3^t - 1: the
// maximizer is unique and central, a = (B-1)/2; otherwise the returned
// index satisfies a < (B-1)/2.
inline MaximizerResult odd_G_maximizer(unsigned long B) {
    if (B % 2 == 0) throw std::domain_error("odd_G_maximizer: B must be odd");
    if (B == 1) return {0, true};
    unsigned long A = B / 3;
    switch (B % 3) {
        case 0:
            return {3 * lower_half_G_maximizer(A), false};
        case 1:
            return {3 * lower_half_G_maximizer(A) + 1, false};
        default: {
            MaximizerResult sub = odd_G_maximizer(A);
            return {3 * sub.index + 2, sub.exceptional};
        }
    }
}

// Smallest argmax of F_A for even A. Exceptional family A = 2*3^t - 2
// (t >= 1): the maximizer is unique and central, a = A/2; otherwise the
// returned index satisfies a < A/2.
inline MaximizerResult even_F_maximizer(unsigned long A) {
    if (A % 2 == 1) throw std::domain_error("even_F_maximizer: A must be even");
    if (A < 2) throw std::domain_error("even_F_maximizer: A must be at least 2");
    if (A == 2) return {0, false};
    unsigned long B = A / 3;
    switch (A % 3) {
        case 0:
            // F_{3B} peaks on the +1/+2 lifts of G_B maximizers.
            return {3 * lower_half_G_maximizer(B) + 1, false};
        case 1: {
            // F_{3B+1} peaks on the +2 lifts of G_B maximizers; the unique
            // central maximizer of an exceptional B lifts to the unique
            // central maximizer of A = 2*3^{t+1} - 2.
            MaximizerResult sub = odd_G_maximizer(B);
            return {3 * sub.index + 2, sub.exceptional};
        }
        default:
            // F_{3B+2} is digit-shift invariant; reuse the F_B maximizer.
            return {3 * even_F_maximizer(B).index, false};
    }
}

}  // namespace qcov

#endif
