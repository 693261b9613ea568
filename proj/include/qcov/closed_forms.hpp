#ifndef QCOV_CLOSED_FORMS_HPP
#define QCOV_CLOSED_FORMS_HPP

// Closed-form expressions for distinguished coefficients of the covariant
// and its discriminant: the diagonal middle coefficients b_j, the shared
// A/C scalar, the quartic test-monomial coefficients, and the non-square
// factor driving their parity. Every formula here is independently
// extractable from the polynomials themselves; the test suite holds the two
// routes together.

#include <gmpxx.h>

#include <stdexcept>

#include "qcov/arith.hpp"
#include "qcov/covariant.hpp"
#include "qcov/polyring.hpp"

namespace qcov {

namespace detail {

// 2 (-1)^j N! (M-2j) (M-j)! j!, total on 0 <= j <= M.
inline mpz_class b_diag_factored(const FormParams& P, unsigned long j) {
    mpz_class linear = mpz_class(P.M) - mpz_class(2) * mpz_class(j);
    mpz_class value = 2 * factorial(P.N) * linear * factorial(P.M - j) * factorial(j);
    if (j % 2 == 1) value = -value;
    return value;
}

}  // namespace detail

// The same coefficient in binomial form, 2 (-1)^k (N!)^2 (N+1-k)(N+1-2k) / C(N,k),
// valid for 1 <= k <= N; the division must be exact.
inline mpz_class b_diag_binomial_form(unsigned long n, unsigned long k) {
    FormParams P(n);
    if (k < 1 || k > P.N) throw std::domain_error("b_diag_binomial_form: k out of range");
    mpz_class nf = factorial(P.N);
    mpz_class numerator = 2 * nf * nf * (mpz_class(P.N) + 1 - mpz_class(k)) *
                          (mpz_class(P.N) + 1 - mpz_class(2) * mpz_class(k));
    if (k % 2 == 1) numerator = -numerator;
    mpz_class q, r;
    mpz_class divisor = binomial(P.N, k);
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), numerator.get_mpz_t(), divisor.get_mpz_t());
    if (r != 0) throw integrity_error("b_diag_binomial_form: binomial division not exact");
    if (q != detail::b_diag_factored(P, k))
        throw integrity_error("b_diag_binomial_form: disagrees with factored form");
    return q;
}

// Coefficient of f_j f_{M-j} in the middle form B_n, as the fully factored
// product 2 (-1)^j N! (M-2j) (M-j)! j!. Total on 0 <= j <= M and symmetric
// under j <-> M-j; on 1 <= j <= N the binomial form is recomputed and must
// agree.
inline mpz_class b_diag(unsigned long n, unsigned long j) {
    FormParams P(n);
    if (j > P.M) throw std::domain_error("b_diag: j out of range");
    mpz_class value = detail::b_diag_factored(P, j);
    if (j >= 1 && j <= P.N && value != b_diag_binomial_form(n, j))
        throw integrity_error("b_diag: closed forms disagree");
    return value;
}

// Magnitude of the A_n/C_n summand scalar C(N,i) alpha_i beta_i, which
// collapses to N! (M-i)! (i+1)!; both routes are evaluated and compared.
inline mpz_class scalar_AB(unsigned long n, unsigned long i) {
    FormParams P(n);
    if (i > P.N) throw std::domain_error("scalar_AB: i out of range");
    mpz_class collapsed = factorial(P.N) * factorial(P.M - i) * factorial(i + 1);
    if (collapsed != binomial(P.N, i) * alpha(n, i) * beta(n, i))
        throw integrity_error("scalar_AB: closed forms disagree");
    return collapsed;
}

// Non-square factor of the test-monomial coefficient:
// (m-r)(m+r-2)(2(m-1)^2 + 2(r-1)^2 - 1).
inline mpz_class E_m(unsigned long m, unsigned long r) {
    if (r < 2 || r > m - 1) throw std::domain_error("E_m: r out of range");
    mpz_class mm(m), rr(r);
    return (mm - rr) * (mm + rr - 2) *
           (2 * (mm - 1) * (mm - 1) + 2 * (rr - 1) * (rr - 1) - 1);
}

struct TestMonomialSpec {
    unsigned long n;
    unsigned long r;
    unsigned long a;  // n+1-r
    unsigned long b;  // n-1+r
};

inline TestMonomialSpec test_monomial_spec(unsigned long n, unsigned long r) {
    if (r < 2 || r > n + 1) throw std::domain_error("test_monomial_spec: r out of range");
    TestMonomialSpec s{n, r, n + 1 - r, n - 1 + r};
    return s;
}

// The quartic monomial f_a f_{a+1} f_b f_{b+1} with a = n+1-r, b = n-1+r.
inline Monomial test_monomial(unsigned long n, unsigned long r) {
    TestMonomialSpec s = test_monomial_spec(n, r);
    return Monomial::from_factors({s.a, s.a + 1, s.b, s.b + 1});
}

// Coefficient of test_monomial(n,r) in the discriminant:
// -8 (N!)^2 (n+r)! (n+r-1)! (n-r+2)! (n-r+1)! (2n^2+4n+2r^2-4r+3).
inline mpz_class coeff_Cnr(unsigned long n, unsigned long r) {
    FormParams P(n);
    if (r < 2 || r > n + 1) throw std::domain_error("coeff_Cnr: r out of range");
    mpz_class nf = factorial(P.N);
    mpz_class nn(n), rr(r);
    mpz_class quad = 2 * nn * nn + 4 * nn + 2 * rr * rr - 4 * rr + 3;
    return -8 * nf * nf * factorial(n + r) * factorial(n + r - 1) * factorial(n - r + 2) *
           factorial(n - r + 1) * quad;
}

// The same coefficient exhibited as -8 (square) E_m(r) with m = n+2.
inline mpz_class coeff_Cnr_factored(unsigned long n, unsigned long r) {
    FormParams P(n);
    if (r < 2 || r > n + 1) throw std::domain_error("coeff_Cnr_factored: r out of range");
    mpz_class root = factorial(P.N) * factorial(P.m + r - 3) * factorial(P.m - r - 1);
    return -8 * root * root * E_m(P.m, r);
}

}  // namespace qcov

#endif
