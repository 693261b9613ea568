#ifndef QCOV_COVARIANT_HPP
#define QCOV_COVARIANT_HPP

// The quadratic covariant of the generic odd-degree binary form
// F = sum_j f_j x^(M-j) z^j of degree M = 2n+1: built once from closed-form
// coefficient sums (production path) and once by formal differentiation
// (verification path), together with its discriminant and the classical
// cubic Hessian used by the n = 1 base case.

#include <gmpxx.h>

#include <stdexcept>
#include <utility>
#include <vector>

#include "qcov/arith.hpp"
#include "qcov/polyring.hpp"

namespace qcov {

struct FormParams {
    unsigned long n;  // half-degree parameter, n >= 1
    unsigned long N;  // transvectant order 2n
    unsigned long M;  // form degree 2n+1
    unsigned long m;  // n+2, the classifier argument

    explicit FormParams(unsigned long n_) : n(n_), N(2 * n_), M(2 * n_ + 1), m(n_ + 2) {
        if (n_ < 1) throw std::domain_error("FormParams: n must be at least 1");
    }
};

class FactorialTable {
  public:
    explicit FactorialTable(unsigned long limit) {
        tab_.reserve(limit + 1);
        tab_.emplace_back(1);
        for (unsigned long k = 1; k <= limit; ++k) tab_.push_back(tab_.back() * k);
    }

    const mpz_class& operator()(unsigned long k) const {
        if (k >= tab_.size()) throw std::domain_error("FactorialTable: out of range");
        return tab_[k];
    }

  private:
    std::vector<mpz_class> tab_;
};

// Factorial weights of the order-2n partials of F: the i-th x-heavy partial
// is alpha_i f_i x + beta_i f_{i+1} z.
inline mpz_class alpha(unsigned long n, unsigned long i) {
    FormParams P(n);
    if (i > P.N) throw std::domain_error("alpha: i out of range");
    return factorial(P.M - i) * factorial(i);
}

inline mpz_class beta(unsigned long n, unsigned long i) {
    FormParams P(n);
    if (i > P.N) throw std::domain_error("beta: i out of range");
    return factorial(P.N - i) * factorial(i + 1);
}

// A x^2 + B xz + C z^2 with IntPoly coefficients in the f-variables.
struct QuadForm {
    IntPoly A, B, C;
};

// Sum of index * exponent over a monomial's variables: the grading in which
// A_n, B_n, C_n are homogeneous (of weights N, N+1, N+2).
inline unsigned long index_weight(const Monomial& mono) {
    unsigned long w = 0;
    for (const auto& [j, e] : mono.exponents()) w += j * e;
    return w;
}

// Production construction: closed-form coefficient sums over i = 0..N.
inline QuadForm q_closed(unsigned long n) {
    FormParams P(n);
    FactorialTable fact(P.M);
    QuadForm q;
    mpz_class sign = 1;
    for (unsigned long i = 0; i <= P.N; ++i, sign = -sign) {
        mpz_class a = fact(P.M - i) * fact(i);
        mpz_class b = fact(P.N - i) * fact(i + 1);
        mpz_class c = sign * binomial(P.N, i);
        q.A.add_term(Monomial::from_factors({i, P.N - i}), c * a * b);
        q.B.add_term(Monomial::from_factors({i, P.N + 1 - i}), c * a * a);
        q.B.add_term(Monomial::from_factors({i + 1, P.N - i}), c * b * b);
        q.C.add_term(Monomial::from_factors({i + 1, P.N + 1 - i}), c * a * b);
    }
    return q;
}

// Partial derivative d^(dx+dz) / dx^dx dz^dz of the generic degree-M form,
// which must come out linear in x, z: returned as (x-part, z-part).
// Multipliers are accumulated as explicit falling-factorial products so this
// path shares no formulas with q_closed.
inline std::pair<IntPoly, IntPoly> derivative_linear_form(unsigned long M, unsigned long dx,
                                                          unsigned long dz) {
    if (dx + dz + 1 != M)
        throw std::domain_error("derivative_linear_form: order must be M-1");
    IntPoly part_x, part_z;
    for (unsigned long j = 0; j <= M; ++j) {
        unsigned long px = M - j, pz = j;
        if (px < dx || pz < dz) continue;
        mpz_class c = 1;
        for (unsigned long t = 0; t < dx; ++t) c *= px - t;
        for (unsigned long t = 0; t < dz; ++t) c *= pz - t;
        unsigned long rx = px - dx, rz = pz - dz;
        if (rx + rz != 1)
            throw integrity_error("derivative_linear_form: non-linear residual degree");
        if (rx == 1)
            part_x.add_term(Monomial::var(j), c);
        else
            part_z.add_term(Monomial::var(j), c);
    }
    return {part_x, part_z};
}

// Verification construction: the order-2n transvectant of F with itself,
// sum over i of (-1)^i C(2n,i) (d^2n F / dx^(2n-i) dz^i)(d^2n F / dx^i dz^(2n-i)),
// assembled from formal derivatives of F.
inline QuadForm q_transvectant(unsigned long n) {
    FormParams P(n);
    QuadForm q;
    mpz_class sign = 1;
    for (unsigned long i = 0; i <= P.N; ++i, sign = -sign) {
        auto [dx_part, dz_part] = derivative_linear_form(P.M, P.N - i, i);
        auto [ex_part, ez_part] = derivative_linear_form(P.M, i, P.N - i);
        mpz_class c = sign * binomial(P.N, i);
        q.A = q.A + scale(c, dx_part * ex_part);
        q.B = q.B + scale(c, dx_part * ez_part + dz_part * ex_part);
        q.C = q.C + scale(c, dz_part * ez_part);
    }
    return q;
}

inline IntPoly discriminant(const QuadForm& q) {
    return q.B * q.B - scale(4, q.A * q.C);
}

// Hessian covariant of the generic cubic (n = 1 ambient):
// H = (F_xx F_zz - F_xz^2) / 4, computed from actual second partials.
inline QuadForm cubic_hessian() {
    auto [xx_x, xx_z] = derivative_linear_form(3, 2, 0);
    auto [xz_x, xz_z] = derivative_linear_form(3, 1, 1);
    auto [zz_x, zz_z] = derivative_linear_form(3, 0, 2);
    QuadForm det;
    det.A = xx_x * zz_x - xz_x * xz_x;
    det.B = xx_x * zz_z + xx_z * zz_x - scale(2, xz_x * xz_z);
    det.C = xx_z * zz_z - xz_z * xz_z;
    QuadForm h;
    h.A = det.A.divide_exact_by_int(4);
    h.B = det.B.divide_exact_by_int(4);
    h.C = det.C.divide_exact_by_int(4);
    return h;
}

// Discriminant of the generic cubic f_0 x^3 + f_1 x^2 z + f_2 x z^2 + f_3 z^3.
inline IntPoly cubic_disc() {
    IntPoly d;
    d.add_term(Monomial::var(1, 2) * Monomial::var(2, 2), 1);
    d.add_term(Monomial::var(0) * Monomial::var(2, 3), -4);
    d.add_term(Monomial::var(1, 3) * Monomial::var(3), -4);
    d.add_term(Monomial::from_factors({0, 1, 2, 3}), 18);
    d.add_term(Monomial::var(0, 2) * Monomial::var(3, 2), -27);
    return d;
}

// The exact scalar c with q_closed(1) = c * cubic_hessian(); determined
// computationally, never assumed.
inline mpz_class hessian_proportionality() {
    QuadForm q1 = q_closed(1);
    QuadForm h = cubic_hessian();
    mpz_class num = q1.A.coefficient_of(Monomial::from_factors({0, 2}));
    mpz_class den = h.A.coefficient_of(Monomial::from_factors({0, 2}));
    if (den == 0 || num % den != 0)
        throw integrity_error("hessian_proportionality: leading coefficients not proportional");
    mpz_class c = num / den;
    if (!(q1.A == scale(c, h.A) && q1.B == scale(c, h.B) && q1.C == scale(c, h.C)))
        throw integrity_error("hessian_proportionality: covariant is not a scalar multiple");
    return c;
}

}  // namespace qcov

#endif
