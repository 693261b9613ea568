#ifndef QCOV_POLYRING_HPP
#define QCOV_POLYRING_HPP

// Sparse multivariate polynomials over exact integers in variables
// f_0, f_1, ..., used as the coefficient ring of the quadratic covariant
// and its discriminant.

#include <gmpxx.h>

#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcov/arith.hpp"

namespace qcov {

// Product of variables f_j^e; exponents sorted by index, none zero.
class Monomial {
  public:
    Monomial() = default;

    static Monomial var(unsigned long j, unsigned long e = 1) {
        Monomial m;
        if (e > 0) m.exps_.emplace_back(j, e);
        return m;
    }

    // Product of degree-one factors, repeats allowed: {1,2,2} -> f_1 f_2^2.
    static Monomial from_factors(std::initializer_list<unsigned long> factors) {
        Monomial m;
        for (unsigned long j : factors) m = m * var(j);
        return m;
    }

    bool is_unit() const { return exps_.empty(); }

    unsigned long degree() const {
        unsigned long d = 0;
        for (const auto& [j, e] : exps_) d += e;
        return d;
    }

    const std::vector<std::pair<unsigned long, unsigned long>>& exponents() const {
        return exps_;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        auto ia = a.exps_.begin(), ib = b.exps_.begin();
        while (ia != a.exps_.end() || ib != b.exps_.end()) {
            if (ib == b.exps_.end() || (ia != a.exps_.end() && ia->first < ib->first)) {
                r.exps_.push_back(*ia++);
            } else if (ia == a.exps_.end() || ib->first < ia->first) {
                r.exps_.push_back(*ib++);
            } else {
                r.exps_.emplace_back(ia->first, ia->second + ib->second);
                ++ia, ++ib;
            }
        }
        return r;
    }

    // Lexicographic on the (index, exponent) pair sequence; canonical
    // serialization order, no algebraic meaning.
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

    std::string str() const {
        if (exps_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [j, e] : exps_) {
            if (!first) os << ' ';
            first = false;
            os << "f_" << j;
            if (e > 1) os << '^' << e;
        }
        return os.str();
    }

  private:
    std::vector<std::pair<unsigned long, unsigned long>> exps_;
};

// Finite assignment of integer values to variables; unassigned reads as 0.
class Specialization {
  public:
    Specialization() = default;
    Specialization(std::initializer_list<std::pair<const unsigned long, mpz_class>> init)
        : values_(init) {}

    void set(unsigned long j, mpz_class v) { values_[j] = std::move(v); }

    mpz_class value(unsigned long j) const {
        auto it = values_.find(j);
        return it == values_.end() ? mpz_class(0) : it->second;
    }

    const std::map<unsigned long, mpz_class>& assignments() const { return values_; }

  private:
    std::map<unsigned long, mpz_class> values_;
};

class IntPoly {
  public:
    IntPoly() = default;

    static IntPoly zero() { return IntPoly(); }

    static IntPoly constant(mpz_class c) { return term(std::move(c), Monomial()); }

    static IntPoly var(unsigned long j) { return term(1, Monomial::var(j)); }

    static IntPoly term(mpz_class c, const Monomial& m) {
        IntPoly p;
        if (c != 0) p.terms_.emplace(m, std::move(c));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, mpz_class>& terms() const { return terms_; }

    void add_term(const Monomial& m, const mpz_class& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        IntPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        IntPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend IntPoly operator-(const IntPoly& a) { return IntPoly() - a; }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        IntPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    IntPoly scaled(const mpz_class& c) const {
        IntPoly r;
        if (c == 0) return r;
        for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, c * coeff);
        return r;
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.terms_ == b.terms_; }

    mpz_class coefficient_of(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? mpz_class(0) : it->second;
    }

    // gcd of the absolute values of all coefficients; zero has no content.
    mpz_class content() const {
        if (terms_.empty()) throw std::domain_error("content: zero polynomial");
        mpz_class g = 0;
        for (const auto& [m, c] : terms_) {
            g = gcd(g, c);
            if (g == 1) break;
        }
        return abs(g);
    }

    IntPoly divide_exact_by_int(const mpz_class& d) const {
        if (d == 0) throw std::domain_error("divide_exact_by_int: division by zero");
        IntPoly r;
        for (const auto& [m, c] : terms_) {
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
            if (rem != 0)
                throw integrity_error("divide_exact_by_int: coefficient " + c.get_str() +
                                      " not divisible by " + d.get_str());
            r.terms_.emplace(m, std::move(q));
        }
        return r;
    }

    mpz_class evaluate(const Specialization& s) const {
        mpz_class total = 0;
        for (const auto& [m, c] : terms_) {
            mpz_class prod = c;
            for (const auto& [j, e] : m.exponents()) {
                mpz_class v = s.value(j);
                if (v == 0) {
                    prod = 0;
                    break;
                }
                mpz_class pw;
                mpz_pow_ui(pw.get_mpz_t(), v.get_mpz_t(), e);
                prod *= pw;
            }
            total += prod;
        }
        return total;
    }

    // Coefficient-wise reduction into [0, p).
    IntPoly reduce_mod(unsigned long p) const {
        IntPoly r;
        for (const auto& [m, c] : terms_) {
            mpz_class red;
            mpz_class pz(p);
            mpz_mod(red.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t());
            r.add_term(m, red);
        }
        return r;
    }

    // One term per line, "coeff * f_i^e ...", canonical monomial order.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << '\n';
            first = false;
            os << c.get_str();
            if (!m.is_unit()) os << " * " << m.str();
        }
        return os.str();
    }

  private:
    std::map<Monomial, mpz_class> terms_;
};

inline IntPoly add(const IntPoly& a, const IntPoly& b) { return a + b; }
inline IntPoly mul(const IntPoly& a, const IntPoly& b) { return a * b; }
inline IntPoly scale(const mpz_class& c, const IntPoly& a) { return a.scaled(c); }

}  // namespace qcov

#endif
