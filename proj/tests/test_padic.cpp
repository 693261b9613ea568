#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>

#include <vector>

#include "qcov/padic.hpp"

using namespace qcov;

TEST_CASE("content of the base case") {
    ContentReport rep = content_S(1);
    CHECK(rep.S == 192);
    CHECK(rep.factor_map.at(2) == 6);
    CHECK(rep.factor_map.at(3) == 1);
    CHECK(rep.sqf == 3);
    CHECK(rep.predicted_sqf == 3);
    CHECK(rep.theorem_holds);
    CHECK(rep.parity_ok.at(2));
    CHECK(rep.parity_ok.at(3));
}

TEST_CASE("squarefree kernel sequence") {
    std::vector<unsigned long> expected = {3, 1, 5, 1, 7, 1, 3, 1, 11, 1, 13};
    for (unsigned long n = 1; n <= 11; ++n) {
        ContentReport rep = content_S(n);
        CHECK(rep.sqf == expected[n - 1]);
        CHECK(rep.theorem_holds);
        for (const auto& [p, ok] : rep.parity_ok) {
            (void)p;
            CHECK(ok);
        }
    }
    CHECK(content_S(2).factor_map.at(3) == 4);
}

TEST_CASE("valuation profile minima") {
    ValuationProfile prof = valuation_profile(1, 3);
    CHECK(prof.e_min_Q == 0);
    CHECK(prof.e_min_bk == 0);
    CHECK(prof.bk_equals_Q);
    REQUIRE(prof.central_attainers_ok.has_value());
    CHECK(*prof.central_attainers_ok);

    ValuationProfile p9 = valuation_profile(7, 3);
    std::vector<SummandAttainer> expected = {{ScalarFamily::AB, 7},
                                             {ScalarFamily::Alpha2, 7},
                                             {ScalarFamily::Alpha2, 8},
                                             {ScalarFamily::Beta2, 6},
                                             {ScalarFamily::Beta2, 7}};
    CHECK(p9.attainers == expected);
    REQUIRE(p9.central_attainers_ok.has_value());
    CHECK(*p9.central_attainers_ok);
    CHECK(p9.e_min_summand == p9.e_min_bk);

    CHECK_THROWS_AS(valuation_profile(3, 2), std::domain_error);
    CHECK_THROWS_AS(valuation_profile(3, 9), std::domain_error);
}

TEST_CASE("diagonal and coefficient minima coincide for odd primes") {
    for (unsigned long n = 1; n <= 15; ++n)
        for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul}) {
            ValuationProfile prof = valuation_profile(n, p);
            CHECK(prof.e_min_Q <= prof.e_min_bk);
            CHECK(prof.bk_equals_Q);
            CHECK(prof.e_min_summand <= prof.e_min_Q);
        }
}

TEST_CASE("rank-1 reduction at odd prime powers") {
    for (unsigned long n : {1ul, 7ul, 3ul, 5ul}) {
        unsigned long p = is_prime_power(n + 2)->p;
        Rank1Report rep = rank1_check(n, p);
        CHECK(rep.shape_ok);
        CHECK(rep.square_mod_p);
        CHECK(rep.pass);
        CHECK(rep.lambda != 0);
    }
    CHECK_THROWS_AS(rank1_check(2, 3), std::domain_error);
    CHECK_THROWS_AS(rank1_check(4, 3), std::domain_error);
    CHECK_THROWS_AS(rank1_check(7, 5), std::domain_error);
    CHECK_THROWS_AS(rank1_check(2, 2), std::domain_error);
}

TEST_CASE("pair witness collapses the discriminant to a square") {
    WitnessResult w = pair_witness(2, 1);
    CHECK(w.pass);
    mpz_class b1 = b_diag(2, 1);
    CHECK(w.delta_value == b1 * b1);

    WitnessResult w3 = pair_witness(2, 1, 3);
    CHECK(w3.vp_delta == 6);
    CHECK(w3.expected_vp == 6);
    CHECK(w3.pass);

    CHECK(pair_witness(4, 2).pass);

    for (unsigned long n = 1; n <= 8; ++n) {
        FormParams P(n);
        for (unsigned long k = 1; k <= P.N; ++k) {
            if (k == n || k == n + 1) continue;
            WitnessResult res = pair_witness(n, k);
            CHECK(res.pass);
            CHECK(mpz_perfect_square_p(res.delta_value.get_mpz_t()) != 0);
        }
    }

    CHECK_THROWS_AS(pair_witness(3, 3), std::domain_error);
    CHECK_THROWS_AS(pair_witness(3, 4), std::domain_error);
    CHECK_THROWS_AS(pair_witness(3, 0), std::domain_error);
    CHECK_THROWS_AS(pair_witness(3, 7), std::domain_error);
}

TEST_CASE("off-centre witness selection") {
    CHECK(offcentre_witness(4, 5) == 3);
    CHECK(offcentre_witness(4, 3) == 1);  // ternary digit lift with A = 2
    CHECK_THROWS_AS(offcentre_witness(7, 3), std::domain_error);
    CHECK_THROWS_AS(offcentre_witness(1, 5), std::domain_error);
    CHECK_THROWS_AS(offcentre_witness(4, 4), std::domain_error);

    for (unsigned long n = 2; n <= 20; ++n) {
        FormParams P(n);
        for (unsigned long p : primes_up_to(P.M)) {
            if (p < 3) continue;
            std::optional<PrimePower> pp = is_prime_power(P.m);
            if (pp && pp->p == p) continue;
            std::optional<unsigned long> scan = offcentre_min_index(n, p);
            if (p >= 5) REQUIRE(scan.has_value());
            if (!scan) continue;
            unsigned long k0 = offcentre_witness(n, p);
            CHECK(k0 != n);
            CHECK(k0 != n + 1);
            long e = static_cast<long>(vp(p, b_diag(n, *scan)));
            CHECK(static_cast<long>(vp(p, b_diag(n, k0))) == e);
        }
    }
}

TEST_CASE("ternary witness satisfies the digit-lift invariants") {
    for (unsigned long n = 2; n <= 30; ++n) {
        FormParams P(n);
        if (P.m % 3 != 0) continue;
        std::optional<PrimePower> pp = is_prime_power(P.m);
        if (pp && pp->p == 3) continue;
        unsigned long k0 = offcentre_witness(n, 3);
        CHECK(k0 % 3 != 0);
        CHECK(k0 <= n - 1);
        unsigned long best = 0;
        for (unsigned long j = 1; j <= P.N; ++j)
            if (j % 3 != 0) best = std::max(best, vp_binomial(3, P.N, j));
        CHECK(vp_binomial(3, P.N, k0) == best);
        // indices divisible by 3 sit at least two levels higher
        for (unsigned long c = 1; 3 * c <= P.N; ++c)
            if (3 * c + 1 <= P.N)
                CHECK(vp(3, b_diag(n, 3 * c)) >= vp(3, b_diag(n, 3 * c + 1)) + 2);
    }
}

TEST_CASE("deformation witness has odd valuation one above the floor") {
    for (unsigned long n : {1ul, 3ul, 5ul, 7ul}) {
        WitnessResult w = deformation_witness(n);
        CHECK(w.pass);
        CHECK(w.vp_delta == w.expected_vp);
        CHECK(w.vp_delta % 2 == 1);
    }
    WitnessResult base = deformation_witness(1);
    CHECK(base.vp_delta == 1);

    CHECK_THROWS_AS(deformation_witness(2), std::domain_error);
    CHECK_THROWS_AS(deformation_witness(4), std::domain_error);
}

TEST_CASE("satellite diagonal coefficient sits one level above the minimum") {
    CHECK(offcentre_valuation_check(7));    // m = 9
    CHECK(offcentre_valuation_check(23));   // m = 25
    CHECK(offcentre_valuation_check(25));   // m = 27
    CHECK_THROWS_AS(offcentre_valuation_check(3), std::domain_error);
    CHECK_THROWS_AS(offcentre_valuation_check(4), std::domain_error);
    CHECK_THROWS_AS(offcentre_valuation_check(2), std::domain_error);
}

TEST_CASE("even prime decomposition") {
    P2Report r1 = p2_analysis(1);
    CHECK(r1.cont_G == 4);
    CHECK(r1.cont_A == 8);
    CHECK_FALSE(r1.m_is_2power);
    CHECK(r1.case_consistent);
    CHECK(r1.v2_S == 6);
    CHECK(r1.pass);

    P2Report r2 = p2_analysis(2);
    CHECK(r2.m_is_2power);
    CHECK(r2.caseB_core_v2 == 2);
    CHECK(r2.pass);

    P2Report r4 = p2_analysis(4);
    CHECK(r4.lemma_j0_applicable);
    CHECK(r4.j0 == 2);
    CHECK(r4.pass);

    P2Report r6 = p2_analysis(6);
    CHECK(r6.m_is_2power);
    CHECK(r6.caseB_k0 == 10);
    CHECK(r6.pass);

    for (unsigned long n = 1; n <= 14; ++n) {
        P2Report rep = p2_analysis(n);
        CHECK(rep.pass);
        CHECK(rep.v2_even);
        if (n <= 10) CHECK(content_S(n).factor_map.at(2) == rep.v2_S);
    }
}

TEST_CASE("parity audit per prime") {
    ParityReport r1 = parity_theorem_check(1);
    CHECK(r1.pass);
    for (const ParityEntry& e : r1.entries) {
        if (e.p == 2) CHECK((e.v == 6 && !e.expect_odd));
        if (e.p == 3) CHECK((e.v == 1 && e.expect_odd));
    }
    CHECK(parity_theorem_check(2).pass);
    CHECK(parity_theorem_check(3).pass);
    for (unsigned long n = 1; n <= 12; ++n) CHECK(parity_theorem_check(n).pass);
}

TEST_CASE("prime class routing") {
    PrimeWitnessReport def = witness_for(7, 3);
    CHECK(def.cls == "deformation");
    CHECK(def.pass);
    CHECK(def.vp_S == def.expected_vp_S);
    CHECK(def.vp_S % 2 == 1);

    PrimeWitnessReport tern = witness_for(4, 3);
    CHECK(tern.cls == "ternary-pair");
    CHECK(tern.pass);
    REQUIRE(tern.witness.has_value());
    CHECK(tern.witness->kind == "pair");

    PrimeWitnessReport off = witness_for(2, 7);
    CHECK(off.cls == "offcentre-pair");
    CHECK(off.pass);

    PrimeWitnessReport central = witness_for(2, 3);
    CHECK(central.cls == "central-only");
    CHECK(central.pass);
    CHECK(central.vp_S == 4);

    PrimeWitnessReport two = witness_for(2, 2);
    CHECK(two.cls == "p2");
    CHECK(two.pass);
}
