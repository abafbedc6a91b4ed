#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nfc/polyring.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace nfc;

namespace {

AlgInt random_element(const NumberField& K, std::mt19937_64& rng, long range) {
    std::uniform_int_distribution<long> d(-range, range);
    std::vector<mpz_class> c;
    for (int i = 0; i < K.degree(); ++i) c.push_back(d(rng));
    return K.from_coords(c);
}

UniPoly linear(const NumberField& K, const AlgInt& r) {
    return {K.neg(r), K.one()};
}

UniPoly umul(const NumberField& K, const UniPoly& a, const UniPoly& b) {
    return p_mul(NFRing(K), a, b);
}

std::set<AlgInt> as_set(const std::vector<AlgInt>& v) {
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("parser and printer") {
    auto Q = NumberField::rationals();
    auto F = parse_bipoly(Q, "Y^2 - T");
    CHECK(F.deg_x1() == 1);
    CHECK(F.deg_x2() == 2);
    CHECK(F.total_degree() == 2);
    CHECK(F.monic_in_x2());
    CHECK(to_string(Q, F) == "Y^2 - T");
    auto G = parse_bipoly(Q, "X2^2-X1^3");
    CHECK(to_string(Q, G, VarStyle::X1X2) == "X2^2 - X1^3");
    CHECK(G.total_degree() == 3);
    CHECK(parse_bipoly(Q, "(T+1)^2") == parse_bipoly(Q, "T^2 + 2*T + 1"));
    CHECK(parse_bipoly(Q, " Y ^ 3 + T * Y + T ") == parse_bipoly(Q, "Y^3+T*Y+T"));
    CHECK_FALSE(parse_bipoly(Q, "2*Y^2 - T").monic_in_x2());
    CHECK_FALSE(parse_bipoly(Q, "T*Y^2 - 1").monic_in_x2());

    auto K = NumberField::create({-2, 0, 1});
    auto H = parse_bipoly(K, "Y^2 - (1+w)*T");
    CHECK(to_string(K, H) == "Y^2 - (1+w)*T");
    CHECK(parse_bipoly(K, to_string(K, H)) == H);
    CHECK(parse_bipoly(K, "w^2") == parse_bipoly(K, "2"));

    for (std::string bad : {"2Y", "Y^", "Y^2 - ", "Z", "(Y", "Y T", "w*Y", ""}) {
        try {
            parse_bipoly(Q, bad);
            FAIL("accepted " << bad);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ParseError);
            CHECK(std::string(e.what()).find("column") != std::string::npos);
        }
    }
}

TEST_CASE("printer round trip on random polynomials") {
    std::mt19937_64 rng(5);
    auto K = NumberField::create({1, 0, 1});
    for (int it = 0; it < 100; ++it) {
        BiPoly F;
        for (int t = 0; t < 5; ++t) bp_add_term(K, F, (int)(rng() % 4), (int)(rng() % 4), random_element(K, rng, 9));
        CHECK(parse_bipoly(K, to_string(K, F)) == F);
        CHECK(parse_bipoly(K, to_string(K, F, VarStyle::X1X2)) == F);
    }
}

TEST_CASE("poly_height examples") {
    auto Q = NumberField::rationals();
    CHECK(poly_height(Q, parse_bipoly(Q, "Y^2 - T")).H == 1);
    CHECK(poly_height(Q, parse_bipoly(Q, "3*Y + 5")).H == 5);
    auto K = NumberField::create({-2, 0, 1});
    auto h = poly_height(K, parse_bipoly(K, "Y^2 - (1+w)*T"));
    CHECK((double)h.H == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(h.Hplus >= 1);
    CHECK(poly_height(Q, parse_bipoly(Q, "0*Y + 0")).Hplus == 1);
}

TEST_CASE("evaluate examples") {
    auto Q = NumberField::rationals();
    auto F = parse_bipoly(Q, "X2^2 - X1^3");
    auto r = evaluate(Q, F, Q.from_int(2), Q.from_int(3));
    CHECK(r.value == Q.from_int(1));
    CHECK(r.l == 2);
    CHECK(evaluate(Q, parse_bipoly(Q, "Y^2 - T"), Q.from_int(4), Q.from_int(2)).value == Q.zero());
    auto K = NumberField::create({-2, 0, 1});
    auto FK = parse_bipoly(K, "X2^2 - X1^3");
    CHECK(evaluate(K, FK, K.from_coords({1, 1}), K.zero()).value == K.from_coords({-7, -5}));
}

TEST_CASE("evaluation height bound") {
    std::mt19937_64 rng(17);
    for (auto f : {std::vector<mpz_class>{0, 1}, {-2, 0, 1}, {1, 0, 1}}) {
        auto K = NumberField::create(f);
        for (int it = 0; it < 200; ++it) {
            BiPoly F;
            int nt = 1 + (int)(rng() % 5);
            for (int t = 0; t < nt; ++t) bp_add_term(K, F, (int)(rng() % 4), (int)(rng() % 4), random_element(K, rng, 6));
            if (F.is_zero()) continue;
            auto x1 = random_element(K, rng, 10), x2 = random_element(K, rng, 10);
            auto r = evaluate(K, F, x1, x2);
            long double bound = r.l * poly_height(K, F).Hplus * std::pow(K.height(x1), (long double)F.deg_x1()) *
                                std::pow(K.height(x2), (long double)F.deg_x2());
            CHECK(K.house(r.value).value <= bound * (1 + 1e-12L));
        }
    }
}

TEST_CASE("disc_y examples") {
    auto Q = NumberField::rationals();
    auto d1 = disc_y(Q, parse_bipoly(Q, "Y^2 - T"));
    CHECK(d1.delta == 1);
    CHECK(d1.disc == UniPoly{Q.zero(), Q.from_int(4)});
    auto d2 = disc_y(Q, parse_bipoly(Q, "Y^3 + T*Y + T"));
    CHECK(d2.delta == 3);
    CHECK(d2.disc == UniPoly{Q.zero(), Q.zero(), Q.from_int(-27), Q.from_int(-4)});
    auto d3 = disc_y(Q, parse_bipoly(Q, "Y^2 - 2"));
    CHECK(d3.delta == 0);
    CHECK(d3.disc == UniPoly{Q.from_int(8)});
}

TEST_CASE("disc_y commutes with specialization") {
    std::mt19937_64 rng(23);
    for (auto f : {std::vector<mpz_class>{0, 1}, {-2, 0, 1}, {1, 0, 1}}) {
        auto K = NumberField::create(f);
        for (auto text : {"Y^2 - T", "Y^3 + T*Y + T", "Y^3 - 3*Y - 2*T", "Y^4 + T^2*Y + w*T - 1", "Y^3 + (1+w)*T^2*Y^2 - T"}) {
            if (K.degree() == 1 && std::string(text).find('w') != std::string::npos) continue;
            auto P = parse_bipoly(K, text);
            auto D = disc_y(K, P);
            for (int it = 0; it < 10; ++it) {
                auto t = random_element(K, rng, 12);
                CHECK(evaluate(K, D.disc, t) == disc_uni(K, bp_specialize_x1(K, P, t)));
            }
        }
    }
}

TEST_CASE("resultant_bivar examples") {
    auto Q = NumberField::rationals();
    auto F = parse_bipoly(Q, "Y^2 - T");
    CHECK(resultant_bivar(Q, F, parse_bipoly(Q, "Y"), Axis::X2) == UniPoly{Q.zero(), Q.from_int(-1)});
    CHECK(resultant_bivar(Q, F, F, Axis::X2).empty());
    auto C = parse_bipoly(Q, "X2^2 - X1^3");
    auto F1 = bp_deriv(Q, C, Axis::X1);
    CHECK(F1 == parse_bipoly(Q, "-3*X1^2"));
    CHECK_FALSE(resultant_bivar(Q, C, F1, Axis::X1).empty());
    CHECK_FALSE(resultant_bivar(Q, C, F1, Axis::X2).empty());
}

TEST_CASE("resultant vanishes exactly on planted common factors") {
    std::mt19937_64 rng(29);
    auto K = NumberField::create({-2, 0, 1});
    auto random_poly = [&](int maxdeg) {
        BiPoly F;
        bp_add_term(K, F, 0, maxdeg, K.one());
        for (int t = 0; t < 4; ++t)
            bp_add_term(K, F, (int)(rng() % 3), (int)(rng() % maxdeg), random_element(K, rng, 5));
        return F;
    };
    for (int it = 0; it < 30; ++it) {
        auto A = random_poly(2), B = random_poly(2), C = random_poly(1);
        auto F = bp_mul(K, A, C), G = bp_mul(K, B, C);
        CHECK(resultant_bivar(K, F, G, Axis::X2).empty());
        // A and B generic: coprime
        auto r = resultant_bivar(K, A, B, Axis::X2);
        if (r.empty()) CHECK(gcd_degree(K, bp_specialize_x1(K, A, K.from_int(7)), bp_specialize_x1(K, B, K.from_int(7))) > 0);
    }
}

TEST_CASE("alg_roots examples") {
    auto Q = NumberField::rationals();
    CHECK(as_set(alg_roots(Q, {Q.from_int(-9), Q.zero(), Q.one()})) == std::set<AlgInt>{Q.from_int(3), Q.from_int(-3)});
    CHECK(alg_roots(Q, {Q.from_int(-2), Q.zero(), Q.one()}).empty());
    auto K = NumberField::create({-2, 0, 1});
    CHECK(as_set(alg_roots(K, {K.from_int(-2), K.zero(), K.one()})) ==
          std::set<AlgInt>{K.from_coords({0, 1}), K.from_coords({0, -1})});
    // repeated and zero roots
    CHECK(alg_roots(Q, {Q.zero(), Q.zero(), Q.one()}) == std::vector<AlgInt>{Q.zero()});
    CHECK(alg_roots(Q, {Q.from_int(9), Q.from_int(-6), Q.one()}) == std::vector<AlgInt>{Q.from_int(3)});
    CHECK_THROWS_AS(alg_roots(Q, {Q.one(), Q.from_int(2)}), Error);
}

TEST_CASE("alg_roots completeness on planted roots") {
    std::mt19937_64 rng(31);
    struct Case {
        std::vector<mpz_class> f;
        UniPoly (*irr)(const NumberField&);
    };
    auto irr_y2m3 = +[](const NumberField& K) { return UniPoly{K.from_int(-3), K.zero(), K.one()}; };
    auto irr_y3m5 = +[](const NumberField& K) { return UniPoly{K.from_int(-5), K.zero(), K.zero(), K.one()}; };
    for (auto c : {Case{{0, 1}, irr_y2m3}, Case{{-2, 0, 1}, irr_y2m3}, Case{{1, 0, 1}, irr_y2m3},
                   Case{{-2, 0, 0, 1}, irr_y2m3}, Case{{1, 1, 1, 1, 1}, irr_y3m5}}) {
        auto K = NumberField::create(c.f);
        for (int it = 0; it < 25; ++it) {
            int k = 1 + (int)(rng() % 3);
            std::set<AlgInt> planted;
            UniPoly Qp = c.irr(K);
            for (int i = 0; i < k; ++i) {
                auto r = random_element(K, rng, 40);
                planted.insert(r);
                Qp = umul(K, Qp, linear(K, r));
            }
            CHECK(as_set(alg_roots(K, Qp)) == planted);
        }
    }
}

TEST_CASE("alg_roots with large roots escalates precision") {
    auto Q = NumberField::rationals();
    mpz_class big("123456789012345678901234567");
    UniPoly P = umul(Q, linear(Q, Q.from_int(big)), linear(Q, Q.from_int(-big + 1)));
    CHECK(as_set(alg_roots(Q, P)) == std::set<AlgInt>{Q.from_int(big), Q.from_int(-big + 1)});
    auto K = NumberField::create({-2, 0, 1});
    AlgInt r = K.from_coords({mpz_class("98765432109876543"), mpz_class("-1234567890123")});
    UniPoly PK = umul(K, linear(K, r), {K.from_int(-3), K.zero(), K.one()});
    CHECK(alg_roots(K, PK) == std::vector<AlgInt>{r});
}

TEST_CASE("roots of specializations respect the Liouville budget") {
    std::mt19937_64 rng(37);
    for (auto f : {std::vector<mpz_class>{0, 1}, {-2, 0, 1}, {1, 0, 1}}) {
        auto K = NumberField::create(f);
        for (auto text : {"Y^2 - T", "Y^2 - 2*T^2 - 1", "Y^3 - T", "Y^2 - T^3"}) {
            auto F = parse_bipoly(K, text);
            auto H = poly_height(K, F).H;
            const int m = F.deg_x1();
            for (int it = 0; it < 40; ++it) {
                AlgInt y = random_element(K, rng, 30);
                // plant t = y^2 etc. where possible, otherwise random
                AlgInt t = it % 2 ? K.mul(y, y) : random_element(K, rng, 900);
                for (auto& root : alg_roots(K, bp_specialize_x1(K, F, t))) {
                    long double budget = 2 * (m + 1) * H * std::pow(K.height(t), (long double)m);
                    CHECK(K.house(root).value <= budget * (1 + 1e-12L));
                    CHECK(K.is_zero(evaluate(K, F, t, root).value));
                }
            }
        }
    }
}

TEST_CASE("shift and derivative helpers") {
    auto Q = NumberField::rationals();
    auto F = parse_bipoly(Q, "Y^2 - T");
    CHECK(bp_shift_x2(Q, F, 6) == parse_bipoly(Q, "(T^6 + Y)^2 - T"));
    CHECK(bp_deriv(Q, F, Axis::X2) == parse_bipoly(Q, "2*Y"));
    CHECK(bp_specialize_x2(Q, F, Q.from_int(3)) == UniPoly{Q.from_int(9), Q.from_int(-1)});
}
