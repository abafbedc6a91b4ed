#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nfc/specfrob.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace nfc;

namespace {

RegularModel c2_model(const NumberField& K) {
    return RegularModel::create(K, parse_bipoly(K, "Y^2 - T"), 2, 2,
                                {{"e", CycleType({1, 1}), 1}, {"s", CycleType({2}), 1}}, 2, 0);
}

std::vector<ClassRow> s3_rows() {
    return {{"e", CycleType({1, 1, 1}), 1}, {"t", CycleType({1, 2}), 3}, {"c", CycleType({3}), 2}};
}

RegularModel s3_model() {
    auto Q = NumberField::rationals();
    return RegularModel::create(Q, parse_bipoly(Q, "Y^3 + T*Y + T"), 6, 3, s3_rows(), 3, 0);
}

// Shanks' simplest cubics, a regular C3 model of degree |G|.
RegularModel c3_model() {
    auto Q = NumberField::rationals();
    return RegularModel::create(Q, parse_bipoly(Q, "Y^3 - T*Y^2 - (T+3)*Y - 1"), 3, 3,
                                {{"e", CycleType({1, 1, 1}), 1}, {"c", CycleType({3}), 1}, {"c2", CycleType({3}), 1}},
                                2, 0);
}

long squarefree_part(long t) {
    long s = t < 0 ? -1 : 1, a = std::labs(t);
    for (long q = 2; q * q <= a; ++q)
        while (a % (q * q) == 0) a /= q * q;
    return s * a;
}

bool is_square(long t) {
    if (t < 0) return false;
    long r = std::lround(std::sqrt((double)t));
    for (long c = std::max(0L, r - 2); c <= r + 2; ++c)
        if (c * c == t) return true;
    return false;
}

PrimeIdeal rat(u64 p) { return split_prime(NumberField::rationals(), p)[0]; }

}  // namespace

TEST_CASE("model validation") {
    auto Q = NumberField::rationals();
    auto P = parse_bipoly(Q, "Y^2 - T");
    auto rows = std::vector<ClassRow>{{"e", CycleType({1, 1}), 1}, {"s", CycleType({2}), 1}};
    auto code = [&](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::ParseError;
    };
    CHECK(code([&] { RegularModel::create(Q, P, 3, 2, rows, 2, 0); }) == Errc::InvalidInput);
    CHECK(code([&] { RegularModel::create(Q, P, 2, 2, {{"s", CycleType({2}), 2}}, 2, 0); }) == Errc::InvalidInput);
    CHECK(code([&] { RegularModel::create(Q, P, 2, 3, rows, 2, 0); }) == Errc::InvalidInput);
    CHECK(code([&] { RegularModel::create(Q, parse_bipoly(Q, "2*Y^2 - T"), 2, 2, rows, 2, 0); }) == Errc::NotMonic);
    CHECK(code([&] { RegularModel::create(Q, parse_bipoly(Q, "Y^2 - T^2"), 2, 2, rows, 2, 0); }) ==
          Errc::NotIrreducible);
    ModelOptions attest;
    attest.attested_irreducible = true;
    auto R = RegularModel::create(Q, parse_bipoly(Q, "Y^2 - T^2"), 2, 2, rows, 2, 0, attest);
    CHECK(R.irreducibility_witness() == nullptr);

    auto M = c2_model(Q);
    CHECK(M.delta_P() == 1);
    CHECK(M.good_data().distinct_roots == 1);
    CHECK(M.bad_primes() == std::vector<u64>{2});
    REQUIRE(M.irreducibility_witness() != nullptr);
    CHECK(!is_square(M.irreducibility_witness()->c[0].get_si()));

    auto S = s3_model();
    CHECK(S.delta_P() == 3);
    CHECK(S.good_data().distinct_roots == 2);
    CHECK(S.bad_primes() == std::vector<u64>{2, 3});
    CHECK(S.class_weight({CycleType({1, 2})}) == 3);

    auto C = c3_model();
    CHECK(C.delta_P() == 4);  // (T^2 + 3T + 9)^2
    CHECK(C.good_data().distinct_roots == 2);
}

TEST_CASE("specialize examples") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    auto r = specialize(M, Q.from_int(3));
    CHECK(r.disc_value == Q.from_int(12));
    CHECK(r.disc_norm == 12);
    try {
        specialize(M, Q.from_int(0));
        FAIL("branch point accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BranchPoint);
    }
    auto s = specialize(s3_model(), Q.from_int(1));
    CHECK(s.disc_value == Q.from_int(-31));
    CHECK(s.disc_norm == 31);
}

TEST_CASE("frobenius_pattern examples") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    CHECK(frobenius_pattern(M, Q.from_int(3), rat(11)) == CycleType({1, 1}));
    CHECK(frobenius_pattern(M, Q.from_int(3), rat(5)) == CycleType({2}));
    CHECK(frobenius_pattern(s3_model(), Q.from_int(1), rat(2)) == CycleType({3}));
    try {
        frobenius_pattern(M, Q.from_int(3), rat(3));
        FAIL("vanishing discriminant accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotSquarefree);
    }
    auto K = NumberField::create({-2, 0, 1});
    auto MK = c2_model(K);
    try {
        frobenius_pattern(MK, K.from_int(3), degree_one_prime(K, 2, 0));
        FAIL("ramified prime accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadPrime);
    }
}

TEST_CASE("certify_group examples") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    CHECK(certify_group(M, Q.from_int(3), 50) == Certificate::CertifiedG);
    CHECK(certify_group(M, Q.from_int(4), 50) == Certificate::NotG);
    auto d = certify_detail(s3_model(), Q.from_int(1), 10);
    CHECK(d.certificate == Certificate::CertifiedG);
    CHECK(d.irreducible);
    // primes 2, 3, 5, 7 all keep Delta(1) = -31 nonzero
    CHECK(d.patterns.size() == 4);
    CHECK(d.patterns[0].second == CycleType({3}));
    CHECK(d.patterns[1].second == CycleType({1, 2}));
    // only 5 survives at bound 5, and its pattern [2] suffices; below that nothing is observed
    CHECK(certify_group(M, Q.from_int(3), 5) == Certificate::CertifiedG);
    CHECK(certify_group(M, Q.from_int(3), 4) == Certificate::Undecided);
}

TEST_CASE("certification never overclaims against direct oracles") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    int certified = 0, nonsquares = 0;
    for (long t = -300; t <= 300; ++t) {
        if (t == 0) continue;
        auto c = certify_group(M, Q.from_int(t), 200);
        if (is_square(t)) {
            CHECK(c == Certificate::NotG);
        } else {
            ++nonsquares;
            CHECK(c != Certificate::NotG);
            certified += c == Certificate::CertifiedG;
        }
    }
    CHECK(certified == nonsquares);

    // Y^3 + tY + t: reducible iff it has an integer root; S3 requires a nonsquare discriminant.
    auto S = s3_model();
    for (long t = -200; t <= 200; ++t) {
        const long disc = -4 * t * t * t - 27 * t * t;
        if (disc == 0) continue;
        bool has_root = false;
        for (long y = -200; y <= 200; ++y) has_root |= y * y * y + t * y + t == 0;
        auto c = certify_group(S, Q.from_int(t), 200);
        if (c == Certificate::CertifiedG) {
            CHECK_FALSE(has_root);
            CHECK_FALSE(is_square(disc));
        }
        if (has_root) CHECK(c == Certificate::NotG);
    }
}

TEST_CASE("Galois models of degree |G| show equal-part patterns") {
    auto Q = NumberField::rationals();
    auto C = c3_model();
    int certified = 0;
    for (long t = -60; t <= 60; ++t) {
        auto r = analyze(C, Q.from_int(t), 100, 200);
        if (r.certificate != Certificate::CertifiedG) continue;
        ++certified;
        for (auto& [P, c] : r.fingerprint.entries) CHECK(c.all_equal());
    }
    CHECK(certified == 121);
    auto M = c2_model(Q);
    for (long t = 2; t < 80; ++t) {
        if (is_square(t)) continue;
        for (auto& [P, c] : analyze(M, Q.from_int(t), 50, 200).patterns) CHECK(c.all_equal());
    }
}

TEST_CASE("certification is monotone in the prime bound") {
    auto Q = NumberField::rationals();
    auto S = s3_model();
    auto M = c2_model(Q);
    for (long t = -80; t <= 80; ++t) {
        for (auto* m : {&S, &M}) {
            if (Q.is_zero(evaluate(Q, m->disc(), Q.from_int(t)))) continue;
            bool was = false;
            for (u64 X : {8, 20, 50, 120, 300}) {
                bool now = certify_group(*m, Q.from_int(t), X) == Certificate::CertifiedG;
                CHECK((!was || now));
                was = now;
            }
        }
    }
}

TEST_CASE("disc_norm respects the height chain") {
    std::mt19937_64 rng(51);
    for (auto f : {std::vector<mpz_class>{0, 1}, {1, 0, 1}, {-2, 0, 1}}) {
        auto K = NumberField::create(f);
        for (auto* txt : {"Y^2 - T", "Y^3 + T*Y + T", "Y^3 - 3*Y - 2*T"}) {
            auto P = parse_bipoly(K, txt);
            auto D = disc_y(K, P);
            auto h = poly_height(K, D.disc);
            const int rho = K.degree();
            for (int it = 0; it < 60; ++it) {
                std::vector<mpz_class> c;
                for (int i = 0; i < rho; ++i) c.push_back((long)(rng() % 401) - 200);
                auto t = K.from_coords(c);
                auto v = evaluate(K, D.disc, t);
                if (K.is_zero(v)) continue;
                long double B = std::max<long double>(1, K.house(t).value);
                long double bound = std::pow((1.0L + D.delta) * h.Hplus * std::pow(B, (long double)D.delta), rho);
                CHECK(K.abs_norm(v).get_d() <= bound * (1 + 1e-12L));
            }
        }
    }
}

TEST_CASE("fingerprint examples") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    auto f3 = fingerprint(M, Q.from_int(3));
    auto f12 = fingerprint(M, Q.from_int(12));
    auto f5 = fingerprint(M, Q.from_int(5));
    CHECK(f3.prime_bound == 200);
    CHECK(compatible(f3, f12));
    CHECK(f3 == fingerprint(M, Q.from_int(3)));
    CHECK(f3.hash == fingerprint(M, Q.from_int(3)).hash);
    CHECK_FALSE(compatible(f3, f5));
    CHECK(first_difference(f3, f5) == 13);
    // 2 is bad and 3 divides Delta(3) = 12
    CHECK(f3.entries.front().first.p == 5);
}

TEST_CASE("fingerprint soundness against squarefree parts") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    std::mt19937_64 rng(52);
    int same = 0, diff = 0;
    while (same < 100) {
        long u = (long)(rng() % 2001) - 1000, s = 1 + (long)(rng() % 30);
        if (u == 0 || is_square(u)) continue;
        ++same;
        CHECK(compatible(fingerprint(M, Q.from_int(u)), fingerprint(M, Q.from_int(u * s * s))));
    }
    while (diff < 100) {
        long a = (long)(rng() % 20001) - 10000, b = (long)(rng() % 20001) - 10000;
        if (a == 0 || b == 0 || is_square(a) || is_square(b) || squarefree_part(a) == squarefree_part(b)) continue;
        ++diff;
        CHECK_FALSE(compatible(fingerprint(M, Q.from_int(a)), fingerprint(M, Q.from_int(b))));
    }
}

TEST_CASE("fingerprint dedup matches the squarefree-kernel count") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    FingerprintSet set;
    std::map<long, int> kernels;
    int certified = 0;
    for (long t = -100; t <= 100; ++t) {
        if (t == 0) continue;
        auto r = analyze(M, Q.from_int(t), 100, 200);
        if (r.certificate != Certificate::CertifiedG) continue;
        ++certified;
        set.insert(r.fingerprint);
        kernels[squarefree_part(t)]++;
    }
    CHECK(certified == 190);
    CHECK(set.size() == kernels.size());
    CHECK(kernels.size() == 121);
    FingerprintSet eq;
    for (long t : {3, 12, 27}) eq.insert(fingerprint(M, Q.from_int(t)));
    CHECK(eq.size() == 1);
}

TEST_CASE("analyze agrees with the separate operations") {
    auto Q = NumberField::rationals();
    auto S = s3_model();
    for (long t = -30; t <= 30; ++t) {
        auto t0 = Q.from_int(t);
        if (t == 0) continue;
        auto r = analyze(S, t0, 60, 200);
        CHECK(r.certificate == certify_group(S, t0, 60));
        CHECK(r.fingerprint == fingerprint(S, t0, 200));
        CHECK(r.disc_norm == specialize(S, t0).disc_norm);
        for (auto& [P, c] : r.patterns) CHECK(frobenius_pattern(S, t0, P) == c);
    }
}

TEST_CASE("models over a quadratic field") {
    auto K = NumberField::create({1, 0, 1});
    auto M = c2_model(K);
    CHECK(M.bad_primes().front() == 2);
    // -1 = i^2 and 2i = (1+i)^2 are squares in Q(i); 3 is not
    CHECK(certify_group(M, K.from_int(-1), 100) == Certificate::NotG);
    CHECK(certify_group(M, K.from_coords({0, 2}), 100) == Certificate::NotG);
    CHECK(certify_group(M, K.from_int(3), 100) == Certificate::CertifiedG);
    auto a = fingerprint(M, K.from_int(3)), b = fingerprint(M, K.from_int(-3));
    // Q(i, sqrt 3) = Q(i, sqrt -3)
    CHECK(compatible(a, b));
}
