#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nfc/hilbert.hpp"

#include <cmath>
#include <random>

using namespace nfc;

namespace {

RegularModel c2_model(const NumberField& K) {
    return RegularModel::create(K, parse_bipoly(K, "Y^2 - T"), 2, 2,
                                {{"e", CycleType({1, 1}), 1}, {"s", CycleType({2}), 1}}, 2, 0);
}

RegularModel s3_model() {
    auto Q = NumberField::rationals();
    return RegularModel::create(Q, parse_bipoly(Q, "Y^3 + T*Y + T"), 6, 3,
                                {{"e", CycleType({1, 1, 1}), 1}, {"t", CycleType({1, 2}), 3}, {"c", CycleType({3}), 2}},
                                3, 0);
}

PrimeIdeal rat(u64 p) { return split_prime(NumberField::rationals(), p)[0]; }

const CycleType split2({1, 1}), inert2({2});

bool qr(long t, long p) {
    long a = ((t % p) + p) % p;
    for (long x = 1; x < p; ++x)
        if (x * x % p == a) return true;
    return false;
}

bool is_square(long t) {
    if (t < 0) return false;
    long r = std::lround(std::sqrt((double)t));
    return r * r == t;
}

}  // namespace

TEST_CASE("base_primes examples") {
    auto Q = NumberField::rationals();
    auto b = base_primes(c2_model(Q));
    CHECK(b.p_minus1 == 2);
    CHECK(b.p0 == 7);
    auto s = base_primes(s3_model());
    CHECK(s.p_minus1 == 2);
    CHECK(s.p0 == 11);
    auto K2 = NumberField::create({-2, 0, 1});
    CHECK(base_primes(c2_model(K2)).p_minus1 == 2);
    auto K3 = NumberField::create({-3, 0, 1});  // disc 12
    auto b3 = base_primes(c2_model(K3));
    CHECK(b3.p_minus1 == 3);
    CHECK(b3.p0 == 11);
    // r^2 g^2 dominates for a genus-one descriptor
    auto Mg = RegularModel::create(Q, parse_bipoly(Q, "Y^2 - T"), 2, 2, {{"e", split2, 1}, {"s", inert2, 1}}, 4, 1);
    CHECK(base_primes(Mg).p_minus1 == 17);
}

TEST_CASE("tau_cosets examples") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    auto a = tau_cosets(M, rat(13), {split2});
    CHECK(a.residues == std::vector<u64>{1, 3, 4, 9, 10, 12});
    CHECK(a.nu == 6);
    CHECK(a.lower == doctest::Approx(4.0));
    CHECK(a.upper == doctest::Approx(7.0));
    CHECK(a.bounds_ok);
    CHECK(tau_cosets(M, rat(13), {inert2}).nu == 6);
    CHECK(tau_cosets(M, rat(13), {split2, inert2}).nu == 12);
    try {
        tau_cosets(M, rat(2), {split2});
        FAIL("bad prime accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadPrime);
    }
}

TEST_CASE("tau sizes for C2 equal the quadratic-residue counts") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    int tested = 0;
    for (u64 p : primes_up_to(199)) {
        if (!M.is_good(rat(p))) continue;
        ++tested;
        auto s = tau_cosets(M, rat(p), {split2});
        auto i = tau_cosets(M, rat(p), {inert2});
        CHECK(s.nu == (p - 1) / 2);
        CHECK(i.nu == (p - 1) / 2);
        CHECK(s.bounds_ok);
        CHECK(i.bounds_ok);
        for (u64 r : s.residues) CHECK(qr((long)r, (long)p));
        for (u64 r : i.residues) CHECK_FALSE(qr((long)r, (long)p));
    }
    CHECK(tested == 45);
}

TEST_CASE("S3 tau sets partition the non-branch residues within the bounds") {
    auto S = s3_model();
    for (u64 p : primes_up_to(300)) {
        if (!S.is_good(rat(p))) continue;
        u64 total = 0;
        for (auto& c : S.group_types()) {
            auto r = tau_cosets(S, rat(p), {c});
            CHECK(r.bounds_ok);
            total += r.nu;
        }
        // branch residues: roots of -T^2 (4T + 27) mod p
        CHECK(total == p - 2);
    }
}

TEST_CASE("coset law: every lift of an admissible residue is admissible") {
    std::mt19937_64 rng(61);
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    auto S = s3_model();
    for (auto* m : {&M, &S})
        for (u64 p : {5, 7, 11, 13, 29}) {
            if (!m->is_good(rat(p))) continue;
            for (auto& c : m->group_types()) {
                auto tau = tau_cosets(*m, rat(p), {c});
                for (u64 r : tau.residues)
                    for (int k = 0; k < 5; ++k) {
                        long t = (long)r + (long)p * ((long)(rng() % 2001) - 1000);
                        CHECK(frobenius_pattern(*m, Q.from_int(t), rat(p)) == c);
                    }
            }
        }
    // Q(i), prime (13, i - 5): lifts a + 13x + (i - 5)y
    auto K = NumberField::create({1, 0, 1});
    auto MK = c2_model(K);
    PrimeIdeal P = degree_one_prime(K, 13, 5);
    for (auto& c : MK.group_types()) {
        auto tau = tau_cosets(MK, P, {c});
        CHECK(tau.nu == 6);
        for (u64 r : tau.residues)
            for (int k = 0; k < 5; ++k) {
                auto x = K.from_coords({(long)(rng() % 41) - 20, (long)(rng() % 41) - 20});
                auto y = K.from_coords({(long)(rng() % 41) - 20, (long)(rng() % 41) - 20});
                auto t = K.add(K.add(K.from_int((long)r), K.mul(K.from_int(13), x)),
                               K.mul(K.sub(K.theta(), K.from_int(5)), y));
                CHECK(frobenius_pattern(MK, t, P) == c);
            }
    }
}

TEST_CASE("crt_assemble examples") {
    auto Q = NumberField::rationals();
    auto S = crt_assemble(Q, {{rat(3), {1, 2}}, {rat(5), {1}}});
    CHECK(S.modulus_rational == 15);
    CHECK(S.count == 2);
    CHECK(S.residues() == std::vector<mpz_class>{1, 11});
    auto one = crt_assemble(Q, {{rat(7), {2, 4}}});
    CHECK(one.residues() == std::vector<mpz_class>{2, 4});
    auto T = crt_assemble(Q, {{rat(3), {1}}, {rat(5), {2}}, {rat(7), {3}}});
    CHECK(T.residues() == std::vector<mpz_class>{52});
    try {
        crt_assemble(Q, {{rat(3), {1}}, {rat(3), {2}}});
        FAIL("duplicate prime accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateRationalPrime);
    }
    auto K = NumberField::create({1, 0, 1});
    auto sp = split_prime(K, 5);
    try {
        crt_assemble(K, {{sp[0], {1}}, {sp[1], {2}}});
        FAIL("two primes over 5 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateRationalPrime);
    }
}

TEST_CASE("representatives examples and laws") {
    auto Q = NumberField::rationals();
    auto S = crt_assemble(Q, {{rat(3), {1, 2}}, {rat(5), {1}}});
    auto r = representatives(S, 15);
    CHECK(r.kept == std::vector<AlgInt>{Q.from_int(1), Q.from_int(11)});
    auto r10 = representatives(S, 10);
    CHECK(r10.kept == std::vector<AlgInt>{Q.from_int(1)});
    CHECK(r10.excluded == std::vector<AlgInt>{Q.from_int(11)});

    // Q(i) modulo (5, i - 2): residue 1 has five canonical candidates in [1,5]^2
    auto K = NumberField::create({1, 0, 1});
    auto P = degree_one_prime(K, 5, 2);
    auto SK = crt_assemble(K, {{P, {1}}});
    auto rk = representatives(SK, 100);
    REQUIRE(rk.kept.size() == 1);
    auto t = rk.kept[0];
    CHECK(reduce_fp(P, t) == 1);
    // brute force over [1,5]^2
    long double best = 1e9;
    for (long a = 1; a <= 5; ++a)
        for (long b = 1; b <= 5; ++b) {
            auto x = K.from_coords({a, b});
            if (reduce_fp(P, x) == 1) best = std::min(best, K.house(x).value);
        }
    CHECK(K.house(t).value == doctest::Approx((double)best));

    // count and height laws over Q, Q(i), Q(sqrt 2)
    for (auto f : {std::vector<mpz_class>{0, 1}, {1, 0, 1}, {-2, 0, 1}}) {
        auto L = NumberField::create(f);
        std::vector<std::pair<PrimeIdeal, std::vector<u64>>> sets;
        for (u64 p : {5ull, 7ull, 17ull, 41ull}) {
            if (!is_unramified(L, p)) continue;
            for (auto& Pi : split_prime(L, p))
                if (Pi.residue_degree == 1) {
                    sets.push_back({Pi, {1, 2, p - 1}});
                    break;
                }
        }
        auto SL = crt_assemble(L, sets);
        auto all = representatives(SL, 1e30L);
        CHECK(mpz_class((unsigned long)all.kept.size()) == SL.count);
        const long double bound = L.degree() * basis_height(L) * SL.modulus_rational.get_d();
        for (auto& x : all.kept) {
            CHECK(SL.contains(x));
            CHECK(L.house(x).value <= bound * (1 + 1e-12L));
        }
    }
}

TEST_CASE("hilbert_enumerate with a split prescription") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    FrobeniusData data{{{rat(11), {split2}}}};
    auto R = hilbert_enumerate(M, 200, data);
    CHECK(R.reverify_failures == 0);
    CHECK(!R.records.empty());
    for (auto& rec : R.records) {
        long t = rec.t0.c[0].get_si();
        CHECK(qr(t, 11));
        CHECK(t % 11 != 0);
        CHECK_FALSE(is_square(t));
        CHECK(rec.certificate == Certificate::CertifiedG);
    }
    // forcing: identity at 3 and the involution at 5
    REQUIRE(R.prescriptions.size() == 3);
    CHECK(R.prescriptions[0].P.p == 3);
    CHECK(R.prescriptions[1].P.p == 5);
    CHECK(R.prescriptions[2].P.p == 11);
}

TEST_CASE("hilbert_enumerate emits exactly the CRT-admissible nonsquares") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    FrobeniusData data{{{rat(11), {inert2}}, {rat(13), {split2}}}};
    auto R = hilbert_enumerate(M, 2000, data);
    CHECK(R.reverify_failures == 0);
    std::vector<long> got, expect;
    for (auto& rec : R.records) got.push_back(rec.t0.c[0].get_si());
    for (long t = -2000; t <= 2000; ++t) {
        if (t == 0 || is_square(t)) continue;
        // forcing conditions: split at 3, inert at 5
        if (((t % 3) + 3) % 3 != 1) continue;
        if (t % 5 == 0 || qr(t, 5)) continue;
        if (t % 11 == 0 || qr(t, 11)) continue;
        if (t % 13 == 0 || !qr(t, 13)) continue;
        expect.push_back(t);
    }
    CHECK(got == expect);
}

TEST_CASE("hilbert_enumerate errors") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    auto code = [&](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::ParseError;
    };
    CHECK(code([&] { hilbert_enumerate(M, 50, FrobeniusData{{{rat(2), {split2}}}}); }) == Errc::InvalidInput);
    CHECK(code([&] { hilbert_enumerate(s3_model(), 50, FrobeniusData{{{rat(3), {CycleType({3})}}}}); }) ==
          Errc::BadPrime);
    CHECK(code([&] { hilbert_enumerate(M, 50, FrobeniusData{{{rat(11), {CycleType({1, 1, 1})}}}}); }) ==
          Errc::InvalidInput);
    // Y^2 - (T^2 + 2): modulo 3 the non-branch residue t = 0 gives the non-square 2
    auto D = RegularModel::create(Q, parse_bipoly(Q, "Y^2 - T^2 - 2"), 2, 2, {{"e", split2, 1}, {"s", inert2, 1}}, 2, 0);
    CHECK(D.is_good(rat(3)));
    CHECK(tau_cosets(D, rat(3), {split2}).nu == 0);
    CHECK(code([&] { hilbert_enumerate(D, 50, FrobeniusData{{{rat(3), {split2}}}}); }) == Errc::InfeasibleData);
}

TEST_CASE("hilbert_enumerate lower-bound sanity and S3 re-verification") {
    auto Q = NumberField::rationals();
    auto M = c2_model(Q);
    for (long double B : {1000.0L, 10000.0L}) {
        auto R = hilbert_enumerate(M, B, {});
        CHECK(R.reverify_failures == 0);
        CHECK((long double)R.records.size() >= B / 16);
    }
    auto S = s3_model();
    auto R = hilbert_enumerate(S, 2000, {});
    CHECK(R.reverify_failures == 0);
    CHECK(!R.records.empty());
    std::set<CycleType> forced;
    for (auto& pr : R.prescriptions)
        if (pr.role != "full") forced.insert(*pr.allowed.begin());
    CHECK(forced.size() == 3);
}

TEST_CASE("hilbert_enumerate over Q(i) with a degree-two prescription") {
    auto K = NumberField::create({1, 0, 1});
    auto M = c2_model(K);
    auto P3 = split_prime(K, 3)[0];  // inert, residue field F_9
    REQUIRE(P3.residue_degree == 2);
    FrobeniusData data{{{P3, {split2}}}};
    auto R = hilbert_enumerate(M, 12, data);
    CHECK(R.direct.size() == 1);
    CHECK(R.reverify_failures == 0);
    CHECK(!R.records.empty());
    for (auto& rec : R.records) CHECK(frobenius_pattern(M, rec.t0, P3) == split2);
}
