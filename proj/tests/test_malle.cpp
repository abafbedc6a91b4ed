#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nfc/malle.hpp"

#include <cmath>
#include <set>

using namespace nfc;

namespace {

const CycleType split2({1, 1}), inert2({2});

RegularModel c2_model() {
    auto Q = NumberField::rationals();
    return RegularModel::create(Q, parse_bipoly(Q, "Y^2 - T"), 2, 2, {{"e", split2, 1}, {"s", inert2, 1}}, 2, 0);
}

// Chebyshev cubic: discriminant 108(1 - T^2), delta_P = 2.
RegularModel s3_model() {
    auto Q = NumberField::rationals();
    return RegularModel::create(
        Q, parse_bipoly(Q, "Y^3 - 3*Y - 2*T"), 6, 3,
        {{"e", CycleType({1, 1, 1}), 1}, {"t", CycleType({1, 2}), 3}, {"c", CycleType({3}), 2}}, 2, 0);
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
    return r * r == t;
}

long legendre(long a, long p) {
    long r = ((a % p) + p) % p, e = (p - 1) / 2, out = 1;
    for (; e; e >>= 1, r = r * r % p)
        if (e & 1) out = out * r % p;
    return out == p - 1 ? -1 : out;
}

FrobeniusData data_of(std::vector<std::pair<u64, CycleType>> rows) {
    auto Q = NumberField::rationals();
    FrobeniusData d;
    for (auto& [p, c] : rows) d.entries.push_back({degree_one_prime(Q, p, 0), {c}});
    return d;
}

}  // namespace

TEST_CASE("delta_default and check_delta") {
    CHECK(delta_default(c2_model()) == doctest::Approx(96 * std::log(2.0)));
    CHECK(delta_default(c2_model()) == doctest::Approx(66.54).epsilon(1e-3));
    auto Q = NumberField::rationals();
    auto s3 = RegularModel::create(
        Q, parse_bipoly(Q, "Y^3 + T*Y + T"), 6, 3,
        {{"e", CycleType({1, 1, 1}), 1}, {"t", CycleType({1, 2}), 3}, {"c", CycleType({3}), 2}}, 3, 0);
    CHECK(delta_default(s3) == doctest::Approx(9.0 * 1296 * std::log(6.0)));
    CHECK(delta_default(s3) == doctest::Approx(20901).epsilon(1e-4));
    CHECK_NOTHROW(check_delta(c2_model(), 2));
    try {
        check_delta(c2_model(), 1);
        FAIL("expected DeltaTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DeltaTooSmall);
    }
}

TEST_CASE("height_budget") {
    CHECK(height_budget(1e6, 1, 2, 1) == doctest::Approx(1e4));
    CHECK(height_budget(1e4, 1, 2, 1) == doctest::Approx(464.1588833612779));
    CHECK(height_budget(1e4, 2, 2, 1) == doctest::Approx(21.544346900318835));
    CHECK_THROWS_AS(height_budget(1e4, 1, 1, 1), Error);
}

TEST_CASE("ls_slope") {
    using V = std::vector<long double>;
    CHECK(ls_slope(V{0, 1, 2}, V{1, 3, 5}) == doctest::Approx(2));
    CHECK(ls_slope(V{1, 2, 3, 4}, V{2, 2, 2, 2}) == doctest::Approx(0));
    CHECK_THROWS_AS(ls_slope(V{1}, V{1}), Error);
}

TEST_CASE("C2 census matches the squarefree-kernel oracle") {
    auto M = c2_model();
    auto R = count_fields(M, 1e4, 2);
    CHECK(R.B == doctest::Approx(464.1588833612779));
    std::set<long> kernels;
    std::size_t nonsquare = 0;
    for (long t = -464; t <= 464; ++t) {
        if (t == 0 || is_square(t)) continue;
        ++nonsquare;
        kernels.insert(squarefree_part(t));
    }
    CHECK(R.totals.enumerated == 929);
    CHECK(R.totals.branch_skipped == 1);
    CHECK(R.totals.norm_filtered == 0);
    CHECK(R.totals.certified == nonsquare);
    CHECK(R.totals.distinct == kernels.size());
    CHECK(R.totals.distinct >= 10);
    CHECK(R.lower_bound_ok());
    CHECK(R.target_exponent == doctest::Approx(0.25));
    // representatives are distinct kernels, members share the kernel of their representative
    std::set<long> rep_kernels;
    for (auto i : R.reps) rep_kernels.insert(squarefree_part(R.certified[i].t0.c[0].get_si()));
    CHECK(rep_kernels.size() == R.reps.size());
    for (std::size_t i = 0; i < R.certified.size(); ++i)
        CHECK(squarefree_part(R.certified[i].t0.c[0].get_si()) ==
              squarefree_part(R.certified[R.representative[i]].t0.c[0].get_si()));
    for (std::size_t i = 1; i < R.certified.size(); ++i)
        CHECK(R.certified[i - 1].disc_norm <= R.certified[i].disc_norm);
    for (auto& r : R.certified) CHECK(r.disc_norm <= 10000);
}

TEST_CASE("the norm filter binds") {
    auto M = c2_model();
    // |disc| = 4|t| <= 100 keeps |t| <= 25 inside a box of radius 100^(1/1.1)
    auto R = count_fields(M, 100, 1.2);
    const long b = (long)std::floor((double)R.B);
    CHECK(b == 65);
    CHECK(R.totals.enumerated == (std::size_t)(2 * b + 1));
    CHECK(R.totals.norm_filtered == (std::size_t)(2 * (b - 25)));
    for (auto& r : R.certified) CHECK(r.disc_norm <= 100);
}

TEST_CASE("C2 census with a split prescription") {
    auto M = c2_model();
    auto R = count_fields(M, 1e4, 2, data_of({{11, split2}}));
    CHECK(R.totals.distinct >= 10);
    for (auto& r : R.certified) {
        long t = r.t0.c[0].get_si();
        CHECK(legendre(t, 11) == 1);
        CHECK(!is_square(t));
    }
    auto plain = count_fields(M, 1e4, 2);
    CHECK(R.totals.distinct <= plain.totals.distinct);
}

TEST_CASE("C2 lower bound and monotonicity") {
    auto M = c2_model();
    std::size_t prev = 0;
    auto sweep = census_sweep(M, {1e3L, 1e4L, 1e5L}, 2);
    for (auto& R : sweep) {
        CHECK((long double)R.totals.distinct >= std::pow(R.y, 0.25L));
        CHECK(R.totals.distinct >= prev);
        CHECK(R.totals.distinct <= R.totals.certified);
        CHECK(R.totals.certified <= R.totals.enumerated);
        prev = R.totals.distinct;
    }
    CHECK(sweep[0].exponent_fit > 0.25);
    CHECK(sweep[0].exponent_fit == sweep[2].exponent_fit);
}

TEST_CASE("S3 Chebyshev census separates quadratic resolvents") {
    auto M = s3_model();
    CHECK(M.delta_P() == 2);
    auto R = count_fields(M, 1e6, 3);
    CHECK(R.B == doctest::Approx(std::pow(1e6, 1 / 2.5)));
    // over irreducible specializations, distinct squarefree parts of 3(1 - t^2)
    // bound the field count from below
    std::set<long> resolvents;
    std::set<long> ts;
    for (long t = -96; t <= 96; ++t) {
        long d = 108 * (1 - t * t);
        bool root = false;
        for (long y = -12; y <= 12; ++y) root |= y * y * y - 3 * y == 2 * t;
        if (d == 0 || root || is_square(3 * (1 - t * t))) continue;
        resolvents.insert(squarefree_part(3 * (1 - t * t)));
        ts.insert(std::labs(t));
    }
    CHECK(R.totals.distinct >= resolvents.size());
    CHECK(R.totals.distinct <= ts.size());  // t and -t give the same field
    CHECK(R.totals.distinct >= 47);
    for (auto& r : R.certified) CHECK(r.disc_norm <= 1000000);
}

TEST_CASE("workers do not change the census") {
    auto M = s3_model();
    CensusOptions one, many;
    many.workers = 4;
    auto a = count_fields(M, 1e5, 3, {}, one), b = count_fields(M, 1e5, 3, {}, many);
    CHECK(a.totals.distinct == b.totals.distinct);
    REQUIRE(a.certified.size() == b.certified.size());
    for (std::size_t i = 0; i < a.certified.size(); ++i) {
        CHECK(a.certified[i].t0 == b.certified[i].t0);
        CHECK(a.certified[i].fingerprint == b.certified[i].fingerprint);
    }
    CHECK(a.reps == b.reps);
}

TEST_CASE("distinct_ratio") {
    auto M = c2_model();
    auto Q = M.field();
    std::vector<SpecializationRecord> H;
    for (long t = -100; t <= 100; ++t) {
        if (t == 0) continue;
        auto r = analyze(M, Q.from_int(t), 100, 200);
        if (r.certificate == Certificate::CertifiedG) H.push_back(r);
    }
    auto d = distinct_ratio(M, 100, H);
    CHECK(d.H == 190);
    CHECK(d.N == 121);
    CHECK(d.N * std::sqrt(100.0) * std::pow(std::log(100.0), (double)d.gamma) >= 190);
    if (d.gamma > 0) CHECK(d.N * std::sqrt(100.0) * std::pow(std::log(100.0), (double)d.gamma - 0.01) < 190);
    auto one = distinct_ratio(M, 100, {H[0]});
    CHECK(one.N == 1);
    CHECK(one.gamma == 0);
    std::vector<SpecializationRecord> same;
    for (long t : {3, 12, 27}) same.push_back(analyze(M, Q.from_int(t), 100, 200));
    CHECK(distinct_ratio(M, 100, same).N == 1);
}

TEST_CASE("grunwald_search") {
    auto M = c2_model();
    auto Q = M.field();
    auto data = data_of({{5, split2}, {7, inert2}});
    std::vector<Prescription> ps;
    for (auto& [P, a] : data.entries) ps.push_back({P, a, "data"});
    CHECK(meets_prescriptions(M, Q.from_int(19), ps));
    auto R = grunwald_search(M, data, 3);
    REQUIRE(R.solutions.size() == 3);
    std::set<long> kernels;
    for (auto& s : R.solutions) {
        long t = s.t0.c[0].get_si();
        CHECK(std::labs(t) <= 500);
        CHECK(legendre(t, 5) == 1);
        CHECK(legendre(t, 7) == -1);
        CHECK(!is_square(t));
        kernels.insert(squarefree_part(t));
    }
    CHECK(kernels.size() == 3);

    auto R3 = grunwald_search(M, data_of({{5, split2}, {13, split2}, {17, split2}}), 3);
    CHECK(R3.solutions.size() == 3);
    CHECK(R3.height_reached <= 500);
    for (auto& s : R3.solutions)
        for (long p : {5, 13, 17}) CHECK(legendre(s.t0.c[0].get_si(), p) == 1);

    for (u64 p : {2ull, 3ull}) {
        try {
            grunwald_search(M, data_of({{p, split2}}), 1);
            FAIL("expected BadPrime");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::BadPrime);
        }
    }
    GrunwaldOptions tiny;
    tiny.max_height = 4;
    try {
        grunwald_search(M, data_of({{5, split2}, {13, split2}, {17, split2}, {29, inert2}}), 1, tiny);
        FAIL("expected SearchExhausted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SearchExhausted);
    }
}
