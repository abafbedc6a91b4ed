#pragma once

// Prime ideals of Z[theta] above unramified rational primes, reduction of
// O_K data modulo a prime, and factorization patterns over residue fields.

#include "nfc/ffield.hpp"
#include "nfc/numfield.hpp"
#include "nfc/polyring.hpp"

#include <string>
#include <vector>

namespace nfc {

struct CycleType {
    std::vector<int> parts;  // ascending

    CycleType() = default;
    explicit CycleType(std::vector<int> p);
    int degree() const;
    bool all_equal() const;
    std::string str() const;  // "[1 2]"
    static CycleType parse(const std::string& s);
    bool operator==(const CycleType& o) const { return parts == o.parts; }
    bool operator!=(const CycleType& o) const { return parts != o.parts; }
    bool operator<(const CycleType& o) const { return parts < o.parts; }
};

struct PrimeIdeal {
    u64 p = 0;
    std::vector<u64> g;  // monic irreducible factor of f mod p, low first
    int residue_degree = 0;
    mpz_class norm;

    u64 root() const { return g[0] ? p - g[0] : 0; }  // residue of theta when residue_degree == 1
    Fq residue_field() const { return Fq(p, g); }
    std::string str() const;
    bool operator==(const PrimeIdeal& o) const { return p == o.p && g == o.g; }
    bool operator<(const PrimeIdeal& o) const { return p != o.p ? p < o.p : g < o.g; }
};

bool is_unramified(const NumberField& K, u64 p);
// Primes of Z[theta] above p, ordered by (residue degree, factor).
std::vector<PrimeIdeal> split_prime(const NumberField& K, u64 p);
// The prime (p, theta - r) for a root r of f mod p.
PrimeIdeal degree_one_prime(const NumberField& K, u64 p, u64 r);

// Reduction modulo a prime.
u64 reduce_fp(const PrimeIdeal& P, const AlgInt& a);
Fq::E reduce_fq(const PrimeIdeal& P, const AlgInt& a);
FPoly<Fp> reduce_poly_fp(const PrimeIdeal& P, const UniPoly& f);
FPoly<Fq> reduce_poly_fq(const PrimeIdeal& P, const UniPoly& f);
// Lift of a residue-field element given by coordinates (degree 1: a single residue).
AlgInt lift_residue(const NumberField& K, const PrimeIdeal& P, const std::vector<u64>& coords);

// Factor degrees of a squarefree polynomial over F (distinct- then equal-degree
// factorization, randomized by seed; the result does not depend on the seed).
template <class F>
CycleType factor_pattern_ff(const F& f, const FPoly<F>& a, u64 seed) {
    FPoly<F> m = fp_monic(f, a);
    if (fp_deg<F>(m) <= 0) return CycleType{};
    if (!fp_is_squarefree(f, m)) throw Error(Errc::NotSquarefree, "polynomial is not squarefree modulo the prime");
    std::vector<int> parts;
    for (auto& g : fp_factor_squarefree(f, m, seed)) parts.push_back(fp_deg<F>(g));
    return CycleType(parts);
}

// Factorization pattern of Q (monic over O_K) reduced modulo P; memoized.
CycleType factor_pattern(const PrimeIdeal& P, const UniPoly& Q, u64 seed = 0);
std::size_t pattern_cache_size();
void clear_pattern_cache();

// Rational primes p >= P_min (ascending) at which f splits into rho distinct
// linear factors, each with its rho degree-one primes.
std::vector<std::vector<PrimeIdeal>> totally_split_primes(const NumberField& K, u64 P_min, int count,
                                                          u64 scan_cap = 2000000);

// Ingredients of the good-prime test for a model P(T, Y).
struct GoodPrimeData {
    UniPoly disc;            // Delta_P(T)
    int delta_P = 0;         // deg Delta_P
    int distinct_roots = 0;  // distinct roots of Delta_P over an algebraic closure of K
    mpz_class group_order;
};
// p does not divide |G|, p unramified, deg(Delta_P mod P) = delta_P and
// Delta_P mod P has as many distinct roots as Delta_P.
bool is_good_prime(const NumberField& K, const GoodPrimeData& g, const PrimeIdeal& P);

// Number of maximal ideals of Z[theta] containing x (x nonzero).
int count_prime_ideal_divisors(const NumberField& K, const AlgInt& x);

}  // namespace nfc
