#pragma once

// Integral points of bounded house on plane curves F(X1, X2) = 0 over O_K:
// exact counts, the specialization count N_T, the T^E shift and the
// determinant-method cover by auxiliary polynomials.

#include "nfc/modp.hpp"

#include <string>
#include <utility>
#include <vector>

namespace nfc {

struct Point {
    AlgInt x1, x2;
    bool operator==(const Point& o) const { return x1 == o.x1 && x2 == o.x2; }
    bool operator<(const Point& o) const { return x1 != o.x1 ? x1 < o.x1 : x2 < o.x2; }
};

struct PointCount {
    std::size_t count = 0;
    std::vector<Point> points;  // sorted
};
// R(F, B): x1 over the house box, x2 among the O_K-roots of F(x1, Y) with house <= B.
PointCount count_points(const NumberField& K, const BiPoly& F, long double B);

// c d^8 (log B)^3 B^(rho/d)
long double theorem_c_rhs(int d, long double B, int rho, long double c_fit);

// 2(m+1) H(F) H(t)^m, the bound on the house of any root of F(t, Y).
long double liouville_budget(const NumberField& K, const BiPoly& F, const AlgInt& t);

struct SpecPointCount {
    std::size_t count = 0;          // t with F(t, Y) having a root in O_K
    std::size_t roots_checked = 0;  // roots compared against the budget
    std::size_t violations = 0;
    std::vector<std::pair<AlgInt, AlgInt>> hits;  // (t, root)
};
SpecPointCount count_specialization_points(const NumberField& K, const BiPoly& F, long double B);
// Same bookkeeping over an explicit list of t.
SpecPointCount check_specialization_roots(const NumberField& K, const BiPoly& F, const std::vector<AlgInt>& ts);

struct ShiftResult {
    BiPoly G;  // F(T, T^E + Y)
    int E = 0;
    long double H = 0, L1 = 0, L2 = 0;
};
ShiftResult cor_c_shift(const NumberField& K, const BiPoly& F, int cap = 64);

// x1 = f_m(x2) mod p^m near a smooth residue point, as a series in Z = X2 - t2.
struct HenselSeries {
    u64 p = 0;
    int m = 0;
    mpz_class modulus;  // p^m
    mpz_class theta;    // image of theta in Z/p^m (root of f lifted from the prime)
    u64 t1 = 0, t2 = 0;
    std::vector<mpz_class> coeffs;  // of Z^0 .. Z^(m-1)

    mpz_class reduce(const AlgInt& a) const;  // O_K -> Z/p^m
    mpz_class eval(const mpz_class& x2) const;
};
HenselSeries hensel_series(const NumberField& K, const BiPoly& F, const PrimeIdeal& P, u64 t1, u64 t2, int m);

struct CoverOptions {
    u64 P_cap = 1ull << 31;
    int m_cap = 64;
    u64 split_scan_cap = 2000000;
    bool smooth_census = true;  // enumerate all smooth residue points per prime
};

struct CoverCell {
    PrimeIdeal P;
    u64 t1 = 0, t2 = 0;
    std::size_t L = 0;  // |S(t)|
    int rank = 0;
    std::size_t aux_index = 0;
    bool vanishes = false;
    bool coprime = false;
    bool hensel_ok = false;
};

struct CoverPrime {
    PrimeIdeal P;
    u64 smooth_points = 0;  // residue points with F = 0 and dF/dX1 != 0 (0 if not enumerated)
    u64 lang_weil = 0;      // 2 d^3 p
    std::size_t cells = 0;
    bool hypothesis_ok = false;  // p^(E(E-1)/2) >= (E^E B^E')^rho
};

struct CoverReport {
    int d = 0, D = 0, m1 = 0, m2 = 0, E = 0, E_prime = 0, r = 0, hensel_m = 0;
    bool hensel_capped = false;
    long double hB = 0;
    long double P_formula = 0;
    u64 P = 0;
    std::string regime;  // "formula" or "capped"
    std::size_t points = 0;
    std::vector<std::pair<int, int>> monomials;  // the set script-E
    std::vector<BiPoly> aux_polys;               // aux_polys[0] = dF/dX1
    std::size_t k = 0;
    std::vector<CoverPrime> primes;
    std::vector<CoverCell> cells;
    std::vector<int> ranks_full_rows;  // ranks of matrices with at least E rows
    bool coverage_ok = false;
    bool coprimality_ok = false;
    bool rank_ok = true;
    mpz_class bezout_bound;  // k d D
};
CoverReport detmethod_cover(const NumberField& K, const BiPoly& F, long double B, int D, const CoverOptions& opt = {});
// [d log B] + 1
int default_D(int d, long double B);

// Fraction-free elimination over O_K: rank and, when deficient, a nonzero kernel vector.
struct KernelResult {
    int rank = 0;
    std::vector<AlgInt> kernel;  // empty when rank equals the column count
};
KernelResult ok_kernel(const NumberField& K, std::vector<std::vector<AlgInt>> A, int cols);

}  // namespace nfc
