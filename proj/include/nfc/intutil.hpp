#pragma once

// Rational-integer helpers: primes, factoring, modular arithmetic.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace nfc {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (unsigned __int128)a * b % m; }
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);
inline u64 mod_of(const mpz_class& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }
inline u64 mod_of(i64 z, u64 p) {
    i64 r = z % (i64)p;
    return r < 0 ? (u64)(r + (i64)p) : (u64)r;
}

bool is_prime(u64 n);
bool is_prime(const mpz_class& n);
u64 next_prime(u64 n);  // smallest prime >= n
std::vector<u64> primes_up_to(u64 n);

// Distinct prime divisors of |n| in increasing order; n != 0.
std::vector<mpz_class> prime_divisors(const mpz_class& n);

mpz_class ipow(const mpz_class& b, unsigned e);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nfc
