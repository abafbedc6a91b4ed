#include "nfc/intutil.hpp"
#include "nfc/errors.hpp"

#include <algorithm>
#include <random>

namespace nfc {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotIrreducible: return "NotIrreducible";
        case Errc::NotMonic: return "NotMonic";
        case Errc::InvalidInput: return "InvalidInput";
        case Errc::PrecisionExhausted: return "PrecisionExhausted";
        case Errc::RamifiedPrime: return "RamifiedPrime";
        case Errc::NotSquarefree: return "NotSquarefree";
        case Errc::SearchExhausted: return "SearchExhausted";
        case Errc::BranchPoint: return "BranchPoint";
        case Errc::BadPrime: return "BadPrime";
        case Errc::DuplicateRationalPrime: return "DuplicateRationalPrime";
        case Errc::InfeasibleData: return "InfeasibleData";
        case Errc::ExponentCap: return "ExponentCap";
        case Errc::RankFull: return "RankFull";
        case Errc::NotSmooth: return "NotSmooth";
        case Errc::DeltaTooSmall: return "DeltaTooSmall";
        case Errc::ParseError: return "ParseError";
    }
    return "Error";
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = (i64)m, nr = (i64)(a % m);
    while (nr) {
        i64 q = r / nr;
        std::swap(t, nt);
        nt -= q * t;
        std::swap(r, nr);
        nr -= q * r;
    }
    if (r != 1) throw Error(Errc::InvalidInput, "invmod: not invertible");
    return (u64)(t < 0 ? t + (i64)m : t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for 64-bit inputs
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime((u64)n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

u64 next_prime(u64 n) {
    if (n <= 2) return 2;
    u64 c = n | 1;
    while (!is_prime(c)) c += 2;
    return c;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

namespace {

mpz_class pollard_brent(const mpz_class& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    std::mt19937_64 rng(seed);
    for (;;) {
        mpz_class y = rng() % 1000003, c = 1 + rng() % 1000003, g = 1, q = 1, x, ys;
        unsigned long r = 1, m = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(const mpz_class& n, std::vector<mpz_class>& out, unsigned long seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    mpz_class d = pollard_brent(n, seed);
    factor_rec(d, out, seed + 1);
    factor_rec(n / d, out, seed + 2);
}

}  // namespace

std::vector<mpz_class> prime_divisors(const mpz_class& n0) {
    mpz_class n = abs(n0);
    std::vector<mpz_class> out;
    if (n == 0) return out;
    for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.push_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    factor_rec(n, out, 7);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

mpz_class ipow(const mpz_class& b, unsigned e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = (double)x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace nfc
