#include "nfc/modp.hpp"

#include <boost/functional/hash.hpp>

#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace nfc {

CycleType::CycleType(std::vector<int> p) : parts(std::move(p)) {
    std::sort(parts.begin(), parts.end());
}

int CycleType::degree() const {
    int s = 0;
    for (int x : parts) s += x;
    return s;
}

bool CycleType::all_equal() const {
    for (int x : parts)
        if (x != parts.front()) return false;
    return true;
}

std::string CycleType::str() const {
    std::string s = "[";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(parts[i]);
    }
    return s + "]";
}

CycleType CycleType::parse(const std::string& s0) {
    std::string s = s0;
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos || s[a] != '[' || s[b] != ']')
        throw Error(Errc::ParseError, "cycle type must look like [1 2]: '" + s0 + "'");
    std::istringstream is(s.substr(a + 1, b - a - 1));
    std::vector<int> parts;
    std::string tok;
    while (is >> tok) {
        for (char c : tok)
            if (!std::isdigit((unsigned char)c)) throw Error(Errc::ParseError, "bad cycle length '" + tok + "'");
        int v = std::stoi(tok);
        if (v <= 0) throw Error(Errc::ParseError, "cycle lengths must be positive");
        parts.push_back(v);
    }
    if (parts.empty()) throw Error(Errc::ParseError, "empty cycle type");
    return CycleType(parts);
}

std::string PrimeIdeal::str() const {
    std::ostringstream os;
    os << "(" << p;
    if (residue_degree == 1 && g.size() == 2) {
        os << ", w";
        if (root()) os << "-" << root();
    } else if (g.size() > 2) {
        os << ", g" << residue_degree;
    }
    os << ")";
    return os.str();
}

bool is_unramified(const NumberField& K, u64 p) {
    if (K.is_rational()) return true;
    return !mpz_divisible_ui_p(K.disc().get_mpz_t(), p);
}

std::vector<PrimeIdeal> split_prime(const NumberField& K, u64 p) {
    if (!is_prime(p)) throw Error(Errc::InvalidInput, std::to_string(p) + " is not prime");
    if (!is_unramified(K, p)) throw Error(Errc::RamifiedPrime, std::to_string(p) + " divides disc(f)");
    Fp F(p);
    FPoly<Fp> f;
    for (auto& c : K.def_poly()) f.push_back(F.from_mpz(c));
    std::vector<PrimeIdeal> out;
    for (auto& g : fp_factor_squarefree(F, f, 0)) {
        PrimeIdeal P;
        P.p = p;
        P.g = g;
        P.residue_degree = fp_deg<Fp>(g);
        mpz_ui_pow_ui(P.norm.get_mpz_t(), p, P.residue_degree);
        out.push_back(std::move(P));
    }
    return out;
}

PrimeIdeal degree_one_prime(const NumberField& K, u64 p, u64 r) {
    Fp F(p);
    FPoly<Fp> f;
    for (auto& c : K.def_poly()) f.push_back(F.from_mpz(c));
    if (fp_eval(F, f, r % p) != 0) throw Error(Errc::InvalidInput, "not a root of f mod p");
    PrimeIdeal P;
    P.p = p;
    P.g = {F.neg(r % p), 1};
    P.residue_degree = 1;
    P.norm = mpz_class((unsigned long)p);
    return P;
}

u64 reduce_fp(const PrimeIdeal& P, const AlgInt& a) {
    const u64 p = P.p, r = P.root();
    u64 v = 0;
    for (size_t k = a.c.size(); k-- > 0;) v = (mulmod(v, r, p) + mod_of(a.c[k], p)) % p;
    return v;
}

Fq::E reduce_fq(const PrimeIdeal& P, const AlgInt& a) {
    Fq F = P.residue_field();
    Fq::E v = F.zero(), x = F.zero();
    if (F.k > 1)
        x[1] = 1;
    else
        x[0] = P.root();
    for (size_t k = a.c.size(); k-- > 0;) v = F.add(F.mul(v, x), F.from_mpz(a.c[k]));
    return v;
}

FPoly<Fp> reduce_poly_fp(const PrimeIdeal& P, const UniPoly& f) {
    Fp F(P.p);
    FPoly<Fp> r;
    for (auto& c : f) r.push_back(reduce_fp(P, c));
    fp_trim(F, r);
    return r;
}

FPoly<Fq> reduce_poly_fq(const PrimeIdeal& P, const UniPoly& f) {
    Fq F = P.residue_field();
    FPoly<Fq> r;
    for (auto& c : f) r.push_back(reduce_fq(P, c));
    fp_trim(F, r);
    return r;
}

AlgInt lift_residue(const NumberField& K, const PrimeIdeal& P, const std::vector<u64>& coords) {
    std::vector<mpz_class> c(K.degree(), 0);
    for (size_t i = 0; i < coords.size() && i < c.size(); ++i) c[i] = mpz_class((unsigned long)coords[i]);
    (void)P;
    return K.from_coords(c);
}

namespace {

struct KeyHash {
    size_t operator()(const std::vector<u64>& v) const { return boost::hash_range(v.begin(), v.end()); }
};

struct PatternCache {
    std::shared_mutex mu;
    std::unordered_map<std::vector<u64>, CycleType, KeyHash> map;
};

PatternCache& cache() {
    static PatternCache c;
    return c;
}

constexpr size_t kCacheLimit = 1 << 20;

}  // namespace

CycleType factor_pattern(const PrimeIdeal& P, const UniPoly& Q, u64 seed) {
    std::vector<u64> key{P.p};
    key.insert(key.end(), P.g.begin(), P.g.end());
    key.push_back(~0ull);
    CycleType out;
    if (P.residue_degree == 1) {
        auto a = reduce_poly_fp(P, Q);
        key.insert(key.end(), a.begin(), a.end());
        {
            std::shared_lock lk(cache().mu);
            auto it = cache().map.find(key);
            if (it != cache().map.end()) return it->second;
        }
        out = factor_pattern_ff(Fp(P.p), a, seed);
    } else {
        auto a = reduce_poly_fq(P, Q);
        for (auto& c : a) key.insert(key.end(), c.begin(), c.end());
        {
            std::shared_lock lk(cache().mu);
            auto it = cache().map.find(key);
            if (it != cache().map.end()) return it->second;
        }
        out = factor_pattern_ff(P.residue_field(), a, seed);
    }
    std::unique_lock lk(cache().mu);
    if (cache().map.size() >= kCacheLimit) cache().map.clear();
    cache().map.emplace(std::move(key), out);
    return out;
}

std::size_t pattern_cache_size() {
    std::shared_lock lk(cache().mu);
    return cache().map.size();
}

void clear_pattern_cache() {
    std::unique_lock lk(cache().mu);
    cache().map.clear();
}

std::vector<std::vector<PrimeIdeal>> totally_split_primes(const NumberField& K, u64 P_min, int count, u64 scan_cap) {
    if (count < 1) throw Error(Errc::InvalidInput, "count must be positive");
    std::vector<std::vector<PrimeIdeal>> out;
    const int rho = K.degree();
    u64 scanned = 0;
    for (u64 p = next_prime(std::max<u64>(P_min, 2)); (int)out.size() < count; p = next_prime(p + 1)) {
        if (++scanned > scan_cap)
            throw Error(Errc::SearchExhausted, "no further totally split primes found below " + std::to_string(p));
        if (!is_unramified(K, p)) continue;
        if (rho == 1) {
            out.push_back({degree_one_prime(K, p, mod_of(-K.def_poly()[0], p))});
            continue;
        }
        Fp F(p);
        FPoly<Fp> f;
        for (auto& c : K.def_poly()) f.push_back(F.from_mpz(c));
        FPoly<Fp> x = fp_x(F);
        FPoly<Fp> h = fp_sub(F, fp_powmod(F, x, mpz_class((unsigned long)p), f), x);
        if (fp_deg<Fp>(fp_gcd(F, f, h)) != rho) continue;
        auto ps = split_prime(K, p);
        out.push_back(ps);
    }
    return out;
}

namespace {

template <class F>
bool good_at(const F& f, FPoly<F> d, int delta, int distinct) {
    if (fp_deg<F>(d) != delta) return false;
    if (delta == 0) return true;
    return fp_deg<F>(fp_radical(f, d)) == distinct;
}

}  // namespace

bool is_good_prime(const NumberField& K, const GoodPrimeData& g, const PrimeIdeal& P) {
    if (mpz_divisible_ui_p(g.group_order.get_mpz_t(), P.p)) return false;
    if (!is_unramified(K, P.p)) return false;
    if (P.residue_degree == 1) return good_at(Fp(P.p), reduce_poly_fp(P, g.disc), g.delta_P, g.distinct_roots);
    return good_at(P.residue_field(), reduce_poly_fq(P, g.disc), g.delta_P, g.distinct_roots);
}

int count_prime_ideal_divisors(const NumberField& K, const AlgInt& x) {
    if (K.is_zero(x)) throw Error(Errc::InvalidInput, "zero has infinitely many divisors");
    mpz_class N = K.abs_norm(x);
    if (N == 1) return 0;
    int count = 0;
    for (auto& pz : prime_divisors(N)) {
        if (!pz.fits_ulong_p()) throw Error(Errc::InvalidInput, "norm has a prime factor beyond 64 bits");
        const u64 p = pz.get_ui();
        Fp F(p);
        FPoly<Fp> f, xb;
        for (auto& c : K.def_poly()) f.push_back(F.from_mpz(c));
        for (auto& c : x.c) xb.push_back(F.from_mpz(c));
        fp_trim(F, xb);
        // maximal ideals (p, g(theta)) with g | gcd(f, x) mod p
        FPoly<Fp> common = xb.empty() ? fp_monic(F, f) : fp_gcd(F, f, xb);
        if (fp_deg<Fp>(common) <= 0) continue;
        count += (int)fp_factor_squarefree(F, fp_radical(F, common), 0).size();
    }
    return count;
}

}  // namespace nfc
