#pragma once

// Finite fields F_p and F_p[x]/(g), and dense polynomials over them:
// gcd, radicals, distinct-degree and equal-degree factorization.

#include "nfc/intutil.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace nfc {

struct Fp {
    using E = u64;
    u64 p;
    explicit Fp(u64 p_) : p(p_) {}
    E zero() const { return 0; }
    E one() const { return 1 % p; }
    E from_int(i64 v) const { return mod_of(v, p); }
    E from_mpz(const mpz_class& v) const { return mod_of(v, p); }
    E add(E a, E b) const {
        E s = a + b;
        return s >= p ? s - p : s;
    }
    E sub(E a, E b) const { return a >= b ? a - b : a + p - b; }
    E neg(E a) const { return a ? p - a : 0; }
    E mul(E a, E b) const { return mulmod(a, b, p); }
    E inv(E a) const { return invmod(a, p); }
    bool is_zero(E a) const { return a == 0; }
    bool eq(E a, E b) const { return a == b; }
    E pth_root(E a) const { return a; }
    int ext_degree() const { return 1; }
    mpz_class order() const { return mpz_class((unsigned long)p); }
    template <class Rng>
    E random(Rng& rng) const { return rng() % p; }
};

// F_q with q = p^k, elements are residues modulo the monic irreducible g.
struct Fq {
    using E = std::vector<u64>;
    u64 p;
    int k;
    std::vector<u64> g;  // monic, degree k, low first
    Fq(u64 p_, std::vector<u64> g_) : p(p_), k((int)g_.size() - 1), g(std::move(g_)) {}
    E zero() const { return E(k, 0); }
    E one() const {
        E e(k, 0);
        e[0] = 1 % p;
        return e;
    }
    E from_int(i64 v) const {
        E e(k, 0);
        e[0] = mod_of(v, p);
        return e;
    }
    E from_mpz(const mpz_class& v) const {
        E e(k, 0);
        e[0] = mod_of(v, p);
        return e;
    }
    E add(const E& a, const E& b) const {
        E r(k);
        for (int i = 0; i < k; ++i) {
            u64 s = a[i] + b[i];
            r[i] = s >= p ? s - p : s;
        }
        return r;
    }
    E sub(const E& a, const E& b) const {
        E r(k);
        for (int i = 0; i < k; ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i];
        return r;
    }
    E neg(const E& a) const {
        E r(k);
        for (int i = 0; i < k; ++i) r[i] = a[i] ? p - a[i] : 0;
        return r;
    }
    E mul(const E& a, const E& b) const {
        std::vector<u64> t(2 * k - 1, 0);
        for (int i = 0; i < k; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < k; ++j) t[i + j] = (t[i + j] + mulmod(a[i], b[j], p)) % p;
        }
        for (int d = 2 * k - 2; d >= k; --d) {
            u64 c = t[d];
            if (!c) continue;
            for (int i = 0; i <= k; ++i) t[d - k + i] = (t[d - k + i] + p - mulmod(c, g[i], p)) % p;
        }
        t.resize(k);
        return t;
    }
    E pow(E a, mpz_class e) const {
        E r = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    E inv(const E& a) const {
        mpz_class q = order();
        return pow(a, q - 2);
    }
    bool is_zero(const E& a) const {
        return std::all_of(a.begin(), a.end(), [](u64 v) { return v == 0; });
    }
    bool eq(const E& a, const E& b) const { return a == b; }
    E pth_root(const E& a) const {
        // a^(q/p)
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, k - 1);
        return pow(a, e);
    }
    int ext_degree() const { return k; }
    mpz_class order() const {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), p, k);
        return q;
    }
    template <class Rng>
    E random(Rng& rng) const {
        E e(k);
        for (auto& v : e) v = rng() % p;
        return e;
    }
};

template <class F>
using FPoly = std::vector<typename F::E>;

template <class F>
void fp_trim(const F& f, FPoly<F>& a) {
    while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <class F>
int fp_deg(const FPoly<F>& a) {
    return (int)a.size() - 1;
}

template <class F>
FPoly<F> fp_add(const F& f, const FPoly<F>& a, const FPoly<F>& b) {
    FPoly<F> r(std::max(a.size(), b.size()), f.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
    fp_trim(f, r);
    return r;
}

template <class F>
FPoly<F> fp_sub(const F& f, const FPoly<F>& a, const FPoly<F>& b) {
    FPoly<F> r(std::max(a.size(), b.size()), f.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
    fp_trim(f, r);
    return r;
}

template <class F>
FPoly<F> fp_mul(const F& f, const FPoly<F>& a, const FPoly<F>& b) {
    if (a.empty() || b.empty()) return {};
    FPoly<F> r(a.size() + b.size() - 1, f.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (f.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    fp_trim(f, r);
    return r;
}

template <class F>
FPoly<F> fp_scale(const F& f, const FPoly<F>& a, const typename F::E& s) {
    FPoly<F> r(a.size(), f.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], s);
    fp_trim(f, r);
    return r;
}

// a = q*b + r; b nonzero.
template <class F>
void fp_divmod(const F& f, FPoly<F> a, const FPoly<F>& b, FPoly<F>* q, FPoly<F>* r) {
    if (b.empty()) throw std::domain_error("fp_divmod: division by zero polynomial");
    const int db = fp_deg<F>(b);
    auto ilc = f.inv(b.back());
    FPoly<F> quo;
    if ((int)a.size() > db) quo.assign(a.size() - db, f.zero());
    for (int d = fp_deg<F>(a); d >= db; --d) {
        if (f.is_zero(a[d])) continue;
        auto c = f.mul(a[d], ilc);
        quo[d - db] = c;
        for (int i = 0; i <= db; ++i) a[d - db + i] = f.sub(a[d - db + i], f.mul(c, b[i]));
    }
    fp_trim(f, a);
    fp_trim(f, quo);
    if (q) *q = std::move(quo);
    if (r) *r = std::move(a);
}

template <class F>
FPoly<F> fp_mod(const F& f, const FPoly<F>& a, const FPoly<F>& b) {
    FPoly<F> r;
    fp_divmod(f, a, b, nullptr, &r);
    return r;
}

template <class F>
FPoly<F> fp_div(const F& f, const FPoly<F>& a, const FPoly<F>& b) {
    FPoly<F> q;
    fp_divmod(f, a, b, &q, nullptr);
    return q;
}

template <class F>
FPoly<F> fp_monic(const F& f, const FPoly<F>& a) {
    if (a.empty()) return a;
    return fp_scale(f, a, f.inv(a.back()));
}

template <class F>
FPoly<F> fp_gcd(const F& f, FPoly<F> a, FPoly<F> b) {
    while (!b.empty()) {
        FPoly<F> r = fp_mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(f, a);
}

template <class F>
FPoly<F> fp_deriv(const F& f, const FPoly<F>& a) {
    FPoly<F> r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(f.mul(a[i], f.from_int((i64)(i % f.p))));
    fp_trim(f, r);
    return r;
}

template <class F>
FPoly<F> fp_powmod(const F& f, FPoly<F> base, mpz_class e, const FPoly<F>& m) {
    FPoly<F> r{f.one()};
    r = fp_mod(f, r, m);
    base = fp_mod(f, base, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mod(f, fp_mul(f, r, base), m);
        e >>= 1;
        if (e > 0) base = fp_mod(f, fp_mul(f, base, base), m);
    }
    return r;
}

template <class F>
bool fp_is_one(const F& f, const FPoly<F>& a) {
    return a.size() == 1 && f.eq(a[0], f.one());
}

template <class F>
FPoly<F> fp_x(const F& f) {
    return {f.zero(), f.one()};
}

// f = sum a_{pi} X^{pi}  ->  sum a_{pi}^{1/p} X^i
template <class F>
FPoly<F> fp_pth_root(const F& f, const FPoly<F>& a) {
    FPoly<F> r;
    for (size_t i = 0; i < a.size(); i += f.p) r.push_back(f.pth_root(a[i]));
    fp_trim(f, r);
    return r;
}

// Product of the distinct monic irreducible factors of a (a nonzero).
template <class F>
FPoly<F> fp_radical(const F& f, const FPoly<F>& a0) {
    FPoly<F> a = fp_monic(f, a0);
    if (fp_deg<F>(a) <= 0) return {f.one()};
    FPoly<F> d = fp_deriv(f, a);
    if (d.empty()) return fp_radical(f, fp_pth_root(f, a));
    FPoly<F> c = fp_gcd(f, a, d);
    FPoly<F> w = fp_div(f, a, c);  // factors of multiplicity prime to p
    FPoly<F> y = c;
    for (;;) {
        FPoly<F> z = fp_gcd(f, w, y);
        if (fp_deg<F>(z) <= 0) break;
        y = fp_div(f, y, z);
    }
    w = fp_monic(f, w);
    if (fp_deg<F>(y) <= 0) return w;
    FPoly<F> rest = fp_radical(f, fp_pth_root(f, y));
    return fp_monic(f, fp_mul(f, w, fp_div(f, rest, fp_gcd(f, w, rest))));
}

template <class F>
bool fp_is_squarefree(const F& f, const FPoly<F>& a) {
    if (a.empty()) return false;
    if (fp_deg<F>(a) <= 0) return true;
    FPoly<F> d = fp_deriv(f, a);
    if (d.empty()) return false;
    return fp_deg<F>(fp_gcd(f, a, d)) == 0;
}

// Distinct-degree factorization of a monic squarefree polynomial.
template <class F>
std::vector<std::pair<FPoly<F>, int>> fp_ddf(const F& f, FPoly<F> a) {
    std::vector<std::pair<FPoly<F>, int>> out;
    const mpz_class q = f.order();
    FPoly<F> x = fp_x(f);
    FPoly<F> h = fp_mod(f, x, a);
    int d = 0;
    while (fp_deg<F>(a) >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod(f, h, q, a);
        FPoly<F> g = fp_gcd(f, a, fp_sub(f, h, x));
        if (fp_deg<F>(g) > 0) {
            out.push_back({g, d});
            a = fp_div(f, a, g);
            h = fp_mod(f, h, a);
        }
    }
    if (fp_deg<F>(a) > 0) out.push_back({fp_monic(f, a), fp_deg<F>(a)});
    return out;
}

// Splits a monic squarefree a whose irreducible factors all have degree d.
template <class F, class Rng>
void fp_edf(const F& f, const FPoly<F>& a, int d, Rng& rng, std::vector<FPoly<F>>& out) {
    const int n = fp_deg<F>(a);
    if (n == d) {
        out.push_back(a);
        return;
    }
    const mpz_class q = f.order();
    for (;;) {
        FPoly<F> r;
        for (int i = 0; i < n; ++i) r.push_back(f.random(rng));
        fp_trim(f, r);
        if (fp_deg<F>(r) <= 0) continue;
        FPoly<F> s;
        if (f.p == 2) {
            // trace to F_2 of F_{q^d}
            const int m = f.ext_degree() * d;
            FPoly<F> t = fp_mod(f, r, a);
            s = t;
            for (int i = 1; i < m; ++i) {
                t = fp_mod(f, fp_mul(f, t, t), a);
                s = fp_add(f, s, t);
            }
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), d);
            e = (e - 1) / 2;
            s = fp_sub(f, fp_powmod(f, r, e, a), FPoly<F>{f.one()});
        }
        FPoly<F> g = fp_gcd(f, a, s);
        int dg = fp_deg<F>(g);
        if (dg > 0 && dg < n) {
            fp_edf(f, g, d, rng, out);
            fp_edf(f, fp_monic(f, fp_div(f, a, g)), d, rng, out);
            return;
        }
    }
}

// Irreducible factors of a squarefree polynomial, monic, in a canonical order.
template <class F>
std::vector<FPoly<F>> fp_factor_squarefree(const F& f, const FPoly<F>& a, u64 seed) {
    std::vector<FPoly<F>> out;
    std::mt19937_64 rng(seed);
    for (auto& [g, d] : fp_ddf(f, fp_monic(f, a))) fp_edf(f, g, d, rng, out);
    std::sort(out.begin(), out.end(), [](const FPoly<F>& x, const FPoly<F>& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
    });
    return out;
}

template <class F>
std::vector<int> fp_degree_pattern(const F& f, const FPoly<F>& a) {
    std::vector<int> parts;
    for (auto& [g, d] : fp_ddf(f, fp_monic(f, a)))
        for (int i = 0; i < fp_deg<F>(g) / d; ++i) parts.push_back(d);
    std::sort(parts.begin(), parts.end());
    return parts;
}

// Full factorization with multiplicities: (irreducible monic, exponent).
template <class F>
std::vector<std::pair<FPoly<F>, int>> fp_factor(const F& f, const FPoly<F>& a, u64 seed) {
    std::vector<std::pair<FPoly<F>, int>> out;
    FPoly<F> rad = fp_radical(f, a);
    for (auto& g : fp_factor_squarefree(f, rad, seed)) {
        int e = 0;
        FPoly<F> t = fp_monic(f, a);
        for (;;) {
            FPoly<F> q, r;
            fp_divmod(f, t, g, &q, &r);
            if (!r.empty()) break;
            ++e;
            t = std::move(q);
        }
        out.push_back({g, e});
    }
    return out;
}

template <class F>
typename F::E fp_eval(const F& f, const FPoly<F>& a, const typename F::E& x) {
    typename F::E v = f.zero();
    for (size_t i = a.size(); i-- > 0;) v = f.add(f.mul(v, x), a[i]);
    return v;
}

}  // namespace nfc
