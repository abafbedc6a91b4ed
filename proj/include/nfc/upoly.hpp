#pragma once

// Dense univariate polynomials over an exact integral domain given by a ring
// context, with pseudo-division and the subresultant resultant.

#include "nfc/errors.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace nfc {

struct ZRing {
    using E = mpz_class;
    E zero() const { return 0; }
    E one() const { return 1; }
    E from_int(long v) const { return v; }
    bool is_zero(const E& a) const { return sgn(a) == 0; }
    bool eq(const E& a, const E& b) const { return a == b; }
    E add(const E& a, const E& b) const { return a + b; }
    E sub(const E& a, const E& b) const { return a - b; }
    E neg(const E& a) const { return -a; }
    E mul(const E& a, const E& b) const { return a * b; }
    E exact_div(const E& a, const E& b) const {
        if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
            throw Error(Errc::InvalidInput, "ZRing: inexact division");
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
};

template <class Ring>
using Poly = std::vector<typename Ring::E>;

template <class Ring>
void p_trim(const Ring& R, Poly<Ring>& a) {
    while (!a.empty() && R.is_zero(a.back())) a.pop_back();
}

template <class Ring>
int p_deg(const Poly<Ring>& a) {
    return (int)a.size() - 1;
}

template <class Ring>
Poly<Ring> p_add(const Ring& R, const Poly<Ring>& a, const Poly<Ring>& b) {
    Poly<Ring> r(std::max(a.size(), b.size()), R.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = R.add(r[i], b[i]);
    p_trim(R, r);
    return r;
}

template <class Ring>
Poly<Ring> p_sub(const Ring& R, const Poly<Ring>& a, const Poly<Ring>& b) {
    Poly<Ring> r(std::max(a.size(), b.size()), R.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = R.sub(r[i], b[i]);
    p_trim(R, r);
    return r;
}

template <class Ring>
Poly<Ring> p_mul(const Ring& R, const Poly<Ring>& a, const Poly<Ring>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<Ring> r(a.size() + b.size() - 1, R.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (R.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = R.add(r[i + j], R.mul(a[i], b[j]));
    }
    p_trim(R, r);
    return r;
}

template <class Ring>
Poly<Ring> p_scale(const Ring& R, const Poly<Ring>& a, const typename Ring::E& s) {
    Poly<Ring> r;
    r.reserve(a.size());
    for (auto& c : a) r.push_back(R.mul(c, s));
    p_trim(R, r);
    return r;
}

template <class Ring>
Poly<Ring> p_div_scalar(const Ring& R, const Poly<Ring>& a, const typename Ring::E& s) {
    Poly<Ring> r;
    r.reserve(a.size());
    for (auto& c : a) r.push_back(R.exact_div(c, s));
    return r;
}

template <class Ring>
Poly<Ring> p_deriv(const Ring& R, const Poly<Ring>& a) {
    Poly<Ring> r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(R.mul(a[i], R.from_int((long)i)));
    p_trim(R, r);
    return r;
}

template <class Ring>
typename Ring::E p_pow_elem(const Ring& R, typename Ring::E b, unsigned e) {
    typename Ring::E r = R.one();
    while (e) {
        if (e & 1) r = R.mul(r, b);
        e >>= 1;
        if (e) b = R.mul(b, b);
    }
    return r;
}

template <class Ring>
typename Ring::E p_eval(const Ring& R, const Poly<Ring>& a, const typename Ring::E& x) {
    typename Ring::E v = R.zero();
    for (size_t i = a.size(); i-- > 0;) v = R.add(R.mul(v, x), a[i]);
    return v;
}

// lc(b)^(deg a - deg b + 1) * a = q*b + r
template <class Ring>
Poly<Ring> p_prem(const Ring& R, Poly<Ring> a, const Poly<Ring>& b) {
    const int db = p_deg<Ring>(b);
    int da = p_deg<Ring>(a);
    if (da < db) return a;
    const auto& lb = b.back();
    int e = da - db + 1;
    while (!a.empty() && p_deg<Ring>(a) >= db) {
        const int d = p_deg<Ring>(a);
        auto la = a.back();
        for (auto& c : a) c = R.mul(c, lb);
        for (int i = 0; i <= db; ++i) a[d - db + i] = R.sub(a[d - db + i], R.mul(la, b[i]));
        p_trim(R, a);
        --e;
    }
    if (e > 0) a = p_scale(R, a, p_pow_elem(R, lb, (unsigned)e));
    return a;
}

// Exact quotient a / b; throws if b does not divide a.
template <class Ring>
Poly<Ring> p_exact_div(const Ring& R, Poly<Ring> a, const Poly<Ring>& b) {
    if (b.empty()) throw Error(Errc::InvalidInput, "polynomial division by zero");
    const int db = p_deg<Ring>(b);
    if (a.empty()) return {};
    if (p_deg<Ring>(a) < db) throw Error(Errc::InvalidInput, "inexact polynomial division");
    Poly<Ring> q(a.size() - db, R.zero());
    for (int d = p_deg<Ring>(a); d >= db; --d) {
        if (R.is_zero(a[d])) continue;
        auto c = R.exact_div(a[d], b.back());
        q[d - db] = c;
        for (int i = 0; i <= db; ++i) a[d - db + i] = R.sub(a[d - db + i], R.mul(c, b[i]));
    }
    p_trim(R, a);
    if (!a.empty()) throw Error(Errc::InvalidInput, "inexact polynomial division");
    p_trim(R, q);
    return q;
}

// Subresultant PRS. Returns Res(a, b); if last is non-null it receives the
// last nonzero remainder (a multiple of gcd(a, b) over the fraction field).
template <class Ring>
typename Ring::E p_resultant(const Ring& R, Poly<Ring> a, Poly<Ring> b, Poly<Ring>* last = nullptr) {
    using E = typename Ring::E;
    p_trim(R, a);
    p_trim(R, b);
    if (a.empty() || b.empty()) {
        if (last) *last = a.empty() ? b : a;
        return R.zero();
    }
    E s = R.one();
    if (p_deg<Ring>(a) < p_deg<Ring>(b)) {
        std::swap(a, b);
        if ((p_deg<Ring>(a) & 1) && (p_deg<Ring>(b) & 1)) s = R.neg(s);
    }
    if (p_deg<Ring>(b) == 0) {
        if (last) *last = b;
        return R.mul(s, p_pow_elem(R, b[0], (unsigned)p_deg<Ring>(a)));
    }
    E g = R.one(), h = R.one();
    for (;;) {
        const int delta = p_deg<Ring>(a) - p_deg<Ring>(b);
        if ((p_deg<Ring>(a) & 1) && (p_deg<Ring>(b) & 1)) s = R.neg(s);
        Poly<Ring> r = p_prem(R, a, b);
        a = std::move(b);
        E div = R.mul(g, p_pow_elem(R, h, (unsigned)delta));
        b = p_div_scalar(R, r, div);
        g = a.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = R.exact_div(p_pow_elem(R, g, (unsigned)delta), p_pow_elem(R, h, (unsigned)(delta - 1)));
        }
        if (b.empty()) {
            if (last) *last = a;
            return R.zero();
        }
        if (p_deg<Ring>(b) == 0) break;
    }
    if (last) *last = b;
    const int da = p_deg<Ring>(a);
    E lb = b.back();
    E res;
    if (da == 0) {
        res = h;
    } else if (da == 1) {
        res = lb;
    } else {
        res = R.exact_div(p_pow_elem(R, lb, (unsigned)da), p_pow_elem(R, h, (unsigned)(da - 1)));
    }
    return R.mul(s, res);
}

// disc(a) = (-1)^(n(n-1)/2) Res(a, a') / lc(a)
template <class Ring>
typename Ring::E p_discriminant(const Ring& R, const Poly<Ring>& a) {
    const int n = p_deg<Ring>(a);
    if (n < 1) throw Error(Errc::InvalidInput, "discriminant of a constant");
    auto res = p_resultant(R, a, p_deriv(R, a));
    auto d = R.exact_div(res, a.back());
    if (((long)n * (n - 1) / 2) & 1) d = R.neg(d);
    return d;
}

// Degree of gcd(a, b) over the fraction field.
template <class Ring>
int p_gcd_degree(const Ring& R, const Poly<Ring>& a, const Poly<Ring>& b) {
    Poly<Ring> last;
    auto res = p_resultant(R, a, b, &last);
    if (!R.is_zero(res)) return 0;
    return p_deg<Ring>(last);
}

// Polynomials over a base ring, used as a ring themselves (O_K[T]).
template <class Base>
struct PolyRing {
    using E = Poly<Base>;
    Base base;
    explicit PolyRing(Base b) : base(std::move(b)) {}
    E zero() const { return {}; }
    E one() const { return {base.one()}; }
    E from_int(long v) const {
        E r{base.from_int(v)};
        p_trim(base, r);
        return r;
    }
    bool is_zero(const E& a) const { return a.empty(); }
    E add(const E& a, const E& b) const { return p_add(base, a, b); }
    E sub(const E& a, const E& b) const { return p_sub(base, a, b); }
    E neg(const E& a) const { return p_sub(base, E{}, a); }
    E mul(const E& a, const E& b) const { return p_mul(base, a, b); }
    E exact_div(const E& a, const E& b) const { return p_exact_div(base, a, b); }
};

}  // namespace nfc
