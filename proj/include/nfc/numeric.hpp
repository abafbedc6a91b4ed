#pragma once

// Complex arithmetic over several real precisions, and a polynomial root
// finder that returns inclusion radii alongside the approximations.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <limits>
#include <vector>

namespace nfc {

namespace bmp = boost::multiprecision;

using R0 = long double;
using R1 = bmp::number<bmp::cpp_bin_float<128, bmp::digit_base_2>, bmp::et_off>;
using R2 = bmp::number<bmp::cpp_bin_float<256, bmp::digit_base_2>, bmp::et_off>;
using R3 = bmp::number<bmp::cpp_bin_float<512, bmp::digit_base_2>, bmp::et_off>;

constexpr int kTierBits[4] = {64, 128, 256, 512};

// Highest tier whose mantissa fits in the cap; never below tier 0.
inline int tier_for_cap(int cap_bits) {
    int t = 0;
    while (t < 3 && kTierBits[t + 1] <= cap_bits) ++t;
    return t;
}

template <class R>
R eps() {
    return std::numeric_limits<R>::epsilon();
}

template <class R>
R to_real(const mpz_class& z) {
    using std::ldexp;
    const size_t n = mpz_size(z.get_mpz_t());
    R r = 0;
    for (size_t i = n; i-- > 0;) {
        r = ldexp(r, 64);
        r += R((unsigned long long)mpz_getlimbn(z.get_mpz_t(), i));
    }
    return sgn(z) < 0 ? R(-r) : r;
}

template <class R>
long double to_ld(const R& x) {
    return static_cast<long double>(x);
}

// Nearest integer to x.
template <class R>
mpz_class round_to_mpz(const R& x) {
    using std::round;
    R r = round(x);
    std::ostringstream os;
    os << std::fixed << std::setprecision(0) << r;
    std::string s = os.str();
    auto dot = s.find('.');
    if (dot != std::string::npos) s.resize(dot);
    if (s == "-0") s = "0";
    return mpz_class(s);
}

template <class R>
struct Cx {
    R re = 0, im = 0;
    Cx() = default;
    Cx(R r) : re(std::move(r)), im(0) {}
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator-() const { return {-re, -im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator*(const R& s) const { return {re * s, im * s}; }
    Cx operator/(const Cx& o) const {
        R d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    Cx& operator+=(const Cx& o) { return *this = *this + o; }
    Cx& operator-=(const Cx& o) { return *this = *this - o; }
    Cx& operator*=(const Cx& o) { return *this = *this * o; }
};

template <class R>
R cabs(const Cx<R>& z) {
    using std::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
}

template <class R>
Cx<R> cpolar(const R& r, const R& th) {
    using std::cos;
    using std::sin;
    return {r * cos(th), r * sin(th)};
}

template <class R>
struct RootSet {
    std::vector<Cx<R>> z;
    std::vector<R> radius;   // inclusion radius of each disk (may be +inf)
    std::vector<R> cluster;  // bound on distance from z[i] to any root in its cluster
    bool separated = false;  // all disks pairwise disjoint
};

// Computes the inclusion data for approximations z of the roots of the monic
// polynomial with coefficients a (low first, a.back() == 1), where each a[k]
// is known up to aerr[k].
template <class R>
void inclusion_radii(const std::vector<Cx<R>>& a, const std::vector<R>& aerr, RootSet<R>& rs) {
    using std::abs;
    const size_t n = a.size() - 1;
    const R e = eps<R>();
    const R inf = std::numeric_limits<R>::infinity();
    rs.radius.assign(n, inf);
    for (size_t i = 0; i < n; ++i) {
        const Cx<R>& z = rs.z[i];
        R az = cabs(z);
        Cx<R> v = a[n];
        R mag = 0, pw = 1;
        for (size_t k = n; k-- > 0;) v = v * z + a[k];
        for (size_t k = 0; k <= n; ++k) {
            mag += (cabs(a[k]) * R(4 * n + 4) * e + aerr[k]) * pw;
            pw *= az;
        }
        Cx<R> prod(R(1));
        for (size_t j = 0; j < n; ++j)
            if (j != i) prod *= (z - rs.z[j]);
        R den = cabs(prod) * (R(1) - R(4 * n) * e);
        if (den > 0) rs.radius[i] = R(n) * (cabs(v) + mag) / den * (R(1) + R(16) * e);
    }
    // connected components of the disk union
    std::vector<size_t> comp(n);
    for (size_t i = 0; i < n; ++i) comp[i] = i;
    auto find = [&](size_t x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    rs.separated = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (cabs(rs.z[i] - rs.z[j]) <= rs.radius[i] + rs.radius[j]) {
                comp[find(i)] = find(j);
                rs.separated = false;
            }
    std::vector<R> ext(n, R(0));
    for (size_t i = 0; i < n; ++i) ext[find(i)] += 2 * rs.radius[i];
    rs.cluster.resize(n);
    for (size_t i = 0; i < n; ++i) {
        R c = ext[find(i)];
        rs.cluster[i] = c > rs.radius[i] ? c : rs.radius[i];
    }
}

// Simultaneous (Aberth) iteration for the roots of a monic polynomial with
// complex coefficients. start, if non-empty, seeds the iteration.
template <class R>
RootSet<R> aberth(const std::vector<Cx<R>>& a, const std::vector<R>& aerr,
                  const std::vector<Cx<R>>& start = {}, int max_iter = 600) {
    using std::abs;
    using std::pow;
    RootSet<R> rs;
    const size_t n = a.size() - 1;
    if (n == 0) return rs;
    if (n == 1) {
        rs.z = {-a[0]};
        inclusion_radii(a, aerr, rs);
        return rs;
    }
    if (start.size() == n) {
        rs.z = start;
    } else {
        R bound = 0;  // Fujiwara-style radius
        for (size_t k = 0; k < n; ++k) {
            R c = pow(cabs(a[k]), R(1) / R(n - k));
            if (c > bound) bound = c;
        }
        bound = bound * 2 + R(1) / R(8);
        const R tau = R(6.283185307179586476925286766559L);
        for (size_t i = 0; i < n; ++i)
            rs.z.push_back(cpolar(bound * R(0.5 + 0.37 * (double)i / (double)n),
                                  tau * R((double)i / (double)n) + R(0.4)));
    }
    const R e = eps<R>();
    std::vector<bool> done(n, false);
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            Cx<R> z = rs.z[i];
            Cx<R> p = a[n], dp(R(0));
            for (size_t k = n; k-- > 0;) {
                dp = dp * z + p;
                p = p * z + a[k];
            }
            if (cabs(p) == 0) {
                done[i] = true;
                continue;
            }
            Cx<R> ratio = p / dp;
            Cx<R> s(R(0));
            for (size_t j = 0; j < n; ++j)
                if (j != i) {
                    Cx<R> d = z - rs.z[j];
                    if (cabs(d) == 0) d = Cx<R>(e, e);
                    s += Cx<R>(R(1)) / d;
                }
            Cx<R> w = ratio / (Cx<R>(R(1)) - ratio * s);
            if (!(cabs(w) == cabs(w))) w = ratio;  // NaN guard
            rs.z[i] = z - w;
            R az = cabs(rs.z[i]);
            if (cabs(w) <= e * R(4) * (az > 1 ? az : R(1)))
                done[i] = true;
            else
                all = false;
        }
        if (all) break;
    }
    inclusion_radii(a, aerr, rs);
    return rs;
}

// Newton refinement of simple-root approximations; keeps the input order.
template <class R>
RootSet<R> newton_refine(const std::vector<Cx<R>>& a, const std::vector<R>& aerr,
                         std::vector<Cx<R>> z, int iters) {
    const size_t n = a.size() - 1;
    for (auto& zi : z) {
        for (int it = 0; it < iters; ++it) {
            Cx<R> p = a[n], dp(R(0));
            for (size_t k = n; k-- > 0;) {
                dp = dp * zi + p;
                p = p * zi + a[k];
            }
            if (cabs(dp) == 0) break;
            zi = zi - p / dp;
        }
    }
    RootSet<R> rs;
    rs.z = std::move(z);
    inclusion_radii(a, aerr, rs);
    return rs;
}

template <class RT, class RF>
Cx<RT> cx_cast(const Cx<RF>& z) {
    return {RT(z.re), RT(z.im)};
}

}  // namespace nfc
