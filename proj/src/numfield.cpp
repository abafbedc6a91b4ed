#include "nfc/numfield.hpp"

#include "nfc/ffield.hpp"
#include "nfc/intutil.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nfc {

mpz_class int_det(std::vector<std::vector<mpz_class>> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t s = k + 1;
            while (s < n && m[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(m[s], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

template <class R>
bool lex_less(const Cx<R>& a, const Cx<R>& b) {
    using std::abs;
    // real embeddings first (by value), then complex ones by (re, im)
    const R tol = R(1e-9L);
    bool ra = abs(a.im) < tol, rb = abs(b.im) < tol;
    if (ra != rb) return ra;
    if (abs(a.re - b.re) > tol) return a.re < b.re;
    return a.im < b.im;
}

template <class R>
std::vector<std::vector<Cx<R>>> complex_inverse(std::vector<std::vector<Cx<R>>> a) {
    const size_t n = a.size();
    std::vector<std::vector<Cx<R>>> inv(n, std::vector<Cx<R>>(n, Cx<R>(R(0))));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Cx<R>(R(1));
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (cabs(a[r][c]) > cabs(a[piv][c])) piv = r;
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Cx<R> d = a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] = a[c][j] / d;
            inv[c][j] = inv[c][j] / d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            Cx<R> m = a[r][c];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= m * a[c][j];
                inv[r][j] -= m * inv[c][j];
            }
        }
    }
    return inv;
}

template <class R>
void fill_tier(EmbeddingTier<R>& T, const std::vector<mpz_class>& f, const std::vector<Cx<R>>* seed) {
    const size_t n = f.size() - 1;
    std::vector<Cx<R>> a;
    std::vector<R> aerr;
    for (auto& c : f) {
        a.push_back(Cx<R>(to_real<R>(c)));
        aerr.push_back(abs(to_real<R>(c)) * eps<R>());
    }
    if (seed) {
        T.roots = newton_refine(a, aerr, *seed, 12);
        if (!T.roots.separated) T.roots = aberth(a, aerr, *seed);
    } else {
        T.roots = aberth(a, aerr);
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) { return lex_less(T.roots.z[x], T.roots.z[y]); });
        RootSet<R> s;
        for (size_t i : idx) s.z.push_back(T.roots.z[i]);
        inclusion_radii(a, aerr, s);
        T.roots = s;
    }
    if (!T.roots.separated) throw Error(Errc::PrecisionExhausted, "embeddings do not separate");
    std::vector<std::vector<Cx<R>>> V(n, std::vector<Cx<R>>(n));
    for (size_t i = 0; i < n; ++i) {
        Cx<R> p(R(1));
        for (size_t k = 0; k < n; ++k) {
            V[i][k] = p;
            p = p * T.roots.z[i];
        }
    }
    T.vinv = complex_inverse(V);
}

template <class RT, class RF>
std::vector<Cx<RT>> cast_all(const std::vector<Cx<RF>>& z) {
    std::vector<Cx<RT>> out;
    for (auto& v : z) out.push_back(cx_cast<RT>(v));
    return out;
}

// Achievable subset sums of a multiset of degrees, as a bitmask.
u64 subset_sums(const std::vector<int>& parts) {
    u64 m = 1;
    for (int p : parts) m |= m << p;
    return m;
}

std::vector<int> fp_pattern_of(const std::vector<mpz_class>& f, u64 p) {
    Fp F(p);
    FPoly<Fp> a;
    for (auto& c : f) a.push_back(F.from_mpz(c));
    fp_trim(F, a);
    return fp_degree_pattern(F, a);
}

// Degrees of possible monic rational factors left open by a mod-p sieve.
u64 degree_sieve(const std::vector<mpz_class>& f, const mpz_class& disc, int max_primes) {
    const int n = (int)f.size() - 1;
    u64 full = (n >= 63) ? ~0ull : ((1ull << (n + 1)) - 1);
    u64 allowed = full;
    int used = 0;
    for (u64 p = 2; used < max_primes && p < 100000; p = next_prime(p + 1)) {
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        allowed &= subset_sums(fp_pattern_of(f, p));
        ++used;
        if (allowed == ((1ull << n) | 1ull)) break;
    }
    return allowed;
}

// Search for a monic integer factor among products of root subsets.
template <class R>
bool has_rational_factor(const std::vector<mpz_class>& f, const std::vector<Cx<R>>& z, u64 allowed) {
    const int n = (int)f.size() - 1;
    ZRing Z;
    for (int k = 1; k <= n / 2; ++k) {
        if (!((allowed >> k) & 1)) continue;
        std::vector<int> sel(k);
        for (int i = 0; i < k; ++i) sel[i] = i;
        for (;;) {
            std::vector<Cx<R>> g{Cx<R>(R(1))};
            for (int idx : sel) {
                std::vector<Cx<R>> h(g.size() + 1, Cx<R>(R(0)));
                for (size_t i = 0; i < g.size(); ++i) {
                    h[i + 1] += g[i];
                    h[i] -= g[i] * z[idx];
                }
                g = h;
            }
            bool ok = true;
            Poly<ZRing> gi;
            for (auto& c : g) {
                using std::abs;
                using std::round;
                if (abs(c.im) > R(0.25)) {
                    ok = false;
                    break;
                }
                R rr = round(c.re);
                if (abs(c.re - rr) > R(0.25)) {
                    ok = false;
                    break;
                }
                gi.push_back(round_to_mpz(rr));
            }
            if (ok) {
                try {
                    Poly<ZRing> ff(f.begin(), f.end());
                    p_exact_div(Z, ff, gi);
                    return true;
                } catch (const Error&) {
                }
            }
            int i = k - 1;
            while (i >= 0 && sel[i] == n - k + i) --i;
            if (i < 0) break;
            ++sel[i];
            for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
        }
    }
    return false;
}

bool dedekind_maximal_at(const std::vector<mpz_class>& f, u64 p) {
    Fp F(p);
    FPoly<Fp> fb;
    for (auto& c : f) fb.push_back(F.from_mpz(c));
    fp_trim(F, fb);
    auto fac = fp_factor(F, fb, 1);
    FPoly<Fp> g{1}, h{1};
    for (auto& [gi, e] : fac) {
        g = fp_mul(F, g, gi);
        for (int i = 1; i < e; ++i) h = fp_mul(F, h, gi);
    }
    // lift g, h to Z with coefficients in [0, p) and form (f - g h) / p
    Poly<ZRing> G, H;
    for (auto v : g) G.push_back(mpz_class((unsigned long)v));
    for (auto v : h) H.push_back(mpz_class((unsigned long)v));
    ZRing Z;
    Poly<ZRing> GH = p_mul(Z, G, H);
    Poly<ZRing> diff = p_sub(Z, Poly<ZRing>(f.begin(), f.end()), GH);
    FPoly<Fp> Fb;
    for (auto& c : diff) {
        mpz_class q = c / (unsigned long)p;
        Fb.push_back(F.from_mpz(q));
    }
    fp_trim(F, Fb);
    FPoly<Fp> t = fp_gcd(F, fp_gcd(F, Fb, g), h);
    if (Fb.empty()) t = fp_gcd(F, g, h);
    return fp_deg<Fp>(t) == 0;
}

template <class R>
int house_cmp(const NumberField& K, const AlgInt& x, long double B) {
    const R b(B);
    bool ambiguous = false;
    for (int i = 0; i < K.degree(); ++i) {
        R err;
        Cx<R> v = K.embed<R>(x, i, err);
        R a = cabs(v);
        R e = err + a * eps<R>() * R(4);
        if (a - e > b) return 1;
        if (a + e > b) ambiguous = true;
    }
    return ambiguous ? 0 : -1;
}

template <class R>
HouseValue house_tier(const NumberField& K, const AlgInt& x, int tier) {
    HouseValue hv;
    hv.tier = tier;
    R best = 0, berr = 0;
    for (int i = 0; i < K.degree(); ++i) {
        R err;
        Cx<R> v = K.embed<R>(x, i, err);
        R a = cabs(v);
        if (a > best) best = a;
        R e = err + a * eps<R>() * R(4);
        if (e > berr) berr = e;
    }
    hv.value = to_ld(best);
    hv.err = to_ld(berr) + std::fabs(hv.value) * 4 * std::numeric_limits<long double>::epsilon();
    return hv;
}

}  // namespace

NumberField NumberField::create(const std::vector<mpz_class>& f0, int cap_bits) {
    std::vector<mpz_class> f = f0;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.size() < 2) throw Error(Errc::InvalidInput, "defining polynomial must have degree >= 1");
    if (f.back() != 1) throw Error(Errc::NotMonic, "defining polynomial must be monic");
    auto d = std::make_shared<Data>();
    d->rho = (int)f.size() - 1;
    d->f = f;
    d->cap_bits = cap_bits;
    d->max_tier = tier_for_cap(cap_bits);
    ZRing Z;
    Poly<ZRing> fp(f.begin(), f.end());
    d->disc = d->rho == 1 ? mpz_class(1) : p_discriminant(Z, fp);
    if (d->disc == 0) throw Error(Errc::NotIrreducible, "defining polynomial has a repeated factor");
    d->ramified = prime_divisors(d->disc);
    for (auto& p : d->ramified) {
        mpz_class p2 = p * p;
        if (!mpz_divisible_p(d->disc.get_mpz_t(), p2.get_mpz_t())) continue;
        if (!p.fits_ulong_p() || !dedekind_maximal_at(f, p.get_ui())) d->index_primes.push_back(p);
    }

    auto& t0 = std::get<0>(d->tiers);
    fill_tier<R0>(t0, f, nullptr);
    auto z1 = cast_all<R1>(t0.roots.z);
    fill_tier<R1>(std::get<1>(d->tiers), f, &z1);
    if (d->max_tier >= 2) {
        auto z2 = cast_all<R2>(std::get<1>(d->tiers).roots.z);
        fill_tier<R2>(std::get<2>(d->tiers), f, &z2);
    }
    if (d->max_tier >= 3) {
        auto z3 = cast_all<R3>(std::get<2>(d->tiers).roots.z);
        fill_tier<R3>(std::get<3>(d->tiers), f, &z3);
    }

    if (d->rho >= 2) {
        u64 allowed = degree_sieve(f, d->disc, 40);
        bool open = false;
        for (int k = 1; k <= d->rho / 2; ++k) open = open || ((allowed >> k) & 1);
        if (open) {
            const int tt = std::min(d->max_tier, 2);
            bool red = tt == 0   ? has_rational_factor<R0>(f, std::get<0>(d->tiers).roots.z, allowed)
                       : tt == 1 ? has_rational_factor<R1>(f, std::get<1>(d->tiers).roots.z, allowed)
                                 : has_rational_factor<R2>(f, std::get<2>(d->tiers).roots.z, allowed);
            if (red) throw Error(Errc::NotIrreducible, "defining polynomial factors over Q");
        }
    }
    NumberField K;
    K.d_ = d;
    return K;
}

std::string NumberField::describe() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < d_->f.size(); ++i) os << (i ? ", " : "") << d_->f[i].get_str();
    os << "]";
    return os.str();
}

AlgInt NumberField::theta() const {
    AlgInt a = zero();
    if (d_->rho == 1)
        a.c[0] = -d_->f[0];
    else
        a.c[1] = 1;
    return a;
}

AlgInt NumberField::from_coords(std::vector<mpz_class> c) const {
    if ((int)c.size() > d_->rho) throw Error(Errc::InvalidInput, "too many coordinates");
    c.resize(d_->rho);
    return AlgInt{std::move(c)};
}

bool NumberField::is_zero(const AlgInt& a) const {
    for (auto& v : a.c)
        if (v != 0) return false;
    return true;
}

AlgInt NumberField::add(const AlgInt& a, const AlgInt& b) const {
    AlgInt r = a;
    for (int i = 0; i < d_->rho; ++i) r.c[i] += b.c[i];
    return r;
}

AlgInt NumberField::sub(const AlgInt& a, const AlgInt& b) const {
    AlgInt r = a;
    for (int i = 0; i < d_->rho; ++i) r.c[i] -= b.c[i];
    return r;
}

AlgInt NumberField::neg(const AlgInt& a) const {
    AlgInt r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

AlgInt NumberField::mul(const AlgInt& a, const AlgInt& b) const {
    const int n = d_->rho;
    if (n == 1) return AlgInt{{a.c[0] * b.c[0]}};
    std::vector<mpz_class> t(2 * n - 1);
    for (int i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < n; ++j) t[i + j] += a.c[i] * b.c[j];
    }
    const auto& f = d_->f;
    for (int k = 2 * n - 2; k >= n; --k) {
        if (t[k] == 0) continue;
        for (int i = 0; i < n; ++i) t[k - n + i] -= t[k] * f[i];
        t[k] = 0;
    }
    t.resize(n);
    return AlgInt{std::move(t)};
}

AlgInt NumberField::pow(AlgInt a, unsigned e) const {
    AlgInt r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

std::vector<std::vector<mpz_class>> NumberField::mul_matrix(const AlgInt& a) const {
    const int n = d_->rho;
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    AlgInt col = a;
    const AlgInt th = theta();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) m[i][j] = col.c[i];
        if (j + 1 < n) col = mul(col, th);
    }
    return m;
}

namespace {

bool solve_exact(const NumberField& K, const AlgInt& b, const AlgInt& a, AlgInt* out) {
    const int n = K.degree();
    if (n == 1) {
        if (b.c[0] == 0) throw Error(Errc::InvalidInput, "division by zero");
        if (!mpz_divisible_p(a.c[0].get_mpz_t(), b.c[0].get_mpz_t())) return false;
        if (out) {
            out->c.assign(1, 0);
            mpz_divexact(out->c[0].get_mpz_t(), a.c[0].get_mpz_t(), b.c[0].get_mpz_t());
        }
        return true;
    }
    auto M = K.mul_matrix(b);
    mpz_class D = int_det(M);
    if (D == 0) throw Error(Errc::InvalidInput, "division by zero");
    AlgInt q = K.zero();
    for (int k = 0; k < n; ++k) {
        auto Mk = M;
        for (int i = 0; i < n; ++i) Mk[i][k] = a.c[i];
        mpz_class num = int_det(Mk);
        if (!mpz_divisible_p(num.get_mpz_t(), D.get_mpz_t())) return false;
        mpz_divexact(q.c[k].get_mpz_t(), num.get_mpz_t(), D.get_mpz_t());
    }
    if (out) *out = std::move(q);
    return true;
}

}  // namespace

AlgInt NumberField::exact_div(const AlgInt& a, const AlgInt& b) const {
    AlgInt q;
    if (!solve_exact(*this, b, a, &q)) throw Error(Errc::InvalidInput, "inexact division in O_K");
    return q;
}

bool NumberField::divides(const AlgInt& b, const AlgInt& a) const {
    if (is_zero(b)) return is_zero(a);
    return solve_exact(*this, b, a, nullptr);
}

mpz_class NumberField::norm(const AlgInt& x) const {
    if (d_->rho == 1) return x.c[0];
    ZRing Z;
    Poly<ZRing> f(d_->f.begin(), d_->f.end());
    Poly<ZRing> g(x.c.begin(), x.c.end());
    p_trim(Z, g);
    if (g.empty()) return 0;
    return p_resultant(Z, f, g);
}

HouseValue NumberField::house_at_tier(const AlgInt& x, int t) const {
    switch (t) {
        case 0: return house_tier<R0>(*this, x, 0);
        case 1: return house_tier<R1>(*this, x, 1);
        case 2: return house_tier<R2>(*this, x, 2);
        default: return house_tier<R3>(*this, x, 3);
    }
}

HouseValue NumberField::house(const AlgInt& x) const {
    if (d_->rho == 1) {
        HouseValue hv;
        hv.value = mpz_class(abs(x.c[0])).get_d();
        hv.err = hv.value * std::numeric_limits<double>::epsilon();
        return hv;
    }
    HouseValue hv = house_at_tier(x, 0);
    // escalate when the long double result carries visible error
    for (int t = 1; t <= d_->max_tier && hv.err > 1e-12L * (1 + hv.value); ++t) hv = house_at_tier(x, t);
    return hv;
}

long double NumberField::height(const AlgInt& x) const {
    long double h = house(x).value;
    return h < 1 ? 1.0L : h;
}

bool NumberField::house_le(const AlgInt& x, long double B, bool* boundary) const {
    if (boundary) *boundary = false;
    if (d_->rho == 1) {
        mpz_class fb(std::floor((double)B));
        return abs(x.c[0]) <= fb;
    }
    for (int t = 0; t <= d_->max_tier; ++t) {
        int c = t == 0   ? house_cmp<R0>(*this, x, B)
                : t == 1 ? house_cmp<R1>(*this, x, B)
                : t == 2 ? house_cmp<R2>(*this, x, B)
                         : house_cmp<R3>(*this, x, B);
        if (c < 0) return true;
        if (c > 0) return false;
    }
    if (boundary) *boundary = true;
    return true;
}

std::vector<mpz_class> NumberField::coefficient_box(long double B) const {
    const int n = d_->rho;
    std::vector<mpz_class> out(n);
    if (n == 1) {
        out[0] = mpz_class(std::floor((double)B));
        return out;
    }
    const auto& T = tier<R0>();
    for (int k = 0; k < n; ++k) {
        long double s = 0;
        for (int i = 0; i < n; ++i) s += cabs(T.vinv[k][i]);
        long double bound = s * B * (1 + 1e-12L) + 1e-9L;
        out[k] = mpz_class((double)std::floor(bound));
    }
    return out;
}

void NumberField::for_each_in_box(long double B, const std::function<void(const AlgInt&)>& fn,
                                  BoxStats* stats) const {
    BoxStats st;
    const int n = d_->rho;
    auto bound = coefficient_box(B);
    AlgInt x = zero();
    for (int k = 0; k < n; ++k) x.c[k] = -bound[k];
    if (n == 1) {
        for (mpz_class v = -bound[0]; v <= bound[0]; ++v) {
            x.c[0] = v;
            ++st.visited;
            ++st.emitted;
            fn(x);
        }
        if (stats) *stats = st;
        return;
    }
    for (;;) {
        ++st.visited;
        bool bnd = false;
        if (house_le(x, B, &bnd)) {
            ++st.emitted;
            if (bnd) ++st.boundary;
            fn(x);
        }
        int k = n - 1;
        while (k >= 0 && x.c[k] == bound[k]) {
            x.c[k] = -bound[k];
            --k;
        }
        if (k < 0) break;
        ++x.c[k];
    }
    if (stats) *stats = st;
}

std::vector<AlgInt> NumberField::enumerate_box(long double B, BoxStats* stats) const {
    std::vector<AlgInt> out;
    for_each_in_box(B, [&](const AlgInt& x) { out.push_back(x); }, stats);
    return out;
}

std::string NumberField::to_string(const AlgInt& a) const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < d_->rho; ++k) {
        const mpz_class& c = a.c[k];
        if (c == 0) continue;
        mpz_class m = abs(c);
        if (!first || c < 0) os << (c < 0 ? "-" : "+");
        if (k == 0)
            os << m.get_str();
        else {
            if (m != 1) os << m.get_str() << "*";
            os << "w";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace nfc
