#pragma once

// Monogenic number fields K = Q(theta) with O_K taken as Z[theta]: exact
// arithmetic on the power basis, certified embeddings, houses, norms and
// house-bounded enumeration.

#include "nfc/errors.hpp"
#include "nfc/numeric.hpp"
#include "nfc/upoly.hpp"

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace nfc {

struct AlgInt {
    std::vector<mpz_class> c;  // coordinates on 1, theta, ..., theta^(rho-1)
    bool operator==(const AlgInt& o) const { return c == o.c; }
    bool operator!=(const AlgInt& o) const { return c != o.c; }
    bool operator<(const AlgInt& o) const { return c < o.c; }
};

template <class R>
struct EmbeddingTier {
    RootSet<R> roots;
    std::vector<std::vector<Cx<R>>> vinv;  // inverse Vandermonde: coords = vinv * conjugates
};

struct HouseValue {
    long double value = 0;
    long double err = 0;
    int tier = 0;
};

struct BoxStats {
    std::size_t visited = 0;   // coefficient-box points examined
    std::size_t emitted = 0;
    std::size_t boundary = 0;  // included although within certified error of B
};

class NumberField {
public:
    // Validates f (low degree first) and computes embeddings up to cap_bits.
    static NumberField create(const std::vector<mpz_class>& f, int cap_bits = 256);
    static NumberField rationals(int cap_bits = 256) { return create({0, 1}, cap_bits); }

    int degree() const { return d_->rho; }
    const std::vector<mpz_class>& def_poly() const { return d_->f; }
    const mpz_class& disc() const { return d_->disc; }
    const std::vector<mpz_class>& ramified_primes() const { return d_->ramified; }
    // Primes p at which Z[theta] fails to be p-maximal (Dedekind criterion).
    const std::vector<mpz_class>& index_primes() const { return d_->index_primes; }
    bool is_rational() const { return d_->rho == 1; }
    int precision_cap() const { return d_->cap_bits; }
    int max_tier() const { return d_->max_tier; }
    std::string describe() const;

    // arithmetic
    AlgInt zero() const { return AlgInt{std::vector<mpz_class>(d_->rho)}; }
    AlgInt one() const { return from_int(1); }
    AlgInt from_int(const mpz_class& v) const {
        AlgInt a = zero();
        a.c[0] = v;
        return a;
    }
    AlgInt theta() const;
    AlgInt from_coords(std::vector<mpz_class> c) const;
    bool is_zero(const AlgInt& a) const;
    AlgInt add(const AlgInt& a, const AlgInt& b) const;
    AlgInt sub(const AlgInt& a, const AlgInt& b) const;
    AlgInt neg(const AlgInt& a) const;
    AlgInt mul(const AlgInt& a, const AlgInt& b) const;
    AlgInt pow(AlgInt a, unsigned e) const;
    AlgInt exact_div(const AlgInt& a, const AlgInt& b) const;  // throws if b does not divide a
    bool divides(const AlgInt& b, const AlgInt& a) const;
    std::vector<std::vector<mpz_class>> mul_matrix(const AlgInt& a) const;

    // N_{K/Q}(x) as a signed integer, and its absolute value.
    mpz_class norm(const AlgInt& x) const;
    mpz_class abs_norm(const AlgInt& x) const { return abs(norm(x)); }

    // Max over embeddings of |sigma(x)|, with an error bound.
    HouseValue house(const AlgInt& x) const;
    HouseValue house_at_tier(const AlgInt& x, int tier) const;
    // Height of x as a field element: max(1, house(x)).
    long double height(const AlgInt& x) const;

    // house(x) <= B decided with certified error and precision escalation.
    // boundary is set when the cap was reached without separation (x included).
    bool house_le(const AlgInt& x, long double B, bool* boundary = nullptr) const;

    // Integer bounds |c_k| <= bound[k] for every x with house(x) <= B.
    std::vector<mpz_class> coefficient_box(long double B) const;
    // Every x with house(x) <= B exactly once, in lexicographic coordinate order.
    std::vector<AlgInt> enumerate_box(long double B, BoxStats* stats = nullptr) const;
    void for_each_in_box(long double B, const std::function<void(const AlgInt&)>& fn,
                         BoxStats* stats = nullptr) const;

    template <class R>
    const EmbeddingTier<R>& tier() const {
        if constexpr (std::is_same_v<R, R0>) return std::get<0>(d_->tiers);
        else if constexpr (std::is_same_v<R, R1>) return std::get<1>(d_->tiers);
        else if constexpr (std::is_same_v<R, R2>) return std::get<2>(d_->tiers);
        else return std::get<3>(d_->tiers);
    }

    // sigma_i(x) at precision R, with an absolute error bound in err.
    template <class R>
    Cx<R> embed(const AlgInt& x, int i, R& err) const;

    std::string to_string(const AlgInt& a) const;

    bool same_field(const NumberField& o) const { return d_ == o.d_ || d_->f == o.d_->f; }

private:
    struct Data {
        int rho = 0;
        int cap_bits = 256;
        int max_tier = 2;
        std::vector<mpz_class> f;
        mpz_class disc;
        std::vector<mpz_class> ramified;
        std::vector<mpz_class> index_primes;
        std::tuple<EmbeddingTier<R0>, EmbeddingTier<R1>, EmbeddingTier<R2>, EmbeddingTier<R3>> tiers;
    };
    std::shared_ptr<const Data> d_;
};

// Ring context over O_K for the generic polynomial algorithms.
struct NFRing {
    using E = AlgInt;
    NumberField K;
    explicit NFRing(NumberField k) : K(std::move(k)) {}
    E zero() const { return K.zero(); }
    E one() const { return K.one(); }
    E from_int(long v) const { return K.from_int(v); }
    bool is_zero(const E& a) const { return K.is_zero(a); }
    E add(const E& a, const E& b) const { return K.add(a, b); }
    E sub(const E& a, const E& b) const { return K.sub(a, b); }
    E neg(const E& a) const { return K.neg(a); }
    E mul(const E& a, const E& b) const { return K.mul(a, b); }
    E exact_div(const E& a, const E& b) const { return K.exact_div(a, b); }
};

// Determinant of a square integer matrix (fraction-free elimination).
mpz_class int_det(std::vector<std::vector<mpz_class>> m);

template <class R>
Cx<R> NumberField::embed(const AlgInt& x, int i, R& err) const {
    const auto& T = tier<R>();
    const Cx<R>& z = T.roots.z[i];
    const R r = T.roots.radius[i];
    const R az = cabs(z);
    Cx<R> v(R(0));
    R mag = 0, dmag = 0;
    const int n = d_->rho;
    for (int k = n - 1; k >= 0; --k) v = v * z + Cx<R>(to_real<R>(x.c[k]));
    // |x(theta) - x(z)| <= sum |c_k| k (|z|+r)^(k-1) r, plus rounding
    R pw = 1, pw1 = 1;
    for (int k = 0; k < n; ++k) {
        R ck = abs(to_real<R>(x.c[k]));
        mag += ck * pw;
        if (k >= 1) {
            dmag += ck * R(k) * pw1;
            pw1 *= (az + r);
        }
        pw *= az;
    }
    err = dmag * r + mag * eps<R>() * R(8 * n + 8);
    return v;
}

}  // namespace nfc
