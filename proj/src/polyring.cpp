#include "nfc/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace nfc {

int BiPoly::deg_x1() const {
    int m = 0;
    for (auto& [k, c] : terms) m = std::max(m, k.first);
    return m;
}

int BiPoly::deg_x2() const {
    int n = 0;
    for (auto& [k, c] : terms) n = std::max(n, k.second);
    return n;
}

int BiPoly::total_degree() const {
    int d = 0;
    for (auto& [k, c] : terms) d = std::max(d, k.first + k.second);
    return d;
}

bool BiPoly::monic_in_x2() const {
    if (terms.empty()) return false;
    const int n = deg_x2();
    bool found = false;
    for (auto& [k, c] : terms) {
        if (k.second != n) continue;
        if (k.first != 0) return false;
        if (c.c[0] != 1) return false;
        for (size_t i = 1; i < c.c.size(); ++i)
            if (c.c[i] != 0) return false;
        found = true;
    }
    return found;
}

void up_trim(const NumberField& K, UniPoly& f) {
    while (!f.empty() && K.is_zero(f.back())) f.pop_back();
}

void bp_add_term(const NumberField& K, BiPoly& F, int i, int j, const AlgInt& c) {
    if (K.is_zero(c)) return;
    auto key = std::make_pair(i, j);
    auto it = F.terms.find(key);
    if (it == F.terms.end()) {
        F.terms.emplace(key, c);
        return;
    }
    it->second = K.add(it->second, c);
    if (K.is_zero(it->second)) F.terms.erase(it);
}

BiPoly bp_add(const NumberField& K, const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (auto& [k, c] : b.terms) bp_add_term(K, r, k.first, k.second, c);
    return r;
}

BiPoly bp_sub(const NumberField& K, const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (auto& [k, c] : b.terms) bp_add_term(K, r, k.first, k.second, K.neg(c));
    return r;
}

BiPoly bp_mul(const NumberField& K, const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (auto& [ka, ca] : a.terms)
        for (auto& [kb, cb] : b.terms) bp_add_term(K, r, ka.first + kb.first, ka.second + kb.second, K.mul(ca, cb));
    return r;
}

BiPoly bp_scale(const NumberField& K, const BiPoly& a, const AlgInt& s) {
    BiPoly r;
    for (auto& [k, c] : a.terms) bp_add_term(K, r, k.first, k.second, K.mul(c, s));
    return r;
}

BiPoly bp_deriv(const NumberField& K, const BiPoly& F, Axis axis) {
    BiPoly r;
    for (auto& [k, c] : F.terms) {
        int e = axis == Axis::X1 ? k.first : k.second;
        if (e == 0) continue;
        AlgInt v = K.mul(c, K.from_int(e));
        if (axis == Axis::X1)
            bp_add_term(K, r, k.first - 1, k.second, v);
        else
            bp_add_term(K, r, k.first, k.second - 1, v);
    }
    return r;
}

BiPoly bp_shift_x2(const NumberField& K, const BiPoly& F, int e) {
    BiPoly r;
    for (auto& [k, c] : F.terms) {
        // c X1^i (X1^e + X2)^j
        const int i = k.first, j = k.second;
        mpz_class binom = 1;
        for (int s = 0; s <= j; ++s) {
            // binom = C(j, s); term X1^(i + e*(j-s)) X2^s
            bp_add_term(K, r, i + e * (j - s), s, K.mul(c, K.from_int(binom)));
            binom = binom * (j - s) / (s + 1);
        }
    }
    return r;
}

std::vector<UniPoly> bp_as_poly_in(const NumberField& K, const BiPoly& F, Axis axis) {
    const int deg = axis == Axis::X2 ? F.deg_x2() : F.deg_x1();
    const int odeg = axis == Axis::X2 ? F.deg_x1() : F.deg_x2();
    std::vector<UniPoly> out(F.is_zero() ? 0 : deg + 1, UniPoly(odeg + 1, K.zero()));
    for (auto& [k, c] : F.terms) {
        int main = axis == Axis::X2 ? k.second : k.first;
        int other = axis == Axis::X2 ? k.first : k.second;
        out[main][other] = c;
    }
    for (auto& u : out) up_trim(K, u);
    return out;
}

namespace {

std::vector<AlgInt> powers(const NumberField& K, const AlgInt& x, int n) {
    std::vector<AlgInt> p{K.one()};
    for (int i = 1; i <= n; ++i) p.push_back(K.mul(p.back(), x));
    return p;
}

UniPoly specialize(const NumberField& K, const BiPoly& F, const AlgInt& t, bool first) {
    const int dt = first ? F.deg_x1() : F.deg_x2();
    const int dv = first ? F.deg_x2() : F.deg_x1();
    auto pw = powers(K, t, dt);
    UniPoly out(F.is_zero() ? 0 : dv + 1, K.zero());
    for (auto& [k, c] : F.terms) {
        int et = first ? k.first : k.second;
        int ev = first ? k.second : k.first;
        out[ev] = K.add(out[ev], K.mul(c, pw[et]));
    }
    up_trim(K, out);
    return out;
}

}  // namespace

UniPoly bp_specialize_x1(const NumberField& K, const BiPoly& F, const AlgInt& t) {
    return specialize(K, F, t, true);
}

UniPoly bp_specialize_x2(const NumberField& K, const BiPoly& F, const AlgInt& t) {
    return specialize(K, F, t, false);
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(const NumberField& K, const std::string& s) : K_(K), s_(s) {}

    BiPoly parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty polynomial");
        BiPoly r = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    const NumberField& K_;
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::ParseError, "column " + std::to_string(pos_ + 1) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit((unsigned char)c) || std::isalpha((unsigned char)c) || c == '(';
    }

    BiPoly constant(const AlgInt& a) {
        BiPoly r;
        bp_add_term(K_, r, 0, 0, a);
        return r;
    }

    BiPoly expr() {
        BiPoly r;
        bool first = true;
        for (;;) {
            skip();
            int sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            BiPoly t = term();
            r = sign > 0 ? bp_add(K_, r, t) : bp_sub(K_, r, t);
            first = false;
            if (!(peek('+') || peek('-'))) break;
        }
        return r;
    }

    BiPoly term() {
        BiPoly r = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                r = bp_mul(K_, r, factor());
            } else if (starts_primary()) {
                fail("juxtaposition is not allowed; use '*'");
            } else {
                break;
            }
        }
        return r;
    }

    BiPoly factor() {
        BiPoly b = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            if (st == pos_) fail("expected exponent");
            if (pos_ - st > 6) fail("exponent too large");
            int e = std::stoi(s_.substr(st, pos_ - st));
            BiPoly r = constant(K_.one());
            for (int i = 0; i < e; ++i) r = bp_mul(K_, r, b);
            return r;
        }
        return b;
    }

    BiPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            BiPoly r = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return r;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            return constant(K_.from_int(mpz_class(s_.substr(st, pos_ - st))));
        }
        if (std::isalpha((unsigned char)c)) {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isalnum((unsigned char)s_[pos_])) ++pos_;
            std::string id = s_.substr(st, pos_ - st);
            BiPoly r;
            if (id == "T" || id == "X1") {
                bp_add_term(K_, r, 1, 0, K_.one());
            } else if (id == "Y" || id == "X2") {
                bp_add_term(K_, r, 0, 1, K_.one());
            } else if (id == "w") {
                if (K_.degree() < 2) {
                    pos_ = st;
                    fail("'w' needs a field of degree at least 2");
                }
                bp_add_term(K_, r, 0, 0, K_.theta());
            } else {
                pos_ = st;
                fail("unknown identifier '" + id + "'");
            }
            return r;
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

bool is_integer(const AlgInt& a) {
    for (size_t i = 1; i < a.c.size(); ++i)
        if (a.c[i] != 0) return false;
    return true;
}

// Appends c*mono to os, where mono is a product of variable powers ("" for 1).
void append_term(std::ostringstream& os, const NumberField& K, const AlgInt& c, const std::string& mono,
                 bool first) {
    bool neg = false;
    std::string coef;
    if (is_integer(c)) {
        neg = c.c[0] < 0;
        mpz_class m = abs(c.c[0]);
        if (m != 1 || mono.empty()) coef = m.get_str();
    } else {
        size_t k = 0;
        while (c.c[k] == 0) ++k;
        neg = c.c[k] < 0;
        coef = "(" + K.to_string(neg ? K.neg(c) : c) + ")";
    }
    if (first)
        os << (neg ? "-" : "");
    else
        os << (neg ? " - " : " + ");
    os << coef;
    if (!coef.empty() && !mono.empty()) os << "*";
    os << mono;
}

std::string var_pow(const char* v, int e) {
    if (e == 0) return "";
    std::string s = v;
    if (e > 1) s += "^" + std::to_string(e);
    return s;
}

}  // namespace

BiPoly parse_bipoly(const NumberField& K, const std::string& text) {
    return Parser(K, text).parse();
}

std::string to_string(const NumberField& K, const BiPoly& F, VarStyle style) {
    if (F.is_zero()) return "0";
    const char* v1 = style == VarStyle::TY ? "T" : "X1";
    const char* v2 = style == VarStyle::TY ? "Y" : "X2";
    std::vector<std::pair<std::pair<int, int>, const AlgInt*>> ts;
    for (auto& [k, c] : F.terms) ts.push_back({k, &c});
    std::sort(ts.begin(), ts.end(), [](auto& a, auto& b) {
        if (a.first.second != b.first.second) return a.first.second > b.first.second;
        return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : ts) {
        std::string a = var_pow(v1, k.first), b = var_pow(v2, k.second);
        std::string mono = b.empty() ? a : a.empty() ? b : b + "*" + a;
        append_term(os, K, *c, mono, first);
        first = false;
    }
    return os.str();
}

std::string to_string(const NumberField& K, const UniPoly& f, const char* var) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = f.size(); i-- > 0;) {
        if (K.is_zero(f[i])) continue;
        append_term(os, K, f[i], var_pow(var, (int)i), first);
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- heights, evaluation

PolyHeight poly_height(const NumberField& K, const BiPoly& Q) {
    PolyHeight h;
    for (auto& [k, c] : Q.terms) h.H = std::max(h.H, K.house(c).value);
    h.Hplus = std::max<long double>(1, h.H);
    return h;
}

PolyHeight poly_height(const NumberField& K, const UniPoly& Q) {
    PolyHeight h;
    for (auto& c : Q) h.H = std::max(h.H, K.house(c).value);
    h.Hplus = std::max<long double>(1, h.H);
    return h;
}

EvalResult evaluate(const NumberField& K, const BiPoly& F, const AlgInt& x1, const AlgInt& x2) {
    auto p1 = powers(K, x1, F.deg_x1());
    auto p2 = powers(K, x2, F.deg_x2());
    EvalResult r;
    r.value = K.zero();
    for (auto& [k, c] : F.terms) r.value = K.add(r.value, K.mul(c, K.mul(p1[k.first], p2[k.second])));
    r.l = F.terms.size();
    return r;
}

AlgInt evaluate(const NumberField& K, const UniPoly& f, const AlgInt& x) {
    return p_eval(NFRing(K), f, x);
}

// ---------------------------------------------------------------- resultants

DiscResult disc_y(const NumberField& K, const BiPoly& P) {
    if (P.deg_x2() < 1) throw Error(Errc::InvalidInput, "disc_y needs positive degree in Y");
    PolyRing<NFRing> R{NFRing(K)};
    Poly<PolyRing<NFRing>> py = bp_as_poly_in(K, P, Axis::X2);
    DiscResult d;
    d.disc = p_discriminant(R, py);
    d.delta = (int)d.disc.size() - 1;
    if (d.delta < 0) d.delta = 0;
    return d;
}

UniPoly resultant_bivar(const NumberField& K, const BiPoly& F, const BiPoly& G, Axis wrt) {
    if (F.is_zero() || G.is_zero()) throw Error(Errc::InvalidInput, "resultant of a zero polynomial");
    PolyRing<NFRing> R{NFRing(K)};
    return p_resultant(R, bp_as_poly_in(K, F, wrt), bp_as_poly_in(K, G, wrt));
}

AlgInt disc_uni(const NumberField& K, const UniPoly& f) {
    return p_discriminant(NFRing(K), f);
}

int gcd_degree(const NumberField& K, const UniPoly& f, const UniPoly& g) {
    return p_gcd_degree(NFRing(K), f, g);
}

// ---------------------------------------------------------------- roots in O_K

namespace {

// 1: complete, 0: ambiguous at this precision.
template <class R>
int roots_tier(const NumberField& K, const UniPoly& Q, int attempt, std::set<AlgInt>& out) {
    using std::abs;
    const int rho = K.degree();
    const int n = (int)Q.size() - 1;
    std::vector<RootSet<R>> per(rho);
    for (int i = 0; i < rho; ++i) {
        std::vector<Cx<R>> a(n + 1);
        std::vector<R> aerr(n + 1, R(0));
        for (int k = 0; k < n; ++k) a[k] = K.embed<R>(Q[k], i, aerr[k]);
        a[n] = Cx<R>(R(1));
        std::vector<Cx<R>> start;
        if (attempt > 0) {
            R bound = 1;
            for (int k = 0; k < n; ++k) bound = std::max(bound, R(cabs(a[k]) + 1));
            const R tau = R(6.283185307179586476925286766559L);
            for (int j = 0; j < n; ++j)
                start.push_back(cpolar(bound * R(0.3 + 0.6 * j / (double)n), tau * R(j / (double)n) + R(0.9 * attempt)));
        }
        per[i] = aberth(a, aerr, start);
        for (auto& c : per[i].cluster)
            if (!(c < std::numeric_limits<R>::infinity())) return 0;
    }
    const auto& vinv = K.tier<R>().vinv;
    const R quarter = R(0.25);
    const R slack = eps<R>() * R(64 * (n + rho));
    bool ambiguous = false;
    std::vector<int> idx(rho, 0);
    NFRing ring(K);
    for (;;) {
        AlgInt cand = K.zero();
        bool ok = true;
        for (int k = 0; k < rho && ok; ++k) {
            Cx<R> c(R(0));
            R err = 0, mag = 0;
            for (int i = 0; i < rho; ++i) {
                const Cx<R>& z = per[i].z[idx[i]];
                c += vinv[k][i] * z;
                R vabs = cabs(vinv[k][i]);
                err += vabs * per[i].cluster[idx[i]];
                mag += vabs * cabs(z);
            }
            err += mag * slack;
            if (err >= quarter) {
                ambiguous = true;
                ok = false;
                break;
            }
            if (abs(c.im) > err) {
                ok = false;
                break;
            }
            mpz_class r = round_to_mpz(c.re);
            if (abs(c.re - to_real<R>(r)) > err) {
                ok = false;
                break;
            }
            cand.c[k] = r;
        }
        if (ok && K.is_zero(p_eval(ring, Q, cand))) out.insert(cand);
        int k = rho - 1;
        while (k >= 0 && idx[k] == n - 1) idx[k--] = 0;
        if (k < 0) break;
        ++idx[k];
    }
    return ambiguous ? 0 : 1;
}

int roots_at(const NumberField& K, const UniPoly& Q, int tier, int attempt, std::set<AlgInt>& out) {
    switch (tier) {
        case 0: return roots_tier<R0>(K, Q, attempt, out);
        case 1: return roots_tier<R1>(K, Q, attempt, out);
        case 2: return roots_tier<R2>(K, Q, attempt, out);
        default: return roots_tier<R3>(K, Q, attempt, out);
    }
}

}  // namespace

std::vector<AlgInt> alg_roots(const NumberField& K, const UniPoly& Q0) {
    UniPoly Q = Q0;
    up_trim(K, Q);
    if (Q.empty()) throw Error(Errc::InvalidInput, "alg_roots of the zero polynomial");
    if (Q.back() != K.one()) throw Error(Errc::NotMonic, "alg_roots needs a monic polynomial");
    std::set<AlgInt> out;
    if (K.is_zero(Q[0])) {
        out.insert(K.zero());
        size_t z = 0;
        while (K.is_zero(Q[z])) ++z;
        Q.erase(Q.begin(), Q.begin() + z);
    }
    if (Q.size() > 1) {
        bool done = false;
        for (int t = 0; t <= K.max_tier() && !done; ++t) {
            std::set<AlgInt> found;
            if (roots_at(K, Q, t, 0, found)) {
                out.insert(found.begin(), found.end());
                done = true;
            }
        }
        for (int attempt = 1; attempt <= 3 && !done; ++attempt) {
            std::set<AlgInt> found;
            if (roots_at(K, Q, K.max_tier(), attempt, found)) {
                out.insert(found.begin(), found.end());
                done = true;
            }
        }
        if (!done) throw Error(Errc::PrecisionExhausted, "root coordinates could not be separated from rounding");
    }
    return {out.begin(), out.end()};
}

}  // namespace nfc
