#include "nfc/pointcount.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nfc {

PointCount count_points(const NumberField& K, const BiPoly& F, long double B) {
    if (!F.monic_in_x2()) throw Error(Errc::NotMonic, "F must be monic in X2");
    PointCount out;
    K.for_each_in_box(B, [&](const AlgInt& x1) {
        for (auto& x2 : alg_roots(K, bp_specialize_x1(K, F, x1)))
            if (K.house_le(x2, B)) out.points.push_back({x1, x2});
    });
    std::sort(out.points.begin(), out.points.end());
    out.count = out.points.size();
    return out;
}

long double theorem_c_rhs(int d, long double B, int rho, long double c_fit) {
    if (B < 3) throw Error(Errc::InvalidInput, "theorem_c_rhs needs B >= 3");
    const long double lb = std::log(B);
    return c_fit * std::pow((long double)d, 8) * lb * lb * lb * std::pow(B, (long double)rho / d);
}

long double liouville_budget(const NumberField& K, const BiPoly& F, const AlgInt& t) {
    const int m = F.deg_x1();
    return 2.0L * (m + 1) * poly_height(K, F).H * std::pow(K.height(t), (long double)m);
}

SpecPointCount check_specialization_roots(const NumberField& K, const BiPoly& F, const std::vector<AlgInt>& ts) {
    if (!F.monic_in_x2()) throw Error(Errc::NotMonic, "F must be monic in Y");
    SpecPointCount out;
    for (auto& t : ts) {
        auto roots = alg_roots(K, bp_specialize_x1(K, F, t));
        if (roots.empty()) continue;
        ++out.count;
        const long double budget = liouville_budget(K, F, t);
        for (auto& y : roots) {
            ++out.roots_checked;
            if (K.house(y).value > budget * (1 + 1e-12L)) ++out.violations;
            out.hits.emplace_back(t, y);
        }
    }
    return out;
}

SpecPointCount count_specialization_points(const NumberField& K, const BiPoly& F, long double B) {
    return check_specialization_roots(K, F, K.enumerate_box(B));
}

ShiftResult cor_c_shift(const NumberField& K, const BiPoly& F, int cap) {
    const int m = F.deg_x1(), n = F.deg_x2();
    if (m < 1 || n < 1) throw Error(Errc::InvalidInput, "the shift needs m, n >= 1");
    ShiftResult s;
    s.H = std::max(std::exp(std::exp(1.0L)), poly_height(K, F).H);
    s.L1 = std::log(s.H);
    s.L2 = std::log(s.L1);
    const long double e = std::floor(m * n * s.L1 / s.L2) + 1;
    if (e > cap)
        throw Error(Errc::ExponentCap, "E = " + std::to_string((long long)std::min(e, 1e18L)) + " exceeds the cap " +
                                           std::to_string(cap));
    s.E = (int)e;
    s.G = bp_shift_x2(K, F, s.E);
    return s;
}

// ---------------------------------------------------------------- Hensel series

namespace {

using Series = std::vector<mpz_class>;

mpz_class mod_pos(const mpz_class& a, const mpz_class& q) {
    mpz_class r = a % q;
    if (r < 0) r += q;
    return r;
}

Series s_mul(const Series& a, const Series& b, const mpz_class& q) {
    const size_t m = a.size();
    Series c(m, 0);
    for (size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; i + j < m; ++j) c[i + j] += a[i] * b[j];
    }
    for (auto& x : c) x = mod_pos(x, q);
    return c;
}

Series s_inv(const Series& a, const mpz_class& q) {
    const size_t m = a.size();
    Series b(m, 0);
    mpz_class b0;
    if (!mpz_invert(b0.get_mpz_t(), a[0].get_mpz_t(), q.get_mpz_t()))
        throw Error(Errc::NotSmooth, "series constant term is not a unit");
    b[0] = b0;
    for (size_t k = 1; k < m; ++k) {
        mpz_class s = 0;
        for (size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
        b[k] = mod_pos(-b0 * s, q);
    }
    return b;
}

// sum c_ij X1^i X2^j with both arguments series
Series s_eval(const std::map<std::pair<int, int>, mpz_class>& c, const Series& x1, const Series& x2, int d1, int d2,
              const mpz_class& q) {
    const size_t m = x1.size();
    std::vector<Series> p1(d1 + 1), p2(d2 + 1);
    Series one(m, 0);
    one[0] = 1 % q;
    p1[0] = p2[0] = one;
    for (int i = 1; i <= d1; ++i) p1[i] = s_mul(p1[i - 1], x1, q);
    for (int j = 1; j <= d2; ++j) p2[j] = s_mul(p2[j - 1], x2, q);
    Series out(m, 0);
    for (auto& [ij, v] : c) {
        auto t = s_mul(p1[ij.first], p2[ij.second], q);
        for (size_t k = 0; k < m; ++k) out[k] += v * t[k];
    }
    for (auto& x : out) x = mod_pos(x, q);
    return out;
}

}  // namespace

mpz_class HenselSeries::reduce(const AlgInt& a) const {
    mpz_class v = 0;
    for (size_t k = a.c.size(); k-- > 0;) v = mod_pos(v * theta + a.c[k], modulus);
    return v;
}

mpz_class HenselSeries::eval(const mpz_class& x2) const {
    const mpz_class z = mod_pos(x2 - (unsigned long)t2, modulus);
    mpz_class v = 0;
    for (size_t k = coeffs.size(); k-- > 0;) v = mod_pos(v * z + coeffs[k], modulus);
    return v;
}

HenselSeries hensel_series(const NumberField& K, const BiPoly& F, const PrimeIdeal& P, u64 t1, u64 t2, int m) {
    if (P.residue_degree != 1) throw Error(Errc::InvalidInput, "hensel_series needs a residue-degree-one prime");
    if (m < 1) throw Error(Errc::InvalidInput, "m must be positive");
    HenselSeries h;
    h.p = P.p;
    h.m = m;
    h.t1 = t1 % P.p;
    h.t2 = t2 % P.p;
    mpz_ui_pow_ui(h.modulus.get_mpz_t(), P.p, m);
    const mpz_class& q = h.modulus;

    // lift the root of f attached to P
    const auto& f = K.def_poly();
    mpz_class r = (unsigned long)P.root();
    for (mpz_class prec = (unsigned long)P.p; prec < q * P.p; prec *= prec) {
        mpz_class fv = 0, dv = 0;
        for (size_t k = f.size(); k-- > 0;) fv = mod_pos(fv * r + f[k], q);
        for (size_t k = f.size(); k-- > 1;) dv = mod_pos(dv * r + f[k] * (unsigned long)k, q);
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), q.get_mpz_t()))
            throw Error(Errc::RamifiedPrime, "f'(root) vanishes modulo the prime");
        r = mod_pos(r - fv * inv, q);
    }
    h.theta = r;

    std::map<std::pair<int, int>, mpz_class> c, c1;
    for (auto& [ij, v] : F.terms) {
        c[ij] = h.reduce(v);
        if (ij.first > 0) c1[{ij.first - 1, ij.second}] = mod_pos(h.reduce(v) * ij.first, q);
    }
    auto at_point = [&](const std::map<std::pair<int, int>, mpz_class>& cc) {
        mpz_class s = 0;
        for (auto& [ij, v] : cc) {
            mpz_class t = v;
            for (int i = 0; i < ij.first; ++i) t = t * (unsigned long)h.t1 % P.p;
            for (int j = 0; j < ij.second; ++j) t = t * (unsigned long)h.t2 % P.p;
            s += t;
        }
        return mod_pos(s, mpz_class((unsigned long)P.p));
    };
    if (at_point(c) != 0) throw Error(Errc::NotSmooth, "F does not vanish at the residue point");
    if (at_point(c1) == 0) throw Error(Errc::NotSmooth, "dF/dX1 vanishes at the residue point");

    Series x1(m, 0), x2(m, 0);
    x1[0] = (unsigned long)h.t1;
    x2[0] = (unsigned long)h.t2;
    if (m > 1) x2[1] = 1;
    const int d1 = F.deg_x1(), d2 = F.deg_x2();
    int iters = 1;
    while ((1 << iters) < 2 * m) ++iters;
    for (int it = 0; it <= iters; ++it) {
        auto fv = s_eval(c, x1, x2, d1, d2, q);
        auto dv = s_eval(c1, x1, x2, std::max(d1 - 1, 0), d2, q);
        auto step = s_mul(fv, s_inv(dv, q), q);
        for (int k = 0; k < m; ++k) x1[k] = mod_pos(x1[k] - step[k], q);
    }
    h.coeffs = x1;
    return h;
}

// ---------------------------------------------------------------- kernels

KernelResult ok_kernel(const NumberField& K, std::vector<std::vector<AlgInt>> A, int cols) {
    KernelResult out;
    const int rows = (int)A.size();
    std::vector<int> piv;
    AlgInt prev = K.one();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int i = r;
        while (i < rows && K.is_zero(A[i][c])) ++i;
        if (i == rows) continue;
        std::swap(A[i], A[r]);
        for (int k = r + 1; k < rows; ++k) {
            for (int j = c + 1; j < cols; ++j)
                A[k][j] = K.exact_div(K.sub(K.mul(A[r][c], A[k][j]), K.mul(A[k][c], A[r][j])), prev);
            A[k][c] = K.zero();
        }
        prev = A[r][c];
        piv.push_back(c);
        ++r;
    }
    out.rank = r;
    if (r == cols) return out;
    int free_col = 0;
    while (std::find(piv.begin(), piv.end(), free_col) != piv.end()) ++free_col;
    std::vector<AlgInt> x(cols, K.zero());
    AlgInt scale = K.one();
    for (int i = 0; i < r; ++i) scale = K.mul(scale, A[i][piv[i]]);
    x[free_col] = scale;
    for (int i = r - 1; i >= 0; --i) {
        AlgInt s = K.mul(A[i][free_col], x[free_col]);
        for (int k = i + 1; k < r; ++k) s = K.add(s, K.mul(A[i][piv[k]], x[piv[k]]));
        x[piv[i]] = K.exact_div(K.neg(s), A[i][piv[i]]);
    }
    // remove the rational content
    mpz_class g = 0;
    for (auto& v : x)
        for (auto& c : v.c) g = gcd(g, c);
    if (g > 1)
        for (auto& v : x)
            for (auto& c : v.c) c /= g;
    out.kernel = std::move(x);
    return out;
}

// ---------------------------------------------------------------- cover

int default_D(int d, long double B) { return (int)std::floor(d * std::log(B)) + 1; }

namespace {

// Residue points (t1, t2) mod P with F = 0 and dF/dX1 != 0.
u64 smooth_residue_points(const BiPoly& F, const BiPoly& F1, const PrimeIdeal& P) {
    Fp f(P.p);
    const int n = F.deg_x2();
    auto split = [&](const BiPoly& G, int deg2) {
        std::vector<FPoly<Fp>> c(deg2 + 1);
        for (auto& [ij, v] : G.terms) {
            auto& row = c[ij.second];
            if ((int)row.size() <= ij.first) row.resize(ij.first + 1, 0);
            row[ij.first] = reduce_fp(P, v);
        }
        for (auto& row : c) fp_trim(f, row);
        return c;
    };
    auto cf = split(F, n);
    auto c1 = split(F1, std::max(F1.deg_x2(), 0));
    u64 count = 0;
    const mpz_class pz((unsigned long)P.p);
    for (u64 t1 = 0; t1 < P.p; ++t1) {
        FPoly<Fp> y(n + 1);
        for (int j = 0; j <= n; ++j) y[j] = fp_eval(f, cf[j], t1);
        fp_trim(f, y);
        FPoly<Fp> g = fp_gcd(f, y, fp_sub(f, fp_powmod(f, fp_x(f), pz, y), fp_x(f)));
        if (fp_deg<Fp>(g) < 1) continue;
        for (auto& lin : fp_factor_squarefree(f, fp_monic(f, g), 0)) {
            const u64 t2 = f.neg(lin[0]);
            u64 v = 0, pw = 1;
            for (size_t j = 0; j < c1.size(); ++j) {
                v = f.add(v, f.mul(fp_eval(f, c1[j], t1), pw));
                pw = f.mul(pw, t2);
            }
            count += v != 0;
        }
    }
    return count;
}

}  // namespace

CoverReport detmethod_cover(const NumberField& K, const BiPoly& F, long double B, int D, const CoverOptions& opt) {
    if (!F.monic_in_x2()) throw Error(Errc::NotMonic, "F must be monic in X2");
    CoverReport R;
    R.d = F.total_degree();
    R.D = D;
    if (R.d < 1) throw Error(Errc::InvalidInput, "F must be nonconstant");
    if (D < R.d) throw Error(Errc::InvalidInput, "D = " + std::to_string(D) + " is below d = " + std::to_string(R.d));
    if (B < 2) throw Error(Errc::InvalidInput, "B must be at least 2");
    const int rho = K.degree();

    bool have = false;
    for (auto& [ij, v] : F.terms)
        if (ij.first + ij.second == R.d && (!have || ij > std::make_pair(R.m1, R.m2))) {
            R.m1 = ij.first;
            R.m2 = ij.second;
            have = true;
        }
    for (int e1 = 0; e1 <= R.m1; ++e1)
        for (int e2 = 0; e2 <= R.m2; ++e2)
            if (e1 + e2 <= D) {
                R.monomials.push_back({e1, e2});
                R.E_prime += e1 + e2;
            }
    R.E = (int)R.monomials.size();
    const int E = R.E;

    BiPoly F1 = bp_deriv(K, F, Axis::X1);
    auto brute = count_points(K, F, B);
    R.points = brute.count;

    const long double Hp = poly_height(K, F).Hplus;
    R.hB = std::log2(std::pow((long double)R.d, 3) * Hp * std::pow(B, (long double)(R.d - 1)));
    R.r = rho * R.hB >= 1 ? (int)std::floor(std::log2(rho * R.hB)) + 1 : 1;
    R.P_formula = std::pow(std::exp(8.0L) * std::pow(B, 1.0L / R.d + 6.0L / D), (long double)rho);
    if (R.P_formula + 1 <= (long double)opt.P_cap) {
        R.P = 1 + (u64)std::floor(R.P_formula);
        R.regime = "formula";
    } else {
        R.P = opt.P_cap;
        R.regime = "capped";
    }
    const int groups = (R.r + rho - 1) / rho;
    std::vector<PrimeIdeal> primes;
    for (auto& grp : totally_split_primes(K, R.P, groups, opt.split_scan_cap))
        for (auto& P : grp)
            if ((int)primes.size() < R.r) primes.push_back(P);

    R.hensel_m = std::max(1, E * (E - 1) / 2);
    if (R.hensel_m > opt.m_cap) {
        R.hensel_m = opt.m_cap;
        R.hensel_capped = true;
    }

    R.aux_polys.push_back(F1);
    R.coprimality_ok = !F1.is_zero();
    if (R.coprimality_ok) {
        auto res = resultant_bivar(K, F, F1, Axis::X2);
        up_trim(K, res);
        R.coprimality_ok = !res.empty();
    }

    std::vector<AlgInt> f1_at;
    for (auto& pt : brute.points) f1_at.push_back(evaluate(K, F1, pt.x1, pt.x2).value);

    for (auto& P : primes) {
        CoverPrime cp;
        cp.P = P;
        cp.lang_weil = 2ull * R.d * R.d * R.d * P.p;
        cp.hypothesis_ok = (E * (E - 1) / 2.0L) * std::log((long double)P.p) >=
                           rho * (E * std::log((long double)E) + R.E_prime * std::log(B));
        if (opt.smooth_census) cp.smooth_points = smooth_residue_points(F, F1, P);

        std::map<std::pair<u64, u64>, std::vector<std::size_t>> cells;
        for (std::size_t i = 0; i < brute.points.size(); ++i) {
            if (K.is_zero(f1_at[i]) || reduce_fp(P, f1_at[i]) == 0) continue;
            cells[{reduce_fp(P, brute.points[i].x1), reduce_fp(P, brute.points[i].x2)}].push_back(i);
        }
        for (auto& [t, idx] : cells) {
            CoverCell cell;
            cell.P = P;
            cell.t1 = t.first;
            cell.t2 = t.second;
            cell.L = idx.size();
            std::vector<std::vector<AlgInt>> M;
            for (auto i : idx) {
                std::vector<AlgInt> row;
                for (auto [e1, e2] : R.monomials)
                    row.push_back(K.mul(K.pow(brute.points[i].x1, e1), K.pow(brute.points[i].x2, e2)));
                M.push_back(std::move(row));
            }
            auto kr = ok_kernel(K, M, E);
            cell.rank = kr.rank;
            if ((int)cell.L >= E) R.ranks_full_rows.push_back(kr.rank);
            if (kr.rank >= E)
                throw Error(Errc::RankFull, "monomial matrix of full rank at " + P.str() + ", residue point (" +
                                                std::to_string(t.first) + ", " + std::to_string(t.second) +
                                                "), regime " + R.regime);
            BiPoly Ft;
            for (int e = 0; e < E; ++e)
                if (!K.is_zero(kr.kernel[e])) bp_add_term(K, Ft, R.monomials[e].first, R.monomials[e].second, kr.kernel[e]);
            cell.vanishes = true;
            for (auto i : idx)
                cell.vanishes &= K.is_zero(evaluate(K, Ft, brute.points[i].x1, brute.points[i].x2).value);
            auto res = resultant_bivar(K, F, Ft, Axis::X2);
            up_trim(K, res);
            cell.coprime = !res.empty();
            auto hs = hensel_series(K, F, P, t.first, t.second, R.hensel_m);
            cell.hensel_ok = true;
            for (auto i : idx)
                cell.hensel_ok &= hs.reduce(brute.points[i].x1) == hs.eval(hs.reduce(brute.points[i].x2));
            R.coprimality_ok &= cell.coprime;
            cell.aux_index = R.aux_polys.size();
            R.aux_polys.push_back(std::move(Ft));
            R.cells.push_back(cell);
            ++cp.cells;
        }
        R.primes.push_back(cp);
    }
    for (int rk : R.ranks_full_rows) R.rank_ok &= rk <= E - 1;

    R.coverage_ok = true;
    for (auto& pt : brute.points) {
        bool hit = false;
        for (auto& G : R.aux_polys)
            if (K.is_zero(evaluate(K, G, pt.x1, pt.x2).value)) {
                hit = true;
                break;
            }
        R.coverage_ok &= hit;
    }
    R.k = R.aux_polys.size();
    R.bezout_bound = mpz_class((unsigned long)R.k) * R.d * D;
    return R;
}

}  // namespace nfc
