#include "nfc/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nfc {

namespace {

u64 reduce_elem(const Fp&, const PrimeIdeal& P, const AlgInt& a) { return reduce_fp(P, a); }
Fq::E reduce_elem(const Fq&, const PrimeIdeal& P, const AlgInt& a) { return reduce_fq(P, a); }

u64 elem_at(const Fp&, u64 idx) { return idx; }
Fq::E elem_at(const Fq& f, u64 idx) {
    Fq::E e(f.k, 0);
    for (int i = 0; i < f.k; ++i, idx /= f.p) e[i] = idx % f.p;
    return e;
}

template <class F>
std::vector<u64> tau_scan(const RegularModel& M, const F& f, const PrimeIdeal& P, const TypeSet& allowed, u64 q) {
    const int n = M.model_degree();
    std::vector<FPoly<F>> coef(n + 1);
    for (int j = 0; j <= n; ++j) coef[j].assign(M.poly().deg_x1() + 1, f.zero());
    for (auto& [ij, c] : M.poly().terms) coef[ij.second][ij.first] = reduce_elem(f, P, c);
    for (auto& c : coef) fp_trim(f, c);
    FPoly<F> d;
    for (auto& c : M.disc()) d.push_back(reduce_elem(f, P, c));
    fp_trim(f, d);
    std::vector<u64> out;
    for (u64 idx = 0; idx < q; ++idx) {
        auto t = elem_at(f, idx);
        if (f.is_zero(fp_eval(f, d, t))) continue;
        FPoly<F> y(n + 1, f.zero());
        for (int j = 0; j <= n; ++j) y[j] = fp_eval(f, coef[j], t);
        if (allowed.count(factor_pattern_ff(f, y, 0))) out.push_back(idx);
    }
    return out;
}

// Integer m with m = a_i mod p_i.
mpz_class crt_combine(const std::vector<u64>& ps, const std::vector<u64>& as, const mpz_class& mod) {
    mpz_class m = 0;
    for (size_t i = 0; i < ps.size(); ++i) {
        mpz_class Mi = mod / (unsigned long)ps[i];
        u64 inv = invmod(mod_of(Mi, ps[i]), ps[i]);
        m += Mi * (unsigned long)mulmod(as[i], inv, ps[i]);
    }
    m %= mod;
    return m;
}

PrimeIdeal good_degree_one(const RegularModel& M, u64 p, bool* ok) {
    *ok = false;
    if (!is_unramified(M.field(), p)) return {};
    for (auto& P : split_prime(M.field(), p))
        if (P.residue_degree == 1 && M.is_good(P)) {
            *ok = true;
            return P;
        }
    return {};
}

}  // namespace

BasePrimes base_primes(const RegularModel& M) {
    mpz_class lo = (long)M.branch_count() * M.branch_count() * M.genus() * M.genus();
    if (lo < 2) lo = 2;
    for (auto& q : M.field().ramified_primes())
        if (q > lo) lo = q;
    BasePrimes b;
    b.p_minus1 = next_prime(lo.get_ui());
    u64 p = b.p_minus1;
    for (size_t k = 0; k < M.classes().size(); ++k) p = next_prime(p + 1);
    b.p0 = next_prime(p + 1);
    return b;
}

TauResult tau_cosets(const RegularModel& M, const PrimeIdeal& P, const TypeSet& allowed, u64 q_cap) {
    if (allowed.empty()) throw Error(Errc::InvalidInput, "empty set of admissible cycle types");
    for (auto& c : allowed)
        if (!M.type_in_group(c)) throw Error(Errc::InvalidInput, c.str() + " is not a cycle type of G");
    if (!M.is_good(P)) throw Error(Errc::BadPrime, P.str() + " is not good for the model");
    if (!P.norm.fits_ulong_p() || P.norm.get_ui() > q_cap)
        throw Error(Errc::InvalidInput, "residue field of " + P.str() + " exceeds the enumeration cap");
    TauResult r;
    r.P = P;
    r.allowed = allowed;
    r.q = P.norm.get_ui();
    r.residues = P.residue_degree == 1 ? tau_scan(M, Fp(P.p), P, allowed, r.q)
                                       : tau_scan(M, P.residue_field(), P, allowed, r.q);
    r.nu = r.residues.size();
    const double G = (double)M.group_order(), q = (double)r.q, sq = std::sqrt(q);
    r.weight = (double)M.class_weight(allowed) / G;
    r.lower = r.weight * (q + 1 - 2 * M.genus() * sq - G * (M.branch_count() + 1));
    r.upper = r.weight * (q + 1 + 2 * M.genus() * sq);
    r.bounds_ok = r.lower <= (double)r.nu && (double)r.nu <= r.upper;
    return r;
}

mpz_class CosetSystem::residue_at(const mpz_class& index) const {
    mpz_class rest = index;
    std::vector<u64> ps, as;
    for (size_t i = 0; i < primes.size(); ++i) {
        const unsigned long s = residue_sets[i].size();
        as.push_back(residue_sets[i][mpz_fdiv_ui(rest.get_mpz_t(), s)]);
        rest /= s;
        ps.push_back(primes[i].p);
    }
    return crt_combine(ps, as, modulus_rational);
}

std::vector<mpz_class> CosetSystem::residues() const {
    std::vector<mpz_class> out;
    if (!count.fits_ulong_p() || count > 50000000) throw Error(Errc::InvalidInput, "coset system too large to list");
    for (unsigned long i = 0; i < count.get_ui(); ++i) out.push_back(residue_at(i));
    std::sort(out.begin(), out.end());
    return out;
}

bool CosetSystem::contains(const AlgInt& t) const {
    for (size_t i = 0; i < primes.size(); ++i)
        if (!std::binary_search(residue_sets[i].begin(), residue_sets[i].end(), reduce_fp(primes[i], t)))
            return false;
    return true;
}

CosetSystem crt_assemble(const NumberField& K, const std::vector<std::pair<PrimeIdeal, std::vector<u64>>>& sets) {
    CosetSystem S;
    S.K = K;
    std::set<u64> seen;
    for (auto& [P, res] : sets) {
        if (!seen.insert(P.p).second)
            throw Error(Errc::DuplicateRationalPrime, "two primes over " + std::to_string(P.p));
        if (!is_unramified(K, P.p)) throw Error(Errc::RamifiedPrime, std::to_string(P.p) + " ramifies in K");
        if (P.residue_degree != 1) throw Error(Errc::InvalidInput, P.str() + " has residue degree > 1");
        std::vector<u64> r = res;
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        for (u64 a : r)
            if (a >= P.p) throw Error(Errc::InvalidInput, "residue out of range for " + P.str());
        S.primes.push_back(P);
        S.residue_sets.push_back(std::move(r));
        S.modulus_rational *= (unsigned long)P.p;
        S.count *= (unsigned long)S.residue_sets.back().size();
    }
    return S;
}

long double basis_height(const NumberField& K) {
    long double h = 1;
    AlgInt b = K.one();
    for (int i = 0; i < K.degree(); ++i) {
        h = std::max(h, K.house(b).value);
        b = K.mul(b, K.theta());
    }
    return h;
}

RepResult representatives(const CosetSystem& S, long double B_cap) {
    RepResult out;
    const auto& K = S.K;
    const int rho = K.degree();
    const mpz_class& Mod = S.modulus_rational;
    auto res = S.residues();
    auto emit = [&](const AlgInt& t) { (K.house_le(t, B_cap) ? out.kept : out.excluded).push_back(t); };
    if (rho == 1) {
        for (auto& m : res) emit(K.from_int(m == 0 ? Mod : m));
        return out;
    }
    mpz_class box = ipow(Mod, rho);
    if (box > 1000000) {
        for (auto& m : res) {
            std::vector<mpz_class> c(rho, Mod);
            c[0] = m == 0 ? Mod : m;
            emit(K.from_coords(c));
        }
        return out;
    }
    // smallest house among coordinate vectors in [1, Mod]^rho, per coset
    std::map<std::vector<u64>, std::pair<long double, AlgInt>> best;
    const u64 mod = Mod.get_ui();
    std::vector<u64> idx(rho, 1);
    for (;;) {
        std::vector<mpz_class> c(idx.begin(), idx.end());
        AlgInt t = K.from_coords(c);
        std::vector<u64> key;
        for (auto& P : S.primes) key.push_back(reduce_fp(P, t));
        long double h = K.house(t).value;
        auto it = best.find(key);
        if (it == best.end() || h < it->second.first) best[key] = {h, t};
        int k = 0;
        while (k < rho && idx[k] == mod) idx[k++] = 1;
        if (k == rho) break;
        ++idx[k];
    }
    for (auto& m : res) {
        std::vector<u64> key;
        for (auto& P : S.primes) key.push_back(mod_of(m, P.p));
        emit(best.at(key).second);
    }
    return out;
}

void check_frobenius_data(const RegularModel& M, const FrobeniusData& data, u64 p_minus1) {
    std::set<u64> seen;
    for (auto& [P, allowed] : data.entries) {
        if (allowed.empty()) throw Error(Errc::InvalidInput, "no admissible types at " + P.str());
        for (auto& c : allowed)
            if (!M.type_in_group(c)) throw Error(Errc::InvalidInput, c.str() + " is not a cycle type of G");
        if (!seen.insert(P.p).second)
            throw Error(Errc::DuplicateRationalPrime, "two prescriptions over " + std::to_string(P.p));
        if (P.p <= p_minus1)
            throw Error(Errc::InvalidInput, P.str() + " does not exceed p_-1 = " + std::to_string(p_minus1));
        if (!M.is_good(P)) throw Error(Errc::BadPrime, P.str() + " is not good for the model");
    }
}

std::vector<Prescription> jordan_forcing(const RegularModel& M, const BasePrimes& bp, const std::set<u64>& taken,
                                         const HilbertOptions& opt) {
    std::vector<Prescription> out;
    std::set<u64> used = taken;
    for (auto& type : M.group_types()) {
        std::string label;
        for (auto& row : M.classes())
            if (row.type == type) {
                label = row.label;
                break;
            }
        bool found = false;
        for (u64 p = next_prime(bp.p_minus1 + 1); p <= opt.force_search_cap && !found; p = next_prime(p + 1)) {
            if (used.count(p)) continue;
            bool ok;
            PrimeIdeal P = good_degree_one(M, p, &ok);
            if (!ok || tau_cosets(M, P, {type}, opt.q_cap).nu == 0) continue;
            out.push_back({P, {type}, "force " + label});
            used.insert(p);
            found = true;
        }
        if (!found) throw Error(Errc::InfeasibleData, "no good prime realizes " + type.str());
    }
    const auto types = M.group_types();
    TypeSet all(types.begin(), types.end());
    for (u64 p = next_prime(bp.p_minus1 + 1); p < bp.p0; p = next_prime(p + 1)) {
        if (used.count(p)) continue;
        bool ok;
        PrimeIdeal P = good_degree_one(M, p, &ok);
        if (!ok) continue;
        out.push_back({P, all, "full"});
        used.insert(p);
    }
    return out;
}

bool meets_prescriptions(const RegularModel& M, const AlgInt& t0, const std::vector<Prescription>& ps) {
    for (auto& pr : ps) {
        try {
            if (!pr.allowed.count(frobenius_pattern(M, t0, pr.P))) return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

HilbertResult hilbert_enumerate(const RegularModel& M, long double B, const FrobeniusData& data,
                                const HilbertOptions& opt) {
    HilbertResult R;
    R.base = base_primes(M);
    check_frobenius_data(M, data, R.base.p_minus1);
    std::set<u64> taken;
    std::vector<Prescription> pres;
    for (auto& [P, allowed] : data.entries) {
        taken.insert(P.p);
        Prescription pr{P, allowed, "data"};
        if (P.residue_degree > 1) {
            if (P.norm.fits_ulong_p() && P.norm.get_ui() <= opt.q_cap && tau_cosets(M, P, allowed, opt.q_cap).nu == 0)
                throw Error(Errc::InfeasibleData, "tau is empty at " + P.str());
            R.direct.push_back(pr);
        } else {
            pres.push_back(pr);
        }
    }
    for (auto& pr : jordan_forcing(M, R.base, taken, opt)) pres.push_back(pr);
    std::sort(pres.begin(), pres.end(), [](auto& a, auto& b) { return a.P.p < b.P.p; });

    std::vector<std::pair<PrimeIdeal, std::vector<u64>>> sets;
    u64 cert = opt.cert_bound;
    for (auto& pr : pres) {
        auto tau = tau_cosets(M, pr.P, pr.allowed, opt.q_cap);
        if (tau.nu == 0) throw Error(Errc::InfeasibleData, "tau is empty at " + pr.P.str());
        sets.emplace_back(pr.P, tau.residues);
        cert = std::max(cert, pr.P.p);
    }
    for (auto& pr : R.direct)
        if (pr.P.norm.fits_ulong_p()) cert = std::max(cert, (u64)pr.P.norm.get_ui());
    R.prescriptions = pres;
    R.system = crt_assemble(M.field(), sets);

    std::vector<Prescription> all = pres;
    all.insert(all.end(), R.direct.begin(), R.direct.end());
    const auto& K = M.field();
    K.for_each_in_box(B, [&](const AlgInt& t) {
        if (!R.system.contains(t)) return;
        if (!R.direct.empty() && !meets_prescriptions(M, t, R.direct)) return;
        ++R.candidates;
        if (K.is_zero(evaluate(K, M.disc(), t))) {
            ++R.branch_skipped;
            return;
        }
        if (opt.disc_norm_cap > 0 && K.abs_norm(evaluate(K, M.disc(), t)) > opt.disc_norm_cap) {
            ++R.norm_filtered;
            return;
        }
        auto rec = analyze(M, t, cert, opt.fingerprint_bound);
        if (rec.certificate != Certificate::CertifiedG)
            ++R.not_certified;
        else if (meets_prescriptions(M, t, all))
            R.records.push_back(std::move(rec));
        else
            ++R.reverify_failures;
    });
    return R;
}

}  // namespace nfc
