#include "nfc/specfrob.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>

namespace nfc {

std::string to_string(Certificate c) {
    switch (c) {
        case Certificate::CertifiedG: return "CertifiedG";
        case Certificate::Undecided: return "Undecided";
        case Certificate::NotG: return "NotG";
    }
    return "?";
}

namespace {

u64 hash_entries(const PatternList& e) {
    std::size_t h = 0;
    for (auto& [P, c] : e) {
        boost::hash_combine(h, P.p);
        boost::hash_range(h, P.g.begin(), P.g.end());
        boost::hash_range(h, c.parts.begin(), c.parts.end());
    }
    return h;
}

bool nonzero_mod(const PrimeIdeal& P, const AlgInt& a) {
    if (P.residue_degree == 1) return reduce_fp(P, a) != 0;
    auto v = reduce_fq(P, a);
    return std::any_of(v.begin(), v.end(), [](u64 x) { return x != 0; });
}

bool norm_le(const PrimeIdeal& P, u64 X) { return cmp(P.norm, mpz_class((unsigned long)X)) <= 0; }

// Certificate from observed patterns; Q = P(t0, Y) is used for the K-root test.
CertifyResult decide(const RegularModel& M, const UniPoly& Q, PatternList pats) {
    CertifyResult out;
    const int n = M.model_degree();
    u64 allowed = n >= 63 ? ~0ull : ((1ull << (n + 1)) - 1);
    std::set<CycleType> seen;
    bool foreign = false;
    for (auto& [P, c] : pats) {
        allowed &= subset_sum_mask(c);
        seen.insert(c);
        if (!M.type_in_group(c)) foreign = true;
    }
    out.irreducible = n <= 1 || allowed == ((1ull << n) | 1ull);
    for (auto& c : M.group_types()) {
        if (c.all_equal() && c.parts.front() == 1) continue;
        if (!seen.count(c)) out.missing.push_back(c);
    }
    out.patterns = std::move(pats);
    if (foreign) {
        out.certificate = Certificate::NotG;
        return out;
    }
    if (out.irreducible && out.missing.empty()) {
        out.certificate = Certificate::CertifiedG;
        return out;
    }
    if (!out.irreducible && n >= 2) {
        try {
            if (!alg_roots(M.field(), Q).empty()) {
                out.certificate = Certificate::NotG;
                return out;
            }
        } catch (const Error&) {
        }
    }
    out.certificate = Certificate::Undecided;
    return out;
}

}  // namespace

bool compatible(const FieldFingerprint& a, const FieldFingerprint& b) { return first_difference(a, b) == 0; }

u64 first_difference(const FieldFingerprint& a, const FieldFingerprint& b) {
    auto i = a.entries.begin(), j = b.entries.begin();
    while (i != a.entries.end() && j != b.entries.end()) {
        if (i->first < j->first)
            ++i;
        else if (j->first < i->first)
            ++j;
        else {
            if (i->second != j->second) return i->first.p;
            ++i;
            ++j;
        }
    }
    return 0;
}

u64 subset_sum_mask(const CycleType& c) {
    u64 m = 1;
    for (int x : c.parts) m |= x < 64 ? (m << x) : 0;
    return m;
}

RegularModel RegularModel::create(const NumberField& K, const BiPoly& P, long group_order, int model_degree,
                                  std::vector<ClassRow> classes, int branch_count, int genus,
                                  const ModelOptions& opt) {
    if (group_order < 1) throw Error(Errc::InvalidInput, "group order must be positive");
    if (model_degree < 1 || model_degree > 62) throw Error(Errc::InvalidInput, "model degree must lie in [1, 62]");
    if (branch_count < 0 || genus < 0) throw Error(Errc::InvalidInput, "r and g must be nonnegative");
    if (!P.monic_in_x2()) throw Error(Errc::NotMonic, "model must be monic in Y");
    if (P.deg_x2() != model_degree)
        throw Error(Errc::InvalidInput, "deg_Y P = " + std::to_string(P.deg_x2()) + " but n = " +
                                            std::to_string(model_degree));
    long total = 0;
    bool identity = false;
    for (auto& row : classes) {
        if (row.size < 1) throw Error(Errc::InvalidInput, "class " + row.label + " has nonpositive size");
        if (row.type.degree() != model_degree)
            throw Error(Errc::InvalidInput, "class " + row.label + " has cycle type " + row.type.str() +
                                                " of the wrong degree");
        total += row.size;
        if (row.type.parts == std::vector<int>(model_degree, 1) && row.size == 1) identity = true;
    }
    if (total != group_order)
        throw Error(Errc::InvalidInput, "class sizes sum to " + std::to_string(total) + ", not |G| = " +
                                            std::to_string(group_order));
    if (!identity) throw Error(Errc::InvalidInput, "class table lacks the identity class of type 1^n");

    auto d = std::make_shared<Data>();
    d->K = K;
    d->P = P;
    d->group_order = group_order;
    d->n = model_degree;
    d->classes = std::move(classes);
    d->r = branch_count;
    d->g = genus;
    d->attested = opt.attested_irreducible;
    d->scan = opt.bad_prime_scan;

    auto D = disc_y(K, P);
    if (D.disc.empty()) throw Error(Errc::NotSquarefree, "P is inseparable in Y");
    d->good.disc = D.disc;
    d->good.delta_P = D.delta;
    d->good.group_order = mpz_class(group_order);
    if (D.delta > 0) {
        UniPoly der;
        for (size_t k = 1; k < D.disc.size(); ++k) der.push_back(K.mul(K.from_int((long)k), D.disc[k]));
        up_trim(K, der);
        d->good.distinct_roots = D.delta - (der.empty() ? 0 : gcd_degree(K, D.disc, der));
    }

    d->table_bound = std::max<u64>(d->scan, 1000);
    const mpz_class tb((unsigned long)d->table_bound);
    for (u64 p : nfc::primes_up_to(d->table_bound)) {
        if (!is_unramified(K, p)) {
            if (p <= d->scan) d->bad.push_back(p);
            continue;
        }
        bool bad = false;
        for (auto& Pi : split_prime(K, p)) {
            bool g = is_good_prime(K, d->good, Pi);
            bad |= !g;
            if (Pi.norm <= tb) d->table.push_back({Pi, g});
        }
        if (bad && p <= d->scan) d->bad.push_back(p);
    }
    std::stable_sort(d->table.begin(), d->table.end(),
                     [](const PrimeEntry& a, const PrimeEntry& b) { return cmp(a.P.norm, b.P.norm) < 0; });

    RegularModel M;
    M.d_ = d;
    // Degree sieve on small specializations: an irreducible P(t, Y) of full
    // Y-degree forces P irreducible over K(T).
    for (long k = 1; k <= 24 && !d->has_witness; ++k) {
        AlgInt t = K.from_int(k % 2 ? (k + 1) / 2 : -(k / 2));
        if (K.is_zero(evaluate(K, d->good.disc, t))) continue;
        if (certify_detail(M, t, 500).irreducible) {
            d->has_witness = true;
            d->witness = t;
        }
    }
    if (!d->has_witness && !d->attested)
        throw Error(Errc::NotIrreducible,
                    "irreducibility of P over K(T) could not be certified; attest it to proceed");
    return M;
}

bool RegularModel::is_good(const PrimeIdeal& P) const { return is_good_prime(d_->K, d_->good, P); }

bool RegularModel::is_bad_rational(u64 p) const {
    if (p <= d_->scan) return std::binary_search(d_->bad.begin(), d_->bad.end(), p);
    if (!is_unramified(d_->K, p)) return true;
    for (auto& Pi : split_prime(d_->K, p))
        if (!is_good(Pi)) return true;
    return false;
}

bool RegularModel::type_in_group(const CycleType& c) const {
    for (auto& row : d_->classes)
        if (row.type == c) return true;
    return false;
}

std::vector<CycleType> RegularModel::group_types() const {
    std::vector<CycleType> out;
    for (auto& row : d_->classes)
        if (std::find(out.begin(), out.end(), row.type) == out.end()) out.push_back(row.type);
    return out;
}

long RegularModel::class_weight(const std::set<CycleType>& types) const {
    long w = 0;
    for (auto& row : d_->classes)
        if (types.count(row.type)) w += row.size;
    return w;
}

std::vector<RegularModel::PrimeEntry> RegularModel::primes_up_to(u64 X) const {
    std::vector<PrimeEntry> out;
    if (X <= d_->table_bound) {
        for (auto& e : d_->table)
            if (norm_le(e.P, X)) out.push_back(e);
        return out;
    }
    for (u64 p : nfc::primes_up_to(X)) {
        if (!is_unramified(d_->K, p)) continue;
        for (auto& Pi : split_prime(d_->K, p))
            if (norm_le(Pi, X)) out.push_back({Pi, is_good(Pi)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const PrimeEntry& a, const PrimeEntry& b) { return cmp(a.P.norm, b.P.norm) < 0; });
    return out;
}

SpecializationRecord specialize(const RegularModel& M, const AlgInt& t0) {
    const auto& K = M.field();
    SpecializationRecord rec;
    rec.t0 = t0;
    rec.disc_value = evaluate(K, M.disc(), t0);
    if (K.is_zero(rec.disc_value))
        throw Error(Errc::BranchPoint, "Delta_P vanishes at t0 = " + K.to_string(t0));
    rec.disc_norm = K.abs_norm(rec.disc_value);
    return rec;
}

CycleType frobenius_pattern(const RegularModel& M, const AlgInt& t0, const PrimeIdeal& P) {
    const auto& K = M.field();
    if (!is_unramified(K, P.p)) throw Error(Errc::BadPrime, P.str() + " is ramified in K");
    if (!nonzero_mod(P, evaluate(K, M.disc(), t0)))
        throw Error(Errc::NotSquarefree, "Delta_P(t0) vanishes modulo " + P.str());
    return factor_pattern(P, bp_specialize_x1(K, M.poly(), t0));
}

CertifyResult certify_detail(const RegularModel& M, const AlgInt& t0, u64 prime_bound) {
    const auto& K = M.field();
    AlgInt dv = evaluate(K, M.disc(), t0);
    if (K.is_zero(dv)) throw Error(Errc::BranchPoint, "Delta_P vanishes at t0 = " + K.to_string(t0));
    UniPoly Q = bp_specialize_x1(K, M.poly(), t0);
    PatternList pats;
    for (auto& e : M.primes_up_to(prime_bound))
        if (nonzero_mod(e.P, dv)) pats.emplace_back(e.P, factor_pattern(e.P, Q));
    std::sort(pats.begin(), pats.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return decide(M, Q, std::move(pats));
}

Certificate certify_group(const RegularModel& M, const AlgInt& t0, u64 prime_bound) {
    return certify_detail(M, t0, prime_bound).certificate;
}

FieldFingerprint fingerprint(const RegularModel& M, const AlgInt& t0, u64 X) {
    const auto& K = M.field();
    AlgInt dv = evaluate(K, M.disc(), t0);
    UniPoly Q = bp_specialize_x1(K, M.poly(), t0);
    FieldFingerprint f;
    f.prime_bound = X;
    for (auto& e : M.primes_up_to(X))
        if (e.good && nonzero_mod(e.P, dv)) f.entries.emplace_back(e.P, factor_pattern(e.P, Q));
    std::sort(f.entries.begin(), f.entries.end(), [](auto& a, auto& b) { return a.first < b.first; });
    f.hash = hash_entries(f.entries);
    return f;
}

SpecializationRecord analyze(const RegularModel& M, const AlgInt& t0, u64 cert_bound, u64 X) {
    const auto& K = M.field();
    SpecializationRecord rec = specialize(M, t0);
    UniPoly Q = bp_specialize_x1(K, M.poly(), t0);
    PatternList cert;
    rec.fingerprint.prime_bound = X;
    for (auto& e : M.primes_up_to(std::max(cert_bound, X))) {
        const bool in_cert = norm_le(e.P, cert_bound);
        const bool in_fp = e.good && norm_le(e.P, X);
        if (!in_cert && !in_fp) continue;
        if (!nonzero_mod(e.P, rec.disc_value)) continue;
        CycleType c = factor_pattern(e.P, Q);
        if (in_cert) cert.emplace_back(e.P, c);
        if (in_fp) rec.fingerprint.entries.emplace_back(e.P, c);
    }
    auto by_prime = [](auto& a, auto& b) { return a.first < b.first; };
    std::sort(cert.begin(), cert.end(), by_prime);
    std::sort(rec.fingerprint.entries.begin(), rec.fingerprint.entries.end(), by_prime);
    rec.fingerprint.hash = hash_entries(rec.fingerprint.entries);
    auto d = decide(M, Q, std::move(cert));
    rec.certificate = d.certificate;
    rec.patterns = std::move(d.patterns);
    return rec;
}

std::pair<std::size_t, bool> FingerprintSet::insert(const FieldFingerprint& f) {
    for (std::size_t i = 0; i < reps_.size(); ++i)
        if (compatible(reps_[i], f)) return {i, false};
    reps_.push_back(f);
    return {reps_.size() - 1, true};
}

}  // namespace nfc
