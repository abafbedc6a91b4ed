#include "nfc/malle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace nfc {

long double delta_default(const RegularModel& M) {
    const long double G = (long double)M.group_order();
    if (G < 2) throw Error(Errc::InvalidInput, "|G| must be at least 2");
    return 3.0L * M.branch_count() * G * G * G * G * std::log(G);
}

void check_delta(const RegularModel& M, long double delta) {
    if (!(delta > M.delta_P()))
        throw Error(Errc::DeltaTooSmall, "delta must exceed delta_P = " + std::to_string(M.delta_P()));
}

long double height_budget(long double y, int rho, long double delta, int delta_P) {
    if (!(y > 1)) throw Error(Errc::InvalidInput, "y must exceed 1");
    if (!(delta > delta_P)) throw Error(Errc::DeltaTooSmall, "delta must exceed delta_P");
    return std::pow(y, 1.0L / (rho * (delta + delta_P) / 2.0L));
}

long double ls_slope(const std::vector<long double>& x, const std::vector<long double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(Errc::InvalidInput, "a slope needs two or more points");
    long double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    long double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0) throw Error(Errc::InvalidInput, "abscissae are all equal");
    return sxy / sxx;
}

namespace {

bool record_less(const SpecializationRecord& a, const SpecializationRecord& b) {
    return a.disc_norm != b.disc_norm ? a.disc_norm < b.disc_norm : a.t0 < b.t0;
}

std::vector<SpecializationRecord> analyze_all(const RegularModel& M, const std::vector<AlgInt>& ts, u64 cert,
                                              u64 X, unsigned workers) {
    std::vector<SpecializationRecord> out(ts.size());
    auto run = [&](std::size_t start, std::size_t step) {
        for (std::size_t i = start; i < ts.size(); i += step) out[i] = analyze(M, ts[i], cert, X);
    };
    workers = std::max(1u, std::min<unsigned>(workers, ts.size() ? ts.size() : 1));
    if (workers == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace

CensusReport count_fields(const RegularModel& M, long double y, long double delta, const FrobeniusData& data,
                          const CensusOptions& opt) {
    check_delta(M, delta);
    const auto& K = M.field();
    CensusReport R;
    R.y = y;
    R.delta = delta;
    R.delta_P = M.delta_P();
    R.delta_minus = (delta + R.delta_P) / 2;
    R.rho = K.degree();
    R.group_order = M.group_order();
    R.B = height_budget(y, R.rho, delta, R.delta_P);
    R.cert_bound = opt.cert_bound;
    R.fingerprint_bound = opt.fingerprint_bound;
    R.target_exponent = (1 - 1.0L / M.group_order()) / delta;
    R.target = std::pow(y, R.target_exponent);
    R.exponent_fit = std::numeric_limits<long double>::quiet_NaN();
    const mpz_class ycap = mpz_class(std::floor((double)y));

    std::vector<SpecializationRecord> recs;
    if (!data.empty()) {
        HilbertOptions h = opt.hilbert;
        h.cert_bound = opt.cert_bound;
        h.fingerprint_bound = opt.fingerprint_bound;
        h.disc_norm_cap = ycap;
        auto H = hilbert_enumerate(M, R.B, data, h);
        R.totals.enumerated = H.candidates;
        R.totals.branch_skipped = H.branch_skipped;
        R.totals.norm_filtered = H.norm_filtered;
        if (H.reverify_failures)
            throw Error(Errc::InvalidInput, std::to_string(H.reverify_failures) + " records failed re-verification");
        recs = std::move(H.records);
    } else {
        std::vector<AlgInt> ts;
        K.for_each_in_box(R.B, [&](const AlgInt& t) {
            ++R.totals.enumerated;
            const AlgInt v = evaluate(K, M.disc(), t);
            if (K.is_zero(v)) {
                ++R.totals.branch_skipped;
                return;
            }
            if (K.abs_norm(v) > ycap) {
                ++R.totals.norm_filtered;
                return;
            }
            ts.push_back(t);
        });
        for (auto& r : analyze_all(M, ts, opt.cert_bound, opt.fingerprint_bound, opt.workers))
            if (r.certificate == Certificate::CertifiedG) recs.push_back(std::move(r));
    }
    std::sort(recs.begin(), recs.end(), record_less);
    FingerprintSet fs;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs[i].disc_norm > ycap) throw Error(Errc::InvalidInput, "record outside the norm budget");
        auto [idx, fresh] = fs.insert(recs[i].fingerprint);
        if (fresh) R.reps.push_back(i);
        R.representative.push_back(R.reps[idx]);
    }
    R.totals.certified = recs.size();
    R.totals.distinct = fs.size();
    R.certified = std::move(recs);
    return R;
}

std::vector<CensusReport> census_sweep(const RegularModel& M, const std::vector<long double>& ys, long double delta,
                                       const FrobeniusData& data, const CensusOptions& opt) {
    std::vector<CensusReport> out;
    std::vector<long double> lx, ly;
    for (long double y : ys) {
        out.push_back(count_fields(M, y, delta, data, opt));
        if (out.back().totals.distinct > 0) {
            lx.push_back(std::log(y));
            ly.push_back(std::log((long double)out.back().totals.distinct));
        }
    }
    if (lx.size() >= 2) {
        const long double s = ls_slope(lx, ly);
        for (auto& r : out) r.exponent_fit = s;
    }
    return out;
}

DistinctRatio distinct_ratio(const RegularModel& M, long double B, const std::vector<SpecializationRecord>& certified) {
    if (!(B > 1)) throw Error(Errc::InvalidInput, "B must exceed 1");
    DistinctRatio r;
    FingerprintSet fs;
    for (auto& rec : certified) fs.insert(rec.fingerprint);
    r.N = fs.size();
    r.H = certified.size();
    if (r.H == 0) return r;
    const long double base = r.N * std::pow(B, (long double)M.field().degree() / M.group_order());
    const long double lb = std::log(B);
    for (int k = 0;; ++k) {
        const long double g = k / 100.0L;
        if (base * std::pow(lb, g) >= (long double)r.H) {
            r.gamma = g;
            return r;
        }
        if (lb <= 1 || k > 100000) {
            r.gamma = std::numeric_limits<long double>::infinity();
            return r;
        }
    }
}

bool grunwald_exceptional(const RegularModel& M, u64 p, u64 p_minus1) {
    return (6 * (u64)M.group_order()) % p == 0 || p <= p_minus1 || M.is_bad_rational(p);
}

GrunwaldResult grunwald_search(const RegularModel& M, const FrobeniusData& data, std::size_t max_solutions,
                               const GrunwaldOptions& opt) {
    const auto& K = M.field();
    const auto bp = base_primes(M);
    GrunwaldResult R;
    for (u64 p = 2; p <= bp.p0; p = next_prime(p + 1))
        if (grunwald_exceptional(M, p, bp.p_minus1)) R.exceptional.push_back(p);
    for (auto& [P, allowed] : data.entries)
        if (grunwald_exceptional(M, P.p, bp.p_minus1))
            throw Error(Errc::BadPrime, P.str() + " lies in the exceptional set");
    check_frobenius_data(M, data, bp.p_minus1);

    struct Filter {
        PrimeIdeal P;
        std::vector<u64> tau;  // degree one only
    };
    std::vector<Filter> filters;
    std::vector<Prescription> all;
    u64 cert = opt.cert_bound;
    for (auto& [P, allowed] : data.entries) {
        all.push_back({P, allowed, "data"});
        if (P.norm.fits_ulong_p() && P.norm.get_ui() <= opt.q_cap) {
            auto t = tau_cosets(M, P, allowed, opt.q_cap);
            if (t.nu == 0) throw Error(Errc::InfeasibleData, "tau is empty at " + P.str());
            if (P.residue_degree == 1) filters.push_back({P, t.residues});
            cert = std::max<u64>(cert, P.norm.get_ui());
        }
    }

    FingerprintSet fs;
    long prev = -1;
    for (long h = 2;; h = std::min(2 * h, opt.max_height)) {
        K.for_each_in_box((long double)h, [&](const AlgInt& t) {
            if (R.solutions.size() >= max_solutions) return;
            if (prev >= 0 && K.house_le(t, (long double)prev)) return;
            ++R.examined;
            for (auto& f : filters)
                if (!std::binary_search(f.tau.begin(), f.tau.end(), reduce_fp(f.P, t))) return;
            if (K.is_zero(evaluate(K, M.disc(), t))) return;
            auto rec = analyze(M, t, cert, opt.fingerprint_bound);
            if (rec.certificate != Certificate::CertifiedG || !meets_prescriptions(M, t, all)) return;
            if (fs.insert(rec.fingerprint).second) R.solutions.push_back(std::move(rec));
        });
        R.height_reached = h;
        prev = h;
        if (R.solutions.size() >= max_solutions || h >= opt.max_height) break;
    }
    if (R.solutions.empty())
        throw Error(Errc::SearchExhausted, "no solution up to height " + std::to_string(R.height_reached));
    return R;
}

}  // namespace nfc
