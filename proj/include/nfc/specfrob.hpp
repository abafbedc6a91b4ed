#pragma once

// Regular models P(T, Y) of G-extensions of K(T) and their specializations at
// t0 in O_K: discriminant certificates, Frobenius patterns, one-sided group
// certification and field fingerprints.

#include "nfc/modp.hpp"

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nfc {

struct ClassRow {
    std::string label;
    CycleType type;  // in the degree-n action given by P
    long size = 0;
};

enum class Certificate { CertifiedG, Undecided, NotG };
std::string to_string(Certificate c);

using PatternList = std::vector<std::pair<PrimeIdeal, CycleType>>;  // sorted by prime

struct FieldFingerprint {
    u64 prime_bound = 0;
    PatternList entries;  // good primes of norm <= prime_bound with Delta_P(t0) nonzero mod the prime
    u64 hash = 0;
    bool operator==(const FieldFingerprint& o) const { return prime_bound == o.prime_bound && entries == o.entries; }
};
// Agreement on every prime present in both (absent primes act as wildcards).
bool compatible(const FieldFingerprint& a, const FieldFingerprint& b);
// First prime present in both at which the patterns differ, or 0.
u64 first_difference(const FieldFingerprint& a, const FieldFingerprint& b);

struct SpecializationRecord {
    AlgInt t0;
    AlgInt disc_value;  // Delta_P(t0), nonzero
    mpz_class disc_norm;
    Certificate certificate = Certificate::Undecided;
    PatternList patterns;  // observed during certification
    FieldFingerprint fingerprint;
};

struct ModelOptions {
    bool attested_irreducible = false;
    u64 bad_prime_scan = 1000;  // rational primes examined for bad_primes
};

class RegularModel {
public:
    static RegularModel create(const NumberField& K, const BiPoly& P, long group_order, int model_degree,
                               std::vector<ClassRow> classes, int branch_count, int genus,
                               const ModelOptions& opt = {});

    const NumberField& field() const { return d_->K; }
    const BiPoly& poly() const { return d_->P; }
    long group_order() const { return d_->group_order; }
    int model_degree() const { return d_->n; }
    const std::vector<ClassRow>& classes() const { return d_->classes; }
    int branch_count() const { return d_->r; }
    int genus() const { return d_->g; }
    int delta_P() const { return d_->good.delta_P; }
    const UniPoly& disc() const { return d_->good.disc; }
    const GoodPrimeData& good_data() const { return d_->good; }
    // Rational primes up to the scan bound that are ramified in K or lie under a bad prime.
    const std::vector<u64>& bad_primes() const { return d_->bad; }
    u64 bad_prime_scan() const { return d_->scan; }
    bool irreducibility_attested() const { return d_->attested; }
    // t at which the degree sieve certified P(t, Y) irreducible, if any.
    const AlgInt* irreducibility_witness() const { return d_->has_witness ? &d_->witness : nullptr; }

    bool is_good(const PrimeIdeal& P) const;
    bool is_bad_rational(u64 p) const;  // p ramified in K or some prime over p not good
    bool type_in_group(const CycleType& c) const;
    std::vector<CycleType> group_types() const;  // distinct cycle types, table order
    long class_weight(const std::set<CycleType>& types) const;

    struct PrimeEntry {
        PrimeIdeal P;
        bool good = false;
    };
    // Primes above unramified rational primes with norm <= X, sorted by (norm, p, factor).
    std::vector<PrimeEntry> primes_up_to(u64 X) const;

private:
    struct Data {
        NumberField K;
        BiPoly P;
        long group_order = 0;
        int n = 0;
        std::vector<ClassRow> classes;
        int r = 0, g = 0;
        GoodPrimeData good;
        std::vector<u64> bad;
        u64 scan = 0;
        bool attested = false;
        bool has_witness = false;
        AlgInt witness;
        std::vector<PrimeEntry> table;  // norm <= table_bound
        u64 table_bound = 0;
    };
    std::shared_ptr<const Data> d_;
};

// Subset sums of the parts, as a bitmask over 0..n.
u64 subset_sum_mask(const CycleType& c);

SpecializationRecord specialize(const RegularModel& M, const AlgInt& t0);
CycleType frobenius_pattern(const RegularModel& M, const AlgInt& t0, const PrimeIdeal& P);

struct CertifyResult {
    Certificate certificate = Certificate::Undecided;
    PatternList patterns;
    bool irreducible = false;  // degree sieve forced irreducibility
    std::vector<CycleType> missing;  // non-identity types not observed
};
// Uses primes over unramified p with norm <= prime_bound where Delta_P(t0) is nonzero.
CertifyResult certify_detail(const RegularModel& M, const AlgInt& t0, u64 prime_bound);
Certificate certify_group(const RegularModel& M, const AlgInt& t0, u64 prime_bound);

FieldFingerprint fingerprint(const RegularModel& M, const AlgInt& t0, u64 X = 200);

// specialize + certify + fingerprint in one pass over the primes; throws BranchPoint.
SpecializationRecord analyze(const RegularModel& M, const AlgInt& t0, u64 cert_bound, u64 X);

// Greedy fingerprint deduplication: each record is matched against earlier
// representatives by compatibility.
class FingerprintSet {
public:
    // Returns the index of the representative (new or existing) and whether it was new.
    std::pair<std::size_t, bool> insert(const FieldFingerprint& f);
    std::size_t size() const { return reps_.size(); }
    const FieldFingerprint& operator[](std::size_t i) const { return reps_[i]; }

private:
    std::vector<FieldFingerprint> reps_;
};

}  // namespace nfc
