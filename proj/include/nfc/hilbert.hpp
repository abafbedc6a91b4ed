#pragma once

// Specializations with prescribed Frobenius: base primes, per-prime residue
// sets tau, CRT assembly over Z[theta]/I, bounded representatives and the
// re-verified enumeration pipeline.

#include "nfc/specfrob.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace nfc {

using TypeSet = std::set<CycleType>;

struct FrobeniusData {
    std::vector<std::pair<PrimeIdeal, TypeSet>> entries;
    bool empty() const { return entries.empty(); }
};

struct BasePrimes {
    u64 p_minus1 = 0;
    u64 p0 = 0;
};
BasePrimes base_primes(const RegularModel& M);

// Residue-field elements are encoded as sum c_i p^i over the basis 1, x, ..., x^(k-1).
struct TauResult {
    PrimeIdeal P;
    TypeSet allowed;
    std::vector<u64> residues;  // ascending
    u64 nu = 0;
    u64 q = 0;
    double weight = 0;  // |F_P| / |G|
    double lower = 0, upper = 0;
    bool bounds_ok = false;
};
TauResult tau_cosets(const RegularModel& M, const PrimeIdeal& P, const TypeSet& allowed, u64 q_cap = 1000000);

struct CosetSystem {
    NumberField K;
    std::vector<PrimeIdeal> primes;               // residue degree 1, distinct rational primes
    std::vector<std::vector<u64>> residue_sets;  // ascending
    mpz_class modulus_rational = 1;               // product of the p_i
    mpz_class count = 1;                          // product of the set sizes

    // Integer residue in [0, modulus) of the coset with mixed-radix index.
    mpz_class residue_at(const mpz_class& index) const;
    // All coset residues, ascending (count must fit in memory).
    std::vector<mpz_class> residues() const;
    bool contains(const AlgInt& t) const;
};
CosetSystem crt_assemble(const NumberField& K, const std::vector<std::pair<PrimeIdeal, std::vector<u64>>>& sets);

struct RepResult {
    std::vector<AlgInt> kept;      // canonical representative with house <= B_cap
    std::vector<AlgInt> excluded;  // canonical representative above B_cap
};
// Canonical representative per coset: coordinates in [1, modulus] on the power basis.
RepResult representatives(const CosetSystem& S, long double B_cap);
// max_i max(1, house(theta^i)) over the power basis.
long double basis_height(const NumberField& K);

struct Prescription {
    PrimeIdeal P;
    TypeSet allowed;
    std::string role;  // "data", "force <label>", "full"
};

struct HilbertOptions {
    u64 cert_bound = 100;
    u64 fingerprint_bound = 200;
    u64 q_cap = 1000000;
    u64 force_search_cap = 10000;  // forcing primes are searched below this bound
    mpz_class disc_norm_cap = 0;   // if positive, candidates with |N(Delta_P(t))| above it are dropped
};

struct HilbertResult {
    BasePrimes base;
    std::vector<Prescription> prescriptions;  // tau primes, in CRT order
    std::vector<Prescription> direct;         // residue degree > 1, tested on each candidate
    CosetSystem system;
    std::vector<SpecializationRecord> records;  // re-verified
    std::size_t candidates = 0;                 // house <= B and in the cosets
    std::size_t branch_skipped = 0;
    std::size_t norm_filtered = 0;  // dropped by disc_norm_cap
    std::size_t not_certified = 0;      // Undecided or NotG
    std::size_t reverify_failures = 0;  // certified but a prescribed pattern fails
};

// Validates user data (BadPrime, DuplicateRationalPrime, InvalidInput).
void check_frobenius_data(const RegularModel& M, const FrobeniusData& data, u64 p_minus1);
// Jordan-forcing prescriptions plus full-type primes of ]p_-1, p_0[ avoiding `taken`.
std::vector<Prescription> jordan_forcing(const RegularModel& M, const BasePrimes& bp, const std::set<u64>& taken,
                                         const HilbertOptions& opt = {});
// All prescribed patterns hold at t0 (Delta_P(t0) nonzero modulo each prime).
bool meets_prescriptions(const RegularModel& M, const AlgInt& t0, const std::vector<Prescription>& ps);

HilbertResult hilbert_enumerate(const RegularModel& M, long double B, const FrobeniusData& data,
                                const HilbertOptions& opt = {});

}  // namespace nfc
