#pragma once

// Field counting under a discriminant-norm budget: delta and height budgets,
// the census with fingerprint deduplication, exponent fits, distinct ratios
// and the Grunwald search.

#include "nfc/hilbert.hpp"

#include <string>
#include <vector>

namespace nfc {

// 3 r |G|^4 log |G|
long double delta_default(const RegularModel& M);
// DeltaTooSmall unless delta > delta_P.
void check_delta(const RegularModel& M, long double delta);
// y^(1 / (rho delta^-)) with delta^- = (delta + delta_P) / 2.
long double height_budget(long double y, int rho, long double delta, int delta_P);

// Least-squares slope of y against x.
long double ls_slope(const std::vector<long double>& x, const std::vector<long double>& y);

struct CensusOptions {
    u64 cert_bound = 100;
    u64 fingerprint_bound = 200;
    unsigned workers = 1;
    HilbertOptions hilbert;  // used when Frobenius data is given
};

struct CensusTotals {
    std::size_t enumerated = 0;      // t with house <= B (and in the cosets when data is given)
    std::size_t branch_skipped = 0;  // Delta_P(t) = 0
    std::size_t norm_filtered = 0;   // dropped because |N(Delta_P(t))| > y
    std::size_t certified = 0;       // CertifiedG within the budget
    std::size_t distinct = 0;
};

struct CensusReport {
    long double y = 0, B = 0;
    long double delta = 0, delta_minus = 0;
    int delta_P = 0;
    int rho = 0;
    long group_order = 0;
    u64 cert_bound = 0, fingerprint_bound = 0;
    CensusTotals totals;
    long double target_exponent = 0;  // (1 - 1/|G|) / delta
    long double target = 0;           // y^target_exponent
    long double exponent_fit = 0;     // filled by census_sweep, NaN otherwise
    std::vector<SpecializationRecord> certified;  // sorted by (disc_norm, t0)
    std::vector<std::size_t> representative;     // index into certified, per certified record
    std::vector<std::size_t> reps;               // indices of the distinct representatives
    bool lower_bound_ok() const { return (long double)totals.distinct >= target; }
};

CensusReport count_fields(const RegularModel& M, long double y, long double delta, const FrobeniusData& data = {},
                          const CensusOptions& opt = {});
// One census per y; exponent_fit is the slope of log distinct against log y.
std::vector<CensusReport> census_sweep(const RegularModel& M, const std::vector<long double>& ys, long double delta,
                                       const FrobeniusData& data = {}, const CensusOptions& opt = {});

struct DistinctRatio {
    std::size_t N = 0;  // distinct fingerprints
    std::size_t H = 0;  // certified set size
    long double gamma = 0;  // least grid value with N B^(rho/|G|) (log B)^gamma >= H
};
DistinctRatio distinct_ratio(const RegularModel& M, long double B, const std::vector<SpecializationRecord>& certified);

struct GrunwaldOptions {
    long max_height = 500;
    u64 cert_bound = 100;
    u64 fingerprint_bound = 200;
    u64 q_cap = 1000000;
};

struct GrunwaldResult {
    std::vector<SpecializationRecord> solutions;  // pairwise distinct fingerprints
    long height_reached = 0;
    std::size_t examined = 0;
    std::vector<u64> exceptional;  // rational primes below the search bound that may not carry data
};
// Exceptional primes: p | 6|G|, p <= p_-1, and bad primes.
bool grunwald_exceptional(const RegularModel& M, u64 p, u64 p_minus1);
GrunwaldResult grunwald_search(const RegularModel& M, const FrobeniusData& data, std::size_t max_solutions,
                               const GrunwaldOptions& opt = {});

}  // namespace nfc
