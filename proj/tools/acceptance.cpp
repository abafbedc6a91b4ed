// Runs the ten acceptance criteria; one PASS/FAIL line each, exit status 1 on any failure.

#include "commands.hpp"

#include "nfc/pointcount.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace nfc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

const CycleType split2({1, 1}), inert2({2});
const std::vector<ClassRow> kS3Rows = {
    {"e", CycleType({1, 1, 1}), 1}, {"t", CycleType({1, 2}), 3}, {"c", CycleType({3}), 2}};

RegularModel c2_model() {
    auto Q = NumberField::rationals();
    return RegularModel::create(Q, parse_bipoly(Q, "Y^2 - T"), 2, 2, {{"e", split2, 1}, {"s", inert2, 1}}, 2, 0);
}

long legendre(long a, long p) {
    long r = ((a % p) + p) % p, e = (p - 1) / 2, out = 1;
    for (; e; e >>= 1, r = r * r % p)
        if (e & 1) out = out * r % p;
    return out == p - 1 ? -1 : out;
}

bool is_square(long t) {
    if (t < 0) return false;
    long r = std::lround(std::sqrt((double)t));
    return r * r == t;
}

long squarefree_part(long t) {
    long s = t < 0 ? -1 : 1, a = std::labs(t);
    for (long q = 2; q * q <= a; ++q)
        while (a % (q * q) == 0) a /= q * q;
    return s * a;
}

std::size_t naive_count(const NumberField& K, const BiPoly& F, long double B) {
    auto box = K.enumerate_box(B);
    std::size_t n = 0;
    for (auto& a : box)
        for (auto& b : box) n += K.is_zero(evaluate(K, F, a, b).value);
    return n;
}

std::string fmt(long double x) {
    std::ostringstream os;
    os << std::setprecision(4) << (double)x;
    return os.str();
}

// 1. count_points against the naive double box, and the cuspidal values
Outcome point_count_oracle() {
    Outcome o;
    auto Q = NumberField::rationals();
    auto Qi = NumberField::create({1, 0, 1});
    auto Q2 = NumberField::create({-2, 0, 1});
    int compared = 0;
    for (const char* s : {"X2^2 - X1^3", "X2^2 - 2*X1^2 - 1", "X1^2 + X2^2", "X2^2 - X1", "X2^3 - X1^2 - X1",
                          "X2^2 + X1*X2 - X1^3 + 1"}) {
        for (long double B : {10.0L, 30.0L}) {
            auto F = parse_bipoly(Q, s);
            o.require(count_points(Q, F, B).count == naive_count(Q, F, B), std::string(s) + " over Q");
            ++compared;
        }
        for (auto* K : {&Qi, &Q2}) {
            auto F = parse_bipoly(*K, s);
            o.require(count_points(*K, F, 5).count == naive_count(*K, F, 5), std::string(s) + " over a quadratic field");
            ++compared;
        }
    }
    auto cusp = parse_bipoly(Q, "X2^2 - X1^3");
    const auto n100 = count_points(Q, cusp, 100).count, n1000 = count_points(Q, cusp, 1000).count;
    o.require(n100 == 9, "N(cusp, 100) = " + std::to_string(n100));
    o.require(n1000 == 21, "N(cusp, 1000) = " + std::to_string(n1000));
    if (o.ok) o.detail = std::to_string(compared) + " oracle comparisons, N(cusp) = 9, 21";
    return o;
}

// 2. growth slope of log N against log B
Outcome growth() {
    Outcome o;
    auto Q = NumberField::rationals();
    std::vector<long double> lx;
    for (long double B : {1e2L, 1e3L, 1e4L}) lx.push_back(std::log(B));
    std::ostringstream det;
    for (const char* s : {"X2^2 - X1^3", "X2^2 - 2*X1^2 - 1"}) {
        auto F = parse_bipoly(Q, s);
        std::vector<long double> ly;
        for (long double B : {1e2L, 1e3L, 1e4L}) ly.push_back(std::log((long double)count_points(Q, F, B).count));
        const long double slope = ls_slope(lx, ly), cap = 1.0L / F.total_degree() + 0.1L;
        o.require(slope <= cap, std::string(s) + " slope " + fmt(slope));
        if (F.total_degree() == 3) o.require(slope >= 0.28L && slope <= 0.38L, "cusp slope " + fmt(slope));
        det << s << " slope " << fmt(slope) << " (cap " << fmt(cap) << "); ";
    }
    if (o.ok) o.detail = det.str();
    return o;
}

// 3. determinant-method cover at B = 100
Outcome det_cover() {
    Outcome o;
    auto Q = NumberField::rationals();
    std::ostringstream det;
    for (const char* s : {"X2^2 - X1^3", "X2^2 - 2*X1^2 - 1"}) {
        auto F = parse_bipoly(Q, s);
        const int D = default_D(F.total_degree(), 100);
        auto R = detmethod_cover(Q, F, 100, D);
        o.require(R.regime == "formula", std::string(s) + " ran in the capped regime");
        o.require(R.coverage_ok, std::string(s) + " coverage");
        o.require(R.coprimality_ok, std::string(s) + " coprimality");
        o.require(R.rank_ok, std::string(s) + " rank");
        std::size_t matrices = 0;
        for (auto& c : R.cells) {
            o.require(c.rank <= R.E - 1, std::string(s) + " cell rank");
            o.require(c.vanishes && c.coprime && c.hensel_ok, std::string(s) + " cell checks");
            ++matrices;
        }
        for (auto& p : R.primes) o.require(p.smooth_points <= p.lang_weil, std::string(s) + " Lang-Weil count");
        det << s << ": D=" << D << " P=" << R.P << " r=" << R.r << " k=" << R.k << " matrices=" << matrices
            << " (with >= E rows: " << R.ranks_full_rows.size() << ") points=" << R.points << "; ";
    }
    if (o.ok) o.detail = det.str();
    return o;
}

// 4. N_T(Y^2 - T) and the Liouville budget
Outcome specialization_count() {
    Outcome o;
    auto Q = NumberField::rationals();
    auto Qi = NumberField::create({1, 0, 1});
    auto F = parse_bipoly(Q, "Y^2 - T");
    for (long B : {100L, 10000L}) {
        const auto n = count_specialization_points(Q, F, B).count;
        o.require(n == (std::size_t)std::floor(std::sqrt((double)B)) + 1, "N_T at B=" + std::to_string(B));
    }
    std::mt19937_64 rng(20261016);
    std::size_t roots = 0, violations = 0;
    auto sample = [&](const NumberField& K, const char* poly, auto&& make_t) {
        auto G = parse_bipoly(K, poly);
        std::vector<AlgInt> ts;
        for (int i = 0; i < 250; ++i) ts.push_back(make_t(K));
        auto r = check_specialization_roots(K, G, ts);
        roots += r.roots_checked;
        violations += r.violations;
    };
    auto rand_int = [&](long a) { return (long)(rng() % (2 * a + 1)) - a; };
    auto square_t = [&](const NumberField& K) {
        std::vector<mpz_class> c(K.degree());
        for (auto& x : c) x = rand_int(1000);
        auto s = K.from_coords(c);
        return K.mul(s, s);
    };
    auto any_t = [&](const NumberField& K) {
        std::vector<mpz_class> c(K.degree());
        for (auto& x : c) x = rand_int(100000);
        return K.from_coords(c);
    };
    sample(Q, "Y^2 - T", square_t);
    sample(Qi, "Y^2 - T", square_t);
    sample(Q, "Y^2 + T*Y - 2*T^2 - 7", any_t);
    sample(Q, "Y^3 - T^2*Y + 5*T", any_t);
    o.require(violations == 0, std::to_string(violations) + " Liouville violations");
    o.require(roots > 500, "too few roots sampled");
    if (o.ok) o.detail = "N_T = 11, 101; 1000 samples, " + std::to_string(roots) + " roots, 0 violations";
    return o;
}

// 5. coset sizes for the C2 model at good p <= 199
Outcome cosets() {
    Outcome o;
    auto M = c2_model();
    auto Q = M.field();
    int primes = 0;
    for (u64 p = 3; p <= 199; p = next_prime(p + 1)) {
        auto P = degree_one_prime(Q, p, 0);
        if (!M.is_good(P)) continue;
        ++primes;
        for (auto& c : {split2, inert2}) {
            auto t = tau_cosets(M, P, {c});
            o.require(t.nu == (p - 1) / 2, "nu at p=" + std::to_string(p));
            o.require(t.bounds_ok, "bounds at p=" + std::to_string(p));
            for (u64 r : t.residues)
                o.require(legendre((long)r, (long)p) == (c == split2 ? 1 : -1), "residue class at p=" + std::to_string(p));
        }
    }
    o.require(primes == 45, std::to_string(primes) + " good primes");
    if (o.ok) o.detail = "45 good primes, nu = (p-1)/2 for both classes";
    return o;
}

// 6. hilbert_enumerate records re-verify
Outcome hilbert_reverify() {
    Outcome o;
    auto Q = NumberField::rationals();
    std::ostringstream det;
    {
        auto M = c2_model();
        FrobeniusData data;
        data.entries.push_back({degree_one_prime(Q, 11, 0), {split2}});
        auto R = hilbert_enumerate(M, 1e4, data);
        std::size_t bad = R.reverify_failures;
        for (auto& r : R.records) {
            const long t = r.t0.c[0].get_si();
            bad += certify_group(M, r.t0, 100) != Certificate::CertifiedG;
            bad += !meets_prescriptions(M, r.t0, R.prescriptions);
            bad += is_square(t) || legendre(t, 11) != 1;
        }
        o.require(!R.records.empty() && bad == 0, "C2: " + std::to_string(bad) + " failures");
        det << "C2 " << R.records.size() << " records; ";
    }
    {
        auto M = RegularModel::create(Q, parse_bipoly(Q, "Y^3 + T*Y + T"), 6, 3, kS3Rows, 3, 0);
        FrobeniusData data;
        data.entries.push_back({degree_one_prime(Q, 13, 0), {CycleType({3})}});
        auto R = hilbert_enumerate(M, 1e4, data);
        std::size_t bad = R.reverify_failures;
        for (auto& r : R.records) {
            const long t = r.t0.c[0].get_si();
            bad += certify_group(M, r.t0, 100) != Certificate::CertifiedG;
            bad += !meets_prescriptions(M, r.t0, R.prescriptions);
            // an irreducible cubic mod 13 has no roots
            long tm = ((t % 13) + 13) % 13;
            for (long y = 0; y < 13; ++y) bad += (y * y * y + tm * y + tm) % 13 == 0;
        }
        o.require(!R.records.empty() && bad == 0, "S3: " + std::to_string(bad) + " failures");
        det << "S3 " << R.records.size() << " records; 0 failures";
    }
    if (o.ok) o.detail = det.str();
    return o;
}

// 7a. C2 census lower bound
Outcome census_c2() {
    Outcome o;
    auto M = c2_model();
    std::ostringstream det;
    for (long double y : {1e3L, 1e4L, 1e5L, 1e6L}) {
        auto R = count_fields(M, y, 2);
        const long double target = std::pow(y, 0.25L);
        o.require((long double)R.totals.distinct >= target, "y=" + fmt(y) + " distinct " + std::to_string(R.totals.distinct));
        for (auto& r : R.certified) o.require(r.disc_norm <= mpz_class((unsigned long)y), "budget");
        det << "y=" << fmt(y) << ": " << R.totals.distinct << " >= " << fmt(target) << "; ";
    }
    if (o.ok) o.detail = det.str();
    return o;
}

// 7b. S3 census at y = 10^6
Outcome census_s3() {
    Outcome o;
    auto Q = NumberField::rationals();
    auto M = RegularModel::create(Q, parse_bipoly(Q, "Y^3 - 3*Y - 2*T"), 6, 3, kS3Rows, 2, 0);
    auto R = count_fields(M, 1e6, 3);
    o.require(R.totals.distinct >= 47, "distinct " + std::to_string(R.totals.distinct));
    for (auto& r : R.certified) o.require(r.disc_norm <= 1000000, "budget");
    if (o.ok)
        o.detail = "Chebyshev model, B=" + fmt(R.B) + ", certified " + std::to_string(R.totals.certified) +
                   ", distinct " + std::to_string(R.totals.distinct) + " >= 47";
    return o;
}

// 8. Grunwald search
Outcome grunwald() {
    Outcome o;
    auto M = c2_model();
    auto Q = M.field();
    FrobeniusData data;
    data.entries.push_back({degree_one_prime(Q, 5, 0), {split2}});
    data.entries.push_back({degree_one_prime(Q, 7, 0), {inert2}});
    auto R = grunwald_search(M, data, 3);
    o.require(R.solutions.size() >= 3, "only " + std::to_string(R.solutions.size()) + " solutions");
    std::set<long> kernels;
    std::ostringstream ts;
    for (auto& s : R.solutions) {
        const long t = s.t0.c[0].get_si();
        o.require(std::labs(t) <= 500, "height");
        o.require(s.certificate == Certificate::CertifiedG, "certificate");
        o.require(legendre(t, 5) == 1 && legendre(t, 7) == -1 && !is_square(t), "QR test at t=" + std::to_string(t));
        kernels.insert(squarefree_part(t));
        ts << t << " ";
    }
    o.require(kernels.size() == R.solutions.size(), "solutions share a field");
    if (o.ok) o.detail = "t0 = " + ts.str() + "height " + std::to_string(R.height_reached);
    return o;
}

// 9. height and norm algebra
Outcome heights() {
    Outcome o;
    std::vector<NumberField> fields = {NumberField::rationals(), NumberField::create({1, 0, 1}),
                                       NumberField::create({-2, 0, 1})};
    std::mt19937_64 rng(9);
    const long double tol = 1 + 1e-12L;
    std::size_t checks = 0, violations = 0;
    auto rand_elem = [&](const NumberField& K, long a) {
        std::vector<mpz_class> c(K.degree());
        for (auto& x : c) x = (long)(rng() % (2 * a + 1)) - a;
        return K.from_coords(c);
    };
    for (int i = 0; i < 10000; ++i) {
        const auto& K = fields[i % 3];
        // (2): tuple heights
        UniPoly tup;
        long double prod = 1, hmax = 0;
        for (int k = 0; k < 3; ++k) {
            tup.push_back(rand_elem(K, 40));
            const long double h = K.height(tup.back());
            prod *= h;
            hmax = std::max(hmax, h);
        }
        const long double hp = poly_height(K, tup).Hplus;
        violations += !(hmax <= hp * tol && hp <= prod * tol);
        // (3): evaluation height
        BiPoly F;
        for (int k = 0; k < 3; ++k) bp_add_term(K, F, (int)(rng() % 3), (int)(rng() % 3), rand_elem(K, 9));
        if (!F.is_zero()) {
            auto x1 = rand_elem(K, 6), x2 = rand_elem(K, 6);
            auto ev = evaluate(K, F, x1, x2);
            const long double bound = ev.l * poly_height(K, F).Hplus * std::pow(K.height(x1), (long double)F.deg_x1()) *
                                      std::pow(K.height(x2), (long double)F.deg_x2());
            violations += K.height(ev.value) > bound * tol;
        }
        // norm against height, and the prime-divisor count
        auto a = rand_elem(K, 60);
        if (!K.is_zero(a)) {
            violations += (long double)K.abs_norm(a).get_d() > std::pow(K.height(a), (long double)K.degree()) * tol;
            violations += count_prime_ideal_divisors(K, a) > K.degree() * std::log2(K.height(a)) * tol + 1e-12L;
        }
        ++checks;
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    if (o.ok) o.detail = std::to_string(checks) + " samples over Q, Q(i), Q(sqrt 2), 0 violations";
    return o;
}

// 10. census determinism through the command layer
Outcome determinism() {
    Outcome o;
    auto cfg = cli::load_config(std::string(NFC_CONFIG_DIR) + "/c2.config");
    std::string summaries[2];
    for (int run = 0; run < 2; ++run) {
        auto dir = fs::temp_directory_path() / ("nfc_acceptance_census_" + std::to_string(run));
        fs::remove_all(dir);
        std::ostringstream err;
        const int rc = cli::run_command("census", cfg, dir.string(), err);
        o.require(rc == 0, "census exit code " + std::to_string(rc) + ": " + err.str());
        std::ifstream in(dir / "summary.json");
        std::stringstream ss;
        ss << in.rdbuf();
        summaries[run] = ss.str();
    }
    o.require(!summaries[0].empty() && summaries[0] == summaries[1], "summary.json differs between runs");
    if (o.ok) o.detail = "two runs, " + std::to_string(summaries[0].size()) + " identical bytes";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        std::string name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1 point-count oracle", 10, point_count_oracle},
        {"2 growth exponent", 60, growth},
        {"3 determinant-method cover", 120, det_cover},
        {"4 specialization count and Liouville budget", 60, specialization_count},
        {"5 coset sizes", 10, cosets},
        {"6 hilbert re-verification", 120, hilbert_reverify},
        {"7a C2 census lower bound", 60, census_c2},
        {"7b S3 census", 300, census_s3},
        {"8 Grunwald search", 10, grunwald},
        {"9 height and norm algebra", 120, heights},
        {"10 census determinism", 120, determinism},
    };
    bool all = true;
    for (auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && secs > c.budget_s) {
            o.ok = false;
            o.detail += " (over the " + fmt(c.budget_s) + " s budget)";
        }
        all &= o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << c.name << "] " << o.detail << " (" << std::fixed
                  << std::setprecision(2) << secs << " s)" << std::defaultfloat << std::endl;
    }
    return all ? 0 : 1;
}
