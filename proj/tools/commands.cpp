#include "commands.hpp"

#include "nfc/pointcount.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

namespace nfc::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Out {
    fs::path dir;
    void summary(const json& j) const {
        std::ofstream(dir / "summary.json") << j.dump(2) << "\n";
    }
    void lines(const std::string& name, const std::vector<json>& rows) const {
        std::ofstream o(dir / name);
        for (auto& r : rows) o << r.dump() << "\n";
    }
    void csv(const std::string& name, const std::string& header, const std::vector<std::string>& rows) const {
        std::ofstream o(dir / name);
        o << header << "\n";
        for (auto& r : rows) o << r << "\n";
    }
};

double num(long double x) { return (double)x; }

json header(const std::string& command, const RunConfig& c) {
    json j;
    j["command"] = command;
    j["field"] = c.def_poly;
    j["seed"] = c.seed;
    return j;
}

std::vector<std::string> type_strings(const TypeSet& s) {
    std::vector<std::string> out;
    for (auto& t : s) out.push_back(t.str());
    return out;
}

json record_json(const NumberField& K, const SpecializationRecord& r) {
    json j;
    j["t0"] = K.to_string(r.t0);
    j["disc_norm"] = r.disc_norm.get_str();
    j["certificate"] = to_string(r.certificate);
    std::vector<std::string> pats;
    for (auto& [P, c] : r.fingerprint.entries) pats.push_back(P.str() + " " + c.str());
    j["fingerprint_bound"] = r.fingerprint.prime_bound;
    j["fingerprint_hash"] = r.fingerprint.hash;
    j["fingerprint"] = pats;
    return j;
}

double need(const std::optional<double>& v, const char* key) {
    if (!v) throw Error(Errc::InvalidInput, std::string("missing config key run.") + key + " (or flag --" + key + ")");
    return *v;
}

void count_points_cmd(const RunConfig& c, const Out& out) {
    auto K = make_field(c);
    auto F = make_poly(c, K, "curve.poly");
    const long double B = need(c.B, "B");
    auto pc = count_points(K, F, B);
    std::vector<json> rows;
    std::vector<std::string> csv;
    for (auto& p : pc.points) {
        rows.push_back({{"x1", K.to_string(p.x1)}, {"x2", K.to_string(p.x2)}});
        csv.push_back(K.to_string(p.x1) + "," + K.to_string(p.x2));
    }
    out.lines("count-points.jsonl", rows);
    out.csv("points.csv", "x1,x2", csv);
    json j = header("count-points", c);
    j["curve"] = c.curve_poly;
    j["B"] = num(B);
    j["rho"] = K.degree();
    j["d"] = F.total_degree();
    j["count"] = pc.count;
    if (B >= 3) j["theorem_c_rhs_c1"] = num(theorem_c_rhs(F.total_degree(), B, K.degree(), 1));
    out.summary(j);
}

void count_spec_points_cmd(const RunConfig& c, const Out& out) {
    auto K = make_field(c);
    auto F = make_poly(c, K, "curve.poly");
    const long double B = need(c.B, "B");
    auto r = count_specialization_points(K, F, B);
    std::vector<json> rows;
    for (auto& [t, y] : r.hits)
        rows.push_back({{"t", K.to_string(t)}, {"y", K.to_string(y)}, {"budget", num(liouville_budget(K, F, t))}});
    out.lines("count-spec-points.jsonl", rows);
    json j = header("count-spec-points", c);
    j["curve"] = c.curve_poly;
    j["B"] = num(B);
    j["count"] = r.count;
    j["roots_checked"] = r.roots_checked;
    j["liouville_violations"] = r.violations;
    j["exponent"] = num((long double)K.degree() / F.deg_x2());
    out.summary(j);
}

void det_cover_cmd(const RunConfig& c, const Out& out) {
    auto K = make_field(c);
    auto F = make_poly(c, K, "curve.poly");
    const long double B = need(c.B, "B");
    const int D = c.D ? *c.D : default_D(F.total_degree(), B);
    CoverOptions opt;
    opt.P_cap = c.P_cap;
    opt.smooth_census = c.smooth_census;
    auto R = detmethod_cover(K, F, B, D, opt);
    std::vector<json> rows;
    for (auto& p : R.primes)
        rows.push_back({{"kind", "prime"},
                        {"prime", p.P.str()},
                        {"p", p.P.p},
                        {"smooth_points", p.smooth_points},
                        {"lang_weil", p.lang_weil},
                        {"cells", p.cells},
                        {"hypothesis_ok", p.hypothesis_ok}});
    for (auto& cell : R.cells)
        rows.push_back({{"kind", "cell"},
                        {"prime", cell.P.str()},
                        {"t1", cell.t1},
                        {"t2", cell.t2},
                        {"L", cell.L},
                        {"rank", cell.rank},
                        {"aux_index", cell.aux_index},
                        {"vanishes", cell.vanishes},
                        {"coprime", cell.coprime},
                        {"hensel_ok", cell.hensel_ok}});
    out.lines("det-cover.jsonl", rows);
    json j = header("det-cover", c);
    j["curve"] = c.curve_poly;
    j["B"] = num(B);
    j["d"] = R.d;
    j["D"] = R.D;
    j["anchor"] = {R.m1, R.m2};
    j["E"] = R.E;
    j["E_prime"] = R.E_prime;
    j["hB"] = num(R.hB);
    j["r"] = R.r;
    j["P_formula"] = num(R.P_formula);
    j["P"] = R.P;
    j["regime"] = R.regime;
    j["hensel_m"] = R.hensel_m;
    j["hensel_capped"] = R.hensel_capped;
    j["points"] = R.points;
    std::vector<std::string> aux;
    for (auto& G : R.aux_polys) aux.push_back(to_string(K, G, VarStyle::X1X2));
    j["k"] = R.k;
    j["aux_polys"] = aux;
    j["coverage_ok"] = R.coverage_ok;
    j["coprimality_ok"] = R.coprimality_ok;
    j["rank_ok"] = R.rank_ok;
    j["bezout_bound"] = R.bezout_bound.get_str();
    out.summary(j);
}

struct ModelCtx {
    NumberField K;
    RegularModel M;
    FrobeniusData data;
};

ModelCtx model_ctx(const RunConfig& c) {
    auto K = make_field(c);
    auto M = make_model(c, K);
    auto d = make_data(c, M);
    return {K, M, d};
}

json model_json(const RunConfig& c, const RegularModel& M) {
    json j;
    j["poly"] = c.model_poly;
    j["group_order"] = M.group_order();
    j["degree"] = M.model_degree();
    j["delta_P"] = M.delta_P();
    j["branch_points"] = M.branch_count();
    j["genus"] = M.genus();
    return j;
}

void tau_cmd(const RunConfig& c, const Out& out) {
    auto ctx = model_ctx(c);
    if (ctx.data.empty()) throw Error(Errc::InvalidInput, "tau needs rows in [frobenius]");
    std::vector<json> rows;
    for (auto& [P, allowed] : ctx.data.entries) {
        auto t = tau_cosets(ctx.M, P, allowed);
        rows.push_back({{"prime", P.str()},
                        {"allowed", type_strings(allowed)},
                        {"q", t.q},
                        {"nu", t.nu},
                        {"weight", t.weight},
                        {"lower", t.lower},
                        {"upper", t.upper},
                        {"bounds_ok", t.bounds_ok},
                        {"residues", t.residues}});
    }
    out.lines("tau.jsonl", rows);
    auto bp = base_primes(ctx.M);
    json j = header("tau", c);
    j["model"] = model_json(c, ctx.M);
    j["p_minus1"] = bp.p_minus1;
    j["p0"] = bp.p0;
    j["primes"] = rows;
    out.summary(j);
}

void hilbert_cmd(const RunConfig& c, const Out& out) {
    auto ctx = model_ctx(c);
    const long double B = need(c.B, "B");
    HilbertOptions opt;
    opt.cert_bound = c.cert_bound;
    opt.fingerprint_bound = c.prime_bound;
    auto R = hilbert_enumerate(ctx.M, B, ctx.data, opt);
    std::vector<json> rows;
    for (auto& r : R.records) rows.push_back(record_json(ctx.K, r));
    out.lines("hilbert.jsonl", rows);
    json j = header("hilbert", c);
    j["model"] = model_json(c, ctx.M);
    j["B"] = num(B);
    j["p_minus1"] = R.base.p_minus1;
    j["p0"] = R.base.p0;
    std::vector<json> pres;
    for (auto& p : R.prescriptions)
        pres.push_back({{"prime", p.P.str()}, {"allowed", type_strings(p.allowed)}, {"role", p.role}});
    for (auto& p : R.direct)
        pres.push_back({{"prime", p.P.str()}, {"allowed", type_strings(p.allowed)}, {"role", "direct"}});
    j["prescriptions"] = pres;
    j["modulus"] = R.system.modulus_rational.get_str();
    j["cosets"] = R.system.count.get_str();
    j["candidates"] = R.candidates;
    j["branch_skipped"] = R.branch_skipped;
    j["not_certified"] = R.not_certified;
    j["reverify_failures"] = R.reverify_failures;
    j["records"] = R.records.size();
    out.summary(j);
}

CensusOptions census_opts(const RunConfig& c) {
    CensusOptions o;
    o.cert_bound = c.cert_bound;
    o.fingerprint_bound = c.prime_bound;
    o.workers = std::max(1u, c.workers);
    return o;
}

json census_json(const CensusReport& R) {
    json j;
    j["y"] = num(R.y);
    j["B"] = num(R.B);
    j["delta"] = num(R.delta);
    j["delta_minus"] = num(R.delta_minus);
    j["delta_P"] = R.delta_P;
    j["totals"] = {{"enumerated", R.totals.enumerated},
                   {"branch_skipped", R.totals.branch_skipped},
                   {"norm_filtered", R.totals.norm_filtered},
                   {"certified", R.totals.certified},
                   {"distinct", R.totals.distinct}};
    j["distinct"] = R.totals.distinct;
    j["target_exponent"] = num(R.target_exponent);
    j["target"] = num(R.target);
    j["lower_bound_ok"] = R.lower_bound_ok();
    j["cert_bound"] = R.cert_bound;
    j["fingerprint_bound"] = R.fingerprint_bound;
    return j;
}

void census_cmd(const RunConfig& c, const Out& out) {
    auto ctx = model_ctx(c);
    const long double y = need(c.y, "y");
    const long double delta = c.delta ? (long double)*c.delta : delta_default(ctx.M);
    auto R = count_fields(ctx.M, y, delta, ctx.data, census_opts(c));
    std::vector<json> rows;
    for (std::size_t i = 0; i < R.certified.size(); ++i) {
        json r = record_json(ctx.K, R.certified[i]);
        r["representative"] = ctx.K.to_string(R.certified[R.representative[i]].t0);
        r["is_representative"] = R.representative[i] == i;
        rows.push_back(r);
    }
    out.lines("census.jsonl", rows);
    json j = header("census", c);
    j["model"] = model_json(c, ctx.M);
    j.update(census_json(R));
    std::vector<std::string> reps;
    for (auto i : R.reps) reps.push_back(ctx.K.to_string(R.certified[i].t0));
    j["representatives"] = reps;
    j["note"] = "budget filter uses |N(Delta_P(t0))|, an upper bound for the discriminant norm";
    out.summary(j);
}

void grunwald_cmd(const RunConfig& c, const Out& out) {
    auto ctx = model_ctx(c);
    if (ctx.data.empty()) throw Error(Errc::InvalidInput, "grunwald needs rows in [frobenius]");
    GrunwaldOptions opt;
    opt.max_height = c.max_height;
    opt.cert_bound = c.cert_bound;
    opt.fingerprint_bound = c.prime_bound;
    auto R = grunwald_search(ctx.M, ctx.data, c.max_solutions, opt);
    std::vector<json> rows;
    for (auto& r : R.solutions) rows.push_back(record_json(ctx.K, r));
    out.lines("grunwald.jsonl", rows);
    json j = header("grunwald", c);
    j["model"] = model_json(c, ctx.M);
    j["solutions"] = R.solutions.size();
    j["height_reached"] = R.height_reached;
    j["examined"] = R.examined;
    j["exceptional_primes"] = R.exceptional;
    std::vector<std::string> ts;
    for (auto& r : R.solutions) ts.push_back(ctx.K.to_string(r.t0));
    j["t0"] = ts;
    out.summary(j);
}

void fit_cmd(const RunConfig& c, const Out& out) {
    auto ctx = model_ctx(c);
    if (c.ys.size() < 2) throw Error(Errc::InvalidInput, "fit needs at least two values in run.ys");
    const long double delta = c.delta ? (long double)*c.delta : delta_default(ctx.M);
    std::vector<long double> ys(c.ys.begin(), c.ys.end());
    auto sweep = census_sweep(ctx.M, ys, delta, ctx.data, census_opts(c));
    std::vector<json> rows;
    std::vector<std::string> csv;
    for (auto& R : sweep) {
        rows.push_back(census_json(R));
        std::ostringstream os;
        os << json(num(R.y)).dump() << "," << R.totals.distinct << "," << json(num(R.B)).dump() << ","
           << json(num(R.target)).dump();
        csv.push_back(os.str());
    }
    out.lines("fit.jsonl", rows);
    out.csv("points.csv", "y,distinct,B,target", csv);
    json j = header("fit", c);
    j["model"] = model_json(c, ctx.M);
    j["delta"] = num(delta);
    j["target_exponent"] = num(sweep[0].target_exponent);
    j["exponent_fit"] = std::isnan((double)sweep[0].exponent_fit) ? json(nullptr) : json(num(sweep[0].exponent_fit));
    j["runs"] = rows;
    out.summary(j);
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"count-points", "count-spec-points", "det-cover", "tau",
                                                   "hilbert",      "census",            "grunwald",  "fit"};
    return names;
}

int run_command(const std::string& command, const RunConfig& cfg, const std::string& outdir, std::ostream& err) {
    try {
        Out out{outdir};
        fs::create_directories(out.dir);
        if (command == "count-points") count_points_cmd(cfg, out);
        else if (command == "count-spec-points") count_spec_points_cmd(cfg, out);
        else if (command == "det-cover") det_cover_cmd(cfg, out);
        else if (command == "tau") tau_cmd(cfg, out);
        else if (command == "hilbert") hilbert_cmd(cfg, out);
        else if (command == "census") census_cmd(cfg, out);
        else if (command == "grunwald") grunwald_cmd(cfg, out);
        else if (command == "fit") fit_cmd(cfg, out);
        else throw Error(Errc::InvalidInput, "unknown command '" + command + "'");
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::InfeasibleData || e.code() == Errc::SearchExhausted ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace nfc::cli
