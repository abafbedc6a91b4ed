#include "config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

namespace nfc::cli {

namespace {

[[noreturn]] void fail_at(Where w, const std::string& msg) {
    throw Error(Errc::ParseError, "line " + std::to_string(w.line) + ", column " + std::to_string(w.col) + ": " + msg);
}

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

long to_long(const std::string& v, Where w) {
    long x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail_at(w, "expected an integer, got '" + v + "'");
    return x;
}

unsigned long to_ulong(const std::string& v, Where w) {
    unsigned long x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail_at(w, "expected a nonnegative integer, got '" + v + "'");
    return x;
}

double to_double(const std::string& v, Where w) {
    double x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail_at(w, "expected a number, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& v, Where w) {
    if (v == "true") return true;
    if (v == "false") return false;
    fail_at(w, "expected true or false, got '" + v + "'");
}

std::string fmt(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, p);
}

using Setter = std::function<void(RunConfig&, const std::string&, Where)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> m = {
        {"field.def_poly", [](RunConfig& c, const std::string& v, Where) { c.def_poly = v; }},
        {"model.poly", [](RunConfig& c, const std::string& v, Where) { c.model_poly = v; }},
        {"model.group_order", [](RunConfig& c, const std::string& v, Where w) { c.group_order = to_long(v, w); }},
        {"model.degree", [](RunConfig& c, const std::string& v, Where w) { c.model_degree = (int)to_long(v, w); }},
        {"model.classes",
         [](RunConfig& c, const std::string& v, Where w) {
             c.classes.clear();
             static const std::regex row(R"(^(\S+)\s*(\[[^\]]*\])\s*(\d+)$)");
             for (auto& part : split(v, ';')) {
                 std::smatch m;
                 if (!std::regex_match(part, m, row)) fail_at(w, "class rows look like 'label [1 2] size': '" + part + "'");
                 c.classes.push_back({m[1], m[2], to_long(m[3], w)});
             }
         }},
        {"model.branch_points", [](RunConfig& c, const std::string& v, Where w) { c.branch_points = (int)to_long(v, w); }},
        {"model.genus", [](RunConfig& c, const std::string& v, Where w) { c.genus = (int)to_long(v, w); }},
        {"model.attested_irreducible",
         [](RunConfig& c, const std::string& v, Where w) { c.attested_irreducible = to_bool(v, w); }},
        {"curve.poly", [](RunConfig& c, const std::string& v, Where) { c.curve_poly = v; }},
        {"run.B", [](RunConfig& c, const std::string& v, Where w) { c.B = to_double(v, w); }},
        {"run.y", [](RunConfig& c, const std::string& v, Where w) { c.y = to_double(v, w); }},
        {"run.delta", [](RunConfig& c, const std::string& v, Where w) { c.delta = to_double(v, w); }},
        {"run.D", [](RunConfig& c, const std::string& v, Where w) { c.D = (int)to_long(v, w); }},
        {"run.seed", [](RunConfig& c, const std::string& v, Where w) { c.seed = to_ulong(v, w); }},
        {"run.workers", [](RunConfig& c, const std::string& v, Where w) { c.workers = (unsigned)to_ulong(v, w); }},
        {"run.prime_bound", [](RunConfig& c, const std::string& v, Where w) { c.prime_bound = to_ulong(v, w); }},
        {"run.cert_bound", [](RunConfig& c, const std::string& v, Where w) { c.cert_bound = to_ulong(v, w); }},
        {"run.precision_cap", [](RunConfig& c, const std::string& v, Where w) { c.precision_cap = (int)to_long(v, w); }},
        {"run.ys",
         [](RunConfig& c, const std::string& v, Where w) {
             c.ys.clear();
             for (auto& s : split(v, ',')) c.ys.push_back(to_double(s, w));
         }},
        {"run.max_solutions", [](RunConfig& c, const std::string& v, Where w) { c.max_solutions = to_ulong(v, w); }},
        {"run.max_height", [](RunConfig& c, const std::string& v, Where w) { c.max_height = to_long(v, w); }},
        {"run.P_cap", [](RunConfig& c, const std::string& v, Where w) { c.P_cap = to_ulong(v, w); }},
        {"run.smooth_census", [](RunConfig& c, const std::string& v, Where w) { c.smooth_census = to_bool(v, w); }},
    };
    return m;
}

const std::set<std::string> kSections = {"field", "model", "curve", "run", "frobenius"};

Where where_of(const RunConfig& c, const std::string& key) {
    auto it = c.where.find(key);
    return it == c.where.end() ? Where{} : it->second;
}

// Re-raises polynomial parse errors at their position in the config file.
[[noreturn]] void rethrow_in(const Error& e, const RunConfig& c, const std::string& key) {
    const Where w = where_of(c, key);
    if (e.code() == Errc::ParseError && w.line > 0) {
        int col = 0;
        char rest[512] = {0};
        if (std::sscanf(e.what(), "ParseError: column %d: %511[^\n]", &col, rest) == 2)
            fail_at({w.line, w.col + col - 1}, key + ": " + rest);
    }
    throw Error(e.code(), key + (w.line ? " (line " + std::to_string(w.line) + ")" : "") + ": " +
                              std::string(e.what()).substr(std::string(errc_name(e.code())).size() + 2));
}

void require(bool ok, const RunConfig& c, const std::string& key) {
    (void)c;
    if (!ok) throw Error(Errc::InvalidInput, "missing config key " + key);
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
    return def_poly == o.def_poly && model_poly == o.model_poly && group_order == o.group_order &&
           model_degree == o.model_degree && classes == o.classes && branch_points == o.branch_points &&
           genus == o.genus && attested_irreducible == o.attested_irreducible && curve_poly == o.curve_poly &&
           B == o.B && y == o.y && delta == o.delta && D == o.D && seed == o.seed && workers == o.workers &&
           prime_bound == o.prime_bound && cert_bound == o.cert_bound && precision_cap == o.precision_cap &&
           ys == o.ys && max_solutions == o.max_solutions && max_height == o.max_height && P_cap == o.P_cap &&
           smooth_census == o.smooth_census && frobenius == o.frobenius;
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::string section;
    std::set<std::string> seen, frob_seen;
    std::istringstream is(text);
    std::string raw;
    for (int lineno = 1; std::getline(is, raw); ++lineno) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const size_t a = raw.find_first_not_of(" \t");
        if (a == std::string::npos || raw[a] == '#' || raw[a] == ';') continue;
        if (raw[a] == '[') {
            const size_t b = raw.find(']', a);
            if (b == std::string::npos) fail_at({lineno, (int)a + 1}, "unterminated section header");
            if (!trim(raw.substr(b + 1)).empty()) fail_at({lineno, (int)b + 2}, "text after section header");
            section = trim(raw.substr(a + 1, b - a - 1));
            if (!kSections.count(section)) fail_at({lineno, (int)a + 2}, "unknown section [" + section + "]");
            continue;
        }
        const size_t eq = raw.find('=');
        if (eq == std::string::npos) fail_at({lineno, (int)a + 1}, "expected 'key = value'");
        const std::string key = trim(raw.substr(a, eq - a));
        const size_t vpos = raw.find_first_not_of(" \t", eq + 1);
        const std::string value = vpos == std::string::npos ? "" : trim(raw.substr(vpos));
        const Where kw{lineno, (int)a + 1}, vw{lineno, vpos == std::string::npos ? (int)eq + 2 : (int)vpos + 1};
        if (key.empty()) fail_at(kw, "empty key");
        if (section.empty()) fail_at(kw, "key '" + key + "' outside a section");
        if (value.empty()) fail_at(vw, "empty value for '" + key + "'");
        if (section == "frobenius") {
            if (!frob_seen.insert(key).second) fail_at(kw, "duplicate prime '" + key + "' in [frobenius]");
            c.frobenius.push_back({key, value, vw});
            continue;
        }
        const std::string full = section + "." + key;
        auto it = setters().find(full);
        if (it == setters().end()) fail_at(kw, "unknown key '" + key + "' in [" + section + "]");
        if (!seen.insert(full).second) fail_at(kw, "duplicate key '" + key + "' in [" + section + "]");
        it->second(c, value, vw);
        c.where[full] = vw;
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidInput, "cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_ini(const RunConfig& c) {
    std::ostringstream os;
    os << "[field]\ndef_poly = " << c.def_poly << "\n";
    if (!c.model_poly.empty()) {
        os << "\n[model]\npoly = " << c.model_poly << "\ngroup_order = " << c.group_order
           << "\ndegree = " << c.model_degree << "\nclasses = ";
        for (size_t i = 0; i < c.classes.size(); ++i)
            os << (i ? "; " : "") << c.classes[i].label << " " << c.classes[i].type << " " << c.classes[i].size;
        os << "\nbranch_points = " << c.branch_points << "\ngenus = " << c.genus
           << "\nattested_irreducible = " << (c.attested_irreducible ? "true" : "false") << "\n";
    }
    if (!c.curve_poly.empty()) os << "\n[curve]\npoly = " << c.curve_poly << "\n";
    os << "\n[run]\n";
    if (c.B) os << "B = " << fmt(*c.B) << "\n";
    if (c.y) os << "y = " << fmt(*c.y) << "\n";
    if (c.delta) os << "delta = " << fmt(*c.delta) << "\n";
    if (c.D) os << "D = " << *c.D << "\n";
    os << "seed = " << c.seed << "\nworkers = " << c.workers << "\nprime_bound = " << c.prime_bound
       << "\ncert_bound = " << c.cert_bound << "\nprecision_cap = " << c.precision_cap << "\n";
    if (!c.ys.empty()) {
        os << "ys = ";
        for (size_t i = 0; i < c.ys.size(); ++i) os << (i ? ", " : "") << fmt(c.ys[i]);
        os << "\n";
    }
    os << "max_solutions = " << c.max_solutions << "\nmax_height = " << c.max_height << "\nP_cap = " << c.P_cap
       << "\nsmooth_census = " << (c.smooth_census ? "true" : "false") << "\n";
    if (!c.frobenius.empty()) {
        os << "\n[frobenius]\n";
        for (auto& r : c.frobenius) os << r.prime << " = " << r.types << "\n";
    }
    return os.str();
}

NumberField make_field(const RunConfig& c) {
    auto Q = NumberField::rationals();
    // the defining polynomial is written in X; the parser knows it as T
    static const std::regex x_var(R"(\bX\b)");
    const std::string text = std::regex_replace(c.def_poly, x_var, "T");
    try {
        BiPoly f = parse_bipoly(Q, text);
        if (f.deg_x2() > 0) throw Error(Errc::ParseError, "column 1: the defining polynomial must be in X only");
        std::vector<mpz_class> coef(std::max(f.deg_x1(), 0) + 1, 0);
        for (auto& [ij, v] : f.terms) coef[ij.first] = v.c[0];
        return NumberField::create(coef, c.precision_cap);
    } catch (const Error& e) {
        rethrow_in(e, c, "field.def_poly");
    }
}

BiPoly make_poly(const RunConfig& c, const NumberField& K, const std::string& key) {
    const std::string& text = key == "model.poly" ? c.model_poly : c.curve_poly;
    require(!text.empty(), c, key);
    try {
        return parse_bipoly(K, text);
    } catch (const Error& e) {
        rethrow_in(e, c, key);
    }
}

RegularModel make_model(const RunConfig& c, const NumberField& K) {
    require(c.group_order > 0, c, "model.group_order");
    require(c.model_degree > 0, c, "model.degree");
    require(!c.classes.empty(), c, "model.classes");
    require(c.branch_points > 0, c, "model.branch_points");
    BiPoly P = make_poly(c, K, "model.poly");
    std::vector<ClassRow> rows;
    try {
        for (auto& cs : c.classes) rows.push_back({cs.label, CycleType::parse(cs.type), cs.size});
        ModelOptions opt;
        opt.attested_irreducible = c.attested_irreducible;
        return RegularModel::create(K, P, c.group_order, c.model_degree, rows, c.branch_points, c.genus, opt);
    } catch (const Error& e) {
        rethrow_in(e, c, "model.classes");
    }
}

FrobeniusData make_data(const RunConfig& c, const RegularModel& M) {
    const auto& K = M.field();
    FrobeniusData d;
    for (auto& row : c.frobenius) {
        PrimeIdeal P;
        const size_t colon = row.prime.find(':');
        try {
            const u64 p = to_ulong(row.prime.substr(0, colon), {row.where.line, 1});
            if (colon != std::string::npos) {
                P = degree_one_prime(K, p, to_ulong(row.prime.substr(colon + 1), {row.where.line, 1}));
            } else {
                auto ps = split_prime(K, p);
                if (ps.size() != 1)
                    throw Error(Errc::InvalidInput, std::to_string(ps.size()) + " primes lie over " +
                                                        std::to_string(p) + "; name one as p:r");
                P = ps[0];
            }
            TypeSet allowed;
            for (auto& tok : split(row.types, ';')) {
                if (!tok.empty() && tok[0] == '[') {
                    allowed.insert(CycleType::parse(tok));
                    continue;
                }
                bool found = false;
                for (auto& cl : M.classes())
                    if (cl.label == tok) {
                        allowed.insert(cl.type);
                        found = true;
                    }
                if (!found) fail_at(row.where, "unknown class label '" + tok + "'");
            }
            d.entries.push_back({P, allowed});
        } catch (const Error& e) {
            if (e.code() == Errc::ParseError && std::string(e.what()).find("line ") != std::string::npos) throw;
            throw Error(e.code(), "[frobenius] " + row.prime + " (line " + std::to_string(row.where.line) +
                                      "): " + std::string(e.what()).substr(std::string(errc_name(e.code())).size() + 2));
        }
    }
    return d;
}

}  // namespace nfc::cli
