#pragma once

// Run configuration: an INI-style file with sections [field], [model],
// [curve], [run] and [frobenius]; command-line flags override [run] keys.

#include "nfc/malle.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nfc::cli {

struct Where {
    int line = 0, col = 0;  // 1-based position of the value
};

struct ClassSpec {
    std::string label;
    std::string type;  // "[1 2]"
    long size = 0;
    bool operator==(const ClassSpec&) const = default;
};

struct FrobRow {
    std::string prime;  // "p" or "p:r" (the degree-one prime (p, theta - r))
    std::string types;  // "[1 1]; [2]" or class labels "e; s"
    Where where;
    bool operator==(const FrobRow& o) const { return prime == o.prime && types == o.types; }
};

struct RunConfig {
    // [field]
    std::string def_poly = "X";
    // [model]
    std::string model_poly;
    long group_order = 0;
    int model_degree = 0;
    std::vector<ClassSpec> classes;
    int branch_points = 0;
    int genus = 0;
    bool attested_irreducible = false;
    // [curve]
    std::string curve_poly;
    // [run]
    std::optional<double> B, y, delta;
    std::optional<int> D;
    unsigned long seed = 0;
    unsigned workers = 1;
    unsigned long prime_bound = 200;
    unsigned long cert_bound = 100;
    int precision_cap = 256;
    std::vector<double> ys;
    unsigned long max_solutions = 3;
    long max_height = 500;
    unsigned long P_cap = 1ul << 31;
    bool smooth_census = true;
    // [frobenius]
    std::vector<FrobRow> frobenius;

    std::map<std::string, Where> where;  // "section.key" -> value position

    bool operator==(const RunConfig& o) const;
};

// Throws Error(ParseError) with "line L, column C: ..." diagnostics.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string to_ini(const RunConfig& c);

// Builders; input errors name the offending config position.
NumberField make_field(const RunConfig& c);
BiPoly make_poly(const RunConfig& c, const NumberField& K, const std::string& key);  // "model.poly" or "curve.poly"
RegularModel make_model(const RunConfig& c, const NumberField& K);
FrobeniusData make_data(const RunConfig& c, const RegularModel& M);

}  // namespace nfc::cli
