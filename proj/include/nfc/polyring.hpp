#pragma once

// Exact uni- and bivariate polynomials with O_K coefficients.

#include "nfc/numfield.hpp"
#include "nfc/upoly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nfc {

using UniPoly = std::vector<AlgInt>;  // low degree first, trimmed

// F(X1, X2); in the model setting X1 = T and X2 = Y.
struct BiPoly {
    std::map<std::pair<int, int>, AlgInt> terms;  // (i, j) -> coefficient of X1^i X2^j, nonzero

    int deg_x1() const;  // m
    int deg_x2() const;  // n
    int total_degree() const;  // d
    std::size_t term_count() const { return terms.size(); }
    bool is_zero() const { return terms.empty(); }
    bool monic_in_x2() const;
    bool operator==(const BiPoly& o) const { return terms == o.terms; }
};

enum class VarStyle { TY, X1X2 };
enum class Axis { X1, X2 };

// Parses e.g. "Y^2 - T", "X2^2 - X1^3", "Y^2 - (1+w)*T" over K.
BiPoly parse_bipoly(const NumberField& K, const std::string& text);
std::string to_string(const NumberField& K, const BiPoly& F, VarStyle style = VarStyle::TY);
std::string to_string(const NumberField& K, const UniPoly& f, const char* var = "T");

void bp_add_term(const NumberField& K, BiPoly& F, int i, int j, const AlgInt& c);
BiPoly bp_add(const NumberField& K, const BiPoly& a, const BiPoly& b);
BiPoly bp_sub(const NumberField& K, const BiPoly& a, const BiPoly& b);
BiPoly bp_mul(const NumberField& K, const BiPoly& a, const BiPoly& b);
BiPoly bp_scale(const NumberField& K, const BiPoly& a, const AlgInt& s);
BiPoly bp_deriv(const NumberField& K, const BiPoly& F, Axis axis);
// F(X1, X2) -> G with G(X1, X2) = F(X1, X1^e + X2)
BiPoly bp_shift_x2(const NumberField& K, const BiPoly& F, int e);
// Coefficients of F viewed as a polynomial in `axis` over O_K[other].
std::vector<UniPoly> bp_as_poly_in(const NumberField& K, const BiPoly& F, Axis axis);
// F(t, X2) as a univariate polynomial in X2.
UniPoly bp_specialize_x1(const NumberField& K, const BiPoly& F, const AlgInt& t);
// F(X1, t) as a univariate polynomial in X1.
UniPoly bp_specialize_x2(const NumberField& K, const BiPoly& F, const AlgInt& t);

struct PolyHeight {
    long double H = 0;
    long double Hplus = 1;
};
PolyHeight poly_height(const NumberField& K, const BiPoly& Q);
PolyHeight poly_height(const NumberField& K, const UniPoly& Q);

struct EvalResult {
    AlgInt value;
    std::size_t l = 0;  // number of nonzero terms of F
};
EvalResult evaluate(const NumberField& K, const BiPoly& F, const AlgInt& x1, const AlgInt& x2);
AlgInt evaluate(const NumberField& K, const UniPoly& f, const AlgInt& x);

struct DiscResult {
    UniPoly disc;  // Delta_P(T)
    int delta = 0;  // deg Delta_P
};
DiscResult disc_y(const NumberField& K, const BiPoly& P);
// Resultant eliminating `wrt`; a polynomial in the remaining variable.
UniPoly resultant_bivar(const NumberField& K, const BiPoly& F, const BiPoly& G, Axis wrt);
// Discriminant of a univariate polynomial over O_K.
AlgInt disc_uni(const NumberField& K, const UniPoly& f);
// Degree of gcd(f, g) over K.
int gcd_degree(const NumberField& K, const UniPoly& f, const UniPoly& g);

// Roots of the monic Q lying in O_K, each exactly verified, sorted.
std::vector<AlgInt> alg_roots(const NumberField& K, const UniPoly& Q);

void up_trim(const NumberField& K, UniPoly& f);

}  // namespace nfc
