#pragma once

#include "qdx/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace qdx {

// Sparse integer polynomial in one variable t: exponent -> coefficient.
// Zero coefficients are never stored.
using Poly = std::map<int, Int>;

Poly poly_from_coeffs(const std::vector<Int>& coeffs);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale_shift(const Poly& a, const Int& c, int shift); // c * t^shift * a
Int poly_eval_one(const Poly& a);                              // a(1)
Rat poly_eval(const Poly& a, const Rat& t);
int poly_degree(const Poly& a); // -1 for the zero polynomial

// Exact quotient of a by (1 - t^w), or false when not divisible.
bool poly_div_one_minus_tw(const Poly& a, int w, Poly& quotient);

// Multiplicity of the root t=1, by repeated synthetic division by (1 - t).
int one_multiplicity(const Poly& a);

// A rational series  numerator / prod_w (1 - t^w).  The denominator is a
// multiset of weights, kept sorted ascending.
struct SeriesExpr {
    Poly numerator;
    std::vector<int> denom_weights;

    SeriesExpr() = default;
    SeriesExpr(Poly num, std::vector<int> weights);

    static SeriesExpr zero() { return SeriesExpr(); }
    static SeriesExpr constant(Int c);
    static SeriesExpr geometric(int w); // 1 / (1 - t^w)

    bool is_zero() const { return numerator.empty(); }
    bool operator==(const SeriesExpr& o) const = default;
};

// Coefficients of degrees 0..D by exact polynomial long division.
std::vector<Int> expand(const SeriesExpr& s, int D);

// |denom_weights| - one_multiplicity(numerator).  May be <= 0.
// Throws ZeroSeries on a zero numerator.
int pole_order(const SeriesExpr& s);

// lim_{t->1} (1-t)^{pole_order(s)} * s(t), exactly.
Rat degree_at_one(const SeriesExpr& s);

SeriesExpr mul(const SeriesExpr& a, const SeriesExpr& b);
SeriesExpr add(const SeriesExpr& a, const SeriesExpr& b);
SeriesExpr shift(const SeriesExpr& s, int k);

// Canonical representative: weights sorted, and no remaining factor (1-t^w)
// divides the numerator.  Cancellation proceeds greedily from the smallest w.
SeriesExpr normalize(const SeriesExpr& s);

// (1-tau)^{pole_order(s)} * s(tau) evaluated exactly at a rational tau,
// for the numeric cross-check against degree_at_one.
Rat eval_scaled_at(const SeriesExpr& s, const Rat& tau);

// Text form used in fixture files and reports: "num: [c0, c1, ...]; den: [w1, ...]".
std::string series_to_text(const SeriesExpr& s);

} // namespace qdx
