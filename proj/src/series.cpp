#include "qdx/series.hpp"

#include "qdx/errors.hpp"

#include <algorithm>
#include <sstream>

namespace qdx {

Poly poly_from_coeffs(const std::vector<Int>& coeffs) {
    Poly p;
    for (int i = 0; i < (int)coeffs.size(); ++i)
        if (coeffs[i] != 0) p[i] = coeffs[i];
    return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Int& slot = r[ea + eb];
            slot += ca * cb;
            if (slot == 0) r.erase(ea + eb);
        }
    return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b) {
        Int& slot = r[e];
        slot += c;
        if (slot == 0) r.erase(e);
    }
    return r;
}

Poly poly_scale_shift(const Poly& a, const Int& c, int shift) {
    Poly r;
    if (c == 0) return r;
    for (const auto& [e, coeff] : a) r[e + shift] = c * coeff;
    return r;
}

Int poly_eval_one(const Poly& a) {
    Int s = 0;
    for (const auto& [e, c] : a) s += c;
    return s;
}

Rat poly_eval(const Poly& a, const Rat& t) {
    // Horner over the sparse support, highest exponent first.
    Rat acc = 0;
    int prev_exp = -1;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        if (prev_exp >= 0) {
            Rat step = 1;
            for (int i = 0; i < prev_exp - it->first; ++i) step *= t;
            acc *= step;
        }
        acc += Rat(it->second);
        prev_exp = it->first;
    }
    if (prev_exp > 0) {
        Rat step = 1;
        for (int i = 0; i < prev_exp; ++i) step *= t;
        acc *= step;
    }
    return acc;
}

int poly_degree(const Poly& a) { return a.empty() ? -1 : a.rbegin()->first; }

bool poly_div_one_minus_tw(const Poly& a, int w, Poly& quotient) {
    if (a.empty()) {
        quotient.clear(); // 0 = (1 - t^w) * 0
        return true;
    }
    // (1 - t^w) * q = a  <=>  q_i - q_{i-w} = a_i, solved bottom-up.
    int d = poly_degree(a);
    std::vector<Int> q(d + 1, Int(0));
    for (int i = 0; i <= d; ++i) {
        Int ai = 0;
        if (auto it = a.find(i); it != a.end()) ai = it->second;
        q[i] = ai + (i >= w ? q[i - w] : Int(0));
    }
    for (int i = d - w + 1; i <= d; ++i)
        if (i >= 0 && q[i] != 0) return false;
    quotient.clear();
    for (int i = 0; i <= d - w; ++i)
        if (q[i] != 0) quotient[i] = q[i];
    return true;
}

int one_multiplicity(const Poly& a) {
    if (a.empty()) return 0;
    Poly cur = a, q;
    int m = 0;
    while (poly_div_one_minus_tw(cur, 1, q)) {
        cur = std::move(q);
        ++m;
    }
    return m;
}

SeriesExpr::SeriesExpr(Poly num, std::vector<int> weights)
    : numerator(std::move(num)), denom_weights(std::move(weights)) {
    for (int w : denom_weights)
        if (w < 1) throw Error("denominator weight must be >= 1");
    std::sort(denom_weights.begin(), denom_weights.end());
}

SeriesExpr SeriesExpr::constant(Int c) {
    Poly p;
    if (c != 0) p[0] = std::move(c);
    return SeriesExpr(std::move(p), {});
}

SeriesExpr SeriesExpr::geometric(int w) { return SeriesExpr(Poly{{0, 1}}, {w}); }

std::vector<Int> expand(const SeriesExpr& s, int D) {
    std::vector<Int> c(D + 1, Int(0));
    for (const auto& [e, coeff] : s.numerator)
        if (e <= D) c[e] = coeff;
    // dividing by (1 - t^w): c'[i] = c[i] + c'[i-w]
    for (int w : s.denom_weights)
        for (int i = w; i <= D; ++i) c[i] += c[i - w];
    return c;
}

int pole_order(const SeriesExpr& s) {
    if (s.is_zero()) throw ZeroSeries();
    return (int)s.denom_weights.size() - one_multiplicity(s.numerator);
}

Rat degree_at_one(const SeriesExpr& s) {
    if (s.is_zero()) throw ZeroSeries();
    Poly g = s.numerator, q;
    while (poly_div_one_minus_tw(g, 1, q)) g = std::move(q);
    // g(1) != 0 now; each (1-t^w)/(1-t) contributes w in the limit.
    Int wprod = 1;
    for (int w : s.denom_weights) wprod *= w;
    return Rat(poly_eval_one(g), wprod);
}

SeriesExpr mul(const SeriesExpr& a, const SeriesExpr& b) {
    std::vector<int> weights = a.denom_weights;
    weights.insert(weights.end(), b.denom_weights.begin(), b.denom_weights.end());
    return SeriesExpr(poly_mul(a.numerator, b.numerator), std::move(weights));
}

SeriesExpr add(const SeriesExpr& a, const SeriesExpr& b) {
    // Cross-multiply onto the concatenated denominator.
    Poly den_a{{0, 1}}, den_b{{0, 1}};
    for (int w : a.denom_weights) den_a = poly_mul(den_a, Poly{{0, 1}, {w, -1}});
    for (int w : b.denom_weights) den_b = poly_mul(den_b, Poly{{0, 1}, {w, -1}});
    Poly num = poly_add(poly_mul(a.numerator, den_b), poly_mul(b.numerator, den_a));
    std::vector<int> weights = a.denom_weights;
    weights.insert(weights.end(), b.denom_weights.begin(), b.denom_weights.end());
    return SeriesExpr(std::move(num), std::move(weights));
}

SeriesExpr shift(const SeriesExpr& s, int k) {
    return SeriesExpr(poly_scale_shift(s.numerator, 1, k), s.denom_weights);
}

SeriesExpr normalize(const SeriesExpr& s) {
    if (s.is_zero()) return SeriesExpr::zero();
    Poly num = s.numerator;
    std::vector<int> weights = s.denom_weights; // already sorted ascending
    bool cancelled = true;
    while (cancelled) {
        cancelled = false;
        for (size_t i = 0; i < weights.size(); ++i) {
            Poly q;
            if (poly_div_one_minus_tw(num, weights[i], q)) {
                num = std::move(q);
                weights.erase(weights.begin() + i);
                cancelled = true;
                break; // restart from the smallest weight
            }
        }
    }
    return SeriesExpr(std::move(num), std::move(weights));
}

Rat eval_scaled_at(const SeriesExpr& s, const Rat& tau) {
    int P = pole_order(s);
    Rat value = poly_eval(s.numerator, tau);
    for (int w : s.denom_weights) {
        Rat tw = 1;
        for (int i = 0; i < w; ++i) tw *= tau;
        value /= (Rat(1) - tw);
    }
    Rat one_minus = Rat(1) - tau;
    if (P >= 0)
        for (int i = 0; i < P; ++i) value *= one_minus;
    else
        for (int i = 0; i < -P; ++i) value /= one_minus;
    return value;
}

std::string series_to_text(const SeriesExpr& s) {
    std::ostringstream os;
    os << "num: [";
    int d = poly_degree(s.numerator);
    for (int i = 0; i <= std::max(d, 0); ++i) {
        if (i) os << ", ";
        auto it = s.numerator.find(i);
        os << (it == s.numerator.end() ? Int(0) : it->second);
    }
    os << "]; den: [";
    for (size_t i = 0; i < s.denom_weights.size(); ++i) {
        if (i) os << ", ";
        os << s.denom_weights[i];
    }
    os << "]";
    return os.str();
}

} // namespace qdx
