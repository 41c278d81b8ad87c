#include "qdx/wmod.hpp"

#include "qdx/errors.hpp"
#include "qdx/series.hpp"

#include <algorithm>
#include <numeric>

namespace qdx {

long long GradedDims::total() const {
    return std::accumulate(dims.begin(), dims.end(), 0ll);
}

namespace {

std::vector<std::vector<int>> left_translation_action(const PermGroup& W, int t) {
    const auto& elems = W.elements();
    int n = (int)elems.size();
    std::vector<std::vector<int>> action(n);
    for (int wi = 0; wi < n; ++wi) {
        std::vector<int> perm(t * n);
        for (int orbit = 0; orbit < t; ++orbit)
            for (int ei = 0; ei < n; ++ei)
                perm[orbit * n + ei] = orbit * n + W.index_of(elems[wi] * elems[ei]);
        action[wi] = std::move(perm);
    }
    return action;
}

void validate_action(const PermGroup& W, int t, const std::vector<std::vector<int>>& action) {
    const auto& elems = W.elements();
    int nc = t * (int)elems.size();
    if ((int)action.size() != (int)elems.size())
        throw InvariantViolation("component action needs one permutation per group element");
    for (const auto& a : action) {
        if ((int)a.size() != nc) throw InvariantViolation("component action has wrong size");
        std::vector<bool> hit(nc, false);
        for (int x : a) {
            if (x < 0 || x >= nc || hit[x])
                throw InvariantViolation("component action is not a permutation");
            hit[x] = true;
        }
    }
    // Homomorphism on the full multiplication table.
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j) {
            int k = W.index_of(elems[i] * elems[j]);
            for (int c = 0; c < nc; ++c)
                if (action[k][c] != action[i][action[j][c]])
                    throw InvariantViolation("component action is not a homomorphism");
        }
    // Freeness: only the identity fixes a component.
    int id = W.index_of(Perm::identity(W.degree()));
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if ((int)i == id) continue;
        for (int c = 0; c < nc; ++c)
            if (action[i][c] == c)
                throw InvariantViolation("W does not act freely on the component set");
    }
}

} // namespace

InducedModule InducedModule::make(PermGroup W, int t, GradedDims base, long long base_length,
                                  int p) {
    auto action = left_translation_action(W, t);
    return make_with_action(std::move(W), t, std::move(base), base_length, p, std::move(action));
}

InducedModule InducedModule::make_with_action(PermGroup W, int t, GradedDims base,
                                              long long base_length, int p,
                                              std::vector<std::vector<int>> action) {
    if (t < 1) throw InvariantViolation("orbit count must be >= 1");
    for (long long d : base.dims)
        if (d < 0) throw InvariantViolation("base dimensions must be >= 0");
    validate_action(W, t, action);
    InducedModule P;
    P.W = std::move(W);
    P.t = t;
    P.base = std::move(base);
    P.base_length = base_length;
    P.p = p;
    P.action = std::move(action);
    return P;
}

InducedModule InducedModule::from_quotient(PermGroup W, int t, const WeightedRing& R,
                                           const MonIdeal& I) {
    auto M = GradedModule::cyclic(I);
    long long len = module_length(R, M); // NotArtinian when dim > 0
    GradedDims base;
    if (!M.is_zero()) {
        // Standard monomial degrees are bounded by the pure-power bounds.
        int top = 0;
        std::vector<int> bound(R.n(), 0);
        for (const auto& g : I.gens) {
            int nz = -1, cnt = 0;
            for (int i = 0; i < R.n(); ++i)
                if (g[i] > 0) { nz = i; ++cnt; }
            if (cnt == 1 && (bound[nz] == 0 || g[nz] < bound[nz])) bound[nz] = g[nz];
        }
        for (int i = 0; i < R.n(); ++i) top += (bound[i] - 1) * R.weights[i];
        auto coeffs = expand(hilbert_series(R, I), std::max(top, 0));
        for (const auto& c : coeffs) base.dims.push_back((long long)c);
        while (!base.dims.empty() && base.dims.back() == 0) base.dims.pop_back();
    }
    return make(std::move(W), t, std::move(base), len, R.p);
}

bool check_free(const InducedModule& P, int D) {
    const long long order = (long long)P.W.order();
    const int nc = P.num_components();
    for (int d = 0; d <= D; ++d) {
        long long dim = (long long)nc * P.base.at(d);
        if (dim != order * (P.t * P.base.at(d)))
            throw InvariantViolation("degreewise dimension is not |W| * t * base");
    }
    // Certify a group-algebra basis: pick unvisited components as orbit
    // representatives and translate; every component must be covered once.
    std::vector<int> covered(nc, 0);
    int orbits = 0;
    for (int c = 0; c < nc; ++c) {
        if (covered[c]) continue;
        ++orbits;
        for (std::size_t wi = 0; wi < P.W.order(); ++wi) {
            int image = P.action[wi][c];
            if (covered[image]++)
                throw InvariantViolation("orbit translates collide: action is not free");
        }
    }
    if (orbits != P.t) throw InvariantViolation("component orbit count differs from t");
    for (int c = 0; c < nc; ++c)
        if (covered[c] != 1) throw InvariantViolation("component not covered exactly once");
    return true;
}

namespace {

// Rank of a matrix over F_p (rows modified in place).
long long rank_mod_p(std::vector<std::vector<int>>& rows, int cols, int p) {
    long long rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < (int)rows.size(); ++col) {
        int pivot = -1;
        for (int r = row; r < (int)rows.size(); ++r)
            if (rows[r][col] % p != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[row], rows[pivot]);
        // scale pivot row to 1
        int inv = 1, a = ((rows[row][col] % p) + p) % p;
        for (int k = 1; k < p; ++k)
            if (a * k % p == 1) { inv = k; break; }
        for (int c = 0; c < cols; ++c) rows[row][c] = ((rows[row][c] * inv) % p + p) % p;
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r == row) continue;
            int f = ((rows[r][col] % p) + p) % p;
            if (f == 0) continue;
            for (int c = 0; c < cols; ++c)
                rows[r][c] = ((rows[r][c] - f * rows[row][c]) % p + p) % p;
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace

std::vector<long long> invariants_dims(const InducedModule& P, int D) {
    std::vector<long long> result(D + 1, 0);
    // Generator indices into W.elements().
    std::vector<int> gen_idx;
    for (const auto& g : P.W.generators()) gen_idx.push_back(P.W.index_of(g));
    if (gen_idx.empty()) gen_idx.push_back(P.W.index_of(Perm::identity(P.W.degree())));

    const int nc = P.num_components();
    for (int d = 0; d <= D; ++d) {
        long long bd = P.base.at(d);
        if (bd == 0) { result[d] = 0; continue; }
        int dim = (int)(nc * bd);
        // Basis (component c, base index b) -> c * bd + b.  Generators permute
        // components and fix base indices; stack (M_g - I) and take the kernel.
        std::vector<std::vector<int>> rows;
        rows.reserve(gen_idx.size() * dim);
        for (int gi : gen_idx) {
            for (int c = 0; c < nc; ++c)
                for (int b = 0; b < bd; ++b) {
                    std::vector<int> row(dim, 0);
                    int from = c * (int)bd + b;
                    int to = P.action[gi][c] * (int)bd + b;
                    row[to] = (row[to] + 1) % P.p;
                    row[from] = ((row[from] - 1) % P.p + P.p) % P.p;
                    bool nonzero = std::any_of(row.begin(), row.end(), [](int v) { return v != 0; });
                    if (nonzero) rows.push_back(std::move(row));
                }
        }
        long long rank = rows.empty() ? 0 : rank_mod_p(rows, dim, P.p);
        result[d] = dim - rank;
        if (result[d] != P.t * bd)
            throw InvariantViolation("fixed-space dimension differs from t * base dimension");
    }
    return result;
}

LengthIdentity length_identity(const InducedModule& P) {
    LengthIdentity out;
    // Composition factors summed across the t*|W| components.
    out.lP = (long long)P.num_components() * P.base_length;
    // Invariants tally over the full (finite) degree support of the base.
    auto inv = invariants_dims(P, std::max(P.base.top_degree(), 0));
    out.lPW = std::accumulate(inv.begin(), inv.end(), 0ll);
    out.ok = (out.lP == (long long)P.W.order() * out.lPW);
    return out;
}

long long tensor_length(long long m_len, const std::vector<long long>& v_dims) {
    long long vt = std::accumulate(v_dims.begin(), v_dims.end(), 0ll);
    return m_len * vt;
}

} // namespace qdx
