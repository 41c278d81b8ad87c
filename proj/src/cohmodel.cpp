#include "qdx/cohmodel.hpp"

#include "qdx/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qdx {

namespace {

using Matrix = std::vector<std::vector<int>>;

int mod_pos(int a, int p) { return ((a % p) + p) % p; }

int matrix_rank_mod_p(Matrix m, int p) {
    int rows = (int)m.size(), cols = rows ? (int)m[0].size() : 0;
    int rank = 0, row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int r = row; r < rows; ++r)
            if (mod_pos(m[r][col], p) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[row], m[pivot]);
        int inv = 1, a = mod_pos(m[row][col], p);
        for (int k = 1; k < p; ++k)
            if (a * k % p == 1) { inv = k; break; }
        for (int c = 0; c < cols; ++c) m[row][c] = mod_pos(m[row][c] * inv, p);
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            int f = mod_pos(m[r][col], p);
            if (!f) continue;
            for (int c = 0; c < cols; ++c) m[r][c] = mod_pos(m[r][c] - f * m[row][c], p);
        }
        ++row;
        ++rank;
    }
    return rank;
}

Matrix matmul_mod(const Matrix& a, const Matrix& b, int p) {
    int r = (int)a.size();
    Matrix c(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            if (!a[i][k]) continue;
            for (int j = 0; j < r; ++j) c[i][j] = mod_pos(c[i][j] + a[i][k] * b[k][j], p);
        }
    return c;
}

} // namespace

LinearWAction LinearWAction::make(int rank, int p,
                                  std::vector<std::vector<std::vector<int>>> gens) {
    if (rank < 0) throw Error("action rank must be >= 0");
    LinearWAction a;
    a.rank = rank;
    a.p = p;
    for (auto& m : gens) {
        if ((int)m.size() != rank) throw Error("action matrix must be rank x rank");
        for (auto& row : m) {
            if ((int)row.size() != rank) throw Error("action matrix must be rank x rank");
            for (auto& e : row) e = mod_pos(e, p);
        }
        if (matrix_rank_mod_p(m, p) != rank)
            throw InvariantViolation("action matrix is not invertible mod p");
        a.gens.push_back(std::move(m));
    }
    return a;
}

SeriesOnlyModel SeriesOnlyModel::make(SeriesExpr series, int declared_dim, std::string note,
                                      std::optional<LinearWAction> action) {
    if (!series.is_zero() && pole_order(series) != declared_dim)
        throw InvariantViolation("declared dimension " + std::to_string(declared_dim) +
                                 " differs from the series pole order");
    SeriesOnlyModel m;
    m.series = std::move(series);
    m.declared_dim = declared_dim;
    m.note = std::move(note);
    m.action = std::move(action);
    return m;
}

SeriesExpr model_series(const CohModel& m) {
    if (const auto* ea = std::get_if<ElementaryAbelianModel>(&m)) {
        if (ea->p == 2) {
            // F_2[x_1..x_r], deg x = 1
            return SeriesExpr(Poly{{0, 1}}, std::vector<int>(ea->rank, 1));
        }
        // Lambda(x_1..x_r) (x) F_p[y_1..y_r]: ((1+t)/(1-t^2))^r
        Poly num{{0, 1}};
        for (int i = 0; i < ea->rank; ++i) num = poly_mul(num, Poly{{0, 1}, {1, 1}});
        return SeriesExpr(std::move(num), std::vector<int>(ea->rank, 2));
    }
    if (const auto* pr = std::get_if<PresentedModel>(&m)) return hilbert_series(pr->ring, pr->ideal);
    return std::get<SeriesOnlyModel>(m).series;
}

Rat model_degree(const CohModel& m) { return degree_at_one(model_series(m)); }

int model_dim(const CohModel& m) { return pole_order(model_series(m)); }

bool model_is_verified(const CohModel& m) {
    if (const auto* so = std::get_if<SeriesOnlyModel>(&m)) return so->action.has_value();
    return true;
}

// --- invariant truncation ------------------------------------------------------

namespace {

// Basis label for a monomial in Lambda(x) (x) F_p[y] (mask empty and ys used
// for p = 2, where the ring is the polynomial algebra on the x's).
struct Mono {
    unsigned mask = 0;
    std::vector<int> ys;
    auto operator<=>(const Mono&) const = default;
};

using Element = std::map<Mono, int>;

void add_term(Element& e, const Mono& m, int c, int p) {
    int& slot = e[m];
    slot = mod_pos(slot + c, p);
    if (!slot) e.erase(m);
}

// Multiply by the linear form sum_j row[j] * x_j (exterior part).
Element wedge_mul(const Element& e, const std::vector<int>& row, int p) {
    Element out;
    for (const auto& [m, c] : e)
        for (int j = 0; j < (int)row.size(); ++j) {
            if (!row[j]) continue;
            if (m.mask & (1u << j)) continue; // x_j^2 = 0
            int swaps = 0;
            for (int k = j + 1; k < (int)row.size(); ++k)
                if (m.mask & (1u << k)) ++swaps;
            Mono nm = m;
            nm.mask |= 1u << j;
            int sign = (swaps % 2) ? -1 : 1;
            add_term(out, nm, c * row[j] * sign, p);
        }
    return out;
}

// Multiply by the linear form sum_j row[j] * y_j (symmetric part), or by
// sum_j row[j] * x_j in the p = 2 polynomial algebra.
Element sym_mul(const Element& e, const std::vector<int>& row, int p) {
    Element out;
    for (const auto& [m, c] : e)
        for (int j = 0; j < (int)row.size(); ++j) {
            if (!row[j]) continue;
            Mono nm = m;
            nm.ys[j] += 1;
            add_term(out, nm, c * row[j], p);
        }
    return out;
}

std::vector<Mono> degree_basis(int r, int p, int d) {
    std::vector<Mono> basis;
    auto compositions = [&](int total, auto&& emit) {
        std::vector<int> a(r, 0);
        auto rec = [&](auto&& self, int idx, int rem) -> void {
            if (idx == r - 1 || r == 0) {
                if (r == 0) {
                    if (rem == 0) emit(a);
                    return;
                }
                a[idx] = rem;
                emit(a);
                return;
            }
            for (int v = 0; v <= rem; ++v) {
                a[idx] = v;
                self(self, idx + 1, rem - v);
            }
        };
        if (r == 0) {
            if (total == 0) emit(std::vector<int>{});
            return;
        }
        rec(rec, 0, total);
    };
    if (p == 2) {
        compositions(d, [&](const std::vector<int>& a) {
            basis.push_back(Mono{0, a});
        });
        return basis;
    }
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        int s = __builtin_popcount(mask);
        if (s > d || (d - s) % 2 != 0) continue;
        compositions((d - s) / 2, [&](const std::vector<int>& a) {
            basis.push_back(Mono{mask, a});
        });
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

Element act_on_mono(const Mono& m, const Matrix& g, int r, int p) {
    Element e;
    e[Mono{0, std::vector<int>(r, 0)}] = 1;
    for (int i = 0; i < r; ++i)
        if (m.mask & (1u << i)) e = wedge_mul(e, g[i], p);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < m.ys[i]; ++k) e = sym_mul(e, g[i], p);
    return e;
}

} // namespace

std::vector<long long> invariant_truncation(const LinearWAction& a, int D) {
    // The pre-condition bounds the order of the generated matrix group.
    {
        std::set<Matrix> seen;
        std::vector<Matrix> todo;
        Matrix id(a.rank, std::vector<int>(a.rank, 0));
        for (int i = 0; i < a.rank; ++i) id[i][i] = 1;
        seen.insert(id);
        todo.push_back(id);
        while (!todo.empty()) {
            Matrix cur = todo.back();
            todo.pop_back();
            for (const auto& g : a.gens) {
                Matrix next = matmul_mod(g, cur, a.p);
                if (seen.insert(next).second) {
                    if (seen.size() > kMatrixGroupBound)
                        throw GroupTooLarge("matrix group exceeds order bound");
                    todo.push_back(next);
                }
            }
        }
    }

    std::vector<long long> dims(D + 1, 0);
    for (int d = 0; d <= D; ++d) {
        auto basis = degree_basis(a.rank, a.p, d);
        int n = (int)basis.size();
        if (n == 0) { dims[d] = 0; continue; }
        if (n > 5000) throw CapacityExceeded("invariant truncation basis too large");
        std::map<Mono, int> index;
        for (int i = 0; i < n; ++i) index[basis[i]] = i;

        // Stack (g - 1) over the generators, solve for the common kernel.
        Matrix rows;
        for (const auto& g : a.gens) {
            Matrix block(n, std::vector<int>(n, 0));
            for (int col = 0; col < n; ++col) {
                Element img = act_on_mono(basis[col], g, a.rank, a.p);
                for (const auto& [m, c] : img) block[index.at(m)][col] = c;
                block[col][col] = mod_pos(block[col][col] - 1, a.p);
            }
            for (auto& r : block) rows.push_back(std::move(r));
        }
        int rank = rows.empty() ? 0 : matrix_rank_mod_p(rows, a.p);
        dims[d] = n - rank;
    }
    return dims;
}

bool series_matches_action(const SeriesOnlyModel& m, int D) {
    if (!m.action) return false;
    auto truncation = invariant_truncation(*m.action, D);
    auto coeffs = expand(m.series, D);
    for (int d = 0; d <= D; ++d)
        if (coeffs[d] != truncation[d]) return false;
    return true;
}

} // namespace qdx
