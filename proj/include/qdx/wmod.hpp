#pragma once

#include "qdx/grpcat.hpp"
#include "qdx/monalg.hpp"

#include <vector>

namespace qdx {

// Graded dimension vector, finitely supported; index = degree.
struct GradedDims {
    std::vector<long long> dims;

    long long total() const;
    long long at(int d) const { return d < (int)dims.size() ? dims[d] : 0; }
    int top_degree() const { return (int)dims.size() - 1; }
};

// A graded module carrying t * |W| components, each a copy of a fixed base,
// with W permuting the components.  The default action is left translation on
// (orbit, W)-indices; a custom component action can be supplied and is
// validated (permutation action, homomorphism, free) at construction.
struct InducedModule {
    PermGroup W;
    int t = 1;
    GradedDims base;
    long long base_length = 0; // declared *length of the base
    int p = 2;
    // action[i] = permutation of component indices for W.elements()[i]
    std::vector<std::vector<int>> action;

    int num_components() const { return t * (int)W.order(); }

    static InducedModule make(PermGroup W, int t, GradedDims base, long long base_length, int p);
    static InducedModule make_with_action(PermGroup W, int t, GradedDims base,
                                          long long base_length, int p,
                                          std::vector<std::vector<int>> action);
    // Base taken from an Artinian monomial quotient; throws NotArtinian otherwise.
    static InducedModule from_quotient(PermGroup W, int t, const WeightedRing& R,
                                       const MonIdeal& I);
};

// Verifies dim P_d = |W| * t * base_d for d <= D and certifies freeness by
// translating a base-component basis around each orbit.
bool check_free(const InducedModule& P, int D);

// Dimension of the W-fixed subspace per degree <= D, by explicit linear
// algebra over F_p (stacked kernels of (w - 1) for the generators).
std::vector<long long> invariants_dims(const InducedModule& P, int D);

struct LengthIdentity {
    long long lP = 0;
    long long lPW = 0;
    bool ok = false;
};

// *length of P versus |W| times *length of P^W, from independent tallies.
LengthIdentity length_identity(const InducedModule& P);

// *length of M tensor V for a graded vector space V.
long long tensor_length(long long m_len, const std::vector<long long>& v_dims);

} // namespace qdx
