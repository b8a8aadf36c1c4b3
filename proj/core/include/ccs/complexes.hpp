#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccs/snf.hpp"

namespace ccs {

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Free Z-chain complex given by per-degree ranks and boundary matrices
/// boundary[k] : C_k -> C_{k-1} (so boundary[0] is empty).
struct ChainComplex {
    std::vector<int> ranks;
    std::vector<IntMat> boundary;

    int top() const { return int(ranks.size()) - 1; }
    int rank(int k) const { return (k >= 0 && k <= top()) ? ranks[k] : 0; }
    IntMat partial(int k) const;    // C_k -> C_{k-1}
    IntMat delta(int k) const;      // C^k -> C^{k+1}, transpose of partial(k+1)
    void validate() const;          // throws unless d o d = 0 exactly

    /// Lattice basis of the k-cycles Z_k = ker(partial k), columns.
    IntMat cycle_basis(int k) const;
};

/// Degree-0 chain map f : A -> X.
struct ChainMapData {
    std::vector<IntMat> f;  // f[k] : A_k -> X_k (missing degrees are zero)
    IntMat at(int k, int rows, int cols) const;
};

void validate_chain_map(const ChainComplex& a, const ChainComplex& x, const ChainMapData& f);

/// Mapping cone with C_k(cone) = C_k(X) (+) C_{k-1}(A) and
/// boundary (v,w) -> (dv + f(w), -dw).
struct MappingCone {
    ChainComplex cone;
    const int x_rank_offset = 0;  // X block comes first in every degree
    std::vector<int> x_ranks, a_ranks;
};

MappingCone cone_of_map(const ChainComplex& a, const ChainComplex& x, const ChainMapData& f);

/// Finitely generated abelian group H^k presented through the Smith normal
/// form of coboundaries expressed in cocycle coordinates. Supports reducing
/// an arbitrary cocycle to canonical quotient coordinates.
struct CohomologyGroup {
    int degree = 0;
    int free_rank = 0;
    std::vector<Int> torsion;    // invariant factors > 1
    IntMat cocycles;             // columns: lattice basis of Z^k
    IntMat generators;           // columns: cocycle representatives of the group generators
    std::vector<Int> gen_orders; // 0 = infinite order, aligned with generators

    // reduction data
    SmithResult zs;              // SNF of cocycles (for coordinates in Z^k)
    IntMat u_quot;               // change of basis making the coboundary image diagonal
    std::vector<Int> diag;       // invariant factor per quotient coordinate (0 = free)

    /// Canonical coordinates of [z] in the quotient; throws if z is not a cocycle.
    IntVec reduce(const IntVec& cocycle) const;
    bool is_zero_class(const IntVec& cocycle) const;
    bool same_class(const IntVec& z1, const IntVec& z2) const;
};

/// Integral cohomology of every degree (0..top).
std::vector<CohomologyGroup> cohomology_z(const ChainComplex& c);
CohomologyGroup cohomology_z_at(const ChainComplex& c, int k);

/// Real cohomology: Betti number per degree.
std::vector<int> betti_numbers(const ChainComplex& c);

/// R/Z cohomology assembled from integral data: H^k(C; R/Z) is a torus of
/// dimension b_k plus the torsion of H^{k+1}(C; Z).
struct CircleCohomology {
    int degree = 0;
    int torus_rank = 0;
    std::vector<Int> torsion;
};
std::vector<CircleCohomology> cohomology_rz(const ChainComplex& c);

std::vector<CohomologyGroup> homology_z(const ChainComplex& c);

// ---- cochain helpers ----

IntVec pullback_cochain(const IntMat& chain_map_k, const IntVec& cochain);
RatVec pullback_cochain(const IntMat& chain_map_k, const RatVec& cochain);
std::vector<double> pullback_cochain(const IntMat& chain_map_k, const std::vector<double>& cochain);

template <class T>
T pair_cochain(const std::vector<T>& cochain, const IntVec& chain) {
    T acc{};
    for (size_t i = 0; i < chain.size(); ++i) {
        if (chain[i] == 0) continue;
        if constexpr (std::is_same_v<T, double>)
            acc += double(chain[i]) * cochain[i];
        else
            acc += T(chain[i]) * cochain[i];
    }
    return acc;
}

// ---- exactness of induced sequences ----

/// Exactness of H(f) -> H(g) at the middle cohomology, via sublattice
/// comparison in cocycle coordinates. `f` and `g` are cochain-level matrices
/// C^*(A) -> C^*(B) and C^*(B) -> C^*(C) in matching degrees.
struct JunctionReport {
    std::string name;
    bool composition_zero = false;
    bool ker_in_im = false;
    bool im_in_ker = false;
    int ker_rank = 0, im_rank = 0;
    bool pass() const { return composition_zero && ker_in_im && im_in_ker; }
};

JunctionReport check_exactness(const std::string& name,
                               const IntMat& delta_a,       // out of dom(f)'s degree
                               const IntMat& f,
                               const IntMat& delta_b_prev,  // coboundaries into the middle degree
                               const IntMat& delta_b,       // out of the middle degree
                               const IntMat& g,
                               const IntMat& delta_c_prev); // coboundaries into cod(g)'s degree

/// Long exact sequence of the cone of f: A -> X on integral cohomology:
///   H^{k-1}(A) -> H^k(cone) -> H^k(X) -> H^k(A) -> H^{k+1}(cone) ...
std::vector<JunctionReport> verify_long_exact(const ChainComplex& a, const ChainComplex& x,
                                              const ChainMapData& f);

// ---- transgression on the cochain level ----

struct TransgressionResult {
    IntVec rep;                 // cocycle on the fiber complex, degree k-1
    IntMat quotient_lattice;    // columns spanning i^*H^{k-1}(E) + coboundaries
    int fiber_degree = 0;

    /// Is `z` (a fiber cocycle) in the same coset as rep?
    bool coset_contains(const IntVec& z) const;
    bool coset_is_zero() const { return coset_contains(IntVec(rep.size(), 0)); }
};

/// Cocycle transgression for a "bundle" datum: total complex E, base X,
/// projection p: E -> X, fiber inclusion i: F -> E, basepoint = first vertex
/// of X. Solves p*mu = delta nu over Z and returns the class of -i*nu in
/// H^{k-1}(F) / i^* H^{k-1}(E). Throws if mu is not transgressive.
TransgressionResult transgress(const ChainComplex& total, const ChainComplex& base,
                               const ChainMapData& projection, const ChainComplex& fiber,
                               const ChainMapData& fiber_inclusion, int degree, const IntVec& mu);

}  // namespace ccs
