#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmod/matrix.hpp"
#include "cmod/rim.hpp"

namespace cmod {

/// Default working precision for quiver size n.
inline int default_trunc(int n) { return 4 * n; }

/// A module over the boundary algebra given as a quiver representation:
/// free series modules of the same rank at the n cycle vertices, with an
/// x-map and a y-map per edge. Edge i (1-based) goes from vertex i-1 to
/// vertex i; x[i-1] and y[i-1] hold its matrices.
struct QuiverModule {
    int n = 0;
    int k = 0;
    int trunc = 1;
    int rank = 0;
    std::vector<SMat> x;
    std::vector<SMat> y;

    const SMat& x_at(int edge) const { return x[static_cast<size_t>(cyc(edge, n) - 1)]; }
    const SMat& y_at(int edge) const { return y[static_cast<size_t>(cyc(edge, n) - 1)]; }

    /// Same module at truncation trunc + extra. Valid because every stored
    /// entry is an exact polynomial at full watermark.
    QuiverModule extended(int extra) const;
};

/// The representation-level rank (free Z-rank at each vertex).
inline int rank(const QuiverModule& m) { return m.rank; }

/// Block-diagonal direct sum (same quiver, same truncation).
QuiverModule direct_sum(const QuiverModule& a, const QuiverModule& b);

/// Rank-1 module attached to a rim: x_i = 1, y_i = t on rim edges and
/// x_i = t, y_i = 1 off the rim.
struct Rank1Module {
    Rim rim;
    int trunc;
    std::vector<Series> x_scalars;
    std::vector<Series> y_scalars;

    QuiverModule rep() const;
};

Rank1Module build_rank1(const Rim& I, int trunc = 0);

/// Per-edge upper-right coefficients; index i-1 holds the coefficient of
/// edge i. Entries must be zero on (I cap J) u (I^c cap J^c).
using CoefficientTuple = std::vector<Series>;

/// Rank-2 module with submodule layer L_J and quotient layer L_I, in the
/// basis where all edge matrices are upper triangular: the (1,1) entry is
/// the L_J scalar, the (2,2) entry the L_I scalar, and the (1,2) entry of
/// x_i is b_i (that of y_i is -b_i).
struct Rank2Module {
    Rim I;
    Rim J;
    int trunc;
    CoefficientTuple b;
    std::vector<SMat> x;
    std::vector<SMat> y;

    int n() const { return I.n(); }
    int k() const { return I.k(); }
    QuiverModule rep() const;
    std::string profile_str() const { return I.str() + "|" + J.str(); }
};

/// Builds M(I,J) and checks the defining relations, including the cycle
/// constraint z = 0 (the off-diagonal of x_n ... x_1 must vanish).
Rank2Module build_M(const Rim& I, const Rim& J, const CoefficientTuple& b, int trunc = 0);

/// Same construction without the constraint check (negative-control tests).
Rank2Module build_M_unchecked(const Rim& I, const Rim& J, const CoefficientTuple& b,
                              int trunc = 0);

/// Per-edge weights of the cycle constraint: the off-diagonal of the full
/// cycle product is z(b) = sum_p weight[p-1] * b_p (it is jointly linear in
/// the coefficients). For modules built here each weight is an exact monomial.
std::vector<Series> constraint_weights(const Rim& I, const Rim& J, int trunc);

/// Completes `partial` so the cycle constraint holds, solving for the
/// coefficient at free_edge. The cycle product is affine in each b_i with a
/// unit-times-t-power coefficient.
CoefficientTuple solve_constraint(const Rim& I, const Rim& J, CoefficientTuple partial,
                                  int free_edge, int trunc = 0);

/// x_i y_i = y_i x_i = t id at every edge and x_n ... x_1 = t^{n-k} id.
bool verify_relations(const QuiverModule& m);
inline bool verify_relations(const Rank2Module& m) { return verify_relations(m.rep()); }
inline bool verify_relations(const Rank1Module& m) { return verify_relations(m.rep()); }

/// Full x-cycle product x_n ... x_1.
SMat cycle_product(const QuiverModule& m);

/// Exponents (m_v)_v of the canonical generator of Hom(L_I, L_J): vertex v
/// (0-based, v = 0 is the vertex between edges n and 1) is multiplication by
/// t^{m_v}. This is the valuation-minimal family commuting with all edge maps.
std::vector<int> canonical_hom(const Rim& I, const Rim& J);

/// Zero coefficient tuple for quiver size n.
CoefficientTuple zero_tuple(int n, int trunc);
/// Tuple from integer values (index i-1 = edge i).
CoefficientTuple tuple_from_ints(const std::vector<long>& vals, int trunc);
/// Tuple from comma-separated series literals.
CoefficientTuple tuple_from_literals(const std::string& csv, int n, int trunc);

std::string tuple_str(const CoefficientTuple& b);

/// JSON round-trip; deserialization rebuilds and re-verifies the relations.
std::string rank2_to_json(const Rank2Module& m);
Rank2Module rank2_from_json(const std::string& text);

} // namespace cmod
