#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cmod/module.hpp"

namespace cmod {

struct OracleOptions {
    /// Re-run the computation at truncation N+4 and demand the same answer.
    bool stability_check = true;
};

/// Free basis of Hom(A, B) over the truncated centre, computed by exact
/// linear algebra on the commutation system x^B_i phi_{i-1} = phi_i x^A_i.
/// A hom is determined by its matrix at vertex 0; `phi0` holds the base
/// matrices of the generators and `families` their per-vertex propagations.
struct HomBasis {
    int free_rank = 0;
    std::vector<SMat> phi0;                     ///< rank(B) x rank(A) each
    std::vector<std::vector<SMat>> families;    ///< families[g][v], v = vertex 0..n-1
    std::vector<int> pivot_vals;                ///< elementary-divisor exponents
};

HomBasis hom_basis(const QuiverModule& A, const QuiverModule& B,
                   const OracleOptions& opts = {});

/// End(M)/t End(M) (or of a formal direct sum of modules) as a finite
/// Q-algebra with exact structure constants.
struct FiniteAlgebra {
    int dim = 0;
    /// mult[i][j] = coordinates of g_i o g_j in the basis (g_k).
    std::vector<std::vector<std::vector<Rat>>> mult;
    std::vector<Rat> unit;
    int radical_dim = 0;
    std::vector<std::vector<Rat>> radical;  ///< basis of the Jacobson radical

    int ss_dim() const { return dim - radical_dim; }
    std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
    bool is_associative_on_basis() const;
};

FiniteAlgebra end_mod_t(const QuiverModule& M, const OracleOptions& opts = {});

/// Basis of the Jacobson radical via the trace form of the regular
/// representation (characteristic zero).
std::vector<std::vector<Rat>> radical_basis(const FiniteAlgebra& A);

/// True iff the semisimple quotient of End(M)/t End(M) is 1-dimensional.
bool is_indecomposable(const QuiverModule& M, const OracleOptions& opts = {});

/// A nontrivial idempotent endomorphism as a per-vertex matrix family,
/// or nullopt when End(M) is local. Lifted t-adically by Newton iteration.
std::optional<std::vector<SMat>> find_idempotent(const QuiverModule& M,
                                                 const OracleOptions& opts = {});

/// Walks the eigenvalue-1 eigenlines of the idempotent family around the
/// quiver; edges acting by a unit form the rim of each summand.
std::pair<Rim, Rim> summand_rims(const QuiverModule& M, const std::vector<SMat>& idem);

/// Isomorphism test with no reference to the divisibility criteria:
/// indecomposables via the Krull-Schmidt dimension count on End(M1 + M2),
/// decomposables by splitting into rank-1 summands first.
bool iso_oracle(const QuiverModule& M1, const QuiverModule& M2,
                const OracleOptions& opts = {});

/// Propagates a base matrix phi_0 around the cycle into the full family.
std::vector<SMat> propagate_family(const QuiverModule& A, const QuiverModule& B,
                                   const SMat& phi0);

/// phi at vertex i from phi at vertex i-1, across edge i: the unique solution
/// of phi_i x^A_i = x^B_i phi_{i-1} over the fraction field, divided back
/// into the ring (throws NotDivisible if it does not land there).
SMat transport_edge(const QuiverModule& A, const QuiverModule& B, const SMat& phi, int edge);

/// Propagation anchored at an arbitrary base vertex (0-based).
std::vector<SMat> propagate_family_from(const QuiverModule& A, const QuiverModule& B,
                                        const SMat& phi_base, int base_vertex);

/// Checks x^B_i phi_{i-1} = phi_i x^A_i at every edge.
bool commutes(const QuiverModule& A, const QuiverModule& B, const std::vector<SMat>& fam);

struct OracleReport {
    int end_rank = 0;
    int end_mod_t_dim = 0;
    int radical_dim = 0;
    int ss_quotient_dim = 0;
    bool indecomposable = false;
    std::optional<std::vector<SMat>> idempotent;
};

OracleReport oracle_report(const QuiverModule& M, const OracleOptions& opts = {});
std::string oracle_report_json(const OracleReport& r);

} // namespace cmod
