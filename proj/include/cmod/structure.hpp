#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmod/module.hpp"
#include "cmod/rim.hpp"

namespace cmod {

/// Per-branch box sums of a rank-2 module, read off actual matrix products
/// over the reduced profile (never from hand-coded exponent tables).
/// pair_sums[g-1] = B_{i_g} + B_{j_g} straddles branching point i_g: the
/// t-weighted coefficient sum over the second half of box g-1 plus the one
/// over the first half of box g.
struct BoxSums {
    std::vector<int> branch_i;
    std::vector<int> branch_j;
    std::vector<int> box_sizes;
    std::vector<Series> half_in;    ///< B_{i_g}
    std::vector<Series> half_out;   ///< B_{j_g}
    std::vector<Series> pair_sums;  ///< B_{i_g} + B_{j_g}

    int boxes() const { return static_cast<int>(box_sizes.size()); }
    /// min(l_{g-1}, l_g), the divisibility exponent tested at branch g (1-based).
    int min_exp(int g) const;
};

/// Requires poset 1^{r1}|2 with r1 >= 3 and squared boxes.
BoxSums box_sums(const Rank2Module& M);

enum class Verdict { Indecomposable, DirectSum, NotApplicable };

struct StructureReport {
    Verdict verdict = Verdict::NotApplicable;
    std::string case_tag;  ///< "tight3", "threebox", "tight4-case1", ...
    std::string rule;      ///< name of the certifying criterion
    std::string iso_key;   ///< canonical per-profile isomorphism-class key
    std::optional<std::pair<Rim, Rim>> summands;
    std::optional<std::vector<int>> s_vector;
    /// Nontrivial idempotent family certifying a direct sum (empty when the
    /// verdict is certified by a criterion alone).
    std::vector<SMat> witness_family;
    std::string note;
};

/// Theorem-based classification. Dispatch: reduce the profile, read its
/// geometry, then tight-3 / three squared boxes / tight-4 on (4,8); anything
/// else (junctions, r1 < 3, r1 >= 5, non-tight r1 = 4) is NotApplicable and
/// callers fall back to the endomorphism oracle.
///
/// with_witness = false skips the explicit idempotent family in the split
/// cases whose summands have a closed form (bulk sweeps); the mixed patterns
/// still construct it, since their summands come from the eigenline walk.
StructureReport classify(const Rank2Module& M, bool with_witness = true);

/// Canonical isomorphism-class key (equal keys <=> isomorphic, per profile).
std::string iso_key(const Rank2Module& M);

enum class IsoOutcome { Isomorphic, NonIsomorphic, NotApplicable };

struct IsoResult {
    IsoOutcome outcome = IsoOutcome::NotApplicable;
    /// Explicit invertible family with phi_i x_i = x_i phi_{i-1}, when a
    /// closed-form construction exists for the case.
    std::vector<SMat> family;
};

/// Explicit isomorphism between two modules with the same profile, when the
/// case has a closed-form construction (indecomposable three-box incl.
/// tight-3, and the (4,8) tight-4 indecomposable cases).
IsoResult build_iso(const Rank2Module& M1, const Rank2Module& M2);

/// Number of isomorphism classes of indecomposables with a three-squared-box
/// filtration of sizes l1 <= l2 <= l3 (inputs are sorted first).
long count_indecomposables(int l1, int l2, int l3);

/// The one-parameter family on profile 1357|2468 in (4,8): pair sums
/// (1, beta, -1, -beta). Requires beta not in {0, 1, -1}.
Rank2Module build_M_beta(const Rat& beta, int trunc = 0);

/// General construction for profiles with poset 1^{r1}|2, r1 >= 4: unit pair
/// sums at three consecutive branching points, zero elsewhere, with the
/// divisible run beginning at `start_branch` (1-based). Distinct starts give
/// pairwise non-isomorphic indecomposables.
Rank2Module general_r_family(const Rim& I, const Rim& J, int start_branch, int trunc = 0);

/// Beta-style member on an r1 = 4 profile: pair sums (1, q, -1, -q) at the
/// four branching points, zero elsewhere.
Rank2Module build_beta_family_on(const Rim& I, const Rim& J, const Rat& q, int trunc = 0);

/// Summand rims predicted by the layer-swap rule when pair g* is divisible
/// and the two other pairs have valuation 0: swap the two layers on box g*+1.
std::pair<Rim, Rim> three_box_summand_formula(const Rank2Module& M, int g_star);

std::string report_json(const StructureReport& r);

} // namespace cmod
