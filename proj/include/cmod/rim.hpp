#pragma once

#include <string>
#include <vector>

#include "cmod/errors.hpp"

namespace cmod {

/// A k-subset of {1..n}, identified with the upper boundary (rim) of the
/// lattice diagram of the rank-1 module it labels. Positions are cyclic:
/// "i+1" always means the cyclic successor in {1..n}.
class Rim {
public:
    Rim(int n, std::vector<int> elements);

    int n() const { return n_; }
    int k() const { return static_cast<int>(elems_.size()); }
    const std::vector<int>& elements() const { return elems_; }
    bool contains(int i) const;

    /// Peaks: i with i not in I and i+1 in I (cyclically).
    std::vector<int> peaks() const;
    /// Valleys: i with i in I and i+1 not in I (cyclically).
    std::vector<int> valleys() const;

    Rim complement() const;
    /// Adds `shift` to every element, modulo n.
    Rim rotated(int shift) const;

    std::string str() const;
    /// Comma-separated integers, e.g. "1,3,5".
    static Rim parse(const std::string& text, int n);

    bool operator==(const Rim& o) const { return n_ == o.n_ && elems_ == o.elems_; }
    bool operator!=(const Rim& o) const { return !(*this == o); }
    bool operator<(const Rim& o) const { return elems_ < o.elems_; }

private:
    int n_;
    std::vector<int> elems_;
};

/// Normalizes to 1..n.
inline int cyc(int i, int n) { return (i - 1) % n + ((i - 1) % n < 0 ? n : 0) + 1; }

/// Maximal r such that alternating elements i1 < i2 < ... < i_{2r} (cyclically)
/// can be chosen from I\J and J\I; 0 if I == J.
int interlacing_number(const Rim& I, const Rim& J);

/// A profile with all positions in (I cap J) u (I^c cap J^c) removed and the
/// rest renumbered cyclically to {1..n'}; then n' = 2k' and J' = I'^c.
struct ReducedProfile {
    Rim I;
    Rim J;
    /// index_map[p-1] = original position of reduced position p.
    std::vector<int> index_map;

    int original_of(int reduced_pos) const {
        return index_map[static_cast<size_t>(reduced_pos - 1)];
    }
};

ReducedProfile reduce_profile(const Rim& I, const Rim& J);

/// Derived geometry of a profile I|J: interlacing number, boxes, branching
/// points, junctions, box sizes. Branching data is reported in *original*
/// labels; boxes are cyclically anchored so the size tuple (l_1..l_{r1}) is
/// lexicographically minimal (ties: smallest starting branch label).
struct ProfileGeometry {
    Rim I;
    Rim J;
    ReducedProfile reduced;
    int r = 0;   ///< interlacing number
    int r1 = 0;  ///< box count; the poset of the profile is 1^{r1} | 2

    std::vector<int> branch_i;   ///< i_1..i_{r1}, elements of I\J (original labels)
    std::vector<int> branch_j;   ///< j_g = cyclic successor of i_g in the reduced profile
    std::vector<int> box_sizes;  ///< l_g = |I\J| inside box g = (i_g, i_{g+1}]
    std::vector<int> junctions;  ///< valleys of I interior to boxes (original labels)

    /// box_positions[g] = reduced-profile positions of box g+1 in cyclic order,
    /// as original labels.
    std::vector<std::vector<int>> box_positions;

    int poset_exponent() const { return r1; }
    bool squared() const { return junctions.empty(); }
    bool tight() const;
    /// Size of box g-1 with cyclic indexing (box "0" is box r1).
    int box_size_before(int g) const {
        return box_sizes[static_cast<size_t>((g - 1 + r1 - 1) % r1)];
    }
};

ProfileGeometry profile_geometry(const Rim& I, const Rim& J);

/// Three squared boxes with at least two of them of size 1 (tightly
/// 3-interlacing profiles qualify).
bool almost_tightly_3_interlacing(const Rim& I, const Rim& J);

/// Parses "I|J", e.g. "1,3,5|2,4,6".
std::pair<Rim, Rim> parse_profile(const std::string& text, int n);

} // namespace cmod
