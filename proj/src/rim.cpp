#include "cmod/rim.hpp"

#include <algorithm>
#include <sstream>

namespace cmod {

Rim::Rim(int n, std::vector<int> elements) : n_(n), elems_(std::move(elements)) {
    if (n_ < 2) throw InputError("rim needs n >= 2");
    if (elems_.empty() || static_cast<int>(elems_.size()) >= n_)
        throw InputError("rim size k must satisfy 0 < k < n");
    for (size_t i = 0; i < elems_.size(); ++i) {
        if (elems_[i] < 1 || elems_[i] > n_)
            throw InputError("rim element " + std::to_string(elems_[i]) + " out of range 1.." +
                             std::to_string(n_));
        if (i > 0 && elems_[i] <= elems_[i - 1])
            throw InputError("rim elements must be strictly increasing");
    }
}

bool Rim::contains(int i) const {
    int p = cyc(i, n_);
    return std::binary_search(elems_.begin(), elems_.end(), p);
}

std::vector<int> Rim::peaks() const {
    std::vector<int> out;
    for (int i = 1; i <= n_; ++i)
        if (!contains(i) && contains(i + 1)) out.push_back(i);
    return out;
}

std::vector<int> Rim::valleys() const {
    std::vector<int> out;
    for (int i = 1; i <= n_; ++i)
        if (contains(i) && !contains(i + 1)) out.push_back(i);
    return out;
}

Rim Rim::complement() const {
    std::vector<int> out;
    for (int i = 1; i <= n_; ++i)
        if (!contains(i)) out.push_back(i);
    return Rim(n_, out);
}

Rim Rim::rotated(int shift) const {
    std::vector<int> out;
    out.reserve(elems_.size());
    for (int e : elems_) out.push_back(cyc(e + shift, n_));
    std::sort(out.begin(), out.end());
    return Rim(n_, out);
}

std::string Rim::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < elems_.size(); ++i) {
        if (i) os << ",";
        os << elems_[i];
    }
    return os.str();
}

Rim Rim::parse(const std::string& text, int n) {
    std::vector<int> elems;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        size_t pos = 0;
        int v;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw InputError("bad rim element '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw InputError("bad rim element '" + tok + "'");
        elems.push_back(v);
    }
    std::sort(elems.begin(), elems.end());
    return Rim(n, elems);
}

std::pair<Rim, Rim> parse_profile(const std::string& text, int n) {
    size_t bar = text.find('|');
    if (bar == std::string::npos) throw InputError("profile must look like \"I|J\"");
    return {Rim::parse(text.substr(0, bar), n), Rim::parse(text.substr(bar + 1), n)};
}

namespace {

void check_pair(const Rim& I, const Rim& J) {
    if (I.n() != J.n()) throw InputError("rims live on different cycles");
    if (I.k() != J.k()) throw InputError("rims have different sizes k");
}

} // namespace

int interlacing_number(const Rim& I, const Rim& J) {
    check_pair(I, J);
    if (I == J) return 0;
    // Count maximal blocks of I\J in the cyclic word over the symmetric
    // difference; that is the maximal cyclic alternation length.
    std::vector<int> labels;  // +1 for I\J, -1 for J\I, in position order
    for (int p = 1; p <= I.n(); ++p) {
        bool a = I.contains(p), b = J.contains(p);
        if (a && !b) labels.push_back(+1);
        if (b && !a) labels.push_back(-1);
    }
    int m = static_cast<int>(labels.size());
    int blocks = 0;  // I\J and J\I both nonempty here, so blocks >= 1
    for (int i = 0; i < m; ++i) {
        int prev = labels[(i + m - 1) % m];
        if (labels[i] == 1 && prev == -1) ++blocks;
    }
    return blocks;
}

ReducedProfile reduce_profile(const Rim& I, const Rim& J) {
    check_pair(I, J);
    if (I == J) throw DegenerateProfile("profile I|J with I == J has no reduction");
    std::vector<int> keep;
    for (int p = 1; p <= I.n(); ++p)
        if (I.contains(p) != J.contains(p)) keep.push_back(p);
    std::vector<int> ri, rj;
    for (size_t q = 0; q < keep.size(); ++q) {
        if (I.contains(keep[q])) ri.push_back(static_cast<int>(q) + 1);
        else rj.push_back(static_cast<int>(q) + 1);
    }
    int np = static_cast<int>(keep.size());
    return ReducedProfile{Rim(np, ri), Rim(np, rj), keep};
}

bool ProfileGeometry::tight() const {
    int common = 0;
    for (int p = 1; p <= I.n(); ++p)
        if (I.contains(p) && J.contains(p)) ++common;
    return r1 == r && common == I.k() - r;
}

ProfileGeometry profile_geometry(const Rim& I, const Rim& J) {
    check_pair(I, J);
    if (I == J) throw DegenerateProfile("profile I|J with I == J");
    ProfileGeometry g{I, J, reduce_profile(I, J), 0, 0, {}, {}, {}, {}, {}};
    g.r = interlacing_number(I, J);

    const Rim& RI = g.reduced.I;
    int np = RI.n();

    // Offset of rim J below rim I after each edge; rims meet where the offset
    // attains its minimum (J is anchored as high as the rims allow).
    std::vector<int> delta(static_cast<size_t>(np) + 1, 0);
    for (int p = 1; p <= np; ++p)
        delta[p] = delta[p - 1] + (RI.contains(p) ? -1 : +1);
    int m = *std::min_element(delta.begin() + 1, delta.end());

    std::vector<int> branches, juncs;  // reduced labels
    for (int v : RI.valleys()) {
        if (delta[v] == m) branches.push_back(v);
        else juncs.push_back(v);
    }
    g.r1 = static_cast<int>(branches.size());
    for (int v : juncs) g.junctions.push_back(g.reduced.original_of(v));

    if (g.r1 == 0) return g;  // cannot happen for I != J, but keep it safe

    // Box g runs over (branch_g, branch_{g+1}]; size = #I-elements inside.
    int r1 = g.r1;
    auto box_size = [&](int from_idx) {
        int a = branches[static_cast<size_t>(from_idx)];
        int b = branches[static_cast<size_t>((from_idx + 1) % r1)];
        int len = (b - a + np) % np;
        if (len == 0) len = np;
        int cnt = 0;
        for (int s = 1; s <= len; ++s)
            if (RI.contains(a + s)) ++cnt;
        return cnt;
    };
    std::vector<int> sizes(static_cast<size_t>(r1));
    for (int i = 0; i < r1; ++i) sizes[static_cast<size_t>(i)] = box_size(i);

    // Anchor: rotation with lexicographically minimal size tuple (ties go to
    // the smallest starting branch point).
    int best = 0;
    std::vector<int> best_tuple;
    for (int rot = 0; rot < r1; ++rot) {
        std::vector<int> tup(static_cast<size_t>(r1));
        for (int i = 0; i < r1; ++i) tup[static_cast<size_t>(i)] = sizes[static_cast<size_t>((rot + i) % r1)];
        if (rot == 0 || tup < best_tuple) {
            best_tuple = tup;
            best = rot;
        }
    }
    for (int i = 0; i < r1; ++i) {
        int idx = (best + i) % r1;
        int bi = branches[static_cast<size_t>(idx)];
        g.branch_i.push_back(g.reduced.original_of(bi));
        g.branch_j.push_back(g.reduced.original_of(cyc(bi + 1, np)));
        g.box_sizes.push_back(sizes[static_cast<size_t>(idx)]);
        int a = bi;
        int b = branches[static_cast<size_t>((idx + 1) % r1)];
        int len = (b - a + np) % np;
        if (len == 0) len = np;
        std::vector<int> pos;
        for (int s = 1; s <= len; ++s) pos.push_back(g.reduced.original_of(cyc(a + s, np)));
        g.box_positions.push_back(std::move(pos));
    }
    return g;
}

bool almost_tightly_3_interlacing(const Rim& I, const Rim& J) {
    if (I == J) return false;
    ProfileGeometry g = profile_geometry(I, J);
    if (g.r1 != 3 || !g.squared()) return false;
    std::vector<int> s = g.box_sizes;
    std::sort(s.begin(), s.end());
    return s[0] == 1 && s[1] == 1;
}

} // namespace cmod
