#include "cmod/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cmod {

namespace {

// ---------------------------------------------------------------------------
// Rational dense linear algebra (small matrices).
// ---------------------------------------------------------------------------

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Row-reduces in place; returns pivot columns.
std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && is_zero(m[p][c])) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rat inv = Rat(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c])) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

// Kernel basis of the linear map with the given rows (map: x -> M x).
std::vector<RatVec> kernel_basis(RatMat m, size_t cols) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<RatVec> out;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            size_t pc = static_cast<size_t>(pivots[r]);
            if (free < m[r].size()) v[pc] = -m[r][free];
        }
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Symbolic propagation: matrices of linear forms in the base-vertex unknowns.
// ---------------------------------------------------------------------------

using Form = std::vector<Series>;  // d coefficients

struct SymMat {
    int rows = 0, cols = 0, d = 0, trunc = 1;
    std::vector<Form> e;

    SymMat() = default;
    SymMat(int r, int c, int d_, int trunc_)
        : rows(r), cols(c), d(d_), trunc(trunc_),
          e(static_cast<size_t>(r * c), Form(static_cast<size_t>(d_), Series::zero(trunc_))) {}

    Form& at(int r, int c) { return e[static_cast<size_t>(r * cols + c)]; }
    const Form& at(int r, int c) const { return e[static_cast<size_t>(r * cols + c)]; }
};

void form_axpy(Form& acc, const Series& s, const Form& f) {
    if (s.is_known_zero() && s.watermark() == s.trunc()) return;
    for (size_t u = 0; u < acc.size(); ++u) {
        if (f[u].is_known_zero()) continue;
        acc[u].add_mul(s, f[u]);
    }
}

SymMat lmul(const SMat& X, const SymMat& P) {
    SymMat out(X.rows(), P.cols, P.d, P.trunc);
    for (int r = 0; r < X.rows(); ++r)
        for (int c = 0; c < P.cols; ++c) {
            Form& acc = out.at(r, c);
            for (int k = 0; k < X.cols(); ++k) form_axpy(acc, X.at(r, k), P.at(k, c));
        }
    return out;
}

SymMat rmul(const SymMat& P, const SMat& Y) {
    SymMat out(P.rows, Y.cols(), P.d, P.trunc);
    for (int r = 0; r < P.rows; ++r)
        for (int c = 0; c < Y.cols(); ++c) {
            Form& acc = out.at(r, c);
            for (int k = 0; k < P.cols; ++k) form_axpy(acc, Y.at(k, c), P.at(r, k));
        }
    return out;
}

void scale_sym(SymMat& P, const Series& s) {
    for (auto& form : P.e)
        for (auto& coef : form) coef = coef * s;
}

// ---------------------------------------------------------------------------
// The solution lattice of the commutation system, over the truncated centre.
// ---------------------------------------------------------------------------

struct Lattice {
    int d = 0, trunc = 1;
    std::vector<Form> cols;       // basis columns (coordinates in the unknowns)
    std::vector<int> pivot_row;   // after echelonization
    std::vector<int> pivot_val;
};

// Refines the lattice by the condition t^m | ell(phi).
void refine(Lattice& L, const Form& ell, int m) {
    if (m <= 0) return;
    std::vector<Series> a;
    a.reserve(static_cast<size_t>(L.d));
    for (int k = 0; k < L.d; ++k) {
        Series acc = Series::zero(L.trunc);
        for (int u = 0; u < L.d; ++u) {
            const Series& lu = ell[static_cast<size_t>(u)];
            const Series& bu = L.cols[static_cast<size_t>(k)][static_cast<size_t>(u)];
            if (lu.is_known_zero() || bu.is_known_zero()) continue;
            acc += lu * bu;
        }
        a.push_back(std::move(acc));
    }
    int pivot = -1, mu = m;
    for (int k = 0; k < L.d; ++k) {
        auto kv = a[static_cast<size_t>(k)].known_valuation();
        if (kv && *kv < mu) {
            mu = *kv;
            pivot = k;
        }
    }
    if (pivot < 0) {
        // Condition already holds on the lattice; make sure it is decidable.
        for (const auto& ak : a) ak.divisible_by_t_pow(m);
        return;
    }
    Series unit = a[static_cast<size_t>(pivot)].divide_by_t_pow(mu);
    Series uinv = unit.inverse();
    for (int k = 0; k < L.d; ++k) {
        if (k == pivot || a[static_cast<size_t>(k)].is_known_zero()) continue;
        Series f = a[static_cast<size_t>(k)].divide_by_t_pow(mu) * uinv;
        Form& ck = L.cols[static_cast<size_t>(k)];
        const Form& cp = L.cols[static_cast<size_t>(pivot)];
        for (int u = 0; u < L.d; ++u)
            ck[static_cast<size_t>(u)] -= f * cp[static_cast<size_t>(u)];
    }
    for (auto& entry : L.cols[static_cast<size_t>(pivot)]) entry = entry.shifted_up(m - mu);
}

// Column echelon form with valuation pivoting; pivot entries become exact
// monomials t^e. Demands that all pivots are certified well below the
// truncation (high-valuation columns mean the answer is a precision artifact).
void echelonize(Lattice& L) {
    L.pivot_row.assign(static_cast<size_t>(L.d), -1);
    L.pivot_val.assign(static_cast<size_t>(L.d), 0);
    std::vector<bool> row_used(static_cast<size_t>(L.d), false);
    for (int c = 0; c < L.d; ++c) {
        int best_col = -1, best_row = -1, best_val = 0;
        for (int k = c; k < L.d; ++k)
            for (int r = 0; r < L.d; ++r) {
                if (row_used[static_cast<size_t>(r)]) continue;
                auto kv = L.cols[static_cast<size_t>(k)][static_cast<size_t>(r)].known_valuation();
                if (!kv) continue;
                if (best_col < 0 || *kv < best_val ||
                    (*kv == best_val && (k < best_col || (k == best_col && r < best_row)))) {
                    best_col = k;
                    best_row = r;
                    best_val = *kv;
                }
            }
        if (best_col < 0 || best_val > L.trunc / 2)
            throw PrecisionExhausted("hom lattice basis not certified at this truncation");
        std::swap(L.cols[static_cast<size_t>(c)], L.cols[static_cast<size_t>(best_col)]);
        Form& col = L.cols[static_cast<size_t>(c)];
        Series unit = col[static_cast<size_t>(best_row)].divide_by_t_pow(best_val);
        Series uinv = unit.inverse();
        for (auto& entry : col) entry = entry * uinv;
        col[static_cast<size_t>(best_row)] = Series::monomial(Rat(1), best_val, L.trunc);
        for (int k = c + 1; k < L.d; ++k) {
            Series& top = L.cols[static_cast<size_t>(k)][static_cast<size_t>(best_row)];
            if (top.is_known_zero()) continue;
            Series f = top.divide_by_t_pow(best_val);
            Form& ck = L.cols[static_cast<size_t>(k)];
            for (int u = 0; u < L.d; ++u)
                ck[static_cast<size_t>(u)] -= f * col[static_cast<size_t>(u)];
        }
        row_used[static_cast<size_t>(best_row)] = true;
        L.pivot_row[static_cast<size_t>(c)] = best_row;
        L.pivot_val[static_cast<size_t>(c)] = best_val;
    }
}

// Coordinates of h (a vector in the unknowns) in the echelonized basis.
std::vector<Series> lattice_solve(const Lattice& L, Form h) {
    std::vector<Series> gamma(static_cast<size_t>(L.d), Series::zero(L.trunc));
    for (int c = 0; c < L.d; ++c) {
        int row = L.pivot_row[static_cast<size_t>(c)];
        Series g = h[static_cast<size_t>(row)].divide_by_t_pow(L.pivot_val[static_cast<size_t>(c)]);
        if (!g.is_known_zero()) {
            const Form& col = L.cols[static_cast<size_t>(c)];
            for (int u = 0; u < L.d; ++u)
                h[static_cast<size_t>(u)] -= g * col[static_cast<size_t>(u)];
        }
        gamma[static_cast<size_t>(c)] = std::move(g);
    }
    for (const auto& rest : h)
        if (!rest.is_known_zero()) throw Error("element does not lie in the hom lattice");
    return gamma;
}

// Unknown index of entry (r, c) of the base matrix (rows = rank of target).
inline int unknown_index(int r, int c, int ra) { return r * ra + c; }

Form matrix_to_form(const SMat& m) {
    Form f(static_cast<size_t>(m.rows() * m.cols()), Series::zero(m.trunc()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            f[static_cast<size_t>(unknown_index(r, c, m.cols()))] = m.at(r, c);
    return f;
}

SMat form_to_matrix(const Form& f, int rb, int ra, int trunc) {
    SMat m(rb, ra, trunc);
    for (int r = 0; r < rb; ++r)
        for (int c = 0; c < ra; ++c)
            m.at(r, c) = f[static_cast<size_t>(unknown_index(r, c, ra))];
    return m;
}

void check_same_quiver(const QuiverModule& A, const QuiverModule& B) {
    if (A.n != B.n || A.k != B.k || A.trunc != B.trunc)
        throw InputError("hom computation needs modules over the same quiver and truncation");
}

// Solves the commutation system x^B phi_{i-1} = phi_i x^A exactly; the result
// is a free basis of all homs, encoded by their base-vertex matrices.
Lattice hom_lattice(const QuiverModule& A, const QuiverModule& B) {
    check_same_quiver(A, B);
    int ra = A.rank, rb = B.rank, d = ra * rb, N = A.trunc;

    Lattice L;
    L.d = d;
    L.trunc = N;
    for (int k = 0; k < d; ++k) {
        Form col(static_cast<size_t>(d), Series::zero(N));
        col[static_cast<size_t>(k)] = Series::one(N);
        L.cols.push_back(std::move(col));
    }

    // psi = t^w phi_i as a symbolic matrix; integrality of phi_i at each step
    // is a batch of divisibility conditions on the unknowns.
    SymMat psi(rb, ra, d, N);
    for (int r = 0; r < rb; ++r)
        for (int c = 0; c < ra; ++c)
            psi.at(r, c)[static_cast<size_t>(unknown_index(r, c, ra))] = Series::one(N);
    int w = 0;
    for (int i = 1; i <= A.n; ++i) {
        const SMat& XA = A.x_at(i);
        const SMat& XB = B.x_at(i);
        Series det = XA.det();
        Valuation dv = det.valuation();
        if (dv.infinite) throw Error("edge map with zero determinant");
        Series unit = det.divide_by_t_pow(dv.value);
        psi = rmul(lmul(XB, psi), XA.adjugate());
        bool unit_is_one = unit.identical(Series::one(N));
        if (!unit_is_one) scale_sym(psi, unit.inverse());
        w += dv.value;
        for (const auto& form : psi.e) refine(L, form, w);
    }
    // Cycle closure: psi_n must equal t^w phi_0. Identically zero for genuine
    // modules; otherwise treat as congruences at the highest testable modulus.
    for (int r = 0; r < rb; ++r)
        for (int c = 0; c < ra; ++c) {
            Form diff = psi.at(r, c);
            int u = unknown_index(r, c, ra);
            diff[static_cast<size_t>(u)] -= Series::monomial(Rat(1), w, N);
            bool known_zero = std::all_of(diff.begin(), diff.end(),
                                          [](const Series& s) { return s.is_known_zero(); });
            if (!known_zero) refine(L, diff, N - 1);
        }
    echelonize(L);
    return L;
}

std::vector<SMat> lattice_generators(const Lattice& L, int rb, int ra) {
    std::vector<SMat> gens;
    for (const auto& col : L.cols) gens.push_back(form_to_matrix(col, rb, ra, L.trunc));
    return gens;
}

std::vector<int> sorted_pivot_vals(const Lattice& L) {
    std::vector<int> v = L.pivot_val;
    std::sort(v.begin(), v.end());
    return v;
}

HomBasis hom_basis_at(const QuiverModule& A, const QuiverModule& B) {
    Lattice L = hom_lattice(A, B);
    HomBasis out;
    out.free_rank = L.d;
    out.phi0 = lattice_generators(L, B.rank, A.rank);
    for (const auto& g : out.phi0) out.families.push_back(propagate_family(A, B, g));
    out.pivot_vals = sorted_pivot_vals(L);
    return out;
}

// ---------------------------------------------------------------------------
// End(sum of modules) mod t as a finite rational algebra.
// ---------------------------------------------------------------------------

struct EndData {
    std::vector<const QuiverModule*> mods;
    // lat[a][b] = Hom(M_a -> M_b); gens0[a][b] = its generators' base matrices.
    std::vector<std::vector<Lattice>> lat;
    std::vector<std::vector<std::vector<SMat>>> gens0;
    std::vector<std::vector<int>> offset;
    int dim = 0;
    FiniteAlgebra alg;
};

EndData end_data(const std::vector<const QuiverModule*>& mods) {
    EndData E;
    E.mods = mods;
    size_t p = mods.size();
    E.lat.resize(p);
    E.gens0.resize(p);
    E.offset.assign(p, std::vector<int>(p, 0));
    for (size_t a = 0; a < p; ++a)
        for (size_t b = 0; b < p; ++b) {
            Lattice L = hom_lattice(*mods[a], *mods[b]);
            E.offset[a][b] = E.dim;
            E.dim += L.d;
            E.gens0[a].push_back(lattice_generators(L, mods[b]->rank, mods[a]->rank));
            E.lat[a].push_back(std::move(L));
        }

    FiniteAlgebra& A = E.alg;
    A.dim = E.dim;
    A.mult.assign(static_cast<size_t>(E.dim),
                  std::vector<RatVec>(static_cast<size_t>(E.dim), RatVec(static_cast<size_t>(E.dim), Rat(0))));
    // Basis element index -> (a, b, local).
    struct Loc { size_t a, b; int local; };
    std::vector<Loc> where(static_cast<size_t>(E.dim));
    for (size_t a = 0; a < p; ++a)
        for (size_t b = 0; b < p; ++b)
            for (int l = 0; l < E.lat[a][b].d; ++l)
                where[static_cast<size_t>(E.offset[a][b] + l)] = Loc{a, b, l};

    int N = mods[0]->trunc;
    for (int i = 0; i < E.dim; ++i)
        for (int j = 0; j < E.dim; ++j) {
            const Loc& gi = where[static_cast<size_t>(i)];
            const Loc& gj = where[static_cast<size_t>(j)];
            // product g_i o g_j : apply g_j (a->b), then g_i (b->c).
            if (gi.a != gj.b) continue;
            SMat prod = E.gens0[gi.a][gi.b][static_cast<size_t>(gi.local)] *
                        E.gens0[gj.a][gj.b][static_cast<size_t>(gj.local)];
            std::vector<Series> coords =
                lattice_solve(E.lat[gj.a][gi.b], matrix_to_form(prod));
            for (int l = 0; l < static_cast<int>(coords.size()); ++l)
                A.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                      [static_cast<size_t>(E.offset[gj.a][gi.b] + l)] = coords[static_cast<size_t>(l)].coeff(0);
        }
    A.unit.assign(static_cast<size_t>(E.dim), Rat(0));
    for (size_t a = 0; a < p; ++a) {
        std::vector<Series> coords =
            lattice_solve(E.lat[a][a], matrix_to_form(SMat::identity(mods[a]->rank, N)));
        for (int l = 0; l < static_cast<int>(coords.size()); ++l)
            A.unit[static_cast<size_t>(E.offset[a][a] + l)] = coords[static_cast<size_t>(l)].coeff(0);
    }
    A.radical = radical_basis(A);
    A.radical_dim = static_cast<int>(A.radical.size());
    return E;
}

int ss_dim_at(const std::vector<const QuiverModule*>& mods) {
    EndData E = end_data(mods);
    return E.alg.ss_dim();
}

// Complement coordinates of A modulo its radical, for small algebras.
struct Quotient {
    RatMat to_mixed;      // inverse change of basis: x -> [radical coords | quotient coords]
    std::vector<RatVec> complement;  // representatives in A
    int jdim = 0, qdim = 0;
};

RatMat invert_rat(RatMat m) {
    size_t d = m.size();
    for (size_t i = 0; i < d; ++i) {
        m[i].resize(2 * d, Rat(0));
        m[i][d + i] = 1;
    }
    std::vector<int> piv = rref(m);
    if (piv.size() != d || static_cast<size_t>(piv.back()) >= d)
        throw Error("singular change of basis");
    RatMat inv(d, RatVec(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) inv[i][j] = m[i][d + j];
    return inv;
}

Quotient quotient_mod_radical(const FiniteAlgebra& A) {
    Quotient q;
    q.jdim = A.radical_dim;
    q.qdim = A.dim - A.radical_dim;
    size_t d = static_cast<size_t>(A.dim);
    // Columns: radical basis first, then greedily completed (unit first).
    RatMat cols;
    for (const auto& v : A.radical) cols.push_back(v);
    auto try_add = [&](const RatVec& v) {
        if (static_cast<int>(cols.size()) == A.dim) return;
        RatMat probe = cols;
        probe.push_back(v);
        RatMat m = probe;  // rows are vectors
        if (static_cast<int>(rref(m).size()) == static_cast<int>(probe.size())) {
            cols.push_back(v);
            q.complement.push_back(v);
        }
    };
    try_add(A.unit);
    for (size_t i = 0; i < d && static_cast<int>(cols.size()) < A.dim; ++i) {
        RatVec e(d, Rat(0));
        e[i] = 1;
        try_add(e);
    }
    if (static_cast<int>(cols.size()) != A.dim) throw Error("failed to complete radical basis");
    // Change of basis matrix C: columns = [radical | complement]; mixed
    // coordinates of x are C^{-1} x.
    RatMat C(d, RatVec(d, Rat(0)));
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < d; ++i) C[i][j] = cols[j][i];
    q.to_mixed = invert_rat(C);
    return q;
}

RatVec quotient_coords(const Quotient& q, const RatVec& x) {
    size_t d = x.size();
    RatVec out(static_cast<size_t>(q.qdim), Rat(0));
    for (int i = 0; i < q.qdim; ++i) {
        Rat acc(0);
        for (size_t j = 0; j < d; ++j)
            acc += q.to_mixed[static_cast<size_t>(q.jdim + i)][j] * x[j];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

// Rational idempotent of A lifted from a splitting of A / rad(A).
// Requires the semisimple quotient to be 2-dimensional (the case for
// decomposable rank-2 modules: two non-isomorphic rank-1 summands).
std::optional<RatVec> rational_idempotent(const FiniteAlgebra& A) {
    if (A.ss_dim() < 2) return std::nullopt;
    if (A.ss_dim() > 2)
        throw NotApplicable("semisimple quotient of dimension " + std::to_string(A.ss_dim()) +
                            "; no splitting rule implemented");
    Quotient q = quotient_mod_radical(A);
    const RatVec& one = q.complement[0];  // A.unit by construction
    const RatVec& w = q.complement[1];
    // In the quotient: w^2 = alpha * 1 + beta * w.
    RatVec w2 = A.mul(w, w);
    RatVec qw = quotient_coords(q, w);
    RatVec q1 = quotient_coords(q, one);
    RatVec qw2 = quotient_coords(q, w2);
    // Solve [q1 qw] * (alpha, beta)^T = qw2 (2x2).
    Rat det = q1[0] * qw[1] - q1[1] * qw[0];
    if (is_zero(det)) throw Error("degenerate quotient basis");
    Rat alpha = (qw2[0] * qw[1] - qw2[1] * qw[0]) / det;
    Rat beta = (q1[0] * qw2[1] - q1[1] * qw2[0]) / det;
    Rat disc = beta * beta + Rat(4) * alpha;
    auto root = rat_sqrt(disc);
    if (!root)
        throw NotApplicable("semisimple quotient is a quadratic field; no rational idempotent");
    if (is_zero(*root)) throw Error("semisimple quotient not semisimple");
    Rat b = Rat(1) / *root;
    Rat a = (Rat(1) - b * beta) / 2;
    RatVec e(static_cast<size_t>(A.dim), Rat(0));
    for (int i = 0; i < A.dim; ++i) e[static_cast<size_t>(i)] = a * one[static_cast<size_t>(i)] + b * w[static_cast<size_t>(i)];
    // Newton lift through the nilpotent radical: e <- 3e^2 - 2e^3.
    for (int it = 0; it < 8; ++it) {
        RatVec e2 = A.mul(e, e);
        if (e2 == e) break;
        RatVec e3 = A.mul(e2, e);
        for (size_t i = 0; i < e.size(); ++i) e[i] = 3 * e2[i] - 2 * e3[i];
    }
    if (A.mul(e, e) != e) throw Error("idempotent lift through the radical failed");
    bool zero = std::all_of(e.begin(), e.end(), [](const Rat& r) { return is_zero(r); });
    if (zero || e == A.unit) throw Error("idempotent lift degenerated to a trivial one");
    return e;
}

std::vector<SMat> lift_idempotent_family(const QuiverModule& M, const EndData& E,
                                         const RatVec& e_coords) {
    int N = M.trunc;
    SMat e0(M.rank, M.rank, N);
    const auto& gens = E.gens0[0][0];
    for (size_t k = 0; k < gens.size(); ++k)
        e0 = e0 + gens[k].scaled(e_coords[k]);
    // t-adic Newton: squares to itself to ever higher order, staying inside
    // the endomorphism lattice.
    for (int it = 0; it < 24; ++it) {
        SMat err = e0 * e0 - e0;
        if (err.is_known_zero()) break;
        SMat e2 = e0 * e0;
        e0 = e2.scaled(Rat(3)) - (e2 * e0).scaled(Rat(2));
    }
    if (!(e0 * e0 - e0).is_known_zero())
        throw PrecisionExhausted("idempotent did not stabilize at working precision");
    return propagate_family(M, M, e0);
}

bool is_indecomposable_at(const QuiverModule& M) {
    return ss_dim_at({&M}) == 1;
}

bool iso_at(const QuiverModule& M1, const QuiverModule& M2) {
    if (M1.rank != M2.rank) return false;
    bool i1 = is_indecomposable_at(M1);
    bool i2 = is_indecomposable_at(M2);
    if (i1 != i2) return false;
    if (i1) {
        // Krull-Schmidt: an extra matrix block appears iff the summands match.
        int ss_sum = ss_dim_at({&M1, &M2});
        return ss_sum > 2;
    }
    if (M1.rank != 2) throw NotApplicable("decomposable modules of rank > 2");
    EndData E1 = end_data({&M1});
    EndData E2 = end_data({&M2});
    auto e1 = rational_idempotent(E1.alg);
    auto e2 = rational_idempotent(E2.alg);
    if (!e1 || !e2) throw Error("decomposable module without splitting idempotent");
    auto rims1 = summand_rims(M1, lift_idempotent_family(M1, E1, *e1));
    auto rims2 = summand_rims(M2, lift_idempotent_family(M2, E2, *e2));
    auto norm = [](std::pair<Rim, Rim> p) {
        if (p.second < p.first) std::swap(p.first, p.second);
        return p;
    };
    auto a = norm(rims1), b = norm(rims2);
    return a.first == b.first && a.second == b.second;
}

} // namespace

// ---------------------------------------------------------------------------
// Public surface.
// ---------------------------------------------------------------------------

std::vector<Rat> FiniteAlgebra::mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
    RatVec out(static_cast<size_t>(dim), Rat(0));
    for (int i = 0; i < dim; ++i) {
        if (is_zero(a[static_cast<size_t>(i)])) continue;
        for (int j = 0; j < dim; ++j) {
            if (is_zero(b[static_cast<size_t>(j)])) continue;
            Rat f = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
            const RatVec& m = mult[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int k = 0; k < dim; ++k)
                if (!is_zero(m[static_cast<size_t>(k)])) out[static_cast<size_t>(k)] += f * m[static_cast<size_t>(k)];
        }
    }
    return out;
}

bool FiniteAlgebra::is_associative_on_basis() const {
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                RatVec ei(static_cast<size_t>(dim), Rat(0)), ej = ei, ek = ei;
                ei[static_cast<size_t>(i)] = 1;
                ej[static_cast<size_t>(j)] = 1;
                ek[static_cast<size_t>(k)] = 1;
                if (mul(mul(ei, ej), ek) != mul(ei, mul(ej, ek))) return false;
            }
    return true;
}

std::vector<std::vector<Rat>> radical_basis(const FiniteAlgebra& A) {
    // Left-multiplication matrices L_i; the radical is the kernel of the
    // trace form (x, y) -> tr(L_x L_y).
    int d = A.dim;
    std::vector<RatMat> L(static_cast<size_t>(d), RatMat(static_cast<size_t>(d), RatVec(static_cast<size_t>(d), Rat(0))));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            for (int m = 0; m < d; ++m)
                L[static_cast<size_t>(i)][static_cast<size_t>(m)][static_cast<size_t>(k)] =
                    A.mult[static_cast<size_t>(i)][static_cast<size_t>(k)][static_cast<size_t>(m)];
    RatMat gram(static_cast<size_t>(d), RatVec(static_cast<size_t>(d), Rat(0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Rat acc(0);
            for (int m = 0; m < d; ++m)
                for (int k = 0; k < d; ++k)
                    acc += L[static_cast<size_t>(i)][static_cast<size_t>(m)][static_cast<size_t>(k)] *
                           L[static_cast<size_t>(j)][static_cast<size_t>(k)][static_cast<size_t>(m)];
            gram[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
        }
    return kernel_basis(std::move(gram), static_cast<size_t>(d));
}

SMat transport_edge(const QuiverModule& A, const QuiverModule& B, const SMat& phi, int edge) {
    const SMat& XA = A.x_at(edge);
    Series det = XA.det();
    Valuation dv = det.valuation();
    if (dv.infinite) throw Error("edge map with zero determinant");
    SMat next = (B.x_at(edge) * phi * XA.adjugate()).divide_by_t_pow(dv.value);
    Series unit = det.divide_by_t_pow(dv.value);
    if (!unit.identical(Series::one(A.trunc))) next = next.scaled(unit.inverse());
    return next;
}

std::vector<SMat> propagate_family_from(const QuiverModule& A, const QuiverModule& B,
                                        const SMat& phi_base, int base_vertex) {
    check_same_quiver(A, B);
    int n = A.n;
    int base = ((base_vertex % n) + n) % n;
    std::vector<SMat> fam(static_cast<size_t>(n));
    fam[static_cast<size_t>(base)] = phi_base;
    SMat cur = phi_base;
    for (int s = 1; s <= n; ++s) {
        int edge = base + s;  // edge entering vertex base + s
        cur = transport_edge(A, B, cur, edge);
        int v = (base + s) % n;
        if (s < n) fam[static_cast<size_t>(v)] = cur;
        else if (!cur.agrees_within_watermark(phi_base))
            throw Error("family does not close up around the cycle");
    }
    return fam;
}

std::vector<SMat> propagate_family(const QuiverModule& A, const QuiverModule& B,
                                   const SMat& phi0) {
    return propagate_family_from(A, B, phi0, 0);
}

bool commutes(const QuiverModule& A, const QuiverModule& B, const std::vector<SMat>& fam) {
    for (int i = 1; i <= A.n; ++i) {
        const SMat& prev = fam[static_cast<size_t>((i - 1) % A.n)];
        const SMat& next = fam[static_cast<size_t>(i % A.n)];
        if (!(next * A.x_at(i)).agrees_within_watermark(B.x_at(i) * prev)) return false;
        if (!(prev * A.y_at(i)).agrees_within_watermark(B.y_at(i) * next)) return false;
    }
    return true;
}

HomBasis hom_basis(const QuiverModule& A, const QuiverModule& B, const OracleOptions& opts) {
    HomBasis base = hom_basis_at(A, B);
    if (opts.stability_check) {
        QuiverModule A4 = A.extended(4), B4 = B.extended(4);
        Lattice L4 = hom_lattice(A4, B4);
        if (L4.d != base.free_rank || sorted_pivot_vals(L4) != base.pivot_vals)
            throw PrecisionExhausted("hom basis not stable between N and N+4");
    }
    return base;
}

FiniteAlgebra end_mod_t(const QuiverModule& M, const OracleOptions& opts) {
    FiniteAlgebra A = end_data({&M}).alg;
    if (opts.stability_check) {
        QuiverModule M4 = M.extended(4);
        FiniteAlgebra A4 = end_data({&M4}).alg;
        if (A4.dim != A.dim || A4.radical_dim != A.radical_dim)
            throw PrecisionExhausted("End mod t not stable between N and N+4");
    }
    return A;
}

bool is_indecomposable(const QuiverModule& M, const OracleOptions& opts) {
    bool v = is_indecomposable_at(M);
    if (opts.stability_check) {
        QuiverModule M4 = M.extended(4);
        if (is_indecomposable_at(M4) != v)
            throw PrecisionExhausted("indecomposability verdict not stable between N and N+4");
    }
    return v;
}

std::optional<std::vector<SMat>> find_idempotent(const QuiverModule& M,
                                                 const OracleOptions& opts) {
    EndData E = end_data({&M});
    auto e = rational_idempotent(E.alg);
    if (!e) {
        if (opts.stability_check && ss_dim_at({&M}) != 1)
            throw Error("inconsistent semisimple dimension");
        return std::nullopt;
    }
    auto fam = lift_idempotent_family(M, E, *e);
    if (!commutes(M, M, fam)) throw Error("idempotent family fails commutation");
    return fam;
}

std::pair<Rim, Rim> summand_rims(const QuiverModule& M, const std::vector<SMat>& idem) {
    if (M.rank != 2) throw NotApplicable("summand extraction implemented for rank 2");
    int n = M.n, N = M.trunc;

    auto eigencolumn = [&](const SMat& e) {
        // Rank-1 idempotent: its column space is the eigenvalue-1 line; one of
        // the two diagonal entries is a unit.
        if (e.at(0, 0).is_unit()) return std::pair<Series, Series>{e.at(0, 0), e.at(1, 0)};
        if (e.at(1, 1).is_unit()) return std::pair<Series, Series>{e.at(0, 1), e.at(1, 1)};
        throw EigenlineAmbiguous("no unit diagonal entry in idempotent at working precision");
    };

    auto walk = [&](const std::vector<SMat>& fam) {
        std::vector<std::pair<Series, Series>> vec;
        vec.reserve(static_cast<size_t>(n));
        for (const auto& e : fam) vec.push_back(eigencolumn(e));
        std::vector<int> rim;
        for (int i = 1; i <= n; ++i) {
            const auto& src = vec[static_cast<size_t>((i - 1) % n)];
            const auto& dst = vec[static_cast<size_t>(i % n)];
            const SMat& X = M.x_at(i);
            Series w0 = X.at(0, 0) * src.first + X.at(0, 1) * src.second;
            Series w1 = X.at(1, 0) * src.first + X.at(1, 1) * src.second;
            // lambda from the unit component of the destination eigenvector.
            Series lambda = dst.first.is_unit() ? w0 * dst.first.inverse()
                                                : w1 * dst.second.inverse();
            if (!dst.first.is_unit() && !dst.second.is_unit())
                throw EigenlineAmbiguous("eigenvector has no unit component");
            Series check0 = lambda * dst.first, check1 = lambda * dst.second;
            if (!check0.agrees_up_to(w0, N / 2) || !check1.agrees_up_to(w1, N / 2))
                throw EigenlineAmbiguous("edge does not preserve the eigenline");
            Valuation lv = lambda.valuation();
            if (lv.infinite || lv.value > 1)
                throw EigenlineAmbiguous("edge action valuation out of range");
            if (lv.value == 0) rim.push_back(i);
        }
        return rim;
    };

    std::vector<SMat> co;
    co.reserve(idem.size());
    for (const auto& e : idem) co.push_back(SMat::identity(2, N) - e);
    std::vector<int> X = walk(idem), Y = walk(co);
    if (static_cast<int>(X.size()) != M.k || static_cast<int>(Y.size()) != M.k)
        throw Error("summand rims have wrong size");
    return {Rim(n, X), Rim(n, Y)};
}

bool iso_oracle(const QuiverModule& M1, const QuiverModule& M2, const OracleOptions& opts) {
    check_same_quiver(M1, M2);
    bool v = iso_at(M1, M2);
    if (opts.stability_check) {
        QuiverModule A4 = M1.extended(4), B4 = M2.extended(4);
        if (iso_at(A4, B4) != v)
            throw PrecisionExhausted("isomorphism verdict not stable between N and N+4");
    }
    return v;
}

OracleReport oracle_report(const QuiverModule& M, const OracleOptions& opts) {
    OracleReport r;
    EndData E = end_data({&M});
    r.end_rank = E.alg.dim;
    r.end_mod_t_dim = E.alg.dim;
    r.radical_dim = E.alg.radical_dim;
    r.ss_quotient_dim = E.alg.ss_dim();
    r.indecomposable = (r.ss_quotient_dim == 1);
    if (opts.stability_check) {
        QuiverModule M4 = M.extended(4);
        EndData E4 = end_data({&M4});
        if (E4.alg.dim != E.alg.dim || E4.alg.radical_dim != E.alg.radical_dim)
            throw PrecisionExhausted("oracle report not stable between N and N+4");
    }
    if (!r.indecomposable && M.rank == 2) {
        auto e = rational_idempotent(E.alg);
        if (e) r.idempotent = lift_idempotent_family(M, E, *e);
    }
    return r;
}

std::string oracle_report_json(const OracleReport& r) {
    nlohmann::json j;
    j["end_rank"] = r.end_rank;
    j["end_mod_t_dim"] = r.end_mod_t_dim;
    j["radical_dim"] = r.radical_dim;
    j["ss_quotient_dim"] = r.ss_quotient_dim;
    j["verdict"] = r.indecomposable ? "indecomposable" : "decomposable";
    if (r.idempotent) {
        std::vector<std::vector<std::string>> fam;
        for (const auto& m : *r.idempotent) {
            std::vector<std::string> entries;
            for (int a = 0; a < m.rows(); ++a)
                for (int b = 0; b < m.cols(); ++b) entries.push_back(m.at(a, b).str());
            fam.push_back(std::move(entries));
        }
        j["idempotent"] = fam;
    }
    return j.dump(2);
}

} // namespace cmod
