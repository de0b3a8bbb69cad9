#include "cmod/module.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace cmod {

QuiverModule QuiverModule::extended(int extra) const {
    QuiverModule out;
    out.n = n;
    out.k = k;
    out.trunc = trunc + extra;
    out.rank = rank;
    auto grow = [&](const SMat& m) {
        SMat g(m.rows(), m.cols(), out.trunc);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) {
                const Series& s = m.at(r, c);
                if (s.watermark() != s.trunc())
                    throw PrecisionExhausted("cannot extend a module whose entries are not exact");
                std::vector<Rat> coeffs = s.coeffs();
                coeffs.resize(static_cast<size_t>(out.trunc), Rat(0));
                g.at(r, c) = Series(std::move(coeffs), out.trunc);
            }
        return g;
    };
    for (const auto& m : x) out.x.push_back(grow(m));
    for (const auto& m : y) out.y.push_back(grow(m));
    return out;
}

QuiverModule direct_sum(const QuiverModule& a, const QuiverModule& b) {
    if (a.n != b.n || a.k != b.k || a.trunc != b.trunc)
        throw InputError("direct sum of modules over different rings");
    QuiverModule out;
    out.n = a.n;
    out.k = a.k;
    out.trunc = a.trunc;
    out.rank = a.rank + b.rank;
    for (int i = 0; i < a.n; ++i) {
        out.x.push_back(SMat::block_diag(a.x[static_cast<size_t>(i)], b.x[static_cast<size_t>(i)]));
        out.y.push_back(SMat::block_diag(a.y[static_cast<size_t>(i)], b.y[static_cast<size_t>(i)]));
    }
    return out;
}

Rank1Module build_rank1(const Rim& I, int trunc) {
    int N = trunc > 0 ? trunc : default_trunc(I.n());
    Rank1Module m{I, N, {}, {}};
    for (int i = 1; i <= I.n(); ++i) {
        bool in = I.contains(i);
        m.x_scalars.push_back(in ? Series::one(N) : Series::t(N));
        m.y_scalars.push_back(in ? Series::t(N) : Series::one(N));
    }
    return m;
}

QuiverModule Rank1Module::rep() const {
    QuiverModule out;
    out.n = rim.n();
    out.k = rim.k();
    out.trunc = trunc;
    out.rank = 1;
    for (int i = 0; i < out.n; ++i) {
        out.x.push_back(SMat::scalar(1, x_scalars[static_cast<size_t>(i)]));
        out.y.push_back(SMat::scalar(1, y_scalars[static_cast<size_t>(i)]));
    }
    return out;
}

QuiverModule Rank2Module::rep() const {
    QuiverModule out;
    out.n = n();
    out.k = k();
    out.trunc = trunc;
    out.rank = 2;
    out.x = x;
    out.y = y;
    return out;
}

namespace {

Rank2Module assemble_M(const Rim& I, const Rim& J, const CoefficientTuple& b, int N) {
    if (I.n() != J.n() || I.k() != J.k()) throw InputError("profile rims must share (k, n)");
    if (I == J) throw DegenerateProfile("rank-2 construction needs I != J");
    if (static_cast<int>(b.size()) != I.n())
        throw InputError("coefficient tuple must assign all n edges");
    Rank2Module m{I, J, N, b, {}, {}};
    for (int i = 1; i <= I.n(); ++i) {
        const Series& bi = b[static_cast<size_t>(i - 1)];
        bool inI = I.contains(i), inJ = J.contains(i);
        if (inI == inJ && !bi.is_known_zero())
            throw ProfileMismatch("edge " + std::to_string(i) +
                                  " is parallel in the profile; its coefficient must be 0");
        SMat xm(2, 2, N), ym(2, 2, N);
        // (1,1) carries the submodule layer L_J, (2,2) the quotient layer L_I.
        xm.at(0, 0) = inJ ? Series::one(N) : Series::t(N);
        xm.at(1, 1) = inI ? Series::one(N) : Series::t(N);
        xm.at(0, 1) = bi;
        ym.at(0, 0) = inJ ? Series::t(N) : Series::one(N);
        ym.at(1, 1) = inI ? Series::t(N) : Series::one(N);
        ym.at(0, 1) = -bi;
        m.x.push_back(xm);
        m.y.push_back(ym);
    }
    return m;
}

} // namespace

SMat cycle_product(const QuiverModule& m) {
    SMat acc = SMat::identity(m.rank, m.trunc);
    for (int i = 1; i <= m.n; ++i) acc = m.x_at(i) * acc;
    return acc;
}

Rank2Module build_M_unchecked(const Rim& I, const Rim& J, const CoefficientTuple& b, int trunc) {
    int N = trunc > 0 ? trunc : default_trunc(I.n());
    return assemble_M(I, J, b, N);
}

Rank2Module build_M(const Rim& I, const Rim& J, const CoefficientTuple& b, int trunc) {
    Rank2Module m = build_M_unchecked(I, J, b, trunc);
    // x y = y x = t id holds entry-wise by the layout; the one genuine
    // condition is the vanishing off-diagonal of the cycle product.
    QuiverModule rep = m.rep();
    SMat cyc_prod = cycle_product(rep);
    if (!cyc_prod.at(0, 1).is_known_zero())
        throw ConstraintViolated("cycle constraint violated: z = " + cyc_prod.at(0, 1).str());
    SMat target = SMat::scalar(2, Series::monomial(Rat(1), rep.n - rep.k, rep.trunc));
    if (!cyc_prod.agrees_within_watermark(target))
        throw ConstraintViolated("cycle product is not t^{n-k} id");
    return m;
}

std::vector<Series> constraint_weights(const Rim& I, const Rim& J, int trunc) {
    int N = trunc > 0 ? trunc : default_trunc(I.n());
    int n = I.n();
    // weight[p] = (product of the submodule-layer scalars after p) times
    // (product of the quotient-layer scalars before p); read off as the
    // off-diagonal of the cycle product with b_p = 1 and all others zero.
    std::vector<Series> weights;
    weights.reserve(static_cast<size_t>(n));
    Rank1Module LI = build_rank1(I, N), LJ = build_rank1(J, N);
    std::vector<Series> before(static_cast<size_t>(n) + 1, Series::one(N));
    std::vector<Series> after(static_cast<size_t>(n) + 1, Series::one(N));
    for (int p = 1; p <= n; ++p)
        before[static_cast<size_t>(p)] =
            before[static_cast<size_t>(p - 1)] * LI.x_scalars[static_cast<size_t>(p - 1)];
    for (int p = n; p >= 1; --p)
        after[static_cast<size_t>(p - 1)] =
            after[static_cast<size_t>(p)] * LJ.x_scalars[static_cast<size_t>(p - 1)];
    for (int p = 1; p <= n; ++p)
        weights.push_back(after[static_cast<size_t>(p)] * before[static_cast<size_t>(p - 1)]);
    return weights;
}

CoefficientTuple solve_constraint(const Rim& I, const Rim& J, CoefficientTuple partial,
                                  int free_edge, int trunc) {
    int N = trunc > 0 ? trunc : default_trunc(I.n());
    int n = I.n();
    if (free_edge < 1 || free_edge > n) throw InputError("free edge out of range");
    if (I.contains(free_edge) == J.contains(free_edge))
        throw ProfileMismatch("free edge must lie in the symmetric difference of I and J");
    if (static_cast<int>(partial.size()) != n)
        throw InputError("partial tuple must have length n");

    std::vector<Series> weights = constraint_weights(I, J, N);
    Series z0 = Series::zero(N);
    int deg_bound = 0;
    for (int p = 1; p <= n; ++p) {
        if (p == free_edge) continue;
        const Series& bp = partial[static_cast<size_t>(p - 1)];
        if (bp.is_known_zero()) continue;
        z0 += weights[static_cast<size_t>(p - 1)] * bp;
        deg_bound = std::max(deg_bound, weights[static_cast<size_t>(p - 1)].stored_degree() +
                                            bp.stored_degree());
    }
    const Series& w_free = weights[static_cast<size_t>(free_edge - 1)];
    Valuation wv = w_free.valuation();
    if (wv.infinite) throw Error("free edge does not enter the cycle constraint");
    Series unit = w_free.divide_by_t_pow(wv.value);
    // z0 + w_free * b_free = 0  =>  b_free = -(z0 / t^w) * unit^{-1}
    Series solved = -(z0.divide_by_t_pow(wv.value) * unit.inverse());
    bool monomial_weight = unit.identical(Series::one(N));
    bool poly_inputs = true;
    for (const auto& s : partial) poly_inputs = poly_inputs && s.watermark() == s.trunc();
    if (monomial_weight && poly_inputs && deg_bound < N) {
        // the quotient is the exactly shifted polynomial; its tail is certain
        std::vector<Rat> coeffs = solved.coeffs();
        solved = Series(std::move(coeffs), N);
    } else if (solved.stored_degree() >= solved.watermark()) {
        throw PrecisionExhausted("solved coefficient not certified at this truncation");
    }
    partial[static_cast<size_t>(free_edge - 1)] = solved;
    return partial;
}

bool verify_relations(const QuiverModule& m) {
    if (m.n - m.k >= m.trunc)
        throw PrecisionExhausted("t^{n-k} is not representable at truncation " +
                                 std::to_string(m.trunc));
    SMat t_id = SMat::scalar(m.rank, Series::t(m.trunc));
    for (int i = 1; i <= m.n; ++i) {
        if (!(m.x_at(i) * m.y_at(i)).agrees_within_watermark(t_id)) return false;
        if (!(m.y_at(i) * m.x_at(i)).agrees_within_watermark(t_id)) return false;
    }
    SMat target = SMat::scalar(m.rank, Series::monomial(Rat(1), m.n - m.k, m.trunc));
    return cycle_product(m).agrees_within_watermark(target);
}

std::vector<int> canonical_hom(const Rim& I, const Rim& J) {
    if (I.n() != J.n() || I.k() != J.k()) throw InputError("rims must share (k, n)");
    int n = I.n();
    // Commutation forces m_i - m_{i-1} = [i in I] - [i in J]; shift so min = 0.
    std::vector<int> m(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i)
        m[static_cast<size_t>(i)] = m[static_cast<size_t>(i - 1)] +
                                    (I.contains(i) ? 1 : 0) - (J.contains(i) ? 1 : 0);
    int lo = *std::min_element(m.begin(), m.end());
    std::vector<int> out(static_cast<size_t>(n));
    out[0] = m[static_cast<size_t>(n)] - lo;  // vertex 0 = vertex n
    for (int v = 1; v < n; ++v) out[static_cast<size_t>(v)] = m[static_cast<size_t>(v)] - lo;
    return out;
}

CoefficientTuple zero_tuple(int n, int trunc) {
    return CoefficientTuple(static_cast<size_t>(n), Series::zero(trunc));
}

CoefficientTuple tuple_from_ints(const std::vector<long>& vals, int trunc) {
    CoefficientTuple out;
    out.reserve(vals.size());
    for (long v : vals) out.push_back(Series::constant(Rat(v), trunc));
    return out;
}

CoefficientTuple tuple_from_literals(const std::string& csv, int n, int trunc) {
    CoefficientTuple out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(Series::parse(tok, trunc));
    if (static_cast<int>(out.size()) != n)
        throw InputError("expected " + std::to_string(n) + " coefficients, got " +
                         std::to_string(out.size()));
    return out;
}

std::string tuple_str(const CoefficientTuple& b) {
    std::ostringstream os;
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) os << ",";
        os << b[i].str();
    }
    return os.str();
}

std::string rank2_to_json(const Rank2Module& m) {
    nlohmann::json j;
    j["n"] = m.n();
    j["k"] = m.k();
    j["trunc_order"] = m.trunc;
    j["profile"] = m.profile_str();
    std::vector<std::string> lits;
    for (const auto& s : m.b) lits.push_back(s.str());
    j["b"] = lits;
    return j.dump(2);
}

Rank2Module rank2_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    int trunc = j.at("trunc_order").get<int>();
    auto [I, J] = parse_profile(j.at("profile").get<std::string>(), n);
    if (I.k() != k) throw InputError("profile does not match k");
    CoefficientTuple b;
    for (const auto& lit : j.at("b")) b.push_back(Series::parse(lit.get<std::string>(), trunc));
    if (static_cast<int>(b.size()) != n) throw InputError("b tuple has wrong length");
    return build_M(I, J, b, trunc);
}

} // namespace cmod
