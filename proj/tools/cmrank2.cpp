// Command-line front end: construct, classify, compare, enumerate and
// cross-check rank-2 modules over the boundary algebra.
//
// Exit codes: 0 success/agreement, 1 usage or input error,
//             2 criterion/oracle disagreement, 3 precision exhausted.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cmod/oracle.hpp"
#include "cmod/structure.hpp"

using namespace cmod;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDisagree = 2;
constexpr int kExitPrecision = 3;

int env_trunc_override() {
    const char* v = std::getenv("CM_TRUNC_ORDER");
    if (!v) return 0;
    return std::atoi(v);
}

int resolve_trunc(int flag_value, int n) {
    int t = flag_value > 0 ? flag_value : env_trunc_override();
    if (t == 0) t = default_trunc(n);
    if (t < 2 * n) throw InputError("truncation order must be at least 2n");
    return t;
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Indecomposable: return "Indecomposable";
        case Verdict::DirectSum: return "DirectSum";
        default: return "NotApplicable";
    }
}

json report_to_json_obj(const StructureReport& r) { return json::parse(report_json(r)); }

struct ClassifyArgs {
    int k = 0, n = 0, trunc = 0;
    std::string profile, b, format = "text", oracle = "on";
};

Rank2Module build_from_args(const ClassifyArgs& a, const std::string& tuple_csv) {
    auto [I, J] = parse_profile(a.profile, a.n);
    if (I.k() != a.k || J.k() != a.k) throw InputError("profile does not match --k");
    int N = resolve_trunc(a.trunc, a.n);
    return build_M(I, J, tuple_from_literals(tuple_csv, a.n, N), N);
}

// Rotation taking the first branching point to position 1, so that reports
// about rotated copies of one profile are directly comparable.
std::pair<std::string, int> canonical_profile(const Rim& I, const Rim& J) {
    ProfileGeometry g = profile_geometry(I, J);
    int rot = cyc(1 - g.branch_i[0], I.n()) % I.n();
    return {I.rotated(rot).str() + "|" + J.rotated(rot).str(), rot};
}

int run_classify(const ClassifyArgs& a, bool oracle_only) {
    Rank2Module M = build_from_args(a, a.b);
    std::string oracle_mode = oracle_only ? "only" : a.oracle;

    std::optional<StructureReport> rep;
    if (oracle_mode != "only") rep = classify(M);

    std::optional<OracleReport> orep;
    if (oracle_mode != "off") orep = oracle_report(M.rep());

    bool agree = true;
    if (rep && orep && rep->verdict != Verdict::NotApplicable)
        agree = (rep->verdict == Verdict::Indecomposable) == orep->indecomposable;

    auto [canon, rot] = canonical_profile(M.I, M.J);
    if (a.format == "json") {
        json out;
        out["profile"] = M.profile_str();
        out["canonical_profile"] = canon;
        out["rotation"] = rot;
        out["b"] = tuple_str(M.b);
        out["trunc_order"] = M.trunc;
        if (rep) out["report"] = report_to_json_obj(*rep);
        if (orep) {
            out["oracle"] = json::parse(oracle_report_json(*orep));
            if (rep && rep->verdict != Verdict::NotApplicable)
                out["agreement"] = agree ? "AGREE" : "DISAGREE";
        }
        std::cout << out.dump(2) << "\n";
    } else {
        if (rot != 0)
            std::cout << "profile:  " << M.profile_str() << "  (canonical " << canon
                      << ", rotation " << rot << ")\n";
        if (rep) {
            std::cout << "verdict:  " << verdict_str(rep->verdict) << "\n";
            std::cout << "case:     " << rep->case_tag << "\n";
            std::cout << "iso key:  " << rep->iso_key << "\n";
            if (rep->s_vector) {
                std::cout << "s vector: ";
                for (size_t i = 0; i < rep->s_vector->size(); ++i)
                    std::cout << (i ? "," : "") << (*rep->s_vector)[i];
                std::cout << "\n";
            }
            if (rep->summands)
                std::cout << "summands: " << rep->summands->first.str() << " + "
                          << rep->summands->second.str() << "\n";
            if (!rep->note.empty()) std::cout << "note:     " << rep->note << "\n";
        }
        if (orep) {
            std::cout << "oracle:   " << (orep->indecomposable ? "indecomposable" : "decomposable")
                      << "  (end rank " << orep->end_rank << ", radical " << orep->radical_dim
                      << ", semisimple " << orep->ss_quotient_dim << ")\n";
            if (rep && rep->verdict != Verdict::NotApplicable)
                std::cout << (agree ? "AGREE" : "DISAGREE") << "\n";
        }
    }
    return agree ? kExitOk : kExitDisagree;
}

int run_iso(const ClassifyArgs& a, const std::string& c_csv) {
    Rank2Module M1 = build_from_args(a, a.b);
    Rank2Module M2 = build_from_args(a, c_csv);
    std::optional<IsoResult> result;
    std::string how;
    try {
        result = build_iso(M1, M2);
        how = "criterion";
    } catch (const NotApplicable&) {
        how = "oracle";
    }
    bool iso;
    if (result && result->outcome != IsoOutcome::NotApplicable) {
        iso = result->outcome == IsoOutcome::Isomorphic;
    } else {
        iso = iso_oracle(M1.rep(), M2.rep());
        how = "oracle";
    }
    bool agree = true;
    if (a.oracle == "on" && how == "criterion") {
        bool o = iso_oracle(M1.rep(), M2.rep());
        agree = (o == iso);
    }
    if (a.format == "json") {
        json out;
        out["isomorphic"] = iso;
        out["decided_by"] = how;
        if (result && result->outcome == IsoOutcome::Isomorphic && !result->family.empty()) {
            std::vector<std::vector<std::string>> fam;
            for (const auto& m : result->family) {
                std::vector<std::string> entries;
                for (int r = 0; r < m.rows(); ++r)
                    for (int c = 0; c < m.cols(); ++c) entries.push_back(m.at(r, c).str());
                fam.push_back(std::move(entries));
            }
            out["family"] = fam;
        }
        if (a.oracle == "on" && how == "criterion")
            out["agreement"] = agree ? "AGREE" : "DISAGREE";
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (iso ? "ISO" : "NOT ISO") << " (decided by " << how << ")\n";
        if (result && result->outcome == IsoOutcome::Isomorphic && !result->family.empty()) {
            const SMat& phi0 = result->family[0];
            std::cout << "phi_0 = [[" << phi0.at(0, 0).str() << ", " << phi0.at(0, 1).str()
                      << "], [" << phi0.at(1, 0).str() << ", " << phi0.at(1, 1).str() << "]]\n";
        }
        if (a.oracle == "on" && how == "criterion")
            std::cout << (agree ? "AGREE" : "DISAGREE") << "\n";
    }
    return agree ? kExitOk : kExitDisagree;
}

// ---------------------------------------------------------------------------
// Enumeration.
// ---------------------------------------------------------------------------

struct SweepRow {
    std::string tuple;
    std::string verdict;
    std::string key;
    std::string summands;
    bool oracle_checked = false;
    bool oracle_agrees = true;
};

struct SweepResult {
    std::string profile;
    std::vector<SweepRow> rows;
    std::map<std::string, long> verdict_counts;
    std::map<std::string, long> indec_keys;
    long disagreements = 0;
    std::optional<long> expected_classes;
};

std::vector<std::pair<Rim, Rim>> profile_orbits(int k, int n) {
    std::vector<int> idx(static_cast<size_t>(k));
    std::vector<std::vector<int>> subsets;
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            subsets.push_back(idx);
            return;
        }
        for (int v = start; v <= n; ++v) {
            idx[static_cast<size_t>(depth)] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(1, 0);
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    std::vector<std::pair<Rim, Rim>> orbits;
    for (const auto& a : subsets)
        for (const auto& b : subsets) {
            if (a == b) continue;
            Rim I(n, a), J(n, b);
            std::pair<std::vector<int>, std::vector<int>> canon{I.elements(), J.elements()};
            for (int s = 0; s < n; ++s) {
                Rim Ir = I.rotated(s), Jr = J.rotated(s);
                std::pair<std::vector<int>, std::vector<int>> cand{Ir.elements(), Jr.elements()};
                if (cand < canon) canon = cand;
            }
            if (seen.count(canon)) continue;
            seen.insert(canon);
            if (profile_geometry(I, J).r1 >= 3)
                orbits.emplace_back(Rim(n, canon.first), Rim(n, canon.second));
        }
    std::sort(orbits.begin(), orbits.end(), [](const auto& x, const auto& y) {
        return std::make_pair(x.first.elements(), x.second.elements()) <
               std::make_pair(y.first.elements(), y.second.elements());
    });
    return orbits;
}

SweepResult sweep_profile(const Rim& I, const Rim& J, int range, long limit, bool oracle_on,
                          bool in_range_only, long sample, unsigned long seed, int threads,
                          int trunc) {
    SweepResult out;
    out.profile = I.str() + "|" + J.str();
    ProfileGeometry g = profile_geometry(I, J);
    int N = trunc > 0 ? trunc : default_trunc(I.n());

    std::vector<int> free_edges;  // swept positions; the last branch edge is solved
    int solved_edge = g.branch_i.back();
    for (int p = 1; p <= I.n(); ++p)
        if (I.contains(p) != J.contains(p) && p != solved_edge) free_edges.push_back(p);
    std::vector<Series> weights = constraint_weights(I, J, N);
    const Series& w_free = weights[static_cast<size_t>(solved_edge - 1)];
    int w_val = w_free.valuation().value;

    int m = static_cast<int>(free_edges.size());
    int base = 2 * range + 1;
    double total_d = std::pow(static_cast<double>(base), m);
    std::vector<std::vector<long>> assignments;
    if (sample > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> dist(-range, range);
        for (long s = 0; s < sample; ++s) {
            std::vector<long> a(static_cast<size_t>(m));
            for (auto& v : a) v = dist(rng);
            assignments.push_back(std::move(a));
        }
        std::sort(assignments.begin(), assignments.end());
        assignments.erase(std::unique(assignments.begin(), assignments.end()),
                          assignments.end());
    } else {
        if (total_d > static_cast<double>(limit))
            throw InputError("sweep of " + std::to_string(static_cast<long long>(total_d)) +
                             " tuples exceeds --limit " + std::to_string(limit) +
                             "; raise the limit or use --sample");
        long total = 1;
        for (int i = 0; i < m; ++i) total *= base;
        for (long code = 0; code < total; ++code) {
            std::vector<long> a(static_cast<size_t>(m));
            long c = code;
            for (int i = 0; i < m; ++i) {
                a[static_cast<size_t>(i)] = c % base - range;
                c /= base;
            }
            assignments.push_back(std::move(a));
        }
    }

    auto classify_one = [&](const std::vector<long>& a) -> std::optional<SweepRow> {
        // z(b) is linear in the coefficients with precomputed monomial weights
        Series z0 = Series::zero(N);
        for (int i = 0; i < m; ++i) {
            long v = a[static_cast<size_t>(i)];
            if (v == 0) continue;
            z0 += weights[static_cast<size_t>(free_edges[static_cast<size_t>(i)] - 1)]
                      .scaled(Rat(v));
        }
        Series solved_raw = -(z0.divide_by_t_pow(w_val));
        std::vector<Rat> coeffs = solved_raw.coeffs();
        Series solved(std::move(coeffs), N);
        if (in_range_only) {
            if (solved.stored_degree() > 0) return std::nullopt;
            Rat c0 = solved.coeff(0);
            if (c0.get_den() != 1) return std::nullopt;
            if (abs(c0.get_num()) > range) return std::nullopt;
        }
        CoefficientTuple b = zero_tuple(I.n(), N);
        for (int i = 0; i < m; ++i)
            b[static_cast<size_t>(free_edges[static_cast<size_t>(i)] - 1)] =
                Series::constant(Rat(a[static_cast<size_t>(i)]), N);
        b[static_cast<size_t>(solved_edge - 1)] = solved;
        Rank2Module M = build_M(I, J, b, N);
        StructureReport rep = classify(M, false);
        SweepRow row;
        row.tuple = tuple_str(b);
        row.verdict = verdict_str(rep.verdict);
        row.key = rep.iso_key;
        if (rep.summands)
            row.summands = rep.summands->first.str() + "+" + rep.summands->second.str();
        if (oracle_on && rep.verdict != Verdict::NotApplicable) {
            row.oracle_checked = true;
            bool o = is_indecomposable(M.rep());
            row.oracle_agrees = (o == (rep.verdict == Verdict::Indecomposable));
        }
        return row;
    };

    size_t count = assignments.size();
    std::vector<std::optional<SweepRow>> rows(count);
    int workers = std::max(1, threads);
    if (workers == 1) {
        for (size_t i = 0; i < count; ++i) rows[i] = classify_one(assignments[i]);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<size_t> next{0};
        for (int w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, [&]() {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= count) break;
                    rows[i] = classify_one(assignments[i]);
                }
            }));
        for (auto& f : futs) f.get();
    }
    for (auto& r : rows) {
        if (!r) continue;
        out.verdict_counts[r->verdict]++;
        if (r->verdict == "Indecomposable") out.indec_keys[r->key]++;
        if (r->oracle_checked && !r->oracle_agrees) out.disagreements++;
        out.rows.push_back(std::move(*r));
    }
    if (g.r1 == 3 && g.squared())
        out.expected_classes =
            count_indecomposables(g.box_sizes[0], g.box_sizes[1], g.box_sizes[2]);
    return out;
}

int run_enumerate(int k, int n, const std::string& profile, int range, long limit,
                  const std::string& oracle, bool in_range_only, long sample,
                  unsigned long seed, int threads, int trunc, const std::string& format) {
    std::vector<std::pair<Rim, Rim>> profiles;
    if (!profile.empty()) {
        auto [I, J] = parse_profile(profile, n);
        profiles.emplace_back(I, J);
    } else {
        profiles = profile_orbits(k, n);
    }
    bool oracle_on = (oracle == "on" || oracle == "only");
    long total_disagreements = 0;
    json summary = json::array();
    for (const auto& [I, J] : profiles) {
        SweepResult res =
            sweep_profile(I, J, range, limit, oracle_on, in_range_only, sample, seed, threads,
                          trunc > 0 ? resolve_trunc(trunc, n) : 0);
        total_disagreements += res.disagreements;
        if (format == "csv") {
            for (const auto& row : res.rows)
                std::cout << res.profile << ";" << row.tuple << ";" << row.verdict << ";"
                          << row.key << ";" << row.summands << "\n";
        }
        json p;
        p["profile"] = res.profile;
        p["tuples"] = res.rows.size();
        p["verdicts"] = res.verdict_counts;
        p["indecomposable_classes"] = res.indec_keys.size();
        json keys = json::array();
        for (const auto& [key, cnt] : res.indec_keys) keys.push_back({{"key", key}, {"count", cnt}});
        p["keys"] = keys;
        if (res.expected_classes) p["expected_classes"] = *res.expected_classes;
        if (oracle_on) p["oracle_disagreements"] = res.disagreements;
        summary.push_back(p);
        if (format != "csv" && format != "json") {
            std::cout << res.profile << ": " << res.rows.size() << " tuples, "
                      << res.indec_keys.size() << " indecomposable classes";
            if (res.expected_classes) std::cout << " (expected " << *res.expected_classes << ")";
            if (oracle_on) std::cout << ", disagreements " << res.disagreements;
            std::cout << "\n";
        }
    }
    if (format == "json") std::cout << summary.dump(2) << "\n";
    return total_disagreements == 0 ? kExitOk : kExitDisagree;
}

int run_count(const std::string& sizes, const std::string& profile, int n) {
    if (!sizes.empty()) {
        std::istringstream is(sizes);
        std::string tok;
        std::vector<int> l;
        while (std::getline(is, tok, ',')) l.push_back(std::stoi(tok));
        if (l.size() != 3) throw InputError("--sizes needs exactly three box sizes");
        std::cout << count_indecomposables(l[0], l[1], l[2]) << "\n";
        return kExitOk;
    }
    auto [I, J] = parse_profile(profile, n);
    ProfileGeometry g = profile_geometry(I, J);
    if (g.r1 != 3 || !g.squared())
        throw InputError("counting needs a profile with three squared boxes");
    std::cout << count_indecomposables(g.box_sizes[0], g.box_sizes[1], g.box_sizes[2]) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Regression suite over the worked examples.
// ---------------------------------------------------------------------------

int run_paper_suite() {
    struct Check {
        std::string name;
        std::function<bool()> fn;
    };
    auto rim6I = Rim(6, {1, 3, 5});
    auto rim6J = Rim(6, {2, 4, 6});
    auto rim8I = Rim(8, {1, 3, 5, 7});
    auto rim8J = Rim(8, {2, 4, 6, 8});
    auto rim10I = Rim(10, {1, 2, 5, 6, 8});
    auto rim10J = Rim(10, {3, 4, 7, 9, 10});

    auto m36 = [&](std::vector<long> b) {
        return build_M(rim6I, rim6J, tuple_from_ints(std::move(b), 24), 24);
    };
    auto m48 = [&](std::vector<long> b) {
        return build_M(rim8I, rim8J, tuple_from_ints(std::move(b), 32), 32);
    };
    auto m510 = [&](const std::string& csv, int N) {
        return build_M(rim10I, rim10J, tuple_from_literals(csv, 10, N), N);
    };

    std::vector<Check> checks = {
        {"rank1 scalars of 1,4,5 in n=8",
         [&] {
             Rank1Module L = build_rank1(Rim(8, {1, 4, 5}));
             std::vector<int> want{0, 1, 1, 0, 0, 1, 1, 1};
             for (int i = 0; i < 8; ++i)
                 if (L.x_scalars[static_cast<size_t>(i)].valuation() !=
                     Valuation::at(want[static_cast<size_t>(i)]))
                     return false;
             return true;
         }},
        {"peaks and valleys of 1,4,5 in n=8",
         [&] {
             Rim I(8, {1, 4, 5});
             return I.peaks() == std::vector<int>{3, 8} && I.valleys() == std::vector<int>{1, 5};
         }},
        {"interlacing numbers of the worked profiles",
         [&] {
             return interlacing_number(rim6I, rim6J) == 3 &&
                    interlacing_number(rim8I, rim8J) == 4;
         }},
        {"(5,10) profile has boxes 1,2,2",
         [&] {
             auto g = profile_geometry(rim10I, rim10J);
             return g.r1 == 3 && g.box_sizes == std::vector<int>{1, 2, 2};
         }},
        {"2478|1356 is almost tightly 3-interlacing with a unique class",
         [&] {
             return almost_tightly_3_interlacing(Rim(8, {2, 4, 7, 8}), Rim(8, {1, 3, 5, 6})) &&
                    count_indecomposables(1, 1, 2) == 1;
         }},
        {"worked (3,6) module is indecomposable",
         [&] { return classify(m36({-2, 0, 0, 1, -1, 2})).verdict == Verdict::Indecomposable; }},
        {"worked (3,6) module passes the oracle",
         [&] { return is_indecomposable(m36({-2, 0, 0, 1, -1, 2}).rep()); }},
        {"splitting pattern gives L_{346} + L_{125}",
         [&] {
             auto rep = classify(m36({2, 0, -1, -1, 3, -3}));
             return rep.verdict == Verdict::DirectSum &&
                    rep.summands->first == Rim(6, {3, 4, 6}) &&
                    rep.summands->second == Rim(6, {1, 2, 5});
         }},
        {"explicit isomorphism between the two worked tuples",
         [&] {
             IsoResult iso = build_iso(m36({-2, 0, 0, 1, -1, 2}), m36({0, 1, -1, 2, -2, 0}));
             if (iso.outcome != IsoOutcome::Isomorphic) return false;
             const SMat& phi0 = iso.family[0];
             return phi0.at(0, 0).identical(Series::one(24)) &&
                    phi0.at(1, 0).identical(Series::monomial(rat(-3, 2), 1, 24));
         }},
        {"sum of the six coefficients is forced",
         [&] {
             CoefficientTuple partial = tuple_from_ints({-2, 0, 0, 1, -1, 0}, 24);
             return solve_constraint(rim6I, rim6J, partial, 6)[5].identical(
                 Series::constant(Rat(2), 24));
         }},
        {"(5,10) forced coefficient is -t",
         [&] {
             CoefficientTuple p = zero_tuple(10, 40);
             p[1] = Series::t(40);
             p[5] = Series::one(40);
             p[7] = Series::constant(Rat(-1), 40);
             return solve_constraint(rim10I, rim10J, p, 7, 40)[6].identical(
                 Series::monomial(Rat(-1), 1, 40));
         }},
        {"(5,10) valuation vectors 0,0,1 and 0,0,0",
         [&] {
             auto r1 = classify(m510("0,t,0,0,0,1,-t,-1,0,0", 40));
             auto r2 = classify(m510("0,1,0,0,0,1,0,-2,0,0", 40));
             return r1.verdict == Verdict::Indecomposable &&
                    r2.verdict == Verdict::Indecomposable &&
                    *r1.s_vector == std::vector<int>{0, 0, 1} &&
                    *r2.s_vector == std::vector<int>{0, 0, 0};
         }},
        {"(5,10) modules are not isomorphic (criterion and oracle)",
         [&] {
             auto A = m510("0,t,0,0,0,1,-t,-1,0,0", 40);
             auto B = m510("0,1,0,0,0,1,0,-2,0,0", 40);
             return build_iso(A, B).outcome == IsoOutcome::NonIsomorphic &&
                    !iso_oracle(A.rep(), B.rep());
         }},
        {"(4,8) worked tuple is the class with divisible pair 4",
         [&] {
             auto rep = classify(m48({0, 1, 2, 0, 0, -3, -1, 1}));
             return rep.verdict == Verdict::Indecomposable &&
                    rep.iso_key == "indec/4x8/pair=4" &&
                    is_indecomposable(m48({0, 1, 2, 0, 0, -3, -1, 1}).rep());
         }},
        {"(4,8) adjacent split lands on L_{1356} + L_{2478}",
         [&] {
             auto rep = classify(m48({0, 0, 0, 0, 1, 0, -1, 0}));
             return rep.verdict == Verdict::DirectSum &&
                    rep.summands->first == Rim(8, {2, 4, 7, 8}) &&
                    rep.summands->second == Rim(8, {1, 3, 5, 6});
         }},
        {"(4,8) opposite split lands on L_{1346} + L_{2578}",
         [&] {
             auto rep = classify(m48({0, 0, 1, 0, 0, 0, -1, 0}));
             return rep.verdict == Verdict::DirectSum &&
                    rep.summands->first == Rim(8, {2, 5, 7, 8}) &&
                    rep.summands->second == Rim(8, {1, 3, 4, 6});
         }},
        {"(4,8) all quads divisible splits as L_{1256} + L_{3478}",
         [&] {
             auto rep = classify(m48({1, 0, -1, 0, 1, 0, -1, 0}));
             return rep.verdict == Verdict::DirectSum &&
                    rep.summands->first == Rim(8, {3, 4, 7, 8}) &&
                    rep.summands->second == Rim(8, {1, 2, 5, 6});
         }},
        {"beta family members with equal squares are isomorphic",
         [&] {
             Rank2Module P = build_M_beta(Rat(2)), Q = build_M_beta(Rat(-2));
             return classify(P).iso_key == classify(Q).iso_key &&
                    build_iso(P, Q).outcome == IsoOutcome::Isomorphic &&
                    iso_oracle(P.rep(), Q.rep());
         }},
        {"beta family members with distinct squares are not isomorphic",
         [&] {
             Rank2Module P = build_M_beta(Rat(2)), Q = build_M_beta(Rat(3));
             return build_iso(P, Q).outcome == IsoOutcome::NonIsomorphic &&
                    !iso_oracle(P.rep(), Q.rep());
         }},
        {"negative control: a sign bug in y breaks the relations",
         [&] {
             Rank2Module M = m36({-2, 0, 0, 1, -1, 2});
             M.y[0].at(0, 1) = -M.y[0].at(0, 1);
             return !verify_relations(M);
         }},
        {"negative control: truncation 6 on (5,10) reports exhausted precision",
         [&] {
             try {
                 Rank2Module M = m510("0,t,0,0,0,1,-t,-1,0,0", 6);
                 is_indecomposable(M.rep());
             } catch (const PrecisionExhausted&) {
                 return true;
             }
             return false;
         }},
    };

    int failures = 0;
    for (const auto& c : checks) {
        bool ok = false;
        std::string err;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            err = e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << "  " << c.name;
        if (!ok && !err.empty()) std::cout << "  [" << err << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " failures")
              << "\n";
    return failures == 0 ? kExitOk : kExitDisagree;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-2 Cohen-Macaulay modules over boundary algebras: "
                 "construction, classification and brute-force cross-checks"};
    app.require_subcommand(1);

    ClassifyArgs cl;
    std::string c_csv;

    auto add_common = [&](CLI::App* cmd, bool need_b) {
        cmd->add_option("--k", cl.k, "subset size k")->required();
        cmd->add_option("--n", cl.n, "quiver size n")->required();
        cmd->add_option("--profile", cl.profile, "profile I|J, e.g. \"1,3,5|2,4,6\"")->required();
        if (need_b)
            cmd->add_option("--b", cl.b, "comma-separated series literals, one per edge")
                ->required();
        cmd->add_option("--trunc-order", cl.trunc, "working truncation order (default 4n)");
        cmd->add_option("--format", cl.format, "text|json")->capture_default_str();
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "classify one module");
    add_common(classify_cmd, true);
    classify_cmd->add_option("--oracle", cl.oracle, "on|off|only")->capture_default_str();

    CLI::App* iso_cmd = app.add_subcommand("iso", "decide isomorphism of two modules");
    add_common(iso_cmd, true);
    iso_cmd->add_option("--c", c_csv, "second coefficient tuple")->required();
    iso_cmd->add_option("--oracle", cl.oracle, "on|off")->capture_default_str();

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "run only the endomorphism oracle");
    add_common(oracle_cmd, true);

    int en_k = 0, en_n = 0, en_range = 1, en_threads = 1, en_trunc = 0;
    long en_limit = 2000000, en_sample = 0;
    unsigned long en_seed = 20240101;
    std::string en_profile, en_oracle = "off", en_format = "text";
    bool en_in_range = true;
    CLI::App* enum_cmd = app.add_subcommand("enumerate", "sweep coefficient tuples per profile");
    enum_cmd->add_option("--k", en_k, "subset size k")->required();
    enum_cmd->add_option("--n", en_n, "quiver size n")->required();
    enum_cmd->add_option("--profile", en_profile, "restrict to one profile I|J");
    enum_cmd->add_option("--range", en_range, "sweep integers in [-range, range]")
        ->capture_default_str();
    enum_cmd->add_option("--limit", en_limit, "combinatorial explosion guard")
        ->capture_default_str();
    enum_cmd->add_option("--oracle", en_oracle, "on|off (default off for sweeps)")
        ->capture_default_str();
    enum_cmd->add_flag("--no-range-filter{false},--in-range-only{true}", en_in_range,
                       "keep only tuples whose solved coefficient lies in the range");
    enum_cmd->add_option("--sample", en_sample, "random sample size instead of exhaustion");
    enum_cmd->add_option("--seed", en_seed, "seed for the random sampler")->capture_default_str();
    enum_cmd->add_option("--threads", en_threads, "worker tasks")->capture_default_str();
    enum_cmd->add_option("--trunc-order", en_trunc, "working truncation order");
    enum_cmd->add_option("--format", en_format, "text|csv|json")->capture_default_str();

    std::string count_sizes, count_profile;
    int count_n = 0;
    CLI::App* count_cmd =
        app.add_subcommand("count", "count indecomposable classes for a three-box filtration");
    count_cmd->add_option("--sizes", count_sizes, "box sizes l1,l2,l3");
    count_cmd->add_option("--profile", count_profile, "profile I|J");
    count_cmd->add_option("--n", count_n, "quiver size (with --profile)");

    CLI::App* suite_cmd =
        app.add_subcommand("paper-suite", "regression checks over the worked examples");

    try {
        app.parse(argc, argv);
        if (classify_cmd->parsed()) return run_classify(cl, false);
        if (oracle_cmd->parsed()) {
            cl.oracle = "only";
            return run_classify(cl, true);
        }
        if (iso_cmd->parsed()) return run_iso(cl, c_csv);
        if (enum_cmd->parsed())
            return run_enumerate(en_k, en_n, en_profile, en_range, en_limit, en_oracle,
                                 en_in_range, en_sample, en_seed, en_threads, en_trunc,
                                 en_format);
        if (count_cmd->parsed()) return run_count(count_sizes, count_profile, count_n);
        if (suite_cmd->parsed()) return run_paper_suite();
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
