#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cmod/rim.hpp"

using namespace cmod;

namespace {

Rim rim(int n, std::initializer_list<int> e) { return Rim(n, std::vector<int>(e)); }

Rim random_rim(std::mt19937_64& rng, int n, int k) {
    std::vector<int> all;
    for (int i = 1; i <= n; ++i) all.push_back(i);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> e(all.begin(), all.begin() + k);
    std::sort(e.begin(), e.end());
    return Rim(n, e);
}

} // namespace

TEST_CASE("rim validation") {
    CHECK_THROWS_AS(rim(6, {0, 2}), InputError);
    CHECK_THROWS_AS(rim(6, {1, 7}), InputError);
    CHECK_THROWS_AS(Rim(6, {3, 3}), InputError);
    CHECK_THROWS_AS(Rim(6, {1, 2, 3, 4, 5, 6}), InputError);
    CHECK(Rim::parse("1,3,5", 6) == rim(6, {1, 3, 5}));
    CHECK_THROWS_AS(Rim::parse("1,a", 6), InputError);
}

TEST_CASE("peaks and valleys") {
    Rim I = rim(8, {1, 4, 5});
    CHECK(I.peaks() == std::vector<int>{3, 8});
    CHECK(I.valleys() == std::vector<int>{1, 5});

    Rim run = rim(8, {1, 2, 3});
    CHECK(run.peaks() == std::vector<int>{8});
    CHECK(run.valleys() == std::vector<int>{3});

    Rim I2 = rim(8, {2, 4, 7, 8});
    CHECK(I2.peaks() == std::vector<int>{1, 3, 6});
    CHECK(I2.valleys() == std::vector<int>{2, 4, 8});

    std::mt19937_64 rng(4);
    for (int it = 0; it < 100; ++it) {
        Rim R = random_rim(rng, 9, 4);
        CHECK(R.peaks().size() == R.valleys().size());
    }
}

TEST_CASE("interlacing numbers") {
    CHECK(interlacing_number(rim(6, {1, 3, 5}), rim(6, {2, 4, 6})) == 3);
    CHECK(interlacing_number(rim(8, {1, 3, 5, 7}), rim(8, {2, 4, 6, 8})) == 4);
    Rim I = rim(6, {1, 3, 5});
    CHECK(interlacing_number(I, I) == 0);
    CHECK_THROWS_AS(interlacing_number(rim(6, {1, 3, 5}), rim(8, {2, 4, 6})), InputError);

    // symmetric and rotation invariant
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        Rim A = random_rim(rng, 10, 5), B = random_rim(rng, 10, 5);
        CHECK(interlacing_number(A, B) == interlacing_number(B, A));
        int shift = static_cast<int>(rng() % 10);
        CHECK(interlacing_number(A.rotated(shift), B.rotated(shift)) ==
              interlacing_number(A, B));
    }
}

TEST_CASE("profile reduction") {
    auto same = reduce_profile(rim(6, {1, 3, 5}), rim(6, {2, 4, 6}));
    CHECK(same.I == rim(6, {1, 3, 5}));
    CHECK(same.index_map == std::vector<int>{1, 2, 3, 4, 5, 6});

    auto r8 = reduce_profile(rim(8, {2, 4, 7, 8}), rim(8, {1, 3, 5, 6}));
    CHECK(r8.I.n() == 8);
    CHECK(r8.I == rim(8, {2, 4, 7, 8}));

    auto r10 = reduce_profile(rim(10, {1, 2, 5, 6, 8}), rim(10, {3, 4, 7, 9, 10}));
    CHECK(r10.I.n() == 10);

    auto shrunken = reduce_profile(rim(6, {1, 2, 3}), rim(6, {1, 2, 4}));
    CHECK(shrunken.I.n() == 2);
    CHECK(shrunken.I.k() == 1);
    CHECK(shrunken.I.n() == 2 * shrunken.I.k());

    CHECK_THROWS_AS(reduce_profile(rim(6, {1, 3, 5}), rim(6, {1, 3, 5})), DegenerateProfile);
}

TEST_CASE("profile geometry: spec profiles") {
    {
        auto g = profile_geometry(rim(6, {1, 3, 5}), rim(6, {2, 4, 6}));
        CHECK(g.r == 3);
        CHECK(g.r1 == 3);
        CHECK(g.box_sizes == std::vector<int>{1, 1, 1});
        CHECK(g.branch_i == std::vector<int>{1, 3, 5});
        CHECK(g.branch_j == std::vector<int>{2, 4, 6});
        CHECK(g.junctions.empty());
        CHECK(g.tight());
    }
    {
        auto g = profile_geometry(rim(8, {2, 4, 7, 8}), rim(8, {1, 3, 5, 6}));
        CHECK(g.r1 == 3);
        CHECK(g.box_sizes == std::vector<int>{1, 1, 2});
        CHECK(g.branch_i == std::vector<int>{8, 2, 4});
        CHECK(g.branch_j == std::vector<int>{1, 3, 5});
        CHECK(g.squared());
    }
    {
        auto g = profile_geometry(rim(10, {1, 2, 5, 6, 8}), rim(10, {3, 4, 7, 9, 10}));
        CHECK(g.r1 == 3);
        CHECK(g.box_sizes == std::vector<int>{1, 2, 2});
        CHECK(g.branch_i == std::vector<int>{6, 8, 2});
        CHECK(g.squared());
    }
    {
        auto g = profile_geometry(rim(8, {1, 3, 5, 7}), rim(8, {2, 4, 6, 8}));
        CHECK(g.r1 == 4);
        CHECK(g.box_sizes == std::vector<int>{1, 1, 1, 1});
        CHECK(g.junctions.empty());
        CHECK(g.tight());
    }
    {
        // four boxes, one of size 3 containing a junction
        auto g = profile_geometry(rim(12, {2, 4, 6, 9, 11, 12}), rim(12, {1, 3, 5, 7, 8, 10}));
        CHECK(g.r == 5);
        CHECK(g.r1 == 4);
        CHECK(g.box_sizes == std::vector<int>{1, 1, 1, 3});
        CHECK(g.junctions == std::vector<int>{9});
        CHECK_FALSE(g.squared());
        CHECK_FALSE(g.tight());
    }
}

TEST_CASE("reduction preserves geometry") {
    std::mt19937_64 rng(21);
    int checked = 0;
    while (checked < 60) {
        Rim A = random_rim(rng, 10, 4), B = random_rim(rng, 10, 4);
        if (A == B) continue;
        auto g = profile_geometry(A, B);
        auto red = reduce_profile(A, B);
        auto gr = profile_geometry(red.I, red.J);
        CHECK(g.r == gr.r);
        CHECK(g.r1 == gr.r1);
        CHECK(g.box_sizes == gr.box_sizes);
        CHECK(g.r >= g.r1);
        int total = 0;
        for (int l : g.box_sizes) total += l;
        int iminusj = 0;
        for (int p = 1; p <= 10; ++p)
            if (A.contains(p) && !B.contains(p)) ++iminusj;
        CHECK(total == iminusj);
        ++checked;
    }
}

TEST_CASE("tight pairs have all boxes of size 1") {
    std::mt19937_64 rng(77);
    int seen = 0;
    while (seen < 40) {
        Rim A = random_rim(rng, 9, 4), B = random_rim(rng, 9, 4);
        if (A == B) continue;
        auto g = profile_geometry(A, B);
        if (!g.tight()) continue;
        for (int l : g.box_sizes) CHECK(l == 1);
        CHECK(g.r1 == g.r);
        ++seen;
    }
}

TEST_CASE("almost tightly 3-interlacing") {
    CHECK(almost_tightly_3_interlacing(rim(8, {2, 4, 7, 8}), rim(8, {1, 3, 5, 6})));
    CHECK(almost_tightly_3_interlacing(rim(6, {1, 3, 5}), rim(6, {2, 4, 6})));
    CHECK_FALSE(almost_tightly_3_interlacing(rim(10, {1, 2, 5, 6, 8}), rim(10, {3, 4, 7, 9, 10})));
}

TEST_CASE("profile parsing") {
    auto [I, J] = parse_profile("1,3,5|2,4,6", 6);
    CHECK(I == rim(6, {1, 3, 5}));
    CHECK(J == rim(6, {2, 4, 6}));
    CHECK_THROWS_AS(parse_profile("1,3,5", 6), InputError);
}
