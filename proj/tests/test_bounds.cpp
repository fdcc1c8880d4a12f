#include "doctest.h"

#include "subcode/bounds.hpp"
#include "subcode/constructions.hpp"

#include <random>
#include <set>

using namespace subcode;

namespace {

long P(long q, int e)
{
    long r = 1;
    while (e-- > 0) r *= q;
    return r;
}

BigInt small_polynomial(long q, int v, int d)
{
    if (v == 2) return q + 1;
    if (v == 3 && d == 2) return q * q + q + 2;
    if (v == 3 && d == 3) return 2;
    if (v == 4 && d == 2) return P(q, 4) + P(q, 3) + 2 * q * q + q + 3;
    if (v == 4) return q * q + 1;
    if (v == 5 && d == 2) return P(q, 6) + P(q, 5) + 3 * P(q, 4) + 3 * P(q, 3) + 3 * q * q + 2 * q + 3;
    if (v == 5 && d == 3) return 2 * P(q, 3) + 2;
    if (v == 5 && d == 4) return P(q, 3) + 1;
    if (v == 5 && d == 5) return 2;
    throw std::logic_error("no entry");
}

const BoundRecord& cell(const std::vector<BoundRecord>& t, int v, int d)
{
    for (const auto& r : t)
        if (r.v == v && r.d == d) return r;
    throw std::logic_error("missing cell");
}

} // namespace

TEST_CASE("Bonferroni lower bound")
{
    CHECK(bonferroni_lower({35 * 35, 35 * 34 / 2, {}}) == 630);
    CHECK(bonferroni_lower({17, 0, {}}) == 17);
    CHECK(bonferroni_lower({10, 45, {}}) == 1);
    CHECK_THROWS(bonferroni_lower({0, 3, {}}));
}

TEST_CASE("Bonferroni bound never exceeds the true union")
{
    std::mt19937 rng(11);
    for (int it = 0; it < 200; ++it) {
        int n = 4 + int(rng() % 40);
        int sets = 1 + int(rng() % 12);
        std::vector<std::set<int>> fam(sets);
        for (auto& s : fam) {
            int size = 1 + int(rng() % n);
            while (int(s.size()) < size) s.insert(int(rng() % n));
        }
        std::set<int> uni;
        long mu1 = 0, mu2 = 0, cap = 0;
        for (int i = 0; i < sets; ++i) {
            uni.insert(fam[i].begin(), fam[i].end());
            mu1 += long(fam[i].size());
            for (int j = i + 1; j < sets; ++j) {
                long c = 0;
                for (int x : fam[i]) c += fam[j].count(x);
                mu2 += c;
                cap = std::max(cap, c);
            }
        }
        CHECK(bonferroni_lower({mu1, mu2, {}}) <= long(uni.size()));
        // weaker moment information stays valid
        long capped = cap * sets * (sets - 1) / 2;
        CHECK(bonferroni_lower({mu1, capped, {}}) <= long(uni.size()));
        CHECK(bonferroni_lower({mu1 - (mu1 > 1), mu2 + 1, {}}) <= long(uni.size()));
    }
}

TEST_CASE("packing bound")
{
    CHECK(packing_bound(2, 6, 3, 2) == 93);
    CHECK(packing_bound(2, 4, 2, 2) == 5);
    CHECK(packing_bound(2, 7, 3, 2) == 381);
    CHECK(packing_bound(3, 5, 2, 1) == gauss(5, 2, 3));
    CHECK_THROWS(packing_bound(2, 4, 2, 3));
    CHECK_THROWS(packing_bound(2, 4, 5, 1));
}

TEST_CASE("sandwich bounds")
{
    LayerValues l6{{2, Interval::exactly(21)}, {3, Interval::exactly(77)}, {4, Interval::exactly(21)}};
    auto r = sandwich_bounds(2, 6, 3, l6);
    CHECK(r.upper == 121);
    CHECK(r.lower == 79);
    LayerValues l7{{3, Interval::exactly(17)}, {4, Interval::exactly(17)}};
    auto s = sandwich_bounds(2, 7, 5, l7);
    CHECK(s.upper == 36);
    CHECK(s.lower == 17);
    auto even = sandwich_bounds(2, 6, 6, {{3, Interval::exactly(9)}});
    CHECK(even.lower == 9);
    CHECK_THROWS(sandwich_bounds(2, 6, 3, {{2, Interval::exactly(21)}}));
}

TEST_CASE("closed forms agree with the small-parameter polynomials")
{
    for (long q : {2, 3, 4, 5})
        for (int v = 3; v <= 5; ++v)
            for (int d = 2; d <= v; ++d) {
                auto r = closed_form(int(q), v, d);
                CHECK(r.exact());
                CHECK(r.lower == small_polynomial(q, v, d));
            }
    CHECK(closed_form(3, 4, 3).lower == 10);
    CHECK(closed_form(2, 5, 3).lower == 18);
    CHECK(closed_form(2, 6, 2).lower == 1521);
    CHECK(closed_form(2, 4, 1).lower == 1 + 15 + 35 + 15 + 1);
    auto r93 = closed_form(3, 9, 7);
    CHECK(r93.lower == 2 * P(3, 5) + 1);
    CHECK(r93.upper == 2 * P(3, 5) + 2);
    auto r86 = closed_form(2, 8, 6);
    CHECK(r86.lower == 257);
    CHECK(r86.upper == 17 * 17);
    auto r364 = closed_form(3, 6, 4);
    CHECK(r364.lower == 729 + 18 + 6 + 1);
    CHECK(r364.upper == 28 * 28);
    CHECK_THROWS(closed_form(2, 7, 3));
    CHECK_THROWS(closed_form(6, 4, 2));
}

TEST_CASE("constructed codes attain the closed forms")
{
    CHECK(construct_v5_d3(2).size() == closed_form(2, 5, 3).lower);
    CHECK(construct_v5_d3(3).size() == closed_form(3, 5, 3).lower);
    CHECK(embedded_7_34_5().size() == closed_form(2, 7, 5).lower);
    CHECK(spread(2, 3).size() == closed_form(2, 6, 6).lower);
    CHECK(max_partial_spread(2, 3).size() == closed_form(2, 7, 6).lower);
    CHECK(optimal_d2_code(2, 6).size() == closed_form(2, 6, 2).lower);
    CHECK(optimal_d2_code(3, 4).size() == closed_form(3, 4, 2).lower);
}

TEST_CASE("f on the solid layer")
{
    CHECK(f_delta4(0) == 381);
    CHECK(f_delta4(35) == 291);
    CHECK(f_delta4(190) == 191);
    CHECK(f_delta4(141) == 240);
    // f stays below 381 - delta up to 140
    for (int d = 1; d <= 140; ++d) CHECK(f_delta4(d) < 381 - d);
    CHECK_THROWS(f_delta4(191));
    CHECK_THROWS(f_delta4(-1));
}

TEST_CASE("g reproduces the printed table")
{
    const int expected[42] = {381, 354, 328, 304, 281, 260, 240, 221, 203, 186, 171, 157, 145, 134,
                              124, 115, 107, 101, 96,  93,  91,  90,  87,  77,  70,  61,  56,  48,
                              43,  25,  17,  12,  9,   8,   5,   4,   3,   2,   2,   1,   1,   0};
    for (int d = 0; d <= 41; ++d) CHECK(g_delta2(d) == expected[d]);
    for (int d = 1; d <= 21; ++d) CHECK(g_delta2(d) == g1_delta2(d));
    for (int d = 22; d <= 28; ++d) CHECK(g_delta2(d) == g2_delta2(d));
    for (int d = 39; d <= 41; ++d) CHECK(g_delta2(d) == g2_delta2(d));
    for (int d = 28; d <= 41; ++d) CHECK(g_delta2(d) == g3_delta2(d));
    // each piece is strictly needed somewhere
    CHECK(g1_delta2(25) > g_delta2(25));
    CHECK(g2_delta2(30) > g_delta2(30));
    CHECK(g3_delta2(10) > g_delta2(10));
    CHECK_THROWS(g_delta2(42));
}

TEST_CASE("h reproduces the printed jump table")
{
    CHECK(h_delta5(0) == 381);
    CHECK(h_delta5(1) == 376);
    CHECK(h_delta5(9) == 369);
    CHECK(h_delta5(41) == 365);
    const std::vector<std::pair<int, int>> last_before_drop{{0, 381}, {1, 376}, {2, 372}, {3, 371}, {5, 370},
                                                            {9, 369}, {18, 368}, {33, 367}, {37, 366}, {41, 365}};
    int d = 0;
    for (auto [end, value] : last_before_drop)
        for (; d <= end; ++d) CHECK(h_delta5(d) == value);
    for (int x = 0; x < 41; ++x) CHECK(h_delta5(x) >= h_delta5(x + 1));
}

TEST_CASE("line-count program has the unique optimum (256, 120)")
{
    auto o = line_count_optimum();
    CHECK(o.a1 == 256);
    CHECK(o.a2 == 120);
    CHECK(o.value == 376);
    CHECK(o.optima == 1);
}

TEST_CASE("A_2(7,4) upper bound")
{
    auto r = upper_bound_A2_7_4();
    CHECK(r.interior == 406);
    std::vector<A274Solution> opt{{0, 365, 1, 40}, {0, 365, 0, 41}};
    CHECK(r.optima.size() == 2);
    for (const auto& s : opt) CHECK(std::find(r.optima.begin(), r.optima.end(), s) != r.optima.end());
    std::vector<A274Solution> near{{0, 365, 1, 40}, {0, 365, 0, 41}, {0, 365, 1, 39},
                                   {0, 365, 2, 38}, {0, 366, 2, 37}, {0, 366, 3, 36}};
    CHECK(r.near_optimal.size() == near.size());
    for (const auto& s : near)
        CHECK(std::find(r.near_optimal.begin(), r.near_optimal.end(), s) != r.near_optimal.end());
    CHECK(r.bound == 407);
    CHECK(middle_pair_max(365, 1) == 366);

    auto par = upper_bound_A2_7_4(4);
    CHECK(par.interior == r.interior);
    CHECK(par.optima == r.optima);
    CHECK(par.near_optimal == r.near_optimal);
    CHECK(par.bound == r.bound);
}

TEST_CASE("binary table up to v = 7")
{
    auto t = bounds_table(2, 7);
    const std::vector<std::tuple<int, int, long, long>> expected{
        {3, 2, 8, 8},       {3, 3, 2, 2},     {4, 2, 37, 37},   {4, 3, 5, 5},   {4, 4, 5, 5},
        {5, 2, 187, 187},   {5, 3, 18, 18},   {5, 4, 9, 9},     {5, 5, 2, 2},   {6, 2, 1521, 1521},
        {6, 3, 104, 118},   {6, 4, 77, 77},   {6, 5, 9, 9},     {6, 6, 9, 9},   {7, 2, 14606, 14606},
        {7, 3, 593, 776},   {7, 4, 330, 407}, {7, 5, 34, 34},   {7, 6, 17, 17}, {7, 7, 2, 2}};
    for (auto [v, d, lo, hi] : expected) {
        const auto& r = cell(t, v, d);
        CHECK(r.lower == lo);
        CHECK(r.upper == hi);
        CHECK(!r.provenance.empty());
    }
    for (const auto& r : t) CHECK(r.lower <= r.upper);
    CHECK(cell(t, 6, 3).value_string() == "104-118");
    CHECK(cell(t, 7, 5).value_string() == "34");
}

TEST_CASE("tables for other q match the closed forms")
{
    for (int q : {3, 4, 5}) {
        auto t = bounds_table(q, 5);
        for (const auto& r : t) {
            CHECK(r.exact());
            CHECK(r.lower == small_polynomial(q, r.v, r.d));
        }
    }
    CHECK_THROWS(bounds_table(2, 8));
}

TEST_CASE("layer data stays within the sandwich")
{
    for (int q : {2, 3})
        for (int v = 2; v <= 7; ++v)
            for (int d = 2; d <= v; ++d) {
                if (!has_closed_form(q, v, d)) continue;
                LayerValues layers;
                for (int k = 0; k <= v; ++k) layers[k] = known_layer(q, v, (d + 1) / 2, k)->first;
                auto s = sandwich_bounds(q, v, d, layers);
                auto c = closed_form(q, v, d);
                CHECK(s.lower <= c.upper);
                CHECK(c.lower <= s.upper);
            }
}

TEST_CASE("unimodality of the layers")
{
    auto r = unimodal_check(2, 6, 2, {{1, Interval::exactly(1)}, {2, Interval::exactly(21)}, {3, Interval::exactly(77)}});
    CHECK(r.ok);
    REQUIRE(r.pairs.size() == 2);
    CHECK(r.pairs[1].k == 3);
    CHECK(r.pairs[1].weak);
    CHECK(r.pairs[1].strong);

    LayerValues g;
    for (int k = 0; k <= 6; ++k) g[k] = Interval::exactly(gauss(6, k, 2));
    auto rg = unimodal_check(2, 6, 1, g);
    CHECK(rg.ok);
    CHECK(rg.pairs.size() == 3);
    CHECK(gauss(6, 3, 2) == 1395);
    CHECK(gauss(6, 2, 2) == 651);

    auto flagged = unimodal_check(2, 7, 2, {{2, Interval::exactly(41)}, {3, Interval{329, 381}}});
    CHECK(flagged.ok);
    REQUIRE(flagged.pairs.size() == 1);
    CHECK(flagged.pairs[0].status == UnimodalPair::Status::flagged);

    CHECK(unimodal_check(2, 6, 2, {{3, Interval::exactly(77)}}).pairs.empty());
    auto bad = unimodal_check(2, 6, 2, {{2, Interval::exactly(21)}, {3, Interval::exactly(30)}});
    CHECK_FALSE(bad.ok);
    CHECK(bad.pairs[0].status == UnimodalPair::Status::fail);
}
