#include "doctest.h"

#include "subcode/code.hpp"
#include "subcode/constructions.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

using namespace subcode;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int brute_min_distance(const SubspaceCode& c)
{
    int best = kInfiniteDistance;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) best = std::min(best, subspace_distance(c[i], c[j]));
    return best;
}

} // namespace

TEST_CASE("scode round trip")
{
    std::string text = "# a comment\nq=2 v=4\n\n1100,0011\n# inside\n1000\n0110,0001\n";
    auto c = SubspaceCode::parse(text);
    CHECK(c.size() == 3);
    CHECK(c.serialize() == "q=2 v=4\n0110,0001\n1000\n1100,0011\n");
    CHECK(SubspaceCode::parse(c.serialize()) == c);
    CHECK(c.min_distance() == 3);

    auto dup = SubspaceCode::parse("q=2 v=3\n100\n100\n010\n");
    CHECK(dup.size() == 2);
    CHECK(dup.duplicates_removed() == 1);

    auto noncanon = SubspaceCode::parse("q=3 v=3\n210,011\n");
    CHECK(noncanon[0].str() == "101,011");
}

TEST_CASE("scode parse errors carry line numbers")
{
    try {
        SubspaceCode::parse("q=2 v=4\n1100\n11x0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(SubspaceCode::parse("1100\n"), ParseError);
    CHECK_THROWS_AS(SubspaceCode::parse("q=6 v=4\n"), ParseError);
    CHECK_THROWS_AS(SubspaceCode::parse("q=2 v=4 extra\n"), ParseError);
    CHECK_THROWS_AS(SubspaceCode::parse("q=2 v=4\n1000,1000\n"), ParseError);
    CHECK_THROWS_AS(SubspaceCode::parse(""), ParseError);
    CHECK_THROWS_AS(read_code_file("/nonexistent/file.scode"), IoError);
}

TEST_CASE("minimum distance edge cases")
{
    Ambient amb(2, 4);
    CHECK(SubspaceCode(amb, {}).min_distance() == kInfiniteDistance);
    CHECK(SubspaceCode(amb, {Subspace::zero(amb)}).min_distance() == kInfiniteDistance);
    CHECK(distance_to_string(kInfiniteDistance) == "inf");
    CHECK(SubspaceCode(amb, {Subspace::zero(amb), Subspace::whole(amb)}).min_distance() == 4);
}

TEST_CASE("minimum distance matches brute force on random codes")
{
    std::mt19937 rng(3);
    Ambient amb(2, 5);
    auto all = enumerate_subspaces(amb, std::vector<int>{0, 1, 2, 3, 4, 5});
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int it = 0; it < 200; ++it) {
        std::vector<Subspace> w;
        int n = 2 + int(rng() % 20);
        for (int i = 0; i < n; ++i) w.push_back(all[pick(rng)]);
        SubspaceCode c(amb, w);
        CHECK(c.min_distance() == brute_min_distance(c));
        auto r = verify(c, 3);
        std::size_t expected = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) expected += subspace_distance(c[i], c[j]) < 3;
        CHECK(r.violations.size() == expected);
        CHECK(r.ok == (expected == 0));
    }
}

TEST_CASE("embedded (7,34,5) code matches the fixture")
{
    auto c = embedded_7_34_5();
    CHECK(c.serialize() == slurp(std::string(SUBCODE_SOURCE_DIR) + "/fixtures/code_7_34_5.scode"));
    auto r = verify(c, 5);
    CHECK(r.ok);
    CHECK(r.summary() == "M=34 d=5 delta=0,0,0,17,17,0,0,0 PASS");
    auto bad = verify(c, 6);
    CHECK_FALSE(bad.ok);
    CHECK(!bad.violations.empty());
    for (auto& v : bad.violations) CHECK(v.distance == 5);
}

TEST_CASE("dualize, restrict and degrees")
{
    auto c = embedded_7_34_5();
    auto d = dualize(c);
    auto dc = c.dimension_distribution(), dd = d.dimension_distribution();
    std::reverse(dd.begin(), dd.end());
    CHECK(dc == dd);
    CHECK(d.min_distance() == c.min_distance());
    CHECK(dualize(d) == c);
    CHECK(restrict_dims(c, {3}).size() == 17);
    CHECK(restrict_dims(c, {2, 5}).empty());

    Ambient amb(2, 4);
    SubspaceCode triv(amb, {Subspace::zero(amb), Subspace::whole(amb), Subspace::parse(amb, "1000,0100")});
    auto p = Subspace::parse(amb, "1000");
    auto h = Subspace::parse(amb, "1000,0100,0010");
    CHECK(point_degree(triv, p) == 1);
    CHECK(hyperplane_degree(triv, h) == 1);
    CHECK_THROWS(point_degree(triv, h));
    CHECK_THROWS(hyperplane_degree(triv, p));
}

TEST_CASE("file io")
{
    auto c = embedded_7_34_5();
    std::string path = "test_code_io.scode";
    write_code_file(path, c);
    CHECK(read_code_file(path) == c);
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_code_file("/nonexistent/dir/x.scode", c), IoError);
}
