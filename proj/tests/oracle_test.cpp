#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "tdilp/oracle.hpp"

#include <random>

using namespace tdilp;
using namespace tdilp::oracle;

TEST_CASE("brute_force_ilp examples")
{
    auto a = brute_force_ilp(parse_instance("max: x\nx <= 5\n"), 10);
    CHECK(a.feasible);
    CHECK(a.value == 5);
    CHECK_FALSE(brute_force_ilp(parse_instance("max: 0\nx <= 0\n-x <= -1\n"), 3).feasible);
    auto lex = brute_force_ilp(parse_instance("max: 0\nx + y <= 0\n"), 2);
    REQUIRE(lex.feasible);
    CHECK(lex.assignment.at(VariableId{0}) == -2);
    CHECK(lex.assignment.at(VariableId{1}) == -2);
}

TEST_CASE("brute force handles the empty instance")
{
    auto r = brute_force_ilp(IlpInstance{}, 5);
    CHECK(r.feasible);
    CHECK(r.value == 0);
    CHECK(r.assignment.empty());
}

TEST_CASE("brute force enforces its budget")
{
    auto I = corpus::replicated_blocks(10);
    CHECK_THROWS_AS(brute_force_ilp(I, 3, 1000), BudgetExceeded);
    CHECK_THROWS_AS(brute_force_ilp_parallel(I, 3, 1000), BudgetExceeded);
}

TEST_CASE("parallel brute force matches the serial one")
{
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 60; ++trial) {
        IlpInstance I = corpus::random_instance(rng, {1, 8, 2, false});
        auto a = brute_force_ilp(I, 1);
        auto b = brute_force_ilp_parallel(I, 1);
        REQUIRE(a.feasible == b.feasible);
        if (a.feasible) {
            CHECK(a.value == b.value);
            CHECK(a.assignment == b.assignment);
        }
    }
}

TEST_CASE("brute force recession")
{
    CHECK(brute_force_recession(parse_instance("max: x\n-x <= 0\n"), 2));
    CHECK_FALSE(brute_force_recession(parse_instance("max: x\nx <= 5\n"), 2));
    CHECK_FALSE(brute_force_recession(parse_instance("max: 0\n-x <= 0\n"), 2));
    CHECK(brute_force_recession(parse_instance("max: x - y\nx - 2y <= 3\n"), 2));
}

TEST_CASE("subset sum oracles")
{
    CHECK(subset_sum_dp({1, 2, 3}, 6));
    CHECK_FALSE(subset_sum_dp({2, 4}, 5));
    CHECK(subset_sum_dp({5}, 0));
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<std::int64_t> values;
        for (int i = 0; i < n; ++i)
            values.push_back(1 + static_cast<std::int64_t>(rng() % 50));
        const std::int64_t target = static_cast<std::int64_t>(rng() % 200);
        CHECK(subset_sum_dp(values, target) == subset_sum_enumerate(values, target));
    }
}

TEST_CASE("three-coloring brute force")
{
    CHECK(brute_three_coloring(corpus::complete(3)));
    CHECK_FALSE(brute_three_coloring(corpus::complete(4)));
    CHECK(brute_three_coloring(corpus::cycle(5)));
    CHECK(brute_three_coloring(corpus::petersen()));
    CHECK(brute_three_coloring(Graph(0)));
}

TEST_CASE("vertex cover brute force")
{
    CHECK(brute_vertex_cover(corpus::complete(3), 2));
    CHECK_FALSE(brute_vertex_cover(corpus::complete(3), 1));
    CHECK(brute_vertex_cover(corpus::star(5), 1));
    CHECK_FALSE(brute_vertex_cover(corpus::cycle(5), 2));
    CHECK(brute_vertex_cover(corpus::cycle(5), 3));
}

TEST_CASE("treedepth reference recursion")
{
    CHECK(treedepth_reference(Graph(1)) == 1);
    CHECK(treedepth_reference(corpus::complete(4)) == 4);
    CHECK(treedepth_reference(corpus::path(7)) == 3);
    CHECK(treedepth_reference(corpus::path(8)) == 4);
    CHECK(treedepth_reference(Graph(4)) == 1);
    CHECK(treedepth_reference(corpus::star(5)) == 2);
    CHECK(treedepth_reference(corpus::cycle(5)) == 4);
}

TEST_CASE("longest path")
{
    CHECK(longest_path_vertices(Graph(0)) == 0);
    CHECK(longest_path_vertices(Graph(3)) == 1);
    CHECK(longest_path_vertices(corpus::path(6)) == 6);
    CHECK(longest_path_vertices(corpus::star(4)) == 3);
    CHECK(longest_path_vertices(corpus::petersen()) == 10);
}

TEST_CASE("renaming enumeration")
{
    auto I = parse_instance("max: 0\nz + a - b <= 1\nz + c - d <= 1\nb <= 2\nd <= 2\n");
    auto v = [&](const char* n) { return *I.find(n); };
    auto r = enumerate_renamings(I, {v("a"), v("b")}, {v("c"), v("d")});
    REQUIRE(r);
    CHECK(r->at(v("a")) == v("c"));
    CHECK(r->at(v("b")) == v("d"));
    CHECK_FALSE(enumerate_renamings(I, {v("a"), v("b")}, {v("c")}));

    auto J = parse_instance("max: 0\nz + a - b <= 1\nz + c - d <= 1\nb <= 2\nd <= 3\n");
    auto w = [&](const char* n) { return *J.find(n); };
    CHECK_FALSE(enumerate_renamings(J, {w("a"), w("b")}, {w("c"), w("d")}));
}
