#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "tdilp/oracle.hpp"
#include "tdilp/reductions.hpp"
#include "tdilp/structure.hpp"

#include <random>

using namespace tdilp;

TEST_CASE("primal graph edges come from shared constraints")
{
    auto I = parse_instance("max: 0\nx + y <= 1\ny + z <= 1\n");
    Graph g = build_primal_graph(I);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("objective variables form a clique")
{
    InstanceBuilder b;
    b.variable("x");
    b.variable("y");
    b.variable("z");
    b.set_objective({{"x", 1}, {"z", 1}});
    Graph g = build_primal_graph(b.build());
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 2}});
}

TEST_CASE("gadget primal graph matches its constraint list")
{
    IlpInstance I = build_gadget(GadgetSpec{5, GadgetVariant::Open, "", "x", "y"});
    Graph expected(static_cast<int>(I.num_variables()));
    for (const auto& c : I.constraints())
        for (std::size_t i = 0; i < c.terms().size(); ++i)
            for (std::size_t j = i + 1; j < c.terms().size(); ++j)
                expected.add_edge(static_cast<int>(I.index_of(c.terms()[i].first)),
                                  static_cast<int>(I.index_of(c.terms()[j].first)));
    CHECK(build_primal_graph(I) == expected);
    // B(5) = {0, 2}, m = 2: h0..h2, h'0, h'1, z0..z2, x, y.
    CHECK(I.num_variables() == 10);
}

TEST_CASE("exact treedepth on small graphs")
{
    auto [d1, t1] = compute_treedepth_exact(Graph(1));
    CHECK(d1 == 1);
    CHECK(t1.parent == std::vector<int>{kRoot});
    CHECK(compute_treedepth_exact(corpus::path(3)).first == 2);
    CHECK(compute_treedepth_exact(corpus::complete(4)).first == 4);
    CHECK(compute_treedepth_exact(corpus::path(7)).first == 3);
    CHECK(compute_treedepth_exact(corpus::path(8)).first == 4);
    CHECK(compute_treedepth_exact(Graph(0)).first == 0);
    CHECK(compute_treedepth_exact(corpus::star(6)).first == 2);
    CHECK(compute_treedepth_exact(corpus::petersen()).first == oracle::treedepth_reference(corpus::petersen()));
}

TEST_CASE("exact treedepth respects the vertex cap")
{
    CHECK_THROWS_AS(compute_treedepth_exact(corpus::path(30)), VertexCapExceeded);
    CHECK_NOTHROW(compute_treedepth_exact(corpus::path(30), 30));
}

TEST_CASE("exact treedepth matches the reference recursion")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        Graph g = corpus::random_graph(rng, n, 0.15 + 0.1 * (trial % 7));
        auto [d, t] = compute_treedepth_exact(g);
        CHECK(d == oracle::treedepth_reference(g));
        CHECK(t.height() == d);
        CHECK(verify_treedepth_decomposition(g, t));
    }
}

TEST_CASE("dfs heuristic")
{
    CHECK(dfs_treedepth_heuristic(Graph(5)).height() == 1);
    TreedepthDecomposition p7 = dfs_treedepth_heuristic(corpus::path(7));
    CHECK(p7.height() == 7);
    CHECK(oracle::treedepth_reference(corpus::path(7)) == 3);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = corpus::random_graph(rng, 1 + static_cast<int>(rng() % 12), 0.3);
        CHECK(verify_treedepth_decomposition(g, dfs_treedepth_heuristic(g)));
    }
}

TEST_CASE("decompose combines exact and heuristic components")
{
    Graph g(25);
    for (int v = 0; v + 1 < 22; ++v)
        g.add_edge(v, v + 1);
    g.add_edge(22, 23);
    TreedepthDecomposition t = decompose(g, 20);
    CHECK(verify_treedepth_decomposition(g, t));
    CHECK(t.height() == 22);
    TreedepthDecomposition exact = decompose(g, 25);
    CHECK(exact.height() == 5);
}

TEST_CASE("verify_treedepth_decomposition")
{
    Graph edge(2, {{0, 1}});
    CHECK(verify_treedepth_decomposition(edge, TreedepthDecomposition{{kRoot, 0}}));
    CHECK_FALSE(verify_treedepth_decomposition(corpus::complete(3),
                                               TreedepthDecomposition{{kRoot, kRoot, kRoot}}));
    CHECK_THROWS_AS(verify_treedepth_decomposition(edge, TreedepthDecomposition{{kRoot}}),
                    std::invalid_argument);
    CHECK_FALSE(TreedepthDecomposition{{1, 0}}.is_forest());
}

TEST_CASE("forest helpers")
{
    TreedepthDecomposition t{{kRoot, 0, 0, 1, kRoot}};
    CHECK(t.height() == 3);
    CHECK(t.roots() == std::vector<int>{0, 4});
    CHECK(t.depths() == std::vector<int>{1, 2, 2, 3, 1});
    CHECK(t.is_ancestor(0, 3));
    CHECK_FALSE(t.is_ancestor(2, 3));
    CHECK(t.subtree(1) == std::vector<int>{1, 3});
    CHECK(t.root_path(3) == std::vector<int>{0, 1, 3});
}

TEST_CASE("treedepth to tree decomposition")
{
    auto single = treedepth_to_tree_decomposition(TreedepthDecomposition{{kRoot}});
    CHECK(single.bags.size() == 1);
    CHECK(single.width() == 0);

    TreedepthDecomposition p3{{1, kRoot, 1}};
    auto w = treedepth_to_tree_decomposition(p3);
    CHECK(verify_tree_decomposition(corpus::path(3), w));
    CHECK(w.width() == 1);

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = corpus::random_graph(rng, 1 + static_cast<int>(rng() % 9), 0.35);
        auto [d, t] = compute_treedepth_exact(g);
        auto tw = treedepth_to_tree_decomposition(t);
        CHECK(verify_tree_decomposition(g, tw));
        CHECK(tw.width() <= d - 1);
    }
}

TEST_CASE("verify_tree_decomposition")
{
    Graph k4 = corpus::complete(4);
    TreeDecompositionWitness all{{kRoot}, {{0, 1, 2, 3}}};
    CHECK(verify_tree_decomposition(k4, all));
    CHECK(all.width() == 3);
    Graph p3 = corpus::path(3);
    CHECK_FALSE(verify_tree_decomposition(p3, TreeDecompositionWitness{{kRoot, 0}, {{0, 1}, {2}}}));
    // Vertex 0 appears in two bags not connected through bags containing it.
    CHECK_FALSE(verify_tree_decomposition(p3, TreeDecompositionWitness{{kRoot, 0, 1}, {{0, 1}, {1, 2}, {0}}}));
    auto ss = reduce_subset_sum({{1, 2, 3}, 6});
    CHECK(verify_tree_decomposition(build_primal_graph(ss.instance), ss.witness));
    CHECK(ss.witness.width() <= 2);
}

TEST_CASE("path length facts")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 9);
        Graph g = corpus::random_graph(rng, n, 0.3);
        const int td = compute_treedepth_exact(g).first;
        const int longest = oracle::longest_path_vertices(g);
        CHECK(td <= longest);
        CHECK(longest < (1 << td));

        Graph h(n + 1);
        for (auto [u, v] : g.edges())
            h.add_edge(u, v);
        for (int v = 0; v < n; ++v)
            if (rng() % 2)
                h.add_edge(v, n);
        CHECK(compute_treedepth_exact(h).first <= td + 1);
    }
}

TEST_CASE("graph text format")
{
    Graph g = parse_graph("4\n1 2\n2 3\n# comment\n3 4\n");
    CHECK(g == corpus::path(4));
    CHECK(parse_graph(serialize_graph(corpus::petersen())) == corpus::petersen());
    CHECK_THROWS(parse_graph("3\n1 5\n"));
}
