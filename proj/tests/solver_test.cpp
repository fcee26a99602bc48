#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "tdilp/oracle.hpp"
#include "tdilp/reductions.hpp"
#include "tdilp/solver.hpp"

#include <random>

using namespace tdilp;

namespace {

VariableId id(const IlpInstance& I, const char* name)
{
    return *I.find(name);
}

void check_against_oracle(const IlpInstance& I, const SolveOutcome& got, std::int64_t box,
                          std::int64_t recession_box)
{
    auto brute = oracle::brute_force_ilp(I, box);
    if (!brute.feasible) {
        CHECK(got.status == SolveStatus::Infeasible);
        return;
    }
    if (oracle::brute_force_recession(I, recession_box)) {
        CHECK(got.status == SolveStatus::Unbounded);
        return;
    }
    REQUIRE(got.status == SolveStatus::Optimal);
    CHECK(got.value == brute.value);
    CHECK(check_feasible(I, got.assignment));
    CHECK(evaluate_objective(I, got.assignment) == got.value);
}

}  // namespace

TEST_CASE("solution bound")
{
    CHECK(solution_bound(parse_instance("max: 0\nx <= 1\n")).radius == 1);
    CHECK(solution_bound(parse_instance("max: 0\nx + y <= 2\n")).radius == 2 * 2 * 2 * 2);
    CHECK(solution_bound(IlpInstance{}).radius == 0);
}

TEST_CASE("unit bound suffices for one variable and one row")
{
    const VariableId x{0};
    for (int c : {-1, 1})
        for (int b = -1; b <= 1; ++b)
            for (int s = -1; s <= 1; ++s) {
                std::vector<Variable> vars{{x, "x"}};
                std::vector<Term> obj;
                if (s != 0)
                    obj.emplace_back(x, s);
                IlpInstance I(vars, {LinearConstraint({{x, c}}, b)}, LinearObjective(obj));
                CHECK(solution_bound(I).radius == 1);
                check_against_oracle(I, solve_core(I), 10, 10);
            }
}

TEST_CASE("bounded_search examples")
{
    auto a = parse_instance("max: x\nx <= 5\n");
    auto ra = bounded_search(a, {10});
    REQUIRE(ra.status == SolveStatus::Optimal);
    CHECK(ra.value == 5);
    CHECK(ra.assignment.at(id(a, "x")) == 5);

    auto b = parse_instance("max: x\n2x <= 3\n");
    auto rb = bounded_search(b, {10});
    REQUIRE(rb.status == SolveStatus::Optimal);
    CHECK(rb.value == 1);

    auto c = parse_instance("max: 0\nx <= 0\n-x <= -1\n");
    CHECK(bounded_search(c, {10}).status == SolveStatus::Infeasible);

    auto unbounded = parse_instance("max: x\n-x <= 0\n");
    auto ru = bounded_search(unbounded, {7});
    REQUIRE(ru.status == SolveStatus::Optimal);
    CHECK(ru.value == 7);

    auto feas = parse_instance("max: 0\nx <= 5\n");
    auto rf = bounded_search(feas, {3});
    REQUIRE(rf.status == SolveStatus::Optimal);
    CHECK(rf.assignment.at(id(feas, "x")) == -3);
}

TEST_CASE("bounded_search returns the lexicographically smallest optimum")
{
    auto I = parse_instance("max: x + y\nx + y <= 2\n-x <= 0\n-y <= 0\n");
    auto r = bounded_search(I, {5});
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.assignment.at(id(I, "x")) == 0);
    CHECK(r.assignment.at(id(I, "y")) == 2);
}

TEST_CASE("bounded_search matches brute force inside the box")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        IlpInstance I = corpus::random_instance(rng, {1, 7, 2, false});
        for (bool propagate : {false, true}) {
            auto r = bounded_search(I, {1}, SearchOptions{propagate, 0});
            auto brute = oracle::brute_force_ilp(I, 1);
            REQUIRE((r.status == SolveStatus::Optimal) == brute.feasible);
            if (brute.feasible) {
                CHECK(r.value == brute.value);
                CHECK(r.assignment == brute.assignment);
            }
        }
    }
}

TEST_CASE("detect_unbounded")
{
    CHECK(detect_unbounded(parse_instance("max: x\n-x <= 0\n")));
    CHECK_FALSE(detect_unbounded(parse_instance("max: x\nx <= 5\n")));
    CHECK_FALSE(detect_unbounded(parse_instance("max: 0\nx + y <= 5\n-x <= 0\n")));
    CHECK(detect_unbounded(parse_instance("max: x - y\nx - 2y <= 3\n")));
    CHECK_FALSE(detect_unbounded(parse_instance("max: x - y\nx - y <= 3\n")));
}

TEST_CASE("solve_core examples")
{
    auto e = solve_core(IlpInstance{});
    CHECK(e.status == SolveStatus::Optimal);
    CHECK(e.value == 0);
    CHECK(e.assignment.empty());

    auto I = parse_instance("max: x + y\nx <= 2\ny <= 3\n-x <= 0\n-y <= 0\n");
    auto r = solve_core(I);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.value == 5);

    CHECK(solve_core(parse_instance("max: x\n-x <= 0\n")).status == SolveStatus::Unbounded);
    CHECK(solve_core(parse_instance("max: x\nx <= 0\n-x <= -1\n")).status == SolveStatus::Infeasible);
}

TEST_CASE("infeasible unbounded-looking instance stays infeasible")
{
    auto I = parse_instance("max: x\n-x <= 0\n2y <= 1\n-2y <= -1\n");
    CHECK(solve_core(I).status == SolveStatus::Infeasible);
}

TEST_CASE("solve_core matches brute force on two-variable instances")
{
    const auto rows = corpus::all_rows(2);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 2000; ++trial) {
        std::set<LinearConstraint> cs;
        const int m = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < m; ++i)
            cs.insert(rows[rng() % rows.size()]);
        std::vector<Term> obj;
        for (int v = 0; v < 2; ++v)
            if (int s = static_cast<int>(rng() % 5) - 2; s != 0)
                obj.emplace_back(VariableId{v}, s);
        IlpInstance I({{VariableId{0}, "x"}, {VariableId{1}, "y"}}, cs, LinearObjective(obj));
        SolveOptions opts;
        opts.search.propagate = trial % 2 == 1;
        check_against_oracle(I, solve_core(I, opts), 20, 6);
    }
}

TEST_CASE("feasibility in the certified box equals feasibility in a ten times larger box")
{
    const auto rows = corpus::all_rows(2);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 400; ++trial) {
        std::set<LinearConstraint> cs;
        const int m = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < m; ++i)
            cs.insert(rows[rng() % rows.size()]);
        IlpInstance I({{VariableId{0}, "x"}, {VariableId{1}, "y"}}, cs, LinearObjective{});
        const Integer b = solution_bound(I).radius;
        auto small = bounded_search(I, {b});
        auto large = bounded_search(I, {b * 10});
        CHECK(small.status == large.status);
    }
}

TEST_CASE("solve with kernelization matches brute force on random instances")
{
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 150; ++trial) {
        IlpInstance I = corpus::random_instance(rng, {1, 10, 2, trial % 2 == 0});
        auto r = solve(I);
        check_against_oracle(I, r, 1, 1);
        CHECK(r.original_vars == I.num_variables());
        CHECK(r.kernel_vars <= r.original_vars);
        auto plain = solve(I, std::nullopt, SolveOptions{std::nullopt, false, {}, {}});
        CHECK(plain.status == r.status);
        if (r.status == SolveStatus::Optimal)
            CHECK(plain.value == r.value);
    }
}

TEST_CASE("replicated blocks solve through a small kernel")
{
    InstanceBuilder b;
    for (int i = 0; i < 50; ++i) {
        const std::string x = "x" + std::to_string(i), xp = "xp" + std::to_string(i);
        b.add_le({{x, 1}, {xp, 1}}, 1);
        b.add_le({{x, -1}}, 0);
    }
    IlpInstance I = b.build();
    Assignment zero;
    for (const auto& v : I.variables())
        zero[v.id] = 0;
    REQUIRE(check_feasible(I, zero));
    auto r = solve(I);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.kernel_vars == 2);
    CHECK(r.original_vars == 100);
    CHECK(check_feasible(I, r.assignment));
}

TEST_CASE("independent components are solved separately")
{
    auto I = parse_instance("max: 3x + y\nx + y <= 4\n-x <= 0\ny >= 0\n2x - y = 1\nint: w\n");
    SolveOptions opts;
    opts.kernel = false;
    opts.search.node_limit = 10000;
    auto r = solve_core(I, opts);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.value == 4);
    CHECK(r.assignment.at(id(I, "w")) == -r.box);
    CHECK(check_feasible(I, r.assignment));

    auto mixed = parse_instance("max: x + y\n-x <= 0\ny <= 3\n");
    CHECK(solve_core(mixed).status == SolveStatus::Unbounded);
    auto dead = parse_instance("max: x + y\n-x <= 0\ny <= 0\n-y <= -1\n");
    CHECK(solve_core(dead).status == SolveStatus::Infeasible);
}

TEST_CASE("subset sum pipeline is feasible")
{
    auto red = reduce_subset_sum({{1, 2, 3}, 6});
    CHECK(solve(red.instance).status == SolveStatus::Optimal);
    auto no = reduce_subset_sum({{2, 4}, 5});
    CHECK(solve(no.instance).status == SolveStatus::Infeasible);
}

TEST_CASE("user box below the certified bound")
{
    auto far = parse_instance("max: 0\n-x <= -5\n");
    SolveOptions opts;
    opts.bound = Integer(2);
    auto r = solve_core(far, opts);
    CHECK(r.status == SolveStatus::BoundExhausted);
    CHECK(r.box == 2);

    auto contra = parse_instance("max: 0\nx <= 0\n-x <= -1\n");
    opts.bound = Integer(1000);
    CHECK(solve_core(contra, opts).status == SolveStatus::Infeasible);
}

TEST_CASE("node limit aborts the search")
{
    auto I = parse_instance("max: x + y + z\nx + y + z <= 10\n-x <= 0\n-y <= 0\n-z <= 0\n");
    SolveOptions opts;
    opts.kernel = false;
    opts.search.node_limit = 1;
    CHECK_THROWS_AS(solve_core(I, opts), SearchLimitExceeded);
}

TEST_CASE("results are deterministic")
{
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        IlpInstance I = corpus::random_instance(rng, {4, 12, 2, false});
        auto a = solve(I);
        auto b = solve(I);
        CHECK(a.status == b.status);
        CHECK(a.value == b.value);
        CHECK(a.assignment == b.assignment);
    }
}

TEST_CASE("status names")
{
    CHECK(status_name(SolveStatus::Optimal) == "optimal");
    CHECK(status_name(SolveStatus::Infeasible) == "infeasible");
    CHECK(status_name(SolveStatus::Unbounded) == "unbounded");
    CHECK(status_name(SolveStatus::BoundExhausted) == "bound_exhausted");
}
