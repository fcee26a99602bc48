#include "tdilp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <functional>

namespace tdilp::oracle {

namespace {

struct DenseRow {
    std::vector<std::pair<int, std::int64_t>> terms;
    std::int64_t rhs = 0;
};

struct DenseSystem {
    int n = 0;
    std::vector<DenseRow> rows;
    std::vector<std::pair<int, std::int64_t>> objective;
};

std::int64_t small(const Integer& a)
{
    if (a > INT32_MAX || a < INT32_MIN)
        throw std::invalid_argument("oracle: coefficient does not fit in 32 bits");
    return static_cast<std::int64_t>(a);
}

DenseSystem densify(const IlpInstance& instance, bool zero_rhs)
{
    DenseSystem s;
    s.n = static_cast<int>(instance.num_variables());
    std::map<VariableId, int> position;
    for (int i = 0; i < s.n; ++i)
        position[instance.variables()[i].id] = i;
    for (const auto& c : instance.constraints()) {
        DenseRow r;
        for (const auto& [id, a] : c.terms())
            r.terms.emplace_back(position.at(id), small(a));
        r.rhs = zero_rhs ? 0 : small(c.rhs());
        s.rows.push_back(std::move(r));
    }
    for (const auto& [id, a] : instance.objective().terms())
        s.objective.emplace_back(position.at(id), small(a));
    return s;
}

std::uint64_t point_count(int n, std::int64_t box, std::uint64_t budget)
{
    const std::uint64_t side = static_cast<std::uint64_t>(2 * box + 1);
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > budget / side)
            throw BudgetExceeded("oracle: enumeration exceeds budget");
        total *= side;
    }
    return total;
}

void decode(std::uint64_t index, std::int64_t box, std::vector<std::int64_t>& x)
{
    const std::uint64_t side = static_cast<std::uint64_t>(2 * box + 1);
    for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
        x[i] = static_cast<std::int64_t>(index % side) - box;
        index /= side;
    }
}

bool satisfies(const DenseSystem& s, const std::vector<std::int64_t>& x)
{
    for (const auto& r : s.rows) {
        __int128 lhs = 0;
        for (const auto& [v, a] : r.terms)
            lhs += static_cast<__int128>(a) * x[v];
        if (lhs > r.rhs)
            return false;
    }
    return true;
}

__int128 objective_value(const DenseSystem& s, const std::vector<std::int64_t>& x)
{
    __int128 out = 0;
    for (const auto& [v, a] : s.objective)
        out += static_cast<__int128>(a) * x[v];
    return out;
}

BruteResult to_result(const IlpInstance& instance, const DenseSystem& s, std::int64_t box,
                      std::uint64_t index)
{
    BruteResult out;
    out.feasible = true;
    std::vector<std::int64_t> x(s.n);
    decode(index, box, x);
    out.value = static_cast<long long>(objective_value(s, x));
    for (int i = 0; i < s.n; ++i)
        out.assignment.emplace(instance.variables()[i].id, x[i]);
    return out;
}

}  // namespace

BruteResult brute_force_ilp(const IlpInstance& instance, std::int64_t box, std::uint64_t budget)
{
    DenseSystem s = densify(instance, false);
    const std::uint64_t total = point_count(s.n, box, budget);
    std::vector<std::int64_t> x(s.n);
    bool found = false;
    __int128 best = 0;
    std::uint64_t best_index = 0;
    for (std::uint64_t index = 0; index < total; ++index) {
        decode(index, box, x);
        if (!satisfies(s, x))
            continue;
        __int128 value = objective_value(s, x);
        if (!found || value > best) {
            found = true;
            best = value;
            best_index = index;
        }
    }
    if (!found)
        return {};
    return to_result(instance, s, box, best_index);
}

BruteResult brute_force_ilp_parallel(const IlpInstance& instance, std::int64_t box,
                                     std::uint64_t budget)
{
    DenseSystem s = densify(instance, false);
    const std::uint64_t total = point_count(s.n, box, budget);
    bool found = false;
    __int128 best = 0;
    std::uint64_t best_index = 0;
#pragma omp parallel
    {
        std::vector<std::int64_t> x(s.n);
        bool local_found = false;
        __int128 local_best = 0;
        std::uint64_t local_index = 0;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
            auto index = static_cast<std::uint64_t>(i);
            decode(index, box, x);
            if (!satisfies(s, x))
                continue;
            __int128 value = objective_value(s, x);
            if (!local_found || value > local_best) {
                local_found = true;
                local_best = value;
                local_index = index;
            }
        }
#pragma omp critical(tdilp_oracle_best)
        if (local_found &&
            (!found || local_best > best || (local_best == best && local_index < best_index))) {
            found = true;
            best = local_best;
            best_index = local_index;
        }
    }
    if (!found)
        return {};
    return to_result(instance, s, box, best_index);
}

bool brute_force_recession(const IlpInstance& instance, std::int64_t box, std::uint64_t budget)
{
    DenseSystem s = densify(instance, true);
    if (s.objective.empty())
        return false;
    const std::uint64_t total = point_count(s.n, box, budget);
    std::vector<std::int64_t> d(s.n);
    for (std::uint64_t index = 0; index < total; ++index) {
        decode(index, box, d);
        if (objective_value(s, d) >= 1 && satisfies(s, d))
            return true;
    }
    return false;
}

bool subset_sum_dp(const std::vector<std::int64_t>& values, std::int64_t target)
{
    if (target < 0)
        return false;
    std::vector<char> reach(static_cast<std::size_t>(target) + 1, 0);
    reach[0] = 1;
    for (auto q : values)
        for (std::int64_t t = target; t >= q && q >= 0; --t)
            if (reach[t - q])
                reach[t] = 1;
    return reach[target];
}

bool subset_sum_enumerate(const std::vector<std::int64_t>& values, std::int64_t target)
{
    const std::size_t n = values.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U)
                sum += values[i];
        if (sum == target)
            return true;
    }
    return false;
}

bool brute_three_coloring(const Graph& g)
{
    const int n = g.num_vertices();
    if (n > 12)
        throw BudgetExceeded("brute_three_coloring: more than 12 vertices");
    const auto edges = g.edges();
    std::vector<int> color(n, 0);
    for (;;) {
        bool proper = std::none_of(edges.begin(), edges.end(),
                                   [&](const auto& e) { return color[e.first] == color[e.second]; });
        if (proper)
            return true;
        int i = 0;
        while (i < n && color[i] == 2)
            color[i++] = 0;
        if (i == n)
            return false;
        ++color[i];
    }
}

bool brute_vertex_cover(const Graph& g, int nu)
{
    const int n = g.num_vertices();
    if (n > 16)
        throw BudgetExceeded("brute_vertex_cover: more than 16 vertices");
    const auto edges = g.edges();
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (std::popcount(mask) > nu)
            continue;
        bool covers = std::all_of(edges.begin(), edges.end(), [&](const auto& e) {
            return (mask >> e.first & 1U) || (mask >> e.second & 1U);
        });
        if (covers)
            return true;
    }
    return false;
}

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const Graph& g)
{
    std::vector<Mask> adj(g.num_vertices(), 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= Mask{1} << v;
        adj[v] |= Mask{1} << u;
    }
    return adj;
}

std::vector<Mask> split_components(const std::vector<Mask>& adj, Mask vertices)
{
    std::vector<Mask> out;
    while (vertices) {
        Mask seen = vertices & (~vertices + 1);
        Mask frontier = seen;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            Mask fresh = adj[v] & vertices & ~seen;
            seen |= fresh;
            frontier |= fresh;
        }
        out.push_back(seen);
        vertices &= ~seen;
    }
    return out;
}

int td_rec(const std::vector<Mask>& adj, Mask vertices)
{
    if (vertices == 0)
        return 0;
    if (std::popcount(vertices) == 1)
        return 1;
    auto comps = split_components(adj, vertices);
    if (comps.size() > 1) {
        int best = 0;
        for (Mask c : comps)
            best = std::max(best, td_rec(adj, c));
        return best;
    }
    int best = INT_MAX;
    for (Mask rest = vertices; rest; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        best = std::min(best, 1 + td_rec(adj, vertices & ~(Mask{1} << v)));
    }
    return best;
}

}  // namespace

int treedepth_reference(const Graph& g)
{
    if (g.num_vertices() > 12)
        throw BudgetExceeded("treedepth_reference: more than 12 vertices");
    auto adj = adjacency_masks(g);
    return td_rec(adj, g.num_vertices() == 0 ? 0 : (Mask{1} << g.num_vertices()) - 1);
}

int longest_path_vertices(const Graph& g)
{
    const int n = g.num_vertices();
    auto adj = adjacency_masks(g);
    int best = 0;
    std::function<void(int, Mask, int)> walk = [&](int v, Mask used, int length) {
        best = std::max(best, length);
        for (Mask next = adj[v] & ~used; next; next &= next - 1) {
            int w = std::countr_zero(next);
            walk(w, used | (Mask{1} << w), length + 1);
        }
    };
    for (int v = 0; v < n; ++v)
        walk(v, Mask{1} << v, 1);
    return best;
}

std::optional<std::map<VariableId, VariableId>> enumerate_renamings(const IlpInstance& instance,
                                                                    const std::set<VariableId>& from,
                                                                    const std::set<VariableId>& to)
{
    if (from.size() != to.size())
        return std::nullopt;
    auto touching = [&](const std::set<VariableId>& vars) {
        std::vector<const LinearConstraint*> out;
        for (const auto& c : instance.constraints())
            if (std::any_of(c.terms().begin(), c.terms().end(),
                            [&](const Term& t) { return vars.contains(t.first); }))
                out.push_back(&c);
        return out;
    };
    auto source = touching(from);
    std::set<LinearConstraint> target;
    for (const auto* c : touching(to))
        target.insert(*c);

    std::vector<VariableId> dom(from.begin(), from.end());
    std::vector<VariableId> img(to.begin(), to.end());
    do {
        std::map<VariableId, VariableId> delta;
        for (std::size_t i = 0; i < dom.size(); ++i)
            delta[dom[i]] = img[i];
        std::set<LinearConstraint> renamed;
        for (const auto* c : source) {
            std::vector<Term> terms;
            for (const auto& [id, a] : c->terms()) {
                auto it = delta.find(id);
                terms.emplace_back(it == delta.end() ? id : it->second, a);
            }
            renamed.emplace(std::move(terms), c->rhs());
        }
        if (renamed == target)
            return delta;
    } while (std::next_permutation(img.begin(), img.end()));
    return std::nullopt;
}

}  // namespace tdilp::oracle
