#include "tdilp/reductions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tdilp {

std::int64_t nth_prime(int i)
{
    if (i < 1)
        throw std::invalid_argument("nth_prime: index must be positive");
    std::size_t limit = 32;
    for (;;) {
        std::vector<char> composite(limit + 1, 0);
        int count = 0;
        for (std::size_t p = 2; p <= limit; ++p) {
            if (composite[p])
                continue;
            if (++count == i)
                return static_cast<std::int64_t>(p);
            for (std::size_t q = p * p; q <= limit; q += p)
                composite[q] = 1;
        }
        limit *= 2;
    }
}

namespace {

using Lin = std::vector<std::pair<std::string, Integer>>;

std::string vname(int v)
{
    return std::to_string(v + 1);
}

}  // namespace

IlpInstance reduce_vertex_cover(const Graph& g, int nu)
{
    const int n = g.num_vertices();
    if (nu < 0 || nu > n)
        throw std::invalid_argument("reduce_vertex_cover: budget out of range");
    InstanceBuilder b;
    Lin all;
    for (int v = 0; v < n; ++v) {
        std::string name = "v" + vname(v);
        b.add_ge({{name, 1}}, 0);
        b.add_le({{name, 1}}, 1);
        all.emplace_back(name, 1);
    }
    for (auto [u, v] : g.edges())
        b.add_ge({{"v" + vname(u), 1}, {"v" + vname(v), 1}}, 1);
    Lin budget{{"x", 1}};
    for (int i = 1; i <= nu; ++i) {
        std::string name = "b" + std::to_string(i);
        b.add_eq({{name, 1}}, 1);
        budget.emplace_back(name, -1);
    }
    b.add_eq(budget, 0);
    if (!all.empty()) {
        all.emplace_back("x", -1);
        b.add_le(all, 0);
    }
    return b.build();
}

namespace {

struct ColoringNames {
    static std::string g(int j) { return "g" + std::to_string(j); }
    static std::string vertex(char kind, int i, int j)
    {
        return std::string(1, kind) + "_" + vname(i) + "_" + std::to_string(j);
    }
    static std::string edge(char kind, std::pair<int, int> e, int v, int j)
    {
        return std::string(1, kind) + "e_" + vname(e.first) + "_" + vname(e.second) + "_" + vname(v) +
               "_" + std::to_string(j);
    }
};

}  // namespace

ThreeColoringReduction reduce_three_coloring(const Graph& g)
{
    using N = ColoringNames;
    const int n = g.num_vertices();
    const auto edges = g.edges();
    InstanceBuilder b;

    // Declaration order fixes ids: branching visits vertex selectors first.
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= 3; ++j)
            b.variable(N::vertex('u', i, j));
    for (auto e : edges)
        for (int j = 1; j <= 3; ++j)
            for (int v : {e.first, e.second})
                b.variable(N::edge('u', e, v, j));
    for (int j = 1; j <= 3; ++j)
        b.variable(N::g(j));
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= 3; ++j)
            b.variable(N::vertex('r', i, j));
    for (auto e : edges)
        for (int j = 1; j <= 3; ++j)
            for (int v : {e.first, e.second})
                b.variable(N::edge('r', e, v, j));
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= 3; ++j)
            b.variable(N::vertex('m', i, j));
    for (auto e : edges)
        for (int j = 1; j <= 3; ++j)
            for (int v : {e.first, e.second})
                b.variable(N::edge('m', e, v, j));

    auto remainder_block = [&](const std::string& gj, const std::string& m, const std::string& r,
                               const std::string& u, Integer p) {
        b.add_ge({{m, 1}}, 0);
        b.add_ge({{r, 1}}, 0);
        b.add_le({{r, 1}}, p - 1);
        b.add_ge({{u, 1}}, 0);
        b.add_le({{u, 1}}, 1);
        b.add_eq({{gj, 1}, {m, -p}, {r, -1}}, 0);
        b.add_le({{u, 1}, {r, -1}}, 0);
        b.add_le({{r, 1}, {u, -(p - 1)}}, 0);
    };

    for (int j = 1; j <= 3; ++j)
        b.add_ge({{N::g(j), 1}}, 0);
    for (int i = 0; i < n; ++i) {
        Integer p = nth_prime(i + 1);
        Lin sum;
        for (int j = 1; j <= 3; ++j) {
            remainder_block(N::g(j), N::vertex('m', i, j), N::vertex('r', i, j), N::vertex('u', i, j), p);
            sum.emplace_back(N::vertex('u', i, j), 1);
        }
        b.add_eq(sum, 2);
    }
    for (auto e : edges)
        for (int j = 1; j <= 3; ++j) {
            for (int v : {e.first, e.second})
                remainder_block(N::g(j), N::edge('m', e, v, j), N::edge('r', e, v, j),
                                N::edge('u', e, v, j), nth_prime(v + 1));
            b.add_ge({{N::edge('u', e, e.first, j), 1}, {N::edge('u', e, e.second, j), 1}}, 1);
        }

    ThreeColoringReduction out{b.build(), {}};
    const IlpInstance& inst = out.instance;
    auto pos = [&](const std::string& name) { return static_cast<int>(inst.index_of(*inst.find(name))); };
    auto& parent = out.decomposition.parent;
    parent.assign(inst.num_variables(), kRoot);
    parent[pos(N::g(2))] = pos(N::g(1));
    parent[pos(N::g(3))] = pos(N::g(2));
    for (int i = 0; i < n; ++i) {
        int u1 = pos(N::vertex('u', i, 1));
        int u2 = pos(N::vertex('u', i, 2));
        int u3 = pos(N::vertex('u', i, 3));
        parent[u1] = pos(N::g(3));
        parent[u2] = u1;
        parent[u3] = u2;
        for (int j = 1; j <= 3; ++j) {
            parent[pos(N::vertex('r', i, j))] = u3;
            parent[pos(N::vertex('m', i, j))] = pos(N::vertex('r', i, j));
        }
    }
    for (auto e : edges)
        for (int j = 1; j <= 3; ++j) {
            int top = pos(N::edge('u', e, e.first, j));
            int second = pos(N::edge('u', e, e.second, j));
            parent[top] = pos(N::g(3));
            parent[second] = top;
            for (int v : {e.first, e.second}) {
                parent[pos(N::edge('r', e, v, j))] = second;
                parent[pos(N::edge('m', e, v, j))] = pos(N::edge('r', e, v, j));
            }
        }
    return out;
}

Assignment encode_three_coloring(const Graph& g, const IlpInstance& reduction,
                                 const std::vector<int>& colors)
{
    using N = ColoringNames;
    const int n = g.num_vertices();
    if (static_cast<int>(colors.size()) != n)
        throw std::invalid_argument("encode_three_coloring: one color per vertex expected");
    Integer gv[4] = {0, 1, 1, 1};
    for (int v = 0; v < n; ++v)
        gv[colors[v] + 1] *= nth_prime(v + 1);

    std::map<std::string, Integer> values;
    for (int j = 1; j <= 3; ++j)
        values[N::g(j)] = gv[j];
    auto block = [&](const std::string& m, const std::string& r, const std::string& u, int j, int v) {
        Integer p = nth_prime(v + 1);
        values[m] = gv[j] / p;
        values[r] = gv[j] % p;
        values[u] = values[r] > 0 ? 1 : 0;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= 3; ++j)
            block(N::vertex('m', i, j), N::vertex('r', i, j), N::vertex('u', i, j), j, i);
    for (auto e : g.edges())
        for (int j = 1; j <= 3; ++j)
            for (int v : {e.first, e.second})
                block(N::edge('m', e, v, j), N::edge('r', e, v, j), N::edge('u', e, v, j), j, v);

    Assignment out;
    for (const auto& [name, value] : values)
        out.emplace(*reduction.find(name), value);
    return out;
}

std::vector<int> bit_set(const Integer& q)
{
    if (q < 1)
        throw std::invalid_argument("bit_set: q must be positive");
    std::vector<int> out;
    for (unsigned i = 0; i <= boost::multiprecision::msb(q); ++i)
        if (boost::multiprecision::bit_test(q, i))
            out.push_back(static_cast<int>(i));
    return out;
}

int b_max(const Integer& q)
{
    return bit_set(q).back();
}

namespace {

struct GadgetNames {
    const GadgetSpec& spec;

    std::string h(int i) const { return "h" + spec.prefix + "_" + std::to_string(i); }
    std::string hp(int i) const { return "hp" + spec.prefix + "_" + std::to_string(i); }
    std::string z(int i) const { return "z" + spec.prefix + "_" + std::to_string(i); }
};

/// Bags of the gadget's width-2 decomposition in chain order, plus leaves
/// given as (chain position, bag).
struct GadgetBags {
    std::vector<std::vector<std::string>> chain;
    std::vector<std::pair<int, std::vector<std::string>>> leaves;
};

GadgetBags gadget_bags(const GadgetSpec& spec)
{
    GadgetNames nm{spec};
    const int m = b_max(spec.q);
    GadgetBags out;
    if (spec.variant == GadgetVariant::Open)
        out.chain.push_back({spec.x, nm.z(0), nm.h(0)});
    else
        out.chain.push_back({nm.z(0), nm.h(0)});
    for (int i = 0; i < m; ++i) {
        out.chain.push_back({nm.z(i), nm.h(i), nm.h(i + 1)});
        out.leaves.emplace_back(static_cast<int>(out.chain.size()) - 1,
                                std::vector<std::string>{nm.h(i), nm.hp(i), nm.h(i + 1)});
        out.chain.push_back({nm.z(i), nm.h(i + 1), nm.z(i + 1)});
    }
    out.chain.push_back({nm.z(m), spec.y});
    return out;
}

}  // namespace

void build_gadget(InstanceBuilder& b, const GadgetSpec& spec)
{
    if (spec.q < 1)
        throw std::invalid_argument("build_gadget: q must be positive");
    if (spec.variant == GadgetVariant::Open && spec.x.empty())
        throw std::invalid_argument("build_gadget: open gadget needs an input variable");
    GadgetNames nm{spec};
    const auto bits = bit_set(spec.q);
    const int m = bits.back();
    auto in_b = [&](int i) { return std::binary_search(bits.begin(), bits.end(), i); };

    if (spec.variant == GadgetVariant::Closed) {
        b.add_eq({{nm.h(0), 1}}, 1);
    } else {
        b.add_ge({{nm.h(0), 1}}, 0);
        b.add_le({{nm.h(0), 1}}, 1);
    }
    for (int i = 0; i < m; ++i) {
        b.add_eq({{nm.hp(i), 1}, {nm.h(i), -1}}, 0);
        b.add_eq({{nm.h(i + 1), 1}, {nm.h(i), -1}, {nm.hp(i), -1}}, 0);
    }
    Lin z0{{nm.z(0), 1}};
    if (in_b(0))
        z0.emplace_back(nm.h(0), -1);
    if (spec.variant == GadgetVariant::Open)
        z0.emplace_back(spec.x, -1);
    b.add_eq(z0, 0);
    for (int i = 0; i < m; ++i) {
        Lin step{{nm.z(i + 1), 1}, {nm.z(i), -1}};
        if (in_b(i + 1))
            step.emplace_back(nm.h(i + 1), -1);
        b.add_eq(step, 0);
    }
    b.add_eq({{spec.y, 1}, {nm.z(m), -1}}, 0);
}

IlpInstance build_gadget(const GadgetSpec& spec)
{
    InstanceBuilder b;
    build_gadget(b, spec);
    return b.build();
}

SubsetSumReduction reduce_subset_sum(const SubsetSumInstance& s)
{
    const int n = static_cast<int>(s.values.size());
    if (n < 1)
        throw std::invalid_argument("reduce_subset_sum: need at least one value");
    if (s.target < 1 || std::any_of(s.values.begin(), s.values.end(), [](const Integer& q) { return q < 1; }))
        throw std::invalid_argument("reduce_subset_sum: values and target must be positive");

    auto y = [](int i) { return "y_" + std::to_string(i); };
    std::vector<GadgetSpec> specs;
    for (int i = 1; i <= n; ++i) {
        GadgetSpec g{s.values[i - 1], i == 1 ? GadgetVariant::HalfOpen : GadgetVariant::Open,
                     std::to_string(i), i == 1 ? "" : y(i - 1), y(i)};
        specs.push_back(std::move(g));
    }
    specs.push_back({s.target, GadgetVariant::Closed, std::to_string(n + 1), "", y(n)});

    InstanceBuilder b;
    for (const auto& spec : specs)
        build_gadget(b, spec);
    SubsetSumReduction out{b.build(), {}};

    const IlpInstance& inst = out.instance;
    auto bag = [&](const std::vector<std::string>& names) {
        std::vector<int> v;
        for (const auto& name : names)
            v.push_back(static_cast<int>(inst.index_of(*inst.find(name))));
        std::sort(v.begin(), v.end());
        return v;
    };
    auto& tree = out.witness.tree;
    auto& bags = out.witness.bags;
    auto add = [&](const std::vector<std::string>& names, int parent) {
        tree.push_back(parent);
        bags.push_back(bag(names));
        return static_cast<int>(tree.size()) - 1;
    };

    int last_end = kRoot;
    for (int i = 0; i < n; ++i) {
        GadgetBags gb = gadget_bags(specs[i]);
        std::vector<int> ids;
        int parent = last_end;
        for (const auto& c : gb.chain)
            parent = add(c, parent), ids.push_back(parent);
        for (const auto& [at, leaf] : gb.leaves)
            add(leaf, ids[at]);
        last_end = ids.back();
    }
    GadgetBags closed = gadget_bags(specs.back());
    std::vector<int> ids(closed.chain.size());
    int parent = last_end;
    for (int k = static_cast<int>(closed.chain.size()) - 1; k >= 0; --k)
        parent = ids[k] = add(closed.chain[k], parent);
    for (const auto& [at, leaf] : closed.leaves)
        add(leaf, ids[at]);
    return out;
}

}  // namespace tdilp
