#include "tdilp/kernelizer.hpp"

#include <algorithm>
#include <climits>

namespace tdilp {

namespace {

struct Candidate {
    VariableId root;
    std::set<VariableId> vars;
    std::uint64_t fingerprint = 0;
};

bool objective_free(const IlpInstance& instance, const std::set<VariableId>& vars)
{
    for (const auto& [id, c] : instance.objective().terms())
        if (vars.contains(id))
            return false;
    return true;
}

std::vector<int> child_positions(const TreedepthDecomposition& t, std::optional<int> z)
{
    if (!z)
        return t.roots();
    std::vector<int> out;
    for (int v = 0; v < t.size(); ++v)
        if (t.parent[v] == *z)
            out.push_back(v);
    return out;
}

}  // namespace

std::optional<EquivalenceWitness> find_equivalent_pair(const IlpInstance& instance,
                                                       const TreedepthDecomposition& t,
                                                       std::optional<VariableId> z, bool parallel)
{
    std::optional<int> zpos;
    if (z)
        zpos = static_cast<int>(instance.index_of(*z));
    std::vector<Candidate> cands;
    for (int pos : child_positions(t, zpos)) {
        VariableId id = instance.variables()[pos].id;
        auto vars = subtree_variables(instance, t, id);
        if (objective_free(instance, vars))
            cands.push_back({id, std::move(vars), 0});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.root < b.root; });
    const int n = static_cast<int>(cands.size());
    if (n < 2)
        return std::nullopt;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < n; ++i)
        cands[i].fingerprint = subtree_fingerprint(instance, cands[i].vars);

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cands[i].fingerprint == cands[j].fingerprint &&
                cands[i].vars.size() == cands[j].vars.size())
                pairs.emplace_back(i, j);
    const int np = static_cast<int>(pairs.size());

    if (!parallel) {
        for (const auto& [i, j] : pairs)
            if (auto delta = find_renaming(instance, cands[i].vars, cands[j].vars))
                return EquivalenceWitness{cands[i].root, cands[j].root, std::move(*delta)};
        return std::nullopt;
    }

    std::vector<std::optional<std::map<VariableId, VariableId>>> found(pairs.size());
    int best = INT_MAX;
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < np; ++p) {
        int current;
#pragma omp atomic read
        current = best;
        if (p > current)
            continue;
        auto delta = find_renaming(instance, cands[pairs[p].first].vars, cands[pairs[p].second].vars);
        if (delta) {
            found[p] = std::move(delta);
#pragma omp critical(tdilp_best_pair)
            best = std::min(best, p);
        }
    }
    if (best == INT_MAX)
        return std::nullopt;
    const auto& [i, j] = pairs[best];
    return EquivalenceWitness{cands[i].root, cands[j].root, std::move(*found[best])};
}

std::optional<PruneResult> prune_step(const IlpInstance& instance, const TreedepthDecomposition& t,
                                      std::optional<VariableId> z, bool parallel)
{
    auto w = find_equivalent_pair(instance, t, z, parallel);
    if (!w)
        return std::nullopt;
    auto omitted = subtree_variables(instance, t, w->y);
    IlpInstance reduced = omit_variables(instance, omitted);

    std::vector<int> new_index(instance.num_variables(), -1);
    int next = 0;
    for (std::size_t i = 0; i < instance.num_variables(); ++i)
        if (!omitted.contains(instance.variables()[i].id))
            new_index[i] = next++;
    TreedepthDecomposition td;
    td.parent.assign(next, kRoot);
    for (std::size_t i = 0; i < instance.num_variables(); ++i)
        if (new_index[i] >= 0 && t.parent[i] != kRoot)
            td.parent[new_index[i]] = new_index[t.parent[i]];

    TraceStep step{std::vector<VariableId>(omitted.begin(), omitted.end()), w->x,
                   std::move(w->delta)};
    return PruneResult{std::move(reduced), std::move(td), std::move(step)};
}

KernelResult kernelize(const IlpInstance& instance, const TreedepthDecomposition& t,
                       const KernelOptions& options)
{
    if (!verify_treedepth_decomposition(build_primal_graph(instance), t))
        throw std::invalid_argument("kernelize: decomposition is not valid for the primal graph");

    KernelResult result{instance, t, KernelTrace{instance.variables(), {}}};

    std::vector<int> depth = t.depths();
    std::vector<VariableId> order;
    for (int v = 0; v < t.size(); ++v)
        order.push_back(instance.variables()[v].id);
    std::stable_sort(order.begin(), order.end(), [&](VariableId a, VariableId b) {
        return depth[instance.index_of(a)] > depth[instance.index_of(b)];
    });

    auto exhaust = [&](std::optional<VariableId> z) {
        while (auto r = prune_step(result.instance, result.decomposition, z, options.parallel)) {
            result.instance = std::move(r->instance);
            result.decomposition = std::move(r->decomposition);
            result.trace.steps.push_back(std::move(r->step));
        }
    };
    for (VariableId z : order)
        if (result.instance.has_variable(z))
            exhaust(z);

    if (options.virtual_root) {
        std::set<int> objective_trees;
        for (const auto& [id, c] : result.instance.objective().terms())
            objective_trees.insert(
                result.decomposition.root_path(static_cast<int>(result.instance.index_of(id))).front());
        if (objective_trees.size() <= 1)
            exhaust(std::nullopt);
    }
    return result;
}

Assignment lift_solution(const KernelTrace& trace, const Assignment& kernel_solution)
{
    std::set<VariableId> all;
    for (const auto& v : trace.variables)
        all.insert(v.id);
    std::set<VariableId> kernel_vars = all;
    for (const auto& step : trace.steps)
        for (auto v : step.omitted)
            kernel_vars.erase(v);
    for (auto v : kernel_vars)
        if (!kernel_solution.contains(v))
            throw TraceMismatch("lift_solution: kernel variable missing from assignment");
    for (const auto& [v, value] : kernel_solution)
        if (!kernel_vars.contains(v))
            throw TraceMismatch("lift_solution: assignment mentions a variable outside the kernel");

    Assignment alpha = kernel_solution;
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        std::map<VariableId, VariableId> inverse;
        for (const auto& [a, b] : it->delta)
            inverse[b] = a;
        for (auto z : it->omitted) {
            auto src = inverse.find(z);
            if (src == inverse.end())
                throw TraceMismatch("lift_solution: omitted variable has no preimage");
            auto value = alpha.find(src->second);
            if (value == alpha.end())
                throw TraceMismatch("lift_solution: preimage has no value");
            alpha[z] = value->second;
        }
    }
    return alpha;
}

namespace {

constexpr unsigned kExponentCap = 1u << 20;

/// base^exp, or nullopt once the value exceeds `cap`.
BoundValue capped_pow(const Integer& base, int exp, const Integer& cap)
{
    Integer out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
        if (out > cap)
            return std::nullopt;
    }
    return out;
}

BoundValue capped(Integer v)
{
    if (v != 0 && boost::multiprecision::msb(v) >= kExponentCap)
        return std::nullopt;
    return v;
}

}  // namespace

BoundValue num_classes(const Integer& ell, int k, int i, const BoundValue& m)
{
    if (!m)
        return std::nullopt;
    const Integer cap = kExponentCap;
    auto a = capped_pow(2 * ell + 1, k + 1, cap);
    auto b = capped_pow(*m, i, cap);
    if (!a || !b || *a * *b > cap)
        return std::nullopt;
    unsigned exponent = static_cast<unsigned>(*a * *b);
    return capped(Integer(1) << exponent);
}

KernelBounds compute_bounds(const Integer& ell, int k)
{
    if (ell < 0 || k < 1)
        throw std::invalid_argument("compute_bounds: need ell >= 0 and k >= 1");
    KernelBounds b;
    b.ell = ell;
    b.k = k;
    b.d.assign(k + 1, Integer(0));
    b.e.assign(k + 1, Integer(0));
    b.d[k] = Integer(0);
    b.e[k] = Integer(1);
    for (int i = k - 1; i >= 1; --i) {
        auto c = num_classes(ell, k, i, b.e[i + 1]);
        if (!c) {
            b.d[i] = std::nullopt;
            b.e[i] = std::nullopt;
            continue;
        }
        b.d[i] = capped(*c + 1);
        if (b.d[i] && b.e[i + 1])
            b.e[i] = capped(*b.d[i] * *b.e[i + 1] + 1);
        else
            b.e[i] = std::nullopt;
    }
    return b;
}

}  // namespace tdilp
