#include "tdilp/kernelizer.hpp"

#include <algorithm>
#include <functional>

namespace tdilp {

namespace {

std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v)
{
    return mix(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

std::uint64_t hash_integer(const Integer& a)
{
    if (auto small = to_int64(a))
        return mix(static_cast<std::uint64_t>(*small));
    return mix(std::hash<std::string>{}(a.str()));
}

std::uint64_t hash_multiset(std::vector<std::uint64_t> values)
{
    std::sort(values.begin(), values.end());
    std::uint64_t h = mix(values.size());
    for (auto v : values)
        h = combine(h, v);
    return h;
}

std::vector<const LinearConstraint*> touching_list(const IlpInstance& instance,
                                                   const std::set<VariableId>& vars)
{
    std::vector<const LinearConstraint*> out;
    for (const auto& c : instance.constraints())
        for (const auto& t : c.terms())
            if (vars.contains(t.first)) {
                out.push_back(&c);
                break;
            }
    return out;
}

/// Color refinement over the constraints touching `vars`; only variables
/// inside `vars` are anonymous, every other id is kept verbatim.
struct Coloring {
    std::map<VariableId, std::uint64_t> color;
    std::vector<std::uint64_t> constraint_signatures;
};

Coloring refine(const std::set<VariableId>& vars, const std::vector<const LinearConstraint*>& cons)
{
    constexpr int kRounds = 3;
    std::vector<std::uint64_t> external(cons.size());
    for (std::size_t a = 0; a < cons.size(); ++a) {
        std::uint64_t h = hash_integer(cons[a]->rhs());
        for (const auto& [id, c] : cons[a]->terms())
            if (!vars.contains(id))
                h = combine(combine(h, mix(static_cast<std::uint64_t>(id.value) + 1)), hash_integer(c));
        external[a] = h;
    }
    Coloring out;
    for (auto v : vars)
        out.color[v] = 1;
    std::vector<std::uint64_t> sig(cons.size());
    for (int round = 0; round <= kRounds; ++round) {
        for (std::size_t a = 0; a < cons.size(); ++a) {
            std::vector<std::uint64_t> inner;
            for (const auto& [id, c] : cons[a]->terms())
                if (vars.contains(id))
                    inner.push_back(combine(hash_integer(c), out.color[id]));
            sig[a] = combine(external[a], hash_multiset(std::move(inner)));
        }
        if (round == kRounds)
            break;
        std::map<VariableId, std::vector<std::uint64_t>> incident;
        for (std::size_t a = 0; a < cons.size(); ++a)
            for (const auto& [id, c] : cons[a]->terms())
                if (vars.contains(id))
                    incident[id].push_back(combine(sig[a], hash_integer(c)));
        for (auto& [v, col] : out.color)
            col = combine(col, hash_multiset(std::move(incident[v])));
    }
    out.constraint_signatures = std::move(sig);
    return out;
}

LinearConstraint rename(const LinearConstraint& c, const std::map<VariableId, VariableId>& delta)
{
    std::vector<Term> terms;
    terms.reserve(c.terms().size());
    for (const auto& [id, coef] : c.terms()) {
        auto it = delta.find(id);
        terms.emplace_back(it == delta.end() ? id : it->second, coef);
    }
    return LinearConstraint(std::move(terms), c.rhs());
}

}  // namespace

std::set<LinearConstraint> constraints_touching(const IlpInstance& instance,
                                                const std::set<VariableId>& vars)
{
    std::set<LinearConstraint> out;
    for (const auto* c : touching_list(instance, vars))
        out.insert(*c);
    return out;
}

std::set<VariableId> subtree_variables(const IlpInstance& instance, const TreedepthDecomposition& t,
                                       VariableId v)
{
    std::set<VariableId> out;
    for (int i : t.subtree(static_cast<int>(instance.index_of(v))))
        out.insert(instance.variables()[i].id);
    return out;
}

std::uint64_t subtree_fingerprint(const IlpInstance& instance, const std::set<VariableId>& subtree)
{
    auto cons = touching_list(instance, subtree);
    Coloring col = refine(subtree, cons);
    std::vector<std::uint64_t> colors;
    for (const auto& [v, c] : col.color)
        colors.push_back(c);
    std::uint64_t h = mix(subtree.size());
    h = combine(h, cons.size());
    h = combine(h, hash_multiset(std::move(colors)));
    return combine(h, hash_multiset(col.constraint_signatures));
}

std::optional<std::map<VariableId, VariableId>> find_renaming(const IlpInstance& instance,
                                                              const std::set<VariableId>& from,
                                                              const std::set<VariableId>& to,
                                                              bool use_fingerprint_colors)
{
    if (from.size() != to.size())
        return std::nullopt;
    auto from_cons = touching_list(instance, from);
    auto to_cons = touching_list(instance, to);
    if (from_cons.size() != to_cons.size())
        return std::nullopt;
    std::set<LinearConstraint> target;
    for (const auto* c : to_cons)
        target.insert(*c);

    // Candidate filter: refined colors, or plain incidence counts.
    std::map<VariableId, std::uint64_t> from_key;
    std::map<VariableId, std::uint64_t> to_key;
    if (use_fingerprint_colors) {
        from_key = refine(from, from_cons).color;
        to_key = refine(to, to_cons).color;
    } else {
        for (auto v : from)
            from_key[v] = 0;
        for (auto v : to)
            to_key[v] = 0;
        for (const auto* c : from_cons)
            for (const auto& t : c->terms())
                if (from.contains(t.first))
                    ++from_key[t.first];
        for (const auto* c : to_cons)
            for (const auto& t : c->terms())
                if (to.contains(t.first))
                    ++to_key[t.first];
    }
    {
        std::vector<std::uint64_t> a;
        std::vector<std::uint64_t> b;
        for (auto& [v, k] : from_key)
            a.push_back(k);
        for (auto& [v, k] : to_key)
            b.push_back(k);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return std::nullopt;
    }

    // Order source variables so constraints close as early as possible.
    std::map<VariableId, std::vector<std::size_t>> incident;
    for (std::size_t a = 0; a < from_cons.size(); ++a)
        for (const auto& t : from_cons[a]->terms())
            if (from.contains(t.first))
                incident[t.first].push_back(a);
    std::vector<VariableId> order;
    std::set<VariableId> placed;
    std::vector<int> closed_count(from_cons.size(), 0);
    while (order.size() < from.size()) {
        VariableId best{};
        long best_score = -1;
        for (auto v : from) {
            if (placed.contains(v))
                continue;
            long score = 0;
            for (auto a : incident[v])
                score += 1 + 4L * closed_count[a];
            if (score > best_score) {
                best_score = score;
                best = v;
            }
        }
        order.push_back(best);
        placed.insert(best);
        for (auto a : incident[best])
            ++closed_count[a];
    }
    std::map<VariableId, std::size_t> position;
    for (std::size_t i = 0; i < order.size(); ++i)
        position[order[i]] = i;
    std::vector<std::vector<std::size_t>> checks(order.size());
    for (std::size_t a = 0; a < from_cons.size(); ++a) {
        std::size_t last = 0;
        for (const auto& t : from_cons[a]->terms())
            if (from.contains(t.first))
                last = std::max(last, position[t.first]);
        checks[last].push_back(a);
    }

    std::vector<VariableId> targets(to.begin(), to.end());
    std::vector<char> used(targets.size(), 0);
    std::map<VariableId, VariableId> delta;

    std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
        if (k == order.size())
            return true;
        VariableId v = order[k];
        for (std::size_t j = 0; j < targets.size(); ++j) {
            if (used[j] || to_key[targets[j]] != from_key[v])
                continue;
            used[j] = 1;
            delta[v] = targets[j];
            bool ok = true;
            for (auto a : checks[k])
                if (!target.contains(rename(*from_cons[a], delta))) {
                    ok = false;
                    break;
                }
            if (ok && extend(k + 1))
                return true;
            delta.erase(v);
            used[j] = 0;
        }
        return false;
    };
    if (!extend(0))
        return std::nullopt;
    return delta;
}

namespace {

void require_siblings(const IlpInstance& instance, const TreedepthDecomposition& t, VariableId x,
                      VariableId y)
{
    auto ix = instance.index_of(x);
    auto iy = instance.index_of(y);
    if (x == y || t.parent.at(ix) != t.parent.at(iy))
        throw std::invalid_argument("test_equivalence: variables are not distinct siblings");
}

}  // namespace

std::optional<EquivalenceWitness> test_equivalence(const IlpInstance& instance,
                                                   const TreedepthDecomposition& t, VariableId x,
                                                   VariableId y)
{
    require_siblings(instance, t, x, y);
    auto tx = subtree_variables(instance, t, x);
    auto ty = subtree_variables(instance, t, y);
    if (subtree_fingerprint(instance, tx) != subtree_fingerprint(instance, ty))
        return std::nullopt;
    auto delta = find_renaming(instance, tx, ty, true);
    if (!delta)
        return std::nullopt;
    return EquivalenceWitness{x, y, std::move(*delta)};
}

std::optional<EquivalenceWitness> test_equivalence_certified(const IlpInstance& instance,
                                                             const TreedepthDecomposition& t,
                                                             VariableId x, VariableId y)
{
    require_siblings(instance, t, x, y);
    auto delta = find_renaming(instance, subtree_variables(instance, t, x),
                               subtree_variables(instance, t, y), false);
    if (!delta)
        return std::nullopt;
    return EquivalenceWitness{x, y, std::move(*delta)};
}

bool validate_witness(const IlpInstance& instance, const TreedepthDecomposition& t,
                      const EquivalenceWitness& w)
{
    auto tx = subtree_variables(instance, t, w.x);
    auto ty = subtree_variables(instance, t, w.y);
    std::set<VariableId> domain;
    std::set<VariableId> image;
    for (const auto& [a, b] : w.delta) {
        domain.insert(a);
        image.insert(b);
    }
    if (domain != tx || image != ty || w.delta.size() != tx.size())
        return false;
    std::set<LinearConstraint> renamed;
    for (const auto& c : constraints_touching(instance, tx))
        renamed.insert(rename(c, w.delta));
    return renamed == constraints_touching(instance, ty);
}

}  // namespace tdilp
