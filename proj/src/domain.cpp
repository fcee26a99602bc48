#include "tdilp/domain.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tdilp {

namespace {

using Terms = std::vector<std::pair<int, Integer>>;

Terms negated(const Terms& terms)
{
    Terms out = terms;
    for (auto& t : out)
        t.second = -t.second;
    return out;
}

std::uint64_t full_mask(int q)
{
    return q >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q) - 1;
}

bool has_bit(std::uint64_t mask, int r)
{
    return (mask >> r) & 1U;
}

}  // namespace

int Model::add_row(Row row)
{
    int index = static_cast<int>(rows.size());
    for (const auto& t : row.terms)
        rows_of_var[t.first].push_back(index);
    rows.push_back(std::move(row));
    partner.push_back(-1);
    return index;
}

Model build_model(const IlpInstance& instance)
{
    Model model;
    model.num_vars = static_cast<int>(instance.num_variables());
    model.rows_of_var.resize(model.num_vars);
    model.slots_of_var.resize(model.num_vars);

    std::vector<Row> raw;
    std::map<std::pair<Terms, Integer>, int> raw_index;
    for (const auto& c : instance.constraints()) {
        Row r;
        for (const auto& [id, coef] : c.terms())
            r.terms.emplace_back(static_cast<int>(instance.index_of(id)), coef);
        std::sort(r.terms.begin(), r.terms.end());
        r.rhs = c.rhs();
        raw_index.emplace(std::make_pair(r.terms, r.rhs), static_cast<int>(raw.size()));
        raw.push_back(std::move(r));
    }

    std::map<std::pair<Terms, Integer>, int> seen;
    std::vector<int> model_index(raw.size(), -1);
    std::vector<int> raw_partner(raw.size(), -1);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto it = raw_index.find({negated(raw[i].terms), -raw[i].rhs});
        if (it != raw_index.end())
            raw_partner[i] = it->second;

        Integer g = 0;
        for (const auto& t : raw[i].terms)
            g = gcd_value(g, t.second);
        Row r = raw[i];
        if (g > 1) {
            if (raw_partner[i] >= 0 && r.rhs % g != 0)
                model.trivially_infeasible = true;
            for (auto& t : r.terms)
                t.second /= g;
            r.rhs = floor_div(r.rhs, g);
        }
        auto key = std::make_pair(r.terms, r.rhs);
        auto found = seen.find(key);
        if (found != seen.end()) {
            model_index[i] = found->second;
            continue;
        }
        model_index[i] = model.add_row(std::move(r));
        seen.emplace(std::move(key), model_index[i]);
    }
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (raw_partner[i] >= 0)
            model.partner[model_index[i]] = model_index[raw_partner[i]];

    std::map<std::pair<int, int>, int> slot_of;
    auto slot = [&](int var, int q) {
        auto [it, fresh] = slot_of.emplace(std::make_pair(var, q), static_cast<int>(model.slot_var.size()));
        if (fresh) {
            model.slot_var.push_back(var);
            model.slot_modulus.push_back(q);
            model.slots_of_var[var].push_back(it->second);
            model.congruences_of_slot.emplace_back();
        }
        return it->second;
    };

    for (int i = 0; i < static_cast<int>(model.rows.size()); ++i) {
        int j = model.partner[i];
        if (j < 0 || j < i)
            continue;
        const Row& row = model.rows[i];
        for (std::size_t k = 0; k < row.terms.size(); ++k) {
            Integer a = abs_value(row.terms[k].second);
            if (a < 2 || a > kMaxModulus)
                continue;
            int q = static_cast<int>(a);
            std::vector<std::pair<int, int>> residual;
            for (std::size_t o = 0; o < row.terms.size(); ++o) {
                if (o == k)
                    continue;
                int c = mod_small(row.terms[o].second, q);
                if (c != 0)
                    residual.emplace_back(row.terms[o].first, c);
            }
            int rhs = mod_small(row.rhs, q);
            if (residual.empty()) {
                if (rhs != 0)
                    model.trivially_infeasible = true;
                continue;
            }
            if (residual.size() > 2)
                continue;
            Congruence cg;
            cg.modulus = q;
            cg.rhs = rhs;
            for (const auto& [var, c] : residual)
                cg.terms.emplace_back(slot(var, q), c);
            int index = static_cast<int>(model.congruences.size());
            for (const auto& t : cg.terms)
                model.congruences_of_slot[t.first].push_back(index);
            model.congruences.push_back(std::move(cg));
        }
    }
    return model;
}

Domain::Domain(const Model& model, const Integer& radius)
    : lo(model.num_vars, -radius), hi(model.num_vars, radius)
{
    residues.reserve(model.slot_var.size());
    for (int q : model.slot_modulus)
        residues.push_back(full_mask(q));
}

bool Domain::all_fixed() const
{
    for (std::size_t v = 0; v < lo.size(); ++v)
        if (lo[v] != hi[v])
            return false;
    return true;
}

namespace {

class Propagator {
public:
    Propagator(const Model& model, Domain& domain) : model_(model), d_(domain) {}

    bool run(int round_cap)
    {
        std::vector<char> rows(model_.rows.size(), 1);
        std::vector<char> congs(model_.congruences.size(), 1);
        std::vector<char> slots(model_.slot_var.size(), 1);
        for (int round = 0; round < round_cap; ++round) {
            next_rows_.assign(rows.size(), 0);
            next_congs_.assign(congs.size(), 0);
            next_slots_.assign(slots.size(), 0);
            bool changed = false;
            for (std::size_t s = 0; s < slots.size(); ++s)
                if (slots[s] && !sync(static_cast<int>(s), changed))
                    return false;
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (rows[r] && !row(static_cast<int>(r), changed))
                    return false;
            for (std::size_t c = 0; c < congs.size(); ++c)
                if (congs[c] && !congruence(static_cast<int>(c), changed))
                    return false;
            if (!changed)
                return true;
            rows.swap(next_rows_);
            congs.swap(next_congs_);
            slots.swap(next_slots_);
        }
        return true;
    }

private:
    void var_changed(int v, bool& changed)
    {
        changed = true;
        for (int r : model_.rows_of_var[v])
            next_rows_[r] = 1;
        for (int s : model_.slots_of_var[v])
            next_slots_[s] = 1;
    }

    void slot_changed(int s, bool& changed)
    {
        changed = true;
        next_slots_[s] = 1;
        for (int c : model_.congruences_of_slot[s])
            next_congs_[c] = 1;
    }

    bool row(int r, bool& changed)
    {
        const Row& row = model_.rows[r];
        Integer min_activity = 0;
        for (const auto& [v, a] : row.terms)
            min_activity += a * (a > 0 ? d_.lo[v] : d_.hi[v]);
        if (min_activity > row.rhs)
            return false;
        Integer slack = row.rhs - min_activity;
        for (const auto& [v, a] : row.terms) {
            if (a > 0) {
                Integer bound = d_.lo[v] + floor_div(slack, a);
                if (bound < d_.hi[v]) {
                    d_.hi[v] = std::move(bound);
                    var_changed(v, changed);
                }
            } else {
                Integer bound = d_.hi[v] - floor_div(slack, -a);
                if (bound > d_.lo[v]) {
                    d_.lo[v] = std::move(bound);
                    var_changed(v, changed);
                }
            }
            if (d_.lo[v] > d_.hi[v])
                return false;
        }
        return true;
    }

    bool sync(int s, bool& changed)
    {
        int v = model_.slot_var[s];
        int q = model_.slot_modulus[s];
        std::uint64_t mask = d_.residues[s];
        if (d_.hi[v] - d_.lo[v] + 1 < q) {
            std::uint64_t range = 0;
            int r = mod_small(d_.lo[v], q);
            int width = static_cast<int>(d_.hi[v] - d_.lo[v]) + 1;
            for (int i = 0; i < width; ++i, r = (r + 1) % q)
                range |= std::uint64_t{1} << r;
            mask &= range;
        }
        if (mask == 0)
            return false;
        if (mask != d_.residues[s]) {
            d_.residues[s] = mask;
            slot_changed(s, changed);
        }
        int steps = 0;
        for (int r = mod_small(d_.lo[v], q); !has_bit(mask, r); r = (r + 1) % q)
            ++steps;
        bool moved = false;
        if (steps > 0) {
            d_.lo[v] += steps;
            moved = true;
        }
        steps = 0;
        for (int r = mod_small(d_.hi[v], q); !has_bit(mask, r); r = (r + q - 1) % q)
            ++steps;
        if (steps > 0) {
            d_.hi[v] -= steps;
            moved = true;
        }
        if (d_.lo[v] > d_.hi[v])
            return false;
        if (moved)
            var_changed(v, changed);
        return true;
    }

    bool congruence(int c, bool& changed)
    {
        const Congruence& cg = model_.congruences[c];
        const int q = cg.modulus;
        if (cg.terms.size() == 1) {
            auto [s, a] = cg.terms[0];
            std::uint64_t allowed = 0;
            for (int x = 0; x < q; ++x)
                if ((a * x) % q == cg.rhs)
                    allowed |= std::uint64_t{1} << x;
            return restrict(s, allowed, changed);
        }
        auto [s1, a1] = cg.terms[0];
        auto [s2, a2] = cg.terms[1];
        std::uint64_t m1 = d_.residues[s1];
        std::uint64_t m2 = d_.residues[s2];
        std::uint64_t n1 = 0;
        std::uint64_t n2 = 0;
        for (int x = 0; x < q; ++x) {
            if (!has_bit(m1, x))
                continue;
            for (int y = 0; y < q; ++y)
                if (has_bit(m2, y) && (a1 * x + a2 * y) % q == cg.rhs) {
                    n1 |= std::uint64_t{1} << x;
                    n2 |= std::uint64_t{1} << y;
                }
        }
        return restrict(s1, n1, changed) && restrict(s2, n2, changed);
    }

    bool restrict(int s, std::uint64_t allowed, bool& changed)
    {
        std::uint64_t mask = d_.residues[s] & allowed;
        if (mask == 0)
            return false;
        if (mask != d_.residues[s]) {
            d_.residues[s] = mask;
            slot_changed(s, changed);
        }
        return true;
    }

    const Model& model_;
    Domain& d_;
    std::vector<char> next_rows_;
    std::vector<char> next_congs_;
    std::vector<char> next_slots_;
};

}  // namespace

bool propagate(const Model& model, Domain& domain, const PropagationLimits& limits)
{
    if (model.trivially_infeasible)
        return false;
    return Propagator(model, domain).run(limits.round_cap);
}

bool elimination_infeasible(const Model& model, const Domain& domain,
                            const EliminationLimits& limits)
{
    std::vector<int> free_vars;
    std::vector<int> column(model.num_vars, -1);
    for (int v = 0; v < model.num_vars; ++v)
        if (!domain.fixed(v)) {
            column[v] = static_cast<int>(free_vars.size());
            free_vars.push_back(v);
        }
    const int k = static_cast<int>(free_vars.size());
    if (k == 0 || k > limits.max_vars)
        return false;

    using Dense = std::pair<std::vector<Integer>, Integer>;
    std::set<Dense> rows;
    auto add = [&](std::vector<Integer> coef, Integer rhs) -> bool {
        Integer g = 0;
        for (const auto& c : coef)
            g = gcd_value(g, c);
        if (g == 0)
            return rhs >= 0;
        if (g > 1) {
            for (auto& c : coef)
                c /= g;
            rhs = floor_div(rhs, g);
        }
        rows.emplace(std::move(coef), std::move(rhs));
        return true;
    };

    int touched = 0;
    for (const auto& row : model.rows) {
        std::vector<Integer> coef(k);
        Integer rhs = row.rhs;
        bool any = false;
        for (const auto& [v, a] : row.terms) {
            if (column[v] < 0) {
                rhs -= a * domain.lo[v];
            } else {
                coef[column[v]] = a;
                any = true;
            }
        }
        if (!any)
            continue;
        if (++touched > limits.max_rows)
            return false;
        if (!add(std::move(coef), std::move(rhs)))
            return true;
    }
    for (int i = 0; i < k; ++i) {
        std::vector<Integer> up(k);
        up[i] = 1;
        add(up, domain.hi[free_vars[i]]);
        std::vector<Integer> down(k);
        down[i] = -1;
        add(down, -domain.lo[free_vars[i]]);
    }

    int generated = 0;
    std::vector<char> eliminated(k, 0);
    for (int step = 0; step < k; ++step) {
        int pick = -1;
        long best = -1;
        for (int i = 0; i < k; ++i) {
            if (eliminated[i])
                continue;
            long pos = 0;
            long neg = 0;
            for (const auto& r : rows) {
                if (r.first[i] > 0)
                    ++pos;
                else if (r.first[i] < 0)
                    ++neg;
            }
            long cost = pos * neg - pos - neg;
            if (pick < 0 || cost < best) {
                pick = i;
                best = cost;
            }
        }
        eliminated[pick] = 1;
        std::vector<Dense> pos;
        std::vector<Dense> neg;
        std::set<Dense> rest;
        for (auto& r : rows) {
            if (r.first[pick] > 0)
                pos.push_back(r);
            else if (r.first[pick] < 0)
                neg.push_back(r);
            else
                rest.insert(r);
        }
        rows.swap(rest);
        for (const auto& p : pos)
            for (const auto& n : neg) {
                if (++generated > limits.max_generated)
                    return false;
                Integer a = p.first[pick];
                Integer b = -n.first[pick];
                std::vector<Integer> coef(k);
                for (int i = 0; i < k; ++i)
                    coef[i] = b * p.first[i] + a * n.first[i];
                if (!add(std::move(coef), b * p.second + a * n.second))
                    return true;
            }
    }
    return false;
}

int periodicity_bounds(const IlpInstance& instance, const Model& model, Domain& domain)
{
    const int n = model.num_vars;
    std::vector<char> objective(n, 0);
    for (const auto& [id, c] : instance.objective().terms())
        objective[instance.index_of(id)] = 1;

    auto non_unary = [&](int v) {
        std::vector<int> out;
        for (int r : model.rows_of_var[v])
            if (model.rows[r].terms.size() > 1)
                out.push_back(r);
        return out;
    };

    struct Link {
        int m;
        Integer c;
        int row;  // representative of the equality pair
        Integer sign;
    };
    std::map<int, std::vector<Link>> candidates;
    for (int g = 0; g < n; ++g) {
        if (objective[g])
            continue;
        auto occurrences = non_unary(g);
        if (occurrences.empty())
            continue;
        std::set<int> pairs;
        bool ok = true;
        for (int r : occurrences) {
            int p = model.partner[r];
            if (p < 0) {
                ok = false;
                break;
            }
            pairs.insert(std::min(r, p));
        }
        if (!ok)
            continue;
        std::vector<Link> links;
        for (int r : pairs) {
            const Row& row = model.rows[r];
            Integer ag;
            for (const auto& [v, a] : row.terms)
                if (v == g)
                    ag = a;
            if (abs_value(ag) != 1) {
                ok = false;
                break;
            }
            std::optional<Link> link;
            for (const auto& [v, a] : row.terms) {
                if (v == g || objective[v])
                    continue;
                Integer c = -ag * a;
                if (c < 1)
                    continue;
                auto occ = non_unary(v);
                bool is_private = std::all_of(occ.begin(), occ.end(),
                                              [&](int o) { return o == r || o == model.partner[r]; });
                if (is_private) {
                    link = Link{v, c, r, ag};
                    break;
                }
            }
            if (!link) {
                ok = false;
                break;
            }
            links.push_back(*link);
        }
        if (ok)
            candidates.emplace(g, std::move(links));
    }

    bool stable = false;
    while (!stable) {
        stable = true;
        std::set<int> moving;
        for (const auto& [g, links] : candidates) {
            moving.insert(g);
            for (const auto& l : links)
                moving.insert(l.m);
        }
        for (auto it = candidates.begin(); it != candidates.end();) {
            bool clash = false;
            for (const auto& l : it->second)
                for (const auto& [v, a] : model.rows[l.row].terms)
                    if (v != it->first && v != l.m && moving.contains(v))
                        clash = true;
            if (clash) {
                it = candidates.erase(it);
                stable = false;
            } else {
                ++it;
            }
        }
    }

    int tightened = 0;
    for (const auto& [g, links] : candidates) {
        Integer lcm = 1;
        Integer top = domain.lo[g];
        for (const auto& l : links) {
            lcm = lcm / gcd_value(lcm, l.c) * l.c;
            // rest = sign * (rhs - sum of the other terms)
            const Row& row = model.rows[l.row];
            Integer rest_hi = l.sign * row.rhs;
            for (const auto& [v, a] : row.terms) {
                if (v == g || v == l.m)
                    continue;
                Integer coef = -l.sign * a;
                rest_hi += coef * (coef > 0 ? domain.hi[v] : domain.lo[v]);
            }
            top = std::max(top, Integer(rest_hi + l.c * domain.lo[l.m]));
        }
        Integer bound = top + lcm - 1;
        if (bound < domain.hi[g]) {
            domain.hi[g] = bound;
            ++tightened;
        }
    }
    return tightened;
}

}  // namespace tdilp
