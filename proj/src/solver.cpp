#include "tdilp/solver.hpp"

#include "tdilp/domain.hpp"

#include <algorithm>
#include <vector>

namespace tdilp {

std::string_view status_name(SolveStatus status)
{
    switch (status) {
    case SolveStatus::Optimal:
        return "optimal";
    case SolveStatus::Infeasible:
        return "infeasible";
    case SolveStatus::Unbounded:
        return "unbounded";
    case SolveStatus::BoundExhausted:
        return "bound_exhausted";
    }
    return "unknown";
}

BoxBound solution_bound(const IlpInstance& instance)
{
    Integer a = std::max(max_abs_coefficient(instance), Integer(1));
    for (const auto& [id, s] : instance.objective().terms())
        a = std::max(a, abs_value(s));
    const auto m = static_cast<unsigned>(instance.num_constraints());
    Integer base = Integer(m) * a;
    return {Integer(instance.num_variables()) * boost::multiprecision::pow(base, 2 * m + 1)};
}

namespace {

enum class Order { Ascending, Descending };

class Search {
public:
    Search(const IlpInstance& instance, const Integer& radius, const SearchOptions& options)
        : instance_(instance), model_(build_model(instance)), options_(options)
    {
        root_ = Domain(model_, radius);
        root_ok_ = propagate(model_, root_);
        if (root_ok_ && options.propagate) {
            while (periodicity_bounds(instance_, model_, root_) > 0) {
                root_ok_ = propagate(model_, root_);
                if (!root_ok_)
                    break;
            }
        }
        if (root_ok_ && elimination_infeasible(model_, root_, {12, 48, 4000}))
            root_ok_ = false;
        for (const auto& [id, s] : instance.objective().terms())
            objective_.emplace_back(static_cast<int>(instance.index_of(id)), s);
    }

    /// Lexicographically smallest point satisfying the current model.
    std::optional<std::vector<Integer>> first_feasible() { return dive(false); }

    /// Best objective value, starting from a known feasible value. Bisects
    /// between the incumbent and the objective range of the root box.
    Integer maximize(Integer incumbent)
    {
        Integer top = 0;
        for (const auto& [v, s] : objective_)
            top += s > 0 ? s * root_.hi[v] : s * root_.lo[v];
        while (incumbent < top) {
            Integer target = incumbent + ceil_div(top - incumbent, 2);
            set_cut(target);
            if (auto x = dive(true))
                incumbent = value(*x);
            else
                top = target - 1;
        }
        return incumbent;
    }

    /// Restricts the model to points with objective >= target.
    void set_cut(const Integer& target)
    {
        if (!cut_) {
            Row row;
            for (const auto& [v, s] : objective_)
                row.terms.emplace_back(v, -s);
            std::sort(row.terms.begin(), row.terms.end());
            cut_ = model_.add_row(std::move(row));
        }
        model_.rows[*cut_].rhs = -target;
    }

    Integer value(const std::vector<Integer>& x) const
    {
        Integer out = 0;
        for (const auto& [v, s] : objective_)
            out += s * x[v];
        return out;
    }

    bool has_objective() const { return !objective_.empty(); }

private:
    /// Depth-first search for any point of the current model. With
    /// `toward_objective` each variable is tried in its improving direction
    /// first, otherwise ascending (which yields the lexicographic minimum).
    std::optional<std::vector<Integer>> dive(bool toward_objective)
    {
        if (!root_ok_)
            return std::nullopt;
        std::vector<Domain> stack{root_};
        while (!stack.empty()) {
            Domain d = std::move(stack.back());
            stack.pop_back();
            if (!prepare(d))
                continue;
            if (d.all_fixed()) {
                if (accept(d))
                    return d.lo;
                continue;
            }
            Order order = Order::Ascending;
            if (toward_objective && coefficient(pick(d)) > 0)
                order = Order::Descending;
            branch(d, order, stack);
        }
        return std::nullopt;
    }

    Integer coefficient(int v) const
    {
        for (const auto& [w, s] : objective_)
            if (w == v)
                return s;
        return 0;
    }

    bool prepare(Domain& d)
    {
        if (options_.node_limit != 0 && ++nodes_ > options_.node_limit)
            throw SearchLimitExceeded("search node limit exceeded");
        if (!propagate(model_, d))
            return false;
        return d.all_fixed() || !elimination_infeasible(model_, d);
    }

    bool accept(const Domain& d) const
    {
        Assignment a;
        for (std::size_t i = 0; i < d.lo.size(); ++i)
            a.emplace(instance_.variables()[i].id, d.lo[i]);
        return check_feasible(instance_, a);
    }

    static int pick(const Domain& d)
    {
        for (std::size_t v = 0; v < d.lo.size(); ++v)
            if (!d.fixed(static_cast<int>(v)))
                return static_cast<int>(v);
        return -1;
    }

    /// Splits the lowest unfixed variable into {lo}, [lo+1, mid], [mid+1, hi]
    /// and pushes the parts so that `order` pops first.
    static void branch(const Domain& d, Order order, std::vector<Domain>& stack)
    {
        int v = pick(d);
        const Integer& lo = d.lo[v];
        const Integer& hi = d.hi[v];
        std::vector<std::pair<Integer, Integer>> parts;
        if (order == Order::Ascending) {
            parts.emplace_back(lo, lo);
            if (lo + 1 == hi) {
                parts.emplace_back(hi, hi);
            } else {
                Integer mid = floor_div(lo + 1 + hi, 2);
                parts.emplace_back(lo + 1, mid);
                parts.emplace_back(mid + 1, hi);
            }
        } else {
            parts.emplace_back(hi, hi);
            if (lo + 1 == hi) {
                parts.emplace_back(lo, lo);
            } else {
                Integer mid = floor_div(lo + hi - 1, 2);
                parts.emplace_back(mid + 1, hi - 1);
                parts.emplace_back(lo, mid);
            }
        }
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
            Domain child = d;
            child.lo[v] = it->first;
            child.hi[v] = it->second;
            stack.push_back(std::move(child));
        }
    }

    const IlpInstance& instance_;
    Model model_;
    SearchOptions options_;
    Domain root_;
    bool root_ok_ = true;
    std::vector<std::pair<int, Integer>> objective_;
    std::optional<int> cut_;
    std::uint64_t nodes_ = 0;
};

SolveOutcome optimal(const IlpInstance& instance, const std::vector<Integer>& x, Integer value)
{
    SolveOutcome out;
    out.status = SolveStatus::Optimal;
    out.value = std::move(value);
    for (std::size_t i = 0; i < x.size(); ++i)
        out.assignment.emplace(instance.variables()[i].id, x[i]);
    return out;
}

SolveOutcome finish(Search& search, const IlpInstance& instance, const std::vector<Integer>& first)
{
    if (!search.has_objective())
        return optimal(instance, first, 0);
    Integer start = search.value(first);
    Integer best = search.maximize(start);
    if (best == start)
        return optimal(instance, first, start);
    search.set_cut(best);
    return optimal(instance, *search.first_feasible(), best);
}

}  // namespace

SolveOutcome bounded_search(const IlpInstance& instance, const BoxBound& box,
                            const SearchOptions& options)
{
    Search search(instance, box.radius, options);
    auto first = search.first_feasible();
    SolveOutcome out;
    if (first)
        out = finish(search, instance, *first);
    else
        out.status = SolveStatus::Infeasible;
    out.box = box.radius;
    out.original_vars = out.kernel_vars = instance.num_variables();
    return out;
}

IlpInstance recession_instance(const IlpInstance& instance)
{
    std::set<LinearConstraint> rows;
    for (const auto& c : instance.constraints())
        rows.emplace(c.terms(), Integer(0));
    std::vector<Term> cut;
    for (const auto& [id, s] : instance.objective().terms())
        cut.emplace_back(id, -s);
    if (!cut.empty())
        rows.emplace(std::move(cut), Integer(-1));
    return IlpInstance(instance.variables(), std::move(rows), LinearObjective{});
}

bool detect_unbounded(const IlpInstance& instance, const SearchOptions& options)
{
    if (instance.objective().empty())
        return false;
    IlpInstance rec = recession_instance(instance);
    SearchOptions plain = options;
    plain.propagate = false;
    return bounded_search(rec, solution_bound(rec), plain).status == SolveStatus::Optimal;
}

namespace {

SolveOutcome solve_connected(const IlpInstance& instance, const Integer& radius, bool narrowed,
                             const SearchOptions& options)
{
    Search search(instance, radius, options);
    SolveOutcome out;
    auto first = search.first_feasible();
    if (!first) {
        out.status = narrowed ? SolveStatus::BoundExhausted : SolveStatus::Infeasible;
        return out;
    }
    if (search.has_objective() && detect_unbounded(instance, options)) {
        out.status = SolveStatus::Unbounded;
        return out;
    }
    return finish(search, instance, *first);
}

}  // namespace

SolveOutcome solve_core(const IlpInstance& instance, const SolveOptions& options)
{
    Integer certified = solution_bound(instance).radius;
    Integer radius = options.bound.value_or(certified);
    bool narrowed = radius < certified;

    // Components share the box, so their lexicographically smallest optima
    // combine into the one for the whole instance.
    const auto parts = build_primal_graph(instance).components();
    SolveOutcome out;
    if (parts.size() <= 1) {
        out = solve_connected(instance, radius, narrowed, options.search);
    } else {
        out.status = SolveStatus::Optimal;
        out.value = 0;
        bool unbounded = false;
        for (const auto& part : parts) {
            std::set<VariableId> rest;
            for (const auto& v : instance.variables())
                rest.insert(v.id);
            for (int i : part)
                rest.erase(instance.variables()[i].id);
            SolveOutcome r = solve_connected(omit_variables(instance, rest), radius, narrowed, options.search);
            if (r.status == SolveStatus::Infeasible || r.status == SolveStatus::BoundExhausted) {
                out = SolveOutcome{};
                out.status = r.status;
                break;
            }
            if (r.status == SolveStatus::Unbounded) {
                unbounded = true;
                continue;
            }
            out.value += r.value;
            out.assignment.merge(r.assignment);
        }
        if (unbounded && out.status == SolveStatus::Optimal) {
            out = SolveOutcome{};
            out.status = SolveStatus::Unbounded;
        }
    }
    out.box = radius;
    out.original_vars = out.kernel_vars = instance.num_variables();
    return out;
}

SolveOutcome solve(const IlpInstance& instance, const std::optional<TreedepthDecomposition>& t,
                   const SolveOptions& options)
{
    if (!options.kernel)
        return solve_core(instance, options);
    TreedepthDecomposition td = t ? *t : decompose(build_primal_graph(instance));
    KernelResult k = kernelize(instance, td, options.kernel_options);
    SolveOutcome out = solve_core(k.instance, options);
    out.original_vars = instance.num_variables();
    out.kernel_vars = k.instance.num_variables();
    if (out.status == SolveStatus::Optimal)
        out.assignment = lift_solution(k.trace, out.assignment);
    return out;
}

}  // namespace tdilp
