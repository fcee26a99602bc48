#include "tdilp/structure.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <unordered_map>

namespace tdilp {

Graph::Graph(int n) : adjacency_(static_cast<std::size_t>(n)) {}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n)
{
    for (auto [u, v] : edges)
        add_edge(u, v);
}

std::size_t Graph::num_edges() const
{
    std::size_t twice = 0;
    for (const auto& a : adjacency_)
        twice += a.size();
    return twice / 2;
}

void Graph::add_edge(int u, int v)
{
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
        throw std::out_of_range("edge endpoint out of range");
    if (u == v)
        return;
    auto insert = [](std::vector<int>& list, int w) {
        auto it = std::lower_bound(list.begin(), list.end(), w);
        if (it == list.end() || *it != w)
            list.insert(it, w);
    };
    insert(adjacency_[u], v);
    insert(adjacency_[v], u);
}

bool Graph::has_edge(int u, int v) const
{
    return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < num_vertices(); ++u)
        for (int v : adjacency_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

std::vector<std::vector<int>> Graph::components() const
{
    std::vector<int> comp(adjacency_.size(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < num_vertices(); ++s) {
        if (comp[s] != -1)
            continue;
        std::vector<int> members{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (int w : adjacency_[members[i]])
                if (comp[w] == -1) {
                    comp[w] = comp[s];
                    members.push_back(w);
                }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

Graph Graph::induced(const std::vector<int>& vertices) const
{
    std::map<int, int> local;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        local[vertices[i]] = static_cast<int>(i);
    Graph h(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (int w : adjacency_[vertices[i]])
            if (auto it = local.find(w); it != local.end())
                h.add_edge(static_cast<int>(i), it->second);
    return h;
}

// ---------------------------------------------------------------------------

bool TreedepthDecomposition::is_forest() const
{
    const int n = size();
    std::vector<char> state(parent.size(), 0);  // 0 new, 1 on path, 2 done
    for (int v = 0; v < n; ++v) {
        if (parent[v] < kRoot || parent[v] >= n)
            return false;
    }
    for (int v = 0; v < n; ++v) {
        std::vector<int> path;
        int x = v;
        while (x != kRoot && state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = parent[x];
        }
        if (x != kRoot && state[x] == 1)
            return false;
        for (int p : path)
            state[p] = 2;
    }
    return true;
}

std::vector<int> TreedepthDecomposition::depths() const
{
    if (!is_forest())
        throw std::invalid_argument("parent array is not a rooted forest");
    std::vector<int> depth(parent.size(), 0);
    for (int v = 0; v < size(); ++v) {
        std::vector<int> path;
        int x = v;
        while (x != kRoot && depth[x] == 0) {
            path.push_back(x);
            x = parent[x];
        }
        int d = x == kRoot ? 0 : depth[x];
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            depth[*it] = ++d;
    }
    return depth;
}

int TreedepthDecomposition::height() const
{
    auto d = depths();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::vector<std::vector<int>> TreedepthDecomposition::children() const
{
    std::vector<std::vector<int>> out(parent.size());
    for (int v = 0; v < size(); ++v)
        if (parent[v] != kRoot)
            out[parent[v]].push_back(v);
    return out;
}

std::vector<int> TreedepthDecomposition::roots() const
{
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
        if (parent[v] == kRoot)
            out.push_back(v);
    return out;
}

bool TreedepthDecomposition::is_ancestor(int ancestor, int v) const
{
    for (int x = parent[v]; x != kRoot; x = parent[x])
        if (x == ancestor)
            return true;
    return false;
}

std::vector<int> TreedepthDecomposition::subtree(int v) const
{
    auto kids = children();
    std::vector<int> out;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (auto it = kids[x].rbegin(); it != kids[x].rend(); ++it)
            stack.push_back(*it);
    }
    return out;
}

std::vector<int> TreedepthDecomposition::root_path(int v) const
{
    std::vector<int> path;
    for (int x = v; x != kRoot; x = parent[x])
        path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

int TreeDecompositionWitness::width() const
{
    std::size_t best = 0;
    for (const auto& b : bags)
        best = std::max(best, b.size());
    return static_cast<int>(best) - 1;
}

VertexCapExceeded::VertexCapExceeded(int n, int cap)
    : std::runtime_error("graph has " + std::to_string(n) + " vertices, exact treedepth cap is " +
                         std::to_string(cap))
{
}

// ---------------------------------------------------------------------------

Graph build_primal_graph(const IlpInstance& instance)
{
    Graph g(static_cast<int>(instance.num_variables()));
    auto clique = [&](const std::vector<Term>& terms) {
        for (std::size_t i = 0; i < terms.size(); ++i)
            for (std::size_t j = i + 1; j < terms.size(); ++j)
                g.add_edge(static_cast<int>(instance.index_of(terms[i].first)),
                           static_cast<int>(instance.index_of(terms[j].first)));
    };
    for (const auto& c : instance.constraints())
        clique(c.terms());
    clique(instance.objective().terms());
    return g;
}

namespace {

using Mask = std::uint64_t;

class ExactTreedepth {
public:
    explicit ExactTreedepth(const Graph& g) : n_(g.num_vertices()), adj_(static_cast<std::size_t>(n_), 0)
    {
        for (int v = 0; v < n_; ++v)
            for (int w : g.neighbors(v))
                adj_[v] |= Mask{1} << w;
    }

    /// `limit` must exceed the treedepth of every component of s.
    int of_set(Mask s, int limit)
    {
        int best = 0;
        for (Mask c : components(s))
            best = std::max(best, of_connected(c, limit));
        return best;
    }

    void build(Mask s, int parent, std::vector<int>& out)
    {
        for (Mask c : components(s)) {
            if (std::popcount(c) == 1) {
                out[std::countr_zero(c)] = parent;
                continue;
            }
            of_connected(c, std::popcount(c) + 1);
            int v = memo_.at(c).vertex;
            out[v] = parent;
            build(c & ~(Mask{1} << v), v, out);
        }
    }

private:
    struct Entry {
        int value;   // exact when vertex >= 0, otherwise a lower bound
        int vertex;  // root of an optimal decomposition
    };

    std::vector<Mask> components(Mask s) const
    {
        std::vector<Mask> out;
        while (s) {
            Mask seed = s & (~s + 1);
            Mask comp = seed;
            Mask frontier = seed;
            while (frontier) {
                Mask next = 0;
                for (Mask f = frontier; f; f &= f - 1)
                    next |= adj_[std::countr_zero(f)];
                next &= s & ~comp;
                comp |= next;
                frontier = next;
            }
            out.push_back(comp);
            s &= ~comp;
        }
        return out;
    }

    bool is_clique(Mask c) const
    {
        for (Mask f = c; f; f &= f - 1) {
            int v = std::countr_zero(f);
            if ((adj_[v] & c) != (c & ~(Mask{1} << v)))
                return false;
        }
        return true;
    }

    /// Exact treedepth of the connected set c if it is below `limit`,
    /// otherwise some lower bound that is at least `limit`.
    int of_connected(Mask c, int limit)
    {
        const int size = std::popcount(c);
        if (size == 1)
            return 1;
        int lower = 2;
        if (auto it = memo_.find(c); it != memo_.end()) {
            if (it->second.vertex >= 0 || it->second.value >= limit)
                return it->second.value;
            lower = it->second.value;
        }
        if (is_clique(c)) {
            memo_[c] = {size, std::countr_zero(c)};
            return size;
        }
        if (lower >= limit)
            return lower;

        std::vector<std::pair<int, int>> order;
        for (Mask f = c; f; f &= f - 1) {
            int v = std::countr_zero(f);
            order.emplace_back(-std::popcount(adj_[v] & c), v);
        }
        std::sort(order.begin(), order.end());

        int best = std::min(limit, size);
        int best_v = -1;
        for (auto [neg_degree, v] : order) {
            int value = 1;
            for (Mask comp : components(c & ~(Mask{1} << v))) {
                value = std::max(value, 1 + of_connected(comp, best - 1));
                if (value >= best)
                    break;
            }
            if (value < best) {
                best = value;
                best_v = v;
                if (best == lower)
                    break;
            }
        }
        memo_[c] = best_v >= 0 ? Entry{best, best_v} : Entry{limit, -1};
        return best_v >= 0 ? best : limit;
    }

    int n_;
    std::vector<Mask> adj_;
    std::unordered_map<Mask, Entry> memo_;
};

}  // namespace

std::pair<int, TreedepthDecomposition> compute_treedepth_exact(const Graph& g, int cap)
{
    const int n = g.num_vertices();
    if (n > cap || n > 64)
        throw VertexCapExceeded(n, std::min(cap, 64));
    TreedepthDecomposition t;
    t.parent.assign(static_cast<std::size_t>(n), kRoot);
    if (n == 0)
        return {0, t};
    ExactTreedepth solver(g);
    Mask all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    int td = solver.of_set(all, n + 1);
    solver.build(all, kRoot, t.parent);
    return {td, t};
}

TreedepthDecomposition dfs_treedepth_heuristic(const Graph& g)
{
    const int n = g.num_vertices();
    TreedepthDecomposition t;
    t.parent.assign(static_cast<std::size_t>(n), kRoot);
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (visited[s])
            continue;
        visited[s] = 1;
        std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& nb = g.neighbors(v);
            while (next < nb.size() && visited[nb[next]])
                ++next;
            if (next == nb.size()) {
                stack.pop_back();
                continue;
            }
            int w = nb[next++];
            visited[w] = 1;
            t.parent[w] = v;
            stack.emplace_back(w, 0);
        }
    }
    return t;
}

TreedepthDecomposition decompose(const Graph& g, int component_cap)
{
    TreedepthDecomposition t;
    t.parent.assign(static_cast<std::size_t>(g.num_vertices()), kRoot);
    for (const auto& comp : g.components()) {
        Graph h = g.induced(comp);
        TreedepthDecomposition local = static_cast<int>(comp.size()) <= component_cap
                                           ? compute_treedepth_exact(h, component_cap).second
                                           : dfs_treedepth_heuristic(h);
        for (std::size_t i = 0; i < comp.size(); ++i)
            t.parent[comp[i]] = local.parent[i] == kRoot ? kRoot : comp[local.parent[i]];
    }
    return t;
}

bool verify_treedepth_decomposition(const Graph& g, const TreedepthDecomposition& t)
{
    if (t.size() != g.num_vertices())
        throw std::invalid_argument("decomposition node set does not match the graph");
    if (!t.is_forest())
        return false;
    for (auto [u, v] : g.edges())
        if (!t.is_ancestor(u, v) && !t.is_ancestor(v, u))
            return false;
    return true;
}

TreeDecompositionWitness treedepth_to_tree_decomposition(const TreedepthDecomposition& t)
{
    TreeDecompositionWitness w;
    w.tree = t.parent;
    auto roots = t.roots();
    for (std::size_t i = 1; i < roots.size(); ++i)
        w.tree[roots[i]] = roots[0];
    w.bags.resize(t.parent.size());
    for (int v = 0; v < t.size(); ++v) {
        w.bags[v] = t.root_path(v);
        std::sort(w.bags[v].begin(), w.bags[v].end());
    }
    return w;
}

bool verify_tree_decomposition(const Graph& g, const TreeDecompositionWitness& w)
{
    const int nodes = static_cast<int>(w.tree.size());
    if (w.bags.size() != w.tree.size())
        return false;
    TreedepthDecomposition shape{w.tree};
    if (!shape.is_forest())
        return false;
    if (nodes > 0 && shape.roots().size() != 1)
        return false;
    const int n = g.num_vertices();
    std::vector<std::vector<char>> member(static_cast<std::size_t>(nodes), std::vector<char>(n, 0));
    for (int t = 0; t < nodes; ++t)
        for (int v : w.bags[t]) {
            if (v < 0 || v >= n)
                return false;
            member[t][v] = 1;
        }
    // (P1) and (P3): nodes holding v minus tree edges inside them must be one.
    for (int v = 0; v < n; ++v) {
        int holding = 0;
        int inner_edges = 0;
        for (int t = 0; t < nodes; ++t) {
            if (!member[t][v])
                continue;
            ++holding;
            if (w.tree[t] != kRoot && member[w.tree[t]][v])
                ++inner_edges;
        }
        if (holding == 0 || holding - inner_edges != 1)
            return false;
    }
    // (P2)
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (int t = 0; t < nodes && !covered; ++t)
            covered = member[t][u] && member[t][v];
        if (!covered)
            return false;
    }
    return true;
}

Graph parse_graph(std::string_view text)
{
    std::string cleaned;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        cleaned.append(line);
        cleaned.push_back('\n');
        start = end + 1;
    }
    std::istringstream in(cleaned);
    int n = 0;
    if (!(in >> n) || n < 0)
        throw std::invalid_argument("graph file must start with the vertex count");
    Graph g(n);
    int u = 0;
    int v = 0;
    while (in >> u) {
        if (!(in >> v))
            throw std::invalid_argument("odd number of edge endpoints");
        if (u < 1 || v < 1 || u > n || v > n)
            throw std::invalid_argument("edge endpoint out of range (vertices are 1-indexed)");
        if (u == v)
            throw std::invalid_argument("self-loops are not allowed");
        g.add_edge(u - 1, v - 1);
    }
    if (!in.eof())
        throw std::invalid_argument("malformed edge list");
    return g;
}

std::string serialize_graph(const Graph& g)
{
    std::ostringstream out;
    out << g.num_vertices() << '\n';
    for (auto [u, v] : g.edges())
        out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

}  // namespace tdilp
