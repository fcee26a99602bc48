#pragma once

// Naive reference implementations. Nothing here calls into the solver,
// kernelizer or structure algorithms; only the data types are shared.

#include "tdilp/instance.hpp"
#include "tdilp/structure.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace tdilp::oracle {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct BruteResult {
    bool feasible = false;
    Integer value;
    /// Lexicographically smallest optimal point (by variable position).
    Assignment assignment;
};

/// Enumerates [-box, box]^n. Coefficients must fit in 32 bits.
BruteResult brute_force_ilp(const IlpInstance& instance, std::int64_t box,
                            std::uint64_t budget = kDefaultBudget);
/// Same result, enumeration split across OpenMP threads.
BruteResult brute_force_ilp_parallel(const IlpInstance& instance, std::int64_t box,
                                     std::uint64_t budget = kDefaultBudget);

/// Some d != 0 in [-box, box]^n with A d <= 0 and s.d >= 1.
bool brute_force_recession(const IlpInstance& instance, std::int64_t box,
                           std::uint64_t budget = kDefaultBudget);

bool subset_sum_dp(const std::vector<std::int64_t>& values, std::int64_t target);
bool subset_sum_enumerate(const std::vector<std::int64_t>& values, std::int64_t target);

bool brute_three_coloring(const Graph& g);
bool brute_vertex_cover(const Graph& g, int nu);

/// Literal recursion: 1 for a single vertex, max over components, else
/// 1 + min over v of td(G - v).
int treedepth_reference(const Graph& g);

/// Vertices on a longest simple path (0 for the empty graph).
int longest_path_vertices(const Graph& g);

/// Tries all |from|! bijections from -> to for one whose renaming maps the
/// constraints touching `from` onto those touching `to`.
std::optional<std::map<VariableId, VariableId>> enumerate_renamings(const IlpInstance& instance,
                                                                    const std::set<VariableId>& from,
                                                                    const std::set<VariableId>& to);

}  // namespace tdilp::oracle
