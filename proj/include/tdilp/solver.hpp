#pragma once

#include "tdilp/instance.hpp"
#include "tdilp/kernelizer.hpp"
#include "tdilp/structure.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace tdilp {

enum class SolveStatus { Optimal, Infeasible, Unbounded, BoundExhausted };

std::string_view status_name(SolveStatus status);

struct SolveOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    Integer value;            // Optimal only
    Assignment assignment;    // Optimal only
    Integer box;              // radius searched
    std::size_t kernel_vars = 0;
    std::size_t original_vars = 0;
};

struct BoxBound {
    Integer radius;
};

/// n * (m * a)^(2m + 1) with a = max(ell, 1).
BoxBound solution_bound(const IlpInstance& instance);

class SearchLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchOptions {
    /// Apply periodicity_bounds before searching.
    bool propagate = false;
    /// Abort with SearchLimitExceeded after this many nodes; 0 = unlimited.
    std::uint64_t node_limit = 0;
};

/// Best point of [-B, B]^n, or Infeasible. Never Unbounded. The certificate
/// is the lexicographically smallest optimal point (by variable position).
SolveOutcome bounded_search(const IlpInstance& instance, const BoxBound& box,
                            const SearchOptions& options = {});

/// Feasibility of {A d <= 0, s.d >= 1} within its own solution bound.
bool detect_unbounded(const IlpInstance& instance, const SearchOptions& options = {});

/// The ILP whose feasibility decides detect_unbounded.
IlpInstance recession_instance(const IlpInstance& instance);

struct SolveOptions {
    /// Overrides the certified radius.
    std::optional<Integer> bound;
    bool kernel = true;
    KernelOptions kernel_options;
    SearchOptions search;
};

SolveOutcome solve_core(const IlpInstance& instance, const SolveOptions& options = {});

/// kernelize, solve_core on the kernel, lift. Without `t` the decomposition
/// comes from decompose(build_primal_graph(instance)).
SolveOutcome solve(const IlpInstance& instance,
                   const std::optional<TreedepthDecomposition>& t = std::nullopt,
                   const SolveOptions& options = {});

}  // namespace tdilp
