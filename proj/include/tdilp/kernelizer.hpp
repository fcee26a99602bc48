#pragma once

#include "tdilp/instance.hpp"
#include "tdilp/structure.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace tdilp {

/// Certifies x ~ y: `delta` maps every variable of T_x onto T_y such that the
/// renamed constraint set F(T_x) equals F(T_y). Ancestors are not renamed.
struct EquivalenceWitness {
    VariableId x;
    VariableId y;
    std::map<VariableId, VariableId> delta;
};

struct TraceStep {
    std::vector<VariableId> omitted;  // T_y, sorted
    VariableId keeper_root;           // x
    std::map<VariableId, VariableId> delta;
};

/// Prune log, replayable in reverse to lift a kernel solution.
struct KernelTrace {
    std::vector<Variable> variables;  // of the original instance
    std::vector<TraceStep> steps;
};

class TraceMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct KernelOptions {
    /// Treat all forest roots as children of a synthetic root.
    bool virtual_root = true;
    /// Use the OpenMP pair search; the serial one is the reference.
    bool parallel = true;
};

std::set<LinearConstraint> constraints_touching(const IlpInstance& instance,
                                                const std::set<VariableId>& vars);

/// Variables of T_v as ids, where `t` is indexed by instance positions.
std::set<VariableId> subtree_variables(const IlpInstance& instance, const TreedepthDecomposition& t,
                                       VariableId v);

/// Renaming-invariant fingerprint of F(T_x). Equal witnesses imply equal
/// fingerprints; the converse is not guaranteed.
std::uint64_t subtree_fingerprint(const IlpInstance& instance, const std::set<VariableId>& subtree);

/// Backtracking search for a renaming from `from` onto `to` mapping
/// F(from) onto F(to). `use_fingerprint_colors` restricts candidates by
/// refined variable colors.
std::optional<std::map<VariableId, VariableId>> find_renaming(const IlpInstance& instance,
                                                              const std::set<VariableId>& from,
                                                              const std::set<VariableId>& to,
                                                              bool use_fingerprint_colors = true);

/// x and y must share a parent in `t` or both be roots (std::invalid_argument otherwise).
std::optional<EquivalenceWitness> test_equivalence(const IlpInstance& instance,
                                                   const TreedepthDecomposition& t, VariableId x,
                                                   VariableId y);

/// Same verdict computed without fingerprints; used to cross-check the fast path.
std::optional<EquivalenceWitness> test_equivalence_certified(const IlpInstance& instance,
                                                             const TreedepthDecomposition& t,
                                                             VariableId x, VariableId y);

/// Checks delta(F(T_x)) == F(T_y) and that delta is a bijection T_x -> T_y.
bool validate_witness(const IlpInstance& instance, const TreedepthDecomposition& t,
                      const EquivalenceWitness& w);

/// First equivalent pair (by (smaller id, larger id)) among the objective-free
/// children of z; z == nullopt denotes the virtual root above all roots.
std::optional<EquivalenceWitness> find_equivalent_pair(const IlpInstance& instance,
                                                       const TreedepthDecomposition& t,
                                                       std::optional<VariableId> z,
                                                       bool parallel = true);

struct PruneResult {
    IlpInstance instance;
    TreedepthDecomposition decomposition;
    TraceStep step;
};

std::optional<PruneResult> prune_step(const IlpInstance& instance, const TreedepthDecomposition& t,
                                      std::optional<VariableId> z, bool parallel = true);

struct KernelResult {
    IlpInstance instance;
    TreedepthDecomposition decomposition;
    KernelTrace trace;
};

KernelResult kernelize(const IlpInstance& instance, const TreedepthDecomposition& t,
                       const KernelOptions& options = {});

Assignment lift_solution(const KernelTrace& trace, const Assignment& kernel_solution);

/// Exact value, or nullopt when it exceeds 2^(2^20).
using BoundValue = std::optional<Integer>;

struct KernelBounds {
    Integer ell;
    int k = 1;
    std::vector<BoundValue> d;  // d[i] for 1 <= i <= k, index 0 unused
    std::vector<BoundValue> e;

    BoundValue e1() const { return e.at(1); }
};

/// 2^((2*ell+1)^(k+1) * m^i)
BoundValue num_classes(const Integer& ell, int k, int i, const BoundValue& m);
KernelBounds compute_bounds(const Integer& ell, int k);

}  // namespace tdilp
