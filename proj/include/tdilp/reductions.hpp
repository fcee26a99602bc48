#pragma once

#include "tdilp/instance.hpp"
#include "tdilp/structure.hpp"

#include <string>
#include <vector>

namespace tdilp {

/// p(1) = 2, p(2) = 3, ...
std::int64_t nth_prime(int i);

/// Binary vertex variables v<i>, per-edge cover rows, budget variables
/// b<1..nu> fixed to 1, x = sum b and sum v <= x.
IlpInstance reduce_vertex_cover(const Graph& g, int nu);

struct ThreeColoringReduction {
    IlpInstance instance;
    TreedepthDecomposition decomposition;  // height <= 8
};

/// Prime encoding: vertex i (1-based) is represented by p(i).
ThreeColoringReduction reduce_three_coloring(const Graph& g);

/// Feasible assignment for `reduction` built from colors[v] in {0, 1, 2}.
Assignment encode_three_coloring(const Graph& g, const IlpInstance& reduction,
                                 const std::vector<int>& colors);

enum class GadgetVariant { Open, HalfOpen, Closed };

struct GadgetSpec {
    Integer q;
    GadgetVariant variant = GadgetVariant::Open;
    std::string prefix;  // distinguishes h/h'/z names of different gadgets
    std::string x;       // unused unless Open
    std::string y;
};

/// One-bits of q, ascending.
std::vector<int> bit_set(const Integer& q);
int b_max(const Integer& q);

/// Emits the gadget into `builder`.
void build_gadget(InstanceBuilder& builder, const GadgetSpec& spec);
IlpInstance build_gadget(const GadgetSpec& spec);

struct SubsetSumInstance {
    std::vector<Integer> values;
    Integer target;
};

struct SubsetSumReduction {
    IlpInstance instance;
    TreeDecompositionWitness witness;  // width <= 2
};

SubsetSumReduction reduce_subset_sum(const SubsetSumInstance& s);

}  // namespace tdilp
