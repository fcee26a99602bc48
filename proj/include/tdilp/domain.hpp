#pragma once

#include "tdilp/instance.hpp"

#include <cstdint>
#include <vector>

namespace tdilp {

/// `sum(coef * x[index]) <= rhs` over variable positions, gcd-normalized.
struct Row {
    std::vector<std::pair<int, Integer>> terms;
    Integer rhs;
};

/// `sum(coef * x) == rhs (mod modulus)` with at most two terms; each term
/// refers to a residue slot of the same modulus.
struct Congruence {
    int modulus = 0;
    std::vector<std::pair<int, int>> terms;  // (slot, coef mod modulus)
    int rhs = 0;
};

/// Propagation view of an instance: variables are instance positions.
struct Model {
    int num_vars = 0;
    std::vector<Row> rows;
    std::vector<Congruence> congruences;
    std::vector<int> slot_var;
    std::vector<int> slot_modulus;
    std::vector<std::vector<int>> rows_of_var;
    std::vector<std::vector<int>> congruences_of_slot;
    std::vector<std::vector<int>> slots_of_var;
    /// Index of the exact negation of each row, or -1.
    std::vector<int> partner;
    /// Set when normalization alone proves the system infeasible.
    bool trivially_infeasible = false;

    int add_row(Row row);
};

inline constexpr int kMaxModulus = 64;

Model build_model(const IlpInstance& instance);

/// Box [lo, hi] per variable plus a residue bitset per slot.
struct Domain {
    std::vector<Integer> lo;
    std::vector<Integer> hi;
    std::vector<std::uint64_t> residues;

    Domain() = default;
    Domain(const Model& model, const Integer& radius);

    bool fixed(int v) const { return lo[v] == hi[v]; }
    bool all_fixed() const;
};

struct PropagationLimits {
    int round_cap = 40;
};

/// Interval and residue propagation to a fixpoint or the round cap.
/// Returns false if the domain became empty.
bool propagate(const Model& model, Domain& domain, const PropagationLimits& limits = {});

struct EliminationLimits {
    int max_vars = 6;
    int max_rows = 24;
    int max_generated = 2000;
};

/// Fourier-Motzkin with integer rounding over the unfixed variables. True
/// only when a contradiction is derived; inconclusive runs return false.
bool elimination_infeasible(const Model& model, const Domain& domain,
                            const EliminationLimits& limits = {});

/// Upper bounds from periodicity: a variable g that only occurs in unary
/// rows and in equalities g = c*m + rest with private, upward-free m can be
/// shifted down by lcm(c) without leaving the feasible set. Returns the
/// number of tightened variables.
int periodicity_bounds(const IlpInstance& instance, const Model& model, Domain& domain);

}  // namespace tdilp
