#pragma once

#include "tdilp/kernelizer.hpp"
#include "tdilp/solver.hpp"
#include "tdilp/structure.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace tdilp {

using Json = nlohmann::ordered_json;

/// JSON number when the value fits in int64, decimal string otherwise.
Json integer_to_json(const Integer& a);
Integer integer_from_json(const Json& j);

Json witness_to_json(const TreedepthDecomposition& t);
Json witness_to_json(const TreeDecompositionWitness& w);
/// Either kind, selected by the "kind" field.
std::variant<TreedepthDecomposition, TreeDecompositionWitness> witness_from_json(const Json& j);

Json trace_to_json(const KernelTrace& trace);
KernelTrace trace_from_json(const Json& j);

/// Values keyed by variable name.
Json assignment_to_json(const std::vector<Variable>& variables, const Assignment& a);
/// Accepts a bare name->value object or an outcome object with "assignment".
Assignment assignment_from_json(const std::vector<Variable>& variables, const Json& j);

Json outcome_to_json(const std::vector<Variable>& variables, const SolveOutcome& outcome);

}  // namespace tdilp
