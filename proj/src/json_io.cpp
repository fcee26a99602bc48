#include "tdilp/json_io.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdilp {

Json integer_to_json(const Integer& a)
{
    if (auto small = to_int64(a))
        return *small;
    return to_string(a);
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        if (auto v = parse_integer(j.get<std::string>()))
            return *v;
    }
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

Json witness_to_json(const TreedepthDecomposition& t)
{
    return Json{{"kind", "treedepth"}, {"parent", t.parent}, {"bags", Json::array()}};
}

Json witness_to_json(const TreeDecompositionWitness& w)
{
    return Json{{"kind", "treewidth"}, {"parent", w.tree}, {"bags", w.bags}};
}

std::variant<TreedepthDecomposition, TreeDecompositionWitness> witness_from_json(const Json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    auto parent = j.at("parent").get<std::vector<int>>();
    if (kind == "treedepth")
        return TreedepthDecomposition{std::move(parent)};
    if (kind == "treewidth")
        return TreeDecompositionWitness{std::move(parent),
                                        j.at("bags").get<std::vector<std::vector<int>>>()};
    throw std::invalid_argument("unknown witness kind '" + kind + "'");
}

Json trace_to_json(const KernelTrace& trace)
{
    Json vars = Json::array();
    for (const auto& v : trace.variables)
        vars.push_back(Json{{"id", v.id.value}, {"name", v.name}});
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        Json omitted = Json::array();
        for (auto v : s.omitted)
            omitted.push_back(v.value);
        Json delta = Json::object();
        for (const auto& [a, b] : s.delta)
            delta[std::to_string(a.value)] = b.value;
        steps.push_back(Json{{"omitted", omitted}, {"keeper_root", s.keeper_root.value}, {"delta", delta}});
    }
    return Json{{"variables", vars}, {"steps", steps}};
}

KernelTrace trace_from_json(const Json& j)
{
    KernelTrace trace;
    for (const auto& v : j.at("variables"))
        trace.variables.push_back({VariableId{v.at("id").get<std::int32_t>()}, v.at("name").get<std::string>()});
    for (const auto& s : j.at("steps")) {
        TraceStep step;
        for (const auto& v : s.at("omitted"))
            step.omitted.push_back(VariableId{v.get<std::int32_t>()});
        step.keeper_root = VariableId{s.at("keeper_root").get<std::int32_t>()};
        for (const auto& [from, to] : s.at("delta").items())
            step.delta[VariableId{std::stoi(from)}] = VariableId{to.get<std::int32_t>()};
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

Json assignment_to_json(const std::vector<Variable>& variables, const Assignment& a)
{
    Json out = Json::object();
    for (const auto& v : variables) {
        auto it = a.find(v.id);
        if (it != a.end())
            out[v.name] = integer_to_json(it->second);
    }
    return out;
}

Assignment assignment_from_json(const std::vector<Variable>& variables, const Json& j)
{
    const Json& values = j.contains("assignment") ? j.at("assignment") : j;
    if (!values.is_object())
        throw std::invalid_argument("assignment must be a JSON object");
    Assignment out;
    for (const auto& [name, value] : values.items()) {
        auto it = std::find_if(variables.begin(), variables.end(),
                               [&](const Variable& v) { return v.name == name; });
        if (it == variables.end())
            throw std::invalid_argument("unknown variable '" + name + "' in assignment");
        out[it->id] = integer_from_json(value);
    }
    return out;
}

Json outcome_to_json(const std::vector<Variable>& variables, const SolveOutcome& outcome)
{
    Json out;
    out["status"] = std::string(status_name(outcome.status));
    if (outcome.status == SolveStatus::Optimal) {
        out["value"] = integer_to_json(outcome.value);
        out["assignment"] = assignment_to_json(variables, outcome.assignment);
    } else {
        out["value"] = nullptr;
        out["assignment"] = nullptr;
    }
    out["kernel_vars"] = outcome.kernel_vars;
    out["original_vars"] = outcome.original_vars;
    if (outcome.status == SolveStatus::BoundExhausted)
        out["box"] = integer_to_json(outcome.box);
    return out;
}

}  // namespace tdilp
