#pragma once

#include "tdilp/integer.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tdilp {

struct VariableId {
    std::int32_t value = 0;

    friend auto operator<=>(VariableId, VariableId) = default;
};

struct Variable {
    VariableId id;
    std::string name;

    friend bool operator==(const Variable&, const Variable&) = default;
};

using Term = std::pair<VariableId, Integer>;

/// A single inequality `sum(coef * var) <= rhs`.
///
/// Terms are kept sorted by variable id with no zero coefficients, so two
/// constraints compare equal exactly when they range over the same variables
/// with the same coefficients and the same right-hand side.
class LinearConstraint {
public:
    LinearConstraint() = default;
    /// Merges repeated variables and drops zero coefficients. Throws
    /// std::invalid_argument if no term survives.
    LinearConstraint(std::vector<Term> terms, Integer rhs);

    const std::vector<Term>& terms() const { return terms_; }
    const Integer& rhs() const { return rhs_; }

    bool contains(VariableId v) const;
    const Integer* coefficient(VariableId v) const;

    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
    friend bool operator<(const LinearConstraint& a, const LinearConstraint& b);

private:
    std::vector<Term> terms_;
    Integer rhs_;
};

/// Linear function to maximize. Empty means feasibility only.
class LinearObjective {
public:
    LinearObjective() = default;
    explicit LinearObjective(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Integer coefficient(VariableId v) const;

    friend bool operator==(const LinearObjective&, const LinearObjective&) = default;

private:
    std::vector<Term> terms_;
};

using Assignment = std::map<VariableId, Integer>;

class IlpInstance {
public:
    IlpInstance() = default;
    /// Variables must have unique ids and names; every variable referenced
    /// by a constraint or the objective must be declared.
    IlpInstance(std::vector<Variable> variables, std::set<LinearConstraint> constraints,
                LinearObjective objective);

    const std::vector<Variable>& variables() const { return variables_; }
    const std::set<LinearConstraint>& constraints() const { return constraints_; }
    const LinearObjective& objective() const { return objective_; }

    std::size_t num_variables() const { return variables_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }

    bool has_variable(VariableId v) const;
    /// Position of v inside variables(); throws std::out_of_range if absent.
    std::size_t index_of(VariableId v) const;
    const std::string& name_of(VariableId v) const;
    std::optional<VariableId> find(std::string_view name) const;

    friend bool operator==(const IlpInstance&, const IlpInstance&) = default;

private:
    std::vector<Variable> variables_;  // sorted by id
    std::set<LinearConstraint> constraints_;
    LinearObjective objective_;
};

/// Incremental construction by variable name, used by parsers and generators.
class InstanceBuilder {
public:
    VariableId variable(std::string_view name);
    void add_le(std::vector<std::pair<std::string, Integer>> terms, Integer rhs);
    void add_ge(std::vector<std::pair<std::string, Integer>> terms, Integer rhs);
    void add_eq(std::vector<std::pair<std::string, Integer>> terms, Integer rhs);
    void set_objective(std::vector<std::pair<std::string, Integer>> terms);
    IlpInstance build() const;

private:
    std::vector<Term> resolve(const std::vector<std::pair<std::string, Integer>>& terms);

    std::vector<Variable> variables_;
    std::map<std::string, VariableId, std::less<>> by_name_;
    std::set<LinearConstraint> constraints_;
    LinearObjective objective_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

class MissingVariable : public std::runtime_error {
public:
    explicit MissingVariable(VariableId v);
    VariableId variable() const { return v_; }

private:
    VariableId v_;
};

IlpInstance parse_instance(std::string_view text);
IlpInstance parse_instance(std::istream& in);
std::string serialize_instance(const IlpInstance& instance);

Integer evaluate_constraint(const LinearConstraint& constraint, const Assignment& assignment);
Integer evaluate_objective(const IlpInstance& instance, const Assignment& assignment);
bool check_feasible(const IlpInstance& instance, const Assignment& assignment);
Integer max_abs_coefficient(const IlpInstance& instance);

IlpInstance omit_variables(const IlpInstance& instance, const std::set<VariableId>& omitted);

}  // namespace tdilp
